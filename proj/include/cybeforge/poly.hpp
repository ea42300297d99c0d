#ifndef CYBEFORGE_POLY_HPP
#define CYBEFORGE_POLY_HPP

#include "cybeforge/rational.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace cybeforge {

enum class Var { lambda, mu, partial, u, v };

std::string var_name(Var v);

/// Dense univariate polynomial over Rat. Storage is plain monomial
/// coefficients; divided powers are applied by callers.
class UniPoly {
public:
  explicit UniPoly(Var var = Var::lambda) : var_(var) {}
  UniPoly(Var var, std::vector<Rat> coeffs);

  static UniPoly constant(Var var, const Rat &c);
  static UniPoly monomial(Var var, unsigned degree, const Rat &c = 1);
  /// x^n / n!
  static UniPoly divided_power(Var var, unsigned n);

  Var var() const { return var_; }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Rat> &coeffs() const { return coeffs_; }
  Rat coeff(unsigned k) const;
  const Rat &leading() const { return coeffs_.back(); }

  Rat eval(const Rat &x) const;
  UniPoly derivative() const;

  UniPoly &operator+=(const UniPoly &o);
  UniPoly &operator-=(const UniPoly &o);
  UniPoly &operator*=(const Rat &c);

  friend UniPoly operator+(UniPoly a, const UniPoly &b) { return a += b; }
  friend UniPoly operator-(UniPoly a, const UniPoly &b) { return a -= b; }
  friend UniPoly operator*(UniPoly a, const Rat &c) { return a *= c; }
  friend UniPoly operator*(const UniPoly &a, const UniPoly &b);
  friend bool operator==(const UniPoly &a, const UniPoly &b) {
    return a.var_ == b.var_ && a.coeffs_ == b.coeffs_;
  }

  /// Euclidean division; throws on division by zero.
  std::pair<UniPoly, UniPoly> divmod(const UniPoly &d) const;
  UniPoly monic() const;

  std::string str() const;

private:
  void trim();
  void check_var(const UniPoly &o) const;

  Var var_;
  std::vector<Rat> coeffs_;
};

/// Monic gcd.
UniPoly gcd(UniPoly a, UniPoly b);

/// Distinct rational roots of p (p nonzero).
std::vector<Rat> rational_roots(const UniPoly &p);

/// Sparse bivariate polynomial. Exponent pair (i, j) is x^i y^j for the
/// variable pair (x, y) given by the tags.
class BiPoly {
public:
  using Exponent = std::pair<int, int>;
  using Terms = std::map<Exponent, Rat>;

  explicit BiPoly(Var x = Var::u, Var y = Var::v) : x_(x), y_(y) {}

  static BiPoly constant(const Rat &c, Var x = Var::u, Var y = Var::v);
  static BiPoly monomial(int i, int j, const Rat &c = 1, Var x = Var::u, Var y = Var::v);
  /// (x + y)^n
  static BiPoly sum_power(unsigned n, Var x = Var::u, Var y = Var::v);

  Var x_var() const { return x_; }
  Var y_var() const { return y_; }
  bool same_tags(const BiPoly &o) const { return x_ == o.x_ && y_ == o.y_; }

  bool is_zero() const { return terms_.empty(); }
  const Terms &terms() const { return terms_; }
  Rat coeff(int i, int j) const;
  int total_degree() const;

  void add_term(int i, int j, const Rat &c);

  BiPoly &operator+=(const BiPoly &o);
  BiPoly &operator-=(const BiPoly &o);
  BiPoly &operator*=(const Rat &c);
  friend BiPoly operator+(BiPoly a, const BiPoly &b) { return a += b; }
  friend BiPoly operator-(BiPoly a, const BiPoly &b) { return a -= b; }
  friend BiPoly operator*(BiPoly a, const Rat &c) { return a *= c; }
  friend BiPoly operator*(const BiPoly &a, const BiPoly &b);
  friend bool operator==(const BiPoly &a, const BiPoly &b) {
    return a.same_tags(b) && a.terms_ == b.terms_;
  }

  BiPoly pow(unsigned n) const;
  Rat eval(const Rat &x, const Rat &y) const;

  /// Multiply by x^i y^j (i, j >= 0).
  BiPoly shifted(int i, int j) const;

  bool divisible_by_x() const;
  bool divisible_by_y() const;
  bool divisible_by_sum() const;
  /// Exact quotients; the caller must check divisibility first.
  BiPoly div_x() const;
  BiPoly div_y() const;
  BiPoly div_sum() const;

  std::string str() const;

private:
  void check_tags(const BiPoly &o) const;

  Var x_;
  Var y_;
  Terms terms_;
};

} // namespace cybeforge

#endif
