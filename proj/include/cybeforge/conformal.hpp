#ifndef CYBEFORGE_CONFORMAL_HPP
#define CYBEFORGE_CONFORMAL_HPP

#include "cybeforge/averaging.hpp"
#include "cybeforge/liealg.hpp"
#include "cybeforge/report.hpp"

#include <map>
#include <optional>
#include <vector>

namespace cybeforge {

/// Element sum_k d^k (x) a_k of Q[d] (x) g. Zero coefficients are never stored.
class ConfElem {
public:
  static constexpr int max_degree = 64;

  ConfElem() = default;
  explicit ConfElem(std::size_t dim) : dim_(dim) {}
  /// d^k (x) a
  static ConfElem term(int k, const Vec &a);
  static ConfElem generator(const Vec &a) { return term(0, a); }

  std::size_t dim() const { return dim_; }
  const std::map<int, Vec> &terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Highest d-power present, or -1 for zero.
  int degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first; }
  Vec coefficient(int k) const;

  /// Adds s * d^k (x) a. Throws RangeError above max_degree.
  void add_term(int k, const Vec &a, const Rat &s = 1);
  /// d^j applied to this element.
  ConfElem shifted(int j) const;
  ConfElem d() const { return shifted(1); }

  ConfElem &operator+=(const ConfElem &o);
  ConfElem &operator-=(const ConfElem &o);
  ConfElem &operator*=(const Rat &s);
  friend ConfElem operator+(ConfElem a, const ConfElem &b) { return a += b; }
  friend ConfElem operator-(ConfElem a, const ConfElem &b) { return a -= b; }
  friend ConfElem operator*(ConfElem a, const Rat &s) { return a *= s; }
  friend bool operator==(const ConfElem &a, const ConfElem &b) { return a.dim_ == b.dim_ && a.terms_ == b.terms_; }

  std::string str() const;

private:
  std::size_t dim_ = 0;
  std::map<int, Vec> terms_;
};

/// The current conformal algebra Cur g.
class CurAlgebra {
public:
  explicit CurAlgebra(LieAlgebra base, Exec exec = Exec::parallel);

  const LieAlgebra &base() const { return base_; }
  std::size_t dim() const { return base_.dim(); }
  const ValidationReport &validation() const { return validation_; }

  ConfElem generator(std::size_t i) const { return ConfElem::generator(base_.basis_vector(i)); }

private:
  LieAlgebra base_;
  ValidationReport validation_;
};

/// Q[d]-linear operator with T(1 (x) a) = sum_n (-d)^(n) (x) T_n(a).
class ConfOperator {
public:
  explicit ConfOperator(ConfAveOp family) : family_(std::move(family)) {}
  const ConfAveOp &family() const { return family_; }

private:
  ConfAveOp family_;
};

/// Coefficients c_j with [d^k a <n> d^l b] = sum_j c_j d^j [a,b] in Cur g,
/// obtained by moving d off the left factor, then off the right factor.
std::map<int, Rat> current_product_coefficients(int k, int l, int n);

ConfElem n_product(const CurAlgebra &c, const ConfElem &x, const ConfElem &y, int n);

/// Locality (N <= 1 on generators), anticommutativity and Jacobi on basis
/// elements d^k (x) e_i with k <= 1, for n, m <= nmax.
Report check_axioms(const CurAlgebra &c, int nmax, Exec exec = Exec::parallel);

ConfElem apply_conf_operator(const ConfOperator &t, const ConfElem &x);

/// T([T(x) <n> y]) = [T(x) <n> T(y)] on generator pairs, n <= nmax.
Report check_conformal_averaging_on_cur(const CurAlgebra &c, const ConfOperator &t, int nmax,
                                        Exec exec = Exec::parallel);

/// {a <n> b}_T = [T(a) <n> b]
ConfElem leibniz_product(const CurAlgebra &c, const ConfOperator &t, const ConfElem &x, const ConfElem &y, int n);

/// Jacobi for the Leibniz products on generator triples (checked) and
/// anticommutativity (informational). Throws PreconditionFailure when T is
/// not conformal averaging.
Report leibniz_products_and_check(const CurAlgebra &c, const ConfOperator &t, int nmax,
                                  Exec exec = Exec::parallel);

struct KernelQuotient {
  Subspace kernel;                      ///< intersection of ker T_n
  std::vector<std::size_t> complement;  ///< base indices spanning the quotient
  LieAlgebra quotient;                  ///< induced 0-product [T_0 a, b] mod kernel
  ValidationReport quotient_validation;
  std::optional<bool> split_null_check; ///< set by kernel_and_quotient_split
};

KernelQuotient kernel_and_quotient(const CurAlgebra &c, const ConfOperator &t, Exec exec = Exec::parallel);

/// Q[d] (x) kernel is a two-sided ideal for the Leibniz products: checked on
/// kernel basis vectors against generators, n <= nmax.
Report check_kernel_ideal(const CurAlgebra &c, const ConfOperator &t, const Subspace &kernel, int nmax,
                          Exec exec = Exec::parallel);

/// Compares the quotient with the split null extension g_0 (+) h_0^perp
/// predicted for a homogeneous family.
Report split_null_prediction(const LieAlgebra &g, const RootDatum &rd, const ConfAveOp &t,
                             const KernelQuotient &kq);

/// kernel_and_quotient with split_null_check filled in from split_null_prediction.
KernelQuotient kernel_and_quotient_split(const CurAlgebra &c, const RootDatum &rd, const ConfOperator &t,
                                         Exec exec = Exec::parallel);

} // namespace cybeforge

#endif
