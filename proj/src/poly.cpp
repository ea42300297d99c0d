#include "cybeforge/poly.hpp"

#include "cybeforge/errors.hpp"

#include <algorithm>
#include <sstream>

namespace cybeforge {

std::string var_name(Var v) {
  switch (v) {
  case Var::lambda:
    return "lambda";
  case Var::mu:
    return "mu";
  case Var::partial:
    return "d";
  case Var::u:
    return "u";
  case Var::v:
    return "v";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// UniPoly
// ---------------------------------------------------------------------------

UniPoly::UniPoly(Var var, std::vector<Rat> coeffs) : var_(var), coeffs_(std::move(coeffs)) { trim(); }

UniPoly UniPoly::constant(Var var, const Rat &c) { return UniPoly(var, {c}); }

UniPoly UniPoly::monomial(Var var, unsigned degree, const Rat &c) {
  std::vector<Rat> cs(degree + 1);
  cs[degree] = c;
  return UniPoly(var, std::move(cs));
}

UniPoly UniPoly::divided_power(Var var, unsigned n) { return monomial(var, n, inv_factorial(n)); }

Rat UniPoly::coeff(unsigned k) const { return k < coeffs_.size() ? coeffs_[k] : Rat(0); }

void UniPoly::trim() {
  while (!coeffs_.empty() && cybeforge::is_zero(coeffs_.back())) {
    coeffs_.pop_back();
  }
}

void UniPoly::check_var(const UniPoly &o) const {
  if (var_ != o.var_) {
    throw TagMismatch("polynomials in " + var_name(var_) + " and " + var_name(o.var_));
  }
}

Rat UniPoly::eval(const Rat &x) const {
  Rat acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * x + *it;
  }
  return acc;
}

UniPoly UniPoly::derivative() const {
  std::vector<Rat> cs;
  for (std::size_t k = 1; k < coeffs_.size(); ++k) {
    cs.push_back(coeffs_[k] * static_cast<unsigned long>(k));
  }
  return UniPoly(var_, std::move(cs));
}

UniPoly &UniPoly::operator+=(const UniPoly &o) {
  check_var(o);
  if (coeffs_.size() < o.coeffs_.size()) {
    coeffs_.resize(o.coeffs_.size());
  }
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) {
    coeffs_[k] += o.coeffs_[k];
  }
  trim();
  return *this;
}

UniPoly &UniPoly::operator-=(const UniPoly &o) {
  check_var(o);
  if (coeffs_.size() < o.coeffs_.size()) {
    coeffs_.resize(o.coeffs_.size());
  }
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) {
    coeffs_[k] -= o.coeffs_[k];
  }
  trim();
  return *this;
}

UniPoly &UniPoly::operator*=(const Rat &c) {
  for (auto &x : coeffs_) {
    x *= c;
  }
  trim();
  return *this;
}

UniPoly operator*(const UniPoly &a, const UniPoly &b) {
  a.check_var(b);
  if (a.is_zero() || b.is_zero()) {
    return UniPoly(a.var_);
  }
  std::vector<Rat> cs(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
      cs[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
  }
  return UniPoly(a.var_, std::move(cs));
}

std::pair<UniPoly, UniPoly> UniPoly::divmod(const UniPoly &d) const {
  check_var(d);
  if (d.is_zero()) {
    throw Error("polynomial division by zero");
  }
  std::vector<Rat> rem = coeffs_;
  int dd = d.degree();
  int qd = degree() - dd;
  std::vector<Rat> quot(qd >= 0 ? qd + 1 : 0);
  for (int k = qd; k >= 0; --k) {
    Rat c = rem[k + dd] / d.leading();
    quot[k] = c;
    if (cybeforge::is_zero(c)) {
      continue;
    }
    for (int j = 0; j <= dd; ++j) {
      rem[k + j] -= c * d.coeffs_[j];
    }
  }
  return {UniPoly(var_, std::move(quot)), UniPoly(var_, std::move(rem))};
}

UniPoly UniPoly::monic() const {
  if (is_zero()) {
    return *this;
  }
  Rat inv = 1 / leading();
  return *this * inv;
}

std::string UniPoly::str() const {
  if (is_zero()) {
    return "0";
  }
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (cybeforge::is_zero(coeffs_[k])) {
      continue;
    }
    if (!first) {
      os << " + ";
    }
    first = false;
    os << coeffs_[k].get_str();
    if (k > 0) {
      os << "*" << var_name(var_);
      if (k > 1) {
        os << "^" << k;
      }
    }
  }
  return os.str();
}

UniPoly gcd(UniPoly a, UniPoly b) {
  while (!b.is_zero()) {
    auto r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

namespace {

std::vector<Int> positive_divisors(Int n) {
  if (n < 0) {
    n = -n;
  }
  std::vector<Int> small;
  std::vector<Int> large;
  for (Int d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      small.push_back(d);
      if (d * d != n) {
        large.push_back(n / d);
      }
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

} // namespace

std::vector<Rat> rational_roots(const UniPoly &p) {
  if (p.is_zero()) {
    throw Error("rational_roots of the zero polynomial");
  }
  UniPoly sf = p;
  if (p.degree() > 0) {
    sf = p.divmod(gcd(p, p.derivative())).first;
  }
  std::vector<Rat> roots;
  // strip the factor x^k
  std::size_t low = 0;
  while (cybeforge::is_zero(sf.coeffs()[low])) {
    ++low;
  }
  if (low > 0) {
    roots.emplace_back(0);
  }
  // integer coefficients
  Int lcm = 1;
  for (const auto &c : sf.coeffs()) {
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den_mpz_t());
  }
  std::vector<Int> ints;
  for (std::size_t k = low; k < sf.coeffs().size(); ++k) {
    Rat scaled = sf.coeffs()[k] * lcm;
    ints.push_back(scaled.get_num());
  }
  if (ints.size() > 1) {
    auto ps = positive_divisors(ints.front());
    auto qs = positive_divisors(ints.back());
    for (const auto &q : qs) {
      for (const auto &pp : ps) {
        for (int sign : {1, -1}) {
          Rat cand(pp * sign, q);
          cand.canonicalize();
          if (cybeforge::is_zero(sf.eval(cand)) &&
              std::find(roots.begin(), roots.end(), cand) == roots.end()) {
            roots.push_back(cand);
          }
        }
      }
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

// ---------------------------------------------------------------------------
// BiPoly
// ---------------------------------------------------------------------------

BiPoly BiPoly::constant(const Rat &c, Var x, Var y) {
  BiPoly p(x, y);
  p.add_term(0, 0, c);
  return p;
}

BiPoly BiPoly::monomial(int i, int j, const Rat &c, Var x, Var y) {
  BiPoly p(x, y);
  p.add_term(i, j, c);
  return p;
}

BiPoly BiPoly::sum_power(unsigned n, Var x, Var y) {
  BiPoly p(x, y);
  for (unsigned k = 0; k <= n; ++k) {
    p.add_term(static_cast<int>(k), static_cast<int>(n - k), Rat(binomial(n, k)));
  }
  return p;
}

Rat BiPoly::coeff(int i, int j) const {
  auto it = terms_.find({i, j});
  return it == terms_.end() ? Rat(0) : it->second;
}

int BiPoly::total_degree() const {
  int d = -1;
  for (const auto &[e, c] : terms_) {
    d = std::max(d, e.first + e.second);
  }
  return d;
}

void BiPoly::add_term(int i, int j, const Rat &c) {
  if (i < 0 || j < 0) {
    throw RangeError("negative exponent in BiPoly");
  }
  if (cybeforge::is_zero(c)) {
    return;
  }
  auto [it, inserted] = terms_.try_emplace({i, j}, c);
  if (!inserted) {
    it->second += c;
    if (cybeforge::is_zero(it->second)) {
      terms_.erase(it);
    }
  }
}

void BiPoly::check_tags(const BiPoly &o) const {
  if (!same_tags(o)) {
    throw TagMismatch("bivariate tags (" + var_name(x_) + "," + var_name(y_) + ") vs (" + var_name(o.x_) + "," +
                      var_name(o.y_) + ")");
  }
}

BiPoly &BiPoly::operator+=(const BiPoly &o) {
  check_tags(o);
  for (const auto &[e, c] : o.terms_) {
    add_term(e.first, e.second, c);
  }
  return *this;
}

BiPoly &BiPoly::operator-=(const BiPoly &o) {
  check_tags(o);
  for (const auto &[e, c] : o.terms_) {
    add_term(e.first, e.second, -c);
  }
  return *this;
}

BiPoly &BiPoly::operator*=(const Rat &c) {
  if (cybeforge::is_zero(c)) {
    terms_.clear();
    return *this;
  }
  for (auto &[e, x] : terms_) {
    x *= c;
  }
  return *this;
}

BiPoly operator*(const BiPoly &a, const BiPoly &b) {
  a.check_tags(b);
  BiPoly out(a.x_, a.y_);
  for (const auto &[ea, ca] : a.terms_) {
    for (const auto &[eb, cb] : b.terms_) {
      out.add_term(ea.first + eb.first, ea.second + eb.second, ca * cb);
    }
  }
  return out;
}

BiPoly BiPoly::pow(unsigned n) const {
  BiPoly out = constant(1, x_, y_);
  BiPoly base = *this;
  while (n > 0) {
    if (n & 1U) {
      out = out * base;
    }
    n >>= 1U;
    if (n > 0) {
      base = base * base;
    }
  }
  return out;
}

Rat BiPoly::eval(const Rat &x, const Rat &y) const {
  Rat acc = 0;
  for (const auto &[e, c] : terms_) {
    Rat term = c;
    Rat xp;
    Rat yp;
    mpz_pow_ui(xp.get_num_mpz_t(), x.get_num_mpz_t(), e.first);
    mpz_pow_ui(xp.get_den_mpz_t(), x.get_den_mpz_t(), e.first);
    mpz_pow_ui(yp.get_num_mpz_t(), y.get_num_mpz_t(), e.second);
    mpz_pow_ui(yp.get_den_mpz_t(), y.get_den_mpz_t(), e.second);
    acc += term * xp * yp;
  }
  return acc;
}

BiPoly BiPoly::shifted(int i, int j) const {
  BiPoly out(x_, y_);
  for (const auto &[e, c] : terms_) {
    out.terms_.emplace(Exponent{e.first + i, e.second + j}, c);
  }
  return out;
}

bool BiPoly::divisible_by_x() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto &t) { return t.first.first > 0; });
}

bool BiPoly::divisible_by_y() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto &t) { return t.first.second > 0; });
}

BiPoly BiPoly::div_x() const {
  BiPoly out(x_, y_);
  for (const auto &[e, c] : terms_) {
    out.terms_.emplace(Exponent{e.first - 1, e.second}, c);
  }
  return out;
}

BiPoly BiPoly::div_y() const {
  BiPoly out(x_, y_);
  for (const auto &[e, c] : terms_) {
    out.terms_.emplace(Exponent{e.first, e.second - 1}, c);
  }
  return out;
}

namespace {

// Homogeneous components keyed by total degree; each is a dense vector of
// x-exponent coefficients c_i for x^i y^(d-i).
std::map<int, std::vector<Rat>> homogeneous_parts(const BiPoly::Terms &terms) {
  std::map<int, std::vector<Rat>> parts;
  for (const auto &[e, c] : terms) {
    int d = e.first + e.second;
    auto &row = parts[d];
    row.resize(d + 1);
    row[e.first] = c;
  }
  return parts;
}

} // namespace

// (x + y) | N  iff every homogeneous component vanishes at x = -y, i.e. the
// dehomogenized polynomial in t = x/y has root -1.
bool BiPoly::divisible_by_sum() const {
  for (const auto &[d, row] : homogeneous_parts(terms_)) {
    Rat alt = 0;
    for (int i = 0; i <= d; ++i) {
      if (i % 2 == 0) {
        alt += row[i];
      } else {
        alt -= row[i];
      }
    }
    if (!cybeforge::is_zero(alt)) {
      return false;
    }
  }
  return true;
}

BiPoly BiPoly::div_sum() const {
  BiPoly out(x_, y_);
  for (const auto &[d, row] : homogeneous_parts(terms_)) {
    // synthetic division of sum_i row[i] t^i by (t + 1)
    std::vector<Rat> q(d);
    Rat carry = 0;
    for (int i = d; i >= 1; --i) {
      carry = row[i] - carry;
      q[i - 1] = carry;
    }
    for (int i = 0; i < d; ++i) {
      out.add_term(i, d - 1 - i, q[i]);
    }
  }
  return out;
}

std::string BiPoly::str() const {
  if (is_zero()) {
    return "0";
  }
  std::ostringstream os;
  bool first = true;
  for (const auto &[e, c] : terms_) {
    if (!first) {
      os << " + ";
    }
    first = false;
    os << c.get_str();
    if (e.first > 0) {
      os << "*" << var_name(x_) << (e.first > 1 ? "^" + std::to_string(e.first) : "");
    }
    if (e.second > 0) {
      os << "*" << var_name(y_) << (e.second > 1 ? "^" + std::to_string(e.second) : "");
    }
  }
  return os.str();
}

} // namespace cybeforge
