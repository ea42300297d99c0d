#include "cybeforge/poleform.hpp"

#include "cybeforge/errors.hpp"

#include <algorithm>
#include <sstream>

namespace cybeforge {

namespace {

void require_uv(const BiPoly &p) {
  if (p.x_var() != Var::u || p.y_var() != Var::v) {
    throw TagMismatch("PoleForm numerator must be in (u,v), got (" + var_name(p.x_var()) + "," +
                      var_name(p.y_var()) + ")");
  }
}

Rat rat_pow(const Rat &x, int n) {
  Rat out;
  mpz_pow_ui(out.get_num_mpz_t(), x.get_num_mpz_t(), static_cast<unsigned long>(n));
  mpz_pow_ui(out.get_den_mpz_t(), x.get_den_mpz_t(), static_cast<unsigned long>(n));
  return out;
}

} // namespace

PoleForm::PoleForm(BiPoly numerator, int a, int b, int c)
    : numerator_(std::move(numerator)), a_(a), b_(b), c_(c) {
  require_uv(numerator_);
  if (a < 0 || b < 0 || c < 0) {
    throw RangeError("negative pole exponent");
  }
  canonicalize();
}

PoleForm make_poleform(const BiPoly &numerator, int a, int b, int c) { return PoleForm(numerator, a, b, c); }

PoleForm PoleForm::monomial(const Rat &c, int i, int j, int k) {
  BiPoly num = BiPoly::monomial(std::max(i, 0), std::max(j, 0), c);
  if (k > 0) {
    num = num * BiPoly::sum_power(static_cast<unsigned>(k));
  }
  return PoleForm(std::move(num), std::max(-i, 0), std::max(-j, 0), std::max(-k, 0));
}

void PoleForm::canonicalize() {
  if (numerator_.is_zero()) {
    a_ = b_ = c_ = 0;
    return;
  }
  while (a_ > 0 && numerator_.divisible_by_x()) {
    numerator_ = numerator_.div_x();
    --a_;
  }
  while (b_ > 0 && numerator_.divisible_by_y()) {
    numerator_ = numerator_.div_y();
    --b_;
  }
  while (c_ > 0 && numerator_.divisible_by_sum()) {
    numerator_ = numerator_.div_sum();
    --c_;
  }
}

Rat PoleForm::eval(const Rat &u, const Rat &v) const {
  Rat s = u + v;
  if ((a_ > 0 && cybeforge::is_zero(u)) || (b_ > 0 && cybeforge::is_zero(v)) || (c_ > 0 && cybeforge::is_zero(s))) {
    throw Error("PoleForm evaluated at a pole");
  }
  return numerator_.eval(u, v) / (rat_pow(u, a_) * rat_pow(v, b_) * rat_pow(s, c_));
}

std::string PoleForm::str() const {
  std::ostringstream os;
  os << "(" << numerator_.str() << ")";
  if (a_ + b_ + c_ > 0) {
    os << " / (u^" << a_ << " v^" << b_ << " (u+v)^" << c_ << ")";
  }
  return os.str();
}

PoleForm poleform_combine(const std::vector<SignedPoleForm> &terms) {
  int a = 0;
  int b = 0;
  int c = 0;
  for (const auto &t : terms) {
    require_uv(t.form.numerator());
    a = std::max(a, t.form.pole_u());
    b = std::max(b, t.form.pole_v());
    c = std::max(c, t.form.pole_sum());
  }
  BiPoly acc(Var::u, Var::v);
  for (const auto &t : terms) {
    if (t.form.is_zero()) {
      continue;
    }
    BiPoly n = t.form.numerator().shifted(a - t.form.pole_u(), b - t.form.pole_v());
    int dc = c - t.form.pole_sum();
    if (dc > 0) {
      n = n * BiPoly::sum_power(static_cast<unsigned>(dc));
    }
    if (t.sign < 0) {
      acc -= n;
    } else {
      acc += n;
    }
  }
  return PoleForm(std::move(acc), a, b, c);
}

bool poleform_is_zero(const PoleForm &p) { return p.is_zero(); }

PoleForm substitute_shift(const UniLaurent &p, ShiftRule rule) {
  std::vector<SignedPoleForm> terms;
  for (const auto &[k, c] : p) {
    switch (rule) {
    case ShiftRule::to_u:
      terms.push_back({PoleForm::monomial(c, k, 0, 0)});
      break;
    case ShiftRule::to_v:
      terms.push_back({PoleForm::monomial(c, 0, k, 0)});
      break;
    case ShiftRule::to_sum:
      terms.push_back({PoleForm::monomial(c, 0, 0, k)});
      break;
    }
  }
  return poleform_combine(terms);
}

} // namespace cybeforge
