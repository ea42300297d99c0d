#ifndef CYBEFORGE_POLEFORM_HPP
#define CYBEFORGE_POLEFORM_HPP

#include "cybeforge/poly.hpp"

#include <map>
#include <string>
#include <vector>

namespace cybeforge {

/// N(u,v) / (u^a v^b (u+v)^c), kept canonical: no factor of the numerator
/// cancels against a present pole, and zero is 0 / 1.
class PoleForm {
public:
  PoleForm() : numerator_(Var::u, Var::v) {}
  PoleForm(BiPoly numerator, int a, int b, int c);

  /// c * u^i v^j (u+v)^k with integer exponents of any sign.
  static PoleForm monomial(const Rat &c, int i, int j, int k);

  const BiPoly &numerator() const { return numerator_; }
  int pole_u() const { return a_; }
  int pole_v() const { return b_; }
  int pole_sum() const { return c_; }

  bool is_zero() const { return numerator_.is_zero(); }

  /// Throws Error when u, v or u+v vanishes at a present pole.
  Rat eval(const Rat &u, const Rat &v) const;

  friend bool operator==(const PoleForm &x, const PoleForm &y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && x.c_ == y.c_ && x.numerator_ == y.numerator_;
  }

  std::string str() const;

private:
  void canonicalize();

  BiPoly numerator_;
  int a_ = 0;
  int b_ = 0;
  int c_ = 0;
};

struct SignedPoleForm {
  PoleForm form;
  int sign = 1;
};

/// Exact canonical sum of the signed terms.
PoleForm poleform_combine(const std::vector<SignedPoleForm> &terms);

bool poleform_is_zero(const PoleForm &p);

/// Single-variable Laurent polynomial sum_k c_k t^k.
using UniLaurent = std::map<int, Rat>;

enum class ShiftRule {
  to_u,   ///< t -> u
  to_v,   ///< t -> v
  to_sum, ///< t -> u + v
};

PoleForm substitute_shift(const UniLaurent &p, ShiftRule rule);

/// Raw numerators and pole exponents are validated against the (u,v) tags.
PoleForm make_poleform(const BiPoly &numerator, int a, int b, int c);

} // namespace cybeforge

#endif
