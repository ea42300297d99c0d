#include "cybeforge/errors.hpp"
#include "cybeforge/poleform.hpp"

#include <doctest.h>

#include "helpers.hpp"

#include <random>

using namespace cybeforge;
using testutil::q;

TEST_CASE("canonical form strips u, v and u+v factors") {
  // u (u+v) / (u^2 (u+v)) = 1/u
  PoleForm p(BiPoly::monomial(1, 0) * BiPoly::sum_power(1), 2, 0, 1);
  CHECK(p == PoleForm::monomial(q(1), -1, 0, 0));
  CHECK(p.pole_u() == 1);
  CHECK(p.pole_sum() == 0);
  CHECK(PoleForm(BiPoly(), 3, 1, 2) == PoleForm());
  // content is kept: 2u/u^2 = 2/u
  CHECK(PoleForm(BiPoly::monomial(1, 0, q(2)), 2, 0, 0).numerator().coeff(0, 0) == 2);
}

TEST_CASE("the identity 1/((u+v)u) - 1/(uv) + 1/((u+v)v) = 0") {
  std::vector<SignedPoleForm> terms{
      {PoleForm::monomial(q(1), -1, 0, -1), 1},
      {PoleForm::monomial(q(1), -1, -1, 0), -1},
      {PoleForm::monomial(q(1), 0, -1, -1), 1},
  };
  PoleForm s = poleform_combine(terms);
  CHECK(poleform_is_zero(s));
  terms.pop_back();
  CHECK_FALSE(poleform_is_zero(poleform_combine(terms)));
}

TEST_CASE("evaluation matches the rational function and throws at poles") {
  PoleForm p = PoleForm::monomial(q(3), 1, -2, -1);
  CHECK(p.eval(q(2), q(1)) == q(3 * 2, 1 * 3));
  CHECK_THROWS_AS(p.eval(q(2), q(0)), Error);
  CHECK_THROWS_AS(p.eval(q(1), q(-1)), Error);
  CHECK(PoleForm::monomial(q(1), 2, 0, 0).eval(q(0), q(5)) == 0);
}

TEST_CASE("substitute_shift sends t to u, v or u+v") {
  UniLaurent p{{-2, q(1)}, {0, q(3)}, {1, q(-1)}};
  auto at = [&](const Rat &t) {
    Rat s = 0;
    for (const auto &[k, c] : p) {
      Rat pw = 1;
      for (int i = 0; i < std::abs(k); ++i) {
        pw *= k < 0 ? Rat(1 / t) : t;
      }
      s += c * pw;
    }
    return s;
  };
  for (long u = 1; u <= 3; ++u) {
    for (long v = 1; v <= 3; ++v) {
      CHECK(substitute_shift(p, ShiftRule::to_u).eval(q(u), q(v)) == at(q(u)));
      CHECK(substitute_shift(p, ShiftRule::to_v).eval(q(u), q(v)) == at(q(v)));
      CHECK(substitute_shift(p, ShiftRule::to_sum).eval(q(u), q(v)) == at(q(u + v)));
    }
  }
}

TEST_CASE("combining random terms agrees with pointwise evaluation") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> ex(-3, 2);
  std::uniform_int_distribution<int> sign(0, 1);
  const std::vector<Rat> grid{q(1), q(2), q(3), q(5), q(7)};
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<SignedPoleForm> terms;
    for (int t = 0; t < 4; ++t) {
      terms.push_back({PoleForm::monomial(random_rational(rng, true), ex(rng), ex(rng), ex(rng)),
                       sign(rng) ? 1 : -1});
    }
    // Force a cancellation in half of the trials.
    if (trial % 2 == 0) {
      terms.push_back({terms[0].form, -terms[0].sign});
      terms.push_back({terms[1].form, -terms[1].sign});
      terms.push_back({terms[2].form, -terms[2].sign});
      terms.push_back({terms[3].form, -terms[3].sign});
    }
    PoleForm sum = poleform_combine(terms);
    bool any_nonzero = false;
    for (const auto &u : grid) {
      for (const auto &v : grid) {
        Rat direct = 0;
        for (const auto &t : terms) {
          direct += t.form.eval(u, v) * t.sign;
        }
        CHECK(sum.eval(u, v) == direct);
        any_nonzero = any_nonzero || direct != 0;
      }
    }
    CHECK(sum.is_zero() == !any_nonzero);
  }
}

TEST_CASE("make_poleform rejects foreign variable tags") {
  CHECK_THROWS_AS(make_poleform(BiPoly(Var::lambda, Var::mu), 0, 0, 0), TagMismatch);
  CHECK_THROWS_AS(make_poleform(BiPoly::monomial(0, 0), -1, 0, 0), RangeError);
}
