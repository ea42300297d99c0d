#include "cybeforge/errors.hpp"
#include "cybeforge/poly.hpp"
#include "cybeforge/rational.hpp"

#include <doctest.h>

#include "helpers.hpp"

using namespace cybeforge;
using testutil::q;

TEST_CASE("rationals parse and format as p/q") {
  CHECK(parse_rat("3") == 3);
  CHECK(parse_rat("-6/4") == q(-3, 2));
  CHECK(format_rat(q(3)) == "3/1");
  CHECK(format_rat(q(0)) == "0/1");
  CHECK(format_rat(q(-6, 4)) == "-3/2");
  CHECK_THROWS_AS(parse_rat("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rat("abc"), ParseError);
  CHECK_THROWS_AS(parse_rat(""), ParseError);
  for (long p = -7; p <= 7; ++p) {
    for (long d = 1; d <= 5; ++d) {
      CHECK(parse_rat(format_rat(q(p, d))) == q(p, d));
    }
  }
}

TEST_CASE("factorials and binomials") {
  CHECK(factorial(0) == 1);
  CHECK(factorial(5) == 120);
  CHECK(binomial(6, 2) == 15);
  CHECK(binomial(3, 5) == 0);
  CHECK(inv_factorial(4) == q(1, 24));
}

TEST_CASE("univariate polynomial arithmetic") {
  UniPoly x = UniPoly::monomial(Var::lambda, 1);
  UniPoly one = UniPoly::constant(Var::lambda, 1);
  UniPoly p = (x - one) * (x - one * q(2)) * (x + one * q(1, 2));
  CHECK(p.degree() == 3);
  CHECK(p.eval(q(2)) == 0);
  auto [quo, rem] = p.divmod(x - one);
  CHECK(rem.is_zero());
  CHECK(quo * (x - one) == p);
  auto roots = rational_roots(p * (x - one));
  std::sort(roots.begin(), roots.end());
  REQUIRE(roots.size() == 3);
  CHECK(roots[0] == q(-1, 2));
  CHECK(roots[1] == 1);
  CHECK(roots[2] == 2);
  CHECK(gcd(p, (x - one) * (x + one)) == x - one);
  CHECK(UniPoly::divided_power(Var::lambda, 3).coeff(3) == q(1, 6));
  // p = x^3 - 5/2 x^2 + 1/2 x + 1
  CHECK(p.coeff(0) == 1);
  CHECK(p.coeff(2) == q(-5, 2));
  CHECK(p.derivative().eval(q(0)) == q(1, 2));
  CHECK_THROWS_AS(UniPoly::monomial(Var::lambda, 1) + UniPoly::monomial(Var::mu, 1), TagMismatch);
}

TEST_CASE("x^2 + 1 has no rational roots; x^3 has root 0") {
  UniPoly p(Var::lambda, {q(1), q(0), q(1)});
  CHECK(rational_roots(p).empty());
  auto r = rational_roots(UniPoly::monomial(Var::lambda, 3));
  REQUIRE(r.size() == 1);
  CHECK(r[0] == 0);
}

TEST_CASE("bivariate divisibility by x, y and x + y") {
  BiPoly s = BiPoly::sum_power(3);
  CHECK(s.coeff(1, 2) == 3);
  CHECK(s.divisible_by_sum());
  CHECK(s.div_sum() == BiPoly::sum_power(2));
  BiPoly m = BiPoly::monomial(2, 1, q(5));
  CHECK(m.divisible_by_x());
  CHECK(m.divisible_by_y());
  CHECK_FALSE(m.divisible_by_sum());
  BiPoly mixed = BiPoly::monomial(1, 0) * BiPoly::sum_power(1) + BiPoly::monomial(0, 2);
  CHECK_FALSE(mixed.divisible_by_sum());
  // x^2 - y^2 = (x - y)(x + y)
  BiPoly diff = BiPoly::monomial(2, 0) - BiPoly::monomial(0, 2);
  REQUIRE(diff.divisible_by_sum());
  CHECK(diff.div_sum() == BiPoly::monomial(1, 0) - BiPoly::monomial(0, 1));
  CHECK(diff.eval(q(3), q(2)) == 5);
  CHECK_THROWS_AS(BiPoly(Var::u, Var::v) + BiPoly(Var::lambda, Var::mu), TagMismatch);
}
