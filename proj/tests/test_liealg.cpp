#include "cybeforge/errors.hpp"
#include "cybeforge/liealg.hpp"

#include <doctest.h>

#include "helpers.hpp"

#include <set>

using namespace cybeforge;
using testutil::q;

namespace {

/// Number of closed symmetric subsets of A_{n-1}: root subsystems of type A
/// correspond to set partitions of {1..n} (Bell numbers).
std::size_t bell(int n) {
  std::vector<std::vector<std::size_t>> t{{1}};
  for (int i = 1; i < n; ++i) {
    std::vector<std::size_t> row{t.back().back()};
    for (std::size_t x : t.back()) {
      row.push_back(row.back() + x);
    }
    t.push_back(row);
  }
  return t.back().back();
}

Matrix to_matrix(const Vec &x, const LieAlgebra &g, int n) {
  Matrix m(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < g.dim(); ++i) {
    if (x[i] != 0) {
      m += testutil::sl_matrix(g.label(i), n) * x[i];
    }
  }
  return m;
}

} // namespace

TEST_CASE("sl_n has dimension n^2 - 1 and is a valid Lie algebra") {
  for (int n = 2; n <= 5; ++n) {
    BuiltAlgebra b = build_sl(n);
    CHECK(b.algebra.dim() == static_cast<std::size_t>(n * n - 1));
    CHECK(b.roots.size() == static_cast<std::size_t>(n * (n - 1)));
    CHECK(b.roots.rank() == static_cast<std::size_t>(n - 1));
    CHECK(validate(b.algebra).ok());
  }
  CHECK_THROWS_AS(build_sl(1), RangeError);
  CHECK_THROWS_AS(build_sl(7), RangeError);
}

TEST_CASE("sl_n brackets match matrix commutators") {
  for (int n = 2; n <= 4; ++n) {
    BuiltAlgebra b = build_sl(n);
    const LieAlgebra &g = b.algebra;
    for (std::size_t i = 0; i < g.dim(); ++i) {
      for (std::size_t j = 0; j < g.dim(); ++j) {
        Matrix x = testutil::sl_matrix(g.label(i), n);
        Matrix y = testutil::sl_matrix(g.label(j), n);
        CHECK(to_matrix(g.bracket_basis(i, j), g, n) == x * y - y * x);
      }
    }
  }
}

TEST_CASE("Killing form of sl_n is 2n tr(XY)") {
  for (int n = 2; n <= 4; ++n) {
    BuiltAlgebra b = build_sl(n);
    const LieAlgebra &g = b.algebra;
    Matrix k = killing(g);
    for (std::size_t i = 0; i < g.dim(); ++i) {
      for (std::size_t j = 0; j < g.dim(); ++j) {
        Matrix xy = testutil::sl_matrix(g.label(i), n) * testutil::sl_matrix(g.label(j), n);
        CHECK(k(i, j) == xy.trace() * 2 * n);
      }
    }
  }
  testutil::Sl2 s;
  CHECK(killing_pair(s.g, s.H, s.H) == 8);
  CHECK(killing_pair(s.g, s.E, s.F) == 4);
}

TEST_CASE("Killing form is invariant and adjoints are involutive") {
  BuiltAlgebra b = build_sl(3);
  const LieAlgebra &g = b.algebra;
  KillingForm kf(g);
  REQUIRE(kf.nondegenerate());
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 10; ++trial) {
    Vec x = testutil::random_vec(rng, g.dim());
    Vec y = testutil::random_vec(rng, g.dim());
    Vec z = testutil::random_vec(rng, g.dim());
    CHECK(kf.pair(g.bracket(x, y), z) == kf.pair(x, g.bracket(y, z)));
    LinOp p = testutil::random_matrix(rng, g.dim(), g.dim());
    LinOp ps = kf.adjoint(p);
    CHECK(kf.pair(p * x, y) == kf.pair(x, ps * y));
    CHECK(kf.adjoint(ps) == p);
  }
  CHECK_FALSE(KillingForm(build_abelian(2)).nondegenerate());
  CHECK_THROWS_AS(KillingForm(build_abelian(2)).inverse_gram(), SingularForm);
}

TEST_CASE("validate finds a Jacobi failure") {
  // [e1,e2] = e1, [e1,e3] = e2: J(e1,e2,e3) = -e2
  LieAlgebra g({"e1", "e2", "e3"});
  g.set_product(0, 1, {{0, q(1)}});
  g.set_product(1, 0, {{0, q(-1)}});
  g.set_product(0, 2, {{1, q(1)}});
  g.set_product(2, 0, {{1, q(-1)}});
  auto r = validate(g);
  CHECK(r.antisymmetric);
  CHECK_FALSE(r.jacobi);
  REQUIRE(r.jacobi_witness);
  CHECK(*r.jacobi_witness == std::array<std::size_t, 3>{0, 1, 2});
  auto rs = validate(g, Exec::serial);
  CHECK(rs.jacobi_witness == r.jacobi_witness);

  // [e1,e2] = e3, [e1,e3] = e3 does satisfy Jacobi.
  LieAlgebra h({"e1", "e2", "e3"});
  h.set_product(0, 1, {{2, q(1)}});
  h.set_product(1, 0, {{2, q(-1)}});
  h.set_product(0, 2, {{2, q(1)}});
  h.set_product(2, 0, {{2, q(-1)}});
  CHECK(validate(h).ok());
}

TEST_CASE("validate finds an antisymmetry failure") {
  LieAlgebra g({"a", "b"});
  g.set_product(0, 1, {{0, q(1)}});
  auto r = validate(g);
  CHECK_FALSE(r.antisymmetric);
  REQUIRE(r.antisymmetry_witness);
  CHECK(*r.antisymmetry_witness == std::array<std::size_t, 2>{0, 1});
}

TEST_CASE("root decomposition of sl3") {
  BuiltAlgebra b = build_sl(3);
  const RootDatum &rd = b.roots;
  CHECK(rd.size() == 6);
  for (std::size_t a = 0; a < rd.size(); ++a) {
    const Vec &x = rd.root_vectors[a];
    for (std::size_t i = 0; i < rd.rank(); ++i) {
      CHECK(b.algebra.bracket(rd.cartan[i], x) == x * rd.roots[a][i]);
    }
    CHECK(rd.pairing[a][a] == 2);
    CHECK(rd.roots[rd.negative[a]][0] == -rd.roots[a][0]);
  }
  RootDatum again = root_decomposition(b.algebra, rd.cartan);
  CHECK(again.size() == rd.size());
  for (const auto &r : rd.roots) {
    CHECK(again.find_root(r));
  }
}

TEST_CASE("closed symmetric subsystem counts") {
  for (int n = 2; n <= 5; ++n) {
    BuiltAlgebra b = build_sl(n);
    auto subs = enumerate_closed_symmetric(b.roots);
    CHECK(subs.size() == bell(n));
    std::set<std::vector<std::size_t>> seen;
    for (const auto &s : subs) {
      CHECK(is_closed_symmetric(b.roots, s.members));
      CHECK(seen.insert(s.members).second);
    }
    auto serial = enumerate_closed_symmetric(b.roots, Exec::serial);
    REQUIRE(serial.size() == subs.size());
    for (std::size_t i = 0; i < subs.size(); ++i) {
      CHECK(serial[i].members == subs[i].members);
    }
  }
  BuiltAlgebra ss = direct_sum(build_sl(2), build_sl(2));
  auto subs = enumerate_closed_symmetric(ss.roots);
  CHECK(subs.size() == 4);
  for (const auto &s : subs) {
    if (s.members.size() == 4) {
      CHECK(s.components.size() == 2);
    }
  }
}

TEST_CASE("enumeration budget") {
  BuiltAlgebra b = build_sl(6);
  CHECK_THROWS_AS(enumerate_closed_symmetric(b.roots), BudgetExceeded);
}

TEST_CASE("components of a subsystem of sl4") {
  BuiltAlgebra b = build_sl(4);
  const RootDatum &rd = b.roots;
  // {+-(e1-e2), +-(e3-e4)} is A1 x A1
  std::vector<std::size_t> members;
  for (std::size_t a = 0; a < rd.size(); ++a) {
    const Vec &x = rd.root_vectors[a];
    const std::string &l = b.algebra.label(x.leading_index());
    if (l == "E12" || l == "E21" || l == "E34" || l == "E43") {
      members.push_back(a);
    }
  }
  REQUIRE(members.size() == 4);
  CHECK(is_closed_symmetric(rd, members));
  CHECK(subsystem_components(rd, members).size() == 2);
}

TEST_CASE("centroid dimensions") {
  CHECK(centroid_basis(build_sl(2).algebra).size() == 1);
  CHECK(centroid_basis(build_sl(3).algebra).size() == 1);
  CHECK(centroid_basis(direct_sum(build_sl(2), build_sl(2)).algebra).size() == 2);
  CHECK(centroid_basis(build_matrix_algebra(2)).size() == 1);
}

TEST_CASE("direct sums and subalgebra helpers") {
  BuiltAlgebra s = direct_sum(build_sl(2), build_sl(3));
  CHECK(s.algebra.dim() == 11);
  CHECK(validate(s.algebra).ok());
  CHECK(s.roots.size() == 8);
  CHECK(center(s.algebra).dim() == 0);
  CHECK(center(build_gl(3)).dim() == 1);
  CHECK(validate(build_gl(3)).ok());

  testutil::Sl2 sl;
  Subspace borel = Subspace::span({sl.H, sl.E}, 3);
  CHECK(is_subalgebra(sl.g, borel));
  CHECK_FALSE(is_subalgebra(sl.g, Subspace::span({sl.E, sl.F}, 3)));
  CHECK(bracket_span(sl.g, borel, borel) == Subspace::span({sl.E}, 3));
  CHECK(centralizer_in(sl.g, Subspace::whole(3), Subspace::span({sl.H}, 3)) == Subspace::span({sl.H}, 3));
  LieAlgebra b2 = restrict_to(sl.g, borel);
  CHECK(b2.dim() == 2);
  CHECK(validate(b2).ok());
  CHECK(centroid_basis(b2).size() >= 1);
}
