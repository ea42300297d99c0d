#include "cybeforge/errors.hpp"
#include "cybeforge/linalg.hpp"

#include <doctest.h>

#include "helpers.hpp"

using namespace cybeforge;
using testutil::mat;
using testutil::q;
using testutil::vec;

namespace {

Rat det_cofactor(const Matrix &m) {
  const std::size_t n = m.rows();
  if (n == 0) {
    return 1;
  }
  if (n == 1) {
    return m(0, 0);
  }
  Rat d = 0;
  for (std::size_t j = 0; j < n; ++j) {
    Matrix minor(n - 1, n - 1);
    for (std::size_t r = 1; r < n; ++r) {
      for (std::size_t c = 0, cc = 0; c < n; ++c) {
        if (c != j) {
          minor(r - 1, cc++) = m(r, c);
        }
      }
    }
    d += (j % 2 == 0 ? Rat(1) : Rat(-1)) * m(0, j) * det_cofactor(minor);
  }
  return d;
}

} // namespace

TEST_CASE("rref of a rank-2 matrix") {
  Matrix m = mat({{q(1), q(2), q(3)}, {q(2), q(4), q(6)}, {q(1), q(0), q(1)}});
  RowEchelon e = rref(m);
  CHECK(e.pivots == std::vector<std::size_t>{0, 1});
  CHECK(e.reduced == mat({{q(1), q(0), q(1)}, {q(0), q(1), q(1)}}));
  CHECK(rank(m) == 2);
  auto ns = nullspace(m);
  REQUIRE(ns.size() == 1);
  CHECK(ns[0] == vec({q(-1), q(-1), q(1)}));
}

TEST_CASE("random matrices: nullspace, inverse, solve and charpoly") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 4);
    Matrix m = testutil::random_matrix(rng, n, n);
    if (trial % 3 == 0) {
      m.set_col(n - 1, m.col(0) * q(2) - m.col(1));
    }
    const Rat det = det_cofactor(m);
    auto cp = charpoly(m);
    REQUIRE(cp.size() == n + 1);
    CHECK(cp[n] == 1);
    CHECK(cp[0] == (n % 2 == 0 ? det : -det));
    CHECK(cp[n - 1] == -m.trace());
    // Cayley-Hamilton
    Matrix acc = Matrix::zero(n);
    Matrix pw = Matrix::identity(n);
    for (std::size_t k = 0; k <= n; ++k) {
      acc += pw * cp[k];
      pw = pw * m;
    }
    CHECK(acc.is_zero());

    auto ns = nullspace(m);
    CHECK(ns.size() + rank(m) == n);
    for (const auto &v : ns) {
      CHECK((m * v).is_zero());
    }
    if (det != 0) {
      Matrix inv = inverse(m);
      CHECK(inv * m == Matrix::identity(n));
      Vec b = testutil::random_vec(rng, n);
      auto x = solve(m, b);
      REQUIRE(x);
      CHECK(m * *x == b);
    } else {
      CHECK_THROWS_AS(inverse(m), SingularMatrix);
    }
  }
}

TEST_CASE("solve reports inconsistent systems") {
  Matrix a = mat({{q(1), q(1)}, {q(2), q(2)}});
  CHECK_FALSE(solve(a, vec({q(1), q(3)})));
  auto x = solve(a, vec({q(1), q(2)}));
  REQUIRE(x);
  CHECK(a * *x == vec({q(1), q(2)}));
}

TEST_CASE("subspaces have canonical bases") {
  Subspace a = Subspace::span({vec({q(1), q(1), q(0)}), vec({q(0), q(1), q(1)})}, 3);
  Subspace b = Subspace::span({vec({q(1), q(2), q(1)}), vec({q(2), q(1), q(-1)})}, 3);
  CHECK(a == b);
  CHECK(a.dim() == 2);
  CHECK(a.contains(vec({q(1), q(0), q(-1)})));
  CHECK_FALSE(a.contains(vec({q(1), q(0), q(0)})));
  CHECK(a.reduce(vec({q(1), q(1), q(0)})).is_zero());
  CHECK_THROWS_AS(a.coordinates(vec({q(0), q(0), q(1)})), Error);

  Subspace c = Subspace::span({vec({q(1), q(0), q(0)}), vec({q(0), q(0), q(1)})}, 3);
  Subspace i = a.intersect(c);
  CHECK(i.dim() == 1);
  CHECK(i.contains(vec({q(1), q(0), q(-1)})));
  CHECK((a + c) == Subspace::whole(3));
  CHECK(a.standard_complement().size() == 1);
  CHECK(Subspace(3).standard_complement() == std::vector<std::size_t>{0, 1, 2});
}

TEST_CASE("random subspaces: dimension formula and coordinates") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 15; ++trial) {
    std::vector<Vec> va;
    std::vector<Vec> vb;
    for (int k = 0; k < 3; ++k) {
      va.push_back(testutil::random_vec(rng, 5));
      vb.push_back(testutil::random_vec(rng, 5));
    }
    vb[0] = va[0] + va[1];
    Subspace a = Subspace::span(va, 5);
    Subspace b = Subspace::span(vb, 5);
    CHECK((a + b).dim() + a.intersect(b).dim() == a.dim() + b.dim());
    CHECK(a.intersect(b).contains(vb[0]));
    Vec x = va[0] * q(3) - va[2];
    Vec coords = a.coordinates(x);
    Vec back(5);
    for (std::size_t k = 0; k < a.dim(); ++k) {
      back.axpy(coords[k], a.basis()[k]);
    }
    CHECK(back == x);
  }
}

TEST_CASE("quotient map projects onto a standard complement") {
  Subspace k = Subspace::span({vec({q(1), q(1), q(0)})}, 3);
  QuotientMap qm(k);
  CHECK(qm.quotient_dim() == 2);
  for (std::size_t i = 0; i < qm.quotient_dim(); ++i) {
    CHECK(qm.project(qm.lift(i)) == Vec::unit(2, i));
  }
  CHECK(qm.project(vec({q(1), q(1), q(0)})).is_zero());
  Vec v = vec({q(2), q(-1), q(5)});
  Vec w = v + vec({q(4), q(4), q(0)});
  CHECK(qm.project(v) == qm.project(w));
}

TEST_CASE("sparse elimination agrees with dense nullspace") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    Matrix m = testutil::random_matrix(rng, 4, 7);
    m.set_col(3, Vec(4));
    SparseEchelon se(7);
    for (std::size_t r = 0; r < 4; ++r) {
      SparseEchelon::Row row;
      for (std::size_t c = 0; c < 7; ++c) {
        if (m(r, c) != 0) {
          row[c] = m(r, c);
        }
      }
      se.add_row(row);
    }
    CHECK_FALSE(se.add_row({{0, m(0, 0)}, {1, m(0, 1)}, {2, m(0, 2)}, {4, m(0, 4)}, {5, m(0, 5)}, {6, m(0, 6)}}));
    CHECK(se.rank() == rank(m));
    auto sparse = se.nullspace();
    CHECK(Subspace::span(sparse, 7) == Subspace::span(nullspace(m), 7));
  }
}
