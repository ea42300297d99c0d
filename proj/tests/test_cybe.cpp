#include "cybeforge/cybe.hpp"
#include "cybeforge/errors.hpp"

#include <doctest.h>

#include "helpers.hpp"

using namespace cybeforge;
using testutil::q;

namespace {

/// P_{u+v}([x, P*_u y]) - P_v([P_u x, y]) + [P_{u+v} x, P_v y] at a point.
Vec operator_cybe_at(const LieAlgebra &g, const KillingForm &kf, const LaurentOp &p, const Vec &x, const Vec &y,
                     const Rat &u, const Rat &v) {
  Matrix pu = p.eval(u);
  Matrix pv = p.eval(v);
  Matrix puv = p.eval(u + v);
  Matrix pus = kf.adjoint(pu);
  return puv * g.bracket(x, pus * y) - pv * g.bracket(pu * x, y) + g.bracket(puv * x, pv * y);
}

/// Weight-0 Rota-Baxter identity on all basis pairs, by brute force.
bool rota_baxter_brute(const LieAlgebra &g, const LinOp &r) {
  for (std::size_t i = 0; i < g.dim(); ++i) {
    for (std::size_t j = 0; j < g.dim(); ++j) {
      Vec x = g.basis_vector(i);
      Vec y = g.basis_vector(j);
      if (g.bracket(r * x, r * y) != r * (g.bracket(r * x, y) + g.bracket(x, r * y))) {
        return false;
      }
    }
  }
  return true;
}

bool kill_symmetric(const LieAlgebra &g, const LinOp &t) { return KillingForm(g).adjoint(t) == t; }

LaurentOp random_series(std::mt19937_64 &rng, std::size_t dim) {
  LaurentOp p(dim);
  p.set(-1, testutil::random_matrix(rng, dim, dim));
  if (rng() % 2) {
    p.set(-2, testutil::random_matrix(rng, dim, dim));
  }
  if (rng() % 2) {
    p.set(1, testutil::random_matrix(rng, dim, dim));
  }
  return p;
}

} // namespace

TEST_CASE("LaurentOp basics") {
  LaurentOp p = LaurentOp::single(-1, Matrix::identity(2));
  p.add(2, Matrix::identity(2) * q(3));
  CHECK(p.eval(q(2)) == Matrix::identity(2) * (q(1, 2) + q(12)));
  p.add(2, Matrix::identity(2) * q(-3));
  CHECK(p.coeffs().size() == 1);
  CHECK(p.coefficient(5).is_zero());
  CHECK((p + p).coefficient(-1) == Matrix::identity(2) * q(2));
  CHECK_THROWS_AS(p.eval(q(0)), Error);
}

TEST_CASE("the Casimir tensor maps to the identity") {
  testutil::Sl2 s;
  KillingForm kf(s.g);
  Matrix omega(3, 3);
  omega(s.h, s.h) = q(1, 8);
  omega(s.e, s.f) = q(1, 4);
  omega(s.f, s.e) = q(1, 4);
  CHECK(tensor_to_op(kf, omega) == Matrix::identity(3));
  CHECK(op_to_tensor(kf, Matrix::identity(3)) == omega);
  CHECK(op_to_tensor(s.g, Matrix::identity(3)) == omega);
}

TEST_CASE("tensor and operator conversions are inverse and swap is adjoint") {
  BuiltAlgebra b = build_sl(3);
  KillingForm kf(b.algebra);
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 10; ++trial) {
    Matrix x = testutil::random_matrix(rng, 8, 8);
    LinOp p = tensor_to_op(kf, x);
    CHECK(op_to_tensor(kf, p) == x);
    CHECK(op_to_tensor(kf, kf.adjoint(p)) == x.transpose());
    // phi_X(v) = sum X_ab <e_a, v> e_b
    Vec v = testutil::random_vec(rng, 8);
    Vec expect(8);
    for (std::size_t a = 0; a < 8; ++a) {
      Rat pa = kf.pair(b.algebra.basis_vector(a), v);
      for (std::size_t c = 0; c < 8; ++c) {
        expect[c] += x(a, c) * pa;
      }
    }
    CHECK(p * v == expect);
  }
  LaurentOp series = random_series(rng, 8);
  CHECK(tensor_series_to_op(kf, op_series_to_tensor(kf, series)) == series);
  CHECK(laurent_adjoint(kf, laurent_adjoint(kf, series)) == series);
}

TEST_CASE("operator CYBE: simple solutions and a non-solution") {
  testutil::Sl2 s;
  auto id = cybe_check_operator(s.g, LaurentOp::single(-1, Matrix::identity(3)));
  CHECK(id.ok());
  auto cp = cybe_check_operator(s.g, LaurentOp::single(-1, s.cartan_projection()));
  CHECK(cp.ok());

  LaurentOp ade = LaurentOp::single(-1, s.g.ad(s.E));
  auto bad = cybe_check_operator(s.g, ade);
  CHECK_FALSE(bad.ok());
  CHECK(bad.paths_agree());
  REQUIRE(bad.witness);
  KillingForm kf(s.g);
  CHECK_FALSE(operator_cybe_at(s.g, kf, ade, s.F, s.F, q(1), q(2)).is_zero());
  auto ser = cybe_check_operator(s.g, ade, Exec::serial);
  REQUIRE(ser.witness);
  CHECK(ser.witness->x == bad.witness->x);
  CHECK(ser.witness->y == bad.witness->y);
  CHECK(ser.witness->coordinate == bad.witness->coordinate);
}

TEST_CASE("pole forms agree with pointwise evaluation") {
  BuiltAlgebra b = build_sl(2);
  const LieAlgebra &g = b.algebra;
  KillingForm kf(g);
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 4; ++trial) {
    LaurentOp p = random_series(rng, 3);
    for (std::size_t x = 0; x < 3; ++x) {
      for (std::size_t y = 0; y < 3; ++y) {
        auto lhs = cybe_operator_lhs(g, kf, p, x, y);
        for (const auto &u : cybe_grid()) {
          for (const auto &v : {q(1), q(3)}) {
            Vec direct = operator_cybe_at(g, kf, p, g.basis_vector(x), g.basis_vector(y), u, v);
            for (std::size_t k = 0; k < 3; ++k) {
              CHECK(lhs[k].eval(u, v) == direct[k]);
            }
          }
        }
      }
    }
  }
}

TEST_CASE("tensor and operator CYBE agree") {
  BuiltAlgebra b = build_sl(2);
  const LieAlgebra &g = b.algebra;
  KillingForm kf(g);
  testutil::Sl2 s;
  std::vector<LaurentOp> cases{
      LaurentOp::single(-1, Matrix::identity(3)),
      LaurentOp::single(-1, s.cartan_projection()),
      LaurentOp::single(-1, g.ad(s.E)),
  };
  std::mt19937_64 rng(53);
  for (int i = 0; i < 4; ++i) {
    cases.push_back(random_series(rng, 3));
  }
  for (const auto &p : cases) {
    auto op = cybe_check_operator(g, kf, p);
    auto tensor = cybe_check_tensor(g, op_series_to_tensor(kf, p));
    CHECK(op.ok() == tensor.ok);
    CHECK(op.paths_agree());
    if (!tensor.ok) {
      REQUIRE(tensor.coordinate);
      CHECK_FALSE(tensor.value.is_zero());
    }
  }
}

TEST_CASE("tensor CYBE value at a point for the Casimir") {
  BuiltAlgebra b = build_sl(2);
  Matrix omega = op_to_tensor(b.algebra, Matrix::identity(3));
  LaurentOp x = LaurentOp::single(-1, omega);
  CHECK(cybe_check_tensor(b.algebra, x).ok);
  CHECK(cybe_tensor_value(b.algebra, x, q(2), q(5)).is_zero());
  LaurentOp c = LaurentOp::single(0, omega);
  CHECK_FALSE(cybe_check_tensor(b.algebra, c).ok);
  CHECK_FALSE(cybe_tensor_value(b.algebra, c, q(1), q(1)).is_zero());
}

TEST_CASE("residue extraction") {
  testutil::Sl2 s;
  LaurentOp p(3);
  p.set(-1, Matrix::identity(3));
  p.set(-3, s.cartan_projection());
  p.set(2, Matrix::identity(3));
  ConfAveOp t = residue_extract(p);
  CHECK(t.degree() == 2);
  CHECK(t[0] == Matrix::identity(3));
  CHECK(t[1].is_zero());
  CHECK(t[2] == s.cartan_projection());

  std::mt19937_64 rng(59);
  LaurentOp a = random_series(rng, 3);
  LaurentOp c = random_series(rng, 3);
  ConfAveOp ta = residue_extract(a);
  ConfAveOp tc = residue_extract(c);
  ConfAveOp sum = residue_extract(a + c);
  for (std::size_t n = 0; n <= 2; ++n) {
    CHECK(sum.coefficient(n) == ta.coefficient(n) + tc.coefficient(n));
  }
  CHECK(residue_extract(LaurentOp::single(-1, Matrix::identity(3))) == ConfAveOp({Matrix::identity(3)}));
}

TEST_CASE("Rota-Baxter check") {
  testutil::Sl2 s;
  auto zero = rota_baxter_check(s.g, Matrix::zero(3));
  CHECK(zero.ok);
  CHECK(zero.literal_ok);
  auto id = rota_baxter_check(s.g, Matrix::identity(3));
  CHECK_FALSE(id.ok);
  REQUIRE(id.witness);
  CHECK(*id.witness == std::array<std::size_t, 2>{s.h, s.e});

  LinOp r(3, 3);
  r(s.h, s.e) = 1;  // R(e) = h
  r(s.e, s.h) = -2; // R(h) = -2e
  CHECK(rota_baxter_check(s.g, r).ok == rota_baxter_brute(s.g, r));

  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 10; ++trial) {
    LinOp m = testutil::random_matrix(rng, 3, 3);
    if (trial % 2 == 0) {
      m = Matrix::zero(3);
      m(s.e, s.e) = random_rational(rng, true); // strictly upper on the Borel
      m(s.e, s.h) = random_rational(rng, false);
    }
    CHECK(rota_baxter_check(s.g, m).ok == rota_baxter_brute(s.g, m));
    CHECK(rota_baxter_check(s.g, m, Exec::serial).witness == rota_baxter_check(s.g, m).witness);
  }
}

TEST_CASE("skew constant tensors: Rota-Baxter iff CYBE") {
  testutil::Sl2 s;
  KillingForm kf(s.g);
  std::vector<Matrix> tensors;
  Matrix he(3, 3);
  he(s.h, s.e) = 1;
  he(s.e, s.h) = -1;
  tensors.push_back(he);
  Matrix ef(3, 3);
  ef(s.e, s.f) = 1;
  ef(s.f, s.e) = -1;
  tensors.push_back(ef);
  std::mt19937_64 rng(67);
  for (int trial = 0; trial < 4; ++trial) {
    Matrix m = testutil::random_matrix(rng, 3, 3);
    tensors.push_back(m - m.transpose());
  }
  for (const auto &x : tensors) {
    bool cybe = cybe_check_tensor(s.g, LaurentOp::single(0, x)).ok;
    bool rb = rota_baxter_check(s.g, tensor_to_op(kf, x)).ok;
    CHECK(cybe == rb);
  }
  CHECK(cybe_check_tensor(s.g, LaurentOp::single(0, he)).ok);
}

TEST_CASE("solutions from symmetric averaging operators") {
  testutil::Sl2 s;
  AveragingOp cp = AveragingOp::verify(s.g, s.cartan_projection());
  LaurentOp p = solution_from_symmetric_averaging(s.g, cp, SymmetryMode::strict);
  CHECK(p == LaurentOp::single(-1, s.cartan_projection()));
  CHECK(cybe_check_operator(s.g, p).ok());

  BuiltAlgebra b = build_sl(3);
  Subspace h = Subspace::span(b.roots.cartan, 8);
  LinOp skewed = embed_on_subspace(h, testutil::mat({{q(1), q(1)}, {q(0), q(1)}}));
  AveragingOp t = AveragingOp::verify(b.algebra, skewed);
  CHECK_THROWS_AS(solution_from_symmetric_averaging(b.algebra, t, SymmetryMode::strict), PreconditionFailure);
  LaurentOp relaxed = solution_from_symmetric_averaging(b.algebra, t, SymmetryMode::relaxed);
  CHECK(cybe_check_operator(b.algebra, relaxed).ok());
}

TEST_CASE("solutions from conformal averaging families") {
  testutil::Sl2 s;
  BuiltAlgebra sl2 = build_sl(2);
  LinOp p = s.cartan_projection();
  LaurentOp sol = solution_from_conformal_averaging(sl2.algebra, sl2.roots, ConfAveOp({p, p}));
  // P_u(h) = (u^-1 + u^-2) h
  CHECK(sol.coefficient(-1) == p);
  CHECK(sol.coefficient(-2) == p);
  CHECK(sol.coeffs().size() == 2);
  CHECK(cybe_check_operator(sl2.algebra, sol).ok());
  Report rt = theorem1_roundtrip(sl2.algebra, sol);
  INFO(rt.to_json().dump());
  CHECK(rt.ok());

  LaurentOp two = solution_from_conformal_averaging(sl2.algebra, sl2.roots, ConfAveOp({p, p, p}));
  CHECK(two.coefficient(-3) == p * q(1, 2));

  BuiltAlgebra b = build_sl(3);
  auto subs = enumerate_closed_symmetric(b.roots);
  std::mt19937_64 rng(71);
  for (const auto &sub : subs) {
    HomogeneousSpec spec = random_homogeneous_spec(b.algebra, b.roots, sub, rng, 0);
    ConfAveOp t = homogeneous_build(b.algebra, b.roots, spec);
    LaurentOp fam = solution_from_conformal_averaging(b.algebra, b.roots, t);
    if (kill_symmetric(b.algebra, t[0])) {
      AveragingOp avg = AveragingOp::verify(b.algebra, t[0]);
      CHECK(fam == solution_from_symmetric_averaging(b.algebra, avg, SymmetryMode::strict));
    }
    CHECK(fam == LaurentOp::single(-1, t[0]));
    CHECK(cybe_check_operator(b.algebra, fam).ok());
  }

  LinOp bad(3, 3);
  bad(s.e, s.h) = 1;
  CHECK_THROWS_AS(solution_from_conformal_averaging(sl2.algebra, sl2.roots, ConfAveOp({bad})),
                  PreconditionFailure);
  CHECK_THROWS_AS(solution_from_conformal_averaging(sl2.algebra, sl2.roots, ConfAveOp({Matrix::zero(3)})),
                  PreconditionFailure);
}

TEST_CASE("roundtrip on random homogeneous families") {
  BuiltAlgebra b = build_sl(3);
  auto subs = enumerate_closed_symmetric(b.roots);
  std::mt19937_64 rng(73);
  for (const auto &sub : subs) {
    HomogeneousSpec spec = random_homogeneous_spec(b.algebra, b.roots, sub, rng, 2, true);
    ConfAveOp t = homogeneous_build(b.algebra, b.roots, spec);
    LaurentOp p = solution_from_conformal_averaging(b.algebra, b.roots, t);
    Report r = theorem1_roundtrip(b.algebra, p);
    INFO(r.to_json().dump());
    CHECK(r.ok());
  }
}

TEST_CASE("poleform JSON") {
  auto j = poleform_json(PoleForm::monomial(q(3, 2), 1, -1, -2));
  CHECK(j["poles"] == nlohmann::json::array({0, 1, 2}));
  CHECK(j["numerator"]["1,0"] == "3/2");
}
