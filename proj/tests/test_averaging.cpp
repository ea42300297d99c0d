#include "cybeforge/averaging.hpp"
#include "cybeforge/errors.hpp"

#include <doctest.h>

#include "helpers.hpp"

#include <algorithm>

using namespace cybeforge;
using testutil::q;

namespace {

std::vector<Matrix> permutation_group(std::size_t n) {
  std::vector<std::size_t> p(n);
  for (std::size_t i = 0; i < n; ++i) {
    p[i] = i;
  }
  std::vector<Matrix> out;
  do {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      m(p[i], i) = 1;
    }
    out.push_back(m);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

/// Family on g acting by the given blocks on the Cartan basis H1..H_r and
/// zero elsewhere.
ConfAveOp cartan_family(const BuiltAlgebra &b, const std::vector<Matrix> &blocks) {
  std::vector<LinOp> fam;
  for (const auto &blk : blocks) {
    fam.push_back(embed_on_subspace(Subspace::span(b.roots.cartan, b.algebra.dim()), blk));
  }
  return ConfAveOp(fam);
}

const RootSubsystem &subsystem_of_size(const std::vector<RootSubsystem> &subs, std::size_t size) {
  for (const auto &s : subs) {
    if (s.members.size() == size) {
      return s;
    }
  }
  throw Error("no subsystem of the requested size");
}

} // namespace

TEST_CASE("identity and Cartan projection are averaging on sl2") {
  testutil::Sl2 s;
  CHECK(is_averaging(s.g, Matrix::identity(3), AveragingMode::lie));
  CHECK(is_averaging(s.g, s.cartan_projection(), AveragingMode::lie));
  CHECK(is_averaging(s.g, Matrix::zero(3), AveragingMode::lie));
  LinOp bad(3, 3);
  bad(s.e, s.h) = 1; // h -> e
  CHECK_FALSE(is_averaging(s.g, bad, AveragingMode::lie));
  CHECK_THROWS_AS(AveragingOp::verify(s.g, bad), PreconditionFailure);
}

TEST_CASE("random operators are not averaging, serial and parallel agree") {
  BuiltAlgebra b = build_sl(3);
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 5; ++trial) {
    LinOp t = testutil::random_matrix(rng, 8, 8);
    auto par = averaging_witness(b.algebra, t, AveragingMode::lie, Exec::parallel);
    auto ser = averaging_witness(b.algebra, t, AveragingMode::lie, Exec::serial);
    REQUIRE(par);
    REQUIRE(ser);
    CHECK(par->a == ser->a);
    CHECK(par->b == ser->b);
    CHECK(par->side == ser->side);
  }
}

TEST_CASE("Reynolds operator of S3 is averaging") {
  auto group = permutation_group(3);
  REQUIRE(group.size() == 6);
  LinOp r = group_averaging(group) * q(1, 6);
  CHECK(r * r == r);
  CHECK(is_averaging(build_gl(3), r, AveragingMode::lie));
  CHECK(is_averaging(build_matrix_algebra(3), r, AveragingMode::associative));
  AveragingOp a = AveragingOp::verify(build_matrix_algebra(3), r, AveragingMode::associative);
  CHECK(a.associative_verified());
  CHECK_FALSE(a.lie_verified());

  std::vector<Matrix> not_group{Matrix::identity(3), group[1] * q(2)};
  CHECK_THROWS_AS(group_averaging(not_group), PreconditionFailure);
  CHECK_THROWS_AS(group_averaging({group[1]}), PreconditionFailure);
}

TEST_CASE("composition of commuting averaging operators") {
  LieAlgebra gl = build_gl(3);
  auto group = permutation_group(3);
  AveragingOp r = AveragingOp::verify(gl, group_averaging(group) * q(1, 6));
  AveragingOp id = AveragingOp::verify(gl, Matrix::identity(9));
  AveragingOp c = compose_commuting(gl, r, id);
  CHECK(c.op() == r.op());
  CHECK(c.lie_verified());

  testutil::Sl2 s;
  AveragingOp p = AveragingOp::verify(s.g, s.cartan_projection());
  LinOp ef(3, 3);
  ef(s.e, s.e) = 1;
  ef(s.f, s.f) = 1;
  ef(s.h, s.h) = 1;
  ef(s.e, s.h) = 1;
  if (is_averaging(s.g, ef, AveragingMode::lie)) {
    CHECK_THROWS_AS(compose_commuting(s.g, p, AveragingOp::verify(s.g, ef)), PreconditionFailure);
  }
  CHECK(compose_commuting(s.g, p, p).op() == p.op());
}

TEST_CASE("Leibniz algebra from the Cartan projection") {
  testutil::Sl2 s;
  LeibnizResult r = leibniz_check(s.g, s.cartan_projection());
  CHECK(r.ok());
  CHECK(r.kernel == Subspace::span({s.E, s.F}, 3));
  CHECK(r.quotient.dim() == 1);
  // {h,e} = [T h, e] = 2e but {e,h} = [T e, h] = 0
  Vec he = s.g.bracket(s.cartan_projection() * s.H, s.E);
  Vec eh = s.g.bracket(s.cartan_projection() * s.E, s.H);
  CHECK(he == s.E * q(2));
  CHECK(eh.is_zero());

  LinOp bad(3, 3);
  bad(s.e, s.h) = 1;
  CHECK_FALSE(leibniz_check(s.g, bad).ok());
}

TEST_CASE("ConfAveOp trims trailing zeros and evaluates") {
  testutil::Sl2 s;
  LinOp p = s.cartan_projection();
  ConfAveOp t({p, p, Matrix::zero(3)});
  CHECK(t.degree() == 1);
  CHECK(t.coefficient(5).is_zero());
  CHECK(t.evaluate(q(3)) == p * q(4));
  CHECK(ConfAveOp({Matrix::zero(3)}).degree() == 0);
  CHECK_THROWS_AS(ConfAveOp(std::vector<LinOp>{}), RangeError);
  CHECK_THROWS_AS(ConfAveOp({p, Matrix::identity(2)}), DimensionMismatch);
  CHECK_THROWS_AS(ConfAveOp(std::vector<LinOp>(10, p)), RangeError);
}

TEST_CASE("the family (1 + lambda) h on sl2") {
  testutil::Sl2 s;
  LinOp p = s.cartan_projection();
  ConfAveOp t({p, p});
  auto v = is_conformal_averaging(s.g, t);
  CHECK(v.ok);
  CHECK(v.paths_agree);
  CHECK(is_homogeneous(t, build_sl(2).roots));
  CHECK(common_kernel(t) == Subspace::span({s.E, s.F}, 3));
  CHECK(t_star_image(t) == Subspace::span({s.H}, 3));
  CHECK(filtration_term(t, 1) == Subspace::span({s.H}, 3));
  CHECK(filtration_term(t, 2).dim() == 0);
  CHECK(conjugate_family(s.g, t) == t);
}

TEST_CASE("a non-averaging family fails on both paths") {
  testutil::Sl2 s;
  LinOp bad(3, 3);
  bad(s.e, s.h) = 1;
  ConfAveOp t({Matrix::identity(3), bad});
  auto v = is_conformal_averaging(s.g, t);
  CHECK_FALSE(v.ok);
  CHECK(v.paths_agree);
  REQUIRE(v.witness);
  CHECK_FALSE(conformal_identity_holds_at(s.g, t, v.witness->x, v.witness->y, v.witness->n, v.witness->m));
}

TEST_CASE("coefficient and polynomial paths agree on random families") {
  BuiltAlgebra b = build_sl(3);
  auto subs = enumerate_closed_symmetric(b.roots);
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 12; ++trial) {
    const RootSubsystem &sub = subs[static_cast<std::size_t>(trial) % subs.size()];
    HomogeneousSpec spec = random_homogeneous_spec(b.algebra, b.roots, sub, rng, 2);
    ConfAveOp t = homogeneous_build(b.algebra, b.roots, spec);
    auto good = is_conformal_averaging(b.algebra, t);
    CHECK(good.ok);
    CHECK(good.paths_agree);
    CHECK(is_homogeneous(t, b.roots));

    // Perturb one coefficient by a random rank-one term.
    std::vector<LinOp> fam = t.family();
    LinOp noise(8, 8);
    noise(static_cast<std::size_t>(trial) % 8, (static_cast<std::size_t>(trial) * 3 + 1) % 8) =
        random_rational(rng, true);
    fam[static_cast<std::size_t>(trial) % fam.size()] += noise;
    ConfAveOp pert(fam);
    auto par = is_conformal_averaging(b.algebra, pert, Exec::parallel);
    auto ser = is_conformal_averaging(b.algebra, pert, Exec::serial);
    CHECK(par.paths_agree);
    CHECK(par.ok == ser.ok);
    CHECK(par.witness.has_value() == ser.witness.has_value());
    if (par.witness && ser.witness) {
      CHECK(par.witness->x == ser.witness->x);
      CHECK(par.witness->y == ser.witness->y);
      CHECK(par.witness->n == ser.witness->n);
      CHECK(par.witness->m == ser.witness->m);
    }
  }
}

TEST_CASE("homogeneous families satisfy the structure theorems") {
  BuiltAlgebra b = build_sl(3);
  auto subs = enumerate_closed_symmetric(b.roots);
  std::mt19937_64 rng(29);
  for (const auto &sub : subs) {
    HomogeneousSpec spec = random_homogeneous_spec(b.algebra, b.roots, sub, rng, 2, true);
    ConfAveOp t = homogeneous_build(b.algebra, b.roots, spec);
    Report r = verify_structure_theorems(b.algebra, b.roots, t);
    INFO(r.to_json().dump());
    CHECK(r.ok());
    CHECK(r.find("reductive"));
  }
}

TEST_CASE("degenerate h_0^perp family breaks g = T_* + Ker") {
  BuiltAlgebra b = build_sl(3);
  ConfAveOp t = cartan_family(b, {testutil::mat({{q(1), q(0)}, {q(0), q(0)}}),
                                  testutil::mat({{q(0), q(0)}, {q(1), q(0)}})});
  CHECK(is_conformal_averaging(b.algebra, t).ok);
  Report r = verify_structure_theorems(b.algebra, b.roots, t);
  const Check *c = r.find("direct_sum_with_kernel");
  REQUIRE(c);
  CHECK(c->status == Status::fail);
}

TEST_CASE("structure checks are skipped when the precondition fails") {
  testutil::Sl2 s;
  LinOp bad(3, 3);
  bad(s.e, s.h) = 1;
  Report r = verify_structure_theorems(s.g, build_sl(2).roots, ConfAveOp({bad}));
  CHECK_FALSE(r.ok());
  CHECK(r.find("precondition.conformal_averaging")->status == Status::fail);
  CHECK(r.find("reductive")->status == Status::skipped);
}

TEST_CASE("homogeneous_build validates its input") {
  BuiltAlgebra b = build_sl(3);
  auto subs = enumerate_closed_symmetric(b.roots);
  const RootSubsystem &a1 = subsystem_of_size(subs, 2);
  HomogeneousSpec spec{a1, {}, {}};
  CHECK_THROWS_AS(homogeneous_build(b.algebra, b.roots, spec), Error);
  spec.xi[0] = 0;
  CHECK_THROWS_AS(homogeneous_build(b.algebra, b.roots, spec), Error);
  spec.xi[0] = q(2);
  spec.xi[1] = q(1);
  CHECK_THROWS_AS(homogeneous_build(b.algebra, b.roots, spec), Error);
  spec.xi.erase(1);
  ConfAveOp t = homogeneous_build(b.algebra, b.roots, spec);
  CHECK(t.degree() == 0);
  CHECK(t[0] * b.roots.root_vectors[a1.members[0]] == b.roots.root_vectors[a1.members[0]] * q(2));

  // h_0^perp terms must preserve h_0^perp
  LinOp out(8, 8);
  for (std::size_t i = 0; i < 8; ++i) {
    out(b.algebra.index_of("E12"), i) = 1;
  }
  spec.hperp = {out};
  CHECK_THROWS_AS(homogeneous_build(b.algebra, b.roots, spec), Error);

  RootSubsystem open{{a1.members[0]}, {{a1.members[0]}}};
  CHECK_THROWS_AS(homogeneous_build(b.algebra, b.roots, HomogeneousSpec{open, {{0, q(1)}}, {}}), Error);
}

TEST_CASE("xi scales each component of sl2 + sl2 independently") {
  BuiltAlgebra b = direct_sum(build_sl(2), build_sl(2));
  auto subs = enumerate_closed_symmetric(b.roots);
  const RootSubsystem &full = subsystem_of_size(subs, 4);
  REQUIRE(full.components.size() == 2);
  HomogeneousSpec spec{full, {{0, q(3)}, {1, q(-1, 2)}}, {}};
  ConfAveOp t = homogeneous_build(b.algebra, b.roots, spec);
  for (auto a : full.members) {
    Rat x = spec.xi.at(full.component_of(a));
    CHECK(t[0] * b.roots.root_vectors[a] == b.roots.root_vectors[a] * x);
  }
  CHECK(is_conformal_averaging(b.algebra, t).ok);
}

TEST_CASE("h_0 and h_0^perp are complementary in h") {
  BuiltAlgebra b = build_sl(4);
  auto subs = enumerate_closed_symmetric(b.roots);
  Subspace h = Subspace::span(b.roots.cartan, 15);
  for (const auto &s : subs) {
    Subspace h0 = h0_subspace(b.roots, s.members, 15);
    Subspace hp = hperp_subspace(b.roots, s.members, 15);
    CHECK(h0.dim() + hp.dim() == 3);
    CHECK((h0 + hp) == h);
    CHECK(h0.intersect(hp).dim() == 0);
  }
}
