#include "cybeforge/errors.hpp"
#include "cybeforge/serialize.hpp"

#include <doctest.h>

#include "helpers.hpp"

#include <cstdio>
#include <filesystem>

using namespace cybeforge;
using testutil::q;

TEST_CASE("Lie algebra and root datum round trip") {
  BuiltAlgebra b = build_sl(3);
  json j = lie_algebra_json(b.algebra);
  CHECK(j["schema"] == "lie-algebra.v1");
  CHECK(j["dim"] == 8);
  LieAlgebra back = lie_algebra_from_json(j);
  CHECK(back == b.algebra);
  RootDatum rd = root_datum_from_json(root_datum_json(b.roots), back);
  CHECK(rd.roots == b.roots.roots);
  CHECK(rd.root_vectors == b.roots.root_vectors);
  CHECK(rd.sum_index == b.roots.sum_index);

  json broken = root_datum_json(b.roots);
  broken["coroots"][0] = vec_json(Vec(8));
  CHECK_THROWS_AS(root_datum_from_json(broken, back), ParseError);
}

TEST_CASE("operator and element round trips") {
  BuiltAlgebra b = build_sl(3);
  auto subs = enumerate_closed_symmetric(b.roots);
  std::mt19937_64 rng(79);
  HomogeneousSpec spec = random_homogeneous_spec(b.algebra, b.roots, subs[1], rng, 2, true);
  ConfAveOp t = homogeneous_build(b.algebra, b.roots, spec);
  CHECK(conf_ave_op_from_json(conf_ave_op_json(t)) == t);

  HomogeneousSpec sback = homog_spec_from_json(homog_spec_json(spec), b.roots, 8);
  CHECK(sback.subsystem.members == spec.subsystem.members);
  CHECK(sback.xi == spec.xi);
  CHECK(homogeneous_build(b.algebra, b.roots, sback) == t);

  LaurentOp p(8);
  p.set(-2, testutil::random_matrix(rng, 8, 8));
  p.set(1, testutil::random_matrix(rng, 8, 8));
  CHECK(laurent_op_from_json(laurent_op_json(p)) == p);

  ConfElem e = ConfElem::term(3, testutil::random_vec(rng, 8)) + ConfElem::generator(testutil::random_vec(rng, 8));
  CHECK(conf_elem_from_json(conf_elem_json(e), 8) == e);
}

TEST_CASE("rationals are written as strings and parsed exactly") {
  json v = vec_json(testutil::vec({q(1, 3), q(-2), q(0)}));
  CHECK(v[0] == "1/3");
  CHECK(vec_from_json(v, 3) == testutil::vec({q(1, 3), q(-2), q(0)}));
  CHECK_THROWS_AS(vec_from_json(v, 2), Error);
  CHECK_THROWS_AS(vec_from_json(json::array({"1/0", "1", "2"}), 3), Error);
}

TEST_CASE("readers reject unknown schemas") {
  json j = lie_algebra_json(build_sl(2).algebra);
  j["schema"] = "lie-algebra.v9";
  CHECK_THROWS_AS(lie_algebra_from_json(j), ParseError);
  json c = conf_ave_op_json(ConfAveOp({Matrix::identity(3)}));
  CHECK_THROWS_AS(lie_algebra_from_json(c), ParseError);
  c.erase("schema");
  CHECK_THROWS_AS(conf_ave_op_from_json(c), ParseError);
}

TEST_CASE("digests are deterministic and content sensitive") {
  json a = lie_algebra_json(build_sl(3).algebra);
  json b = lie_algebra_json(build_sl(3).algebra);
  CHECK(digest(a) == digest(b));
  CHECK(digest(a).size() == 16);
  CHECK(digest(a) != digest(lie_algebra_json(build_sl(2).algebra)));
}

TEST_CASE("report JSON and files") {
  Report r;
  r.add("b_check", true);
  r.add("a_check", false, nullptr, "boom");
  json j = report_json(r, RunInfo{"cybe check", {{"p", "x.json"}}, 7, 1.5});
  CHECK(j["schema"] == "report.v1");
  CHECK(j["status"] == "fail");
  CHECK(j["checks"][0]["name"] == "a_check");
  CHECK(j["checks"][0]["witness"]["detail"] == "boom");
  CHECK(j["seed"] == 7);

  auto path = (std::filesystem::temp_directory_path() / "cybeforge_test_report.json").string();
  write_json_file(path, j);
  CHECK(read_json_file(path) == j);
  std::remove(path.c_str());
  CHECK_THROWS_AS(read_json_file(path), Error);
}
