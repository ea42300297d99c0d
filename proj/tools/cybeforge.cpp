#include "cybeforge/averaging.hpp"
#include "cybeforge/conformal.hpp"
#include "cybeforge/cybe.hpp"
#include "cybeforge/errors.hpp"
#include "cybeforge/liealg.hpp"
#include "cybeforge/serialize.hpp"
#include "cybeforge/sweep.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace cybeforge;

namespace {

constexpr int exit_pass = 0;
constexpr int exit_fail = 1;
constexpr int exit_usage = 2;

struct UsageError : Error {
  using Error::Error;
};

std::uint64_t default_seed() {
  if (const char *s = std::getenv("CYBE_FORGE_SEED")) {
    try {
      return std::stoull(s);
    } catch (const std::exception &) {
      throw UsageError("CYBE_FORGE_SEED is not an unsigned integer");
    }
  }
  return 20240601;
}

struct Options {
  // lie
  std::string type = "sl";
  int n = 0;
  std::string sum;
  std::string in;
  std::string roots;
  std::string out;
  std::string roots_out;
  // operators
  std::string op;
  std::string preset;
  std::string laurent;
  std::string mode = "lie";
  std::string symmetry = "strict";
  int nmax = 3;
  // homogeneous
  int subsystem = -1;
  std::string xi;
  int hperp_deg = 0;
  std::uint64_t seed = 0;
  // report
  int rank_max = 3;
  int trials = 3;
  std::string fixture;
  std::string report;
};

std::string roots_path_for(const std::string &algebra_path) {
  std::filesystem::path p(algebra_path);
  return (p.parent_path() / (p.stem().string() + ".roots.json")).string();
}

LieAlgebra load_algebra(const Options &o) {
  if (o.in.empty()) {
    throw UsageError("--in <lie-algebra.v1 file> is required");
  }
  return lie_algebra_from_json(read_json_file(o.in));
}

RootDatum load_roots(const Options &o, const LieAlgebra &g) {
  std::string path = o.roots.empty() ? roots_path_for(o.in) : o.roots;
  if (!std::filesystem::exists(path)) {
    throw UsageError("root datum file " + path + " not found (use --roots)");
  }
  return root_datum_from_json(read_json_file(path), g);
}

LinOp cartan_projection(const LieAlgebra &g, const RootDatum &rd) {
  std::vector<Vec> domain = rd.cartan;
  std::vector<Vec> images = rd.cartan;
  for (const auto &x : rd.root_vectors) {
    domain.push_back(x);
    images.push_back(Vec(g.dim()));
  }
  return Matrix::from_columns(images, g.dim()) * inverse(Matrix::from_columns(domain, g.dim()));
}

ConfAveOp load_family(const Options &o, const LieAlgebra &g) {
  if (!o.preset.empty() && !o.op.empty()) {
    throw UsageError("--op and --preset are exclusive");
  }
  if (!o.preset.empty()) {
    if (o.preset == "identity") {
      return ConfAveOp({Matrix::identity(g.dim())});
    }
    if (o.preset == "zero") {
      return ConfAveOp({Matrix::zero(g.dim())});
    }
    if (o.preset == "cartan-projection") {
      return ConfAveOp({cartan_projection(g, load_roots(o, g))});
    }
    throw UsageError("unknown preset " + o.preset);
  }
  if (o.op.empty()) {
    throw UsageError("--op <conf-ave-op.v1 file> or --preset is required");
  }
  ConfAveOp t = conf_ave_op_from_json(read_json_file(o.op));
  if (t.dim() != g.dim()) {
    throw UsageError("operator dimension " + std::to_string(t.dim()) + " does not match algebra dimension " +
                     std::to_string(g.dim()));
  }
  return t;
}

LinOp load_single(const Options &o, const LieAlgebra &g) {
  ConfAveOp t = load_family(o, g);
  if (t.degree() != 0) {
    throw UsageError("expected a single operator (family of degree 0)");
  }
  return t[0];
}

nlohmann::json conf_witness(const LieAlgebra &g, const ConfAveWitness &w) {
  nlohmann::json j{{"x", g.label(w.x)}, {"y", g.label(w.y)}};
  if (w.coordinate) {
    j["coordinate"] = g.label(*w.coordinate);
  } else {
    j["n"] = w.n;
    j["m"] = w.m;
  }
  return j;
}

void add_validation(Report &rep, const LieAlgebra &g, const ValidationReport &v, const std::string &prefix = {}) {
  auto pair = [&](const std::array<std::size_t, 2> &w) {
    return nlohmann::json{{"x", g.label(w[0])}, {"y", g.label(w[1])}};
  };
  auto triple = [&](const std::array<std::size_t, 3> &w) {
    return nlohmann::json{{"x", g.label(w[0])}, {"y", g.label(w[1])}, {"z", g.label(w[2])}};
  };
  rep.add(prefix + "antisymmetry", v.antisymmetric,
          v.antisymmetry_witness ? pair(*v.antisymmetry_witness) : nlohmann::json());
  rep.add(prefix + "jacobi", v.jacobi, v.jacobi_witness ? triple(*v.jacobi_witness) : nlohmann::json());
}

void add_cybe(Report &rep, const LieAlgebra &g, const LaurentOp &p) {
  KillingForm kf(g);
  CybeVerdict v = cybe_check_operator(g, kf, p);
  rep.add("cybe_poleform", v.poleform_ok,
          v.witness ? nlohmann::json{{"x", g.label(v.witness->x)},
                                     {"y", g.label(v.witness->y)},
                                     {"coordinate", g.label(v.witness->coordinate)},
                                     {"value", poleform_json(v.witness->value)}}
                    : nlohmann::json());
  rep.add("cybe_grid", v.grid_ok,
          v.grid_witness ? nlohmann::json{{"x", g.label(v.grid_witness->x)},
                                          {"y", g.label(v.grid_witness->y)},
                                          {"u", format_rat(v.grid_witness->u)},
                                          {"v", format_rat(v.grid_witness->v)}}
                         : nlohmann::json());
  TensorVerdict tv = cybe_check_tensor(g, op_series_to_tensor(kf, p));
  rep.add("tensor_agrees", tv.ok == v.poleform_ok, {{"tensor", tv.ok}, {"operator", v.poleform_ok}});
}

/// Parses "c:val,c:val". Keys must be nonnegative integers.
std::map<std::size_t, Rat> parse_xi(const std::string &s) {
  std::map<std::size_t, Rat> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) {
      continue;
    }
    auto colon = item.find(':');
    if (colon == std::string::npos) {
      throw UsageError("--xi entries are <component>:<p/q>, got " + item);
    }
    try {
      out[std::stoul(item.substr(0, colon))] = parse_rat(item.substr(colon + 1));
    } catch (const std::logic_error &) {
      throw UsageError("bad --xi entry " + item);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Commands. Each fills the report and the inputs record.
// ---------------------------------------------------------------------------

using Command = std::function<void(const Options &, Report &, nlohmann::json &)>;

void cmd_lie_build(const Options &o, Report &rep, nlohmann::json &inputs) {
  if (o.out.empty()) {
    throw UsageError("--out <file> is required");
  }
  std::optional<BuiltAlgebra> built;
  std::optional<LieAlgebra> plain;
  if (!o.sum.empty()) {
    auto comma = o.sum.find(',');
    if (comma == std::string::npos) {
      throw UsageError("--sum expects <file,file>");
    }
    std::string fa = o.sum.substr(0, comma);
    std::string fb = o.sum.substr(comma + 1);
    inputs["sum"] = {fa, fb};
    LieAlgebra a = lie_algebra_from_json(read_json_file(fa));
    LieAlgebra b = lie_algebra_from_json(read_json_file(fb));
    if (std::filesystem::exists(roots_path_for(fa)) && std::filesystem::exists(roots_path_for(fb))) {
      RootDatum ra = root_datum_from_json(read_json_file(roots_path_for(fa)), a);
      RootDatum rb = root_datum_from_json(read_json_file(roots_path_for(fb)), b);
      built = direct_sum(BuiltAlgebra{a, ra}, BuiltAlgebra{b, rb});
    } else {
      plain = direct_sum(a, b);
    }
  } else {
    inputs["type"] = o.type;
    inputs["n"] = o.n;
    if (o.type == "sl") {
      if (o.n < 2 || o.n > 6) {
        throw UsageError("--n must be between 2 and 6 for sl");
      }
      built = build_sl(o.n);
    } else if (o.type == "abelian") {
      if (o.n < 1) {
        throw UsageError("--n must be positive");
      }
      plain = build_abelian(static_cast<std::size_t>(o.n));
    } else {
      throw UsageError("unknown --type " + o.type);
    }
  }
  const LieAlgebra &g = built ? built->algebra : *plain;
  write_json_file(o.out, lie_algebra_json(g));
  rep.info("algebra", "written to " + o.out, {{"dim", g.dim()}});
  if (built) {
    std::string rpath = o.roots_out.empty() ? roots_path_for(o.out) : o.roots_out;
    write_json_file(rpath, root_datum_json(built->roots));
    rep.info("root_datum", "written to " + rpath, {{"rank", built->roots.rank()}, {"roots", built->roots.size()}});
  }
  add_validation(rep, g, validate(g));
}

void cmd_lie_validate(const Options &o, Report &rep, nlohmann::json &inputs) {
  inputs["in"] = o.in;
  LieAlgebra g = load_algebra(o);
  add_validation(rep, g, validate(g));
  KillingForm kf(g);
  rep.info("killing", kf.nondegenerate() ? "Killing form nondegenerate" : "Killing form degenerate",
           {{"dim", g.dim()}});
}

void cmd_roots_subsystems(const Options &o, Report &rep, nlohmann::json &inputs) {
  inputs["in"] = o.in;
  LieAlgebra g = load_algebra(o);
  RootDatum rd = load_roots(o, g);
  std::vector<RootSubsystem> subs;
  try {
    subs = enumerate_closed_symmetric(rd);
  } catch (const BudgetExceeded &e) {
    rep.add("enumeration_budget", false, {{"pairs", rd.size() / 2}, {"limit", max_enumeration_pairs}}, e.what());
    return;
  }
  nlohmann::json list = nlohmann::json::array();
  for (std::size_t i = 0; i < subs.size(); ++i) {
    list.push_back({{"index", i}, {"members", subs[i].members}, {"components", subs[i].components}});
  }
  rep.info("subsystems", std::to_string(subs.size()) + " closed symmetric subsystems", list);
  std::optional<std::size_t> bad;
  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (!is_closed_symmetric(rd, subs[i].members)) {
      bad = i;
      break;
    }
  }
  rep.add("closed_symmetric", !bad, bad ? nlohmann::json{{"index", *bad}} : nlohmann::json());
}

void cmd_avg_check(const Options &o, Report &rep, nlohmann::json &inputs) {
  inputs = {{"in", o.in}, {"op", o.op}, {"preset", o.preset}, {"mode", o.mode}};
  LieAlgebra g = load_algebra(o);
  LinOp t = load_single(o, g);
  AveragingMode mode = o.mode == "associative" ? AveragingMode::associative : AveragingMode::lie;
  auto w = averaging_witness(g, t, mode);
  rep.add("averaging", !w,
          w ? nlohmann::json{{"a", g.label(w->a)}, {"b", g.label(w->b)}, {"side", w->side}} : nlohmann::json());
}

void cmd_avg_conf_check(const Options &o, Report &rep, nlohmann::json &inputs) {
  inputs = {{"in", o.in}, {"op", o.op}, {"preset", o.preset}};
  LieAlgebra g = load_algebra(o);
  ConfAveOp t = load_family(o, g);
  ConfAveVerdict v = is_conformal_averaging(g, t);
  rep.add("conformal_averaging", v.ok, v.witness ? conf_witness(g, *v.witness) : nlohmann::json());
  rep.add("paths_agree", v.paths_agree,
          {{"coefficient", v.witness.has_value()}, {"bipoly", v.bipoly_witness.has_value()}});
}

void cmd_avg_homogeneous(const Options &o, Report &rep, nlohmann::json &inputs) {
  inputs = {{"in", o.in}, {"subsystem", o.subsystem}, {"xi", o.xi}, {"hperp_deg", o.hperp_deg}};
  if (o.out.empty()) {
    throw UsageError("--out <file> is required");
  }
  if (o.hperp_deg < 0 || o.hperp_deg > static_cast<int>(ConfAveOp::max_degree)) {
    throw UsageError("--hperp-deg must be between 0 and " + std::to_string(ConfAveOp::max_degree));
  }
  LieAlgebra g = load_algebra(o);
  RootDatum rd = load_roots(o, g);
  std::vector<RootSubsystem> subs = enumerate_closed_symmetric(rd);
  if (o.subsystem < 0 || static_cast<std::size_t>(o.subsystem) >= subs.size()) {
    throw UsageError("--subsystem must be an index below " + std::to_string(subs.size()));
  }
  const RootSubsystem &sub = subs[static_cast<std::size_t>(o.subsystem)];
  std::mt19937_64 rng(o.seed);
  HomogeneousSpec spec = random_homogeneous_spec(g, rd, sub, rng, static_cast<std::size_t>(o.hperp_deg), true);
  std::map<std::size_t, Rat> given = parse_xi(o.xi);
  spec.xi.clear();
  for (std::size_t c = 0; c < sub.components.size(); ++c) {
    auto it = given.find(c);
    spec.xi[c] = it == given.end() ? Rat(1) : it->second;
  }
  for (const auto &[c, v] : given) {
    if (c >= sub.components.size()) {
      rep.info("xi_ignored", "no component " + std::to_string(c) + " in this subsystem", {{"component", c}});
    }
  }
  ConfAveOp t = homogeneous_build(g, rd, spec, false);
  ConfAveVerdict v = is_conformal_averaging(g, t);
  rep.add("conformal_averaging", v.ok, v.witness ? conf_witness(g, *v.witness) : nlohmann::json());
  rep.add("homogeneous", is_homogeneous(t, rd));
  write_json_file(o.out, conf_ave_op_json(t));
  rep.info("family", "written to " + o.out,
           {{"N", t.degree()}, {"subsystem", sub.members}, {"spec", homog_spec_json(spec)}});
}

void cmd_avg_leibniz(const Options &o, Report &rep, nlohmann::json &inputs) {
  inputs = {{"in", o.in}, {"op", o.op}, {"preset", o.preset}, {"nmax", o.nmax}};
  LieAlgebra g = load_algebra(o);
  ConfAveOp t = load_family(o, g);
  if (t.degree() == 0) {
    LeibnizResult r = leibniz_check(g, t[0]);
    rep.add("leibniz_identity", r.leibniz_identity,
            r.leibniz_witness ? nlohmann::json{{"x", g.label((*r.leibniz_witness)[0])},
                                               {"y", g.label((*r.leibniz_witness)[1])},
                                               {"z", g.label((*r.leibniz_witness)[2])}}
                              : nlohmann::json());
    rep.add("kernel_is_ideal", r.kernel_is_ideal);
    add_validation(rep, r.quotient, r.quotient_validation, "quotient.");
    rep.info("quotient", "Leibniz quotient g / Ker T", {{"dim", r.quotient.dim()}, {"labels", r.quotient.labels()}});
  }
  CurAlgebra c(g);
  ConfOperator op(t);
  try {
    rep.merge(leibniz_products_and_check(c, op, o.nmax), "conformal.");
  } catch (const PreconditionFailure &e) {
    rep.add("conformal.precondition", false, nullptr, e.what());
    return;
  }
  KernelQuotient kq = kernel_and_quotient(c, op);
  rep.merge(check_kernel_ideal(c, op, kq.kernel, o.nmax), "conformal.");
  add_validation(rep, kq.quotient, kq.quotient_validation, "conformal.quotient.");
  std::string rpath = o.roots.empty() ? roots_path_for(o.in) : o.roots;
  if (std::filesystem::exists(rpath) && is_homogeneous(t, root_datum_from_json(read_json_file(rpath), g))) {
    RootDatum rd = root_datum_from_json(read_json_file(rpath), g);
    rep.merge(split_null_prediction(g, rd, t, kq), "conformal.split_null.");
  }
}

void cmd_avg_structure(const Options &o, Report &rep, nlohmann::json &inputs) {
  inputs = {{"in", o.in}, {"op", o.op}, {"preset", o.preset}};
  LieAlgebra g = load_algebra(o);
  RootDatum rd = load_roots(o, g);
  ConfAveOp t = load_family(o, g);
  rep.merge(verify_structure_theorems(g, rd, t));
}

LaurentOp load_laurent(const Options &o, const LieAlgebra *g) {
  if (o.laurent.empty()) {
    throw UsageError("--p <laurent-op.v1 file> is required");
  }
  LaurentOp p = laurent_op_from_json(read_json_file(o.laurent));
  if (g && p.dim() != g->dim()) {
    throw UsageError("Laurent operator dimension does not match algebra");
  }
  return p;
}

void cmd_cybe_check(const Options &o, Report &rep, nlohmann::json &inputs) {
  inputs = {{"in", o.in}, {"p", o.laurent}};
  LieAlgebra g = load_algebra(o);
  add_cybe(rep, g, load_laurent(o, &g));
}

void cmd_cybe_residue(const Options &o, Report &rep, nlohmann::json &inputs) {
  inputs = {{"p", o.laurent}};
  if (o.out.empty()) {
    throw UsageError("--out <file> is required");
  }
  ConfAveOp t = residue_extract(load_laurent(o, nullptr));
  write_json_file(o.out, conf_ave_op_json(t));
  rep.info("family", "residue T_m = P_{-m-1} written to " + o.out, {{"N", t.degree()}});
  if (!o.in.empty()) {
    LieAlgebra g = load_algebra(o);
    ConfAveVerdict v = is_conformal_averaging(g, t);
    rep.add("residue_conformal_averaging", v.ok, v.witness ? conf_witness(g, *v.witness) : nlohmann::json());
  }
}

void cmd_cybe_from_avg(const Options &o, Report &rep, nlohmann::json &inputs) {
  inputs = {{"in", o.in}, {"op", o.op}, {"preset", o.preset}, {"symmetry", o.symmetry}};
  if (o.out.empty()) {
    throw UsageError("--out <file> is required");
  }
  LieAlgebra g = load_algebra(o);
  LinOp t = load_single(o, g);
  auto w = averaging_witness(g, t, AveragingMode::lie);
  rep.add("averaging", !w,
          w ? nlohmann::json{{"a", g.label(w->a)}, {"b", g.label(w->b)}, {"side", w->side}} : nlohmann::json());
  if (w) {
    return;
  }
  SymmetryMode mode = o.symmetry == "relaxed" ? SymmetryMode::relaxed : SymmetryMode::strict;
  LaurentOp p;
  try {
    p = solution_from_symmetric_averaging(g, AveragingOp::verify(g, t, AveragingMode::lie), mode);
  } catch (const PreconditionFailure &e) {
    rep.add("symmetry", false, nullptr, e.what());
    return;
  }
  rep.add("symmetry", true);
  write_json_file(o.out, laurent_op_json(p));
  add_cybe(rep, g, p);
}

void cmd_cybe_from_conf_avg(const Options &o, Report &rep, nlohmann::json &inputs) {
  inputs = {{"in", o.in}, {"op", o.op}, {"preset", o.preset}};
  if (o.out.empty()) {
    throw UsageError("--out <file> is required");
  }
  LieAlgebra g = load_algebra(o);
  RootDatum rd = load_roots(o, g);
  ConfAveOp t = load_family(o, g);
  LaurentOp p;
  try {
    p = solution_from_conformal_averaging(g, rd, t);
  } catch (const PreconditionFailure &e) {
    rep.add("precondition", false, nullptr, e.what());
    return;
  }
  write_json_file(o.out, laurent_op_json(p));
  add_cybe(rep, g, p);
}

void cmd_cybe_rb_check(const Options &o, Report &rep, nlohmann::json &inputs) {
  inputs = {{"in", o.in}, {"op", o.op}, {"preset", o.preset}};
  LieAlgebra g = load_algebra(o);
  LinOp r = load_single(o, g);
  RotaBaxterVerdict v = rota_baxter_check(g, r);
  auto pair = [&](const std::optional<std::array<std::size_t, 2>> &w) {
    return w ? nlohmann::json{{"x", g.label((*w)[0])}, {"y", g.label((*w)[1])}} : nlohmann::json();
  };
  rep.add("rota_baxter", v.ok, pair(v.witness));
  if (v.ok != v.literal_ok) {
    rep.info("rota_baxter_repeated_term", "the reading [Rx,Ry] = 2R([x,Ry]) gives a different verdict",
             {{"holds", v.literal_ok}, {"witness", pair(v.literal_witness)}});
  }
}

void cmd_report_run_all(const Options &o, Report &rep, nlohmann::json &inputs) {
  inputs = {{"rank_max", o.rank_max}, {"trials", o.trials}, {"fixture", o.fixture}};
  SweepOptions so;
  so.rank_max = o.rank_max;
  so.seed = o.seed;
  so.trials = o.trials;
  if (!o.fixture.empty()) {
    so.fixture = o.fixture;
  }
  try {
    rep.merge(run_all(so));
  } catch (const RangeError &e) {
    throw UsageError(e.what());
  }
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Exact verification of averaging operators, conformal algebras and CYBE solutions"};
  app.require_subcommand(1);
  Options o;
  std::string command;
  Command run;

  std::uint64_t seed_default = 0;
  try {
    seed_default = default_seed();
  } catch (const UsageError &e) {
    std::cerr << e.what() << '\n';
    return exit_usage;
  }
  o.seed = seed_default;

  auto add_report = [&](CLI::App *sub) { sub->add_option("--report", o.report, "write the report here"); };
  auto add_in = [&](CLI::App *sub) {
    sub->add_option("--in", o.in, "lie-algebra.v1 file");
    sub->add_option("--roots", o.roots, "root-datum.v1 file (default: <in>.roots.json)");
  };
  auto add_op = [&](CLI::App *sub) {
    sub->add_option("--op", o.op, "conf-ave-op.v1 file");
    sub->add_option("--preset", o.preset, "identity | zero | cartan-projection");
  };
  auto bind = [&](CLI::App *sub, const std::string &name, Command fn) {
    sub->callback([&, name, fn] {
      command = name;
      run = fn;
    });
    add_report(sub);
  };

  auto *lie = app.add_subcommand("lie", "Lie algebras");
  lie->require_subcommand(1);
  auto *lie_build = lie->add_subcommand("build", "build an algebra and its root datum");
  lie_build->add_option("--type", o.type, "sl | abelian");
  lie_build->add_option("--n", o.n, "matrix size for sl, dimension for abelian");
  lie_build->add_option("--sum", o.sum, "direct sum of two lie-algebra.v1 files: a.json,b.json");
  lie_build->add_option("--out", o.out, "lie-algebra.v1 output");
  lie_build->add_option("--roots-out", o.roots_out, "root-datum.v1 output (default: <out>.roots.json)");
  bind(lie_build, "lie build", cmd_lie_build);
  auto *lie_validate = lie->add_subcommand("validate", "check antisymmetry and Jacobi");
  add_in(lie_validate);
  lie_validate->add_option("file", o.in, "lie-algebra.v1 file");
  bind(lie_validate, "lie validate", cmd_lie_validate);

  auto *roots = app.add_subcommand("roots", "root systems");
  roots->require_subcommand(1);
  auto *roots_sub = roots->add_subcommand("subsystems", "enumerate closed symmetric subsystems");
  add_in(roots_sub);
  bind(roots_sub, "roots subsystems", cmd_roots_subsystems);

  auto *avg = app.add_subcommand("avg", "averaging operators");
  avg->require_subcommand(1);
  auto *avg_check = avg->add_subcommand("check", "ordinary averaging identity");
  add_in(avg_check);
  add_op(avg_check);
  avg_check->add_option("--mode", o.mode, "lie | associative")->check(CLI::IsMember({"lie", "associative"}));
  bind(avg_check, "avg check", cmd_avg_check);
  auto *avg_conf = avg->add_subcommand("conf-check", "conformal averaging identity");
  add_in(avg_conf);
  add_op(avg_conf);
  bind(avg_conf, "avg conf-check", cmd_avg_conf_check);
  auto *avg_hom = avg->add_subcommand("homogeneous", "build a homogeneous conformal averaging family");
  add_in(avg_hom);
  avg_hom->add_option("--subsystem", o.subsystem, "subsystem index from roots subsystems")->required();
  avg_hom->add_option("--xi", o.xi, "component:value list, default 1 per component");
  avg_hom->add_option("--hperp-deg", o.hperp_deg, "degree of the random family on h_0^perp");
  avg_hom->add_option("--seed", o.seed, "random seed (default: CYBE_FORGE_SEED)");
  avg_hom->add_option("--out", o.out, "conf-ave-op.v1 output");
  bind(avg_hom, "avg homogeneous", cmd_avg_homogeneous);
  auto *avg_leib = avg->add_subcommand("leibniz", "Leibniz products, kernel and quotient");
  add_in(avg_leib);
  add_op(avg_leib);
  avg_leib->add_option("--nmax", o.nmax, "largest n-product index")->check(CLI::Range(0, 8));
  bind(avg_leib, "avg leibniz", cmd_avg_leibniz);
  auto *avg_struct = avg->add_subcommand("structure", "structure checks for homogeneous families");
  add_in(avg_struct);
  add_op(avg_struct);
  bind(avg_struct, "avg structure", cmd_avg_structure);

  auto *cybe = app.add_subcommand("cybe", "classical Yang-Baxter equation");
  cybe->require_subcommand(1);
  auto *cybe_check = cybe->add_subcommand("check", "operator CYBE with tensor cross-check");
  add_in(cybe_check);
  cybe_check->add_option("--p", o.laurent, "laurent-op.v1 file");
  bind(cybe_check, "cybe check", cmd_cybe_check);
  auto *cybe_res = cybe->add_subcommand("residue", "residue family of a Laurent operator");
  add_in(cybe_res);
  cybe_res->add_option("--p", o.laurent, "laurent-op.v1 file");
  cybe_res->add_option("--out", o.out, "conf-ave-op.v1 output");
  bind(cybe_res, "cybe residue", cmd_cybe_residue);
  auto *cybe_avg = cybe->add_subcommand("from-avg", "P_u = T/u from a symmetric averaging operator");
  add_in(cybe_avg);
  add_op(cybe_avg);
  cybe_avg->add_option("--symmetry", o.symmetry, "strict | relaxed")->check(CLI::IsMember({"strict", "relaxed"}));
  cybe_avg->add_option("--out", o.out, "laurent-op.v1 output");
  bind(cybe_avg, "cybe from-avg", cmd_cybe_from_avg);
  auto *cybe_conf = cybe->add_subcommand("from-conf-avg", "P_u = u^-1 T_{1/u} from a homogeneous family");
  add_in(cybe_conf);
  add_op(cybe_conf);
  cybe_conf->add_option("--out", o.out, "laurent-op.v1 output");
  bind(cybe_conf, "cybe from-conf-avg", cmd_cybe_from_conf_avg);
  auto *cybe_rb = cybe->add_subcommand("rb-check", "weight-0 Rota-Baxter identity");
  add_in(cybe_rb);
  add_op(cybe_rb);
  bind(cybe_rb, "cybe rb-check", cmd_cybe_rb_check);

  auto *report = app.add_subcommand("report", "acceptance sweep");
  report->require_subcommand(1);
  auto *run_all_cmd = report->add_subcommand("run-all", "run every acceptance criterion");
  run_all_cmd->add_option("--rank-max", o.rank_max, "largest rank of sl_n included");
  run_all_cmd->add_option("--seed", o.seed, "random seed (default: CYBE_FORGE_SEED)");
  run_all_cmd->add_option("--trials", o.trials, "random families per subsystem");
  run_all_cmd->add_option("--fixture", o.fixture, "extra conf-ave-op.v1 family to include");
  bind(run_all_cmd, "report run-all", cmd_report_run_all);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int rc = app.exit(e);
    return rc == 0 ? exit_pass : exit_usage;
  }

  Report rep;
  RunInfo info;
  info.command = command;
  info.seed = o.seed;
  auto start = std::chrono::steady_clock::now();
  int rc = exit_pass;
  try {
    run(o, rep, info.inputs);
    rc = rep.ok() ? exit_pass : exit_fail;
  } catch (const UsageError &e) {
    rep.add("usage", false, nullptr, e.what());
    rc = exit_usage;
  } catch (const ParseError &e) {
    rep.add("input", false, nullptr, e.what());
    rc = exit_usage;
  } catch (const DimensionMismatch &e) {
    rep.add("input", false, nullptr, e.what());
    rc = exit_usage;
  } catch (const nlohmann::json::exception &e) {
    rep.add("input", false, nullptr, e.what());
    rc = exit_usage;
  } catch (const PreconditionFailure &e) {
    rep.add("precondition", false, nullptr, e.what());
    rc = exit_fail;
  } catch (const Error &e) {
    rep.add("error", false, nullptr, e.what());
    rc = exit_fail;
  }
  info.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  nlohmann::json out = report_json(rep, info);
  if (rc == exit_usage) {
    out["status"] = "error";
  }
  if (o.report.empty()) {
    std::cout << out.dump(2) << '\n';
  } else {
    try {
      write_json_file(o.report, out);
    } catch (const Error &e) {
      std::cerr << e.what() << '\n';
      return exit_usage;
    }
  }
  if (rc != exit_pass) {
    if (const Check *bad = rep.first_failure()) {
      std::cerr << command << ": " << bad->name << ": " << (bad->detail.empty() ? "failed" : bad->detail) << '\n';
    }
  }
  return rc;
}
