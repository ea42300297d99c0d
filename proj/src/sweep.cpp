#include "cybeforge/sweep.hpp"

#include "cybeforge/conformal.hpp"
#include "cybeforge/errors.hpp"
#include "cybeforge/serialize.hpp"

#include <map>
#include <random>

namespace cybeforge {

namespace {

// Closed symmetric subset counts; A3 fixed at first derivation.
const std::map<std::string, std::size_t> golden_subsystem_counts{
    {"sl2", 2}, {"sl3", 5}, {"sl4", 15}, {"sl2+sl2", 4}};

std::size_t algebra_for_dim(const SweepContext &ctx, std::size_t dim) {
  for (std::size_t i = 0; i < ctx.algebras.size(); ++i) {
    if (ctx.algebras[i].built.algebra.dim() == dim) {
      return i;
    }
  }
  throw ParseError("fixture dimension " + std::to_string(dim) + " matches no sweep algebra");
}

nlohmann::json conf_witness_json(const LieAlgebra &g, const ConfAveWitness &w) {
  nlohmann::json j{{"x", g.label(w.x)}, {"y", g.label(w.y)}};
  if (w.coordinate) {
    j["coordinate"] = g.label(*w.coordinate);
  } else {
    j["n"] = w.n;
    j["m"] = w.m;
  }
  return j;
}

Matrix dense_ad(const LieAlgebra &g, std::size_t i) {
  Matrix m(g.dim(), g.dim());
  for (std::size_t j = 0; j < g.dim(); ++j) {
    for (std::size_t k = 0; k < g.dim(); ++k) {
      m(k, j) = g.structure_constant(i, j, k);
    }
  }
  return m;
}

template <class Fn>
Report per_family(SweepContext &ctx, Fn &&fn) {
  auto reports = indexed_map<Report>(ctx.families.size(), ctx.options.exec,
                                     [&](std::size_t i) { return fn(ctx.families[i]); });
  Report out;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    out.merge(reports[i], ctx.families[i].name + ".");
  }
  return out;
}

const SweepAlgebra &algebra_of(const SweepContext &ctx, const FamilyCase &f) { return ctx.algebras[f.algebra]; }

// ---------------------------------------------------------------------------

Report criterion1(SweepContext &ctx) {
  Report rep;
  for (const auto &a : ctx.algebras) {
    const LieAlgebra &g = a.built.algebra;
    ValidationReport v = validate(g, ctx.options.exec);
    rep.add(a.name + ".validate", v.ok(),
            v.ok() ? nlohmann::json()
                   : nlohmann::json{{"antisymmetry", v.antisymmetry_witness ? nlohmann::json(*v.antisymmetry_witness)
                                                                            : nlohmann::json()},
                                    {"jacobi", v.jacobi_witness ? nlohmann::json(*v.jacobi_witness)
                                                                : nlohmann::json()}});
    KillingForm kf(g);
    const std::size_t n = g.dim();
    auto w = first_failure<std::array<std::size_t, 3>>(
        n * n * n, ctx.options.exec, [&](std::size_t idx) -> std::optional<std::array<std::size_t, 3>> {
          std::size_t x = idx / (n * n);
          std::size_t y = (idx / n) % n;
          std::size_t z = idx % n;
          Vec ex = g.basis_vector(x);
          Vec ey = g.basis_vector(y);
          Vec ez = g.basis_vector(z);
          if (kf.pair(g.bracket(ex, ey), ez) + kf.pair(ey, g.bracket(ex, ez)) != 0) {
            return std::array<std::size_t, 3>{x, y, z};
          }
          return std::nullopt;
        });
    rep.add(a.name + ".killing_invariance", !w,
            w ? nlohmann::json{{"x", g.label((*w)[0])}, {"y", g.label((*w)[1])}, {"z", g.label((*w)[2])}}
              : nlohmann::json());
  }
  // sl2 Killing values against traces of dense ad products.
  BuiltAlgebra sl2 = build_sl(2);
  const LieAlgebra &g = sl2.algebra;
  KillingForm kf(g);
  std::size_t h = g.index_of("H1");
  std::size_t e = g.index_of("E12");
  std::size_t f = g.index_of("E21");
  Rat hh = kf.gram()(h, h);
  Rat ef = kf.gram()(e, f);
  Rat hh_trace = (dense_ad(g, h) * dense_ad(g, h)).trace();
  Rat ef_trace = (dense_ad(g, e) * dense_ad(g, f)).trace();
  rep.add("sl2.killing_values", hh == 8 && ef == 4 && hh == hh_trace && ef == ef_trace,
          {{"hh", format_rat(hh)}, {"ef", format_rat(ef)}, {"hh_trace", format_rat(hh_trace)},
           {"ef_trace", format_rat(ef_trace)}});
  return rep;
}

Report criterion2(SweepContext &ctx) {
  Report rep;
  for (const auto &a : ctx.algebras) {
    CurAlgebra c(a.built.algebra, ctx.options.exec);
    rep.merge(check_axioms(c, ctx.options.axiom_nmax, ctx.options.exec), a.name + ".");
  }
  return rep;
}

Report criterion3(SweepContext &ctx) {
  Report rep;
  rep.merge(ctx.preparation, "build.");
  for (const auto &a : ctx.algebras) {
    auto it = golden_subsystem_counts.find(a.name);
    std::size_t got = a.subsystems.size();
    if (it != golden_subsystem_counts.end()) {
      rep.add(a.name + ".subsystem_count", got == it->second, {{"expected", it->second}, {"found", got}});
    }
    std::optional<std::size_t> bad;
    for (std::size_t i = 0; i < a.subsystems.size(); ++i) {
      if (!is_closed_symmetric(a.built.roots, a.subsystems[i].members)) {
        bad = i;
        break;
      }
    }
    rep.add(a.name + ".subsystems_closed_symmetric", !bad,
            bad ? nlohmann::json{{"subsystem", *bad}} : nlohmann::json());
  }
  rep.merge(per_family(ctx, [&](const FamilyCase &f) {
    Report r;
    const LieAlgebra &g = algebra_of(ctx, f).built.algebra;
    ConfAveVerdict v = is_conformal_averaging(g, f.family, Exec::serial);
    r.add("conformal_averaging", v.ok, v.witness ? conf_witness_json(g, *v.witness) : nlohmann::json());
    r.add("paths_agree", v.paths_agree,
          {{"coefficient", v.witness.has_value()}, {"bipoly", v.bipoly_witness.has_value()}});
    return r;
  }));
  rep.info("families", "families checked", {{"count", ctx.families.size()}});
  return rep;
}

Report criterion4(SweepContext &ctx) {
  return per_family(ctx, [&](const FamilyCase &f) {
    const auto &a = algebra_of(ctx, f);
    return verify_structure_theorems(a.built.algebra, a.built.roots, f.family, Exec::serial);
  });
}

Report criterion5(SweepContext &ctx) {
  return per_family(ctx, [&](const FamilyCase &f) {
    const auto &a = algebra_of(ctx, f);
    CurAlgebra c(a.built.algebra, Exec::serial);
    return check_conformal_averaging_on_cur(c, ConfOperator(f.family), static_cast<int>(f.family.degree()) + 2,
                                            Exec::serial);
  });
}

Report ordinary_leibniz(const std::string &name, const LieAlgebra &g, const LinOp &t, Exec exec) {
  Report rep;
  LeibnizResult r = leibniz_check(g, t, exec);
  rep.add(name + ".leibniz_identity", r.leibniz_identity,
          r.leibniz_witness ? nlohmann::json(*r.leibniz_witness) : nlohmann::json());
  rep.add(name + ".kernel_is_ideal", r.kernel_is_ideal);
  rep.add(name + ".quotient_validates", r.quotient_validation.ok(),
          r.quotient_validation.jacobi_witness ? nlohmann::json(*r.quotient_validation.jacobi_witness)
                                               : nlohmann::json());
  rep.info(name + ".quotient", "quotient dimension", {{"dim", r.quotient.dim()}});
  return rep;
}

Report criterion6(SweepContext &ctx) {
  Report rep = per_family(ctx, [&](const FamilyCase &f) {
    Report r;
    const auto &a = algebra_of(ctx, f);
    const LieAlgebra &g = a.built.algebra;
    CurAlgebra c(g, Exec::serial);
    ConfOperator op(f.family);
    const int nmax = static_cast<int>(f.family.degree()) + 1;
    try {
      r.merge(leibniz_products_and_check(c, op, nmax, Exec::serial));
    } catch (const PreconditionFailure &e) {
      r.add("leibniz_precondition", false, {{"detail", e.what()}});
      return r;
    }
    KernelQuotient kq = kernel_and_quotient(c, op, Exec::serial);
    r.merge(check_kernel_ideal(c, op, kq.kernel, nmax, Exec::serial));
    r.add("quotient_validates", kq.quotient_validation.ok(),
          kq.quotient_validation.jacobi_witness ? nlohmann::json(*kq.quotient_validation.jacobi_witness)
                                                : nlohmann::json());
    if (f.spec) {
      r.merge(split_null_prediction(g, a.built.roots, f.family, kq), "split_null.");
    }
    return r;
  });

  // Ordinary examples.
  BuiltAlgebra sl2 = build_sl(2);
  const LieAlgebra &g = sl2.algebra;
  rep.merge(ordinary_leibniz("sl2.identity", g, Matrix::identity(3), ctx.options.exec));
  LinOp proj(3, 3);
  proj(0, 0) = 1;
  rep.merge(ordinary_leibniz("sl2.cartan_projection", g, proj, ctx.options.exec));

  std::vector<Matrix> s3;
  std::vector<std::array<std::size_t, 3>> perms{{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  for (const auto &p : perms) {
    Matrix m(3, 3);
    for (std::size_t i = 0; i < 3; ++i) {
      m(p[i], i) = 1;
    }
    s3.push_back(m);
  }
  LinOp avg = group_averaging(s3) * Rat(1, 6);
  LieAlgebra gl3 = build_gl(3);
  rep.add("gl3.s3_averaging.is_averaging", is_averaging(gl3, avg, AveragingMode::lie, ctx.options.exec));
  rep.merge(ordinary_leibniz("gl3.s3_averaging", gl3, avg, ctx.options.exec));
  return rep;
}

void ensure_solutions(SweepContext &ctx) {
  if (ctx.solutions.size() == ctx.families.size()) {
    return;
  }
  ctx.solutions = indexed_map<std::optional<LaurentOp>>(
      ctx.families.size(), ctx.options.exec, [&](std::size_t i) -> std::optional<LaurentOp> {
        const FamilyCase &f = ctx.families[i];
        const auto &a = algebra_of(ctx, f);
        try {
          return solution_from_conformal_averaging(a.built.algebra, a.built.roots, f.family);
        } catch (const PreconditionFailure &) {
          return std::nullopt;
        }
      });
}

Report cybe_report(const LieAlgebra &g, const KillingForm &kf, const LaurentOp &p, Exec exec) {
  Report r;
  CybeVerdict v = cybe_check_operator(g, kf, p, exec);
  r.add("cybe_poleform", v.poleform_ok,
        v.witness ? nlohmann::json{{"x", g.label(v.witness->x)},
                                   {"y", g.label(v.witness->y)},
                                   {"coordinate", g.label(v.witness->coordinate)},
                                   {"value", poleform_json(v.witness->value)}}
                  : nlohmann::json());
  r.add("cybe_grid", v.grid_ok,
        v.grid_witness ? nlohmann::json{{"x", g.label(v.grid_witness->x)},
                                        {"y", g.label(v.grid_witness->y)},
                                        {"u", format_rat(v.grid_witness->u)},
                                        {"v", format_rat(v.grid_witness->v)}}
                       : nlohmann::json());
  TensorVerdict tv = cybe_check_tensor(g, op_series_to_tensor(kf, p));
  r.add("tensor_agrees", tv.ok == v.poleform_ok, {{"tensor", tv.ok}, {"operator", v.poleform_ok}});
  return r;
}

Report criterion7(SweepContext &ctx) {
  ensure_solutions(ctx);
  Report rep;
  auto reports = indexed_map<Report>(ctx.families.size(), ctx.options.exec, [&](std::size_t i) {
    const FamilyCase &f = ctx.families[i];
    const LieAlgebra &g = algebra_of(ctx, f).built.algebra;
    Report r;
    if (!ctx.solutions[i]) {
      r.add("solution_constructed", false, {{"detail", "family fails the conformal averaging or homogeneity precondition"}});
      return r;
    }
    r.add("solution_constructed", true);
    r.merge(cybe_report(g, KillingForm(g), *ctx.solutions[i], Exec::serial));
    return r;
  });
  for (std::size_t i = 0; i < reports.size(); ++i) {
    rep.merge(reports[i], ctx.families[i].name + ".");
  }

  BuiltAlgebra sl2 = build_sl(2);
  const LieAlgebra &g = sl2.algebra;
  KillingForm kf(g);
  LinOp proj(3, 3);
  proj(0, 0) = 1;
  std::vector<std::pair<std::string, LinOp>> ops{{"identity", Matrix::identity(3)}, {"cartan_projection", proj}};
  for (const auto &[name, op] : ops) {
    try {
      AveragingOp t = AveragingOp::verify(g, op, AveragingMode::lie);
      LaurentOp p = solution_from_symmetric_averaging(g, t, SymmetryMode::strict);
      rep.merge(cybe_report(g, kf, p, ctx.options.exec), "sl2.symmetric_" + name + ".");
    } catch (const PreconditionFailure &e) {
      rep.add("sl2.symmetric_" + name + ".constructed", false, {{"detail", e.what()}});
    }
  }
  return rep;
}

Report criterion8(SweepContext &ctx) {
  ensure_solutions(ctx);
  Report rep;
  auto reports = indexed_map<Report>(ctx.families.size(), ctx.options.exec, [&](std::size_t i) {
    const FamilyCase &f = ctx.families[i];
    const LieAlgebra &g = algebra_of(ctx, f).built.algebra;
    Report r;
    if (!ctx.solutions[i]) {
      r.add("solution_constructed", false, {{"detail", "no solution from criterion 7"}});
      return r;
    }
    ConfAveOp res = residue_extract(*ctx.solutions[i]);
    ConfAveVerdict v = is_conformal_averaging(g, res, Exec::serial);
    r.add("residue_conformal_averaging", v.ok && v.paths_agree,
          v.witness ? conf_witness_json(g, *v.witness) : nlohmann::json());
    // The residue is (T_n / n!), not (T_n); equal only up to degree 1.
    std::vector<LinOp> rescaled;
    for (std::size_t n = 0; n <= f.family.degree(); ++n) {
      rescaled.push_back(f.family[n] * inv_factorial(static_cast<unsigned>(n)));
    }
    r.add("residue_is_rescaled_family", res == ConfAveOp(rescaled));
    return r;
  });
  for (std::size_t i = 0; i < reports.size(); ++i) {
    rep.merge(reports[i], ctx.families[i].name + ".");
  }
  BuiltAlgebra sl2 = build_sl(2);
  ConfAveOp id_res = residue_extract(LaurentOp::single(-1, Matrix::identity(3)));
  rep.add("sl2.residue_of_id_over_u", id_res == ConfAveOp({Matrix::identity(3)}));
  return rep;
}

Report criterion9(SweepContext &ctx) {
  Report rep;
  const Exec exec = ctx.options.exec;
  {
    BuiltAlgebra sl2 = build_sl(2);
    const LieAlgebra &g = sl2.algebra;
    LaurentOp p = LaurentOp::single(-1, g.ad_basis(g.index_of("E12")));
    CybeVerdict v = cybe_check_operator(g, p, exec);
    bool witnessed = false;
    nlohmann::json wj;
    if (v.witness && v.grid_witness) {
      // Re-check: the nonzero PoleForm evaluates to the coordinate of the
      // operator CYBE at some grid point.
      KillingForm kf(g);
      auto lhs = cybe_operator_lhs(g, kf, p, v.witness->x, v.witness->y);
      for (const auto &u : cybe_grid()) {
        for (const auto &vv : cybe_grid()) {
          if (lhs[v.witness->coordinate].eval(u, vv) != 0) {
            witnessed = true;
          }
        }
      }
      wj = {{"x", g.label(v.witness->x)},
            {"y", g.label(v.witness->y)},
            {"coordinate", g.label(v.witness->coordinate)},
            {"value", poleform_json(v.witness->value)}};
    }
    rep.add("ad_e_over_u_fails_cybe", !v.poleform_ok && !v.grid_ok && witnessed, wj);
  }
  {
    BuiltAlgebra sl3 = build_sl(3);
    const LieAlgebra &g = sl3.algebra;
    const RootDatum &rd = sl3.roots;
    auto subs = enumerate_closed_symmetric(rd, exec);
    const RootSubsystem *sub = nullptr;
    for (const auto &s : subs) {
      if (!s.members.empty()) {
        sub = &s;
        break;
      }
    }
    HomogeneousSpec spec;
    spec.subsystem = *sub;
    for (std::size_t c = 0; c < sub->components.size(); ++c) {
      spec.xi[c] = 1;
    }
    ConfAveOp good = homogeneous_build(g, rd, spec);
    std::size_t alpha = sub->members.front();
    std::size_t partner = rd.root_vectors[rd.negative[alpha]].leading_index();
    std::vector<LinOp> fam = good.family();
    fam[0].set_col(partner, Vec(g.dim()));
    ConfAveOp bad(fam);
    ConfAveVerdict v = is_conformal_averaging(g, bad, exec);
    bool witnessed = v.witness && !conformal_identity_holds_at(g, bad, v.witness->x, v.witness->y, v.witness->n,
                                                                v.witness->m);
    rep.add("corrupted_homogeneous_fails", !v.ok && v.paths_agree && witnessed,
            v.witness ? conf_witness_json(g, *v.witness) : nlohmann::json());
  }
  {
    BuiltAlgebra sl2 = build_sl(2);
    const LieAlgebra &g = sl2.algebra;
    RotaBaxterVerdict v = rota_baxter_check(g, Matrix::identity(3), exec);
    bool witnessed = false;
    nlohmann::json wj;
    if (v.witness) {
      Vec ex = g.basis_vector((*v.witness)[0]);
      Vec ey = g.basis_vector((*v.witness)[1]);
      witnessed = g.bracket(ex, ey) != g.bracket(ex, ey) * Rat(2);
      wj = {{"x", g.label((*v.witness)[0])}, {"y", g.label((*v.witness)[1])}};
    }
    rep.add("identity_fails_rota_baxter", !v.ok && witnessed, wj);
  }
  return rep;
}

Report criterion10(SweepContext &ctx) {
  Report rep;
  for (const auto &a : ctx.algebras) {
    std::size_t expected = a.name == "sl2+sl2" ? 2 : 1;
    std::size_t got = centroid_basis(a.built.algebra).size();
    rep.add(a.name + ".centroid_dimension", got == expected, {{"expected", expected}, {"found", got}});
  }
  return rep;
}

} // namespace

SweepContext prepare_sweep(const SweepOptions &opts) {
  if (opts.rank_max < 1 || opts.rank_max > 5) {
    throw RangeError("rank-max must be between 1 and 5");
  }
  if (opts.trials < 0) {
    throw RangeError("trials must be nonnegative");
  }
  SweepContext ctx;
  ctx.options = opts;
  for (int r = 1; r <= opts.rank_max; ++r) {
    ctx.algebras.push_back({"sl" + std::to_string(r + 1), build_sl(r + 1), {}});
    if (r == 2) {
      ctx.algebras.push_back({"sl2+sl2", direct_sum(build_sl(2), build_sl(2)), {}});
    }
  }
  for (auto &a : ctx.algebras) {
    a.subsystems = enumerate_closed_symmetric(a.built.roots, opts.exec);
  }

  std::mt19937_64 rng(opts.seed);
  struct Pending {
    std::string name;
    std::size_t algebra;
    HomogeneousSpec spec;
  };
  std::vector<Pending> pending;
  for (std::size_t ai = 0; ai < ctx.algebras.size(); ++ai) {
    const auto &a = ctx.algebras[ai];
    for (std::size_t si = 0; si < a.subsystems.size(); ++si) {
      for (int t = 0; t < opts.trials; ++t) {
        HomogeneousSpec spec =
            random_homogeneous_spec(a.built.algebra, a.built.roots, a.subsystems[si], rng, opts.hperp_degree);
        pending.push_back({a.name + ".S" + std::to_string(si) + ".t" + std::to_string(t), ai, std::move(spec)});
      }
    }
  }
  auto built = indexed_map<std::optional<ConfAveOp>>(pending.size(), opts.exec, [&](std::size_t i)
                                                                                     -> std::optional<ConfAveOp> {
    const auto &a = ctx.algebras[pending[i].algebra];
    try {
      return homogeneous_build(a.built.algebra, a.built.roots, pending[i].spec, false);
    } catch (const Error &) {
      return std::nullopt;
    }
  });
  for (std::size_t i = 0; i < pending.size(); ++i) {
    if (!built[i]) {
      ctx.preparation.add(pending[i].name, false, {{"detail", "homogeneous_build rejected the generated spec"}});
      continue;
    }
    ctx.families.push_back({pending[i].name, pending[i].algebra, std::move(*built[i]), std::move(pending[i].spec)});
  }
  if (opts.fixture) {
    ConfAveOp t = conf_ave_op_from_json(read_json_file(*opts.fixture));
    ctx.families.push_back({"fixture", algebra_for_dim(ctx, t.dim()), std::move(t), std::nullopt});
  }
  return ctx;
}

std::string criterion_title(int k) {
  static const char *const titles[] = {
      "Lie kernel: validation, Killing invariance, sl2 Killing values",
      "Conformal axioms of Cur g",
      "Subsystem classification and homogeneous families",
      "Structure theorems for homogeneous families",
      "Conformal averaging on Cur g",
      "Leibniz layer and split null extension",
      "CYBE solutions from averaging operators",
      "Residues of CYBE solutions",
      "Negative controls",
      "Centroid dimensions",
  };
  if (k < 1 || k > criterion_count) {
    throw RangeError("criterion index");
  }
  return titles[k - 1];
}

Report run_criterion(int k, SweepContext &ctx) {
  switch (k) {
  case 1:
    return criterion1(ctx);
  case 2:
    return criterion2(ctx);
  case 3:
    return criterion3(ctx);
  case 4:
    return criterion4(ctx);
  case 5:
    return criterion5(ctx);
  case 6:
    return criterion6(ctx);
  case 7:
    return criterion7(ctx);
  case 8:
    return criterion8(ctx);
  case 9:
    return criterion9(ctx);
  case 10:
    return criterion10(ctx);
  default:
    throw RangeError("criterion index");
  }
}

Report run_all(const SweepOptions &opts) {
  SweepContext ctx = prepare_sweep(opts);
  Report rep;
  for (int k = 1; k <= criterion_count; ++k) {
    std::string prefix = "c" + std::string(k < 10 ? "0" : "") + std::to_string(k) + ".";
    rep.merge(run_criterion(k, ctx), prefix);
  }
  return rep;
}

} // namespace cybeforge
