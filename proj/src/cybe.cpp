#include "cybeforge/cybe.hpp"

#include "cybeforge/errors.hpp"

#include <tuple>

namespace cybeforge {

LaurentOp LaurentOp::single(int k, const Matrix &m) {
  LaurentOp p(m.rows());
  p.set(k, m);
  return p;
}

Matrix LaurentOp::coefficient(int k) const {
  auto it = coeffs_.find(k);
  return it == coeffs_.end() ? Matrix::zero(dim_) : it->second;
}

void LaurentOp::set(int k, const Matrix &m) {
  if (m.rows() != dim_ || m.cols() != dim_) {
    throw DimensionMismatch("Laurent coefficient shape");
  }
  if (m.is_zero()) {
    coeffs_.erase(k);
  } else {
    coeffs_[k] = m;
  }
}

void LaurentOp::add(int k, const Matrix &m) { set(k, coefficient(k) + m); }

Matrix LaurentOp::eval(const Rat &u) const {
  if (cybeforge::is_zero(u) && !coeffs_.empty() && coeffs_.begin()->first < 0) {
    throw Error("Laurent operator evaluated at its pole");
  }
  Matrix out = Matrix::zero(dim_);
  for (const auto &[k, m] : coeffs_) {
    Rat power = 1;
    Rat base = k < 0 ? Rat(1 / u) : u;
    for (int i = 0; i < std::abs(k); ++i) {
      power *= base;
    }
    out += m * power;
  }
  return out;
}

LaurentOp operator+(const LaurentOp &a, const LaurentOp &b) {
  if (a.dim_ != b.dim_) {
    throw DimensionMismatch("Laurent operator dimensions differ");
  }
  LaurentOp out = a;
  for (const auto &[k, m] : b.coeffs_) {
    out.add(k, m);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Tensor <-> operator
// ---------------------------------------------------------------------------

LinOp tensor_to_op(const KillingForm &kf, const Matrix &x) {
  kf.inverse_gram();
  return x.transpose() * kf.gram();
}

Matrix op_to_tensor(const KillingForm &kf, const LinOp &p) { return kf.inverse_gram() * p.transpose(); }

LinOp tensor_to_op(const LieAlgebra &g, const Matrix &x) { return tensor_to_op(KillingForm(g), x); }

Matrix op_to_tensor(const LieAlgebra &g, const LinOp &p) { return op_to_tensor(KillingForm(g), p); }

LaurentOp tensor_series_to_op(const KillingForm &kf, const LaurentOp &x) {
  LaurentOp out(x.dim());
  for (const auto &[k, m] : x.coeffs()) {
    out.set(k, tensor_to_op(kf, m));
  }
  return out;
}

LaurentOp op_series_to_tensor(const KillingForm &kf, const LaurentOp &p) {
  LaurentOp out(p.dim());
  for (const auto &[k, m] : p.coeffs()) {
    out.set(k, op_to_tensor(kf, m));
  }
  return out;
}

LaurentOp laurent_adjoint(const KillingForm &kf, const LaurentOp &p) {
  LaurentOp out(p.dim());
  for (const auto &[k, m] : p.coeffs()) {
    out.set(k, kf.adjoint(m));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Operator CYBE
// ---------------------------------------------------------------------------

const std::vector<Rat> &cybe_grid() {
  static const std::vector<Rat> grid{1, 2, 3, 5, 7};
  return grid;
}

namespace {

// Exponents of u, v, u+v for each of the three terms with P_j and P_k (or P*_k).
PoleForm term_monomial(int type, int j, int k, const Rat &c) {
  switch (type) {
  case 0: // P_{u+v}([x, P*_u y])
    return PoleForm::monomial(c, k, 0, j);
  case 1: // -P_v([P_u x, y])
    return PoleForm::monomial(-c, k, j, 0);
  default: // [P_{u+v} x, P_v y]
    return PoleForm::monomial(c, 0, k, j);
  }
}

std::vector<PoleForm> combine_groups(const std::map<std::tuple<int, int, int>, Vec> &groups, std::size_t dim) {
  std::vector<PoleForm> out(dim);
  for (std::size_t c = 0; c < dim; ++c) {
    std::vector<SignedPoleForm> terms;
    for (const auto &[key, vec] : groups) {
      if (!cybeforge::is_zero(vec[c])) {
        auto [type, j, k] = key;
        terms.push_back({term_monomial(type, j, k, vec[c])});
      }
    }
    if (!terms.empty()) {
      out[c] = poleform_combine(terms);
    }
  }
  return out;
}

void add_group(std::map<std::tuple<int, int, int>, Vec> &groups, int type, int j, int k, const Vec &v) {
  if (v.is_zero()) {
    return;
  }
  auto key = std::make_tuple(type, j, k);
  auto it = groups.find(key);
  if (it == groups.end()) {
    groups.emplace(key, v);
  } else {
    it->second += v;
  }
}

std::vector<PoleForm> operator_lhs(const LieAlgebra &g, const LaurentOp &p, const LaurentOp &pstar, std::size_t x,
                                   std::size_t y) {
  const std::size_t dim = g.dim();
  Vec ex = g.basis_vector(x);
  Vec ey = g.basis_vector(y);
  std::map<std::tuple<int, int, int>, Vec> groups;
  for (const auto &[k, pk] : p.coeffs()) {
    Vec pkx = pk * ex;
    Vec pky = pk * ey;
    Vec psky = pstar.coefficient(k) * ey;
    Vec b0 = g.bracket(ex, psky);
    Vec b1 = g.bracket(pkx, ey);
    for (const auto &[j, pj] : p.coeffs()) {
      add_group(groups, 0, j, k, pj * b0);
      add_group(groups, 1, j, k, pj * b1);
      add_group(groups, 2, j, k, g.bracket(pj * ex, pky));
    }
  }
  return combine_groups(groups, dim);
}

} // namespace

std::vector<PoleForm> cybe_operator_lhs(const LieAlgebra &g, const KillingForm &kf, const LaurentOp &p,
                                        std::size_t x, std::size_t y) {
  return operator_lhs(g, p, laurent_adjoint(kf, p), x, y);
}

CybeVerdict cybe_check_operator(const LieAlgebra &g, const LaurentOp &p, Exec exec) {
  return cybe_check_operator(g, KillingForm(g), p, exec);
}

CybeVerdict cybe_check_operator(const LieAlgebra &g, const KillingForm &kf, const LaurentOp &p, Exec exec) {
  const std::size_t dim = g.dim();
  if (p.dim() != dim) {
    throw DimensionMismatch("Laurent operator dimension does not match algebra");
  }
  const LaurentOp pstar = laurent_adjoint(kf, p);
  CybeVerdict verdict;
  verdict.witness = first_failure<CybeWitness>(dim * dim, exec, [&](std::size_t idx) -> std::optional<CybeWitness> {
    std::vector<PoleForm> lhs = operator_lhs(g, p, pstar, idx / dim, idx % dim);
    for (std::size_t c = 0; c < dim; ++c) {
      if (!lhs[c].is_zero()) {
        return CybeWitness{idx / dim, idx % dim, c, lhs[c]};
      }
    }
    return std::nullopt;
  });
  verdict.poleform_ok = !verdict.witness;

  const auto &grid = cybe_grid();
  const std::size_t points = grid.size() * grid.size();
  verdict.grid_witness = first_failure<GridWitness>(points, exec, [&](std::size_t idx) -> std::optional<GridWitness> {
    const Rat &u = grid[idx / grid.size()];
    const Rat &v = grid[idx % grid.size()];
    Matrix p_uv = p.eval(u + v);
    Matrix p_v = p.eval(v);
    Matrix p_u = p.eval(u);
    Matrix ps_u = pstar.eval(u);
    for (std::size_t x = 0; x < dim; ++x) {
      Vec ex = g.basis_vector(x);
      Vec p_uv_x = p_uv * ex;
      Vec p_u_x = p_u * ex;
      for (std::size_t y = 0; y < dim; ++y) {
        Vec ey = g.basis_vector(y);
        Vec lhs = p_uv * g.bracket(ex, ps_u * ey) - p_v * g.bracket(p_u_x, ey) + g.bracket(p_uv_x, p_v * ey);
        if (!lhs.is_zero()) {
          return GridWitness{x, y, u, v};
        }
      }
    }
    return std::nullopt;
  });
  verdict.grid_ok = !verdict.grid_witness;
  return verdict;
}

// ---------------------------------------------------------------------------
// Tensor CYBE
// ---------------------------------------------------------------------------

namespace {

using Dense3 = std::vector<Rat>;

struct SparseEntry {
  std::size_t a, b;
  Rat c;
};

std::vector<SparseEntry> entries(const Matrix &m) {
  std::vector<SparseEntry> out;
  for (std::size_t a = 0; a < m.rows(); ++a) {
    for (std::size_t b = 0; b < m.cols(); ++b) {
      if (!cybeforge::is_zero(m(a, b))) {
        out.push_back({a, b, m(a, b)});
      }
    }
  }
  return out;
}

/// Adds s times the three bracket terms built from X_j (first factor) and
/// X_k (second factor) of the given type to acc.
void accumulate_tensor(const LieAlgebra &g, int type, const std::vector<SparseEntry> &xj,
                       const std::vector<SparseEntry> &xk, const Rat &s, Dense3 &acc) {
  const std::size_t n = g.dim();
  auto idx = [n](std::size_t i, std::size_t j, std::size_t k) { return (i * n + j) * n + k; };
  for (const auto &p : xj) {
    for (const auto &q : xk) {
      Rat c = s * p.c * q.c;
      switch (type) {
      case 0: // [e_a, e_c] (x) e_b (x) e_d
        for (const auto &[i, v] : g.product_basis(p.a, q.a)) {
          acc[idx(i, p.b, q.b)] += c * v;
        }
        break;
      case 1: // e_a (x) [e_b, e_c] (x) e_d
        for (const auto &[i, v] : g.product_basis(p.b, q.a)) {
          acc[idx(p.a, i, q.b)] += c * v;
        }
        break;
      default: // e_a (x) e_c (x) [e_b, e_d]
        for (const auto &[i, v] : g.product_basis(p.b, q.b)) {
          acc[idx(p.a, q.a, i)] += c * v;
        }
        break;
      }
    }
  }
}

} // namespace

TensorVerdict cybe_check_tensor(const LieAlgebra &g, const LaurentOp &x) {
  const std::size_t n = g.dim();
  if (x.dim() != n) {
    throw DimensionMismatch("tensor series dimension does not match algebra");
  }
  KillingForm(g).inverse_gram();
  std::map<int, std::vector<SparseEntry>> ent;
  for (const auto &[k, m] : x.coeffs()) {
    ent.emplace(k, entries(m));
  }
  // groups keyed by (type, j, k); exponents as in the operator form:
  // type 0: X_j(u) X_k(u+v), type 1: X_j(u) X_k(v), type 2: X_j(u+v) X_k(v)
  std::map<std::tuple<int, int, int>, Dense3> groups;
  for (const auto &[j, ej] : ent) {
    for (const auto &[k, ek] : ent) {
      for (int type = 0; type < 3; ++type) {
        Dense3 acc(n * n * n);
        accumulate_tensor(g, type, ej, ek, 1, acc);
        groups.emplace(std::make_tuple(type, j, k), std::move(acc));
      }
    }
  }
  auto monomial = [](int type, int j, int k, const Rat &c) {
    switch (type) {
    case 0:
      return PoleForm::monomial(c, j, 0, k);
    case 1:
      return PoleForm::monomial(c, j, k, 0);
    default:
      return PoleForm::monomial(c, 0, k, j);
    }
  };
  TensorVerdict verdict;
  for (std::size_t c = 0; c < n * n * n; ++c) {
    std::vector<SignedPoleForm> terms;
    for (const auto &[key, acc] : groups) {
      if (!cybeforge::is_zero(acc[c])) {
        auto [type, j, k] = key;
        terms.push_back({monomial(type, j, k, acc[c])});
      }
    }
    if (terms.empty()) {
      continue;
    }
    PoleForm total = poleform_combine(terms);
    if (!total.is_zero()) {
      verdict.ok = false;
      verdict.coordinate = std::array<std::size_t, 3>{c / (n * n), (c / n) % n, c % n};
      verdict.value = total;
      return verdict;
    }
  }
  return verdict;
}

TensorElem3 cybe_tensor_value(const LieAlgebra &g, const LaurentOp &x, const Rat &u, const Rat &v) {
  const std::size_t n = g.dim();
  auto xu = entries(x.eval(u));
  auto xv = entries(x.eval(v));
  auto xuv = entries(x.eval(u + v));
  Dense3 acc(n * n * n);
  accumulate_tensor(g, 0, xu, xuv, 1, acc);
  accumulate_tensor(g, 1, xu, xv, 1, acc);
  accumulate_tensor(g, 2, xuv, xv, 1, acc);
  TensorElem3 out;
  out.dim = n;
  for (std::size_t c = 0; c < acc.size(); ++c) {
    if (!cybeforge::is_zero(acc[c])) {
      out.coords[{c / (n * n), (c / n) % n, c % n}] = acc[c];
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Residues and constructors
// ---------------------------------------------------------------------------

ConfAveOp residue_extract(const LaurentOp &p) {
  const std::size_t dim = p.dim();
  int lowest = p.coeffs().empty() ? 0 : p.coeffs().begin()->first;
  std::vector<LinOp> family;
  if (lowest >= 0) {
    family.push_back(Matrix::zero(dim));
    return ConfAveOp(std::move(family));
  }
  for (int m = 0; -m - 1 >= lowest; ++m) {
    family.push_back(p.coefficient(-m - 1));
  }
  return ConfAveOp(std::move(family));
}

Report theorem1_roundtrip(const LieAlgebra &g, const LaurentOp &p, Exec exec) {
  Report rep;
  CybeVerdict v = cybe_check_operator(g, p, exec);
  if (!v.ok()) {
    rep.add("precondition.cybe", false,
            v.witness ? nlohmann::json{{"x", g.label(v.witness->x)},
                                       {"y", g.label(v.witness->y)},
                                       {"coordinate", v.witness->coordinate},
                                       {"value", poleform_json(v.witness->value)}}
                      : nlohmann::json());
    rep.add(Check{"residue_conformal_averaging", Status::skipped, nullptr, "CYBE precondition failed"});
    return rep;
  }
  rep.add("precondition.cybe", true);
  ConfAveOp t = residue_extract(p);
  ConfAveVerdict cv = is_conformal_averaging(g, t, exec);
  rep.add("residue_conformal_averaging", cv.ok && cv.paths_agree,
          cv.witness ? nlohmann::json{{"x", g.label(cv.witness->x)},
                                      {"y", g.label(cv.witness->y)},
                                      {"n", cv.witness->n},
                                      {"m", cv.witness->m}}
                     : nlohmann::json());
  rep.info("residue_degree", "residue family T_m = P_{-m-1}", {{"degree", t.degree()}});
  return rep;
}

LaurentOp solution_from_symmetric_averaging(const LieAlgebra &g, const AveragingOp &t, SymmetryMode mode) {
  const std::size_t dim = g.dim();
  const LinOp &op = t.op();
  if (op.rows() != dim) {
    throw DimensionMismatch("operator dimension does not match algebra");
  }
  KillingForm kf(g);
  kf.inverse_gram();
  LinOp tstar = kf.adjoint(op);
  for (std::size_t x = 0; x < dim; ++x) {
    for (std::size_t y = 0; y < dim; ++y) {
      Vec ex = g.basis_vector(x);
      Vec ey = g.basis_vector(y);
      bool ok = mode == SymmetryMode::strict
                    ? kf.pair(op * ex, ey) == kf.pair(ex, op * ey)
                    : (op * (g.bracket(tstar * ex, ey) - g.bracket(op * ex, ey))).is_zero();
      if (!ok) {
        throw PreconditionFailure(std::string(mode == SymmetryMode::strict ? "T is not Killing-symmetric"
                                                                            : "relaxed symmetry fails") +
                                  " on basis pair (" + g.label(x) + ", " + g.label(y) + ")");
      }
    }
  }
  return LaurentOp::single(-1, op);
}

LaurentOp solution_from_conformal_averaging(const LieAlgebra &g, const RootDatum &rd, const ConfAveOp &t) {
  if (t.dim() != g.dim()) {
    throw DimensionMismatch("family dimension does not match algebra");
  }
  if (!is_conformal_averaging(g, t).ok) {
    throw PreconditionFailure("family is not conformal averaging");
  }
  if (!is_homogeneous(t, rd)) {
    throw PreconditionFailure("family is not homogeneous: Cartan subalgebra not contained in T_*(g)");
  }
  LaurentOp p(g.dim());
  for (std::size_t n = 0; n <= t.degree(); ++n) {
    p.set(-static_cast<int>(n) - 1, t[n] * inv_factorial(static_cast<unsigned>(n)));
  }
  return p;
}

RotaBaxterVerdict rota_baxter_check(const LieAlgebra &g, const LinOp &r, Exec exec) {
  const std::size_t dim = g.dim();
  if (r.rows() != dim || r.cols() != dim) {
    throw DimensionMismatch("operator shape does not match algebra");
  }
  using W = std::array<std::size_t, 2>;
  auto probe = [&](bool literal) {
    return first_failure<W>(dim * dim, exec, [&, literal](std::size_t idx) -> std::optional<W> {
      Vec ex = g.basis_vector(idx / dim);
      Vec ey = g.basis_vector(idx % dim);
      Vec rx = r * ex;
      Vec ry = r * ey;
      Vec lhs = g.bracket(rx, ry);
      Vec second = r * g.bracket(ex, ry);
      Vec rhs = (literal ? second : r * g.bracket(rx, ey)) + second;
      if (lhs == rhs) {
        return std::nullopt;
      }
      return W{idx / dim, idx % dim};
    });
  };
  RotaBaxterVerdict v;
  v.witness = probe(false);
  v.ok = !v.witness;
  v.literal_witness = probe(true);
  v.literal_ok = !v.literal_witness;
  return v;
}

nlohmann::json poleform_json(const PoleForm &p) {
  nlohmann::json num = nlohmann::json::object();
  for (const auto &[exps, c] : p.numerator().terms()) {
    num[std::to_string(exps.first) + "," + std::to_string(exps.second)] = format_rat(c);
  }
  return {{"numerator", num}, {"poles", {p.pole_u(), p.pole_v(), p.pole_sum()}}};
}

} // namespace cybeforge
