#include "cybeforge/averaging.hpp"

#include "cybeforge/errors.hpp"
#include "cybeforge/poly.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace cybeforge {

// ---------------------------------------------------------------------------
// Ordinary averaging operators
// ---------------------------------------------------------------------------

std::optional<AveragingWitness> averaging_witness(const BilinearAlgebra &g, const LinOp &t, AveragingMode mode,
                                                  Exec exec) {
  const std::size_t n = g.dim();
  if (t.rows() != n || t.cols() != n) {
    throw DimensionMismatch("operator shape does not match algebra dimension");
  }
  return first_failure<AveragingWitness>(n * n, exec, [&](std::size_t idx) -> std::optional<AveragingWitness> {
    std::size_t a = idx / n;
    std::size_t b = idx % n;
    Vec ta = t.col(a);
    Vec tb = t.col(b);
    Vec middle = g.product(ta, tb);
    if (t * g.product(ta, g.basis_vector(b)) != middle) {
      return AveragingWitness{a, b, "left"};
    }
    if (mode == AveragingMode::associative && t * g.product(g.basis_vector(a), tb) != middle) {
      return AveragingWitness{a, b, "right"};
    }
    return std::nullopt;
  });
}

AveragingOp AveragingOp::verify(const BilinearAlgebra &g, LinOp t, AveragingMode mode) {
  if (auto w = averaging_witness(g, t, mode)) {
    throw PreconditionFailure("not an averaging operator: identity fails (" + w->side + ") on basis pair (" +
                              g.label(w->a) + ", " + g.label(w->b) + ")");
  }
  bool lie = mode == AveragingMode::lie;
  return AveragingOp(std::move(t), lie, !lie);
}

LinOp group_averaging(const std::vector<Matrix> &group) {
  if (group.empty()) {
    throw PreconditionFailure("empty group");
  }
  const std::size_t n = group.front().rows();
  for (const auto &g : group) {
    if (g.rows() != n || g.cols() != n) {
      throw DimensionMismatch("group elements must be square of equal size");
    }
  }
  auto member = [&](const Matrix &m) { return std::find(group.begin(), group.end(), m) != group.end(); };
  if (!member(Matrix::identity(n))) {
    throw PreconditionFailure("not a group: identity missing");
  }
  std::vector<Matrix> inverses;
  for (std::size_t i = 0; i < group.size(); ++i) {
    Matrix inv;
    try {
      inv = inverse(group[i]);
    } catch (const SingularMatrix &) {
      throw PreconditionFailure("not a group: element " + std::to_string(i) + " is singular");
    }
    if (!member(inv)) {
      throw PreconditionFailure("not a group: inverse of element " + std::to_string(i) + " missing");
    }
    inverses.push_back(std::move(inv));
  }
  for (std::size_t i = 0; i < group.size(); ++i) {
    for (std::size_t j = 0; j < group.size(); ++j) {
      if (!member(group[i] * group[j])) {
        throw PreconditionFailure("not a group: product of elements " + std::to_string(i) + " and " +
                                  std::to_string(j) + " missing");
      }
    }
  }
  const std::size_t d = n * n;
  LinOp t(d, d);
  for (std::size_t gi = 0; gi < group.size(); ++gi) {
    const Matrix &g = group[gi];
    const Matrix &ginv = inverses[gi];
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        // (g E_ij g^-1)_{pq} = g_{pi} ginv_{jq}
        for (std::size_t p = 0; p < n; ++p) {
          if (is_zero(g(p, i))) {
            continue;
          }
          for (std::size_t q = 0; q < n; ++q) {
            if (!is_zero(ginv(j, q))) {
              t(p * n + q, i * n + j) += g(p, i) * ginv(j, q);
            }
          }
        }
      }
    }
  }
  return t;
}

AveragingOp compose_commuting(const BilinearAlgebra &g, const AveragingOp &t1, const AveragingOp &t2) {
  LinOp ab = t1.op() * t2.op();
  LinOp ba = t2.op() * t1.op();
  LinOp comm = ab - ba;
  for (std::size_t i = 0; i < comm.rows(); ++i) {
    for (std::size_t j = 0; j < comm.cols(); ++j) {
      if (!is_zero(comm(i, j))) {
        throw PreconditionFailure("operators do not commute: [T1,T2](" + std::to_string(i) + "," +
                                  std::to_string(j) + ") = " + comm(i, j).get_str());
      }
    }
  }
  bool lie = t1.lie_verified() && t2.lie_verified();
  return AveragingOp::verify(g, std::move(ab), lie ? AveragingMode::lie : AveragingMode::associative);
}

LeibnizResult leibniz_check(const LieAlgebra &g, const LinOp &t, Exec exec) {
  const std::size_t n = g.dim();
  auto lb = [&](const Vec &a, const Vec &b) { return g.bracket(t * a, b); };
  LeibnizResult out;
  auto w = first_failure<std::array<std::size_t, 3>>(n * n * n, exec, [&](std::size_t idx)
                                                         -> std::optional<std::array<std::size_t, 3>> {
    std::size_t i = idx / (n * n);
    std::size_t j = (idx / n) % n;
    std::size_t k = idx % n;
    Vec x = g.basis_vector(i);
    Vec y = g.basis_vector(j);
    Vec z = g.basis_vector(k);
    Vec lhs = lb(x, lb(y, z)) - lb(y, lb(x, z));
    if (lhs == lb(lb(x, y), z)) {
      return std::nullopt;
    }
    return std::array<std::size_t, 3>{i, j, k};
  });
  if (w) {
    out.leibniz_identity = false;
    out.leibniz_witness = w;
  }
  out.kernel = Subspace::span(nullspace(t), n);
  for (const auto &k : out.kernel.basis()) {
    for (std::size_t b = 0; b < n && out.kernel_is_ideal; ++b) {
      Vec e = g.basis_vector(b);
      if (!out.kernel.contains(lb(k, e)) || !out.kernel.contains(lb(e, k))) {
        out.kernel_is_ideal = false;
      }
    }
  }
  QuotientMap q(out.kernel);
  std::vector<std::string> labels;
  for (auto c : q.complement()) {
    labels.push_back(g.label(c));
  }
  LieAlgebra quot(labels);
  for (std::size_t i = 0; i < q.quotient_dim(); ++i) {
    for (std::size_t j = 0; j < q.quotient_dim(); ++j) {
      Vec c = q.project(lb(q.lift(i), q.lift(j)));
      SparseVec v;
      for (std::size_t k = 0; k < c.size(); ++k) {
        if (!is_zero(c[k])) {
          v.emplace_back(k, c[k]);
        }
      }
      quot.set_product(i, j, std::move(v));
    }
  }
  out.quotient_validation = validate(quot, exec);
  out.quotient = std::move(quot);
  return out;
}

// ---------------------------------------------------------------------------
// ConfAveOp
// ---------------------------------------------------------------------------

ConfAveOp::ConfAveOp(std::vector<LinOp> family) : family_(std::move(family)) {
  if (family_.empty()) {
    throw RangeError("conformal averaging family needs at least T_0");
  }
  const std::size_t n = family_.front().rows();
  for (const auto &t : family_) {
    if (t.rows() != n || t.cols() != n) {
      throw DimensionMismatch("family operators must be square of equal size");
    }
  }
  while (family_.size() > 1 && family_.back().is_zero()) {
    family_.pop_back();
  }
  if (degree() > max_degree) {
    throw RangeError("conformal averaging degree " + std::to_string(degree()) + " exceeds " +
                     std::to_string(max_degree));
  }
}

LinOp ConfAveOp::coefficient(std::size_t n) const {
  return n < family_.size() ? family_[n] : Matrix::zero(dim());
}

LinOp ConfAveOp::evaluate(const Rat &alpha) const {
  LinOp out = Matrix::zero(dim());
  Rat power = 1;
  for (std::size_t n = 0; n < family_.size(); ++n) {
    out += family_[n] * (power * inv_factorial(static_cast<unsigned>(n)));
    power *= alpha;
  }
  return out;
}

namespace {

// Per-pair data shared by both verification paths.
struct PairData {
  std::vector<Vec> tx;              // T_k x
  std::vector<Vec> ty;              // T_k y
  std::vector<std::vector<Vec>> tb; // tb[p][k] = T_p [T_k x, y]
};

PairData pair_data(const LieAlgebra &g, const ConfAveOp &t, std::size_t x, std::size_t y) {
  const std::size_t big_n = t.degree();
  PairData d;
  for (std::size_t k = 0; k <= big_n; ++k) {
    d.tx.push_back(t[k].col(x));
    d.ty.push_back(t[k].col(y));
  }
  std::vector<Vec> b;
  Vec ey = g.basis_vector(y);
  for (std::size_t k = 0; k <= big_n; ++k) {
    b.push_back(g.bracket(d.tx[k], ey));
  }
  d.tb.assign(big_n + 1, {});
  for (std::size_t p = 0; p <= big_n; ++p) {
    for (std::size_t k = 0; k <= big_n; ++k) {
      d.tb[p].push_back(t[p] * b[k]);
    }
  }
  return d;
}

bool coefficient_identity(const LieAlgebra &g, const ConfAveOp &t, const PairData &d, std::size_t n,
                          std::size_t m) {
  const std::size_t big_n = t.degree();
  Vec lhs(g.dim());
  for (std::size_t s = 0; s <= n; ++s) {
    if (n - s > big_n || m + s > big_n) {
      continue;
    }
    lhs.axpy(Rat(binomial(static_cast<unsigned>(n), static_cast<unsigned>(s))), d.tb[m + s][n - s]);
  }
  Vec rhs = n <= big_n ? g.bracket(d.tx[n], d.ty[m]) : Vec(g.dim());
  return lhs == rhs;
}

} // namespace

std::optional<ConfAveWitness> conformal_coefficient_witness(const LieAlgebra &g, const ConfAveOp &t, Exec exec) {
  const std::size_t dim = g.dim();
  if (t.dim() != dim) {
    throw DimensionMismatch("family dimension does not match algebra");
  }
  const std::size_t big_n = t.degree();
  return first_failure<ConfAveWitness>(dim * dim, exec, [&](std::size_t idx) -> std::optional<ConfAveWitness> {
    std::size_t x = idx / dim;
    std::size_t y = idx % dim;
    PairData d = pair_data(g, t, x, y);
    for (std::size_t n = 0; n <= 2 * big_n; ++n) {
      for (std::size_t m = 0; m <= big_n; ++m) {
        if (!coefficient_identity(g, t, d, n, m)) {
          return ConfAveWitness{x, y, static_cast<int>(n), static_cast<int>(m), std::nullopt};
        }
      }
    }
    return std::nullopt;
  });
}

std::optional<ConfAveWitness> conformal_bipoly_witness(const LieAlgebra &g, const ConfAveOp &t, Exec exec) {
  const std::size_t dim = g.dim();
  if (t.dim() != dim) {
    throw DimensionMismatch("family dimension does not match algebra");
  }
  const std::size_t big_n = t.degree();
  std::vector<BiPoly> sum_pow;
  for (std::size_t p = 0; p <= big_n; ++p) {
    sum_pow.push_back(BiPoly::sum_power(static_cast<unsigned>(p), Var::lambda, Var::mu) *
                      inv_factorial(static_cast<unsigned>(p)));
  }
  return first_failure<ConfAveWitness>(dim * dim, exec, [&](std::size_t idx) -> std::optional<ConfAveWitness> {
    std::size_t x = idx / dim;
    std::size_t y = idx % dim;
    PairData d = pair_data(g, t, x, y);
    std::vector<BiPoly> acc(dim, BiPoly(Var::lambda, Var::mu));
    // T_{lambda+mu}([T_lambda x, y])
    for (std::size_t p = 0; p <= big_n; ++p) {
      for (std::size_t k = 0; k <= big_n; ++k) {
        const Vec &v = d.tb[p][k];
        if (v.is_zero()) {
          continue;
        }
        BiPoly q = sum_pow[p] * BiPoly::monomial(static_cast<int>(k), 0, inv_factorial(static_cast<unsigned>(k)),
                                                 Var::lambda, Var::mu);
        for (std::size_t c = 0; c < dim; ++c) {
          if (!is_zero(v[c])) {
            acc[c] += q * v[c];
          }
        }
      }
    }
    // - [T_lambda x, T_mu y]
    for (std::size_t n = 0; n <= big_n; ++n) {
      for (std::size_t m = 0; m <= big_n; ++m) {
        Vec w = g.bracket(d.tx[n], d.ty[m]);
        if (w.is_zero()) {
          continue;
        }
        Rat scale = inv_factorial(static_cast<unsigned>(n)) * inv_factorial(static_cast<unsigned>(m));
        for (std::size_t c = 0; c < dim; ++c) {
          if (!is_zero(w[c])) {
            acc[c].add_term(static_cast<int>(n), static_cast<int>(m), -scale * w[c]);
          }
        }
      }
    }
    for (std::size_t c = 0; c < dim; ++c) {
      if (!acc[c].is_zero()) {
        return ConfAveWitness{x, y, -1, -1, c};
      }
    }
    return std::nullopt;
  });
}

ConfAveVerdict is_conformal_averaging(const LieAlgebra &g, const ConfAveOp &t, Exec exec) {
  ConfAveVerdict v;
  v.witness = conformal_coefficient_witness(g, t, exec);
  v.bipoly_witness = conformal_bipoly_witness(g, t, exec);
  v.ok = !v.witness;
  v.paths_agree = v.witness.has_value() == v.bipoly_witness.has_value();
  return v;
}

bool conformal_identity_holds_at(const LieAlgebra &g, const ConfAveOp &t, std::size_t x, std::size_t y, int n,
                                 int m) {
  PairData d = pair_data(g, t, x, y);
  return coefficient_identity(g, t, d, static_cast<std::size_t>(n), static_cast<std::size_t>(m));
}

ConfAveOp conjugate_family(const KillingForm &kf, const ConfAveOp &t) {
  std::vector<LinOp> out;
  for (const auto &tn : t.family()) {
    out.push_back(kf.adjoint(tn));
  }
  return ConfAveOp(std::move(out));
}

ConfAveOp conjugate_family(const LieAlgebra &g, const ConfAveOp &t) { return conjugate_family(KillingForm(g), t); }

Subspace t_star_of(const ConfAveOp &t, const Subspace &b) {
  std::vector<Vec> vs;
  for (const auto &tn : t.family()) {
    for (const auto &v : b.basis()) {
      vs.push_back(tn * v);
    }
  }
  return Subspace::span(vs, t.dim());
}

Subspace t_star_image(const ConfAveOp &t) { return t_star_of(t, Subspace::whole(t.dim())); }

Subspace common_kernel(const ConfAveOp &t) {
  const std::size_t n = t.dim();
  Matrix stacked(n * t.family().size(), n);
  for (std::size_t k = 0; k < t.family().size(); ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        stacked(k * n + i, j) = t[k](i, j);
      }
    }
  }
  return Subspace::span(nullspace(stacked), n);
}

Subspace filtration_term(const ConfAveOp &t, std::size_t n) {
  std::vector<Vec> vs;
  for (std::size_t m = n; m <= t.degree(); ++m) {
    for (std::size_t j = 0; j < t.dim(); ++j) {
      vs.push_back(t[m].col(j));
    }
  }
  return Subspace::span(vs, t.dim());
}

bool is_homogeneous(const ConfAveOp &t, const RootDatum &rd) {
  return t_star_image(t).contains(Subspace::span(rd.cartan, t.dim()));
}

// ---------------------------------------------------------------------------
// Homogeneous operators
// ---------------------------------------------------------------------------

Subspace h0_subspace(const RootDatum &rd, const std::vector<std::size_t> &members, std::size_t dim) {
  std::vector<Vec> vs;
  for (auto a : members) {
    vs.push_back(rd.coroots.at(a));
  }
  return Subspace::span(vs, dim);
}

Subspace hperp_subspace(const RootDatum &rd, const std::vector<std::size_t> &members, std::size_t dim) {
  const std::size_t r = rd.rank();
  std::vector<Vec> coords;
  if (members.empty()) {
    for (std::size_t i = 0; i < r; ++i) {
      coords.push_back(Vec::unit(r, i));
    }
  } else {
    Matrix sys(members.size(), r);
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (std::size_t j = 0; j < r; ++j) {
        sys(i, j) = rd.roots.at(members[i])[j];
      }
    }
    coords = nullspace(sys);
  }
  std::vector<Vec> vs;
  for (const auto &c : coords) {
    Vec h(dim);
    for (std::size_t j = 0; j < r; ++j) {
      h.axpy(c[j], rd.cartan[j]);
    }
    vs.push_back(std::move(h));
  }
  return Subspace::span(vs, dim);
}

std::vector<std::size_t> roots_in(const RootDatum &rd, const Subspace &s) {
  std::vector<std::size_t> out;
  for (std::size_t a = 0; a < rd.size(); ++a) {
    if (s.contains(rd.root_vectors[a])) {
      out.push_back(a);
    }
  }
  return out;
}

ConfAveOp homogeneous_build(const LieAlgebra &g, const RootDatum &rd, const HomogeneousSpec &spec, bool verify) {
  const std::size_t dim = g.dim();
  const auto &sub = spec.subsystem;
  if (!is_closed_symmetric(rd, sub.members)) {
    throw Error("subsystem is not closed and symmetric");
  }
  for (std::size_t c = 0; c < sub.components.size(); ++c) {
    auto it = spec.xi.find(c);
    if (it == spec.xi.end()) {
      throw Error("missing xi for component " + std::to_string(c));
    }
    if (is_zero(it->second)) {
      throw Error("xi for component " + std::to_string(c) + " must be nonzero");
    }
  }
  for (const auto &[c, val] : spec.xi) {
    if (c >= sub.components.size()) {
      throw Error("xi given for unknown component " + std::to_string(c));
    }
  }
  if (spec.hperp.size() > ConfAveOp::max_degree + 1) {
    throw RangeError("h_0^perp family degree exceeds " + std::to_string(ConfAveOp::max_degree));
  }
  for (const auto &h : spec.hperp) {
    if (h.rows() != dim || h.cols() != dim) {
      throw DimensionMismatch("h_0^perp family operator shape");
    }
  }
  auto xi_of = [&](std::size_t root) { return spec.xi.at(sub.component_of(root)); };

  const Subspace hperp = hperp_subspace(rd, sub.members, dim);
  const std::size_t terms = std::max<std::size_t>(spec.hperp.size(), 1);

  std::vector<Vec> domain;
  std::vector<std::vector<Vec>> images(terms);

  // h_0: independent coroots, greedily
  Subspace acc(dim);
  for (auto a : sub.members) {
    const Vec &h = rd.coroots[a];
    if (acc.contains(h)) {
      continue;
    }
    acc = acc + Subspace::span({h}, dim);
    domain.push_back(h);
    images[0].push_back(h * xi_of(a));
    for (std::size_t n = 1; n < terms; ++n) {
      images[n].push_back(Vec(dim));
    }
  }
  // h_0^perp
  for (const auto &b : hperp.basis()) {
    domain.push_back(b);
    for (std::size_t n = 0; n < terms; ++n) {
      Vec img = n < spec.hperp.size() ? spec.hperp[n] * b : Vec(dim);
      if (!hperp.contains(img)) {
        throw Error("h_0^perp family term " + std::to_string(n) + " does not preserve h_0^perp");
      }
      images[n].push_back(std::move(img));
    }
  }
  // root spaces
  for (std::size_t a = 0; a < rd.size(); ++a) {
    domain.push_back(rd.root_vectors[a]);
    for (std::size_t n = 0; n < terms; ++n) {
      images[n].push_back(n == 0 && sub.contains(a) ? rd.root_vectors[a] * xi_of(a) : Vec(dim));
    }
  }
  if (domain.size() != dim) {
    throw Error("h_0 + h_0^perp + root spaces has dimension " + std::to_string(domain.size()) + ", expected " +
                std::to_string(dim));
  }
  Matrix q_inv;
  try {
    q_inv = inverse(Matrix::from_columns(domain, dim));
  } catch (const SingularMatrix &) {
    throw Error("h_0, h_0^perp and root vectors do not form a basis");
  }
  std::vector<LinOp> family;
  for (std::size_t n = 0; n < terms; ++n) {
    family.push_back(Matrix::from_columns(images[n], dim) * q_inv);
  }
  for (auto a : sub.members) {
    if (family[0] * rd.coroots[a] != rd.coroots[a] * xi_of(a)) {
      throw Error("inconsistent xi: T_0(h_alpha) != xi h_alpha for root " + std::to_string(a));
    }
  }
  ConfAveOp out(std::move(family));
  if (verify) {
    auto v = is_conformal_averaging(g, out);
    if (!v.ok || !v.paths_agree) {
      throw Error("homogeneous constructor produced a family that is not conformal averaging");
    }
  }
  return out;
}

LinOp embed_on_subspace(const Subspace &basis, const Matrix &block) {
  const std::size_t dim = basis.ambient();
  const std::size_t d = basis.dim();
  if (block.rows() != d || block.cols() != d) {
    throw DimensionMismatch("block shape does not match subspace dimension");
  }
  std::vector<Vec> cols = basis.basis();
  for (auto i : basis.standard_complement()) {
    cols.push_back(Vec::unit(dim, i));
  }
  Matrix p = Matrix::from_columns(cols, dim);
  Matrix diag(dim, dim);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      diag(i, j) = block(i, j);
    }
  }
  return p * diag * inverse(p);
}

Rat random_rational(std::mt19937_64 &rng, bool nonzero) {
  std::uniform_int_distribution<int> num(-4, 4);
  std::uniform_int_distribution<int> den(1, 3);
  int p = 0;
  do {
    p = num(rng);
  } while (nonzero && p == 0);
  Rat r(p, den(rng));
  r.canonicalize();
  return r;
}

HomogeneousSpec random_homogeneous_spec(const LieAlgebra &g, const RootDatum &rd, const RootSubsystem &subsystem,
                                        std::mt19937_64 &rng, std::size_t max_degree, bool exact_degree) {
  HomogeneousSpec spec;
  spec.subsystem = subsystem;
  for (std::size_t c = 0; c < subsystem.components.size(); ++c) {
    spec.xi[c] = random_rational(rng, true);
  }
  const Subspace hperp = hperp_subspace(rd, subsystem.members, g.dim());
  const std::size_t d = hperp.dim();
  if (d == 0) {
    return spec;
  }
  std::uniform_int_distribution<std::size_t> deg(0, max_degree);
  const std::size_t degree = exact_degree ? max_degree : deg(rng);
  for (std::size_t n = 0; n <= degree; ++n) {
    Matrix block(d, d);
    bool need_invertible = n == 0;
    do {
      for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
          block(i, j) = random_rational(rng, false);
        }
      }
    } while ((need_invertible && rank(block) < d) || block.is_zero());
    spec.hperp.push_back(embed_on_subspace(hperp, block));
  }
  return spec;
}

namespace {

nlohmann::json dims_json(std::initializer_list<std::pair<const char *, std::size_t>> items) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto &[k, v] : items) {
    j[k] = v;
  }
  return j;
}

} // namespace

Report verify_structure_theorems(const LieAlgebra &g, const RootDatum &rd, const ConfAveOp &t, Exec exec) {
  Report rep;
  const std::size_t dim = g.dim();
  static const char *const structure_checks[] = {"closed_under_bracket", "root_set_symmetric", "reductive",
                                                 "derived_in_second_image", "direct_sum_with_kernel",
                                                 "filtration_ideals", "quotient_module_hom", "complement_h"};
  auto skip_rest = [&](const std::string &why) {
    for (const char *name : structure_checks) {
      rep.add(Check{name, Status::skipped, nullptr, why});
    }
  };

  auto verdict = is_conformal_averaging(g, t, exec);
  if (!verdict.ok) {
    const auto &w = *verdict.witness;
    rep.add("precondition.conformal_averaging", false,
            {{"x", g.label(w.x)}, {"y", g.label(w.y)}, {"n", w.n}, {"m", w.m}});
    skip_rest("conformal averaging precondition failed");
    return rep;
  }
  rep.add("precondition.conformal_averaging", true);
  if (!is_homogeneous(t, rd)) {
    rep.add("precondition.homogeneous", false, nullptr, "Cartan subalgebra not contained in T_*(g)");
    skip_rest("homogeneity precondition failed");
    return rep;
  }
  rep.add("precondition.homogeneous", true);

  const Subspace s = t_star_image(t);
  const Subspace k = common_kernel(t);

  rep.add("closed_under_bracket", is_subalgebra(g, s));

  std::vector<std::size_t> delta = roots_in(rd, s);
  {
    std::optional<std::size_t> asym;
    for (auto a : delta) {
      if (!s.contains(rd.root_vectors[rd.negative[a]])) {
        asym = a;
        break;
      }
    }
    rep.add("root_set_symmetric", !asym.has_value(), asym ? nlohmann::json{{"root", *asym}} : nlohmann::json());
  }

  const Subspace derived = bracket_span(g, s, s);
  const Subspace centre = centralizer_in(g, s, s);
  {
    bool split = derived.intersect(centre).dim() == 0 && (derived + centre) == s;
    bool semisimple = true;
    if (derived.dim() > 0 && is_subalgebra(g, derived)) {
      semisimple = KillingForm(restrict_to(g, derived)).nondegenerate();
    } else if (derived.dim() > 0) {
      semisimple = false;
    }
    rep.add("reductive", split && semisimple,
            dims_json({{"t_star", s.dim()}, {"derived", derived.dim()}, {"center", centre.dim()}}),
            split ? (semisimple ? "" : "derived subalgebra has degenerate Killing form")
                  : "derived subalgebra and center do not split T_*(g)");
  }

  rep.add("derived_in_second_image", t_star_of(t, s).contains(derived));

  {
    bool direct = s.intersect(k).dim() == 0 && s.dim() + k.dim() == dim;
    rep.add("direct_sum_with_kernel", direct, dims_json({{"t_star", s.dim()}, {"kernel", k.dim()}, {"dim", dim}}));
  }

  std::vector<Subspace> filt;
  for (std::size_t n = 0; n <= t.degree() + 1; ++n) {
    filt.push_back(filtration_term(t, n));
  }
  {
    std::optional<std::size_t> bad;
    for (std::size_t n = 0; n <= t.degree(); ++n) {
      if (!filt[n].contains(bracket_span(g, s, filt[n]))) {
        bad = n;
        break;
      }
    }
    rep.add("filtration_ideals", !bad, bad ? nlohmann::json{{"n", *bad}} : nlohmann::json());
  }

  {
    const std::size_t big_n = t.degree();
    struct HomWitness {
      std::size_t x, a, k, n;
    };
    auto w = first_failure<HomWitness>(dim * dim, exec, [&](std::size_t idx) -> std::optional<HomWitness> {
      std::size_t x = idx / dim;
      std::size_t a = idx % dim;
      Vec ea = g.basis_vector(a);
      for (std::size_t kk = 0; kk <= big_n; ++kk) {
        Vec tkx = t[kk].col(x);
        for (std::size_t n = 0; n <= big_n; ++n) {
          Vec diff = g.bracket(tkx, t[n].col(a)) - t[n] * g.bracket(tkx, ea);
          if (!filt[n + 1].contains(diff)) {
            return HomWitness{x, a, kk, n};
          }
        }
      }
      return std::nullopt;
    });
    rep.add("quotient_module_hom", !w,
            w ? nlohmann::json{{"x", g.label(w->x)}, {"a", g.label(w->a)}, {"k", w->k}, {"n", w->n}}
              : nlohmann::json());
  }

  {
    const Subspace hp = hperp_subspace(rd, delta, dim);
    bool into_kernel = k.contains(bracket_span(g, Subspace::whole(dim), hp));
    bool commutes = bracket_span(g, hp, s).dim() == 0;
    rep.add("complement_h", into_kernel && commutes, dims_json({{"hperp", hp.dim()}}),
            into_kernel ? (commutes ? "" : "[h_0^perp, T_*(g)] != 0") : "[g, h_0^perp] not inside Ker T");
  }
  return rep;
}

} // namespace cybeforge
