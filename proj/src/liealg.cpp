#include "cybeforge/liealg.hpp"

#include "cybeforge/errors.hpp"
#include "cybeforge/poly.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace cybeforge {

// ---------------------------------------------------------------------------
// BilinearAlgebra / LieAlgebra
// ---------------------------------------------------------------------------

BilinearAlgebra::BilinearAlgebra(std::vector<std::string> labels)
    : labels_(std::move(labels)), table_(labels_.size() * labels_.size()) {}

std::size_t BilinearAlgebra::index_of(const std::string &label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) {
    throw Error("no basis element labelled '" + label + "'");
  }
  return static_cast<std::size_t>(it - labels_.begin());
}

void BilinearAlgebra::set_product(std::size_t i, std::size_t j, SparseVec value) {
  if (i >= dim() || j >= dim()) {
    throw DimensionMismatch("structure index out of range");
  }
  std::map<std::size_t, Rat> merged;
  for (auto &[k, c] : value) {
    if (k >= dim()) {
      throw DimensionMismatch("structure index out of range");
    }
    merged[k] += c;
  }
  SparseVec clean;
  for (auto &[k, c] : merged) {
    if (!is_zero(c)) {
      clean.emplace_back(k, c);
    }
  }
  table_[i * dim() + j] = std::move(clean);
}

Rat BilinearAlgebra::structure_constant(std::size_t i, std::size_t j, std::size_t k) const {
  for (const auto &[kk, c] : product_basis(i, j)) {
    if (kk == k) {
      return c;
    }
  }
  return 0;
}

Vec BilinearAlgebra::product(const Vec &x, const Vec &y) const {
  if (x.size() != dim() || y.size() != dim()) {
    throw DimensionMismatch("product of vectors of sizes " + std::to_string(x.size()) + ", " +
                            std::to_string(y.size()) + " in dimension " + std::to_string(dim()));
  }
  Vec out(dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    if (is_zero(x[i])) {
      continue;
    }
    for (std::size_t j = 0; j < dim(); ++j) {
      if (is_zero(y[j])) {
        continue;
      }
      const auto &entries = product_basis(i, j);
      if (entries.empty()) {
        continue;
      }
      Rat s = x[i] * y[j];
      for (const auto &[k, c] : entries) {
        out[k] += s * c;
      }
    }
  }
  return out;
}

Vec LieAlgebra::bracket_basis(std::size_t i, std::size_t j) const {
  Vec out(dim());
  for (const auto &[k, c] : product_basis(i, j)) {
    out[k] = c;
  }
  return out;
}

LinOp LieAlgebra::ad(const Vec &x) const {
  LinOp m(dim(), dim());
  for (std::size_t j = 0; j < dim(); ++j) {
    m.set_col(j, bracket(x, basis_vector(j)));
  }
  return m;
}

LinOp LieAlgebra::ad_basis(std::size_t i) const {
  LinOp m(dim(), dim());
  for (std::size_t j = 0; j < dim(); ++j) {
    for (const auto &[k, c] : product_basis(i, j)) {
      m(k, j) = c;
    }
  }
  return m;
}

ValidationReport validate(const LieAlgebra &g, Exec exec) {
  ValidationReport rep;
  const std::size_t n = g.dim();
  // antisymmetry on ordered pairs i <= j
  auto anti = first_failure<std::array<std::size_t, 2>>(n * n, exec, [&](std::size_t idx)
                                                            -> std::optional<std::array<std::size_t, 2>> {
    std::size_t i = idx / n;
    std::size_t j = idx % n;
    if (j < i) {
      return std::nullopt;
    }
    if (g.bracket_basis(i, j) + g.bracket_basis(j, i) == Vec(n)) {
      return std::nullopt;
    }
    return std::array<std::size_t, 2>{i, j};
  });
  if (anti) {
    rep.antisymmetric = false;
    rep.antisymmetry_witness = anti;
  }
  // With antisymmetry, the cyclic sum on i < j < k covers every triple.
  const bool all_orders = !rep.antisymmetric;
  auto jac = first_failure<std::array<std::size_t, 3>>(n * n * n, exec, [&](std::size_t idx)
                                                           -> std::optional<std::array<std::size_t, 3>> {
    std::size_t i = idx / (n * n);
    std::size_t j = (idx / n) % n;
    std::size_t k = idx % n;
    if (!all_orders && !(i < j && j < k)) {
      return std::nullopt;
    }
    Vec ei = g.basis_vector(i);
    Vec ej = g.basis_vector(j);
    Vec ek = g.basis_vector(k);
    Vec s = g.bracket(ei, g.bracket_basis(j, k));
    s += g.bracket(ej, g.bracket_basis(k, i));
    s += g.bracket(ek, g.bracket_basis(i, j));
    if (s.is_zero()) {
      return std::nullopt;
    }
    return std::array<std::size_t, 3>{i, j, k};
  });
  if (jac) {
    rep.jacobi = false;
    rep.jacobi_witness = jac;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Root data
// ---------------------------------------------------------------------------

std::optional<std::size_t> RootDatum::find_root(const std::vector<Rat> &values) const {
  for (std::size_t a = 0; a < roots.size(); ++a) {
    if (roots[a] == values) {
      return a;
    }
  }
  return std::nullopt;
}

Rat RootDatum::evaluate(std::size_t a, const Vec &cartan_coords) const {
  Rat acc = 0;
  for (std::size_t i = 0; i < rank(); ++i) {
    acc += roots[a][i] * cartan_coords[i];
  }
  return acc;
}

void RootDatum::finalize(const LieAlgebra &g) {
  const std::size_t m = roots.size();
  negative.assign(m, 0);
  for (std::size_t a = 0; a < m; ++a) {
    std::vector<Rat> neg = roots[a];
    for (auto &x : neg) {
      x = -x;
    }
    auto b = find_root(neg);
    if (!b) {
      throw DecompositionFailure("root " + std::to_string(a) + " has no negative");
    }
    negative[a] = *b;
  }
  coroots.clear();
  for (std::size_t a = 0; a < m; ++a) {
    coroots.push_back(g.bracket(root_vectors[a], root_vectors[negative[a]]));
  }
  sum_index.assign(m, std::vector<long>(m, -1));
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      std::vector<Rat> s(rank());
      for (std::size_t i = 0; i < rank(); ++i) {
        s[i] = roots[a][i] + roots[b][i];
      }
      if (auto c = find_root(s)) {
        sum_index[a][b] = static_cast<long>(*c);
      }
    }
  }
  Matrix cartan_cols = Matrix::from_columns(cartan, g.dim());
  std::vector<Vec> coroot_coords;
  for (std::size_t b = 0; b < m; ++b) {
    auto c = solve(cartan_cols, coroots[b]);
    if (!c) {
      throw DecompositionFailure("coroot " + std::to_string(b) + " outside the Cartan subalgebra");
    }
    coroot_coords.push_back(*c);
  }
  pairing.assign(m, std::vector<Rat>(m));
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      pairing[a][b] = evaluate(a, coroot_coords[b]);
    }
  }
}

namespace {

// Lexicographically descending on functional values.
bool root_order(const std::vector<Rat> &x, const std::vector<Rat> &y) {
  return std::lexicographical_compare(y.begin(), y.end(), x.begin(), x.end());
}

struct MatrixUnit {
  std::size_t i;
  std::size_t j;
};

} // namespace

BuiltAlgebra build_sl(int n) {
  if (n < 2 || n > 6) {
    throw RangeError("sl_n requires 2 <= n <= 6, got " + std::to_string(n));
  }
  const std::size_t N = static_cast<std::size_t>(n);
  const std::size_t rank = N - 1;

  // root vectors E_ij with their functional values on H_k
  struct Entry {
    MatrixUnit unit;
    std::vector<Rat> values;
  };
  std::vector<Entry> entries;
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t j = 0; j < N; ++j) {
      if (i == j) {
        continue;
      }
      std::vector<Rat> vals(rank);
      for (std::size_t k = 0; k < rank; ++k) {
        int v = (i == k) - (i == k + 1) - (j == k) + (j == k + 1);
        vals[k] = v;
      }
      entries.push_back({{i, j}, vals});
    }
  }
  std::stable_sort(entries.begin(), entries.end(),
                   [](const Entry &a, const Entry &b) { return root_order(a.values, b.values); });

  std::vector<std::string> labels;
  for (std::size_t k = 0; k < rank; ++k) {
    labels.push_back("H" + std::to_string(k + 1));
  }
  for (const auto &e : entries) {
    labels.push_back("E" + std::to_string(e.unit.i + 1) + std::to_string(e.unit.j + 1));
  }
  const std::size_t dim = labels.size();

  // basis matrices
  using Mat = std::vector<std::vector<Rat>>;
  std::vector<Mat> mats;
  for (std::size_t k = 0; k < rank; ++k) {
    Mat m(N, std::vector<Rat>(N));
    m[k][k] = 1;
    m[k + 1][k + 1] = -1;
    mats.push_back(m);
  }
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> unit_index;
  for (std::size_t e = 0; e < entries.size(); ++e) {
    Mat m(N, std::vector<Rat>(N));
    m[entries[e].unit.i][entries[e].unit.j] = 1;
    mats.push_back(m);
    unit_index[{entries[e].unit.i, entries[e].unit.j}] = rank + e;
  }

  LieAlgebra g(labels);
  for (std::size_t a = 0; a < dim; ++a) {
    for (std::size_t b = 0; b < dim; ++b) {
      Mat c(N, std::vector<Rat>(N));
      for (std::size_t i = 0; i < N; ++i) {
        for (std::size_t k = 0; k < N; ++k) {
          if (is_zero(mats[a][i][k])) {
            continue;
          }
          for (std::size_t j = 0; j < N; ++j) {
            c[i][j] += mats[a][i][k] * mats[b][k][j];
          }
        }
      }
      for (std::size_t i = 0; i < N; ++i) {
        for (std::size_t k = 0; k < N; ++k) {
          if (is_zero(mats[b][i][k])) {
            continue;
          }
          for (std::size_t j = 0; j < N; ++j) {
            c[i][j] -= mats[b][i][k] * mats[a][k][j];
          }
        }
      }
      SparseVec out;
      // traceless diagonal D = sum_k d_k H_k with d_k = D_11 + ... + D_kk
      Rat cumulative = 0;
      for (std::size_t k = 0; k < rank; ++k) {
        cumulative += c[k][k];
        if (!is_zero(cumulative)) {
          out.emplace_back(k, cumulative);
        }
      }
      for (std::size_t i = 0; i < N; ++i) {
        for (std::size_t j = 0; j < N; ++j) {
          if (i != j && !is_zero(c[i][j])) {
            out.emplace_back(unit_index.at({i, j}), c[i][j]);
          }
        }
      }
      g.set_product(a, b, std::move(out));
    }
  }

  RootDatum rd;
  for (std::size_t k = 0; k < rank; ++k) {
    rd.cartan.push_back(Vec::unit(dim, k));
  }
  for (std::size_t e = 0; e < entries.size(); ++e) {
    rd.roots.push_back(entries[e].values);
    rd.root_vectors.push_back(Vec::unit(dim, rank + e));
  }
  rd.finalize(g);
  return {std::move(g), std::move(rd)};
}

LieAlgebra build_abelian(std::size_t n) {
  if (n == 0) {
    throw RangeError("abelian algebra dimension must be positive");
  }
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back("z" + std::to_string(i + 1));
  }
  return LieAlgebra(labels);
}

BilinearAlgebra build_matrix_algebra(std::size_t n) {
  if (n == 0) {
    throw RangeError("matrix size must be positive");
  }
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      labels.push_back("E" + std::to_string(i + 1) + std::to_string(j + 1));
    }
  }
  BilinearAlgebra a(labels);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t l = 0; l < n; ++l) {
        // E_ij E_jl = E_il
        a.set_product(i * n + j, j * n + l, {{i * n + l, Rat(1)}});
      }
    }
  }
  return a;
}

LieAlgebra build_gl(std::size_t n) {
  BilinearAlgebra assoc = build_matrix_algebra(n);
  LieAlgebra g(assoc.labels());
  for (std::size_t a = 0; a < assoc.dim(); ++a) {
    for (std::size_t b = 0; b < assoc.dim(); ++b) {
      SparseVec v = assoc.product_basis(a, b);
      for (const auto &[k, c] : assoc.product_basis(b, a)) {
        v.emplace_back(k, -c);
      }
      g.set_product(a, b, std::move(v));
    }
  }
  return g;
}

LieAlgebra direct_sum(const LieAlgebra &a, const LieAlgebra &b) {
  std::vector<std::string> labels = a.labels();
  std::set<std::string> seen(labels.begin(), labels.end());
  bool clash = std::any_of(b.labels().begin(), b.labels().end(), [&](const auto &l) { return seen.count(l); });
  if (clash) {
    for (auto &l : labels) {
      l = "L." + l;
    }
  }
  for (const auto &l : b.labels()) {
    labels.push_back(clash ? "R." + l : l);
  }
  LieAlgebra s(labels);
  const std::size_t da = a.dim();
  for (std::size_t i = 0; i < da; ++i) {
    for (std::size_t j = 0; j < da; ++j) {
      s.set_product(i, j, a.product_basis(i, j));
    }
  }
  for (std::size_t i = 0; i < b.dim(); ++i) {
    for (std::size_t j = 0; j < b.dim(); ++j) {
      SparseVec v;
      for (const auto &[k, c] : b.product_basis(i, j)) {
        v.emplace_back(k + da, c);
      }
      s.set_product(i + da, j + da, std::move(v));
    }
  }
  return s;
}

namespace {

Vec embed(const Vec &v, std::size_t offset, std::size_t dim) {
  Vec out(dim);
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[offset + i] = v[i];
  }
  return out;
}

} // namespace

RootDatum direct_sum(const RootDatum &a, const RootDatum &b, const LieAlgebra &sum, std::size_t dim_a,
                     std::size_t dim_b) {
  const std::size_t dim = dim_a + dim_b;
  if (sum.dim() != dim) {
    throw DimensionMismatch("direct sum dimension");
  }
  RootDatum rd;
  for (const auto &h : a.cartan) {
    rd.cartan.push_back(embed(h, 0, dim));
  }
  for (const auto &h : b.cartan) {
    rd.cartan.push_back(embed(h, dim_a, dim));
  }
  struct Entry {
    std::vector<Rat> values;
    Vec vec;
  };
  std::vector<Entry> entries;
  for (std::size_t r = 0; r < a.size(); ++r) {
    std::vector<Rat> vals = a.roots[r];
    vals.resize(a.rank() + b.rank());
    entries.push_back({vals, embed(a.root_vectors[r], 0, dim)});
  }
  for (std::size_t r = 0; r < b.size(); ++r) {
    std::vector<Rat> vals(a.rank());
    vals.insert(vals.end(), b.roots[r].begin(), b.roots[r].end());
    entries.push_back({vals, embed(b.root_vectors[r], dim_a, dim)});
  }
  std::stable_sort(entries.begin(), entries.end(),
                   [](const Entry &x, const Entry &y) { return root_order(x.values, y.values); });
  for (auto &e : entries) {
    rd.roots.push_back(std::move(e.values));
    rd.root_vectors.push_back(std::move(e.vec));
  }
  rd.finalize(sum);
  return rd;
}

BuiltAlgebra direct_sum(const BuiltAlgebra &a, const BuiltAlgebra &b) {
  LieAlgebra s = direct_sum(a.algebra, b.algebra);
  RootDatum rd = direct_sum(a.roots, b.roots, s, a.algebra.dim(), b.algebra.dim());
  return {std::move(s), std::move(rd)};
}

// ---------------------------------------------------------------------------
// Killing form
// ---------------------------------------------------------------------------

KillingForm::KillingForm(const LieAlgebra &g) : gram_(g.dim(), g.dim()) {
  const std::size_t n = g.dim();
  struct Nz {
    std::size_t row;
    std::size_t col;
    Rat val;
  };
  std::vector<std::vector<Nz>> nz(n);
  std::vector<LinOp> ads;
  for (std::size_t i = 0; i < n; ++i) {
    ads.push_back(g.ad_basis(i));
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = 0; q < n; ++q) {
        if (!is_zero(ads[i](p, q))) {
          nz[i].push_back({p, q, ads[i](p, q)});
        }
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      Rat t = 0;
      for (const auto &e : nz[i]) {
        const Rat &other = ads[j](e.col, e.row);
        if (!is_zero(other)) {
          t += e.val * other;
        }
      }
      gram_(i, j) = t;
      gram_(j, i) = t;
    }
  }
  try {
    inverse_ = inverse(gram_);
  } catch (const SingularMatrix &) {
    inverse_.reset();
  }
}

const Matrix &KillingForm::inverse_gram() const {
  if (!inverse_) {
    throw SingularForm("Killing form is degenerate");
  }
  return *inverse_;
}

Rat KillingForm::pair(const Vec &x, const Vec &y) const { return dot(x, gram_ * y); }

LinOp KillingForm::adjoint(const LinOp &p) const { return inverse_gram() * p.transpose() * gram_; }

Matrix killing(const LieAlgebra &g) { return KillingForm(g).gram(); }

Rat killing_pair(const LieAlgebra &g, const Vec &x, const Vec &y) { return KillingForm(g).pair(x, y); }

LinOp killing_adjoint(const LieAlgebra &g, const LinOp &p) { return KillingForm(g).adjoint(p); }

// ---------------------------------------------------------------------------
// Centroid
// ---------------------------------------------------------------------------

// Unknown T_{kl} (row k, column l) is variable k*n + l.
std::vector<LinOp> centroid_basis(const BilinearAlgebra &g) {
  const std::size_t n = g.dim();
  SparseEchelon sys(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      // T(e_i e_j) - (T e_i) e_j = 0 and T(e_i e_j) - e_i (T e_j) = 0, coordinate k
      std::vector<SparseEchelon::Row> left(n);
      std::vector<SparseEchelon::Row> right(n);
      for (const auto &[l, c] : g.product_basis(i, j)) {
        for (std::size_t k = 0; k < n; ++k) {
          left[k][k * n + l] += c;
          right[k][k * n + l] += c;
        }
      }
      for (std::size_t m = 0; m < n; ++m) {
        for (const auto &[k, c] : g.product_basis(m, j)) {
          left[k][m * n + i] -= c;
        }
        for (const auto &[k, c] : g.product_basis(i, m)) {
          right[k][m * n + j] -= c;
        }
      }
      for (std::size_t k = 0; k < n; ++k) {
        sys.add_row(std::move(left[k]));
        sys.add_row(std::move(right[k]));
      }
    }
  }
  std::vector<LinOp> out;
  for (const auto &sol : sys.nullspace()) {
    LinOp t(n, n);
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t l = 0; l < n; ++l) {
        t(k, l) = sol[k * n + l];
      }
    }
    out.push_back(std::move(t));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Root decomposition
// ---------------------------------------------------------------------------

RootDatum root_decomposition(const LieAlgebra &g, const std::vector<Vec> &cartan) {
  const std::size_t n = g.dim();
  for (std::size_t i = 0; i < cartan.size(); ++i) {
    for (std::size_t j = i + 1; j < cartan.size(); ++j) {
      if (!g.bracket(cartan[i], cartan[j]).is_zero()) {
        throw DecompositionFailure("Cartan basis is not abelian");
      }
    }
  }
  if (Subspace::span(cartan, n).dim() != cartan.size()) {
    throw DecompositionFailure("Cartan basis is linearly dependent");
  }

  struct Piece {
    Subspace space;
    std::vector<Rat> values;
  };
  std::vector<Piece> pieces{{Subspace::whole(n), {}}};
  for (const auto &h : cartan) {
    LinOp a = g.ad(h);
    auto cp = charpoly(a);
    auto eigen = rational_roots(UniPoly(Var::lambda, cp));
    std::vector<Subspace> eigenspaces;
    std::size_t total = 0;
    for (const auto &lam : eigen) {
      LinOp shifted = a - Matrix::identity(n) * lam;
      auto ker = Subspace::span(nullspace(shifted), n);
      total += ker.dim();
      eigenspaces.push_back(std::move(ker));
    }
    if (total != n) {
      throw DecompositionFailure("ad of a Cartan element is not diagonalizable over Q");
    }
    std::vector<Piece> next;
    for (const auto &p : pieces) {
      for (std::size_t e = 0; e < eigen.size(); ++e) {
        Subspace s = p.space.intersect(eigenspaces[e]);
        if (s.dim() == 0) {
          continue;
        }
        auto vals = p.values;
        vals.push_back(eigen[e]);
        next.push_back({std::move(s), std::move(vals)});
      }
    }
    pieces = std::move(next);
  }
  std::size_t total = 0;
  for (const auto &p : pieces) {
    total += p.space.dim();
  }
  if (total != n) {
    throw DecompositionFailure("Cartan elements are not simultaneously diagonalizable");
  }

  struct Entry {
    std::vector<Rat> values;
    Vec vec;
  };
  std::vector<Entry> entries;
  for (auto &p : pieces) {
    bool zero = std::all_of(p.values.begin(), p.values.end(), [](const Rat &x) { return is_zero(x); });
    if (zero) {
      continue;
    }
    if (p.space.dim() != 1) {
      throw DecompositionFailure("root space of dimension " + std::to_string(p.space.dim()));
    }
    entries.push_back({p.values, p.space.basis().front()});
  }
  std::sort(entries.begin(), entries.end(),
            [](const Entry &a, const Entry &b) { return root_order(a.values, b.values); });
  RootDatum rd;
  rd.cartan = cartan;
  for (auto &e : entries) {
    rd.roots.push_back(std::move(e.values));
    rd.root_vectors.push_back(std::move(e.vec));
  }
  rd.finalize(g);
  return rd;
}

// ---------------------------------------------------------------------------
// Root subsystems
// ---------------------------------------------------------------------------

bool RootSubsystem::contains(std::size_t root) const {
  return std::binary_search(members.begin(), members.end(), root);
}

std::size_t RootSubsystem::component_of(std::size_t root) const {
  for (std::size_t c = 0; c < components.size(); ++c) {
    if (std::find(components[c].begin(), components[c].end(), root) != components[c].end()) {
      return c;
    }
  }
  throw Error("root " + std::to_string(root) + " is not in the subsystem");
}

bool is_closed_symmetric(const RootDatum &rd, const std::vector<std::size_t> &members) {
  std::vector<bool> in(rd.size(), false);
  for (auto a : members) {
    in.at(a) = true;
  }
  for (auto a : members) {
    if (!in[rd.negative[a]]) {
      return false;
    }
    for (auto b : members) {
      long s = rd.sum_index[a][b];
      if (s >= 0 && !in[static_cast<std::size_t>(s)]) {
        return false;
      }
    }
  }
  return true;
}

std::vector<std::vector<std::size_t>> subsystem_components(const RootDatum &rd,
                                                           const std::vector<std::size_t> &members) {
  const std::size_t m = members.size();
  std::vector<std::size_t> parent(m);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  std::set<std::size_t> in(members.begin(), members.end());
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      std::size_t a = members[i];
      std::size_t b = members[j];
      long plus = rd.sum_index[a][b];
      long minus = rd.sum_index[a][rd.negative[b]];
      bool linked = !is_zero(rd.pairing[a][b]) || !is_zero(rd.pairing[b][a]) ||
                    (plus >= 0 && in.count(static_cast<std::size_t>(plus))) ||
                    (minus >= 0 && in.count(static_cast<std::size_t>(minus))) || rd.negative[a] == b;
      if (linked) {
        parent[find(i)] = find(j);
      }
    }
  }
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < m; ++i) {
    groups[find(i)].push_back(members[i]);
  }
  std::vector<std::vector<std::size_t>> comps;
  for (auto &[root, g] : groups) {
    std::sort(g.begin(), g.end());
    comps.push_back(std::move(g));
  }
  std::sort(comps.begin(), comps.end(), [](const auto &x, const auto &y) { return x.front() < y.front(); });
  return comps;
}

std::vector<RootSubsystem> enumerate_closed_symmetric(const RootDatum &rd, Exec exec) {
  std::vector<std::size_t> pairs;
  for (std::size_t a = 0; a < rd.size(); ++a) {
    if (a < rd.negative[a]) {
      pairs.push_back(a);
    }
  }
  if (pairs.size() > max_enumeration_pairs) {
    throw BudgetExceeded("subsystem enumeration is limited to " + std::to_string(max_enumeration_pairs) +
                         " sign pairs (2^" + std::to_string(max_enumeration_pairs) + " candidates); got " +
                         std::to_string(pairs.size()));
  }
  const std::size_t count = std::size_t{1} << pairs.size();
  auto found = indexed_map<std::optional<RootSubsystem>>(count, exec, [&](std::size_t mask) {
    std::vector<std::size_t> members;
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      if (mask & (std::size_t{1} << p)) {
        members.push_back(pairs[p]);
        members.push_back(rd.negative[pairs[p]]);
      }
    }
    std::sort(members.begin(), members.end());
    std::optional<RootSubsystem> out;
    if (is_closed_symmetric(rd, members)) {
      out = RootSubsystem{members, subsystem_components(rd, members)};
    }
    return out;
  });
  std::vector<RootSubsystem> out;
  for (auto &f : found) {
    if (f) {
      out.push_back(std::move(*f));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Subspace helpers
// ---------------------------------------------------------------------------

Subspace bracket_span(const LieAlgebra &g, const Subspace &a, const Subspace &b) {
  std::vector<Vec> vs;
  for (const auto &x : a.basis()) {
    for (const auto &y : b.basis()) {
      Vec z = g.bracket(x, y);
      if (!z.is_zero()) {
        vs.push_back(std::move(z));
      }
    }
  }
  return Subspace::span(vs, g.dim());
}

bool is_subalgebra(const LieAlgebra &g, const Subspace &s) { return s.contains(bracket_span(g, s, s)); }

Subspace centralizer_in(const LieAlgebra &g, const Subspace &s, const Subspace &of) {
  const std::size_t n = g.dim();
  if (s.dim() == 0) {
    return Subspace(n);
  }
  Matrix sys(n * std::max<std::size_t>(of.dim(), 1), s.dim());
  for (std::size_t j = 0; j < of.dim(); ++j) {
    for (std::size_t i = 0; i < s.dim(); ++i) {
      Vec b = g.bracket(s.basis()[i], of.basis()[j]);
      for (std::size_t k = 0; k < n; ++k) {
        sys(j * n + k, i) = b[k];
      }
    }
  }
  std::vector<Vec> vs;
  for (const auto &c : nullspace(sys)) {
    Vec z(n);
    for (std::size_t i = 0; i < s.dim(); ++i) {
      z.axpy(c[i], s.basis()[i]);
    }
    vs.push_back(std::move(z));
  }
  return Subspace::span(vs, n);
}

Subspace center(const LieAlgebra &g) {
  auto all = Subspace::whole(g.dim());
  return centralizer_in(g, all, all);
}

LieAlgebra restrict_to(const LieAlgebra &g, const Subspace &s) {
  if (s.dim() == 0) {
    throw RangeError("cannot restrict to the zero subspace");
  }
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < s.dim(); ++i) {
    labels.push_back("s" + std::to_string(i + 1));
  }
  LieAlgebra out(labels);
  for (std::size_t i = 0; i < s.dim(); ++i) {
    for (std::size_t j = 0; j < s.dim(); ++j) {
      Vec c = s.coordinates(g.bracket(s.basis()[i], s.basis()[j]));
      SparseVec v;
      for (std::size_t k = 0; k < c.size(); ++k) {
        if (!is_zero(c[k])) {
          v.emplace_back(k, c[k]);
        }
      }
      out.set_product(i, j, std::move(v));
    }
  }
  return out;
}

} // namespace cybeforge
