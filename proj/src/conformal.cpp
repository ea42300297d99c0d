#include "cybeforge/conformal.hpp"

#include "cybeforge/errors.hpp"

#include <array>
#include <sstream>

namespace cybeforge {

// ---------------------------------------------------------------------------
// ConfElem
// ---------------------------------------------------------------------------

ConfElem ConfElem::term(int k, const Vec &a) {
  ConfElem e(a.size());
  e.add_term(k, a);
  return e;
}

Vec ConfElem::coefficient(int k) const {
  auto it = terms_.find(k);
  return it == terms_.end() ? Vec(dim_) : it->second;
}

void ConfElem::add_term(int k, const Vec &a, const Rat &s) {
  if (a.size() != dim_) {
    throw DimensionMismatch("conformal element coefficient dimension");
  }
  if (k < 0) {
    throw RangeError("negative d-degree");
  }
  if (a.is_zero() || cybeforge::is_zero(s)) {
    return;
  }
  if (k > max_degree) {
    throw RangeError("d-degree " + std::to_string(k) + " exceeds " + std::to_string(max_degree));
  }
  auto it = terms_.find(k);
  if (it == terms_.end()) {
    terms_.emplace(k, a * s);
    return;
  }
  it->second.axpy(s, a);
  if (it->second.is_zero()) {
    terms_.erase(it);
  }
}

ConfElem ConfElem::shifted(int j) const {
  ConfElem out(dim_);
  for (const auto &[k, a] : terms_) {
    out.add_term(k + j, a);
  }
  return out;
}

ConfElem &ConfElem::operator+=(const ConfElem &o) {
  for (const auto &[k, a] : o.terms_) {
    add_term(k, a);
  }
  return *this;
}

ConfElem &ConfElem::operator-=(const ConfElem &o) {
  for (const auto &[k, a] : o.terms_) {
    add_term(k, a, -1);
  }
  return *this;
}

ConfElem &ConfElem::operator*=(const Rat &s) {
  if (cybeforge::is_zero(s)) {
    terms_.clear();
    return *this;
  }
  for (auto &[k, a] : terms_) {
    a *= s;
  }
  return *this;
}

std::string ConfElem::str() const {
  if (terms_.empty()) {
    return "0";
  }
  std::ostringstream os;
  bool first = true;
  for (const auto &[k, a] : terms_) {
    if (!first) {
      os << " + ";
    }
    first = false;
    os << "d^" << k << "(x)" << a.str();
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Cur g
// ---------------------------------------------------------------------------

CurAlgebra::CurAlgebra(LieAlgebra base, Exec exec) : base_(std::move(base)), validation_(validate(base_, exec)) {}

namespace {

using Coeffs = std::map<int, Rat>;

void add_into(Coeffs &acc, const Coeffs &c, const Rat &s, int shift) {
  for (const auto &[j, v] : c) {
    Rat &slot = acc[j + shift];
    slot += s * v;
    if (is_zero(slot)) {
      acc.erase(j + shift);
    }
  }
}

Coeffs product_coeffs(int k, int l, int n, std::map<std::array<int, 3>, Coeffs> &memo) {
  if (n < 0) {
    return {};
  }
  auto key = std::array<int, 3>{k, l, n};
  if (auto it = memo.find(key); it != memo.end()) {
    return it->second;
  }
  Coeffs out;
  if (k > 0) {
    // [d a <n> b] = -n [a <n-1> b]
    if (n > 0) {
      add_into(out, product_coeffs(k - 1, l, n - 1, memo), Rat(-n), 0);
    }
  } else if (l > 0) {
    // [a <n> d b] = d [a <n> b] + n [a <n-1> b]
    add_into(out, product_coeffs(0, l - 1, n, memo), Rat(1), 1);
    if (n > 0) {
      add_into(out, product_coeffs(0, l - 1, n - 1, memo), Rat(n), 0);
    }
  } else if (n == 0) {
    out[0] = 1;
  }
  memo.emplace(key, out);
  return out;
}

} // namespace

std::map<int, Rat> current_product_coefficients(int k, int l, int n) {
  if (k < 0 || l < 0) {
    throw RangeError("negative d-degree");
  }
  std::map<std::array<int, 3>, Coeffs> memo;
  return product_coeffs(k, l, n, memo);
}

ConfElem n_product(const CurAlgebra &c, const ConfElem &x, const ConfElem &y, int n) {
  if (n < 0) {
    throw RangeError("n-product index must be nonnegative");
  }
  if (x.dim() != c.dim() || y.dim() != c.dim()) {
    throw DimensionMismatch("conformal element dimension does not match algebra");
  }
  ConfElem out(c.dim());
  if (x.is_zero() || y.is_zero()) {
    return out;
  }
  thread_local std::map<std::array<int, 3>, Coeffs> memo;
  for (const auto &[k, a] : x.terms()) {
    for (const auto &[l, b] : y.terms()) {
      Coeffs coeffs = product_coeffs(k, l, n, memo);
      if (coeffs.empty()) {
        continue;
      }
      Vec ab = c.base().bracket(a, b);
      if (ab.is_zero()) {
        continue;
      }
      for (const auto &[j, s] : coeffs) {
        out.add_term(j, ab, s);
      }
    }
  }
  return out;
}

namespace {

std::string elem_name(const CurAlgebra &c, std::size_t idx, int depth) {
  std::size_t i = idx / static_cast<std::size_t>(depth + 1);
  int k = static_cast<int>(idx % static_cast<std::size_t>(depth + 1));
  return k == 0 ? c.base().label(i) : "d^" + std::to_string(k) + " " + c.base().label(i);
}

ConfElem elem_at(const CurAlgebra &c, std::size_t idx, int depth) {
  std::size_t i = idx / static_cast<std::size_t>(depth + 1);
  int k = static_cast<int>(idx % static_cast<std::size_t>(depth + 1));
  return ConfElem::term(k, c.base().basis_vector(i));
}

/// Right side of the anticommutativity identity for [a <n> b].
template <class Product>
ConfElem anticomm_rhs(const ConfElem &a, const ConfElem &b, int n, int smax, Product &&prod) {
  ConfElem out(a.dim());
  for (int s = 0; s <= smax; ++s) {
    ConfElem p = prod(b, a, n + s);
    if (p.is_zero()) {
      continue;
    }
    Rat coef = inv_factorial(static_cast<unsigned>(s));
    if ((n + s + 1) % 2 != 0) {
      coef = -coef;
    }
    out += p.shifted(s) * coef;
  }
  return out;
}

/// First (n, m) at which the Jacobi identity fails for the products
/// [left(x) <n> y], or nullopt. Left is the identity for Cur g and T for the
/// Leibniz products.
template <class Left>
std::optional<std::pair<int, int>> jacobi_failure(const CurAlgebra &c, const ConfElem &a, const ConfElem &b,
                                                  const ConfElem &z, int nmax, Left &&left) {
  ConfElem la = left(a);
  ConfElem lb = left(b);
  std::vector<ConfElem> bz;
  std::vector<ConfElem> az;
  std::vector<ConfElem> lab;
  for (int k = 0; k <= nmax; ++k) {
    bz.push_back(n_product(c, lb, z, k));
    az.push_back(n_product(c, la, z, k));
    lab.push_back(left(n_product(c, la, b, k)));
  }
  for (int n = 0; n <= nmax; ++n) {
    for (int m = 0; m <= nmax; ++m) {
      ConfElem defect = n_product(c, la, bz[m], n) - n_product(c, lb, az[n], m);
      for (int s = 0; s <= n; ++s) {
        if (lab[n - s].is_zero()) {
          continue;
        }
        defect -= n_product(c, lab[n - s], z, m + s) * Rat(binomial(static_cast<unsigned>(n), static_cast<unsigned>(s)));
      }
      if (!defect.is_zero()) {
        return std::make_pair(n, m);
      }
    }
  }
  return std::nullopt;
}

std::string vec_str(const Vec &v) { return v.str(); }

nlohmann::json pair_witness(const CurAlgebra &c, std::size_t a, std::size_t b, int n, int depth) {
  return {{"a", elem_name(c, a, depth)}, {"b", elem_name(c, b, depth)}, {"n", n}};
}

} // namespace

Report check_axioms(const CurAlgebra &c, int nmax, Exec exec) {
  if (nmax < 2) {
    throw PreconditionFailure("check_axioms needs nmax >= 2");
  }
  Report rep;
  const std::size_t dim = c.dim();
  auto prod = [&](const ConfElem &x, const ConfElem &y, int n) { return n_product(c, x, y, n); };

  // Locality on generators: all products with n >= 1 vanish.
  {
    struct W {
      std::size_t a, b;
      int n;
    };
    auto w = first_failure<W>(dim * dim, exec, [&](std::size_t idx) -> std::optional<W> {
      ConfElem a = c.generator(idx / dim);
      ConfElem b = c.generator(idx % dim);
      for (int n = 1; n <= nmax; ++n) {
        if (!prod(a, b, n).is_zero()) {
          return W{idx / dim, idx % dim, n};
        }
      }
      return std::nullopt;
    });
    rep.add("locality", !w,
            w ? nlohmann::json{{"a", c.base().label(w->a)}, {"b", c.base().label(w->b)}, {"n", w->n}}
              : nlohmann::json(),
            "N(a,b) <= 1 on generators");
  }

  // Pairs d^k e_i with k <= 1.
  const int depth = 1;
  const std::size_t count = dim * static_cast<std::size_t>(depth + 1);
  struct PairW {
    std::string check;
    std::size_t a, b;
    int n;
  };
  auto pw = first_failure<PairW>(count * count, exec, [&](std::size_t idx) -> std::optional<PairW> {
    std::size_t ia = idx / count;
    std::size_t ib = idx % count;
    ConfElem a = elem_at(c, ia, depth);
    ConfElem b = elem_at(c, ib, depth);
    for (int n = 0; n <= nmax; ++n) {
      ConfElem ab = prod(a, b, n);
      Rat rn(n);
      if (prod(a.d(), b, n) != (n > 0 ? prod(a, b, n - 1) * (-rn) : ConfElem(dim))) {
        return PairW{"derivation_left", ia, ib, n};
      }
      ConfElem c3 = ab.d();
      if (n > 0) {
        c3 += prod(a, b, n - 1) * rn;
      }
      if (prod(a, b.d(), n) != c3) {
        return PairW{"derivation_right", ia, ib, n};
      }
      // products of d^k a and d^l b vanish beyond index k + l
      if (ab != anticomm_rhs(a, b, n, 2 * depth + 1, prod)) {
        return PairW{"anticommutativity", ia, ib, n};
      }
    }
    return std::nullopt;
  });
  for (const char *name : {"derivation_left", "derivation_right", "anticommutativity"}) {
    bool failed = pw && pw->check == name;
    bool skipped = pw && !failed;
    if (skipped) {
      rep.add(Check{name, Status::skipped, nullptr, "earlier pair check failed"});
    } else {
      rep.add(name, !failed, failed ? pair_witness(c, pw->a, pw->b, pw->n, depth) : nlohmann::json());
    }
  }

  // Jacobi on generator triples.
  {
    struct W {
      std::size_t a, b, c;
      int n, m;
    };
    auto w = first_failure<W>(dim * dim * dim, exec, [&](std::size_t idx) -> std::optional<W> {
      std::size_t i = idx / (dim * dim);
      std::size_t j = (idx / dim) % dim;
      std::size_t k = idx % dim;
      auto f = jacobi_failure(c, c.generator(i), c.generator(j), c.generator(k), nmax,
                              [](const ConfElem &x) { return x; });
      if (f) {
        return W{i, j, k, f->first, f->second};
      }
      return std::nullopt;
    });
    rep.add("jacobi", !w,
            w ? nlohmann::json{{"a", c.base().label(w->a)},
                               {"b", c.base().label(w->b)},
                               {"c", c.base().label(w->c)},
                               {"n", w->n},
                               {"m", w->m}}
              : nlohmann::json());
  }
  return rep;
}

ConfElem apply_conf_operator(const ConfOperator &t, const ConfElem &x) {
  const ConfAveOp &f = t.family();
  if (x.dim() != f.dim()) {
    throw DimensionMismatch("conformal operator dimension");
  }
  ConfElem out(x.dim());
  for (const auto &[k, a] : x.terms()) {
    for (std::size_t n = 0; n <= f.degree(); ++n) {
      Vec img = f[n] * a;
      Rat s = inv_factorial(static_cast<unsigned>(n));
      if (n % 2 == 1) {
        s = -s;
      }
      out.add_term(k + static_cast<int>(n), img, s);
    }
  }
  return out;
}

Report check_conformal_averaging_on_cur(const CurAlgebra &c, const ConfOperator &t, int nmax, Exec exec) {
  Report rep;
  const std::size_t dim = c.dim();
  if (t.family().dim() != dim) {
    throw DimensionMismatch("conformal operator dimension");
  }
  struct W {
    std::size_t x, y;
    int n;
  };
  auto w = first_failure<W>(dim * dim, exec, [&](std::size_t idx) -> std::optional<W> {
    ConfElem x = c.generator(idx / dim);
    ConfElem y = c.generator(idx % dim);
    ConfElem tx = apply_conf_operator(t, x);
    ConfElem ty = apply_conf_operator(t, y);
    for (int n = 0; n <= nmax; ++n) {
      if (apply_conf_operator(t, n_product(c, tx, y, n)) != n_product(c, tx, ty, n)) {
        return W{idx / dim, idx % dim, n};
      }
    }
    return std::nullopt;
  });
  rep.add("conformal_averaging_on_cur", !w,
          w ? nlohmann::json{{"x", c.base().label(w->x)}, {"y", c.base().label(w->y)}, {"n", w->n}}
            : nlohmann::json());
  return rep;
}

ConfElem leibniz_product(const CurAlgebra &c, const ConfOperator &t, const ConfElem &x, const ConfElem &y, int n) {
  return n_product(c, apply_conf_operator(t, x), y, n);
}

Report leibniz_products_and_check(const CurAlgebra &c, const ConfOperator &t, int nmax, Exec exec) {
  Report pre = check_conformal_averaging_on_cur(c, t, nmax, exec);
  if (!pre.ok()) {
    throw PreconditionFailure("operator is not conformal averaging on Cur g");
  }
  Report rep;
  rep.merge(pre, "precondition.");
  const std::size_t dim = c.dim();
  auto prod = [&](const ConfElem &x, const ConfElem &y, int n) { return leibniz_product(c, t, x, y, n); };

  struct W {
    std::size_t a, b, c;
    int n, m;
  };
  auto w = first_failure<W>(dim * dim * dim, exec, [&](std::size_t idx) -> std::optional<W> {
    std::size_t i = idx / (dim * dim);
    std::size_t j = (idx / dim) % dim;
    std::size_t k = idx % dim;
    auto f = jacobi_failure(c, c.generator(i), c.generator(j), c.generator(k), nmax,
                            [&](const ConfElem &x) { return apply_conf_operator(t, x); });
    if (f) {
      return W{i, j, k, f->first, f->second};
    }
    return std::nullopt;
  });
  rep.add("leibniz_jacobi", !w,
          w ? nlohmann::json{{"a", c.base().label(w->a)},
                             {"b", c.base().label(w->b)},
                             {"c", c.base().label(w->c)},
                             {"n", w->n},
                             {"m", w->m}}
            : nlohmann::json());

  // T(a) has d-degree up to N, so products with a generator vanish beyond N.
  const int smax = static_cast<int>(t.family().degree()) + 1;
  struct PW {
    std::size_t a, b;
    int n;
  };
  auto aw = first_failure<PW>(dim * dim, exec, [&](std::size_t idx) -> std::optional<PW> {
    ConfElem a = c.generator(idx / dim);
    ConfElem b = c.generator(idx % dim);
    for (int n = 0; n <= nmax; ++n) {
      if (prod(a, b, n) != anticomm_rhs(a, b, n, smax, prod)) {
        return PW{idx / dim, idx % dim, n};
      }
    }
    return std::nullopt;
  });
  if (aw) {
    ConfElem a = c.generator(aw->a);
    ConfElem b = c.generator(aw->b);
    rep.info("leibniz_anticommutativity", "anticommutativity fails for the Leibniz products",
             {{"a", c.base().label(aw->a)},
              {"b", c.base().label(aw->b)},
              {"n", aw->n},
              {"lhs", prod(a, b, aw->n).str()},
              {"rhs", anticomm_rhs(a, b, aw->n, smax, prod).str()}});
  } else {
    rep.info("leibniz_anticommutativity", "anticommutativity holds for the Leibniz products");
  }
  return rep;
}

KernelQuotient kernel_and_quotient(const CurAlgebra &c, const ConfOperator &t, Exec exec) {
  const ConfAveOp &f = t.family();
  const std::size_t dim = c.dim();
  if (f.dim() != dim) {
    throw DimensionMismatch("conformal operator dimension");
  }
  KernelQuotient kq;
  kq.kernel = common_kernel(f);
  const LieAlgebra &g = c.base();
  for (const auto &k : kq.kernel.basis()) {
    // T(d^j (x) k) = d^j T(k) = 0 exactly when every T_n kills k
    for (std::size_t n = 0; n <= f.degree(); ++n) {
      if (!(f[n] * k).is_zero()) {
        throw Error("kernel vector not annihilated by T_" + std::to_string(n));
      }
    }
  }
  QuotientMap q(kq.kernel);
  kq.complement = q.complement();
  std::vector<std::string> labels;
  for (auto i : kq.complement) {
    labels.push_back(g.label(i));
  }
  LieAlgebra quot(labels);
  const LinOp &t0 = f[0];
  for (std::size_t i = 0; i < q.quotient_dim(); ++i) {
    Vec ti = t0 * q.lift(i);
    for (std::size_t j = 0; j < q.quotient_dim(); ++j) {
      Vec v = q.project(g.bracket(ti, q.lift(j)));
      SparseVec sv;
      for (std::size_t k = 0; k < v.size(); ++k) {
        if (!is_zero(v[k])) {
          sv.emplace_back(k, v[k]);
        }
      }
      quot.set_product(i, j, std::move(sv));
    }
  }
  kq.quotient_validation = validate(quot, exec);
  kq.quotient = std::move(quot);
  return kq;
}

Report check_kernel_ideal(const CurAlgebra &c, const ConfOperator &t, const Subspace &kernel, int nmax,
                          Exec exec) {
  Report rep;
  const std::size_t dim = c.dim();
  const auto &kb = kernel.basis();
  struct W {
    std::size_t k, a;
    int n;
    std::string side;
  };
  auto in_kernel = [&](const ConfElem &e) {
    for (const auto &[deg, v] : e.terms()) {
      if (!kernel.contains(v)) {
        return false;
      }
    }
    return true;
  };
  auto w = first_failure<W>(kb.size() * dim, exec, [&](std::size_t idx) -> std::optional<W> {
    ConfElem k = ConfElem::generator(kb[idx / dim]);
    ConfElem a = c.generator(idx % dim);
    for (int n = 0; n <= nmax; ++n) {
      if (!in_kernel(leibniz_product(c, t, k, a, n))) {
        return W{idx / dim, idx % dim, n, "left"};
      }
      if (!in_kernel(leibniz_product(c, t, a, k, n))) {
        return W{idx / dim, idx % dim, n, "right"};
      }
    }
    return std::nullopt;
  });
  rep.add("kernel_is_ideal", !w,
          w ? nlohmann::json{{"kernel_vector", vec_str(kb[w->k])},
                             {"a", c.base().label(w->a)},
                             {"n", w->n},
                             {"side", w->side}}
            : nlohmann::json());
  return rep;
}

Report split_null_prediction(const LieAlgebra &g, const RootDatum &rd, const ConfAveOp &t, const KernelQuotient &kq) {
  Report rep;
  const LieAlgebra &q = kq.quotient;
  const std::size_t qd = q.dim();
  const Subspace whole = Subspace::whole(qd);
  const Subspace derived = bracket_span(q, whole, whole);
  const Subspace centre = center(q);
  rep.add("quotient_splits", derived.intersect(centre).dim() == 0 && derived.dim() + centre.dim() == qd,
          {{"derived", derived.dim()}, {"center", centre.dim()}, {"quotient", qd}});

  const Subspace image = t_star_image(t);
  const std::vector<std::size_t> delta = roots_in(rd, image);
  const Subspace hperp = hperp_subspace(rd, delta, g.dim());
  rep.add("center_dimension", centre.dim() == hperp.dim(), {{"center", centre.dim()}, {"hperp", hperp.dim()}});

  // phi(x) = T_0(lift x) is well defined since the kernel lies in ker T_0.
  auto lift = [&](const Vec &x) {
    Vec out(g.dim());
    for (std::size_t i = 0; i < qd; ++i) {
      out.axpy(x[i], Vec::unit(g.dim(), kq.complement[i]));
    }
    return out;
  };
  auto phi = [&](const Vec &x) { return t[0] * lift(x); };

  std::optional<std::array<std::size_t, 2>> bad;
  for (std::size_t i = 0; i < qd && !bad; ++i) {
    for (std::size_t j = 0; j < qd; ++j) {
      Vec ei = Vec::unit(qd, i);
      Vec ej = Vec::unit(qd, j);
      if (phi(q.bracket(ei, ej)) != g.bracket(phi(ei), phi(ej))) {
        bad = std::array<std::size_t, 2>{i, j};
        break;
      }
    }
  }
  rep.add("phi_homomorphism", !bad,
          bad ? nlohmann::json{{"a", q.label((*bad)[0])}, {"b", q.label((*bad)[1])}} : nlohmann::json());

  std::vector<Vec> g0_span;
  for (auto a : delta) {
    g0_span.push_back(rd.coroots[a]);
    g0_span.push_back(rd.root_vectors[a]);
  }
  const Subspace g0 = Subspace::span(g0_span, g.dim());
  std::vector<Vec> phi_derived;
  for (const auto &v : derived.basis()) {
    phi_derived.push_back(phi(v));
  }
  const Subspace image_derived = Subspace::span(phi_derived, g.dim());
  rep.add("semisimple_part_is_g0", image_derived == g0 && image_derived.dim() == derived.dim(),
          {{"phi_derived", image_derived.dim()}, {"derived", derived.dim()}, {"g0", g0.dim()}});
  return rep;
}

KernelQuotient kernel_and_quotient_split(const CurAlgebra &c, const RootDatum &rd, const ConfOperator &t,
                                         Exec exec) {
  KernelQuotient kq = kernel_and_quotient(c, t, exec);
  kq.split_null_check = split_null_prediction(c.base(), rd, t.family(), kq).ok();
  return kq;
}

} // namespace cybeforge
