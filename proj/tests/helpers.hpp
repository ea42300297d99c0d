#ifndef CYBEFORGE_TEST_HELPERS_HPP
#define CYBEFORGE_TEST_HELPERS_HPP

#include "cybeforge/averaging.hpp"
#include "cybeforge/liealg.hpp"
#include "cybeforge/linalg.hpp"

#include <random>

namespace testutil {

using namespace cybeforge;

inline Rat q(long p, long d = 1) {
  Rat r(p, d);
  r.canonicalize();
  return r;
}

inline Vec vec(std::initializer_list<Rat> xs) { return Vec(std::vector<Rat>(xs)); }

inline Matrix mat(std::initializer_list<std::initializer_list<Rat>> rows) {
  std::vector<Vec> rs;
  for (const auto &r : rows) {
    rs.push_back(Vec(std::vector<Rat>(r)));
  }
  return Matrix::from_rows(rs, rs.front().size());
}

inline Matrix random_matrix(std::mt19937_64 &rng, std::size_t r, std::size_t c) {
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) {
      m(i, j) = random_rational(rng, false);
    }
  }
  return m;
}

inline Vec random_vec(std::mt19937_64 &rng, std::size_t n) {
  Vec v(n);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = random_rational(rng, false);
  }
  return v;
}

/// sl2 in the basis (h, e, f) of build_sl(2).
struct Sl2 {
  BuiltAlgebra b = build_sl(2);
  const LieAlgebra &g = b.algebra;
  std::size_t h = g.index_of("H1");
  std::size_t e = g.index_of("E12");
  std::size_t f = g.index_of("E21");
  Vec H = g.basis_vector(h);
  Vec E = g.basis_vector(e);
  Vec F = g.basis_vector(f);

  LinOp cartan_projection() const {
    LinOp p(3, 3);
    p(h, h) = 1;
    return p;
  }
};

/// Matrix realization of the sl_n basis used by build_sl: H_i = E_ii - E_{i+1,i+1}
/// and E_ij by label.
inline Matrix sl_matrix(const std::string &label, int n) {
  Matrix m(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  if (label[0] == 'H') {
    int i = std::stoi(label.substr(1)) - 1;
    m(static_cast<std::size_t>(i), static_cast<std::size_t>(i)) = 1;
    m(static_cast<std::size_t>(i + 1), static_cast<std::size_t>(i + 1)) = -1;
  } else {
    int i = label[1] - '1';
    int j = label[2] - '1';
    m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = 1;
  }
  return m;
}

} // namespace testutil

#endif
