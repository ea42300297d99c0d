#include "cybeforge/linalg.hpp"

#include "cybeforge/errors.hpp"

#include <algorithm>
#include <sstream>

namespace cybeforge {

// ---------------------------------------------------------------------------
// Vec
// ---------------------------------------------------------------------------

Vec Vec::unit(std::size_t n, std::size_t i) {
  Vec v(n);
  v[i] = 1;
  return v;
}

bool Vec::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const Rat &x) { return cybeforge::is_zero(x); });
}

std::size_t Vec::leading_index() const {
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (!cybeforge::is_zero(c_[i])) {
      return i;
    }
  }
  return c_.size();
}

Vec &Vec::operator+=(const Vec &o) {
  if (o.size() != size()) {
    throw DimensionMismatch("vector sizes " + std::to_string(size()) + " and " + std::to_string(o.size()));
  }
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (!cybeforge::is_zero(o.c_[i])) {
      c_[i] += o.c_[i];
    }
  }
  return *this;
}

Vec &Vec::operator-=(const Vec &o) {
  if (o.size() != size()) {
    throw DimensionMismatch("vector sizes " + std::to_string(size()) + " and " + std::to_string(o.size()));
  }
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (!cybeforge::is_zero(o.c_[i])) {
      c_[i] -= o.c_[i];
    }
  }
  return *this;
}

Vec &Vec::operator*=(const Rat &s) {
  for (auto &x : c_) {
    if (!cybeforge::is_zero(x)) {
      x *= s;
    }
  }
  return *this;
}

void Vec::axpy(const Rat &s, const Vec &o) {
  if (o.size() != size()) {
    throw DimensionMismatch("vector sizes " + std::to_string(size()) + " and " + std::to_string(o.size()));
  }
  if (cybeforge::is_zero(s)) {
    return;
  }
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (!cybeforge::is_zero(o.c_[i])) {
      c_[i] += s * o.c_[i];
    }
  }
}

Vec Vec::operator-() const {
  Vec out = *this;
  for (auto &x : out.c_) {
    x = -x;
  }
  return out;
}

std::string Vec::str() const {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < c_.size(); ++i) {
    os << (i ? ", " : "") << c_[i].get_str();
  }
  os << ")";
  return os.str();
}

Rat dot(const Vec &a, const Vec &b) {
  if (a.size() != b.size()) {
    throw DimensionMismatch("dot of sizes " + std::to_string(a.size()) + " and " + std::to_string(b.size()));
  }
  Rat acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!is_zero(a[i]) && !is_zero(b[i])) {
      acc += a[i] * b[i];
    }
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Matrix
// ---------------------------------------------------------------------------

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = 1;
  }
  return m;
}

Matrix Matrix::from_columns(const std::vector<Vec> &cols, std::size_t rows) {
  Matrix m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    m.set_col(j, cols[j]);
  }
  return m;
}

Matrix Matrix::from_rows(const std::vector<Vec> &rows, std::size_t cols) {
  Matrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) {
      throw DimensionMismatch("row length mismatch");
    }
    for (std::size_t j = 0; j < cols; ++j) {
      m(i, j) = rows[i][j];
    }
  }
  return m;
}

Vec Matrix::col(std::size_t j) const {
  Vec v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    v[i] = (*this)(i, j);
  }
  return v;
}

Vec Matrix::row(std::size_t i) const {
  Vec v(cols_);
  for (std::size_t j = 0; j < cols_; ++j) {
    v[j] = (*this)(i, j);
  }
  return v;
}

void Matrix::set_col(std::size_t j, const Vec &v) {
  if (v.size() != rows_) {
    throw DimensionMismatch("column length " + std::to_string(v.size()) + " for " + std::to_string(rows_) + " rows");
  }
  for (std::size_t i = 0; i < rows_; ++i) {
    (*this)(i, j) = v[i];
  }
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      t(j, i) = (*this)(i, j);
    }
  }
  return t;
}

Rat Matrix::trace() const {
  Rat t = 0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) {
    t += (*this)(i, i);
  }
  return t;
}

bool Matrix::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](const Rat &x) { return cybeforge::is_zero(x); });
}

Matrix &Matrix::operator+=(const Matrix &o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) {
    throw DimensionMismatch("matrix shapes differ");
  }
  for (std::size_t i = 0; i < a_.size(); ++i) {
    a_[i] += o.a_[i];
  }
  return *this;
}

Matrix &Matrix::operator-=(const Matrix &o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) {
    throw DimensionMismatch("matrix shapes differ");
  }
  for (std::size_t i = 0; i < a_.size(); ++i) {
    a_[i] -= o.a_[i];
  }
  return *this;
}

Matrix &Matrix::operator*=(const Rat &s) {
  for (auto &x : a_) {
    x *= s;
  }
  return *this;
}

Matrix operator*(const Matrix &a, const Matrix &b) {
  if (a.cols_ != b.rows_) {
    throw DimensionMismatch("matrix product shapes");
  }
  Matrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Rat &aik = a(i, k);
      if (is_zero(aik)) {
        continue;
      }
      for (std::size_t j = 0; j < b.cols_; ++j) {
        const Rat &bkj = b(k, j);
        if (!is_zero(bkj)) {
          c(i, j) += aik * bkj;
        }
      }
    }
  }
  return c;
}

Vec operator*(const Matrix &a, const Vec &v) {
  if (a.cols_ != v.size()) {
    throw DimensionMismatch("matrix-vector shapes: " + std::to_string(a.cols_) + " vs " + std::to_string(v.size()));
  }
  Vec out(a.rows_);
  for (std::size_t k = 0; k < a.cols_; ++k) {
    if (is_zero(v[k])) {
      continue;
    }
    for (std::size_t i = 0; i < a.rows_; ++i) {
      const Rat &aik = a(i, k);
      if (!is_zero(aik)) {
        out[i] += aik * v[k];
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Elimination
// ---------------------------------------------------------------------------

RowEchelon rref(Matrix m) {
  RowEchelon out;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && is_zero(m(p, c))) {
      ++p;
    }
    if (p == m.rows()) {
      continue;
    }
    if (p != r) {
      for (std::size_t j = 0; j < m.cols(); ++j) {
        std::swap(m(p, j), m(r, j));
      }
    }
    Rat inv = 1 / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) {
      m(r, j) *= inv;
    }
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || is_zero(m(i, c))) {
        continue;
      }
      Rat f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) {
        if (!is_zero(m(r, j))) {
          m(i, j) -= f * m(r, j);
        }
      }
    }
    out.pivots.push_back(c);
    ++r;
  }
  Matrix reduced(r, m.cols());
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      reduced(i, j) = m(i, j);
    }
  }
  out.reduced = std::move(reduced);
  return out;
}

std::size_t rank(const Matrix &m) { return rref(m).pivots.size(); }

std::vector<Vec> nullspace(const Matrix &m) {
  auto e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) {
    is_pivot[p] = true;
  }
  std::vector<Vec> out;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) {
      continue;
    }
    Vec v(m.cols());
    v[f] = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) {
      v[e.pivots[r]] = -e.reduced(r, f);
    }
    out.push_back(std::move(v));
  }
  return out;
}

Matrix inverse(const Matrix &m) {
  if (!m.is_square()) {
    throw DimensionMismatch("inverse of a non-square matrix");
  }
  std::size_t n = m.rows();
  Matrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      aug(i, j) = m(i, j);
    }
    aug(i, n + i) = 1;
  }
  auto e = rref(std::move(aug));
  if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) {
    throw SingularMatrix("matrix is singular");
  }
  Matrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      inv(i, j) = e.reduced(i, n + j);
    }
  }
  return inv;
}

std::optional<Vec> solve(const Matrix &a, const Vec &b) {
  if (b.size() != a.rows()) {
    throw DimensionMismatch("solve: right-hand side length");
  }
  Matrix aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      aug(i, j) = a(i, j);
    }
    aug(i, a.cols()) = b[i];
  }
  auto e = rref(std::move(aug));
  Vec x(a.cols());
  for (std::size_t r = 0; r < e.pivots.size(); ++r) {
    if (e.pivots[r] == a.cols()) {
      return std::nullopt;
    }
    x[e.pivots[r]] = e.reduced(r, a.cols());
  }
  return x;
}

// Faddeev-LeVerrier.
std::vector<Rat> charpoly(const Matrix &m) {
  if (!m.is_square()) {
    throw DimensionMismatch("charpoly of a non-square matrix");
  }
  std::size_t n = m.rows();
  std::vector<Rat> c(n + 1);
  c[n] = 1;
  Matrix mk = Matrix::zero(n);
  for (std::size_t k = 1; k <= n; ++k) {
    mk = m * mk;
    for (std::size_t i = 0; i < n; ++i) {
      mk(i, i) += c[n - k + 1];
    }
    c[n - k] = -(m * mk).trace() / static_cast<unsigned long>(k);
  }
  return c;
}

// ---------------------------------------------------------------------------
// Subspace
// ---------------------------------------------------------------------------

Subspace Subspace::span(const std::vector<Vec> &vectors, std::size_t ambient) {
  Subspace s(ambient);
  if (vectors.empty()) {
    return s;
  }
  auto e = rref(Matrix::from_rows(vectors, ambient));
  for (std::size_t i = 0; i < e.pivots.size(); ++i) {
    s.basis_.push_back(e.reduced.row(i));
  }
  s.pivots_ = e.pivots;
  return s;
}

Subspace Subspace::whole(std::size_t ambient) {
  std::vector<Vec> units;
  for (std::size_t i = 0; i < ambient; ++i) {
    units.push_back(Vec::unit(ambient, i));
  }
  return span(units, ambient);
}

Subspace Subspace::column_space(const Matrix &m) {
  std::vector<Vec> cols;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    cols.push_back(m.col(j));
  }
  return span(cols, m.rows());
}

Vec Subspace::reduce(const Vec &v) const {
  if (v.size() != ambient_) {
    throw DimensionMismatch("vector of size " + std::to_string(v.size()) + " in ambient " + std::to_string(ambient_));
  }
  Vec r = v;
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    Rat f = r[pivots_[i]];
    if (!is_zero(f)) {
      r.axpy(-f, basis_[i]);
    }
  }
  return r;
}

bool Subspace::contains(const Vec &v) const { return reduce(v).is_zero(); }

// The basis is in reduced echelon form, so the coordinate along basis vector
// i is the entry in its pivot column.
Vec Subspace::coordinates(const Vec &v) const {
  if (!contains(v)) {
    throw Error("vector not in subspace");
  }
  Vec c(basis_.size());
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    c[i] = v[pivots_[i]];
  }
  return c;
}

bool Subspace::contains(const Subspace &o) const {
  return std::all_of(o.basis_.begin(), o.basis_.end(), [this](const Vec &v) { return contains(v); });
}

Subspace Subspace::operator+(const Subspace &o) const {
  if (o.ambient_ != ambient_) {
    throw DimensionMismatch("subspaces of different ambient spaces");
  }
  std::vector<Vec> all = basis_;
  all.insert(all.end(), o.basis_.begin(), o.basis_.end());
  return span(all, ambient_);
}

// x in A ∩ B  iff  x = sum a_i A_i = sum b_j B_j; solve [A^T | -B^T] (a,b) = 0.
Subspace Subspace::intersect(const Subspace &o) const {
  if (o.ambient_ != ambient_) {
    throw DimensionMismatch("subspaces of different ambient spaces");
  }
  if (dim() == 0 || o.dim() == 0) {
    return Subspace(ambient_);
  }
  Matrix sys(ambient_, dim() + o.dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    for (std::size_t r = 0; r < ambient_; ++r) {
      sys(r, i) = basis_[i][r];
    }
  }
  for (std::size_t j = 0; j < o.dim(); ++j) {
    for (std::size_t r = 0; r < ambient_; ++r) {
      sys(r, dim() + j) = -o.basis_[j][r];
    }
  }
  std::vector<Vec> vecs;
  for (const auto &sol : nullspace(sys)) {
    Vec x(ambient_);
    for (std::size_t i = 0; i < dim(); ++i) {
      x.axpy(sol[i], basis_[i]);
    }
    vecs.push_back(std::move(x));
  }
  return span(vecs, ambient_);
}

std::vector<std::size_t> Subspace::standard_complement() const {
  std::vector<std::size_t> chosen;
  Subspace acc = *this;
  for (std::size_t i = 0; i < ambient_ && acc.dim() < ambient_; ++i) {
    Vec e = Vec::unit(ambient_, i);
    if (!acc.contains(e)) {
      chosen.push_back(i);
      acc = acc + span({e}, ambient_);
    }
  }
  return chosen;
}

// ---------------------------------------------------------------------------
// QuotientMap
// ---------------------------------------------------------------------------

QuotientMap::QuotientMap(const Subspace &kernel)
    : ambient_(kernel.ambient()), complement_(kernel.standard_complement()) {
  std::vector<Vec> cols;
  for (auto i : complement_) {
    cols.push_back(Vec::unit(ambient_, i));
  }
  for (const auto &k : kernel.basis()) {
    cols.push_back(k);
  }
  change_inverse_ = inverse(Matrix::from_columns(cols, ambient_));
}

Vec QuotientMap::lift(std::size_t i) const { return Vec::unit(ambient_, complement_.at(i)); }

Vec QuotientMap::project(const Vec &v) const {
  Vec full = change_inverse_ * v;
  Vec out(complement_.size());
  for (std::size_t i = 0; i < complement_.size(); ++i) {
    out[i] = full[i];
  }
  return out;
}

// ---------------------------------------------------------------------------
// SparseEchelon
// ---------------------------------------------------------------------------

bool SparseEchelon::add_row(Row row) {
  for (auto it = row.begin(); it != row.end();) {
    if (is_zero(it->second)) {
      it = row.erase(it);
    } else {
      ++it;
    }
  }
  auto it = row.begin();
  while (it != row.end()) {
    auto p = pivot_rows_.find(it->first);
    if (p == pivot_rows_.end()) {
      ++it;
      continue;
    }
    std::size_t col = it->first;
    Rat f = it->second; // pivot rows are normalized to leading 1
    for (const auto &[c, val] : p->second) {
      auto [slot, inserted] = row.try_emplace(c, -f * val);
      if (!inserted) {
        slot->second -= f * val;
        if (is_zero(slot->second)) {
          row.erase(slot);
        }
      }
    }
    it = row.upper_bound(col);
  }
  if (row.empty()) {
    return false;
  }
  Rat inv = 1 / row.begin()->second;
  for (auto &[c, val] : row) {
    val *= inv;
  }
  std::size_t pivot = row.begin()->first;
  pivot_rows_.emplace(pivot, std::move(row));
  return true;
}

std::vector<Vec> SparseEchelon::nullspace() const {
  std::vector<Vec> out;
  for (std::size_t f = 0; f < cols_; ++f) {
    if (pivot_rows_.count(f)) {
      continue;
    }
    Vec x(cols_);
    x[f] = 1;
    for (auto it = pivot_rows_.rbegin(); it != pivot_rows_.rend(); ++it) {
      Rat acc = 0;
      for (const auto &[c, val] : it->second) {
        if (c != it->first && !is_zero(x[c])) {
          acc += val * x[c];
        }
      }
      x[it->first] = -acc;
    }
    out.push_back(std::move(x));
  }
  return out;
}

} // namespace cybeforge
