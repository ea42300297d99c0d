#ifndef CYBEFORGE_LINALG_HPP
#define CYBEFORGE_LINALG_HPP

#include "cybeforge/rational.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cybeforge {

/// Dense coordinate vector over Rat.
class Vec {
public:
  Vec() = default;
  explicit Vec(std::size_t n) : c_(n) {}
  explicit Vec(std::vector<Rat> c) : c_(std::move(c)) {}

  static Vec unit(std::size_t n, std::size_t i);

  std::size_t size() const { return c_.size(); }
  Rat &operator[](std::size_t i) { return c_[i]; }
  const Rat &operator[](std::size_t i) const { return c_[i]; }
  const std::vector<Rat> &coords() const { return c_; }

  bool is_zero() const;
  /// Index of the first nonzero coordinate, or size() if none.
  std::size_t leading_index() const;

  Vec &operator+=(const Vec &o);
  Vec &operator-=(const Vec &o);
  Vec &operator*=(const Rat &s);
  /// this += s * o
  void axpy(const Rat &s, const Vec &o);
  Vec operator-() const;

  friend Vec operator+(Vec a, const Vec &b) { return a += b; }
  friend Vec operator-(Vec a, const Vec &b) { return a -= b; }
  friend Vec operator*(Vec a, const Rat &s) { return a *= s; }
  friend Vec operator*(const Rat &s, Vec a) { return a *= s; }
  friend bool operator==(const Vec &a, const Vec &b) { return a.c_ == b.c_; }

  std::string str() const;

private:
  std::vector<Rat> c_;
};

Rat dot(const Vec &a, const Vec &b);

/// Dense row-major matrix. As a linear operator, column j is the image of
/// basis vector j.
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  static Matrix identity(std::size_t n);
  static Matrix zero(std::size_t n) { return Matrix(n, n); }
  static Matrix from_columns(const std::vector<Vec> &cols, std::size_t rows);
  static Matrix from_rows(const std::vector<Vec> &rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Rat &operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const Rat &operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

  Vec col(std::size_t j) const;
  Vec row(std::size_t i) const;
  void set_col(std::size_t j, const Vec &v);

  Matrix transpose() const;
  Rat trace() const;
  bool is_zero() const;

  Matrix &operator+=(const Matrix &o);
  Matrix &operator-=(const Matrix &o);
  Matrix &operator*=(const Rat &s);
  friend Matrix operator+(Matrix a, const Matrix &b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix &b) { return a -= b; }
  friend Matrix operator*(Matrix a, const Rat &s) { return a *= s; }
  friend Matrix operator*(const Rat &s, Matrix a) { return a *= s; }
  friend Matrix operator*(const Matrix &a, const Matrix &b);
  friend Vec operator*(const Matrix &a, const Vec &v);
  friend bool operator==(const Matrix &a, const Matrix &b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rat> a_;
};

/// Linear operator on an algebra: square matrix acting on coordinate vectors.
using LinOp = Matrix;

struct RowEchelon {
  Matrix reduced;                  ///< reduced row echelon form, zero rows dropped
  std::vector<std::size_t> pivots; ///< pivot column of each row
};

RowEchelon rref(Matrix m);
std::size_t rank(const Matrix &m);
/// Basis of {x : m x = 0}; each vector has a 1 in its free column.
std::vector<Vec> nullspace(const Matrix &m);
/// Throws SingularMatrix.
Matrix inverse(const Matrix &m);
/// Some x with a x = b, or nullopt if the system is inconsistent.
std::optional<Vec> solve(const Matrix &a, const Vec &b);
/// Characteristic polynomial coefficients c_0..c_n of det(x I - m), monic.
std::vector<Rat> charpoly(const Matrix &m);

/// A linear subspace of Q^n stored as a reduced row echelon basis, so two
/// equal subspaces have identical representations.
class Subspace {
public:
  explicit Subspace(std::size_t ambient = 0) : ambient_(ambient) {}
  static Subspace span(const std::vector<Vec> &vectors, std::size_t ambient);
  static Subspace whole(std::size_t ambient);
  static Subspace column_space(const Matrix &m);

  std::size_t ambient() const { return ambient_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<Vec> &basis() const { return basis_; }

  bool contains(const Vec &v) const;
  bool contains(const Subspace &o) const;
  /// v reduced modulo the subspace (zero iff v is contained).
  Vec reduce(const Vec &v) const;
  /// Coordinates of a contained vector in basis(); throws Error otherwise.
  Vec coordinates(const Vec &v) const;

  Subspace operator+(const Subspace &o) const;
  Subspace intersect(const Subspace &o) const;
  friend bool operator==(const Subspace &a, const Subspace &b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

  /// Standard basis vectors chosen greedily in index order that complete
  /// this subspace to the whole space.
  std::vector<std::size_t> standard_complement() const;

private:
  std::size_t ambient_;
  std::vector<Vec> basis_;
  std::vector<std::size_t> pivots_;
};

/// Projection onto a complement of a subspace K spanned by standard basis
/// vectors, expressed in complement coordinates.
class QuotientMap {
public:
  explicit QuotientMap(const Subspace &kernel);

  std::size_t quotient_dim() const { return complement_.size(); }
  const std::vector<std::size_t> &complement() const { return complement_; }
  /// Lift of quotient basis vector i (a standard basis vector).
  Vec lift(std::size_t i) const;
  /// Coordinates of v + K in the complement basis.
  Vec project(const Vec &v) const;

private:
  std::size_t ambient_;
  std::vector<std::size_t> complement_;
  Matrix change_inverse_;
};

/// Incremental sparse elimination for large homogeneous systems.
class SparseEchelon {
public:
  using Row = std::map<std::size_t, Rat>;

  explicit SparseEchelon(std::size_t cols) : cols_(cols) {}

  /// Returns true if the row was independent of the rows already added.
  bool add_row(Row row);
  std::size_t rank() const { return pivot_rows_.size(); }
  std::vector<Vec> nullspace() const;

private:
  std::size_t cols_;
  std::map<std::size_t, Row> pivot_rows_; // keyed by pivot column (= smallest column)
};

} // namespace cybeforge

#endif
