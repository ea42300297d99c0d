#ifndef CYBEFORGE_LIEALG_HPP
#define CYBEFORGE_LIEALG_HPP

#include "cybeforge/linalg.hpp"
#include "cybeforge/parallel.hpp"

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cybeforge {

/// Sparse coordinate vector: (basis index, coefficient) with nonzero
/// coefficients, sorted by index.
using SparseVec = std::vector<std::pair<std::size_t, Rat>>;

/// Finite-dimensional algebra with a bilinear product given by structure
/// constants e_i * e_j = sum_k c_ij^k e_k. No identities are assumed.
class BilinearAlgebra {
public:
  BilinearAlgebra() = default;
  explicit BilinearAlgebra(std::vector<std::string> labels);

  std::size_t dim() const { return labels_.size(); }
  const std::vector<std::string> &labels() const { return labels_; }
  const std::string &label(std::size_t i) const { return labels_.at(i); }
  /// Index of a basis label; throws Error if absent.
  std::size_t index_of(const std::string &label) const;

  void set_product(std::size_t i, std::size_t j, SparseVec value);
  const SparseVec &product_basis(std::size_t i, std::size_t j) const { return table_[i * dim() + j]; }
  Rat structure_constant(std::size_t i, std::size_t j, std::size_t k) const;

  Vec product(const Vec &x, const Vec &y) const;
  Vec basis_vector(std::size_t i) const { return Vec::unit(dim(), i); }

  friend bool operator==(const BilinearAlgebra &a, const BilinearAlgebra &b) {
    return a.labels_ == b.labels_ && a.table_ == b.table_;
  }

protected:
  std::vector<std::string> labels_;
  std::vector<SparseVec> table_;
};

/// A Lie algebra by structure constants. Construction does not enforce the
/// axioms; see validate().
class LieAlgebra : public BilinearAlgebra {
public:
  using BilinearAlgebra::BilinearAlgebra;
  LieAlgebra() = default;
  explicit LieAlgebra(BilinearAlgebra base) : BilinearAlgebra(std::move(base)) {}

  Vec bracket(const Vec &x, const Vec &y) const { return product(x, y); }
  Vec bracket_basis(std::size_t i, std::size_t j) const;
  /// ad(x): column j is [x, e_j].
  LinOp ad(const Vec &x) const;
  LinOp ad_basis(std::size_t i) const;
};

/// Antisymmetry and Jacobi on basis pairs and triples.
struct ValidationReport {
  bool antisymmetric = true;
  bool jacobi = true;
  std::optional<std::array<std::size_t, 2>> antisymmetry_witness;
  std::optional<std::array<std::size_t, 3>> jacobi_witness;
  bool ok() const { return antisymmetric && jacobi; }
};

ValidationReport validate(const LieAlgebra &g, Exec exec = Exec::parallel);

/// Root data relative to a fixed Cartan subalgebra h. Roots are stored by
/// their values alpha(h_i) on the Cartan basis.
struct RootDatum {
  std::vector<Vec> cartan;
  std::vector<std::vector<Rat>> roots;
  std::vector<Vec> root_vectors;
  std::vector<Vec> coroots; ///< h_alpha = [x_alpha, x_-alpha]
  std::vector<std::size_t> negative;
  /// sum_index[a][b] = index of root a + root b, or -1.
  std::vector<std::vector<long>> sum_index;
  /// pairing[a][b] = alpha_a(h_{alpha_b})
  std::vector<std::vector<Rat>> pairing;

  std::size_t rank() const { return cartan.size(); }
  std::size_t size() const { return roots.size(); }
  std::optional<std::size_t> find_root(const std::vector<Rat> &values) const;
  /// alpha_a evaluated on an element of h given in Cartan coordinates.
  Rat evaluate(std::size_t a, const Vec &cartan_coords) const;

  /// Fills negative, sum_index and pairing from the other fields.
  void finalize(const LieAlgebra &g);
};

struct BuiltAlgebra {
  LieAlgebra algebra;
  RootDatum roots;
};

/// sl_n, 2 <= n <= 6. Basis: H_1..H_{n-1}, then E_ij sorted by root
/// functional, lexicographically descending.
BuiltAlgebra build_sl(int n);
LieAlgebra build_abelian(std::size_t n);
/// The associative algebra End(Q^n) on basis E_ij (index i*n + j).
BilinearAlgebra build_matrix_algebra(std::size_t n);
/// gl_n with the commutator bracket, same basis as build_matrix_algebra.
LieAlgebra build_gl(std::size_t n);

LieAlgebra direct_sum(const LieAlgebra &a, const LieAlgebra &b);
/// Root data of a direct sum; Cartan is the union of both Cartans.
RootDatum direct_sum(const RootDatum &a, const RootDatum &b, const LieAlgebra &sum, std::size_t dim_a,
                     std::size_t dim_b);
BuiltAlgebra direct_sum(const BuiltAlgebra &a, const BuiltAlgebra &b);

/// Killing form with its inverse gram (when non-degenerate) cached.
class KillingForm {
public:
  explicit KillingForm(const LieAlgebra &g);

  const Matrix &gram() const { return gram_; }
  bool nondegenerate() const { return inverse_.has_value(); }
  /// Throws SingularForm when degenerate.
  const Matrix &inverse_gram() const;

  Rat pair(const Vec &x, const Vec &y) const;
  /// P* with <P x, y> = <x, P* y>: gram^-1 P^T gram.
  LinOp adjoint(const LinOp &p) const;

private:
  Matrix gram_;
  std::optional<Matrix> inverse_;
};

Matrix killing(const LieAlgebra &g);
Rat killing_pair(const LieAlgebra &g, const Vec &x, const Vec &y);
LinOp killing_adjoint(const LieAlgebra &g, const LinOp &p);

/// Basis of {T : T[x,y] = [Tx,y] = [x,Ty]}.
std::vector<LinOp> centroid_basis(const BilinearAlgebra &g);

/// Simultaneous eigenspace decomposition of ad(h), h in the given Cartan basis.
RootDatum root_decomposition(const LieAlgebra &g, const std::vector<Vec> &cartan);

struct RootSubsystem {
  std::vector<std::size_t> members;
  std::vector<std::vector<std::size_t>> components;

  bool contains(std::size_t root) const;
  /// Component index of a member root.
  std::size_t component_of(std::size_t root) const;
};

constexpr std::size_t max_enumeration_pairs = 12;

bool is_closed_symmetric(const RootDatum &rd, const std::vector<std::size_t> &members);
/// Irreducible components: alpha ~ beta iff alpha(h_beta) != 0 or alpha +- beta in S.
std::vector<std::vector<std::size_t>> subsystem_components(const RootDatum &rd,
                                                           const std::vector<std::size_t> &members);
/// All closed symmetric subsets, ordered by their sign-pair bit mask.
/// Throws BudgetExceeded when |roots|/2 > max_enumeration_pairs.
std::vector<RootSubsystem> enumerate_closed_symmetric(const RootDatum &rd, Exec exec = Exec::parallel);

// Subspace helpers used by the structure checks.
Subspace bracket_span(const LieAlgebra &g, const Subspace &a, const Subspace &b);
bool is_subalgebra(const LieAlgebra &g, const Subspace &s);
/// {z in s : [z, t] = 0 for all t in of}
Subspace centralizer_in(const LieAlgebra &g, const Subspace &s, const Subspace &of);
Subspace center(const LieAlgebra &g);
/// Structure constants of a subalgebra in the coordinates of s.basis().
LieAlgebra restrict_to(const LieAlgebra &g, const Subspace &s);

} // namespace cybeforge

#endif
