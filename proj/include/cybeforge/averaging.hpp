#ifndef CYBEFORGE_AVERAGING_HPP
#define CYBEFORGE_AVERAGING_HPP

#include "cybeforge/liealg.hpp"
#include "cybeforge/report.hpp"

#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace cybeforge {

// ---------------------------------------------------------------------------
// Ordinary averaging operators
// ---------------------------------------------------------------------------

/// lie: T([T a, b]) = [T a, T b] only (enough for anticommutative products).
/// associative: T(T(a) b) = T(a) T(b) = T(a T(b)).
enum class AveragingMode { lie, associative };

struct AveragingWitness {
  std::size_t a = 0;
  std::size_t b = 0;
  /// "left" for T(T(a)b) != T(a)T(b), "right" for T(a)T(b) != T(aT(b)).
  std::string side;
};

std::optional<AveragingWitness> averaging_witness(const BilinearAlgebra &g, const LinOp &t, AveragingMode mode,
                                                  Exec exec = Exec::parallel);
inline bool is_averaging(const BilinearAlgebra &g, const LinOp &t, AveragingMode mode, Exec exec = Exec::parallel) {
  return !averaging_witness(g, t, mode, exec);
}

/// A linear operator that has passed is_averaging.
class AveragingOp {
public:
  /// Throws PreconditionFailure carrying the witness when t is not averaging.
  static AveragingOp verify(const BilinearAlgebra &g, LinOp t, AveragingMode mode = AveragingMode::lie);

  const LinOp &op() const { return op_; }
  bool lie_verified() const { return lie_; }
  bool associative_verified() const { return associative_; }

private:
  AveragingOp(LinOp op, bool lie, bool assoc) : op_(std::move(op)), lie_(lie), associative_(assoc) {}
  LinOp op_;
  bool lie_ = false;
  bool associative_ = false;
};

/// psi -> sum_g g psi g^-1 on End(Q^n), basis E_ij at index i*n + j.
/// Throws PreconditionFailure if the matrices do not form a group.
LinOp group_averaging(const std::vector<Matrix> &group);

/// T1 T2 for commuting averaging operators; rejects non-commuting pairs.
AveragingOp compose_commuting(const BilinearAlgebra &g, const AveragingOp &t1, const AveragingOp &t2);

/// {a,b} = [T(a), b]: left Leibniz identity, kernel ideal, and the Lie
/// quotient by the kernel.
struct LeibnizResult {
  bool leibniz_identity = true;
  std::optional<std::array<std::size_t, 3>> leibniz_witness;
  bool kernel_is_ideal = true;
  Subspace kernel;
  LieAlgebra quotient;
  ValidationReport quotient_validation;
  bool ok() const { return leibniz_identity && kernel_is_ideal && quotient_validation.ok(); }
};

LeibnizResult leibniz_check(const LieAlgebra &g, const LinOp &t, Exec exec = Exec::parallel);

// ---------------------------------------------------------------------------
// Conformal averaging operators
// ---------------------------------------------------------------------------

/// T_lambda = sum_n lambda^n / n! T_n, stored as (T_0, ..., T_N).
class ConfAveOp {
public:
  static constexpr std::size_t max_degree = 8;

  ConfAveOp() = default;
  /// Trailing zero operators are dropped (keeping at least T_0).
  explicit ConfAveOp(std::vector<LinOp> family);

  std::size_t degree() const { return family_.size() - 1; }
  std::size_t dim() const { return family_.front().rows(); }
  const std::vector<LinOp> &family() const { return family_; }
  const LinOp &operator[](std::size_t n) const { return family_[n]; }
  /// T_n, or zero for n > degree().
  LinOp coefficient(std::size_t n) const;

  /// T_alpha for a scalar alpha.
  LinOp evaluate(const Rat &alpha) const;

  friend bool operator==(const ConfAveOp &a, const ConfAveOp &b) { return a.family_ == b.family_; }

private:
  std::vector<LinOp> family_;
};

struct ConfAveWitness {
  std::size_t x = 0;
  std::size_t y = 0;
  /// coefficient of lambda^(n) mu^(m); -1 for the polynomial path
  int n = -1;
  int m = -1;
  /// first nonzero coordinate (polynomial path)
  std::optional<std::size_t> coordinate;
};

struct ConfAveVerdict {
  bool ok = true;
  bool paths_agree = true;
  std::optional<ConfAveWitness> witness;         ///< coefficient path
  std::optional<ConfAveWitness> bipoly_witness;  ///< polynomial path
};

/// [T_n x, T_m y] = sum_t C(n,t) T_{m+t}([T_{n-t} x, y]) for 0 <= n <= 2N,
/// 0 <= m <= N over all basis pairs.
std::optional<ConfAveWitness> conformal_coefficient_witness(const LieAlgebra &g, const ConfAveOp &t,
                                                            Exec exec = Exec::parallel);
/// Expands T_{l+m}([T_l x, y]) - [T_l x, T_m y] in Q[lambda, mu] per pair.
std::optional<ConfAveWitness> conformal_bipoly_witness(const LieAlgebra &g, const ConfAveOp &t,
                                                       Exec exec = Exec::parallel);
/// Runs both paths.
ConfAveVerdict is_conformal_averaging(const LieAlgebra &g, const ConfAveOp &t, Exec exec = Exec::parallel);
/// Re-evaluates one coefficient identity.
bool conformal_identity_holds_at(const LieAlgebra &g, const ConfAveOp &t, std::size_t x, std::size_t y, int n,
                                 int m);

ConfAveOp conjugate_family(const KillingForm &kf, const ConfAveOp &t);
ConfAveOp conjugate_family(const LieAlgebra &g, const ConfAveOp &t);

/// span of all T_n(b), b in B.
Subspace t_star_of(const ConfAveOp &t, const Subspace &b);
Subspace t_star_image(const ConfAveOp &t);
/// Intersection of the kernels of all T_n.
Subspace common_kernel(const ConfAveOp &t);
/// T_(n)(g) = im T_n + ... + im T_N (zero for n > N).
Subspace filtration_term(const ConfAveOp &t, std::size_t n);
/// Cartan subalgebra of rd contained in T_*(g).
bool is_homogeneous(const ConfAveOp &t, const RootDatum &rd);

// ---------------------------------------------------------------------------
// Homogeneous operators
// ---------------------------------------------------------------------------

struct HomogeneousSpec {
  RootSubsystem subsystem;
  std::map<std::size_t, Rat> xi; ///< component index -> nonzero scalar
  /// Operators on g; only their restriction to h_0^perp is used, and it must
  /// map h_0^perp into itself. hperp[n] is the n-th coefficient.
  std::vector<LinOp> hperp;
};

/// h_0 = span of coroots of the members.
Subspace h0_subspace(const RootDatum &rd, const std::vector<std::size_t> &members, std::size_t dim);
/// {h in h : alpha(h) = 0 for all members alpha}.
Subspace hperp_subspace(const RootDatum &rd, const std::vector<std::size_t> &members, std::size_t dim);
/// Roots alpha with x_alpha in s.
std::vector<std::size_t> roots_in(const RootDatum &rd, const Subspace &s);

/// Builds the family; when `verify` is set the result is checked with
/// is_conformal_averaging and a failure throws Error.
ConfAveOp homogeneous_build(const LieAlgebra &g, const RootDatum &rd, const HomogeneousSpec &spec,
                            bool verify = true);

/// Operator acting as `block` (in the coordinates of `basis`) on span(basis)
/// and as zero on the standard complement.
LinOp embed_on_subspace(const Subspace &basis, const Matrix &block);

/// Random nonzero rational with small numerator and denominator.
Rat random_rational(std::mt19937_64 &rng, bool nonzero);

/// Random xi per component and a random h_0^perp family of degree
/// <= max_degree (exactly max_degree when exact_degree is set) whose
/// degree-0 block is invertible.
HomogeneousSpec random_homogeneous_spec(const LieAlgebra &g, const RootDatum &rd, const RootSubsystem &subsystem,
                                        std::mt19937_64 &rng, std::size_t max_degree, bool exact_degree = false);

/// Reductivity, g = T_* + Ker, filtration ideals, quotient module maps and
/// the h_0^perp containments, for a homogeneous conformal averaging operator.
Report verify_structure_theorems(const LieAlgebra &g, const RootDatum &rd, const ConfAveOp &t,
                                 Exec exec = Exec::parallel);

} // namespace cybeforge

#endif
