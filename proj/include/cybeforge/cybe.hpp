#ifndef CYBEFORGE_CYBE_HPP
#define CYBEFORGE_CYBE_HPP

#include "cybeforge/averaging.hpp"
#include "cybeforge/liealg.hpp"
#include "cybeforge/poleform.hpp"
#include "cybeforge/report.hpp"

#include <array>
#include <map>
#include <optional>

namespace cybeforge {

/// Operator-valued Laurent polynomial P_u = sum_k P_k u^k. Zero coefficients
/// are never stored. The same container holds g (x) g valued series, with
/// entry (a,b) the coefficient of e_a (x) e_b.
class LaurentOp {
public:
  LaurentOp() = default;
  explicit LaurentOp(std::size_t dim) : dim_(dim) {}
  static LaurentOp single(int k, const Matrix &m);

  std::size_t dim() const { return dim_; }
  const std::map<int, Matrix> &coeffs() const { return coeffs_; }
  Matrix coefficient(int k) const;
  void set(int k, const Matrix &m);
  void add(int k, const Matrix &m);
  bool is_zero() const { return coeffs_.empty(); }

  /// Exact value at a nonzero point.
  Matrix eval(const Rat &u) const;

  friend LaurentOp operator+(const LaurentOp &a, const LaurentOp &b);
  friend bool operator==(const LaurentOp &a, const LaurentOp &b) {
    return a.dim_ == b.dim_ && a.coeffs_ == b.coeffs_;
  }

private:
  std::size_t dim_ = 0;
  std::map<int, Matrix> coeffs_;
};

/// phi_{a(x)b}(x) = <a,x> b. Tensors are dim x dim matrices X with X = sum X_ab e_a (x) e_b.
LinOp tensor_to_op(const KillingForm &kf, const Matrix &x);
Matrix op_to_tensor(const KillingForm &kf, const LinOp &p);
LinOp tensor_to_op(const LieAlgebra &g, const Matrix &x);
Matrix op_to_tensor(const LieAlgebra &g, const LinOp &p);
LaurentOp tensor_series_to_op(const KillingForm &kf, const LaurentOp &x);
LaurentOp op_series_to_tensor(const KillingForm &kf, const LaurentOp &p);

/// Coefficientwise Killing adjoint.
LaurentOp laurent_adjoint(const KillingForm &kf, const LaurentOp &p);

struct CybeWitness {
  std::size_t x = 0, y = 0;
  std::size_t coordinate = 0;
  PoleForm value;
};

struct GridWitness {
  std::size_t x = 0, y = 0;
  Rat u, v;
};

struct CybeVerdict {
  bool poleform_ok = true;
  bool grid_ok = true;
  std::optional<CybeWitness> witness;
  std::optional<GridWitness> grid_witness;
  bool ok() const { return poleform_ok && grid_ok; }
  bool paths_agree() const { return poleform_ok == grid_ok; }
};

/// The fixed 25-point grid u, v in {1,2,3,5,7}.
const std::vector<Rat> &cybe_grid();

/// Left side of the operator CYBE on the basis pair (x, y), one PoleForm per
/// coordinate.
std::vector<PoleForm> cybe_operator_lhs(const LieAlgebra &g, const KillingForm &kf, const LaurentOp &p,
                                        std::size_t x, std::size_t y);

CybeVerdict cybe_check_operator(const LieAlgebra &g, const LaurentOp &p, Exec exec = Exec::parallel);
CybeVerdict cybe_check_operator(const LieAlgebra &g, const KillingForm &kf, const LaurentOp &p,
                                Exec exec = Exec::parallel);

/// Sparse element of g (x) g (x) g.
struct TensorElem3 {
  std::size_t dim = 0;
  std::map<std::array<std::size_t, 3>, Rat> coords;
  bool is_zero() const { return coords.empty(); }
};

struct TensorVerdict {
  bool ok = true;
  std::optional<std::array<std::size_t, 3>> coordinate;
  PoleForm value;
};

/// Tensor CYBE for a g (x) g valued series X(u).
TensorVerdict cybe_check_tensor(const LieAlgebra &g, const LaurentOp &x);
/// Left side of the tensor CYBE at a point.
TensorElem3 cybe_tensor_value(const LieAlgebra &g, const LaurentOp &x, const Rat &u, const Rat &v);

/// T_m = P_{-m-1}.
ConfAveOp residue_extract(const LaurentOp &p);

Report theorem1_roundtrip(const LieAlgebra &g, const LaurentOp &p, Exec exec = Exec::parallel);

enum class SymmetryMode { strict, relaxed };

/// P_u = T / u. Throws PreconditionFailure naming the first basis pair that
/// violates the chosen symmetry condition.
LaurentOp solution_from_symmetric_averaging(const LieAlgebra &g, const AveragingOp &t, SymmetryMode mode);

/// P_{-n-1} = T_n / n!. Throws PreconditionFailure unless T is conformal
/// averaging and homogeneous.
LaurentOp solution_from_conformal_averaging(const LieAlgebra &g, const RootDatum &rd, const ConfAveOp &t);

struct RotaBaxterVerdict {
  bool ok = true;
  std::optional<std::array<std::size_t, 2>> witness;
  /// [Rx,Ry] = 2 R([x,Ry]), the identity as displayed with the repeated term.
  bool literal_ok = true;
  std::optional<std::array<std::size_t, 2>> literal_witness;
};

RotaBaxterVerdict rota_baxter_check(const LieAlgebra &g, const LinOp &r, Exec exec = Exec::parallel);

nlohmann::json poleform_json(const PoleForm &p);

} // namespace cybeforge

#endif
