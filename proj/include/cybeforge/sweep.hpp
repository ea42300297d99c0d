#ifndef CYBEFORGE_SWEEP_HPP
#define CYBEFORGE_SWEEP_HPP

#include "cybeforge/averaging.hpp"
#include "cybeforge/cybe.hpp"
#include "cybeforge/liealg.hpp"
#include "cybeforge/report.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cybeforge {

struct SweepOptions {
  int rank_max = 3;             ///< sl_{r+1} for r <= rank_max, plus sl2 (+) sl2 when rank_max >= 2
  std::uint64_t seed = 20240601;
  int trials = 3;               ///< random homogeneous families per subsystem
  std::size_t hperp_degree = 2; ///< maximum degree of the random h_0^perp family
  int axiom_nmax = 3;
  std::optional<std::string> fixture; ///< extra conf-ave-op.v1 family
  Exec exec = Exec::parallel;
};

struct SweepAlgebra {
  std::string name;
  BuiltAlgebra built;
  std::vector<RootSubsystem> subsystems;
};

struct FamilyCase {
  std::string name;
  std::size_t algebra = 0;
  ConfAveOp family;
  std::optional<HomogeneousSpec> spec;
};

struct SweepContext {
  SweepOptions options;
  std::vector<SweepAlgebra> algebras;
  std::vector<FamilyCase> families;
  Report preparation; ///< failures while building families
  std::vector<std::optional<LaurentOp>> solutions;
};

/// Builds the algebras, enumerates their subsystems and generates the seeded
/// families. Throws ParseError for an unreadable fixture.
SweepContext prepare_sweep(const SweepOptions &opts);

constexpr int criterion_count = 10;
std::string criterion_title(int k);
/// Criterion k in 1..10.
Report run_criterion(int k, SweepContext &ctx);
Report run_all(const SweepOptions &opts);

} // namespace cybeforge

#endif
