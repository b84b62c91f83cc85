#pragma once

#include <vector>

#include "fleetplan/milp.hpp"

namespace fleetplan {

struct LpResult {
  SolveStatus status = SolveStatus::numerical_error;
  double objective = 0.0;            // canonical, in original variable space
  std::vector<double> values;        // original variable space
  long iterations = 0;
};

// Solve the LP relaxation with the given bound overrides (branch-and-bound
// children tighten bounds without rebuilding the instance). Bounded-variable
// two-phase primal simplex on a dense tableau; Dantzig pricing with a Bland
// fallback after degenerate stalls, deterministic tie-breaking throughout.
LpResult solve_lp_bounded(const MilpInstance& inst,
                          const std::vector<double>& lower,
                          const std::vector<double>& upper,
                          long iteration_limit = 5'000'000);

// LP relaxation of the instance as-is (integrality dropped).
Solution solve_lp(const MilpInstance& inst, const SolveOptions& opts = {});

}  // namespace fleetplan
