#pragma once

#include "fleetplan/milp.hpp"
#include "fleetplan/models.hpp"

namespace fleetplan {

// Proven-optimal integer solve: best-first branch-and-bound on the
// most-fractional variable over the self-contained simplex. Deterministic for
// fixed options. Presolve is limited to bound tightening (singleton rows and
// integer-row activity rounding).
Solution solve_milp(const MilpInstance& inst, const SolveOptions& opts = {});

// Exhaustive pruned enumeration over the integer boxes, in variable order.
// Independent oracle for the simplex/branch-and-bound path. The search-space
// guard aborts after 10^7 explored assignments.
Solution brute_force(const MilpInstance& inst,
                     long assignment_guard = 10'000'000);

struct HomDpResult {
  Schedule schedule;
  double objective = 0.0;       // equals evaluate_cost(schedule, fleet).total
  long transitions = 0;         // relaxations performed (complexity probe)
  double wall_ms = 0.0;
};

// Exact optimum of the homogeneous model by dynamic programming over the
// running count: states ceil(d_t/v)..I per slot, transition cost
// c^p*size*y + c^{s+}*(y-y')^+ + c^{s-}*(y'-y)^+. Ties prefer fewer running
// servers, then fewer switches.
HomDpResult solve_hom_dp(const WorkloadTrace& trace, const FleetSpec& fleet);

}  // namespace fleetplan
