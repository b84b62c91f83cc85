#pragma once

#include <optional>

#include "fleetplan/models.hpp"
#include "fleetplan/solver.hpp"

namespace fleetplan {

struct PlanResult {
  Schedule schedule;
  CostBreakdown cost;
  SolveStatus status = SolveStatus::optimal;
  SolveStats stats;
  double objective = 0.0;
};

// Feasible schedule used to seed the branch-and-bound upper bound: the
// balanced split of the homogeneous DP optimum when every group is identical
// (optimal in that case), the per-slot local optimum otherwise.
std::optional<Schedule> heuristic_schedule(const WorkloadTrace& trace,
                                           const FleetSpec& fleet);

// Solve the provisioning problem for the fleet's model: DP for homogeneous
// fleets, branch-and-bound over the built instance otherwise.
PlanResult solve_model(const WorkloadTrace& trace, const FleetSpec& fleet,
                       const SolveOptions& opts = {});

}  // namespace fleetplan
