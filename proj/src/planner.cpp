#include "fleetplan/planner.hpp"

#include <chrono>
#include <stdexcept>

namespace fleetplan {

namespace {

// Split total counts across identical groups as evenly as integers allow,
// filling lower group indices first. Per group the share is monotone in the
// total, so summed switch events equal the merged schedule's events.
Schedule split_evenly(const Schedule& merged, const FleetSpec& fleet) {
  Schedule out;
  out.kind = fleet.kind;
  out.trace = merged.trace;
  const int G = fleet.group_count();
  out.running.assign(G, std::vector<int>(merged.slots(), 0));
  for (int t = 0; t < merged.slots(); ++t) {
    const int total = merged.running[0][t];
    const int share = total / G;
    const int extra = total % G;
    for (int g = 0; g < G; ++g)
      out.running[g][t] = share + (g < extra ? 1 : 0);
  }
  return out;
}

bool split_fits(const Schedule& split, const FleetSpec& fleet) {
  for (int g = 0; g < fleet.group_count(); ++g)
    for (int v : split.running[g])
      if (v > fleet.groups[g].count) return false;
  return true;
}

}  // namespace

std::optional<Schedule> heuristic_schedule(const WorkloadTrace& trace,
                                           const FleetSpec& fleet) {
  if (fleet.kind == ModelKind::homogeneous)
    return solve_hom_dp(trace, fleet).schedule;
  if (fleet.groups_identical()) {
    const FleetSpec merged = FleetSpec::homogeneous(
        fleet.groups[0].capacity, fleet.total_count(), fleet.groups[0].costs);
    const Schedule split =
        split_evenly(solve_hom_dp(trace, merged).schedule, fleet);
    if (split_fits(split, fleet)) return split;
  }
  try {
    return local_optimum(trace, fleet);
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

PlanResult solve_model(const WorkloadTrace& trace, const FleetSpec& fleet,
                       const SolveOptions& opts) {
  PlanResult res;
  if (fleet.kind == ModelKind::homogeneous) {
    const auto dp = solve_hom_dp(trace, fleet);
    res.schedule = dp.schedule;
    res.objective = dp.objective;
    res.status = SolveStatus::optimal;
    res.stats.wall_ms = dp.wall_ms;
    res.cost = evaluate_cost(res.schedule, fleet);
    return res;
  }

  const auto start = std::chrono::steady_clock::now();
  BuiltModel model = build_model(trace, fleet);
  SolveOptions options = opts;
  if (!options.incumbent_hint) {
    if (const auto hint = heuristic_schedule(trace, fleet))
      options.incumbent_hint = schedule_to_values(model, *hint);
  }
  const Solution sol = solve_milp(model.milp, options);
  res.status = sol.status;
  res.stats = sol.stats;
  res.stats.wall_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  if (sol.status != SolveStatus::optimal &&
      !(sol.status == SolveStatus::limit_reached && !sol.values.empty())) {
    res.objective = sol.objective;
    return res;
  }
  res.schedule = decode_schedule(model, sol);
  res.cost = evaluate_cost(res.schedule, fleet);
  res.objective = sol.objective;
  return res;
}

}  // namespace fleetplan
