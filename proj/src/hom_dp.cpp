#include <chrono>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "fleetplan/kernels.hpp"
#include "fleetplan/solver.hpp"

namespace fleetplan {

HomDpResult solve_hom_dp(const WorkloadTrace& trace, const FleetSpec& fleet) {
  const auto start = std::chrono::steady_clock::now();
  trace.validate();
  fleet.validate();
  if (fleet.kind != ModelKind::homogeneous)
    throw std::invalid_argument("solve_hom_dp needs a homogeneous fleet");
  const auto& grp = fleet.groups[0];
  const int total = grp.count;
  const int T = trace.slots();
  const double run_cost = grp.costs.run_cost_per_base_slot;
  const double on_cost = grp.costs.switch_on_total();
  const double off_cost = grp.costs.switch_off_total();

  std::vector<int> low(T);
  for (int t = 0; t < T; ++t) {
    low[t] = static_cast<int>(std::ceil(trace.demands[t] / grp.capacity - 1e-9));
    if (low[t] < 0) low[t] = 0;
    if (low[t] > total)
      throw std::invalid_argument("demand exceeds total capacity at slot " +
                                  std::to_string(t + 1));
  }

  HomDpResult res;
  // dp over y in [low[t], total]; parent stores the chosen predecessor
  std::vector<double> prev, cur;
  std::vector<std::vector<int>> parent(T);
  int prev_lo = 0;

  {
    const int lo = low[0];
    cur.resize(total - lo + 1);
    parent[0].assign(total - lo + 1, 0);
    const double width = trace.slot_sizes[0];
    for (int y = lo; y <= total; ++y)
      cur[y - lo] = (run_cost * width + on_cost) * y;  // everything starts off
    res.transitions += total - lo + 1;
    prev = cur;
    prev_lo = lo;
  }

  for (int t = 1; t < T; ++t) {
    const int lo = low[t];
    const double width = trace.slot_sizes[t];
    cur.assign(total - lo + 1, 0.0);
    parent[t].assign(total - lo + 1, 0);
    const std::size_t n = prev.size();
    for (int y = lo; y <= total; ++y) {
      // min over y' of prev[y'] + on*(y-y')^+ + off*(y'-y)^+: a ramp around y
      const auto best =
          kernels::shifted_min(prev.data(), n, static_cast<long>(y) - prev_lo,
                               on_cost, off_cost);
      cur[y - lo] = best.value + run_cost * width * y;
      parent[t][y - lo] = static_cast<int>(best.index) + prev_lo;
    }
    res.transitions += static_cast<long>(n) * (total - lo + 1);
    prev = cur;
    prev_lo = lo;
  }

  const std::size_t best_idx = kernels::argmin_first(prev.data(), prev.size());
  std::vector<int> counts(T);
  counts[T - 1] = static_cast<int>(best_idx) + prev_lo;
  for (int t = T - 1; t > 0; --t)
    counts[t - 1] = parent[t][counts[t] - low[t]];

  res.schedule.kind = ModelKind::homogeneous;
  res.schedule.trace = trace;
  res.schedule.running = {counts};
  res.objective = evaluate_cost(res.schedule, fleet).total;
  res.wall_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - start)
                    .count();
  return res;
}

}  // namespace fleetplan
