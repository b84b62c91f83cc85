#include <chrono>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "fleetplan/solver.hpp"

namespace fleetplan {

namespace {

struct RowState {
  double activity = 0.0;  // over assigned variables
  double min_rest = 0.0;  // lowest possible contribution of the unassigned
  double max_rest = 0.0;  // highest possible contribution of the unassigned
};

bool can_still_satisfy(const Constraint& c, const RowState& s, double tol) {
  switch (c.relation) {
    case Relation::less_equal:
      return s.activity + s.min_rest <= c.rhs + tol;
    case Relation::greater_equal:
      return s.activity + s.max_rest >= c.rhs - tol;
    case Relation::equal:
      return s.activity + s.min_rest <= c.rhs + tol &&
             s.activity + s.max_rest >= c.rhs - tol;
  }
  return false;
}

}  // namespace

Solution brute_force(const MilpInstance& inst, long assignment_guard) {
  const auto start = std::chrono::steady_clock::now();
  inst.validate();
  const int n = static_cast<int>(inst.variables.size());
  const int m = static_cast<int>(inst.constraints.size());

  std::vector<long> lo(n), hi(n);
  for (int j = 0; j < n; ++j) {
    const auto& v = inst.variables[j];
    if (!v.is_integer)
      throw std::invalid_argument(
          "brute_force requires integer variables: " + v.name);
    if (!std::isfinite(v.upper))
      throw std::invalid_argument(
          "brute_force requires finite bounds: " + v.name);
    lo[j] = std::llround(std::ceil(v.lower - 1e-9));
    hi[j] = std::llround(std::floor(v.upper + 1e-9));
  }

  // terms of each constraint grouped by variable for incremental updates
  std::vector<std::vector<std::pair<int, double>>> terms_of_var(n);
  std::vector<RowState> rows(m);
  for (int r = 0; r < m; ++r) {
    for (const auto& [idx, coef] : inst.constraints[r].terms) {
      terms_of_var[idx].emplace_back(r, coef);
      const double a = coef * lo[idx];
      const double b = coef * hi[idx];
      rows[r].min_rest += std::min(a, b);
      rows[r].max_rest += std::max(a, b);
    }
  }

  // remaining-cost lower bound per suffix of the variable order
  std::vector<double> suffix_min_cost(n + 1, 0.0);
  for (int j = n - 1; j >= 0; --j) {
    const double c = inst.variables[j].objective;
    suffix_min_cost[j] =
        suffix_min_cost[j + 1] + std::min(c * lo[j], c * hi[j]);
  }

  std::vector<long> assign(n, 0);
  std::vector<double> best;
  double best_obj = kInfinity;
  long explored = 0;
  bool guard_hit = false;

  auto rec = [&](auto&& self, int j, double cost) -> void {
    if (guard_hit) return;
    if (cost + suffix_min_cost[j] >= best_obj - 1e-12) return;
    if (j == n) {
      for (int r = 0; r < m; ++r) {
        const auto& row = rows[r];
        const auto& c = inst.constraints[r];
        const double tol = 1e-9;
        if (c.relation == Relation::less_equal && row.activity > c.rhs + tol)
          return;
        if (c.relation == Relation::greater_equal &&
            row.activity < c.rhs - tol)
          return;
        if (c.relation == Relation::equal &&
            std::fabs(row.activity - c.rhs) > tol)
          return;
      }
      best.assign(assign.begin(), assign.end());
      best_obj = cost;
      return;
    }
    for (long v = lo[j]; v <= hi[j]; ++v) {
      if (++explored > assignment_guard) {
        guard_hit = true;
        return;
      }
      assign[j] = v;
      bool viable = true;
      for (const auto& [r, coef] : terms_of_var[j]) {
        auto& row = rows[r];
        row.activity += coef * v;
        const double a = coef * lo[j];
        const double b = coef * hi[j];
        row.min_rest -= std::min(a, b);
        row.max_rest -= std::max(a, b);
      }
      for (const auto& [r, coef] : terms_of_var[j])
        if (!can_still_satisfy(inst.constraints[r], rows[r], 1e-9)) {
          viable = false;
          break;
        }
      if (viable)
        self(self, j + 1, cost + inst.variables[j].objective * v);
      for (const auto& [r, coef] : terms_of_var[j]) {
        auto& row = rows[r];
        row.activity -= coef * v;
        const double a = coef * lo[j];
        const double b = coef * hi[j];
        row.min_rest += std::min(a, b);
        row.max_rest += std::max(a, b);
      }
      if (guard_hit) return;
    }
  };

  // infeasible boxes (lo > hi) make the whole instance infeasible
  bool empty_box = false;
  for (int j = 0; j < n; ++j)
    if (lo[j] > hi[j]) empty_box = true;
  if (!empty_box) rec(rec, 0, 0.0);

  if (guard_hit) throw std::runtime_error("search-space guard exceeded");

  Solution sol;
  sol.stats.nodes = explored;
  sol.stats.wall_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  if (best_obj == kInfinity) {
    sol.status = SolveStatus::infeasible;
    return sol;
  }
  sol.status = SolveStatus::optimal;
  sol.values.assign(best.begin(), best.end());
  sol.objective = canonical_objective(inst, sol.values);
  sol.best_bound = sol.objective;
  return sol;
}

}  // namespace fleetplan
