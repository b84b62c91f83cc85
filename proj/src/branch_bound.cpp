#include <algorithm>
#include <chrono>
#include <cmath>
#include <deque>
#include <queue>
#include <stdexcept>
#include <vector>

#include "fleetplan/simplex.hpp"
#include "fleetplan/solver.hpp"

namespace fleetplan {

namespace {

constexpr double kIntTol = 1e-9;

bool nearly_integral(double coef) {
  return std::fabs(coef - std::round(coef)) <= 1e-9;
}

// Bound tightening on a working copy of the bounds:
//  - singleton rows become variable bounds (rounded inward for integers)
//  - rows whose variables are all integer with integral coefficients have
//    integer-multiple-of-gcd activity, so their rhs rounds to that grid
struct Presolved {
  std::vector<double> lower, upper;
  std::vector<double> rhs;  // per constraint, possibly tightened
  bool infeasible = false;
};

long long gcd_ll(long long a, long long b) {
  while (b != 0) {
    const long long t = a % b;
    a = b;
    b = t;
  }
  return a < 0 ? -a : a;
}

Presolved presolve(const MilpInstance& inst) {
  Presolved p;
  const int n = static_cast<int>(inst.variables.size());
  p.lower.resize(n);
  p.upper.resize(n);
  for (int j = 0; j < n; ++j) {
    p.lower[j] = inst.variables[j].lower;
    p.upper[j] = inst.variables[j].upper;
    if (inst.variables[j].is_integer) {
      p.lower[j] = std::ceil(p.lower[j] - kIntTol);
      p.upper[j] = std::floor(p.upper[j] + kIntTol);
    }
  }
  p.rhs.resize(inst.constraints.size());
  for (std::size_t r = 0; r < inst.constraints.size(); ++r) {
    const auto& c = inst.constraints[r];
    p.rhs[r] = c.rhs;

    if (c.terms.size() == 1) {
      const auto [j, coef] = c.terms[0];
      if (std::fabs(coef) > 1e-12) {
        const double bound = c.rhs / coef;
        const bool lower_side =
            (c.relation == Relation::greater_equal) == (coef > 0);
        if (c.relation == Relation::equal) {
          p.lower[j] = std::max(p.lower[j], bound);
          p.upper[j] = std::min(p.upper[j], bound);
        } else if (lower_side) {
          p.lower[j] = std::max(p.lower[j], bound);
        } else {
          p.upper[j] = std::min(p.upper[j], bound);
        }
        if (inst.variables[j].is_integer) {
          p.lower[j] = std::ceil(p.lower[j] - kIntTol);
          p.upper[j] = std::floor(p.upper[j] + kIntTol);
        }
      }
      continue;
    }

    if (c.relation == Relation::equal) continue;
    bool all_integer_terms = !c.terms.empty();
    long long g = 0;
    for (const auto& [j, coef] : c.terms) {
      if (!inst.variables[j].is_integer || !nearly_integral(coef) ||
          std::fabs(coef) > 1e12) {
        all_integer_terms = false;
        break;
      }
      g = gcd_ll(g, std::llround(coef));
    }
    if (all_integer_terms && g > 0) {
      const double gd = static_cast<double>(g);
      if (c.relation == Relation::greater_equal)
        p.rhs[r] = gd * std::ceil(c.rhs / gd - kIntTol);
      else
        p.rhs[r] = gd * std::floor(c.rhs / gd + kIntTol);
    }
  }
  for (int j = 0; j < n; ++j)
    if (p.lower[j] > p.upper[j] + kIntTol) p.infeasible = true;
  return p;
}

int most_fractional(const MilpInstance& inst, const std::vector<double>& x) {
  int best = -1;
  double best_dist = kIntTol;  // distance from the nearest integer
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (!inst.variables[j].is_integer) continue;
    const double frac = x[j] - std::floor(x[j]);
    const double dist = std::min(frac, 1.0 - frac);
    if (dist > best_dist + 1e-12) {
      best_dist = dist;
      best = static_cast<int>(j);
    }
  }
  return best;
}

struct Node {
  double bound;
  int depth;
  long id;
  int parent;      // index into the node pool, -1 for root
  int branch_var;  // bound change vs parent
  double branch_lo, branch_hi;
};

}  // namespace

Solution solve_milp(const MilpInstance& inst, const SolveOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  inst.validate();
  auto elapsed_s = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start)
        .count();
  };

  Solution sol;
  const int n = static_cast<int>(inst.variables.size());

  // working instance with presolved row right-hand sides
  MilpInstance work = inst;
  Presolved pre;
  if (opts.presolve) {
    pre = presolve(inst);
    if (pre.infeasible) {
      sol.status = SolveStatus::infeasible;
      sol.stats.wall_ms = elapsed_s() * 1e3;
      return sol;
    }
    for (std::size_t r = 0; r < work.constraints.size(); ++r)
      work.constraints[r].rhs = pre.rhs[r];
  } else {
    pre.lower.resize(n);
    pre.upper.resize(n);
    for (int j = 0; j < n; ++j) {
      pre.lower[j] = inst.variables[j].lower;
      pre.upper[j] = inst.variables[j].upper;
    }
  }

  double incumbent_obj = kInfinity;
  std::vector<double> incumbent;
  if (opts.incumbent_hint && is_feasible(inst, *opts.incumbent_hint, 1e-7)) {
    incumbent = *opts.incumbent_hint;
    for (int j = 0; j < n; ++j)
      if (inst.variables[j].is_integer)
        incumbent[j] = std::round(incumbent[j]);
    incumbent_obj = canonical_objective(inst, incumbent);
  }

  std::deque<Node> pool;
  pool.push_back({-kInfinity, 0, 0, -1, -1, 0.0, 0.0});

  // pop the lowest bound; among equal bounds the deepest, then the oldest
  struct QItem {
    double bound;
    int depth;
    long id;
  };
  auto cmp = [](const QItem& a, const QItem& b) {
    if (a.bound != b.bound) return a.bound > b.bound;
    if (a.depth != b.depth) return a.depth < b.depth;
    return a.id > b.id;
  };
  std::priority_queue<QItem, std::vector<QItem>, decltype(cmp)> queue(cmp);
  queue.push({-kInfinity, 0, 0});

  std::vector<double> lo(n), hi(n);
  long nodes = 0;
  long lp_iters = 0;
  double best_open_bound = -kInfinity;
  bool hit_limit = false;

  while (!queue.empty()) {
    const QItem item = queue.top();
    queue.pop();
    best_open_bound = item.bound;
    if (incumbent_obj < kInfinity &&
        item.bound >= incumbent_obj - opts.absolute_gap_tolerance)
      break;  // proven within gap
    if (opts.node_limit && nodes >= *opts.node_limit) {
      hit_limit = true;
      break;
    }
    if (opts.time_limit_seconds && elapsed_s() > *opts.time_limit_seconds) {
      hit_limit = true;
      break;
    }
    ++nodes;

    // rebuild bounds by walking the ancestor chain
    lo = pre.lower;
    hi = pre.upper;
    for (int at = static_cast<int>(item.id); at >= 0;
         at = pool[at].parent) {
      const Node& nd = pool[at];
      if (nd.branch_var >= 0) {
        lo[nd.branch_var] = std::max(lo[nd.branch_var], nd.branch_lo);
        hi[nd.branch_var] = std::min(hi[nd.branch_var], nd.branch_hi);
      }
    }

    const LpResult lp = solve_lp_bounded(work, lo, hi, opts.lp_iteration_limit);
    lp_iters += lp.iterations;
    if (lp.status == SolveStatus::infeasible) continue;
    if (lp.status != SolveStatus::optimal) {
      // relaxations of well-formed instances cannot be unbounded below when
      // an incumbent exists; surface anything unexpected
      if (lp.status == SolveStatus::unbounded && nodes == 1) {
        sol.status = SolveStatus::unbounded;
        sol.stats.nodes = nodes;
        sol.stats.lp_iterations = lp_iters;
        sol.stats.wall_ms = elapsed_s() * 1e3;
        return sol;
      }
      sol.status = SolveStatus::numerical_error;
      sol.stats.nodes = nodes;
      sol.stats.lp_iterations = lp_iters;
      sol.stats.wall_ms = elapsed_s() * 1e3;
      return sol;
    }
    if (incumbent_obj < kInfinity &&
        lp.objective >= incumbent_obj - opts.absolute_gap_tolerance)
      continue;

    const int frac_var = most_fractional(work, lp.values);
    if (frac_var < 0) {
      // integral: candidate incumbent
      std::vector<double> cand = lp.values;
      for (int j = 0; j < n; ++j)
        if (work.variables[j].is_integer) cand[j] = std::round(cand[j]);
      const double obj = canonical_objective(inst, cand);
      if (obj < incumbent_obj - 1e-12 && is_feasible(inst, cand, 1e-6)) {
        incumbent_obj = obj;
        incumbent = std::move(cand);
      }
      continue;
    }

    const double x = lp.values[frac_var];
    const double floor_x = std::floor(x);
    const int parent_id = static_cast<int>(item.id);
    const int depth = item.depth + 1;
    pool.push_back({lp.objective, depth, static_cast<long>(pool.size()),
                    parent_id, frac_var, -kInfinity, floor_x});
    queue.push({lp.objective, depth, pool.back().id});
    pool.push_back({lp.objective, depth, static_cast<long>(pool.size()),
                    parent_id, frac_var, floor_x + 1.0, kInfinity});
    queue.push({lp.objective, depth, pool.back().id});
  }

  sol.stats.nodes = nodes;
  sol.stats.lp_iterations = lp_iters;
  sol.stats.wall_ms = elapsed_s() * 1e3;

  if (hit_limit) {
    sol.status = SolveStatus::limit_reached;
    sol.best_bound = best_open_bound;
    if (incumbent_obj < kInfinity) {
      sol.objective = incumbent_obj;
      sol.values = incumbent;
    }
    return sol;
  }

  if (incumbent_obj == kInfinity) {
    sol.status = SolveStatus::infeasible;
    return sol;
  }
  sol.status = SolveStatus::optimal;
  sol.objective = incumbent_obj;
  sol.best_bound = queue.empty() ? incumbent_obj : best_open_bound;
  sol.values = incumbent;
  return sol;
}

}  // namespace fleetplan
