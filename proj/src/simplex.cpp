#include "fleetplan/simplex.hpp"

#include <chrono>
#include <cmath>
#include <vector>

#include "fleetplan/kernels.hpp"

namespace fleetplan {

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kReducedCostTol = 1e-9;
constexpr double kPhase1FeasTol = 1e-7;
constexpr double kRatioTieTol = 1e-12;
constexpr long kStallLimit = 2000;
constexpr long kRefreshInterval = 512;

enum class VarState : unsigned char { at_lower, at_upper, basic };

// Bounded-variable two-phase primal simplex over a dense tableau.
// Variables are shifted by their lower bound, so every column moves in
// [0, range_j]; inequality rows carry a slack, rows infeasible at the shifted
// origin carry a phase-1 artificial. The tableau keeps B^-1[A I | b]; basic
// values are tracked separately because nonbasic columns may sit at either
// bound.
class Tableau {
 public:
  Tableau(const MilpInstance& inst, const std::vector<double>& lower,
          const std::vector<double>& upper, long iteration_limit)
      : inst_(inst), lower_(lower), upper_(upper), limit_(iteration_limit) {}

  LpResult run() {
    if (!build()) {
      LpResult res;
      res.status = SolveStatus::infeasible;
      return res;
    }
    if (n_art_ > 0) {
      load_costs(/*phase1=*/true);
      const SolveStatus s1 = iterate(/*phase1=*/true);
      if (s1 != SolveStatus::optimal) return finish(s1);
      if (obj_ > kPhase1FeasTol) return finish(SolveStatus::infeasible);
      for (int j = col_art_; j < ncols_; ++j) range_[j] = 0.0;
    }
    load_costs(/*phase1=*/false);
    return finish(iterate(/*phase1=*/false));
  }

 private:
  const MilpInstance& inst_;
  const std::vector<double>& lower_;
  const std::vector<double>& upper_;
  long limit_;

  int m_ = 0;
  int n_ = 0;
  int ncols_ = 0;
  int width_ = 0;
  int col_slack_ = 0, col_art_ = 0, rhs_col_ = 0;
  int n_art_ = 0;

  std::vector<double> tab_;
  std::vector<double> dcost_;
  std::vector<double> cost_;
  std::vector<double> bval_;
  std::vector<double> range_;
  std::vector<VarState> state_;
  std::vector<int> basic_of_row_;
  double obj_ = 0.0;
  long iters_ = 0;

  double* row(int i) {
    return tab_.data() + static_cast<std::size_t>(i) * width_;
  }

  bool build() {
    m_ = static_cast<int>(inst_.constraints.size());
    n_ = static_cast<int>(inst_.variables.size());
    for (int j = 0; j < n_; ++j)
      if (lower_[j] > upper_[j] + 1e-12) return false;

    std::vector<double> resid(m_);
    std::vector<int> slack_of_row(m_, -1), art_of_row(m_, -1);
    int n_slack = 0;
    n_art_ = 0;
    for (int i = 0; i < m_; ++i) {
      const auto& c = inst_.constraints[i];
      double act = 0.0;
      for (const auto& [idx, coef] : c.terms) act += coef * lower_[idx];
      resid[i] = c.rhs - act;
      if (c.relation != Relation::equal) slack_of_row[i] = n_slack++;
      const double sigma = (c.relation == Relation::less_equal) ? 1.0 : -1.0;
      const bool slack_ok =
          c.relation != Relation::equal && sigma * resid[i] >= 0.0;
      if (!slack_ok) art_of_row[i] = n_art_++;
    }

    col_slack_ = n_;
    col_art_ = n_ + n_slack;
    ncols_ = col_art_ + n_art_;
    rhs_col_ = ncols_;
    width_ = ncols_ + 1;

    tab_.assign(static_cast<std::size_t>(m_) * width_, 0.0);
    range_.assign(ncols_, kInfinity);
    state_.assign(ncols_, VarState::at_lower);
    basic_of_row_.assign(m_, -1);
    bval_.assign(m_, 0.0);
    for (int j = 0; j < n_; ++j) range_[j] = upper_[j] - lower_[j];

    for (int i = 0; i < m_; ++i) {
      const auto& c = inst_.constraints[i];
      double* r = row(i);
      for (const auto& [idx, coef] : c.terms) r[idx] += coef;
      r[rhs_col_] = resid[i];
      if (slack_of_row[i] >= 0)
        r[col_slack_ + slack_of_row[i]] =
            (c.relation == Relation::less_equal) ? 1.0 : -1.0;
      int basic;
      if (art_of_row[i] >= 0) {
        basic = col_art_ + art_of_row[i];
        r[basic] = (resid[i] >= 0.0) ? 1.0 : -1.0;
      } else {
        basic = col_slack_ + slack_of_row[i];
      }
      if (r[basic] < 0) kernels::scale(r, -1.0, width_);
      basic_of_row_[i] = basic;
      state_[basic] = VarState::basic;
      bval_[i] = r[rhs_col_];
    }
    return true;
  }

  void load_costs(bool phase1) {
    cost_.assign(ncols_, 0.0);
    if (phase1) {
      for (int j = col_art_; j < ncols_; ++j) cost_[j] = 1.0;
    } else {
      for (int j = 0; j < n_; ++j) cost_[j] = inst_.variables[j].objective;
    }
    refresh();
  }

  // Recompute basic values, reduced costs and the phase objective from the
  // tableau; also run periodically to cap incremental drift.
  void refresh() {
    std::vector<int> at_upper;
    for (int j = 0; j < ncols_; ++j)
      if (state_[j] == VarState::at_upper && range_[j] > 0.0)
        at_upper.push_back(j);
    for (int i = 0; i < m_; ++i) {
      double v = row(i)[rhs_col_];
      for (int j : at_upper) v -= row(i)[j] * range_[j];
      bval_[i] = v;
    }
    dcost_ = cost_;
    obj_ = 0.0;
    for (int i = 0; i < m_; ++i) {
      const double cb = cost_[basic_of_row_[i]];
      if (cb != 0.0) {
        kernels::sub_scaled(dcost_.data(), row(i), cb, ncols_);
        obj_ += cb * bval_[i];
      }
    }
    for (int j : at_upper) obj_ += cost_[j] * range_[j];
    for (int i = 0; i < m_; ++i) dcost_[basic_of_row_[i]] = 0.0;
  }

  int price(bool bland) const {
    int best = -1;
    double best_score = kReducedCostTol;
    for (int j = 0; j < ncols_; ++j) {
      if (state_[j] == VarState::basic || range_[j] <= 0.0) continue;
      const double d = dcost_[j];
      double score;
      if (state_[j] == VarState::at_lower && d < -kReducedCostTol)
        score = -d;
      else if (state_[j] == VarState::at_upper && d > kReducedCostTol)
        score = d;
      else
        continue;
      if (bland) return j;
      if (score > best_score) {
        best_score = score;
        best = j;
      }
    }
    return best;
  }

  SolveStatus iterate(bool phase1) {
    long no_progress = 0;
    bool bland = false;
    double last_obj = obj_;
    while (true) {
      if (++iters_ > limit_) return SolveStatus::numerical_error;
      if (iters_ % kRefreshInterval == 0) refresh();

      const int q = price(bland);
      if (q < 0) return SolveStatus::optimal;
      const double dir = (state_[q] == VarState::at_lower) ? 1.0 : -1.0;

      double best_t = range_[q];  // bound-flip limit, may be inf
      int leave_row = -1;
      bool leave_at_upper = false;
      double leave_alpha = 0.0;
      for (int i = 0; i < m_; ++i) {
        const double alpha = row(i)[q] * dir;
        double t, mag;
        bool hits_upper;
        if (alpha > kPivotTol) {
          t = bval_[i] / alpha;
          mag = alpha;
          hits_upper = false;
        } else if (alpha < -kPivotTol) {
          const double cap = range_[basic_of_row_[i]];
          if (cap == kInfinity) continue;
          t = (cap - bval_[i]) / (-alpha);
          mag = -alpha;
          hits_upper = true;
        } else {
          continue;
        }
        bool take;
        if (t < best_t - kRatioTieTol) {
          take = true;
        } else if (t > best_t + kRatioTieTol) {
          take = false;
        } else if (leave_row < 0) {
          take = true;  // prefer a pivot over a bound flip on ties
        } else if (bland) {
          take = basic_of_row_[i] < basic_of_row_[leave_row];
        } else if (mag > leave_alpha + kRatioTieTol) {
          take = true;
        } else if (mag < leave_alpha - kRatioTieTol) {
          take = false;
        } else {
          take = basic_of_row_[i] < basic_of_row_[leave_row];
        }
        if (take) {
          best_t = std::min(best_t, t);
          leave_row = i;
          leave_at_upper = hits_upper;
          leave_alpha = mag;
        }
      }

      if (leave_row < 0 && best_t == kInfinity)
        return phase1 ? SolveStatus::numerical_error : SolveStatus::unbounded;

      const double step = std::max(best_t, 0.0);
      obj_ += dcost_[q] * dir * step;

      if (leave_row < 0)
        flip_bound(q, dir * step);
      else
        pivot(leave_row, q, dir, step, leave_at_upper);

      if (obj_ < last_obj - 1e-12) {
        last_obj = obj_;
        no_progress = 0;
        bland = false;
      } else if (++no_progress > kStallLimit) {
        bland = true;
      }
    }
  }

  void flip_bound(int q, double delta) {
    for (int i = 0; i < m_; ++i) bval_[i] -= row(i)[q] * delta;
    state_[q] = (state_[q] == VarState::at_lower) ? VarState::at_upper
                                                  : VarState::at_lower;
  }

  void pivot(int p, int q, double dir, double step, bool leave_at_upper) {
    const double enter_base =
        (state_[q] == VarState::at_lower) ? 0.0 : range_[q];
    for (int i = 0; i < m_; ++i)
      if (i != p) bval_[i] -= row(i)[q] * (dir * step);

    const int leaving = basic_of_row_[p];
    double* prow = row(p);
    kernels::scale(prow, 1.0 / prow[q], width_);
    prow[q] = 1.0;
    for (int i = 0; i < m_; ++i) {
      if (i == p) continue;
      const double f = row(i)[q];
      if (f != 0.0) {
        kernels::sub_scaled(row(i), prow, f, width_);
        row(i)[q] = 0.0;
      }
    }
    const double dq = dcost_[q];
    if (dq != 0.0) kernels::sub_scaled(dcost_.data(), prow, dq, ncols_);
    dcost_[q] = 0.0;

    state_[q] = VarState::basic;
    state_[leaving] = leave_at_upper ? VarState::at_upper : VarState::at_lower;
    basic_of_row_[p] = q;
    bval_[p] = enter_base + dir * step;
  }

  LpResult finish(SolveStatus status) {
    LpResult res;
    res.status = status;
    res.iterations = iters_;
    if (status != SolveStatus::optimal) return res;
    std::vector<double> shifted(ncols_, 0.0);
    for (int j = 0; j < ncols_; ++j)
      if (state_[j] == VarState::at_upper) shifted[j] = range_[j];
    for (int i = 0; i < m_; ++i) shifted[basic_of_row_[i]] = bval_[i];
    res.values.assign(n_, 0.0);
    for (int j = 0; j < n_; ++j) res.values[j] = lower_[j] + shifted[j];
    res.objective = canonical_objective(inst_, res.values);
    return res;
  }
};

}  // namespace

LpResult solve_lp_bounded(const MilpInstance& inst,
                          const std::vector<double>& lower,
                          const std::vector<double>& upper,
                          long iteration_limit) {
  Tableau t(inst, lower, upper, iteration_limit);
  return t.run();
}

Solution solve_lp(const MilpInstance& inst, const SolveOptions& opts) {
  inst.validate();
  const auto start = std::chrono::steady_clock::now();
  std::vector<double> lower(inst.variables.size()),
      upper(inst.variables.size());
  for (std::size_t j = 0; j < inst.variables.size(); ++j) {
    lower[j] = inst.variables[j].lower;
    upper[j] = inst.variables[j].upper;
  }
  const LpResult lp =
      solve_lp_bounded(inst, lower, upper, opts.lp_iteration_limit);
  Solution sol;
  sol.status = lp.status;
  sol.objective = lp.objective;
  sol.best_bound =
      lp.status == SolveStatus::optimal ? lp.objective : -kInfinity;
  sol.values = lp.values;
  sol.stats.lp_iterations = lp.iterations;
  sol.stats.wall_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  return sol;
}

}  // namespace fleetplan
