#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace fleetplan {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class Relation { less_equal, greater_equal, equal };

struct Variable {
  std::string name;
  double lower = 0.0;
  double upper = kInfinity;
  bool is_integer = false;
  double objective = 0.0;
};

struct Constraint {
  std::vector<std::pair<int, double>> terms;  // (variable index, coefficient)
  Relation relation = Relation::less_equal;
  double rhs = 0.0;
};

// Generic mixed-integer linear program, sense: minimize. Lower bounds must be
// finite (the simplex shifts variables to their lower bound).
struct MilpInstance {
  std::vector<Variable> variables;
  std::vector<Constraint> constraints;

  int add_variable(std::string name, double lower, double upper,
                   bool is_integer, double objective);
  void add_constraint(std::vector<std::pair<int, double>> terms, Relation rel,
                      double rhs);

  int find_variable(const std::string& name) const;  // -1 if absent
  void validate() const;  // throws std::invalid_argument
};

enum class SolveStatus { optimal, infeasible, unbounded, limit_reached,
                         numerical_error };

const char* status_name(SolveStatus s);

struct SolveStats {
  long nodes = 0;
  long lp_iterations = 0;
  double wall_ms = 0.0;
};

struct Solution {
  SolveStatus status = SolveStatus::numerical_error;
  double objective = 0.0;
  double best_bound = -kInfinity;  // proven lower bound (minimize)
  std::vector<double> values;      // indexed like instance.variables
  SolveStats stats;

  double value_of(const MilpInstance& inst, const std::string& name) const;
};

struct SolveOptions {
  double absolute_gap_tolerance = 1e-6;
  std::optional<double> time_limit_seconds;
  std::optional<long> node_limit;
  // Feasible assignment used as the initial upper bound. Validated against
  // the instance; rejected hints are ignored.
  std::optional<std::vector<double>> incumbent_hint;
  bool presolve = true;
  long lp_iteration_limit = 5'000'000;
};

// Objective recomputed as sum(c_i * x_i) in variable order. All solver routes
// report through this so equal assignments compare bitwise equal.
double canonical_objective(const MilpInstance& inst,
                           const std::vector<double>& values);

// Check feasibility of an assignment: bounds, integrality for integer
// variables, and every constraint, all within tol.
bool is_feasible(const MilpInstance& inst, const std::vector<double>& values,
                 double tol = 1e-9);

}  // namespace fleetplan
