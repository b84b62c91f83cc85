#include "fleetplan/milp.hpp"

#include <cmath>
#include <stdexcept>

namespace fleetplan {

int MilpInstance::add_variable(std::string name, double lower, double upper,
                               bool is_integer, double objective) {
  variables.push_back(
      {std::move(name), lower, upper, is_integer, objective});
  return static_cast<int>(variables.size()) - 1;
}

void MilpInstance::add_constraint(std::vector<std::pair<int, double>> terms,
                                  Relation rel, double rhs) {
  constraints.push_back({std::move(terms), rel, rhs});
}

int MilpInstance::find_variable(const std::string& name) const {
  for (std::size_t i = 0; i < variables.size(); ++i)
    if (variables[i].name == name) return static_cast<int>(i);
  return -1;
}

void MilpInstance::validate() const {
  const int n = static_cast<int>(variables.size());
  for (const auto& v : variables) {
    if (!std::isfinite(v.lower))
      throw std::invalid_argument("variable " + v.name +
                                  " needs a finite lower bound");
    if (v.lower > v.upper)
      throw std::invalid_argument("variable " + v.name +
                                  " has lower bound above upper bound");
    if (!std::isfinite(v.objective))
      throw std::invalid_argument("variable " + v.name +
                                  " has non-finite objective");
  }
  for (std::size_t r = 0; r < constraints.size(); ++r) {
    for (const auto& [idx, coef] : constraints[r].terms) {
      if (idx < 0 || idx >= n)
        throw std::invalid_argument("constraint " + std::to_string(r) +
                                    " references unknown variable");
      if (!std::isfinite(coef))
        throw std::invalid_argument("constraint " + std::to_string(r) +
                                    " has non-finite coefficient");
    }
    if (!std::isfinite(constraints[r].rhs))
      throw std::invalid_argument("constraint " + std::to_string(r) +
                                  " has non-finite rhs");
  }
}

const char* status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::optimal: return "optimal";
    case SolveStatus::infeasible: return "infeasible";
    case SolveStatus::unbounded: return "unbounded";
    case SolveStatus::limit_reached: return "limit_reached";
    case SolveStatus::numerical_error: return "numerical_error";
  }
  return "?";
}

double Solution::value_of(const MilpInstance& inst,
                          const std::string& name) const {
  const int idx = inst.find_variable(name);
  if (idx < 0 || idx >= static_cast<int>(values.size()))
    throw std::invalid_argument("no such variable: " + name);
  return values[idx];
}

double canonical_objective(const MilpInstance& inst,
                           const std::vector<double>& values) {
  double obj = 0.0;
  for (std::size_t i = 0; i < inst.variables.size(); ++i)
    obj += inst.variables[i].objective * values[i];
  return obj;
}

bool is_feasible(const MilpInstance& inst, const std::vector<double>& values,
                 double tol) {
  if (values.size() != inst.variables.size()) return false;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const auto& v = inst.variables[i];
    if (values[i] < v.lower - tol || values[i] > v.upper + tol) return false;
    if (v.is_integer && std::fabs(values[i] - std::round(values[i])) > tol)
      return false;
  }
  for (const auto& c : inst.constraints) {
    double activity = 0.0;
    for (const auto& [idx, coef] : c.terms) activity += coef * values[idx];
    switch (c.relation) {
      case Relation::less_equal:
        if (activity > c.rhs + tol) return false;
        break;
      case Relation::greater_equal:
        if (activity < c.rhs - tol) return false;
        break;
      case Relation::equal:
        if (std::fabs(activity - c.rhs) > tol) return false;
        break;
    }
  }
  return true;
}

}  // namespace fleetplan
