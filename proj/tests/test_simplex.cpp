#include <cmath>
#include <optional>
#include <random>
#include <vector>

#include "doctest.h"
#include "fleetplan/milp.hpp"
#include "fleetplan/simplex.hpp"

using namespace fleetplan;

namespace {

// Independent LP oracle for small instances with finite boxes: enumerate all
// n-subsets of {rows-as-equalities, bound-as-equalities}, solve each linear
// system, keep feasible points, take the best. A bounded nonempty polyhedron
// attains its optimum at such a vertex.
struct OracleResult {
  bool feasible = false;
  double objective = 0.0;
};

bool solve_square(std::vector<std::vector<double>> a, std::vector<double> b,
                  std::vector<double>& x) {
  const int n = static_cast<int>(b.size());
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    double best = 1e-9;
    for (int r = c; r < n; ++r)
      if (std::fabs(a[r][c]) > best) {
        best = std::fabs(a[r][c]);
        piv = r;
      }
    if (piv < 0) return false;
    std::swap(a[c], a[piv]);
    std::swap(b[c], b[piv]);
    for (int r = 0; r < n; ++r) {
      if (r == c) continue;
      const double f = a[r][c] / a[c][c];
      if (f == 0.0) continue;
      for (int k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  x.resize(n);
  for (int c = 0; c < n; ++c) x[c] = b[c] / a[c][c];
  return true;
}

OracleResult lp_oracle(const MilpInstance& inst) {
  const int n = static_cast<int>(inst.variables.size());
  const int m = static_cast<int>(inst.constraints.size());
  // candidate equalities: each row, each lower bound, each upper bound
  struct Eq {
    std::vector<double> coef;
    double rhs;
  };
  std::vector<Eq> eqs;
  for (const auto& c : inst.constraints) {
    Eq e{std::vector<double>(n, 0.0), c.rhs};
    for (const auto& [j, v] : c.terms) e.coef[j] += v;
    eqs.push_back(std::move(e));
  }
  for (int j = 0; j < n; ++j) {
    Eq lo{std::vector<double>(n, 0.0), inst.variables[j].lower};
    lo.coef[j] = 1.0;
    eqs.push_back(std::move(lo));
    Eq hi{std::vector<double>(n, 0.0), inst.variables[j].upper};
    hi.coef[j] = 1.0;
    eqs.push_back(std::move(hi));
  }

  OracleResult best;
  std::vector<int> pick(n);
  const int total = static_cast<int>(eqs.size());
  auto feasible = [&](const std::vector<double>& x) {
    for (int j = 0; j < n; ++j)
      if (x[j] < inst.variables[j].lower - 1e-7 ||
          x[j] > inst.variables[j].upper + 1e-7)
        return false;
    for (int r = 0; r < m; ++r) {
      double act = 0;
      for (const auto& [j, v] : inst.constraints[r].terms) act += v * x[j];
      const auto rel = inst.constraints[r].relation;
      const double rhs = inst.constraints[r].rhs;
      if (rel == Relation::less_equal && act > rhs + 1e-7) return false;
      if (rel == Relation::greater_equal && act < rhs - 1e-7) return false;
      if (rel == Relation::equal && std::fabs(act - rhs) > 1e-7) return false;
    }
    return true;
  };
  auto rec = [&](auto&& self, int from, int depth) -> void {
    if (depth == n) {
      std::vector<std::vector<double>> a(n);
      std::vector<double> b(n);
      for (int i = 0; i < n; ++i) {
        a[i] = eqs[pick[i]].coef;
        b[i] = eqs[pick[i]].rhs;
      }
      std::vector<double> x;
      if (!solve_square(std::move(a), std::move(b), x)) return;
      if (!feasible(x)) return;
      double obj = 0;
      for (int j = 0; j < n; ++j) obj += inst.variables[j].objective * x[j];
      if (!best.feasible || obj < best.objective) {
        best.feasible = true;
        best.objective = obj;
      }
      return;
    }
    for (int i = from; i < total; ++i) {
      pick[depth] = i;
      self(self, i + 1, depth + 1);
    }
  };
  rec(rec, 0, 0);
  // equality rows must hold even if not among the chosen actives; the
  // feasibility filter above already enforces them
  return best;
}

MilpInstance hom_t1_relaxation() {
  // single-slot homogeneous model, demand 1.5, capacity 1, 3 servers
  MilpInstance m;
  const double run = 7.0 / 120.0;
  m.add_variable("run", 0, 3, false, run);
  m.add_variable("on", 0, 3, false, 0.32);
  m.add_variable("off", 0, 3, false, 0.22);
  m.add_constraint({{0, 1.0}}, Relation::greater_equal, 1.5);
  m.add_constraint({{1, 1.0}, {0, -1.0}}, Relation::greater_equal, 0.0);
  m.add_constraint({{1, 1.0}}, Relation::greater_equal, 0.0);
  m.add_constraint({{2, 1.0}, {0, 1.0}}, Relation::greater_equal, 0.0);
  m.add_constraint({{2, 1.0}}, Relation::greater_equal, 0.0);
  return m;
}

}  // namespace

TEST_SUITE("simplex") {

TEST_CASE("single-slot relaxation lands on the fractional vertex") {
  const auto inst = hom_t1_relaxation();
  const auto sol = solve_lp(inst);
  REQUIRE(sol.status == SolveStatus::optimal);
  CHECK(sol.value_of(inst, "run") == doctest::Approx(1.5).epsilon(1e-9));
  CHECK(sol.objective ==
        doctest::Approx(1.5 * (7.0 / 120.0 + 0.32)).epsilon(1e-9));
}

TEST_CASE("zero demand solves to zero") {
  MilpInstance m;
  m.add_variable("a", 0, 5, false, 1.0);
  m.add_variable("b", 0, 5, false, 2.0);
  m.add_constraint({{0, 1.0}, {1, 1.0}}, Relation::greater_equal, 0.0);
  const auto sol = solve_lp(m);
  REQUIRE(sol.status == SolveStatus::optimal);
  CHECK(sol.objective == doctest::Approx(0.0));
}

TEST_CASE("contradictory rows report infeasible") {
  MilpInstance m;
  m.add_variable("y", 0, 10, false, 1.0);
  m.add_constraint({{0, 1.0}}, Relation::greater_equal, 2.0);
  m.add_constraint({{0, 1.0}}, Relation::less_equal, 1.0);
  CHECK(solve_lp(m).status == SolveStatus::infeasible);
}

TEST_CASE("missing upper bound surfaces unboundedness") {
  MilpInstance m;
  m.add_variable("x", 0, kInfinity, false, -1.0);
  m.add_constraint({{0, 1.0}}, Relation::greater_equal, 1.0);
  CHECK(solve_lp(m).status == SolveStatus::unbounded);
}

TEST_CASE("equality rows are honored") {
  MilpInstance m;
  m.add_variable("x", 0, 10, false, 1.0);
  m.add_variable("y", 0, 10, false, 3.0);
  m.add_constraint({{0, 1.0}, {1, 1.0}}, Relation::equal, 4.0);
  m.add_constraint({{1, 1.0}}, Relation::greater_equal, 1.0);
  const auto sol = solve_lp(m);
  REQUIRE(sol.status == SolveStatus::optimal);
  CHECK(sol.values[0] == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(sol.values[1] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("upper bounds bind through the bounded ratio test") {
  MilpInstance m;
  m.add_variable("x", 0, 2, false, -1.0);
  m.add_variable("y", 0, 2, false, -1.0);
  m.add_constraint({{0, 1.0}, {1, 1.0}}, Relation::less_equal, 3.0);
  const auto sol = solve_lp(m);
  REQUIRE(sol.status == SolveStatus::optimal);
  CHECK(sol.objective == doctest::Approx(-3.0).epsilon(1e-9));
}

TEST_CASE("random boxed LPs agree with the vertex-enumeration oracle") {
  std::mt19937_64 rng(2024);
  int feasible_seen = 0, infeasible_seen = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 4);
    const int m = static_cast<int>(rng() % 5);
    MilpInstance inst;
    std::uniform_real_distribution<double> coef(-3.0, 3.0);
    std::uniform_real_distribution<double> cost(-2.0, 2.0);
    for (int j = 0; j < n; ++j) {
      const double lo = (rng() % 3 == 0) ? -2.0 : 0.0;
      const double hi = lo + 1.0 + static_cast<double>(rng() % 5);
      inst.add_variable("x" + std::to_string(j), lo, hi, false, cost(rng));
    }
    for (int r = 0; r < m; ++r) {
      std::vector<std::pair<int, double>> terms;
      for (int j = 0; j < n; ++j)
        if (rng() % 2 == 0) terms.emplace_back(j, std::round(coef(rng) * 2) / 2);
      if (terms.empty()) terms.emplace_back(0, 1.0);
      const int rel = static_cast<int>(rng() % 10);
      const Relation relation = rel < 4   ? Relation::less_equal
                                : rel < 8 ? Relation::greater_equal
                                          : Relation::equal;
      inst.add_constraint(std::move(terms), relation,
                          std::round(coef(rng) * 4) / 2);
    }
    const auto oracle = lp_oracle(inst);
    const auto sol = solve_lp(inst);
    if (oracle.feasible) {
      ++feasible_seen;
      REQUIRE_MESSAGE(sol.status == SolveStatus::optimal,
                      "trial " << trial << " expected optimal");
      CHECK_MESSAGE(
          sol.objective == doctest::Approx(oracle.objective).epsilon(1e-7),
          "trial " << trial);
    } else {
      ++infeasible_seen;
      CHECK_MESSAGE(sol.status == SolveStatus::infeasible, "trial " << trial);
    }
  }
  CHECK(feasible_seen > 50);
  CHECK(infeasible_seen > 10);
}

}  // TEST_SUITE
