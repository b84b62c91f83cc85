#include <stdexcept>
#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "fleetplan/models.hpp"
#include "fleetplan/planner.hpp"
#include "fleetplan/solver.hpp"

using namespace fleetplan;

namespace {

WorkloadTrace make_trace(std::vector<double> demands) {
  WorkloadTrace t;
  t.slot_sizes.assign(demands.size(), 1);
  t.demands = std::move(demands);
  return t;
}

}  // namespace

TEST_SUITE("models") {

TEST_CASE("hom builder emits 3T variables and T+4T rows") {
  const auto fleet = FleetSpec::homogeneous(1.0, 3, default_cost_params());
  const auto model = build_hom(make_trace({1, 2}), fleet);
  CHECK(model.milp.variables.size() == 6);
  CHECK(model.milp.constraints.size() == 10);  // 2 demand + 8 switch rows
  // count bounds live on the variables, not in rows
  for (const auto& v : model.milp.variables) {
    CHECK(v.is_integer);
    CHECK(v.lower == 0.0);
    CHECK(v.upper == 3.0);
  }
}

TEST_CASE("het builder emits binaries with balance and exclusivity rows") {
  std::vector<ServerGroup> servers = {{2.0, 1, default_cost_params()},
                                      {1.0, 1, default_cost_params()}};
  const auto fleet = FleetSpec::heterogeneous(servers);
  const auto model = build_het(make_trace({1, 2}), fleet);
  CHECK(model.milp.variables.size() == 12);       // 3 * I * T
  CHECK(model.milp.constraints.size() == 2 + 8);  // T demand + 2IT rows
  for (const auto& v : model.milp.variables) CHECK(v.upper == 1.0);
}

TEST_CASE("wrong fleet kind is rejected") {
  const auto hom = FleetSpec::homogeneous(1.0, 3, default_cost_params());
  CHECK_THROWS_AS(build_het(make_trace({1}), hom), std::invalid_argument);
  CHECK_THROWS_AS(build_hh(make_trace({1}), hom), std::invalid_argument);
}

TEST_CASE("builders fail fast on infeasible demand") {
  const auto fleet = FleetSpec::homogeneous(1.0, 100, default_cost_params());
  CHECK_THROWS_WITH_AS(build_hom(make_trace({50, 150, 80}), fleet),
                       doctest::Contains("slot 2"), std::invalid_argument);
}

TEST_CASE("two identical servers match the homogeneous optimum") {
  const auto trace = make_trace({1, 2});
  const auto hom = FleetSpec::homogeneous(1.0, 2, default_cost_params());
  std::vector<ServerGroup> servers(2, ServerGroup{1.0, 1, default_cost_params()});
  const auto het = FleetSpec::heterogeneous(servers);
  const auto hom_sol = solve_milp(build_hom(trace, hom).milp);
  const auto het_sol = solve_milp(build_het(trace, het).milp);
  REQUIRE(hom_sol.status == SolveStatus::optimal);
  REQUIRE(het_sol.status == SolveStatus::optimal);
  CHECK(hom_sol.objective ==
        doctest::Approx(het_sol.objective).epsilon(1e-12));
}

TEST_CASE("het single slot turns on exactly the needed servers") {
  std::vector<ServerGroup> servers(3, ServerGroup{1.0, 1, default_cost_params()});
  const auto fleet = FleetSpec::heterogeneous(servers);
  const auto model = build_het(make_trace({1.5}), fleet);
  const auto sol = brute_force(model.milp);
  REQUIRE(sol.status == SolveStatus::optimal);
  CHECK(sol.objective ==
        doctest::Approx(2 * (7.0 / 120.0 + 0.32)).epsilon(1e-12));
}

TEST_CASE("het two-slot mixed-capacity optimum uses the big server") {
  // servers v=[2,1]: covering [1,2] with just the 2-capacity server wins
  std::vector<ServerGroup> servers = {{2.0, 1, default_cost_params()},
                                      {1.0, 1, default_cost_params()}};
  const auto fleet = FleetSpec::heterogeneous(servers);
  const auto model = build_het(make_trace({1, 2}), fleet);
  const auto bf = brute_force(model.milp);
  const auto bb = solve_milp(model.milp);
  REQUIRE(bf.status == SolveStatus::optimal);
  CHECK(bf.objective ==
        doctest::Approx(2 * (7.0 / 120.0) + 0.32).epsilon(1e-12));
  CHECK(bb.objective == doctest::Approx(bf.objective).epsilon(1e-12));
  const auto schedule = decode_schedule(model, bb);
  CHECK(schedule.running[0] == std::vector<int>{1, 1});
  CHECK(schedule.running[1] == std::vector<int>{0, 0});
}

TEST_CASE("hh reduces to hom at J=1 and het at J=I") {
  const auto trace = make_trace({1, 3});
  const auto costs = default_cost_params();
  {
    const auto hh = FleetSpec::clustered({{1.0, 4, costs}});
    const auto hom = FleetSpec::homogeneous(1.0, 4, costs);
    const auto a = build_hh(trace, hh);
    const auto b = build_hom(trace, hom);
    CHECK(a.milp.variables.size() == b.milp.variables.size());
    CHECK(a.milp.constraints.size() == b.milp.constraints.size());
    CHECK(solve_milp(a.milp).objective ==
          doctest::Approx(solve_milp(b.milp).objective).epsilon(1e-12));
  }
  {
    std::vector<ServerGroup> units = {{2.0, 1, costs}, {1.0, 1, costs}};
    const auto hh = FleetSpec::clustered(units);
    const auto het = FleetSpec::heterogeneous(units);
    CHECK(solve_milp(build_hh(trace, hh).milp).objective ==
          doctest::Approx(solve_milp(build_het(trace, het).milp).objective)
              .epsilon(1e-12));
  }
}

TEST_CASE("hh two-cluster frozen example") {
  // J=2, I_j=[2,2], v=1, d=[1,3]: optimum y=[1,3] => 4 run-slots, 3 ons
  const auto costs = default_cost_params();
  const auto hh = FleetSpec::clustered({{1.0, 2, costs}, {1.0, 2, costs}});
  const auto model = build_hh(make_trace({1, 3}), hh);
  const auto bf = brute_force(model.milp);
  REQUIRE(bf.status == SolveStatus::optimal);
  CHECK(bf.objective ==
        doctest::Approx(4 * (7.0 / 120.0) + 3 * 0.32).epsilon(1e-12));
  CHECK(solve_milp(model.milp).objective ==
        doctest::Approx(bf.objective).epsilon(1e-12));
}

TEST_CASE("evaluate_cost basics") {
  const auto fleet = FleetSpec::homogeneous(1.0, 2, default_cost_params());
  Schedule off;
  off.kind = ModelKind::homogeneous;
  off.trace = make_trace({0, 0});
  off.running = {{0, 0}};
  const auto zero = evaluate_cost(off, fleet);
  CHECK(zero.total == 0.0);
  CHECK(zero.energy == 0.0);
  CHECK(zero.wear == 0.0);

  Schedule pulse;
  pulse.kind = ModelKind::homogeneous;
  pulse.trace = make_trace({1, 0});
  pulse.running = {{1, 0}};
  const auto cost = evaluate_cost(pulse, fleet);
  CHECK(cost.total ==
        doctest::Approx(7.0 / 120.0 + 0.32 + 0.22).epsilon(1e-12));
  CHECK(cost.total == doctest::Approx(cost.energy + cost.wear).epsilon(1e-15));
  CHECK(cost.switch_cost == doctest::Approx(0.54).epsilon(1e-12));
}

TEST_CASE("energy breakdown separates wear from power") {
  const auto c = default_cost_params();
  const auto fleet = FleetSpec::homogeneous(1.0, 1, c);
  Schedule s;
  s.kind = ModelKind::homogeneous;
  s.trace = make_trace({1, 0});
  s.running = {{1, 0}};
  const auto cost = evaluate_cost(s, fleet);
  // Fp: run + on power + off power + consolidation; Fw: wear only
  CHECK(cost.energy == doctest::Approx(7.0 / 120.0 + 0.02 + 0.005 + 0.015)
                           .epsilon(1e-12));
  CHECK(cost.wear == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("fixed configuration charges energy plus slot-1 turn-on") {
  const auto fleet = FleetSpec::homogeneous(1.0, 100, default_cost_params());
  const auto trace = gen_sinusoidal(100, 96);
  const auto fixed = fixed_configuration(trace, fleet);
  const auto cost = evaluate_cost(fixed, fleet);
  CHECK(cost.running_energy == doctest::Approx(560.0).epsilon(1e-12));
  CHECK(cost.switch_cost == doctest::Approx(32.0).epsilon(1e-12));
  CHECK(cost.total == doctest::Approx(592.0).epsilon(1e-12));

  const auto tiny = FleetSpec::homogeneous(1.0, 1, default_cost_params());
  const auto one = fixed_configuration(make_trace({0}), tiny);
  CHECK(evaluate_cost(one, tiny).running_energy ==
        doctest::Approx(7.0 / 120.0).epsilon(1e-12));

  CHECK_THROWS_AS(fixed_configuration(make_trace({150}), fleet),
                  std::invalid_argument);
}

TEST_CASE("local optimum follows the demand ceiling") {
  const auto fleet = FleetSpec::homogeneous(1.0, 5, default_cost_params());
  const auto local = local_optimum(make_trace({1, 2, 1}), fleet);
  CHECK(local.running[0] == std::vector<int>{1, 2, 1});
  const auto cost = evaluate_cost(local, fleet);
  CHECK(cost.switch_cost ==
        doctest::Approx(2 * 0.32 + 1 * 0.22).epsilon(1e-12));

  // constant demand: local equals global
  const auto flat = make_trace({2.5, 2.5, 2.5});
  const auto dp = solve_hom_dp(flat, fleet);
  const auto local_flat = local_optimum(flat, fleet);
  CHECK(evaluate_cost(local_flat, fleet).total ==
        doctest::Approx(dp.objective).epsilon(1e-12));
}

TEST_CASE("heterogeneous local optimum picks the cheap cover per slot") {
  std::vector<ServerGroup> servers = {{1.0, 1, beta_cost_params(1.0)},
                                      {2.0, 1, default_cost_params()}};
  // per-slot run costs: server 0 = 7/60 per slot for capacity 1,
  // server 1 = 7/120 for capacity 2: the big server dominates
  const auto fleet = FleetSpec::heterogeneous(servers);
  const auto local = local_optimum(make_trace({1.5, 2.0}), fleet);
  CHECK(local.running[1] == std::vector<int>{1, 1});
  CHECK(local.running[0] == std::vector<int>{0, 0});
}

TEST_CASE("decode rejects shape mismatches") {
  const auto fleet = FleetSpec::homogeneous(1.0, 3, default_cost_params());
  const auto model = build_hom(make_trace({1, 2}), fleet);
  Solution sol;
  sol.status = SolveStatus::optimal;
  sol.values = {1.0, 1.0};
  CHECK_THROWS_AS(decode_schedule(model, sol), std::invalid_argument);
}

TEST_CASE("solver objective equals evaluated schedule cost") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    const int T = 2 + static_cast<int>(rng() % 3);
    std::vector<double> d(T);
    for (auto& x : d) x = (rng() % 300) / 100.0;
    const auto fleet = FleetSpec::clustered(
        {{1.0, 2, default_cost_params()}, {1.0, 2, beta_cost_params(0.3)}});
    const auto trace = truncate_to_capacity(make_trace(d), 4.0);
    const auto model = build_hh(trace, fleet);
    const auto sol = solve_milp(model.milp);
    REQUIRE(sol.status == SolveStatus::optimal);
    const auto schedule = decode_schedule(model, sol);
    const auto cost = evaluate_cost(schedule, fleet);
    CHECK(std::fabs(cost.total - sol.objective) < 1e-6);
    // switch-balance identity and sign split are structural
    const auto ev = switch_events(schedule);
    for (int g = 0; g < 2; ++g) {
      int prev = 0;
      for (int t = 0; t < trace.slots(); ++t) {
        CHECK(ev.ons[g][t] - ev.offs[g][t] == schedule.running[g][t] - prev);
        CHECK((ev.ons[g][t] == 0 || ev.offs[g][t] == 0));
        prev = schedule.running[g][t];
      }
    }
  }
}

TEST_CASE("schedule csv shapes") {
  const auto fleet = FleetSpec::homogeneous(1.0, 2, default_cost_params());
  Schedule s;
  s.kind = ModelKind::homogeneous;
  s.trace = make_trace({1, 2});
  s.running = {{1, 2}};
  std::ostringstream out;
  write_schedule_csv(s, out);
  CHECK(out.str() ==
        "slot,running,switched_on,switched_off\n1,1,1,0\n2,2,1,0\n");

  std::ostringstream costs;
  write_cost_csv_header(costs);
  write_cost_csv_row("global", evaluate_cost(s, fleet), costs);
  CHECK(costs.str().substr(0, 25) == "case,F,Fp,Fw,switch_cost\n");
}

}  // TEST_SUITE
