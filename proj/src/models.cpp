#include "fleetplan/models.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace fleetplan {

namespace {

// demand d needs at least ceil(d / v) unit-capacity servers; snap fp noise
int needed_servers(double demand, double capacity) {
  if (demand <= 0) return 0;
  return static_cast<int>(std::ceil(demand / capacity - 1e-9));
}

void require_feasible(const WorkloadTrace& trace, const FleetSpec& fleet) {
  const double cap = fleet.total_capacity();
  for (int t = 0; t < trace.slots(); ++t)
    if (trace.demands[t] > cap + 1e-9)
      throw std::invalid_argument(
          "demand exceeds total capacity at slot " + std::to_string(t + 1) +
          " (" + std::to_string(trace.demands[t]) + " > " +
          std::to_string(cap) + ")");
}

}  // namespace

ModelKind model_kind_from_name(const std::string& name) {
  if (name == "hom") return ModelKind::homogeneous;
  if (name == "het") return ModelKind::heterogeneous;
  if (name == "hh") return ModelKind::clustered;
  throw std::invalid_argument("unknown model: " + name +
                              " (expected hom, het or hh)");
}

std::string model_kind_name(ModelKind k) {
  switch (k) {
    case ModelKind::homogeneous: return "hom";
    case ModelKind::heterogeneous: return "het";
    case ModelKind::clustered: return "hh";
  }
  return "?";
}

FleetSpec FleetSpec::homogeneous(double capacity, int count,
                                 const CostParams& costs) {
  FleetSpec f;
  f.kind = ModelKind::homogeneous;
  f.groups = {{capacity, count, costs}};
  f.validate();
  return f;
}

FleetSpec FleetSpec::heterogeneous(std::vector<ServerGroup> servers) {
  FleetSpec f;
  f.kind = ModelKind::heterogeneous;
  f.groups = std::move(servers);
  for (auto& g : f.groups) g.count = 1;
  f.validate();
  return f;
}

FleetSpec FleetSpec::clustered(std::vector<ServerGroup> clusters) {
  FleetSpec f;
  f.kind = ModelKind::clustered;
  f.groups = std::move(clusters);
  f.validate();
  return f;
}

int FleetSpec::total_count() const {
  int n = 0;
  for (const auto& g : groups) n += g.count;
  return n;
}

double FleetSpec::total_capacity() const {
  double c = 0.0;
  for (const auto& g : groups) c += g.capacity * g.count;
  return c;
}

bool FleetSpec::groups_identical() const {
  for (const auto& g : groups)
    if (g.capacity != groups[0].capacity || !(g.costs == groups[0].costs))
      return false;
  return true;
}

void FleetSpec::validate() const {
  if (groups.empty()) throw std::invalid_argument("fleet has no servers");
  for (const auto& g : groups) {
    if (!(g.capacity > 0))
      throw std::invalid_argument("server capacity must be positive");
    if (g.count < 1) throw std::invalid_argument("server count must be >= 1");
    g.costs.validate();
  }
  if (kind == ModelKind::homogeneous && groups.size() != 1)
    throw std::invalid_argument("homogeneous fleet must have one group");
  if (kind == ModelKind::heterogeneous)
    for (const auto& g : groups)
      if (g.count != 1)
        throw std::invalid_argument(
            "heterogeneous fleet groups must have count 1");
}

SwitchEvents switch_events(const Schedule& schedule) {
  SwitchEvents ev;
  const std::size_t groups = schedule.running.size();
  ev.ons.resize(groups);
  ev.offs.resize(groups);
  for (std::size_t g = 0; g < groups; ++g) {
    const auto& run = schedule.running[g];
    ev.ons[g].resize(run.size());
    ev.offs[g].resize(run.size());
    int prev = 0;
    for (std::size_t t = 0; t < run.size(); ++t) {
      const int delta = run[t] - prev;
      ev.ons[g][t] = std::max(delta, 0);
      ev.offs[g][t] = std::max(-delta, 0);
      prev = run[t];
    }
  }
  return ev;
}

CostBreakdown evaluate_cost(const Schedule& schedule, const FleetSpec& fleet) {
  if (schedule.running.size() != fleet.groups.size())
    throw std::invalid_argument("schedule/fleet shape mismatch");
  if (schedule.slots() != schedule.trace.slots())
    throw std::invalid_argument("schedule/trace shape mismatch");
  const SwitchEvents ev = switch_events(schedule);
  CostBreakdown out;
  for (std::size_t g = 0; g < fleet.groups.size(); ++g) {
    const CostParams& c = fleet.groups[g].costs;
    double run_slots_weighted = 0.0;
    long ons = 0, offs = 0;
    for (int t = 0; t < schedule.slots(); ++t) {
      run_slots_weighted +=
          static_cast<double>(schedule.running[g][t]) * schedule.trace.slot_sizes[t];
      ons += ev.ons[g][t];
      offs += ev.offs[g][t];
    }
    const double running = run_slots_weighted * c.run_cost_per_base_slot;
    out.running_energy += running;
    out.energy += running + ons * c.switch_on_power +
                  offs * (c.switch_off_power + c.consolidation_power);
    out.wear += ons * c.switch_on_wear + offs * c.switch_off_wear;
    out.switch_cost +=
        ons * c.switch_on_total() + offs * c.switch_off_total();
  }
  out.total = out.energy + out.wear;
  return out;
}

namespace {

// One builder serves all three shapes; they differ only in fleet validation
// and group granularity. Layout is slot-major (run, on, off per group).
BuiltModel build_generic(const WorkloadTrace& trace, const FleetSpec& fleet,
                         bool emit_nonneg_rows, bool symmetry_breaking) {
  trace.validate();
  fleet.validate();
  require_feasible(trace, fleet);
  BuiltModel model;
  model.kind = fleet.kind;
  model.slots = trace.slots();
  model.groups = fleet.group_count();
  model.trace = trace;
  model.fleet = fleet;

  MilpInstance& m = model.milp;
  const int G = model.groups;
  const char* run_tag = (fleet.kind == ModelKind::homogeneous) ? "run"
                        : (fleet.kind == ModelKind::heterogeneous) ? "srv"
                                                                   : "cl";
  for (int t = 0; t < model.slots; ++t) {
    const double width = trace.slot_sizes[t];
    for (int g = 0; g < G; ++g) {
      const auto& grp = fleet.groups[g];
      m.add_variable(std::string(run_tag) + "_" + std::to_string(g + 1) + "_" +
                         std::to_string(t + 1),
                     0.0, grp.count, true,
                     grp.costs.run_cost_per_base_slot * width);
    }
    for (int g = 0; g < G; ++g)
      m.add_variable(std::string("on_") + std::to_string(g + 1) + "_" +
                         std::to_string(t + 1),
                     0.0, fleet.groups[g].count, true,
                     fleet.groups[g].costs.switch_on_total());
    for (int g = 0; g < G; ++g)
      m.add_variable(std::string("off_") + std::to_string(g + 1) + "_" +
                         std::to_string(t + 1),
                     0.0, fleet.groups[g].count, true,
                     fleet.groups[g].costs.switch_off_total());
  }

  // demand coverage rows
  for (int t = 0; t < model.slots; ++t) {
    std::vector<std::pair<int, double>> terms;
    for (int g = 0; g < G; ++g)
      terms.emplace_back(model.run_var(g, t), fleet.groups[g].capacity);
    m.add_constraint(std::move(terms), Relation::greater_equal,
                     trace.demands[t]);
  }

  // switch-event rows; run counts at slot 0 are zero
  for (int t = 0; t < model.slots; ++t) {
    for (int g = 0; g < G; ++g) {
      const int run_t = model.run_var(g, t);
      const int on_t = model.on_var(g, t);
      const int off_t = model.off_var(g, t);
      if (fleet.kind == ModelKind::heterogeneous) {
        // balance equality plus on/off exclusivity
        std::vector<std::pair<int, double>> bal = {
            {run_t, 1.0}, {on_t, -1.0}, {off_t, 1.0}};
        if (t > 0) bal.emplace_back(model.run_var(g, t - 1), -1.0);
        m.add_constraint(std::move(bal), Relation::equal, 0.0);
        m.add_constraint({{on_t, 1.0}, {off_t, 1.0}}, Relation::less_equal,
                         1.0);
      } else {
        std::vector<std::pair<int, double>> up = {{on_t, 1.0}, {run_t, -1.0}};
        if (t > 0) up.emplace_back(model.run_var(g, t - 1), 1.0);
        m.add_constraint(std::move(up), Relation::greater_equal, 0.0);
        if (emit_nonneg_rows)
          m.add_constraint({{on_t, 1.0}}, Relation::greater_equal, 0.0);
        std::vector<std::pair<int, double>> down = {{off_t, 1.0},
                                                    {run_t, 1.0}};
        if (t > 0) down.emplace_back(model.run_var(g, t - 1), -1.0);
        m.add_constraint(std::move(down), Relation::greater_equal, 0.0);
        if (emit_nonneg_rows)
          m.add_constraint({{off_t, 1.0}}, Relation::greater_equal, 0.0);
      }
    }
  }

  if (symmetry_breaking && fleet.kind == ModelKind::heterogeneous) {
    for (int t = 0; t < model.slots; ++t)
      for (int g = 0; g + 1 < G; ++g)
        m.add_constraint(
            {{model.run_var(g, t), 1.0}, {model.run_var(g + 1, t), -1.0}},
            Relation::greater_equal, 0.0);
  }

  m.validate();
  return model;
}

}  // namespace

BuiltModel build_hom(const WorkloadTrace& trace, const FleetSpec& fleet) {
  if (fleet.kind != ModelKind::homogeneous)
    throw std::invalid_argument("build_hom needs a homogeneous fleet");
  return build_generic(trace, fleet, /*emit_nonneg_rows=*/true, false);
}

BuiltModel build_het(const WorkloadTrace& trace, const FleetSpec& fleet,
                     bool symmetry_breaking) {
  if (fleet.kind != ModelKind::heterogeneous)
    throw std::invalid_argument("build_het needs a heterogeneous fleet");
  return build_generic(trace, fleet, false, symmetry_breaking);
}

BuiltModel build_hh(const WorkloadTrace& trace, const FleetSpec& fleet) {
  if (fleet.kind != ModelKind::clustered)
    throw std::invalid_argument("build_hh needs a clustered fleet");
  return build_generic(trace, fleet, /*emit_nonneg_rows=*/true, false);
}

BuiltModel build_model(const WorkloadTrace& trace, const FleetSpec& fleet) {
  switch (fleet.kind) {
    case ModelKind::homogeneous: return build_hom(trace, fleet);
    case ModelKind::heterogeneous: return build_het(trace, fleet);
    case ModelKind::clustered: return build_hh(trace, fleet);
  }
  throw std::invalid_argument("bad fleet kind");
}

Schedule decode_schedule(const BuiltModel& model, const Solution& solution) {
  if (solution.status != SolveStatus::optimal &&
      solution.status != SolveStatus::limit_reached)
    throw std::invalid_argument("cannot decode a non-optimal solution");
  if (solution.values.size() != model.milp.variables.size())
    throw std::invalid_argument("solution/instance shape mismatch");
  Schedule s;
  s.kind = model.kind;
  s.trace = model.trace;
  s.running.assign(model.groups, std::vector<int>(model.slots, 0));
  for (int g = 0; g < model.groups; ++g) {
    for (int t = 0; t < model.slots; ++t) {
      const double v = solution.values[model.run_var(g, t)];
      const int count = static_cast<int>(std::llround(v));
      if (std::fabs(v - count) > 1e-6)
        throw std::invalid_argument("non-integral run count in solution");
      if (count < 0 || count > model.fleet.groups[g].count)
        throw std::invalid_argument("run count outside fleet capacity");
      s.running[g][t] = count;
    }
  }
  for (int t = 0; t < model.slots; ++t) {
    double covered = 0.0;
    for (int g = 0; g < model.groups; ++g)
      covered += s.running[g][t] * model.fleet.groups[g].capacity;
    if (covered < model.trace.demands[t] - 1e-6)
      throw std::invalid_argument("decoded schedule misses demand at slot " +
                                  std::to_string(t + 1));
  }
  return s;
}

std::vector<double> schedule_to_values(const BuiltModel& model,
                                       const Schedule& schedule) {
  std::vector<double> values(model.milp.variables.size(), 0.0);
  const SwitchEvents ev = switch_events(schedule);
  for (int g = 0; g < model.groups; ++g)
    for (int t = 0; t < model.slots; ++t) {
      values[model.run_var(g, t)] = schedule.running[g][t];
      values[model.on_var(g, t)] = ev.ons[g][t];
      values[model.off_var(g, t)] = ev.offs[g][t];
    }
  return values;
}

Schedule fixed_configuration(const WorkloadTrace& trace,
                             const FleetSpec& fleet) {
  trace.validate();
  fleet.validate();
  require_feasible(trace, fleet);
  Schedule s;
  s.kind = fleet.kind;
  s.trace = trace;
  s.running.resize(fleet.group_count());
  for (int g = 0; g < fleet.group_count(); ++g)
    s.running[g].assign(trace.slots(), fleet.groups[g].count);
  return s;
}

namespace {

// minimal running-cost cover of a single slot's demand
std::vector<int> min_cost_cover(const FleetSpec& fleet, double demand) {
  const int G = fleet.group_count();
  std::vector<int> counts(G, 0);
  if (demand <= 0) return counts;
  if (G == 1) {
    counts[0] = needed_servers(demand, fleet.groups[0].capacity);
    return counts;
  }

  // group order by cost per unit of capacity, cheapest first
  std::vector<int> order(G);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    const auto& ga = fleet.groups[a];
    const auto& gb = fleet.groups[b];
    return ga.costs.run_cost_per_base_slot * gb.capacity <
           gb.costs.run_cost_per_base_slot * ga.capacity;
  });

  if (fleet.total_count() < 20) {
    // exact: depth-first over group counts with a cost bound
    std::vector<int> best(G, 0), cur(G, 0);
    double best_cost = kInfinity;
    auto rec = [&](auto&& self, int pos, double remaining,
                   double cost) -> void {
      if (cost >= best_cost - 1e-12) return;
      if (remaining <= 1e-9) {
        best = cur;
        best_cost = cost;
        return;
      }
      if (pos == G) return;
      const int g = order[pos];
      const auto& grp = fleet.groups[g];
      const int max_take =
          std::min(grp.count, needed_servers(remaining, grp.capacity));
      for (int take = max_take; take >= 0; --take) {
        cur[g] = take;
        self(self, pos + 1, remaining - take * grp.capacity,
             cost + take * grp.costs.run_cost_per_base_slot);
      }
      cur[g] = 0;
    };
    rec(rec, 0, demand, 0.0);
    if (best_cost == kInfinity)
      throw std::invalid_argument("infeasible slot demand");
    return best;
  }

  // greedy fill by the ratio order, then trim the tail group
  double remaining = demand;
  for (int g : order) {
    if (remaining <= 1e-9) break;
    const auto& grp = fleet.groups[g];
    const int take =
        std::min(grp.count, needed_servers(remaining, grp.capacity));
    counts[g] = take;
    remaining -= take * grp.capacity;
  }
  if (remaining > 1e-9) throw std::invalid_argument("infeasible slot demand");
  return counts;
}

}  // namespace

Schedule local_optimum(const WorkloadTrace& trace, const FleetSpec& fleet) {
  trace.validate();
  fleet.validate();
  require_feasible(trace, fleet);
  Schedule s;
  s.kind = fleet.kind;
  s.trace = trace;
  s.running.assign(fleet.group_count(), std::vector<int>(trace.slots(), 0));
  for (int t = 0; t < trace.slots(); ++t) {
    const auto counts = min_cost_cover(fleet, trace.demands[t]);
    for (int g = 0; g < fleet.group_count(); ++g) s.running[g][t] = counts[g];
  }
  return s;
}

void write_schedule_csv(const Schedule& schedule, std::ostream& out) {
  const bool grouped = schedule.kind != ModelKind::homogeneous;
  const SwitchEvents ev = switch_events(schedule);
  if (grouped)
    out << "slot,running,cluster_id,switched_on,switched_off\n";
  else
    out << "slot,running,switched_on,switched_off\n";
  for (int t = 0; t < schedule.slots(); ++t) {
    for (std::size_t g = 0; g < schedule.running.size(); ++g) {
      out << (t + 1) << ',' << schedule.running[g][t];
      if (grouped) out << ',' << (g + 1);
      out << ',' << ev.ons[g][t] << ',' << ev.offs[g][t] << '\n';
    }
  }
}

void write_cost_csv_header(std::ostream& out) {
  out << "case,F,Fp,Fw,switch_cost\n";
}

void write_cost_csv_row(const std::string& label, const CostBreakdown& cost,
                        std::ostream& out) {
  char buf[192];
  std::snprintf(buf, sizeof buf, "%s,%.9f,%.9f,%.9f,%.9f\n", label.c_str(),
                cost.total, cost.energy, cost.wear, cost.switch_cost);
  out << buf;
}

}  // namespace fleetplan
