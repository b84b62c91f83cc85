#pragma once

#include <string>
#include <vector>

#include "fleetplan/costs.hpp"
#include "fleetplan/milp.hpp"
#include "fleetplan/workload.hpp"

namespace fleetplan {

enum class ModelKind { homogeneous, heterogeneous, clustered };

ModelKind model_kind_from_name(const std::string& name);  // hom/het/hh
std::string model_kind_name(ModelKind k);

// One group of identical servers. The three fleet shapes are all group lists:
// homogeneous = one group, heterogeneous = all groups of count 1, clustered =
// anything else.
struct ServerGroup {
  double capacity = 1.0;
  int count = 1;
  CostParams costs;
};

struct FleetSpec {
  ModelKind kind = ModelKind::homogeneous;
  std::vector<ServerGroup> groups;

  static FleetSpec homogeneous(double capacity, int count,
                               const CostParams& costs);
  static FleetSpec heterogeneous(std::vector<ServerGroup> servers);
  static FleetSpec clustered(std::vector<ServerGroup> clusters);

  int group_count() const { return static_cast<int>(groups.size()); }
  int total_count() const;
  double total_capacity() const;
  bool groups_identical() const;
  void validate() const;
};

// Per-slot running counts per group (0/1 per server for heterogeneous).
// Switch events are always derived from count deltas with run_0 = 0, so
// min(on_t, off_t) == 0 holds by construction.
struct Schedule {
  ModelKind kind = ModelKind::homogeneous;
  std::vector<std::vector<int>> running;  // [group][slot]
  WorkloadTrace trace;

  int slots() const {
    return running.empty() ? 0 : static_cast<int>(running[0].size());
  }
};

struct SwitchEvents {
  std::vector<std::vector<int>> ons;   // [group][slot]
  std::vector<std::vector<int>> offs;  // [group][slot]
};
SwitchEvents switch_events(const Schedule& schedule);

struct CostBreakdown {
  double total = 0.0;        // F = energy + wear
  double energy = 0.0;       // running + switching power + consolidation power
  double wear = 0.0;         // wear-and-tear of switch events
  double switch_cost = 0.0;  // full per-event cost (wear + power + consol.)

  // pure running energy, total minus every switching-related component
  double running_energy = 0.0;
};

CostBreakdown evaluate_cost(const Schedule& schedule, const FleetSpec& fleet);

// Instance plus the variable layout needed to decode solver output. Variables
// are laid out slot-major: for each slot, run counts for every group, then
// switch-on counts, then switch-off counts.
struct BuiltModel {
  MilpInstance milp;
  ModelKind kind = ModelKind::homogeneous;
  int slots = 0;
  int groups = 0;
  WorkloadTrace trace;
  FleetSpec fleet;

  int run_var(int group, int slot) const { return 3 * groups * slot + group; }
  int on_var(int group, int slot) const {
    return 3 * groups * slot + groups + group;
  }
  int off_var(int group, int slot) const {
    return 3 * groups * slot + 2 * groups + group;
  }
};

BuiltModel build_hom(const WorkloadTrace& trace, const FleetSpec& fleet);
BuiltModel build_het(const WorkloadTrace& trace, const FleetSpec& fleet,
                     bool symmetry_breaking = false);
BuiltModel build_hh(const WorkloadTrace& trace, const FleetSpec& fleet);
BuiltModel build_model(const WorkloadTrace& trace, const FleetSpec& fleet);

// Turn a solver assignment into a schedule; checks demand coverage, capacity
// and the switch-balance identity.
Schedule decode_schedule(const BuiltModel& model, const Solution& solution);

// Variable assignment realizing a schedule (switch counts at their envelope).
std::vector<double> schedule_to_values(const BuiltModel& model,
                                       const Schedule& schedule);

// Everything on, all slots; switch-on charges hit slot 1.
Schedule fixed_configuration(const WorkloadTrace& trace, const FleetSpec& fleet);

// Per-slot myopic minimum of running cost only; greedy cover by
// capacity-per-cent with exact enumeration below 20 servers.
Schedule local_optimum(const WorkloadTrace& trace, const FleetSpec& fleet);

void write_schedule_csv(const Schedule& schedule, std::ostream& out);
void write_cost_csv_header(std::ostream& out);
void write_cost_csv_row(const std::string& label, const CostBreakdown& cost,
                        std::ostream& out);

}  // namespace fleetplan
