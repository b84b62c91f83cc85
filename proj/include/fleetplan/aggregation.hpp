#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fleetplan/models.hpp"
#include "fleetplan/workload.hpp"

namespace fleetplan {

enum class AggMode { max, mean };

AggMode agg_mode_from_name(const std::string& name);
std::string agg_mode_name(AggMode mode);

// Aggregated demand series plus the mapping back to the slots of the trace it
// was built from. sizes[] counts base slots, so sum(sizes) equals the base
// trace's total; values are the max (SLA-safe) or size-weighted mean
// (demand-preserving) of the covered slots.
struct AggregatedTrace {
  std::vector<double> values;
  std::vector<int> sizes;       // base slots per aggregated slot
  std::vector<int> first_slot;  // first covered slot of the origin trace
  AggMode mode = AggMode::max;
  bool relaxed = false;  // size-constrained run stopped above the target
  WorkloadTrace origin;

  int slots() const { return static_cast<int>(values.size()); }
  WorkloadTrace to_trace() const;  // feedable to the model builders
  void validate() const;
};

// Counters for the incremental implementation: each merge may recompute at
// most the two merge keys adjacent to the merged pair.
struct SmoothStats {
  long merges = 0;
  long key_recomputations = 0;
  int max_recomputations_per_merge = 0;
};

// Fixed windows of window_size slots; the last window takes the remainder.
AggregatedTrace static_aggregate(const WorkloadTrace& trace, int window_size,
                                 AggMode mode);

// Reference greedy merge: repeatedly merge the adjacent pair with the
// smallest absolute demand difference (lowest index on ties) until
// target_slots remain. Quadratic; kept as the equivalence oracle for the
// incremental version.
AggregatedTrace local_smooth(const WorkloadTrace& trace, int target_slots,
                             AggMode mode);

// Same outputs as local_smooth for every input, via a doubly-linked slot list
// and an ordered candidate set instead of array shifting.
AggregatedTrace improved_local_smooth(const WorkloadTrace& trace,
                                      int target_slots, AggMode mode,
                                      SmoothStats* stats = nullptr);

// Like improved_local_smooth, but a pair may merge only if the combined size
// stays within max_size; stops early (relaxed=true) when no candidate is
// mergeable before reaching the target.
AggregatedTrace constrained_local_smooth(const WorkloadTrace& trace,
                                         int target_slots, int max_size,
                                         AggMode mode = AggMode::mean,
                                         SmoothStats* stats = nullptr);

// Exact minimizer of the strict aggregation objective over contiguous
// partitions into target_slots segments (segment size <= max_size when
// given), by dynamic programming. Quality oracle for the heuristics.
struct PartitionResult {
  AggregatedTrace trace;
  double objective = 0.0;
};
PartitionResult optimal_partition(const WorkloadTrace& trace, int target_slots,
                                  AggMode mode,
                                  std::optional<int> max_size = {});

// Strict objective of an existing aggregation against its origin:
// sum of (value - d) in max mode, sum of |d - value| in mean mode,
// weighted by base slot sizes.
double strict_objective(const AggregatedTrace& agg);

// Capacity-units-times-slots the max aggregation over-provisions.
double overprovision_amount(const AggregatedTrace& agg);
// Workload moved in time by the mean aggregation, same units.
double rearrangement_amount(const AggregatedTrace& agg);

// Replicate each aggregated slot's counts across its covered base slots.
// Switch events land on aggregated-slot boundaries; totals are unchanged.
Schedule expand_schedule(const Schedule& agg_schedule,
                         const AggregatedTrace& agg);

// Degree of aggregation: alpha = ceil(T / target), target = ceil(T / alpha).
int target_slots_for_alpha(int base_slots, int alpha);

void write_aggregated_csv(const AggregatedTrace& agg, std::ostream& out);

}  // namespace fleetplan
