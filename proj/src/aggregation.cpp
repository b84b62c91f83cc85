#include "fleetplan/aggregation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <set>
#include <stdexcept>

#include "fleetplan/kernels.hpp"

namespace fleetplan {

namespace {

// Shared merge arithmetic: the reference and incremental implementations must
// produce bitwise-identical values, so both call these.
double merged_value(AggMode mode, double va, int sa, double vb, int sb) {
  if (mode == AggMode::max) return std::max(va, vb);
  return (va * sa + vb * sb) / (sa + sb);
}

double merge_key(double va, double vb) { return std::fabs(vb - va); }

void check_target(const WorkloadTrace& trace, int target_slots) {
  if (target_slots < 1 || target_slots > trace.slots())
    throw std::invalid_argument("target slot count out of range [1, " +
                                std::to_string(trace.slots()) + "]");
}

}  // namespace

AggMode agg_mode_from_name(const std::string& name) {
  if (name == "max") return AggMode::max;
  if (name == "mean") return AggMode::mean;
  throw std::invalid_argument("unknown aggregation mode: " + name);
}

std::string agg_mode_name(AggMode mode) {
  return mode == AggMode::max ? "max" : "mean";
}

WorkloadTrace AggregatedTrace::to_trace() const {
  WorkloadTrace t;
  t.demands = values;
  t.slot_sizes = sizes;
  t.base_slot_minutes = origin.base_slot_minutes;
  return t;
}

void AggregatedTrace::validate() const {
  origin.validate();
  if (values.size() != sizes.size() || values.size() != first_slot.size())
    throw std::invalid_argument("aggregated trace field length mismatch");
  if (values.empty())
    throw std::invalid_argument("aggregated trace must have a slot");
  int origin_at = 0;
  int base_total = 0;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (first_slot[k] != origin_at)
      throw std::invalid_argument("aggregated slot mapping is not contiguous");
    if (sizes[k] < 1)
      throw std::invalid_argument("aggregated slot size must be positive");
    int base = 0;
    while (base < sizes[k]) {
      if (origin_at >= origin.slots())
        throw std::invalid_argument("aggregated sizes overrun the trace");
      base += origin.slot_sizes[origin_at++];
    }
    if (base != sizes[k])
      throw std::invalid_argument("aggregated slot splits an origin slot");
    base_total += base;
  }
  if (base_total != origin.total_base_slots())
    throw std::invalid_argument("aggregated sizes do not cover the trace");
}

AggregatedTrace static_aggregate(const WorkloadTrace& trace, int window_size,
                                 AggMode mode) {
  trace.validate();
  if (window_size < 1 || window_size > trace.slots())
    throw std::invalid_argument("window size out of range [1, " +
                                std::to_string(trace.slots()) + "]");
  AggregatedTrace agg;
  agg.mode = mode;
  agg.origin = trace;
  const int T = trace.slots();
  for (int start = 0; start < T; start += window_size) {
    const int end = std::min(start + window_size, T);
    double value = trace.demands[start];
    int size = trace.slot_sizes[start];
    for (int i = start + 1; i < end; ++i) {
      value = merged_value(mode, value, size, trace.demands[i],
                           trace.slot_sizes[i]);
      size += trace.slot_sizes[i];
    }
    agg.values.push_back(value);
    agg.sizes.push_back(size);
    agg.first_slot.push_back(start);
  }
  return agg;
}

AggregatedTrace local_smooth(const WorkloadTrace& trace, int target_slots,
                             AggMode mode) {
  trace.validate();
  check_target(trace, target_slots);
  std::vector<double> values = trace.demands;
  std::vector<int> sizes = trace.slot_sizes;
  std::vector<int> first(values.size());
  for (std::size_t i = 0; i < first.size(); ++i)
    first[i] = static_cast<int>(i);

  std::vector<double> keys(values.size());
  int count = static_cast<int>(values.size());
  while (count > target_slots) {
    kernels::adjacent_abs_diff(values.data(), keys.data(), count);
    const std::size_t at =
        kernels::argmin_first(keys.data(), static_cast<std::size_t>(count - 1));
    values[at] = merged_value(mode, values[at], sizes[at], values[at + 1],
                              sizes[at + 1]);
    sizes[at] += sizes[at + 1];
    values.erase(values.begin() + at + 1);
    sizes.erase(sizes.begin() + at + 1);
    first.erase(first.begin() + at + 1);
    --count;
  }

  AggregatedTrace agg;
  agg.mode = mode;
  agg.origin = trace;
  agg.values = std::move(values);
  agg.sizes = std::move(sizes);
  agg.first_slot = std::move(first);
  return agg;
}

namespace {

// Incremental local smooth: doubly-linked slot list plus an ordered candidate
// set keyed by (merge key, left node id). Node ids are the original slot
// indices and the left partner of a merge keeps its id, so ids stay sorted in
// list order and ties resolve exactly like the reference left-to-right scan.
AggregatedTrace run_incremental(const WorkloadTrace& trace, int target_slots,
                                AggMode mode, std::optional<int> max_size,
                                SmoothStats* stats) {
  trace.validate();
  check_target(trace, target_slots);
  if (max_size && *max_size < 1)
    throw std::invalid_argument("max merged size must be >= 1");

  const int T = trace.slots();
  std::vector<double> value = trace.demands;
  std::vector<int> size = trace.slot_sizes;
  std::vector<int> next(T), prev(T);
  for (int i = 0; i < T; ++i) {
    prev[i] = i - 1;
    next[i] = (i + 1 < T) ? i + 1 : -1;
  }

  auto mergeable = [&](int left) {
    return !max_size || size[left] + size[next[left]] <= *max_size;
  };
  std::set<std::pair<double, int>> candidates;
  for (int i = 0; i + 1 < T; ++i)
    if (mergeable(i)) candidates.insert({merge_key(value[i], value[i + 1]), i});

  SmoothStats counters;
  int count = T;
  while (count > target_slots && !candidates.empty()) {
    const int a = candidates.begin()->second;
    const int b = next[a];
    candidates.erase(candidates.begin());
    if (prev[a] >= 0)
      candidates.erase({merge_key(value[prev[a]], value[a]), prev[a]});
    if (next[b] >= 0)
      candidates.erase({merge_key(value[b], value[next[b]]), b});

    value[a] = merged_value(mode, value[a], size[a], value[b], size[b]);
    size[a] += size[b];
    next[a] = next[b];
    if (next[b] >= 0) prev[next[b]] = a;
    --count;
    ++counters.merges;

    int recomputed = 0;
    if (prev[a] >= 0 && mergeable(prev[a])) {
      candidates.insert({merge_key(value[prev[a]], value[a]), prev[a]});
      ++recomputed;
    }
    if (next[a] >= 0 && mergeable(a)) {
      candidates.insert({merge_key(value[a], value[next[a]]), a});
      ++recomputed;
    }
    counters.key_recomputations += recomputed;
    counters.max_recomputations_per_merge =
        std::max(counters.max_recomputations_per_merge, recomputed);
  }

  AggregatedTrace agg;
  agg.mode = mode;
  agg.origin = trace;
  agg.relaxed = count > target_slots;
  for (int i = 0; i >= 0; i = next[i]) {
    agg.values.push_back(value[i]);
    agg.sizes.push_back(size[i]);
    agg.first_slot.push_back(i);
  }
  if (stats) *stats = counters;
  return agg;
}

}  // namespace

AggregatedTrace improved_local_smooth(const WorkloadTrace& trace,
                                      int target_slots, AggMode mode,
                                      SmoothStats* stats) {
  return run_incremental(trace, target_slots, mode, std::nullopt, stats);
}

AggregatedTrace constrained_local_smooth(const WorkloadTrace& trace,
                                         int target_slots, int max_size,
                                         AggMode mode, SmoothStats* stats) {
  return run_incremental(trace, target_slots, mode, max_size, stats);
}

namespace {

double segment_cost(const WorkloadTrace& trace, int a, int b, AggMode mode) {
  // cost of aggregating origin slots [a, b], weighted by base slot sizes
  if (mode == AggMode::max) {
    double mx = trace.demands[a];
    for (int i = a + 1; i <= b; ++i) mx = std::max(mx, trace.demands[i]);
    double cost = 0.0;
    for (int i = a; i <= b; ++i)
      cost += trace.slot_sizes[i] * (mx - trace.demands[i]);
    return cost;
  }
  double wsum = 0.0, w = 0.0;
  for (int i = a; i <= b; ++i) {
    wsum += trace.demands[i] * trace.slot_sizes[i];
    w += trace.slot_sizes[i];
  }
  const double mean = wsum / w;
  double cost = 0.0;
  for (int i = a; i <= b; ++i)
    cost += trace.slot_sizes[i] * std::fabs(trace.demands[i] - mean);
  return cost;
}

}  // namespace

PartitionResult optimal_partition(const WorkloadTrace& trace, int target_slots,
                                  AggMode mode, std::optional<int> max_size) {
  trace.validate();
  check_target(trace, target_slots);
  const int T = trace.slots();
  const int K = target_slots;
  if (static_cast<long>(T) * K > 1'000'000)
    throw std::runtime_error("partition search guard exceeded (T*T_hat > 1e6)");
  if (T > (mode == AggMode::max ? 4096 : 1024))
    throw std::runtime_error("partition oracle size guard exceeded");

  // dp[k][j]: best cost of the first j slots in k segments
  const double inf = kInfinity;
  std::vector<std::vector<double>> dp(K + 1, std::vector<double>(T + 1, inf));
  std::vector<std::vector<int>> cut(K + 1, std::vector<int>(T + 1, -1));
  dp[0][0] = 0.0;

  std::vector<int> base_prefix(T + 1, 0);
  for (int i = 0; i < T; ++i)
    base_prefix[i + 1] = base_prefix[i] + trace.slot_sizes[i];

  for (int k = 1; k <= K; ++k) {
    for (int j = k; j <= T - (K - k); ++j) {
      double best = inf;
      int best_i = -1;
      double mx = -kInfinity, wsum = 0.0, w = 0.0;  // over slots [i, j-1]
      for (int i = j - 1; i >= k - 1; --i) {
        mx = std::max(mx, trace.demands[i]);
        wsum += trace.demands[i] * trace.slot_sizes[i];
        w += trace.slot_sizes[i];
        if (max_size && base_prefix[j] - base_prefix[i] > *max_size) break;
        if (dp[k - 1][i] == inf) continue;
        const double seg = (mode == AggMode::max)
                               ? w * mx - wsum
                               : segment_cost(trace, i, j - 1, mode);
        const double c = dp[k - 1][i] + seg;
        if (c < best - 1e-15) {
          best = c;
          best_i = i;
        }
      }
      dp[k][j] = best;
      cut[k][j] = best_i;
    }
  }

  if (dp[K][T] == inf)
    throw std::invalid_argument("no contiguous partition satisfies the size bound");

  std::vector<int> starts;
  int j = T;
  for (int k = K; k >= 1; --k) {
    starts.push_back(cut[k][j]);
    j = cut[k][j];
  }
  std::reverse(starts.begin(), starts.end());

  PartitionResult res;
  res.objective = dp[K][T];
  res.trace.mode = mode;
  res.trace.origin = trace;
  for (int k = 0; k < K; ++k) {
    const int a = starts[k];
    const int b = (k + 1 < K) ? starts[k + 1] - 1 : T - 1;
    double value = trace.demands[a];
    int sz = trace.slot_sizes[a];
    for (int i = a + 1; i <= b; ++i) {
      value = merged_value(mode, value, sz, trace.demands[i],
                           trace.slot_sizes[i]);
      sz += trace.slot_sizes[i];
    }
    res.trace.values.push_back(value);
    res.trace.sizes.push_back(sz);
    res.trace.first_slot.push_back(a);
  }
  return res;
}

double strict_objective(const AggregatedTrace& agg) {
  double total = 0.0;
  int i = 0;
  for (int k = 0; k < agg.slots(); ++k) {
    int base = 0;
    while (base < agg.sizes[k]) {
      const double d = agg.origin.demands[i];
      const int w = agg.origin.slot_sizes[i];
      total += (agg.mode == AggMode::max) ? w * (agg.values[k] - d)
                                          : w * std::fabs(d - agg.values[k]);
      base += w;
      ++i;
    }
  }
  return total;
}

double overprovision_amount(const AggregatedTrace& agg) {
  if (agg.mode != AggMode::max)
    throw std::invalid_argument("over-provisioning is a max-mode metric");
  return strict_objective(agg);
}

double rearrangement_amount(const AggregatedTrace& agg) {
  if (agg.mode != AggMode::mean)
    throw std::invalid_argument("rearrangement is a mean-mode metric");
  return strict_objective(agg);
}

Schedule expand_schedule(const Schedule& agg_schedule,
                         const AggregatedTrace& agg) {
  agg.validate();
  if (agg_schedule.slots() != agg.slots())
    throw std::invalid_argument("schedule was not built on this aggregation");
  Schedule out;
  out.kind = agg_schedule.kind;
  out.trace = agg.origin;
  out.running.assign(agg_schedule.running.size(),
                     std::vector<int>(agg.origin.slots(), 0));
  int i = 0;
  for (int k = 0; k < agg.slots(); ++k) {
    int base = 0;
    while (base < agg.sizes[k]) {
      for (std::size_t g = 0; g < out.running.size(); ++g)
        out.running[g][i] = agg_schedule.running[g][k];
      base += agg.origin.slot_sizes[i];
      ++i;
    }
  }
  return out;
}

int target_slots_for_alpha(int base_slots, int alpha) {
  if (alpha < 1) throw std::invalid_argument("alpha must be >= 1");
  return (base_slots + alpha - 1) / alpha;
}

void write_aggregated_csv(const AggregatedTrace& agg, std::ostream& out) {
  out << "agg_slot,value,size,first_base_slot\n";
  char buf[96];
  int base = 1;
  for (int k = 0; k < agg.slots(); ++k) {
    std::snprintf(buf, sizeof buf, "%d,%.17g,%d,%d\n", k + 1, agg.values[k],
                  agg.sizes[k], base);
    out << buf;
    base += agg.sizes[k];
  }
}

}  // namespace fleetplan
