#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

namespace fleetplan {

// Demand trace over a planning window: one demand value per slot, in
// normalized server-capacity units, plus the number of base slots each entry
// covers (all 1 for unaggregated traces).
struct WorkloadTrace {
  std::vector<double> demands;
  std::vector<int> slot_sizes;
  double base_slot_minutes = 5.0;

  int slots() const { return static_cast<int>(demands.size()); }
  int total_base_slots() const;
  void validate() const;  // throws std::invalid_argument

  bool operator==(const WorkloadTrace&) const = default;
};

enum class Distribution { erlang2, exponential, hyperexp2 };

Distribution distribution_from_name(const std::string& name);
std::string distribution_name(Distribution d);

struct RandomWorkloadSpec {
  Distribution distribution = Distribution::exponential;
  double mean = 1.0;
  int slots = 1;
  std::uint64_t seed = 0;
  // Squared coefficient of variation for the two-phase hyper-exponential,
  // fitted as a balanced-load branch (p = (1 +/- sqrt((scv-1)/(scv+1)))/2,
  // phase means mean/(2p)). Ignored by the other distributions.
  double hyperexp_scv = 4.0;
};

// Deterministic sinusoidal demand over slots t = 1..T with mean 0.2*capacity:
// d_t = (sin(t*2*pi/(3T)) - mean_of_that + 1) * 0.2 * capacity.
WorkloadTrace gen_sinusoidal(int capacity, int slots);

// I.i.d. draws from the named distribution. Reproducible: a fixed spec yields
// a byte-identical trace on every platform (see Rng below).
WorkloadTrace gen_random(const RandomWorkloadSpec& spec);

// Clamp each demand to at most cap. Idempotent.
WorkloadTrace truncate_to_capacity(const WorkloadTrace& trace, double cap);

// CSV with header "slot,demand,slot_size", one row per slot, demands printed
// with 17 significant digits so save/load round-trips exactly.
void save_trace(const WorkloadTrace& trace, const std::string& path);
void save_trace(const WorkloadTrace& trace, std::ostream& out);
WorkloadTrace load_trace(const std::string& path);
WorkloadTrace load_trace(std::istream& in, const std::string& name);

// Portable seedable generator. The engine is std::mt19937_64 (its algorithm
// is pinned by the C++ standard, unlike the standard distributions); seeds
// are pre-scrambled with one splitmix64 step so that nearby stream indices
// (seeds 0..100 for the independent streams) do not yield correlated engine
// states. Uniforms take the top 53 bits; variates use the inverse-CDF
// transforms implemented here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  double uniform01();               // in [0, 1)
  double exponential(double mean);  // inverse CDF: -mean*log(1-u)
  double erlang2(double mean);      // sum of two exponentials, mean/2 each
  double hyperexp2(double mean, double scv);

  static std::uint64_t splitmix64(std::uint64_t x);

 private:
  std::mt19937_64 engine_;
};

}  // namespace fleetplan
