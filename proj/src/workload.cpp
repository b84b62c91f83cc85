#include "fleetplan/workload.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "fleetplan/kernels.hpp"

namespace fleetplan {

int WorkloadTrace::total_base_slots() const {
  int total = 0;
  for (int s : slot_sizes) total += s;
  return total;
}

void WorkloadTrace::validate() const {
  if (demands.empty())
    throw std::invalid_argument("trace must contain at least one slot");
  if (demands.size() != slot_sizes.size())
    throw std::invalid_argument("trace demands/slot_sizes length mismatch");
  if (!(base_slot_minutes > 0))
    throw std::invalid_argument("base_slot_minutes must be positive");
  for (std::size_t i = 0; i < demands.size(); ++i) {
    if (!(demands[i] >= 0) || !std::isfinite(demands[i]))
      throw std::invalid_argument("negative demand at slot " +
                                  std::to_string(i + 1));
    if (slot_sizes[i] < 1)
      throw std::invalid_argument("non-positive slot size at slot " +
                                  std::to_string(i + 1));
  }
}

Distribution distribution_from_name(const std::string& name) {
  if (name == "erlang2") return Distribution::erlang2;
  if (name == "exponential") return Distribution::exponential;
  if (name == "hyperexp2") return Distribution::hyperexp2;
  throw std::invalid_argument("unknown distribution: " + name);
}

std::string distribution_name(Distribution d) {
  switch (d) {
    case Distribution::erlang2: return "erlang2";
    case Distribution::exponential: return "exponential";
    case Distribution::hyperexp2: return "hyperexp2";
  }
  return "?";
}

WorkloadTrace gen_sinusoidal(int capacity, int slots) {
  if (capacity < 1) throw std::invalid_argument("capacity must be >= 1");
  if (slots < 1) throw std::invalid_argument("slots must be >= 1");
  const int T = slots;
  std::vector<double> raw(T);
  for (int t = 1; t <= T; ++t)
    raw[t - 1] = std::sin(t * 2.0 * std::numbers::pi / (3.0 * T));
  const double mean = kernels::sum(raw.data(), raw.size()) / T;
  WorkloadTrace trace;
  trace.demands.resize(T);
  trace.slot_sizes.assign(T, 1);
  for (int t = 0; t < T; ++t)
    trace.demands[t] = (raw[t] - mean + 1.0) * 0.2 * capacity;
  return trace;
}

std::uint64_t Rng::splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

Rng::Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

double Rng::uniform01() {
  return (engine_() >> 11) * 0x1.0p-53;
}

double Rng::exponential(double mean) {
  return -mean * std::log(1.0 - uniform01());
}

double Rng::erlang2(double mean) {
  return exponential(mean / 2.0) + exponential(mean / 2.0);
}

double Rng::hyperexp2(double mean, double scv) {
  if (!(scv >= 1.0))
    throw std::invalid_argument("hyperexp2 scv must be >= 1");
  const double a = std::sqrt((scv - 1.0) / (scv + 1.0));
  const double p1 = 0.5 * (1.0 + a);
  const double u = uniform01();
  const double phase_mean = (u < p1) ? mean / (2.0 * p1) : mean / (2.0 * (1.0 - p1));
  return exponential(phase_mean);
}

WorkloadTrace gen_random(const RandomWorkloadSpec& spec) {
  if (!(spec.mean > 0)) throw std::invalid_argument("mean must be positive");
  if (spec.slots < 1) throw std::invalid_argument("slots must be >= 1");
  Rng rng(spec.seed);
  WorkloadTrace trace;
  trace.demands.resize(spec.slots);
  trace.slot_sizes.assign(spec.slots, 1);
  for (int t = 0; t < spec.slots; ++t) {
    switch (spec.distribution) {
      case Distribution::erlang2:
        trace.demands[t] = rng.erlang2(spec.mean);
        break;
      case Distribution::exponential:
        trace.demands[t] = rng.exponential(spec.mean);
        break;
      case Distribution::hyperexp2:
        trace.demands[t] = rng.hyperexp2(spec.mean, spec.hyperexp_scv);
        break;
    }
  }
  return trace;
}

WorkloadTrace truncate_to_capacity(const WorkloadTrace& trace, double cap) {
  if (!(cap > 0)) throw std::invalid_argument("cap must be positive");
  WorkloadTrace out = trace;
  for (double& d : out.demands) d = std::min(d, cap);
  return out;
}

void save_trace(const WorkloadTrace& trace, std::ostream& out) {
  trace.validate();
  out << "slot,demand,slot_size\n";
  char buf[64];
  for (int t = 0; t < trace.slots(); ++t) {
    std::snprintf(buf, sizeof buf, "%d,%.17g,%d\n", t + 1, trace.demands[t],
                  trace.slot_sizes[t]);
    out << buf;
  }
}

void save_trace(const WorkloadTrace& trace, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  save_trace(trace, f);
  if (!f) throw std::runtime_error("write failed: " + path);
}

namespace {

std::vector<std::string> split_csv_row(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  return fields;
}

[[noreturn]] void row_error(const std::string& name, int row,
                            const std::string& what) {
  throw std::runtime_error(name + ": row " + std::to_string(row) + ": " + what);
}

}  // namespace

WorkloadTrace load_trace(std::istream& in, const std::string& name) {
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error(name + ": trace must contain at least one slot");
  // header row is required but tolerated byte-for-byte or with \r
  if (split_csv_row(line) != std::vector<std::string>{"slot", "demand", "slot_size"})
    throw std::runtime_error(name + ": bad header, expected slot,demand,slot_size");
  WorkloadTrace trace;
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || line == "\r") continue;
    const auto fields = split_csv_row(line);
    if (fields.size() != 3) row_error(name, row, "expected 3 fields");
    try {
      std::size_t pos = 0;
      const double demand = std::stod(fields[1], &pos);
      if (pos != fields[1].size()) throw std::invalid_argument("trailing junk");
      const int size = std::stoi(fields[2]);
      if (!(demand >= 0) || !std::isfinite(demand))
        row_error(name, row, "negative demand");
      if (size < 1) row_error(name, row, "non-positive slot size");
      trace.demands.push_back(demand);
      trace.slot_sizes.push_back(size);
    } catch (const std::invalid_argument&) {
      row_error(name, row, "malformed row: " + line);
    } catch (const std::out_of_range&) {
      row_error(name, row, "value out of range: " + line);
    }
  }
  if (trace.demands.empty())
    throw std::runtime_error(name + ": trace must contain at least one slot");
  trace.validate();
  return trace;
}

WorkloadTrace load_trace(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open: " + path);
  return load_trace(f, path);
}

}  // namespace fleetplan
