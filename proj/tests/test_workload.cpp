#include <stdexcept>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "fleetplan/workload.hpp"

using namespace fleetplan;

namespace {

double sample_mean(const std::vector<double>& xs) {
  double s = 0;
  for (double x : xs) s += x;
  return s / xs.size();
}

double sample_scv(const std::vector<double>& xs) {
  const double m = sample_mean(xs);
  double v = 0;
  for (double x : xs) v += (x - m) * (x - m);
  v /= xs.size();
  return v / (m * m);
}

}  // namespace

TEST_SUITE("workload") {

TEST_CASE("sinusoidal trace has mean 0.2*capacity") {
  for (auto [cap, slots] : {std::pair{100, 96}, {50, 96}, {100, 60}, {7, 13}}) {
    const auto trace = gen_sinusoidal(cap, slots);
    REQUIRE(trace.slots() == slots);
    const double want = 0.2 * cap;
    CHECK(sample_mean(trace.demands) ==
          doctest::Approx(want).epsilon(1e-9));
    for (int s : trace.slot_sizes) CHECK(s == 1);
  }
}

TEST_CASE("sinusoidal peak sits at slot 72 for T=96") {
  const auto trace = gen_sinusoidal(100, 96);
  int argmax = 0;
  for (int t = 1; t < 96; ++t)
    if (trace.demands[t] > trace.demands[argmax]) argmax = t;
  CHECK(argmax + 1 == 72);  // sin reaches 1 at 90 degrees
}

TEST_CASE("sinusoidal final slot matches direct evaluation") {
  // independent evaluation of the defining formula at t = 96
  const int T = 96, I = 100;
  double mean = 0.0;
  for (int t = 1; t <= T; ++t)
    mean += std::sin(t * 2.0 * std::numbers::pi / (3.0 * T));
  mean /= T;
  const double raw96 = std::sin(96 * 2.0 * std::numbers::pi / (3.0 * T));
  CHECK(raw96 == doctest::Approx(0.86603).epsilon(1e-5));
  const double expected = (raw96 - mean + 1.0) * 0.2 * I;
  const auto trace = gen_sinusoidal(I, T);
  CHECK(trace.demands[95] == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("exponential sample mean within 1%") {
  const auto trace =
      gen_random({Distribution::exponential, 20.0, 100000, 42});
  CHECK(sample_mean(trace.demands) == doctest::Approx(20.0).epsilon(0.01));
}

TEST_CASE("erlang2 squared coefficient of variation near 1/2") {
  const auto trace = gen_random({Distribution::erlang2, 20.0, 100000, 42});
  CHECK(sample_scv(trace.demands) == doctest::Approx(0.5).epsilon(0.05));
  CHECK(sample_mean(trace.demands) == doctest::Approx(20.0).epsilon(0.02));
}

TEST_CASE("hyperexp2 is bursty with the configured scv") {
  const auto trace = gen_random({Distribution::hyperexp2, 20.0, 200000, 42});
  CHECK(sample_mean(trace.demands) == doctest::Approx(20.0).epsilon(0.03));
  CHECK(sample_scv(trace.demands) == doctest::Approx(4.0).epsilon(0.15));
}

TEST_CASE("generators are deterministic in the seed") {
  const RandomWorkloadSpec spec{Distribution::hyperexp2, 20.0, 500, 7};
  CHECK(gen_random(spec) == gen_random(spec));
  RandomWorkloadSpec other = spec;
  other.seed = 8;
  CHECK(gen_random(spec) != gen_random(other));
}

TEST_CASE("truncate_to_capacity clamps and is idempotent") {
  WorkloadTrace t;
  t.demands = {5, 150, 80};
  t.slot_sizes = {1, 1, 1};
  const auto clipped = truncate_to_capacity(t, 100);
  CHECK(clipped.demands == std::vector<double>{5, 100, 80});
  CHECK(truncate_to_capacity(clipped, 100) == clipped);

  WorkloadTrace all_low;
  all_low.demands = {1, 2, 3};
  all_low.slot_sizes = {1, 1, 1};
  CHECK(truncate_to_capacity(all_low, 10) == all_low);

  WorkloadTrace zero;
  zero.demands = {0};
  zero.slot_sizes = {1};
  CHECK(truncate_to_capacity(zero, 1).demands == std::vector<double>{0});
}

TEST_CASE("trace csv round-trips exactly") {
  const auto trace = gen_sinusoidal(100, 96);
  std::ostringstream out;
  save_trace(trace, out);
  std::istringstream in(out.str());
  const auto loaded = load_trace(in, "mem");
  CHECK(loaded == trace);
}

TEST_CASE("trace csv errors name the offending row") {
  {
    std::istringstream in("slot,demand,slot_size\n1,5.0,1\n2,-1,1\n");
    CHECK_THROWS_WITH_AS(load_trace(in, "t"),
                         doctest::Contains("row 3"), std::runtime_error);
  }
  {
    std::istringstream in("slot,demand,slot_size\n1,5.0,0\n");
    CHECK_THROWS_WITH_AS(load_trace(in, "t"),
                         doctest::Contains("non-positive slot size"),
                         std::runtime_error);
  }
  {
    std::istringstream in("slot,demand,slot_size\n1,abc,1\n");
    CHECK_THROWS_WITH_AS(load_trace(in, "t"), doctest::Contains("malformed"),
                         std::runtime_error);
  }
  {
    std::istringstream in("");
    CHECK_THROWS_WITH_AS(load_trace(in, "t"),
                         doctest::Contains("at least one slot"),
                         std::runtime_error);
  }
}

TEST_CASE("spec validation errors") {
  CHECK_THROWS_AS(gen_random({Distribution::exponential, -1.0, 10, 0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(distribution_from_name("weibull"), std::invalid_argument);
  CHECK_THROWS_AS(gen_sinusoidal(0, 96), std::invalid_argument);
  WorkloadTrace bad;
  bad.demands = {1.0};
  bad.slot_sizes = {1};
  CHECK_THROWS_AS(truncate_to_capacity(bad, 0.0), std::invalid_argument);
}

}  // TEST_SUITE
