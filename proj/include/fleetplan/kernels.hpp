#pragma once

#include <cstddef>
#include <string>

// Data-parallel inner loops shared by the simplex, the homogeneous DP and the
// aggregation code. Every kernel has a scalar reference implementation and an
// AVX2 variant selected at runtime; the two are equivalence-tested.
//
// Contracts:
//  - sub_scaled, scale, shifted_min values and adjacent_abs_diff are bitwise
//    identical between implementations (purely elementwise arithmetic, no fma).
//  - argmin_first and shifted_min return the lowest index among ties.
//  - sum and max_value may reassociate; callers get reduction-tolerance results.

namespace fleetplan::kernels {

enum class Isa { scalar, avx2 };

// Active implementation. Defaults to the best the CPU supports; the
// FLEETPLAN_KERNELS environment variable ("scalar"/"avx2") overrides.
Isa active();
const char* isa_name(Isa isa);

// Force an implementation (tests). Throws if the CPU lacks support.
void force(Isa isa);
void reset_to_default();

// y[i] -= a * x[i]
void sub_scaled(double* y, const double* x, double a, std::size_t n);

// y[i] *= a
void scale(double* y, double a, std::size_t n);

// out[i] = |x[i+1] - x[i]| for i = 0..n-2 (n >= 1; writes n-1 values)
void adjacent_abs_diff(const double* x, double* out, std::size_t n);

// First index of the minimum value; n >= 1.
std::size_t argmin_first(const double* x, std::size_t n);

double sum(const double* x, std::size_t n);
double max_value(const double* x, std::size_t n);

// min over k of x[k] + up*max(0, p-k) + down*max(0, k-p), with the lowest
// minimizing k. p may lie outside [0, n). n >= 1, up/down >= 0.
struct ShiftedMin {
  double value;
  std::size_t index;
};
ShiftedMin shifted_min(const double* x, std::size_t n, long p, double up,
                       double down);

}  // namespace fleetplan::kernels
