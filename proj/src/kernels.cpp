#include "fleetplan/kernels.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace fleetplan::kernels {

namespace detail {

// scalar reference implementations

void sub_scaled_scalar(double* y, const double* x, double a, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] -= a * x[i];
}

void scale_scalar(double* y, double a, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] *= a;
}

void adjacent_abs_diff_scalar(const double* x, double* out, std::size_t n) {
  for (std::size_t i = 0; i + 1 < n; ++i) out[i] = std::fabs(x[i + 1] - x[i]);
}

std::size_t argmin_first_scalar(const double* x, std::size_t n) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < n; ++i)
    if (x[i] < x[best]) best = i;
  return best;
}

double sum_scalar(const double* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i];
  return s;
}

double max_value_scalar(const double* x, std::size_t n) {
  double m = x[0];
  for (std::size_t i = 1; i < n; ++i)
    if (x[i] > m) m = x[i];
  return m;
}

ShiftedMin shifted_min_scalar(const double* x, std::size_t n, long p, double up,
                              double down) {
  double best = 0.0;
  std::size_t arg = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double delta = static_cast<double>(static_cast<long>(k) - p);
    const double v =
        x[k] + up * std::fmax(0.0, -delta) + down * std::fmax(0.0, delta);
    if (k == 0 || v < best) {
      best = v;
      arg = k;
    }
  }
  return {best, arg};
}

#if defined(__x86_64__)
void sub_scaled_avx2(double* y, const double* x, double a, std::size_t n);
void scale_avx2(double* y, double a, std::size_t n);
void adjacent_abs_diff_avx2(const double* x, double* out, std::size_t n);
std::size_t argmin_first_avx2(const double* x, std::size_t n);
double sum_avx2(const double* x, std::size_t n);
double max_value_avx2(const double* x, std::size_t n);
ShiftedMin shifted_min_avx2(const double* x, std::size_t n, long p, double up,
                            double down);
#endif

bool cpu_has_avx2() {
#if defined(__x86_64__)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Isa detect() {
  if (const char* env = std::getenv("FLEETPLAN_KERNELS")) {
    const std::string s(env);
    if (s == "scalar") return Isa::scalar;
    if (s == "avx2") {
      if (!cpu_has_avx2())
        throw std::runtime_error("FLEETPLAN_KERNELS=avx2 but CPU lacks AVX2");
      return Isa::avx2;
    }
  }
  return cpu_has_avx2() ? Isa::avx2 : Isa::scalar;
}

Isa& current() {
  static Isa isa = detect();
  return isa;
}

}  // namespace detail

Isa active() { return detail::current(); }

const char* isa_name(Isa isa) {
  return isa == Isa::avx2 ? "avx2" : "scalar";
}

void force(Isa isa) {
  if (isa == Isa::avx2 && !detail::cpu_has_avx2())
    throw std::runtime_error("CPU lacks AVX2 support");
  detail::current() = isa;
}

void reset_to_default() { detail::current() = detail::detect(); }

void sub_scaled(double* y, const double* x, double a, std::size_t n) {
#if defined(__x86_64__)
  if (active() == Isa::avx2) return detail::sub_scaled_avx2(y, x, a, n);
#endif
  detail::sub_scaled_scalar(y, x, a, n);
}

void scale(double* y, double a, std::size_t n) {
#if defined(__x86_64__)
  if (active() == Isa::avx2) return detail::scale_avx2(y, a, n);
#endif
  detail::scale_scalar(y, a, n);
}

void adjacent_abs_diff(const double* x, double* out, std::size_t n) {
#if defined(__x86_64__)
  if (active() == Isa::avx2) return detail::adjacent_abs_diff_avx2(x, out, n);
#endif
  detail::adjacent_abs_diff_scalar(x, out, n);
}

std::size_t argmin_first(const double* x, std::size_t n) {
#if defined(__x86_64__)
  if (active() == Isa::avx2) return detail::argmin_first_avx2(x, n);
#endif
  return detail::argmin_first_scalar(x, n);
}

double sum(const double* x, std::size_t n) {
#if defined(__x86_64__)
  if (active() == Isa::avx2) return detail::sum_avx2(x, n);
#endif
  return detail::sum_scalar(x, n);
}

double max_value(const double* x, std::size_t n) {
#if defined(__x86_64__)
  if (active() == Isa::avx2) return detail::max_value_avx2(x, n);
#endif
  return detail::max_value_scalar(x, n);
}

ShiftedMin shifted_min(const double* x, std::size_t n, long p, double up,
                       double down) {
#if defined(__x86_64__)
  if (active() == Isa::avx2) return detail::shifted_min_avx2(x, n, p, up, down);
#endif
  return detail::shifted_min_scalar(x, n, p, up, down);
}

}  // namespace fleetplan::kernels
