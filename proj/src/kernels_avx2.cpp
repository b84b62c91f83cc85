// AVX2 kernel variants. Compiled with -mavx2 only in this translation unit;
// callers reach these through the runtime dispatch in kernels.cpp.
//
// Elementwise kernels mirror the scalar expression exactly (mul+add, never
// fma) so results stay bitwise identical to the reference implementation.

#if defined(__x86_64__)

#include <immintrin.h>

#include <cmath>
#include <cstddef>

#include "fleetplan/kernels.hpp"

namespace fleetplan::kernels::detail {

void sub_scaled_avx2(double* y, const double* x, double a, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d vy = _mm256_loadu_pd(y + i);
    const __m256d vx = _mm256_loadu_pd(x + i);
    _mm256_storeu_pd(y + i, _mm256_sub_pd(vy, _mm256_mul_pd(va, vx)));
  }
  for (; i < n; ++i) y[i] -= a * x[i];
}

void scale_avx2(double* y, double a, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(y + i, _mm256_mul_pd(_mm256_loadu_pd(y + i), va));
  for (; i < n; ++i) y[i] *= a;
}

void adjacent_abs_diff_avx2(const double* x, double* out, std::size_t n) {
  if (n < 2) return;
  const __m256d signmask = _mm256_set1_pd(-0.0);
  const std::size_t m = n - 1;
  std::size_t i = 0;
  for (; i + 4 <= m; i += 4) {
    const __m256d d =
        _mm256_sub_pd(_mm256_loadu_pd(x + i + 1), _mm256_loadu_pd(x + i));
    _mm256_storeu_pd(out + i, _mm256_andnot_pd(signmask, d));
  }
  for (; i < m; ++i) out[i] = std::fabs(x[i + 1] - x[i]);
}

namespace {

double hmin(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d m2 = _mm_min_pd(lo, hi);
  const __m128d m1 = _mm_min_sd(m2, _mm_unpackhi_pd(m2, m2));
  return _mm_cvtsd_f64(m1);
}

double hmax(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d m2 = _mm_max_pd(lo, hi);
  const __m128d m1 = _mm_max_sd(m2, _mm_unpackhi_pd(m2, m2));
  return _mm_cvtsd_f64(m1);
}

}  // namespace

std::size_t argmin_first_avx2(const double* x, std::size_t n) {
  if (n < 8) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < n; ++i)
      if (x[i] < x[best]) best = i;
    return best;
  }
  __m256d vmin = _mm256_loadu_pd(x);
  std::size_t i = 4;
  for (; i + 4 <= n; i += 4) vmin = _mm256_min_pd(vmin, _mm256_loadu_pd(x + i));
  double m = hmin(vmin);
  for (; i < n; ++i)
    if (x[i] < m) m = x[i];
  for (std::size_t k = 0; k < n; ++k)
    if (x[k] == m) return k;
  return 0;  // unreachable for finite inputs
}

double sum_avx2(const double* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
  double lanes[4];
  _mm256_storeu_pd(lanes, acc);
  double s = lanes[0] + lanes[1] + lanes[2] + lanes[3];
  for (; i < n; ++i) s += x[i];
  return s;
}

double max_value_avx2(const double* x, std::size_t n) {
  if (n < 8) {
    double m = x[0];
    for (std::size_t i = 1; i < n; ++i)
      if (x[i] > m) m = x[i];
    return m;
  }
  __m256d vmax = _mm256_loadu_pd(x);
  std::size_t i = 4;
  for (; i + 4 <= n; i += 4) vmax = _mm256_max_pd(vmax, _mm256_loadu_pd(x + i));
  double m = hmax(vmax);
  for (; i < n; ++i)
    if (x[i] > m) m = x[i];
  return m;
}

ShiftedMin shifted_min_avx2(const double* x, std::size_t n, long p, double up,
                            double down) {
  const __m256d vzero = _mm256_setzero_pd();
  const __m256d vup = _mm256_set1_pd(up);
  const __m256d vdown = _mm256_set1_pd(down);
  const __m256d vp = _mm256_set1_pd(static_cast<double>(p));
  const __m256d step = _mm256_set1_pd(4.0);
  __m256d vk = _mm256_set_pd(3.0, 2.0, 1.0, 0.0);
  __m256d vmin = _mm256_set1_pd(HUGE_VAL);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d delta = _mm256_sub_pd(vk, vp);
    const __m256d t1 =
        _mm256_mul_pd(vup, _mm256_max_pd(vzero, _mm256_sub_pd(vzero, delta)));
    const __m256d t2 = _mm256_mul_pd(vdown, _mm256_max_pd(vzero, delta));
    const __m256d v =
        _mm256_add_pd(_mm256_add_pd(_mm256_loadu_pd(x + i), t1), t2);
    vmin = _mm256_min_pd(vmin, v);
    vk = _mm256_add_pd(vk, step);
  }
  double best = (i > 0) ? hmin(vmin) : HUGE_VAL;
  auto value_at = [&](std::size_t k) {
    const double delta = static_cast<double>(static_cast<long>(k) - p);
    return x[k] + up * std::fmax(0.0, -delta) + down * std::fmax(0.0, delta);
  };
  for (std::size_t k = i; k < n; ++k) {
    const double v = value_at(k);
    if (v < best) best = v;
  }
  for (std::size_t k = 0; k < n; ++k)
    if (value_at(k) == best) return {best, k};
  return {best, 0};  // unreachable for finite inputs
}

}  // namespace fleetplan::kernels::detail

#endif  // __x86_64__
