#include "kernels_impl.hpp"

#if defined(FMODULARITY_HAVE_AVX2)

#include <immintrin.h>

#include <algorithm>
#include <cmath>

#define FMOD_AVX2 __attribute__((target("avx2")))

namespace fmodularity::kernels::avx2 {
namespace {

FMOD_AVX2 inline double horizontal_sum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d pair = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
}

FMOD_AVX2 inline __m256d abs_pd(__m256d v) {
  return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v);
}

FMOD_AVX2 double sum(const double* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
  double total = horizontal_sum(acc);
  for (; i < n; ++i) total += x[i];
  return total;
}

FMOD_AVX2 double squared_norm(const double* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(x + i);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(v, v));
  }
  double total = horizontal_sum(acc);
  for (; i < n; ++i) total += x[i] * x[i];
  return total;
}

FMOD_AVX2 double squared_distance(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
  }
  double total = horizontal_sum(acc);
  for (; i < n; ++i) {
    const double d = a[i] - b[i];
    total += d * d;
  }
  return total;
}

FMOD_AVX2 double abs_difference_sum(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    acc = _mm256_add_pd(acc, abs_pd(d));
  }
  double total = horizontal_sum(acc);
  for (; i < n; ++i) total += std::fabs(a[i] - b[i]);
  return total;
}

FMOD_AVX2 void null_model_column(const double* row_deg, double col_deg, const double* freq,
                                 double edges, double scale, double* out, std::size_t n) {
  const __m256d c = _mm256_set1_pd(col_deg);
  const __m256d e = _mm256_set1_pd(edges);
  const __m256d s = _mm256_set1_pd(scale);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d prod = _mm256_mul_pd(_mm256_loadu_pd(row_deg + i), c);
    const __m256d bias = _mm256_div_pd(_mm256_loadu_pd(freq + i), e);
    _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_sub_pd(prod, bias), s));
  }
  for (; i < n; ++i) out[i] = (row_deg[i] * col_deg - freq[i] / edges) * scale;
}

// _mm256_max_pd(a, b) returns b unless a > b, which matches std::max(b, a)
// bit for bit (including signed zeros), so the floor goes first.
FMOD_AVX2 void clamped_ratio(const double* num, const double* den, double floor, double* out,
                             std::size_t n) {
  const __m256d fl = _mm256_set1_pd(floor);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_max_pd(fl, _mm256_loadu_pd(den + i));
    _mm256_storeu_pd(out + i, _mm256_div_pd(_mm256_loadu_pd(num + i), d));
  }
  for (; i < n; ++i) out[i] = num[i] / std::max(den[i], floor);
}

FMOD_AVX2 void multiplicative_update(double* x, const double* numer, const double* denom,
                                     double floor, std::size_t n) {
  const __m256d fl = _mm256_set1_pd(floor);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_max_pd(fl, _mm256_loadu_pd(denom + i));
    const __m256d ratio = _mm256_div_pd(_mm256_loadu_pd(numer + i), d);
    _mm256_storeu_pd(x + i, _mm256_mul_pd(_mm256_loadu_pd(x + i), ratio));
  }
  for (; i < n; ++i) x[i] *= numer[i] / std::max(denom[i], floor);
}

FMOD_AVX2 void clamp_below(double* x, double floor, std::size_t n) {
  const __m256d fl = _mm256_set1_pd(floor);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(x + i, _mm256_max_pd(fl, _mm256_loadu_pd(x + i)));
  for (; i < n; ++i) x[i] = std::max(x[i], floor);
}

FMOD_AVX2 double pearson_dual(const double* f, const double* j, const double* d,
                              std::size_t n) {
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d two = _mm256_set1_pd(2.0);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d dv = _mm256_loadu_pd(d + i);
    const __m256d gain = _mm256_mul_pd(_mm256_mul_pd(two, _mm256_sub_pd(dv, one)),
                                       _mm256_loadu_pd(f + i));
    const __m256d cost = _mm256_mul_pd(_mm256_sub_pd(_mm256_mul_pd(dv, dv), one),
                                       _mm256_loadu_pd(j + i));
    acc = _mm256_add_pd(acc, _mm256_sub_pd(gain, cost));
  }
  double total = horizontal_sum(acc);
  for (; i < n; ++i) total += 2.0 * (d[i] - 1.0) * f[i] - (d[i] * d[i] - 1.0) * j[i];
  return total;
}

FMOD_AVX2 double hellinger_dual(const double* f, const double* j, const double* d,
                                std::size_t n) {
  const __m256d one = _mm256_set1_pd(1.0);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d root = _mm256_sqrt_pd(_mm256_loadu_pd(d + i));
    const __m256d gain =
        _mm256_mul_pd(_mm256_sub_pd(one, _mm256_div_pd(one, root)), _mm256_loadu_pd(f + i));
    const __m256d cost = _mm256_mul_pd(_mm256_sub_pd(root, one), _mm256_loadu_pd(j + i));
    acc = _mm256_add_pd(acc, _mm256_sub_pd(gain, cost));
  }
  double total = horizontal_sum(acc);
  for (; i < n; ++i) {
    const double root = std::sqrt(d[i]);
    total += (1.0 - 1.0 / root) * f[i] - (root - 1.0) * j[i];
  }
  return total;
}

FMOD_AVX2 double tvd_dual(const double* f, const double* j, const double* d, std::size_t n) {
  const __m256d one = _mm256_set1_pd(1.0);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d dv = _mm256_loadu_pd(d + i);
    const __m256d up = _mm256_and_pd(_mm256_cmp_pd(dv, one, _CMP_GT_OQ), one);
    const __m256d down = _mm256_and_pd(_mm256_cmp_pd(dv, one, _CMP_LT_OQ), one);
    const __m256d diff = _mm256_sub_pd(_mm256_loadu_pd(f + i), _mm256_loadu_pd(j + i));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_sub_pd(up, down), diff));
  }
  double total = horizontal_sum(acc);
  for (; i < n; ++i) {
    const double sign = d[i] > 1.0 ? 1.0 : (d[i] < 1.0 ? -1.0 : 0.0);
    total += sign * (f[i] - j[i]);
  }
  return total;
}

}  // namespace

const KernelTable& table() {
  static const KernelTable t{
      "avx2",          sum,           squared_norm,          squared_distance,
      abs_difference_sum, null_model_column, clamped_ratio, multiplicative_update,
      clamp_below,     pearson_dual,  hellinger_dual,        tvd_dual,
  };
  return t;
}

}  // namespace fmodularity::kernels::avx2

#endif
