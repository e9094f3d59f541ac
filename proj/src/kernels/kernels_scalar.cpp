#include "kernels_impl.hpp"

#include <algorithm>
#include <cmath>

namespace fmodularity::kernels::scalar {

double sum(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i];
  return acc;
}

double squared_norm(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * x[i];
  return acc;
}

double squared_distance(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return acc;
}

double abs_difference_sum(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += std::fabs(a[i] - b[i]);
  return acc;
}

void null_model_column(const double* row_deg, double col_deg, const double* freq, double edges,
                       double scale, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = (row_deg[i] * col_deg - freq[i] / edges) * scale;
}

void clamped_ratio(const double* num, const double* den, double floor, double* out,
                   std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = num[i] / std::max(den[i], floor);
}

void multiplicative_update(double* x, const double* numer, const double* denom, double floor,
                           std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= numer[i] / std::max(denom[i], floor);
}

void clamp_below(double* x, double floor, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] = std::max(x[i], floor);
}

double pearson_dual(const double* f, const double* j, const double* d, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += 2.0 * (d[i] - 1.0) * f[i] - (d[i] * d[i] - 1.0) * j[i];
  }
  return acc;
}

double hellinger_dual(const double* f, const double* j, const double* d, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double root = std::sqrt(d[i]);
    acc += (1.0 - 1.0 / root) * f[i] - (root - 1.0) * j[i];
  }
  return acc;
}

double tvd_dual(const double* f, const double* j, const double* d, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double sign = d[i] > 1.0 ? 1.0 : (d[i] < 1.0 ? -1.0 : 0.0);
    acc += sign * (f[i] - j[i]);
  }
  return acc;
}

}  // namespace fmodularity::kernels::scalar
