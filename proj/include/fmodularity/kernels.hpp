#pragma once

// Data-parallel inner loops over flat matrix buffers.
//
// Every kernel has a scalar reference implementation and, on x86-64, an AVX2
// variant. The active table is chosen once at first use from CPUID; set
// FMODULARITY_KERNELS=scalar in the environment to pin the reference path.
//
// Elementwise kernels produce bit-identical output across variants (no FMA,
// same operation order per element). Reductions differ only in summation
// order.

#include <cstddef>
#include <span>
#include <string_view>

namespace fmodularity::kernels {

struct KernelTable {
  std::string_view name;

  double (*sum)(const double* x, std::size_t n);
  double (*squared_norm)(const double* x, std::size_t n);
  // sum (a - b)^2
  double (*squared_distance)(const double* a, const double* b, std::size_t n);
  // sum |a - b|
  double (*abs_difference_sum)(const double* a, const double* b, std::size_t n);

  // out[i] = (row_deg[i] * col_deg - freq[i] / edges) * scale
  void (*null_model_column)(const double* row_deg, double col_deg, const double* freq,
                            double edges, double scale, double* out, std::size_t n);
  // out[i] = num[i] / max(den[i], floor)
  void (*clamped_ratio)(const double* num, const double* den, double floor, double* out,
                        std::size_t n);
  // x[i] *= numer[i] / max(denom[i], floor)
  void (*multiplicative_update)(double* x, const double* numer, const double* denom,
                                double floor, std::size_t n);
  // x[i] = max(x[i], floor)
  void (*clamp_below)(double* x, double floor, std::size_t n);

  // Dual objectives sum_i [g(d_i) f_i - g*(d_i) j_i] for families whose
  // transforms need no logarithm.
  double (*pearson_dual)(const double* f, const double* j, const double* d, std::size_t n);
  double (*hellinger_dual)(const double* f, const double* j, const double* d, std::size_t n);
  double (*tvd_dual)(const double* f, const double* j, const double* d, std::size_t n);
};

const KernelTable& scalar_table();

// nullptr when the AVX2 translation unit was not built or the CPU lacks AVX2.
const KernelTable* avx2_table();

const KernelTable& active();

// Span front-ends over active().
double sum(std::span<const double> x);
double squared_norm(std::span<const double> x);
double squared_distance(std::span<const double> a, std::span<const double> b);
double abs_difference_sum(std::span<const double> a, std::span<const double> b);
void clamped_ratio(std::span<const double> num, std::span<const double> den, double floor,
                   std::span<double> out);
void multiplicative_update(std::span<double> x, std::span<const double> numer,
                           std::span<const double> denom, double floor);
void clamp_below(std::span<double> x, double floor);

}  // namespace fmodularity::kernels
