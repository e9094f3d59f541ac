#pragma once

#include <cstddef>

#include "fmodularity/kernels.hpp"

namespace fmodularity::kernels {

namespace scalar {
double sum(const double* x, std::size_t n);
double squared_norm(const double* x, std::size_t n);
double squared_distance(const double* a, const double* b, std::size_t n);
double abs_difference_sum(const double* a, const double* b, std::size_t n);
void null_model_column(const double* row_deg, double col_deg, const double* freq, double edges,
                       double scale, double* out, std::size_t n);
void clamped_ratio(const double* num, const double* den, double floor, double* out,
                   std::size_t n);
void multiplicative_update(double* x, const double* numer, const double* denom, double floor,
                           std::size_t n);
void clamp_below(double* x, double floor, std::size_t n);
double pearson_dual(const double* f, const double* j, const double* d, std::size_t n);
double hellinger_dual(const double* f, const double* j, const double* d, std::size_t n);
double tvd_dual(const double* f, const double* j, const double* d, std::size_t n);
}  // namespace scalar

#if defined(FMODULARITY_HAVE_AVX2)
namespace avx2 {
const KernelTable& table();
}
#endif

}  // namespace fmodularity::kernels
