#include <cassert>
#include <cstdlib>
#include <string_view>

#include "kernels_impl.hpp"

namespace fmodularity::kernels {

const KernelTable& scalar_table() {
  static const KernelTable t{
      "scalar",
      scalar::sum,
      scalar::squared_norm,
      scalar::squared_distance,
      scalar::abs_difference_sum,
      scalar::null_model_column,
      scalar::clamped_ratio,
      scalar::multiplicative_update,
      scalar::clamp_below,
      scalar::pearson_dual,
      scalar::hellinger_dual,
      scalar::tvd_dual,
  };
  return t;
}

const KernelTable* avx2_table() {
#if defined(FMODULARITY_HAVE_AVX2)
  if (__builtin_cpu_supports("avx2")) return &avx2::table();
#endif
  return nullptr;
}

const KernelTable& active() {
  static const KernelTable& chosen = [&]() -> const KernelTable& {
    const char* pin = std::getenv("FMODULARITY_KERNELS");
    if (pin != nullptr && std::string_view(pin) == "scalar") return scalar_table();
    if (const KernelTable* fast = avx2_table()) return *fast;
    return scalar_table();
  }();
  return chosen;
}

double sum(std::span<const double> x) { return active().sum(x.data(), x.size()); }

double squared_norm(std::span<const double> x) {
  return active().squared_norm(x.data(), x.size());
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  return active().squared_distance(a.data(), b.data(), a.size());
}

double abs_difference_sum(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  return active().abs_difference_sum(a.data(), b.data(), a.size());
}

void clamped_ratio(std::span<const double> num, std::span<const double> den, double floor,
                   std::span<double> out) {
  assert(num.size() == den.size() && num.size() == out.size());
  active().clamped_ratio(num.data(), den.data(), floor, out.data(), out.size());
}

void multiplicative_update(std::span<double> x, std::span<const double> numer,
                           std::span<const double> denom, double floor) {
  assert(x.size() == numer.size() && x.size() == denom.size());
  active().multiplicative_update(x.data(), numer.data(), denom.data(), floor, x.size());
}

void clamp_below(std::span<double> x, double floor) {
  active().clamp_below(x.data(), floor, x.size());
}

}  // namespace fmodularity::kernels
