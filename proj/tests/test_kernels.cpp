#include <doctest.h>

#include <cmath>
#include <cstring>
#include <random>
#include <vector>

#include "fmodularity/kernels.hpp"

namespace k = fmodularity::kernels;

namespace {

std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(n);
  for (double& x : v) x = u(rng);
  return v;
}

bool bit_equal(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

// Reductions may associate differently; bound the gap by the magnitude of
// the summed terms.
void check_close(double fast, double ref, double magnitude) {
  CHECK(std::fabs(fast - ref) <= 1e-14 * std::max(1.0, magnitude));
}

const std::size_t kLengths[] = {0, 1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 17, 31, 33, 100, 1003, 40000};

}  // namespace

TEST_CASE("scalar table is always available") {
  CHECK(k::scalar_table().name == "scalar");
  CHECK(!k::active().name.empty());
}

TEST_CASE("avx2 kernels match the scalar reference") {
  const k::KernelTable* fast = k::avx2_table();
  if (fast == nullptr) {
    MESSAGE("AVX2 unavailable on this machine; equivalence not exercised");
    return;
  }
  const k::KernelTable& ref = k::scalar_table();
  std::mt19937_64 rng(7);

  for (std::size_t n : kLengths) {
    CAPTURE(n);
    const auto a = random_vector(rng, n, -3.0, 3.0);
    const auto b = random_vector(rng, n, -3.0, 3.0);
    const auto f = random_vector(rng, n, 0.0, 1.0);
    const auto j = random_vector(rng, n, 0.0, 1.0);
    auto d = random_vector(rng, n, 0.01, 5.0);
    // Exercise the TVD tie and the clamp on exact floor values.
    for (std::size_t i = 0; i < n; i += 5) d[i] = 1.0;

    double mag = 0.0;
    for (double x : a) mag += std::fabs(x) + x * x;
    check_close(fast->sum(a.data(), n), ref.sum(a.data(), n), mag);
    check_close(fast->squared_norm(a.data(), n), ref.squared_norm(a.data(), n), mag);
    check_close(fast->squared_distance(a.data(), b.data(), n),
                ref.squared_distance(a.data(), b.data(), n), 4 * mag + 100.0 * n);
    check_close(fast->abs_difference_sum(a.data(), b.data(), n),
                ref.abs_difference_sum(a.data(), b.data(), n), 6.0 * n);
    check_close(fast->pearson_dual(f.data(), j.data(), d.data(), n),
                ref.pearson_dual(f.data(), j.data(), d.data(), n), 60.0 * n);
    check_close(fast->hellinger_dual(f.data(), j.data(), d.data(), n),
                ref.hellinger_dual(f.data(), j.data(), d.data(), n), 20.0 * n);
    check_close(fast->tvd_dual(f.data(), j.data(), d.data(), n),
                ref.tvd_dual(f.data(), j.data(), d.data(), n), 2.0 * n);

    std::vector<double> out_fast(n), out_ref(n);
    fast->null_model_column(f.data(), 0.37, j.data(), 50.0, 50.0 / 49.0, out_fast.data(), n);
    ref.null_model_column(f.data(), 0.37, j.data(), 50.0, 50.0 / 49.0, out_ref.data(), n);
    CHECK(bit_equal(out_fast, out_ref));

    auto den = j;
    for (std::size_t i = 0; i < n; i += 3) den[i] = 0.0;
    fast->clamped_ratio(f.data(), den.data(), 1e-9, out_fast.data(), n);
    ref.clamped_ratio(f.data(), den.data(), 1e-9, out_ref.data(), n);
    CHECK(bit_equal(out_fast, out_ref));

    auto x_fast = d;
    auto x_ref = d;
    fast->multiplicative_update(x_fast.data(), f.data(), den.data(), 1e-12, n);
    ref.multiplicative_update(x_ref.data(), f.data(), den.data(), 1e-12, n);
    CHECK(bit_equal(x_fast, x_ref));

    auto c_fast = a;
    auto c_ref = a;
    for (std::size_t i = 0; i < n; i += 4) c_fast[i] = c_ref[i] = -0.0;
    fast->clamp_below(c_fast.data(), 0.0, n);
    ref.clamp_below(c_ref.data(), 0.0, n);
    CHECK(bit_equal(c_fast, c_ref));
  }
}

TEST_CASE("span front-ends route through the active table") {
  const std::vector<double> a{1.0, 2.0, 3.0, 4.0, 5.0};
  const std::vector<double> b{1.0, 1.0, 1.0, 1.0, 1.0};
  CHECK(k::sum(a) == doctest::Approx(15.0));
  CHECK(k::squared_norm(a) == doctest::Approx(55.0));
  CHECK(k::squared_distance(a, b) == doctest::Approx(30.0));
  CHECK(k::abs_difference_sum(a, b) == doctest::Approx(10.0));

  std::vector<double> out(5);
  k::clamped_ratio(a, std::vector<double>{2.0, 0.0, 3.0, -1.0, 5.0}, 0.5, out);
  CHECK(out == std::vector<double>{0.5, 4.0, 1.0, 8.0, 1.0});

  std::vector<double> x{1.0, 1.0, 1.0, 1.0, 1.0};
  k::multiplicative_update(x, a, b, 1e-12);
  CHECK(x == a);

  std::vector<double> y{-1.0, 0.5, 2.0};
  k::clamp_below(y, 1.0);
  CHECK(y == std::vector<double>{1.0, 1.0, 2.0});
}

TEST_CASE("tvd dual uses sign 0 at D = 1") {
  const double f[] = {0.5, 0.2, 0.3};
  const double j[] = {0.1, 0.6, 0.3};
  const double d[] = {2.0, 0.5, 1.0};
  // +1 * 0.4 + -1 * -0.4 + 0 * 0
  CHECK(k::scalar_table().tvd_dual(f, j, d, 3) == doctest::Approx(0.8));
}
