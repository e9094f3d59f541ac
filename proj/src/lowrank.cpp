#include "fmodularity/lowrank.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <random>
#include <string>

#include "fmodularity/error.hpp"
#include "fmodularity/kernels.hpp"

namespace fmodularity {
namespace {

void check_rank(const Matrix& m, std::size_t r) {
  const auto limit = static_cast<std::size_t>(std::min(m.rows(), m.cols()));
  if (r < 1 || r > limit) {
    throw InputError("rank " + std::to_string(r) + " out of range [1, " + std::to_string(limit) +
                     "]");
  }
}

// Uniform on (0, 1] from the top 53 bits.
double unit_open_closed(std::mt19937_64& rng) {
  return static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;
}

}  // namespace

const char* method_name(LowRankMethod method) {
  return method == LowRankMethod::Svd ? "svd" : "nmf";
}

Vector singular_values(const Matrix& m) {
  Eigen::BDCSVD<Matrix> svd(m);
  return svd.singularValues();
}

LowRankFactors truncated_svd(const Matrix& m, std::size_t r) {
  check_rank(m, r);
  Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto k = static_cast<Eigen::Index>(r);
  LowRankFactors out;
  out.left = svd.matrixU().leftCols(k) * svd.singularValues().head(k).asDiagonal();
  out.right = svd.matrixV().leftCols(k);
  out.method = LowRankMethod::Svd;
  return out;
}

NmfResult nmf(const Matrix& m, std::size_t r, const NmfOptions& options) {
  check_rank(m, r);
  if ((m.array() < 0.0).any()) throw InputError("nmf: input has a negative entry");
  if (!m.allFinite()) throw InputError("nmf: input has a non-finite entry");

  const auto k = static_cast<Eigen::Index>(r);
  std::mt19937_64 rng(options.seed);
  Matrix w(m.rows(), k);
  Matrix h(m.cols(), k);  // stored transposed: M ~ W H^T
  for (Eigen::Index i = 0; i < w.size(); ++i) w.data()[i] = unit_open_closed(rng);
  for (Eigen::Index i = 0; i < h.size(); ++i) h.data()[i] = unit_open_closed(rng);

  NmfResult result;
  Matrix numer_h, denom_h, numer_w, denom_w, approx;
  double previous = -1.0;
  for (std::size_t it = 0; it < options.max_iterations; ++it) {
    numer_h.noalias() = m.transpose() * w;
    denom_h.noalias() = h * (w.transpose() * w);
    kernels::multiplicative_update(view(h), view(numer_h), view(denom_h), kNmfDenominatorFloor);

    numer_w.noalias() = m * h;
    denom_w.noalias() = w * (h.transpose() * h);
    kernels::multiplicative_update(view(w), view(numer_w), view(denom_w), kNmfDenominatorFloor);

    approx.noalias() = w * h.transpose();
    const double objective = kernels::squared_distance(view(m), view(approx));
    result.objective_history.push_back(objective);
    result.iterations = it + 1;
    if (previous >= 0.0 && std::fabs(previous - objective) <= options.tolerance * previous) break;
    previous = objective;
  }

  result.factors.left = std::move(w);
  result.factors.right = std::move(h);
  result.factors.method = LowRankMethod::Nmf;
  return result;
}

double residual_ratio(const Matrix& m, const Matrix& approx) {
  if (!same_shape(m, approx)) throw InputError("residual_ratio: shape mismatch");
  const double norm = kernels::squared_norm(view(m));
  if (norm == 0.0) throw InputError("residual_ratio: reference matrix is zero");
  return kernels::squared_distance(view(m), view(approx)) / norm;
}

std::size_t select_rank_from_spectrum(const Vector& singular, double theta) {
  if (!(theta > 0.0) || theta > 1.0) throw InputError("theta must lie in (0, 1]");
  const Vector energy = singular.array().square();
  const double total = energy.sum();
  if (!(total > 0.0)) throw InputError("rank selection on a zero matrix");
  // Tail sums from the back so small tails are not lost to cancellation.
  std::vector<double> tail(static_cast<std::size_t>(energy.size()) + 1, 0.0);
  for (Eigen::Index i = energy.size(); i-- > 0;) {
    tail[static_cast<std::size_t>(i)] = tail[static_cast<std::size_t>(i) + 1] + energy(i);
  }
  for (std::size_t k = 1; k <= static_cast<std::size_t>(energy.size()); ++k) {
    if (tail[k] / total < theta) return k;
  }
  return static_cast<std::size_t>(energy.size());
}

std::size_t select_rank(const Matrix& m, double theta) {
  return select_rank_from_spectrum(singular_values(m), theta);
}

}  // namespace fmodularity
