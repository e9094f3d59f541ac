#pragma once

// Rank-r approximations of the distinguisher matrix: truncated SVD, NMF with
// multiplicative updates, Frobenius residual ratios and threshold-based rank
// selection.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "fmodularity/matrix.hpp"

namespace fmodularity {

enum class LowRankMethod { Svd, Nmf };

const char* method_name(LowRankMethod method);

/// left * right^T approximates the source matrix.
struct LowRankFactors {
  Matrix left;   // |U| x r
  Matrix right;  // |V| x r
  LowRankMethod method = LowRankMethod::Svd;

  std::size_t rank() const { return static_cast<std::size_t>(left.cols()); }
  Matrix reconstruct() const { return left * right.transpose(); }
};

/// Singular values in non-increasing order.
Vector singular_values(const Matrix& m);

/// Best rank-r approximation in Frobenius norm. The left factor carries the
/// singular values. Requires 1 <= r <= min(rows, cols).
LowRankFactors truncated_svd(const Matrix& m, std::size_t r);

struct NmfOptions {
  std::size_t max_iterations = 500;
  double tolerance = 1e-6;  // stop on relative objective change below this
  std::uint64_t seed = 0;
};

struct NmfResult {
  LowRankFactors factors;
  /// ||M - W H||_F^2 after each completed iteration.
  std::vector<double> objective_history;
  std::size_t iterations = 0;
};

/// Denominator floor in the multiplicative updates.
inline constexpr double kNmfDenominatorFloor = 1e-12;

/// Lee-Seung multiplicative updates for min ||M - W H^T||_F^2 over W, H >= 0,
/// initialized uniformly on (0, 1] from `seed`.
NmfResult nmf(const Matrix& m, std::size_t r, const NmfOptions& options = {});

/// ||M - M_k||_F^2 / ||M||_F^2. Throws InputError if M is all zero.
double residual_ratio(const Matrix& m, const Matrix& approx);

/// Smallest k >= 1 with sum_{i>k} s_i^2 / sum_i s_i^2 < theta.
std::size_t select_rank_from_spectrum(const Vector& singular, double theta);
std::size_t select_rank(const Matrix& m, double theta);

}  // namespace fmodularity
