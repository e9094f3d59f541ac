#pragma once

#include <Eigen/Dense>

#include <span>

namespace fmodularity {

// Column-major dense storage; kernels walk the contiguous buffer directly.
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

inline std::span<const double> view(const Matrix& m) {
  return {m.data(), static_cast<std::size_t>(m.size())};
}

inline std::span<double> view(Matrix& m) {
  return {m.data(), static_cast<std::size_t>(m.size())};
}

inline bool same_shape(const Matrix& a, const Matrix& b) {
  return a.rows() == b.rows() && a.cols() == b.cols();
}

}  // namespace fmodularity
