#pragma once

// f-divergence families, f-divergence and f-mutual information on finite
// joint distributions, and stochastic channels acting on one side of a joint.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "fmodularity/matrix.hpp"

namespace fmodularity {

enum class Family { TVD, KL, Pearson, JensenShannon, SquaredHellinger };

inline constexpr Family kAllFamilies[] = {Family::TVD, Family::KL, Family::Pearson,
                                          Family::JensenShannon, Family::SquaredHellinger};

/// Accepts the short CLI names ("tvd", "kl", "pearson", "js", "hellinger")
/// and a few long spellings. Throws InputError on anything else.
Family parse_family(std::string_view name);
std::string_view family_name(Family family);

/// KL, Pearson, JS and squared Hellinger; TVD's |t-1| has a kink at 1.
bool is_differentiable(Family family);

/// Families whose distinguisher transform involves log D or 1/sqrt(D).
bool requires_positive_distinguisher(Family family);

/// f(t). t = 0 is the right limit. Throws DomainError for t < 0.
double f_value(Family family, double t);

/// The distinguisher transform df(D). TVD returns sgn(log D) with
/// sgn(0) = 0. Pearson accepts D >= 0, every other family D > 0.
double distinguisher_transform(Family family, double d);

/// f*(df(D)), same domain as distinguisher_transform.
double conjugate_transform(Family family, double d);

/// Nonnegative matrix with entries summing to one (within 1e-12).
class DistributionMatrix {
 public:
  static constexpr double kSumTolerance = 1e-12;

  explicit DistributionMatrix(Matrix entries);

  const Matrix& entries() const { return entries_; }
  Eigen::Index rows() const { return entries_.rows(); }
  Eigen::Index cols() const { return entries_.cols(); }
  double operator()(Eigen::Index r, Eigen::Index c) const { return entries_(r, c); }

  Vector row_marginal() const { return entries_.rowwise().sum(); }
  Vector col_marginal() const { return entries_.colwise().sum().transpose(); }

  /// Outer product of the two marginals.
  DistributionMatrix marginal_product() const;
  DistributionMatrix transpose() const;

 private:
  Matrix entries_;
};

/// Column-stochastic kernel K (|out| x |in|): column c is the distribution of
/// the output symbol given input symbol c.
class StochasticChannel {
 public:
  explicit StochasticChannel(Matrix kernel);

  static StochasticChannel identity(std::size_t n);
  /// Sends input symbol i to output symbol image[i].
  static StochasticChannel permutation(const std::vector<std::size_t>& image);

  const Matrix& kernel() const { return kernel_; }
  Eigen::Index inputs() const { return kernel_.cols(); }
  Eigen::Index outputs() const { return kernel_.rows(); }

 private:
  Matrix kernel_;
};

enum class Side { Rows, Cols };

/// rows: K * P; cols: P * K^T.
DistributionMatrix apply_channel(const DistributionMatrix& p, const StochasticChannel& k,
                                 Side side);

/// sum_s q(s) f(p(s)/q(s)). Cells with q = p = 0 contribute nothing; q = 0 < p
/// is an infinite divergence and throws DomainError.
double f_divergence(Family family, const DistributionMatrix& p, const DistributionMatrix& q);

/// Same sum on raw nonnegative matrices (used where q is a null-model matrix
/// that only sums to one approximately).
double f_divergence(Family family, const Matrix& p, const Matrix& q);

/// f-divergence between the joint and the product of its marginals.
double f_mutual_information(Family family, const DistributionMatrix& joint);

}  // namespace fmodularity
