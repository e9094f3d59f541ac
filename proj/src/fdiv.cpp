#include "fmodularity/fdiv.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "fmodularity/error.hpp"

namespace fmodularity {
namespace {

std::string lowercase(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

[[noreturn]] void domain_failure(Family family, const char* what, double value) {
  std::ostringstream msg;
  msg << family_name(family) << ": " << what << " outside domain (" << value << ")";
  throw DomainError(msg.str());
}

void check_distinguisher(Family family, double d) {
  if (std::isnan(d)) domain_failure(family, "distinguisher", d);
  if (family == Family::Pearson) {
    if (d < 0.0) domain_failure(family, "distinguisher", d);
  } else if (d <= 0.0) {
    domain_failure(family, "distinguisher", d);
  }
}

}  // namespace

Family parse_family(std::string_view name) {
  const std::string key = lowercase(name);
  if (key == "tvd" || key == "total-variation") return Family::TVD;
  if (key == "kl" || key == "shannon") return Family::KL;
  if (key == "pearson" || key == "chi2") return Family::Pearson;
  if (key == "js" || key == "jensen-shannon" || key == "jensenshannon") {
    return Family::JensenShannon;
  }
  if (key == "hellinger" || key == "squared-hellinger" || key == "squaredhellinger") {
    return Family::SquaredHellinger;
  }
  throw InputError("unknown divergence family '" + std::string(name) + "'");
}

std::string_view family_name(Family family) {
  switch (family) {
    case Family::TVD: return "tvd";
    case Family::KL: return "kl";
    case Family::Pearson: return "pearson";
    case Family::JensenShannon: return "js";
    case Family::SquaredHellinger: return "hellinger";
  }
  return "?";
}

bool is_differentiable(Family family) { return family != Family::TVD; }

bool requires_positive_distinguisher(Family family) { return family != Family::Pearson; }

double f_value(Family family, double t) {
  if (!(t >= 0.0)) domain_failure(family, "argument", t);
  switch (family) {
    case Family::TVD: return std::fabs(t - 1.0);
    case Family::KL: return t == 0.0 ? 0.0 : t * std::log(t);
    case Family::Pearson: return (t - 1.0) * (t - 1.0);
    case Family::JensenShannon: {
      const double self = t == 0.0 ? 0.0 : t * std::log(t);
      return -(t + 1.0) * std::log((t + 1.0) / 2.0) + self;
    }
    case Family::SquaredHellinger: {
      const double r = std::sqrt(t) - 1.0;
      return r * r;
    }
  }
  return 0.0;
}

double distinguisher_transform(Family family, double d) {
  check_distinguisher(family, d);
  switch (family) {
    case Family::TVD: return d > 1.0 ? 1.0 : (d < 1.0 ? -1.0 : 0.0);
    case Family::KL: return std::log(d) + 1.0;
    case Family::Pearson: return 2.0 * (d - 1.0);
    case Family::JensenShannon: return std::log(2.0 * d / (1.0 + d));
    case Family::SquaredHellinger: return 1.0 - std::sqrt(1.0 / d);
  }
  return 0.0;
}

double conjugate_transform(Family family, double d) {
  check_distinguisher(family, d);
  switch (family) {
    case Family::TVD: return d > 1.0 ? 1.0 : (d < 1.0 ? -1.0 : 0.0);
    case Family::KL: return d;
    case Family::Pearson: return d * d - 1.0;
    case Family::JensenShannon: return -std::log(2.0 / (1.0 + d));
    case Family::SquaredHellinger: return std::sqrt(d) - 1.0;
  }
  return 0.0;
}

DistributionMatrix::DistributionMatrix(Matrix entries) : entries_(std::move(entries)) {
  if (entries_.size() == 0) throw InputError("distribution matrix is empty");
  for (Eigen::Index i = 0; i < entries_.size(); ++i) {
    const double x = entries_.data()[i];
    if (!std::isfinite(x) || x < 0.0) {
      throw InputError("distribution matrix has a negative or non-finite entry");
    }
  }
  const double total = entries_.sum();
  if (std::fabs(total - 1.0) > kSumTolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "distribution matrix sums to " << total << ", not 1";
    throw InputError(msg.str());
  }
}

DistributionMatrix DistributionMatrix::marginal_product() const {
  return DistributionMatrix(row_marginal() * col_marginal().transpose());
}

DistributionMatrix DistributionMatrix::transpose() const {
  return DistributionMatrix(entries_.transpose());
}

StochasticChannel::StochasticChannel(Matrix kernel) : kernel_(std::move(kernel)) {
  if (kernel_.size() == 0) throw InputError("channel kernel is empty");
  if ((kernel_.array() < 0.0).any() || !kernel_.allFinite()) {
    throw InputError("channel kernel has a negative or non-finite entry");
  }
  for (Eigen::Index c = 0; c < kernel_.cols(); ++c) {
    if (std::fabs(kernel_.col(c).sum() - 1.0) > 1e-12) {
      throw InputError("channel kernel column " + std::to_string(c) + " does not sum to 1");
    }
  }
}

StochasticChannel StochasticChannel::identity(std::size_t n) {
  const auto size = static_cast<Eigen::Index>(n);
  return StochasticChannel(Matrix::Identity(size, size));
}

StochasticChannel StochasticChannel::permutation(const std::vector<std::size_t>& image) {
  const auto n = static_cast<Eigen::Index>(image.size());
  Matrix k = Matrix::Zero(n, n);
  for (Eigen::Index c = 0; c < n; ++c) {
    const auto target = image[static_cast<std::size_t>(c)];
    if (target >= image.size()) throw InputError("permutation image out of range");
    k(static_cast<Eigen::Index>(target), c) = 1.0;
  }
  if ((k.rowwise().sum().array() != 1.0).any()) throw InputError("image is not a permutation");
  return StochasticChannel(std::move(k));
}

DistributionMatrix apply_channel(const DistributionMatrix& p, const StochasticChannel& k,
                                 Side side) {
  if (side == Side::Rows) {
    if (k.inputs() != p.rows()) throw InputError("channel input size does not match rows");
    return DistributionMatrix(k.kernel() * p.entries());
  }
  if (k.inputs() != p.cols()) throw InputError("channel input size does not match columns");
  return DistributionMatrix(p.entries() * k.kernel().transpose());
}

double f_divergence(Family family, const Matrix& p, const Matrix& q) {
  if (!same_shape(p, q)) throw InputError("f_divergence: shape mismatch");
  double total = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    const double pi = p.data()[i];
    const double qi = q.data()[i];
    if (pi < 0.0 || qi < 0.0) throw InputError("f_divergence: negative mass");
    if (qi == 0.0) {
      if (pi > 0.0) throw DomainError("infinite divergence: positive mass where q = 0");
      continue;
    }
    total += qi * f_value(family, pi / qi);
  }
  return total;
}

double f_divergence(Family family, const DistributionMatrix& p, const DistributionMatrix& q) {
  return f_divergence(family, p.entries(), q.entries());
}

double f_mutual_information(Family family, const DistributionMatrix& joint) {
  const Vector rows = joint.row_marginal();
  const Vector cols = joint.col_marginal();
  return f_divergence(family, joint.entries(), Matrix(rows * cols.transpose()));
}

}  // namespace fmodularity
