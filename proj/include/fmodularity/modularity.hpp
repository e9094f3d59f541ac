#pragma once

// f-modularity: the dual objective, the low-rank plug-in estimator, and the
// TVD / Newman special cases.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include <json.hpp>

#include "fmodularity/fdiv.hpp"
#include "fmodularity/lowrank.hpp"
#include "fmodularity/matrix.hpp"
#include "fmodularity/netcore.hpp"

namespace fmodularity {

enum class MethodChoice { Svd, Nmf, Auto };

MethodChoice parse_method(const std::string& name);
const char* method_choice_name(MethodChoice method);

struct EstimatorConfig {
  Family family = Family::JensenShannon;
  double theta = 0.9;
  double epsilon = 1e-9;
  std::optional<std::size_t> rank_override;
  MethodChoice method = MethodChoice::Auto;
  NmfOptions nmf;  // nmf.seed is overwritten by `seed`
  std::uint64_t seed = 0;
};

/// Auto picks SVD for Pearson (no sign constraint on D) and NMF otherwise.
LowRankMethod resolve_method(const EstimatorConfig& config);

/// Lower clamp applied to D_r for families that need D > 0.
inline constexpr double kDistinguisherFloor = 1e-9;

/// Clamp used for `family`: 0 for Pearson, the square of the floor for
/// squared Hellinger (its conjugate term sqrt(D) would otherwise move the
/// objective by sqrt(floor) per unit of J), kDistinguisherFloor otherwise.
double distinguisher_floor(Family family);

struct DistinguisherStats {
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
};

struct ModularityReport {
  double value = 0.0;
  std::size_t rank_used = 0;
  double residual_ratio = 0.0;
  Family family = Family::JensenShannon;
  LowRankMethod method = LowRankMethod::Nmf;
  DistinguisherStats distinguisher_stats;
  bool fallback_applied = false;
};

/// sum_{u,v} [df(D) F - f*(df(D)) J]. Throws DomainError when an entry of D
/// is outside the family's domain.
double dual_objective(Family family, const Matrix& f, const Matrix& j, const Matrix& d);

/// D*(u, v) = F(u, v) / max(J(u, v), epsilon).
Matrix optimal_distinguisher(const Matrix& f, const Matrix& j, double epsilon);

/// Low-rank plug-in estimate of the f-modularity of a graph:
/// null model, optimal distinguisher, rank selection on its spectrum, rank-r
/// approximation, and the dual objective at the approximation. The reported
/// value is clamped at zero (the all-ones distinguisher scores exactly 0).
/// TVD uses the sign distinguisher sgn(F - J) directly.
ModularityReport f_modularity(const FrequencyMatrix& fm, const EstimatorConfig& config);

/// max over S in {-1, 1}^{|U| x |V|} of sum S (F - J), i.e. sum |F - J|.
double tvd_modularity_unconstrained(const Matrix& f, const Matrix& j);

/// Community labels for both sides of a bipartite graph. Labels are
/// contiguous from 0 across the union of both sides.
class Partition {
 public:
  Partition(std::vector<std::size_t> u_labels, std::vector<std::size_t> v_labels);

  /// Same labels on u_i and v_i (graphs induced from a non-bipartite network).
  static Partition mirrored(std::vector<std::size_t> labels);

  const std::vector<std::size_t>& u_labels() const { return u_; }
  const std::vector<std::size_t>& v_labels() const { return v_; }
  std::size_t community_count() const { return communities_; }

 private:
  std::vector<std::size_t> u_;
  std::vector<std::size_t> v_;
  std::size_t communities_ = 0;
};

/// Q = sum_{u,v} (F - J) delta(g_u, g_v) with J from the chosen null model.
double newman_modularity(const FrequencyMatrix& fm, const Partition& partition,
                         NullVariant variant);

/// s^T M s for a +-1 vector s.
double sign_quadratic_form(const Matrix& m, const std::vector<int>& signs);

struct Bipartition {
  std::vector<int> signs;  // +1 / -1 per vertex
  double objective = 0.0;  // s^T (F - J) s
};

/// Graphs up to this many vertices also get an exhaustive search.
inline constexpr std::size_t kExactBipartitionVertices = 20;

/// Two-community split of a symmetric (induced) graph: signs of the leading
/// eigenvector of F - J, greedy single-vertex flips, then vertex-moving
/// passes until no pass improves s^T (F - J) s. Graphs with at most
/// `exact_limit` vertices are finished by enumerating every sign vector, so
/// the returned split is optimal there.
Bipartition tvd_bipartition(const FrequencyMatrix& fm, NullVariant variant,
                            std::size_t exact_limit = kExactBipartitionVertices);

struct PearsonIdentity {
  double lhs = 0.0;  // dual objective
  double rhs = 0.0;  // weighted least-squares form
};

/// Evaluates the Pearson dual objective both directly and as
/// -1 + sum [-J (D - F/J)^2 + F^2 / J]. Requires J > 0 everywhere.
PearsonIdentity pearson_weighted_identity(const Matrix& f, const Matrix& j, const Matrix& d);

/// Report with the config echoed under "config"; keys keep declaration order.
nlohmann::ordered_json report_to_json(const ModularityReport& report,
                                      const EstimatorConfig& config);

}  // namespace fmodularity
