#pragma once

// Contraction experiments: theory vs. plug-in baseline vs. the low-rank
// estimator over sampled graphs, with CSV/JSON export.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "fmodularity/fdiv.hpp"
#include "fmodularity/modularity.hpp"
#include "fmodularity/synth.hpp"

namespace fmodularity {

/// Reference measure for the plug-in baseline.
enum class BaselineReference {
  Empirical,  // product of the empirical degree vectors
  Unbiased,   // the unbiased null model J
};

BaselineReference parse_baseline_reference(const std::string& name);

double theoretical_mi(const DistributionMatrix& p, Family family);

double baseline_mi(const FrequencyMatrix& fm, Family family,
                   BaselineReference reference = BaselineReference::Empirical);

struct ExperimentConfig {
  std::vector<Family> families{Family::JensenShannon};
  std::size_t m = 5;
  std::size_t n = 40;
  std::vector<double> alphas{0.1};
  std::uint64_t edges = 40000;
  std::size_t trials = 100;
  double theta = 0.9;
  double epsilon = 1e-9;
  MethodChoice method = MethodChoice::Auto;
  NmfOptions nmf;
  ContractionSchedule schedule = ContractionSchedule::five_block_full();
  std::uint64_t seed = 0;
  std::size_t workers = 0;  // 0: hardware concurrency
  BaselineReference baseline = BaselineReference::Empirical;
  bool keep_trials = false;

  std::string csv_path;
  std::string json_path;
  std::string heatmap_dir;

  /// Throws InputError on out-of-range values.
  void validate() const;
};

ExperimentConfig parse_experiment_config(const nlohmann::json& j);
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

struct TrialFailure {
  std::size_t trial = 0;
  std::string message;

  bool operator==(const TrialFailure&) const = default;
};

struct StageResult {
  Family family = Family::JensenShannon;
  double alpha = 0.0;
  std::size_t stage = 0;
  double theory = 0.0;
  double baseline_mean = 0.0;
  double baseline_std = 0.0;
  double estimator_mean = 0.0;
  double estimator_std = 0.0;
  std::vector<double> baseline_trials;   // filled when keep_trials
  std::vector<double> estimator_trials;  // filled when keep_trials
  std::vector<TrialFailure> failures;

  bool operator==(const StageResult&) const = default;
};

/// Results ordered by (family, alpha, stage) in config order. Every sampled
/// graph and NMF start is seeded from (seed, alpha index, stage, trial), so
/// output does not depend on the worker count and the families of one run
/// are evaluated on the same graphs.
std::vector<StageResult> run_experiment(const ExperimentConfig& config);

/// Stage distributions for one alpha.
std::vector<DistributionMatrix> experiment_stages(const ExperimentConfig& config, double alpha);

std::string results_to_csv(const std::vector<StageResult>& results);
nlohmann::ordered_json results_to_json(const std::vector<StageResult>& results);
std::vector<StageResult> results_from_json(const nlohmann::json& j);

enum class ExportFormat { Csv, Json };

void export_results(const std::vector<StageResult>& results, ExportFormat format,
                    const std::filesystem::path& path);

/// One `stage_<t>.csv` per stage; with several alphas each gets its own
/// `alpha_<value>/` subdirectory. Returns the files written.
std::vector<std::filesystem::path> export_heatmaps(const ExperimentConfig& config,
                                                   const std::filesystem::path& dir);

}  // namespace fmodularity
