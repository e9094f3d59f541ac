#include "fmodularity/bench.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <optional>
#include <set>
#include <sstream>
#include <thread>

#include "fmodularity/error.hpp"
#include "fmodularity/io.hpp"

namespace fmodularity {
namespace {

struct MeanStd {
  double mean = std::numeric_limits<double>::quiet_NaN();
  double std = std::numeric_limits<double>::quiet_NaN();
};

MeanStd summarize(const std::vector<double>& xs) {
  MeanStd out;
  if (xs.empty()) return out;
  double total = 0.0;
  for (double x : xs) total += x;
  out.mean = total / static_cast<double>(xs.size());
  double sq = 0.0;
  for (double x : xs) sq += (x - out.mean) * (x - out.mean);
  out.std = xs.size() > 1 ? std::sqrt(sq / static_cast<double>(xs.size() - 1)) : 0.0;
  return out;
}

template <typename T>
T get_or(const nlohmann::json& j, const char* key, T fallback) {
  return j.contains(key) ? j.at(key).get<T>() : fallback;
}

std::string alpha_dir_name(double alpha) { return "alpha_" + format_double(alpha); }

}  // namespace

BaselineReference parse_baseline_reference(const std::string& name) {
  if (name == "empirical") return BaselineReference::Empirical;
  if (name == "unbiased") return BaselineReference::Unbiased;
  throw InputError("unknown baseline reference '" + name + "' (expected empirical|unbiased)");
}

double theoretical_mi(const DistributionMatrix& p, Family family) {
  return f_mutual_information(family, p);
}

double baseline_mi(const FrequencyMatrix& fm, Family family, BaselineReference reference) {
  if (reference == BaselineReference::Unbiased) {
    return f_divergence(family, fm.frequencies(), null_model(fm).j);
  }
  return f_divergence(family, fm.frequencies(), newman_null(fm).j);
}

void ExperimentConfig::validate() const {
  if (families.empty()) throw InputError("experiment needs at least one family");
  if (m < 1 || n < 1) throw InputError("experiment needs m >= 1 and n >= 1");
  if (alphas.empty()) throw InputError("experiment needs at least one alpha");
  for (double a : alphas) {
    if (!(a >= 0.0 && a <= 1.0)) throw InputError("alpha must lie in [0, 1]");
  }
  if (edges < 2) throw InputError("experiment needs at least two edges per graph");
  if (trials < 1) throw InputError("experiment needs trials >= 1");
  if (!(theta > 0.0) || theta > 1.0) throw InputError("theta must lie in (0, 1]");
  if (!(epsilon > 0.0)) throw InputError("epsilon must be positive");
  if (nmf.max_iterations < 1) throw InputError("nmf.max_iterations must be >= 1");
  if (!(nmf.tolerance >= 0.0)) throw InputError("nmf.tolerance must be >= 0");
  BlockGroups groups = BlockGroups::singletons(m, n);
  for (const auto& [i, j] : schedule.steps) groups = groups.merged(i, j);
}

ExperimentConfig parse_experiment_config(const nlohmann::json& j) {
  static const std::set<std::string> known{
      "family", "families", "m", "n", "alpha", "alphas", "edges", "trials", "theta", "epsilon",
      "method", "nmf", "schedule", "seed", "workers", "baseline_null", "keep_trials", "output"};
  if (!j.is_object()) throw InputError("experiment config must be a JSON object");
  for (const auto& item : j.items()) {
    if (!known.contains(item.key())) throw InputError("unknown config key '" + item.key() + "'");
  }

  try {
    ExperimentConfig cfg;
    if (j.contains("families")) {
      cfg.families.clear();
      for (const auto& f : j.at("families")) cfg.families.push_back(parse_family(f.get<std::string>()));
    } else if (j.contains("family")) {
      cfg.families = {parse_family(j.at("family").get<std::string>())};
    }
    cfg.m = get_or<std::size_t>(j, "m", cfg.m);
    cfg.n = get_or<std::size_t>(j, "n", cfg.n);
    if (j.contains("alphas")) {
      cfg.alphas = j.at("alphas").get<std::vector<double>>();
    } else if (j.contains("alpha")) {
      cfg.alphas = {j.at("alpha").get<double>()};
    }
    cfg.edges = get_or<std::uint64_t>(j, "edges", cfg.edges);
    cfg.trials = get_or<std::size_t>(j, "trials", cfg.trials);
    cfg.theta = get_or<double>(j, "theta", cfg.theta);
    cfg.epsilon = get_or<double>(j, "epsilon", cfg.epsilon);
    cfg.method = parse_method(get_or<std::string>(j, "method", "auto"));
    if (j.contains("nmf")) {
      const auto& nj = j.at("nmf");
      cfg.nmf.max_iterations = get_or<std::size_t>(nj, "max_iterations", cfg.nmf.max_iterations);
      cfg.nmf.tolerance = get_or<double>(nj, "tolerance", cfg.nmf.tolerance);
    }
    if (j.contains("schedule")) {
      cfg.schedule.steps.clear();
      for (const auto& step : j.at("schedule")) {
        if (!step.is_array() || step.size() != 2) {
          throw InputError("schedule steps must be [i, j] pairs");
        }
        cfg.schedule.steps.emplace_back(step[0].get<std::size_t>(), step[1].get<std::size_t>());
      }
    } else if (cfg.m == 5) {
      cfg.schedule = ContractionSchedule::five_block_full();
    } else {
      cfg.schedule.steps.assign(cfg.m - 1, {0, 1});
    }
    cfg.seed = get_or<std::uint64_t>(j, "seed", cfg.seed);
    cfg.workers = get_or<std::size_t>(j, "workers", cfg.workers);
    cfg.baseline = parse_baseline_reference(get_or<std::string>(j, "baseline_null", "empirical"));
    cfg.keep_trials = get_or<bool>(j, "keep_trials", cfg.keep_trials);
    if (j.contains("output")) {
      const auto& oj = j.at("output");
      cfg.csv_path = get_or<std::string>(oj, "csv", "");
      cfg.json_path = get_or<std::string>(oj, "json", "");
      cfg.heatmap_dir = get_or<std::string>(oj, "heatmaps", "");
    }
    cfg.validate();
    return cfg;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("experiment config: ") + e.what());
  }
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(path.string() + ": " + e.what());
  }
  return parse_experiment_config(j);
}

std::vector<DistributionMatrix> experiment_stages(const ExperimentConfig& config, double alpha) {
  const DistributionMatrix p = sbm_distribution({config.m, config.n, alpha});
  return run_schedule(p, BlockGroups::singletons(config.m, config.n), config.schedule);
}

std::vector<StageResult> run_experiment(const ExperimentConfig& config) {
  config.validate();
  const std::size_t family_count = config.families.size();
  const std::size_t alpha_count = config.alphas.size();
  const std::size_t stage_count = config.schedule.steps.size() + 1;

  // Indexed [family][alpha][stage].
  std::vector<StageResult> results(family_count * alpha_count * stage_count);
  auto slot = [&](std::size_t f, std::size_t a, std::size_t s) -> StageResult& {
    return results[(f * alpha_count + a) * stage_count + s];
  };

  struct Outcome {
    bool ok = false;
    double baseline = 0.0;
    double estimate = 0.0;
    std::string error;
  };

  std::size_t workers = config.workers;
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());

  for (std::size_t a = 0; a < alpha_count; ++a) {
    const double alpha = config.alphas[a];
    const auto stages = experiment_stages(config, alpha);
    for (std::size_t f = 0; f < family_count; ++f) {
      for (std::size_t s = 0; s < stage_count; ++s) {
        StageResult& r = slot(f, a, s);
        r.family = config.families[f];
        r.alpha = alpha;
        r.stage = s;
        r.theory = theoretical_mi(stages[s], config.families[f]);
      }
    }

    // outcomes[(stage * trials + trial) * families + family]
    const std::size_t units = stage_count * config.trials;
    std::vector<Outcome> outcomes(units * family_count);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
      for (;;) {
        const std::size_t unit = next.fetch_add(1);
        if (unit >= units) return;
        const std::size_t stage = unit / config.trials;
        const std::size_t trial = unit % config.trials;
        const std::uint64_t stream = derive_seed(config.seed, {a, stage, trial});
        std::optional<FrequencyMatrix> fm;
        std::string sample_error;
        try {
          fm.emplace(frequency_from_graph(sample_graph(stages[stage], config.edges, stream)));
        } catch (const std::exception& e) {
          sample_error = e.what();
        }
        for (std::size_t f = 0; f < family_count; ++f) {
          Outcome& out = outcomes[unit * family_count + f];
          if (!fm) {
            out.error = sample_error;
            continue;
          }
          try {
            EstimatorConfig est;
            est.family = config.families[f];
            est.theta = config.theta;
            est.epsilon = config.epsilon;
            est.method = config.method;
            est.nmf = config.nmf;
            est.seed = derive_seed(stream, {1});
            out.baseline = baseline_mi(*fm, est.family, config.baseline);
            out.estimate = f_modularity(*fm, est).value;
            out.ok = true;
          } catch (const std::exception& e) {
            out.error = e.what();
          }
        }
      }
    };
    std::vector<std::jthread> pool;
    for (std::size_t w = 1; w < std::min(workers, units); ++w) pool.emplace_back(work);
    work();
    pool.clear();

    for (std::size_t f = 0; f < family_count; ++f) {
      for (std::size_t s = 0; s < stage_count; ++s) {
        StageResult& r = slot(f, a, s);
        std::vector<double> base, est;
        for (std::size_t t = 0; t < config.trials; ++t) {
          const Outcome& out = outcomes[(s * config.trials + t) * family_count + f];
          if (!out.ok) {
            r.failures.push_back({t, out.error});
            continue;
          }
          base.push_back(out.baseline);
          est.push_back(out.estimate);
        }
        const MeanStd bs = summarize(base);
        const MeanStd es = summarize(est);
        r.baseline_mean = bs.mean;
        r.baseline_std = bs.std;
        r.estimator_mean = es.mean;
        r.estimator_std = es.std;
        if (config.keep_trials) {
          r.baseline_trials = std::move(base);
          r.estimator_trials = std::move(est);
        }
      }
    }
  }
  return results;
}

std::string results_to_csv(const std::vector<StageResult>& results) {
  std::ostringstream out;
  out << "family,alpha,stage,theory,baseline_mean,baseline_std,estimator_mean,estimator_std\n";
  for (const StageResult& r : results) {
    out << family_name(r.family) << ',' << format_double(r.alpha) << ',' << r.stage << ','
        << format_double(r.theory) << ',' << format_double(r.baseline_mean) << ','
        << format_double(r.baseline_std) << ',' << format_double(r.estimator_mean) << ','
        << format_double(r.estimator_std) << '\n';
  }
  return out.str();
}

nlohmann::ordered_json results_to_json(const std::vector<StageResult>& results) {
  auto number = [](double x) -> nlohmann::ordered_json {
    if (std::isnan(x)) return nullptr;
    return x;
  };
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const StageResult& r : results) {
    nlohmann::ordered_json row;
    row["family"] = family_name(r.family);
    row["alpha"] = r.alpha;
    row["stage"] = r.stage;
    row["theory"] = number(r.theory);
    row["baseline_mean"] = number(r.baseline_mean);
    row["baseline_std"] = number(r.baseline_std);
    row["estimator_mean"] = number(r.estimator_mean);
    row["estimator_std"] = number(r.estimator_std);
    row["baseline_trials"] = r.baseline_trials;
    row["estimator_trials"] = r.estimator_trials;
    nlohmann::ordered_json failures = nlohmann::ordered_json::array();
    for (const TrialFailure& f : r.failures) {
      failures.push_back({{"trial", f.trial}, {"message", f.message}});
    }
    row["failures"] = std::move(failures);
    out.push_back(std::move(row));
  }
  return out;
}

std::vector<StageResult> results_from_json(const nlohmann::json& j) {
  auto number = [](const nlohmann::json& v) {
    return v.is_null() ? std::numeric_limits<double>::quiet_NaN() : v.get<double>();
  };
  try {
    std::vector<StageResult> out;
    for (const auto& row : j) {
      StageResult r;
      r.family = parse_family(row.at("family").get<std::string>());
      r.alpha = row.at("alpha").get<double>();
      r.stage = row.at("stage").get<std::size_t>();
      r.theory = number(row.at("theory"));
      r.baseline_mean = number(row.at("baseline_mean"));
      r.baseline_std = number(row.at("baseline_std"));
      r.estimator_mean = number(row.at("estimator_mean"));
      r.estimator_std = number(row.at("estimator_std"));
      r.baseline_trials = row.value("baseline_trials", std::vector<double>{});
      r.estimator_trials = row.value("estimator_trials", std::vector<double>{});
      if (row.contains("failures")) {
        for (const auto& f : row.at("failures")) {
          r.failures.push_back({f.at("trial").get<std::size_t>(), f.at("message").get<std::string>()});
        }
      }
      out.push_back(std::move(r));
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("results JSON: ") + e.what());
  }
}

void export_results(const std::vector<StageResult>& results, ExportFormat format,
                    const std::filesystem::path& path) {
  if (results.empty()) throw InputError("no results to export");
  if (format == ExportFormat::Csv) {
    write_text_file(path, results_to_csv(results));
  } else {
    write_text_file(path, results_to_json(results).dump(2) + "\n");
  }
}

std::vector<std::filesystem::path> export_heatmaps(const ExperimentConfig& config,
                                                   const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> written;
  for (double alpha : config.alphas) {
    const auto target = config.alphas.size() > 1 ? dir / alpha_dir_name(alpha) : dir;
    std::filesystem::create_directories(target);
    const auto stages = experiment_stages(config, alpha);
    for (std::size_t t = 0; t < stages.size(); ++t) {
      const auto path = target / ("stage_" + std::to_string(t) + ".csv");
      write_matrix_csv(path, stages[t].entries());
      written.push_back(path);
    }
  }
  return written;
}

}  // namespace fmodularity
