// fmodularity: command-line front end.
//
// Exit codes: 0 success, 2 invalid input or configuration, 3 numerical
// domain error (infinite divergence, undefined null model, ...).

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "fmodularity/bench.hpp"
#include "fmodularity/error.hpp"
#include "fmodularity/fdiv.hpp"
#include "fmodularity/io.hpp"
#include "fmodularity/modularity.hpp"
#include "fmodularity/netcore.hpp"
#include "fmodularity/synth.hpp"

namespace fm = fmodularity;

namespace {

constexpr int kExitInput = 2;
constexpr int kExitDomain = 3;

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
  } else {
    fm::write_text_file(path, text);
  }
}

fm::FrequencyMatrix frequency_from_adjacency(const std::string& path) {
  return fm::frequency_from_graph(fm::induce_bipartite(fm::read_matrix_csv(path), true));
}

std::vector<std::string> induced_labels(char side, std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(side + std::string("_") + std::to_string(i + 1));
  return labels;
}

fm::BlockGroups parse_groups(const nlohmann::json& j) {
  try {
    if (j.contains("row_sizes")) {
      auto rows = j.at("row_sizes").get<std::vector<std::size_t>>();
      auto cols = j.value("col_sizes", rows);
      std::vector<std::vector<std::size_t>> groups;
      if (j.contains("groups")) {
        groups = j.at("groups").get<std::vector<std::vector<std::size_t>>>();
      } else {
        for (std::size_t b = 0; b < rows.size(); ++b) groups.push_back({b});
      }
      return fm::BlockGroups(std::move(rows), std::move(cols), std::move(groups));
    }
    const auto m = j.at("m").get<std::size_t>();
    const auto n = j.at("n").get<std::size_t>();
    auto base = fm::BlockGroups::singletons(m, n);
    if (!j.contains("groups")) return base;
    return fm::BlockGroups(base.row_sizes(), base.col_sizes(),
                           j.at("groups").get<std::vector<std::vector<std::size_t>>>());
  } catch (const nlohmann::json::exception& e) {
    throw fm::InputError(std::string("groups file: ") + e.what());
  }
}

nlohmann::ordered_json groups_to_json(const fm::BlockGroups& g) {
  nlohmann::ordered_json out;
  out["row_sizes"] = g.row_sizes();
  out["col_sizes"] = g.col_sizes();
  out["groups"] = g.groups();
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"f-modularity of networks and contraction experiments"};
  app.require_subcommand(1);

  // mi
  auto* mi = app.add_subcommand("mi", "f-mutual information of a joint distribution");
  std::string mi_input, mi_family = "kl";
  mi->add_option("--input", mi_input, "distribution matrix CSV")->required();
  mi->add_option("--family", mi_family, "tvd|kl|pearson|js|hellinger");

  // modularity
  auto* mod = app.add_subcommand("modularity", "low-rank f-modularity estimate of a graph");
  std::string mod_edges, mod_adjacency, mod_family = "js", mod_method = "auto", mod_out;
  double mod_theta = 0.9, mod_epsilon = 1e-9, mod_nmf_tol = 1e-6;
  std::optional<std::size_t> mod_rank;
  std::size_t mod_nmf_iters = 500;
  std::uint64_t mod_seed = 0;
  auto* edges_opt = mod->add_option("--edges", mod_edges, "edge list TSV");
  auto* adj_opt = mod->add_option("--adjacency", mod_adjacency, "symmetric adjacency CSV");
  edges_opt->excludes(adj_opt);
  mod->add_option("--family", mod_family, "tvd|kl|pearson|js|hellinger");
  mod->add_option("--theta", mod_theta, "rank selection threshold in (0, 1]");
  mod->add_option("--epsilon", mod_epsilon, "floor on J in the optimal distinguisher");
  mod->add_option("--rank", mod_rank, "fixed rank (skips rank selection)");
  mod->add_option("--method", mod_method, "svd|nmf|auto");
  mod->add_option("--nmf-iterations", mod_nmf_iters, "NMF iteration cap");
  mod->add_option("--nmf-tolerance", mod_nmf_tol, "NMF relative objective tolerance");
  mod->add_option("--seed", mod_seed, "NMF initialization seed");
  mod->add_option("--out", mod_out, "report JSON path (stdout if omitted)");

  // newman
  auto* newman = app.add_subcommand("newman", "Newman modularity of a partition");
  std::string nw_adjacency, nw_partition, nw_null = "newman";
  newman->add_option("--adjacency", nw_adjacency, "symmetric adjacency CSV")->required();
  newman->add_option("--partition", nw_partition, "one community id per line")->required();
  newman->add_option("--null", nw_null, "unbiased|newman");

  // bipartition
  auto* bip = app.add_subcommand("bipartition", "two-community TVD split");
  std::string bp_adjacency, bp_null = "newman";
  bip->add_option("--adjacency", bp_adjacency, "symmetric adjacency CSV")->required();
  bip->add_option("--null", bp_null, "unbiased|newman");

  // sbm-gen
  auto* gen = app.add_subcommand("sbm-gen", "sample a planted block-model graph");
  std::size_t gen_m = 5, gen_n = 40;
  double gen_alpha = 0.1;
  std::uint64_t gen_edges = 40000, gen_seed = 0;
  std::string gen_out, gen_dist;
  gen->add_option("--m", gen_m, "communities");
  gen->add_option("--n", gen_n, "vertices per community per side");
  gen->add_option("--alpha", gen_alpha, "cross-community weight");
  gen->add_option("--edges", gen_edges, "edges to sample");
  gen->add_option("--seed", gen_seed, "sampling seed");
  gen->add_option("--out", gen_out, "edge list TSV")->required();
  gen->add_option("--dist", gen_dist, "also write the distribution matrix CSV");

  // contract
  auto* con = app.add_subcommand("contract", "merge two block groups of a distribution");
  std::string con_dist, con_groups, con_out, con_groups_out;
  std::vector<std::size_t> con_merge;
  con->add_option("--dist", con_dist, "distribution matrix CSV")->required();
  con->add_option("--groups", con_groups, "block groups JSON")->required();
  con->add_option("--merge", con_merge, "two group ids")->required()->expected(2);
  con->add_option("--out", con_out, "contracted distribution CSV")->required();
  con->add_option("--groups-out", con_groups_out, "updated block groups JSON");

  // experiment
  auto* exp = app.add_subcommand("experiment", "contraction experiment");
  std::string ex_config, ex_out, ex_json, ex_heatmaps, ex_baseline;
  std::optional<std::size_t> ex_workers;
  exp->add_option("--config", ex_config, "experiment config JSON")->required();
  exp->add_option("--out", ex_out, "results CSV");
  exp->add_option("--json", ex_json, "results JSON");
  exp->add_option("--heatmaps", ex_heatmaps, "directory for stage_<t>.csv files");
  exp->add_option("--workers", ex_workers, "worker threads (0: all cores)");
  exp->add_option("--baseline-null", ex_baseline, "empirical|unbiased");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (*mi) {
      const fm::DistributionMatrix p(fm::read_matrix_csv(mi_input));
      std::cout << fm::format_double(fm::f_mutual_information(fm::parse_family(mi_family), p))
                << '\n';
    } else if (*mod) {
      if (mod_edges.empty() && mod_adjacency.empty()) {
        throw fm::InputError("modularity needs --edges or --adjacency");
      }
      fm::EstimatorConfig cfg;
      cfg.family = fm::parse_family(mod_family);
      cfg.theta = mod_theta;
      cfg.epsilon = mod_epsilon;
      cfg.rank_override = mod_rank;
      cfg.method = fm::parse_method(mod_method);
      cfg.nmf.max_iterations = mod_nmf_iters;
      cfg.nmf.tolerance = mod_nmf_tol;
      cfg.seed = mod_seed;

      std::vector<std::string> u_labels, v_labels;
      std::optional<fm::FrequencyMatrix> freq;
      if (!mod_edges.empty()) {
        auto g = fm::read_edge_list(mod_edges);
        freq.emplace(fm::frequency_from_graph(g.graph));
        u_labels = std::move(g.u_labels);
        v_labels = std::move(g.v_labels);
      } else {
        freq.emplace(frequency_from_adjacency(mod_adjacency));
        u_labels = induced_labels('u', static_cast<std::size_t>(freq->rows()));
        v_labels = induced_labels('v', static_cast<std::size_t>(freq->cols()));
      }
      auto report = fm::report_to_json(fm::f_modularity(*freq, cfg), cfg);
      report["labels"] = {{"u", u_labels}, {"v", v_labels}};
      emit(report.dump(2) + "\n", mod_out);
    } else if (*newman) {
      const auto fm_adj = frequency_from_adjacency(nw_adjacency);
      const auto part = fm::Partition::mirrored(fm::read_partition(nw_partition));
      std::cout << fm::format_double(fm::newman_modularity(
                       fm_adj, part, fm::parse_null_variant(nw_null)))
                << '\n';
    } else if (*bip) {
      const auto fm_adj = frequency_from_adjacency(bp_adjacency);
      const auto split = fm::tvd_bipartition(fm_adj, fm::parse_null_variant(bp_null));
      std::cout << "s:";
      for (int s : split.signs) std::cout << ' ' << s;
      std::cout << "\nobjective: " << fm::format_double(split.objective) << '\n';
    } else if (*gen) {
      const auto p = fm::sbm_distribution({gen_m, gen_n, gen_alpha});
      fm::write_edge_list(gen_out, fm::sample_graph(p, gen_edges, gen_seed));
      if (!gen_dist.empty()) fm::write_matrix_csv(gen_dist, p.entries());
    } else if (*con) {
      const fm::DistributionMatrix p(fm::read_matrix_csv(con_dist));
      nlohmann::json gj;
      try {
        gj = nlohmann::json::parse(fm::read_text_file(con_groups));
      } catch (const nlohmann::json::parse_error& e) {
        throw fm::InputError(con_groups + ": " + e.what());
      }
      const auto result = fm::contract(p, parse_groups(gj), con_merge[0], con_merge[1]);
      fm::write_matrix_csv(con_out, result.p.entries());
      if (!con_groups_out.empty()) {
        fm::write_text_file(con_groups_out, groups_to_json(result.groups).dump(2) + "\n");
      }
    } else if (*exp) {
      auto cfg = fm::load_experiment_config(ex_config);
      if (!ex_out.empty()) cfg.csv_path = ex_out;
      if (!ex_json.empty()) cfg.json_path = ex_json;
      if (!ex_heatmaps.empty()) cfg.heatmap_dir = ex_heatmaps;
      if (ex_workers) cfg.workers = *ex_workers;
      if (!ex_baseline.empty()) cfg.baseline = fm::parse_baseline_reference(ex_baseline);
      const auto results = fm::run_experiment(cfg);
      if (cfg.csv_path.empty()) {
        std::cout << fm::results_to_csv(results);
      } else {
        fm::export_results(results, fm::ExportFormat::Csv, cfg.csv_path);
      }
      if (!cfg.json_path.empty()) fm::export_results(results, fm::ExportFormat::Json, cfg.json_path);
      if (!cfg.heatmap_dir.empty()) fm::export_heatmaps(cfg, cfg.heatmap_dir);
      for (const auto& r : results) {
        for (const auto& f : r.failures) {
          std::cerr << "warning: " << fm::family_name(r.family) << " alpha=" << r.alpha
                    << " stage=" << r.stage << " trial=" << f.trial << ": " << f.message << '\n';
        }
      }
    }
  } catch (const fm::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return 0;
}
