// signcut command-line driver.
//
//   signcut build-graph --embeddings emb.txt --thesaurus thes.tsv --output g.txt
//   signcut cluster --graph g.txt --clusters 20 --output part.tsv
//   signcut evaluate --partition part.tsv --thesaurus thes.tsv
//   signcut grid-search --embeddings emb.txt --thesaurus thes.tsv --sigma 0.2,0.7 ...
//   signcut synth --nodes 100 --clusters 5 --output planted.txt
//   signcut spectrum --graph g.txt --clusters 10
//
// Any long option may also come from a flat "key = value" file given with
// --config; options on the command line take precedence.

#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"

namespace {

using signcut::Error;
using signcut::ErrorCode;
namespace cli = signcut::cli;

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string normalize_key(std::string key) {
  for (char& c : key) {
    if (c == '_') c = '-';
  }
  return key;
}

std::vector<std::pair<std::string, std::string>> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open config " + path);
  std::vector<std::pair<std::string, std::string>> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string text = trim(line);
    if (text.empty() || text[0] == '#') continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos || trim(text.substr(0, eq)).empty()) {
      throw Error(ErrorCode::kParse,
                  path + ": line " + std::to_string(line_no) + ": expected \"key = value\"");
    }
    entries.emplace_back(normalize_key(trim(text.substr(0, eq))), trim(text.substr(eq + 1)));
  }
  return entries;
}

bool truthy(const std::string& value) {
  return value == "1" || value == "true" || value == "yes" || value == "on";
}

// Splices config entries in front of the user's own arguments, skipping
// keys the user already passed.
std::vector<std::string> merge_config(CLI::App& app, const std::vector<std::string>& args) {
  std::string config_path;
  CLI::App* sub = nullptr;
  std::size_t sub_pos = args.size();
  std::set<std::string> given;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (sub == nullptr) {
      if (CLI::App* s = app.get_subcommand_no_throw(a)) {
        sub = s;
        sub_pos = i;
        continue;
      }
    }
    if (a.rfind("--", 0) == 0) {
      const auto eq = a.find('=');
      const std::string key = normalize_key(a.substr(2, eq == std::string::npos ? eq : eq - 2));
      given.insert(key);
      if (key == "config") {
        if (eq != std::string::npos) {
          config_path = a.substr(eq + 1);
        } else if (i + 1 < args.size()) {
          config_path = args[i + 1];
        }
      }
    }
  }
  if (config_path.empty() || sub == nullptr) return args;

  std::vector<std::string> injected;
  for (const auto& [key, value] : read_config(config_path)) {
    if (key == "config" || given.count(key)) continue;
    const std::string flag = "--" + key;
    const CLI::Option* opt = sub->get_option_no_throw(flag);
    if (opt == nullptr) opt = app.get_option_no_throw(flag);
    if (opt == nullptr) {
      throw Error(ErrorCode::kInvalidArgument,
                  "config key '" + key + "' is not an option of " + sub->get_name());
    }
    if (opt->get_expected_min() == 0) {
      if (truthy(value)) injected.push_back(flag);
    } else {
      injected.push_back(flag);
      injected.push_back(value);
    }
  }
  std::vector<std::string> merged(args.begin(), args.begin() + static_cast<std::ptrdiff_t>(sub_pos) + 1);
  merged.insert(merged.end(), injected.begin(), injected.end());
  merged.insert(merged.end(), args.begin() + static_cast<std::ptrdiff_t>(sub_pos) + 1, args.end());
  return merged;
}

void add_tuning(CLI::App* sub, cli::ClusterTuning& t) {
  sub->add_option("--restarts", t.restarts, "Seeded discretization restarts")->capture_default_str();
  sub->add_option("--max-iter", t.max_iter, "Alternation sweeps per restart")->capture_default_str();
  sub->add_option("--tol", t.tol, "Stop when a sweep lowers phi by less than this")
      ->capture_default_str();
  sub->add_option("--eig-tol", t.eig_tol, "Eigen-residual tolerance relative to ||L||")
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Signed spectral clustering of signed graphs and lexical graphs"};
  app.require_subcommand(1);
  app.fallthrough();

  cli::CommonOptions common;
  common.jobs = std::max(1u, std::thread::hardware_concurrency());
  std::string config_file;
  app.add_option("--seed", common.seed, "Random seed")->capture_default_str();
  app.add_option("--jobs", common.jobs, "Worker threads for grid search")->capture_default_str();
  app.add_option("--config", config_file, "Flat key = value file supplying long options");

  cli::BuildGraphConfig build;
  std::string build_thesaurus, build_filter;
  auto* build_cmd = app.add_subcommand("build-graph", "Signed graph from embeddings and thesaurus");
  build_cmd->add_option("--embeddings", build.embeddings, "Embedding text file")->required();
  build_cmd->add_option("--thesaurus", build_thesaurus, "Thesaurus TSV (word1, word2, syn|ant)");
  build_cmd->add_option("--vocab-filter", build_filter, "Keep only words listed in this file");
  build_cmd->add_option("--sigma", build.params.sigma, "Heat-kernel bandwidth")->capture_default_str();
  build_cmd->add_option("--thresh", build.params.thresh, "Kernel sparsification cutoff")
      ->capture_default_str();
  build_cmd->add_option("--gamma", build.params.gamma, "Distributional weight")->capture_default_str();
  build_cmd->add_option("--beta", build.params.beta, "Thesaurus weight")->capture_default_str();
  build_cmd->add_option("--beta-ant", build.params.beta_ant, "Antonym weight")->capture_default_str();
  build_cmd->add_option("--output", build.output, "Graph edge list to write")->required();

  cli::ClusterConfig clus;
  std::string clus_vocab, clus_report;
  auto* cluster_cmd = app.add_subcommand("cluster", "K-way signed normalized-cut clustering");
  cluster_cmd->add_option("--graph", clus.graph, "Graph edge list")->required();
  cluster_cmd->add_option("--vocab", clus_vocab, "Node names, one per line");
  cluster_cmd->add_option("-k,--clusters", clus.k, "Number of clusters")->required();
  add_tuning(cluster_cmd, clus.tuning);
  cluster_cmd->add_option("--output", clus.output, "Partition TSV to write")->required();
  cluster_cmd->add_option("--report", clus_report, "Metrics JSON (default: stdout)");

  cli::EvaluateConfig eval;
  std::string eval_graph, eval_thes, eval_gold, eval_simlex, eval_output;
  auto* eval_cmd = app.add_subcommand("evaluate", "Cluster quality metrics");
  eval_cmd->add_option("--partition", eval.partition, "Partition TSV")->required();
  eval_cmd->add_option("--graph", eval_graph, "Graph edge list, for sncut");
  eval_cmd->add_option("--thesaurus", eval_thes, "Thesaurus TSV, for NNE and NDC");
  eval_cmd->add_option("--gold", eval_gold, "Gold classes TSV, for purity and entropy");
  eval_cmd->add_option("--simlex", eval_simlex, "Similarity pairs TSV");
  eval_cmd->add_option("--high-cut", eval.high_cut, "Rating above which a pair counts")
      ->capture_default_str();
  eval_cmd->add_flag("--raw-components", eval.raw_components,
                     "Count all synonym components instead of the excess");
  eval_cmd->add_option("--output", eval_output, "Metrics JSON (default: stdout)");

  cli::GridConfig grid;
  std::string grid_thes, grid_filter, grid_gold, grid_output;
  auto* grid_cmd = app.add_subcommand("grid-search", "Rank parameter cells by (NNE+NDC)/|V|");
  grid_cmd->add_option("--embeddings", grid.embeddings, "Embedding text file")->required();
  grid_cmd->add_option("--thesaurus", grid_thes, "Thesaurus TSV")->required();
  grid_cmd->add_option("--vocab-filter", grid_filter, "Keep only words listed in this file");
  grid_cmd->add_option("--gold", grid_gold, "Gold classes TSV");
  grid_cmd->add_option("--sigma", grid.grid.sigma, "Candidate sigma values")->delimiter(',');
  grid_cmd->add_option("--thresh", grid.grid.thresh, "Candidate thresholds")->delimiter(',');
  grid_cmd->add_option("-k,--clusters", grid.grid.k, "Candidate cluster counts")->delimiter(',');
  grid_cmd->add_option("--gamma", grid.grid.gamma, "Candidate gamma values")->delimiter(',');
  grid_cmd->add_option("--beta", grid.grid.beta, "Candidate beta values")->delimiter(',');
  grid_cmd->add_option("--beta-ant", grid.grid.beta_ant, "Candidate beta_ant values")
      ->delimiter(',');
  add_tuning(grid_cmd, grid.tuning);
  grid_cmd->add_option("--output", grid_output, "Ranked CSV (default: stdout)");

  cli::SynthConfig synth;
  std::string synth_curve;
  auto* synth_cmd = app.add_subcommand("synth", "Planted-partition signed graph");
  synth_cmd->add_option("--nodes", synth.planted.n, "Node count")->capture_default_str();
  synth_cmd->add_option("-k,--clusters", synth.planted.k, "Planted clusters")->capture_default_str();
  synth_cmd->add_option("--p-in", synth.planted.p_in, "Within-cluster edge probability")
      ->capture_default_str();
  synth_cmd->add_option("--p-out", synth.planted.p_out, "Cross-cluster edge probability")
      ->capture_default_str();
  synth_cmd->add_option("--frac-neg-out", synth.planted.frac_neg_out,
                        "Share of cross edges made negative")
      ->capture_default_str();
  synth_cmd->add_option("--w-min", synth.planted.w_min, "Smallest edge magnitude")
      ->capture_default_str();
  synth_cmd->add_option("--w-max", synth.planted.w_max, "Largest edge magnitude")
      ->capture_default_str();
  synth_cmd->add_option("--output", synth.output, "Graph edge list to write")->required();
  synth_cmd->add_option("--curve", synth_curve, "Write a K,nne,ndc curve here");
  synth_cmd->add_option("--curve-k", synth.curve_ks, "Cluster counts for the curve")
      ->delimiter(',');
  add_tuning(synth_cmd, synth.tuning);

  cli::SpectrumConfig spec;
  std::string spec_output;
  auto* spectrum_cmd = app.add_subcommand("spectrum", "Smallest eigenvalues of the normalized Laplacian");
  spectrum_cmd->add_option("--graph", spec.graph, "Graph edge list")->required();
  spectrum_cmd->add_option("-k,--clusters", spec.k, "Number of eigenvalues")->required();
  spectrum_cmd->add_option("--eig-tol", spec.eig_tol, "Residual tolerance")->capture_default_str();
  spectrum_cmd->add_option("--output", spec_output, "CSV (default: stdout)");

  auto opt_path = [](const std::string& s) -> std::optional<std::filesystem::path> {
    if (s.empty()) return std::nullopt;
    return std::filesystem::path(s);
  };

  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    args = merge_config(app, args);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << cli::error_json("UsageError", e.what()) << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << cli::error_json(e.name(), e.what()) << '\n';
    return 2;
  }

  try {
    if (common.jobs == 0) common.jobs = 1;
    if (*build_cmd) {
      build.thesaurus = opt_path(build_thesaurus);
      build.vocab_filter = opt_path(build_filter);
      cli::cmd_build_graph(build, common, std::cout, std::cerr);
    } else if (*cluster_cmd) {
      clus.vocab = opt_path(clus_vocab);
      clus.report = opt_path(clus_report);
      cli::cmd_cluster(clus, common, std::cout, std::cerr);
    } else if (*eval_cmd) {
      eval.graph = opt_path(eval_graph);
      eval.thesaurus = opt_path(eval_thes);
      eval.gold = opt_path(eval_gold);
      eval.simlex = opt_path(eval_simlex);
      eval.output = opt_path(eval_output);
      cli::cmd_evaluate(eval, common, std::cout, std::cerr);
    } else if (*grid_cmd) {
      grid.thesaurus = opt_path(grid_thes);
      grid.vocab_filter = opt_path(grid_filter);
      grid.gold = opt_path(grid_gold);
      grid.output = opt_path(grid_output);
      cli::cmd_grid_search(grid, common, std::cout, std::cerr);
    } else if (*synth_cmd) {
      synth.planted.seed = common.seed;
      synth.curve = opt_path(synth_curve);
      cli::cmd_synth(synth, common, std::cout, std::cerr);
    } else if (*spectrum_cmd) {
      spec.output = opt_path(spec_output);
      cli::cmd_spectrum(spec, common, std::cout, std::cerr);
    }
  } catch (const Error& e) {
    std::cerr << cli::error_json(e.name(), e.what()) << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << cli::error_json("InternalError", e.what()) << '\n';
    return 1;
  }
  return 0;
}
