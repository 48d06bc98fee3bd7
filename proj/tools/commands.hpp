#ifndef SIGNCUT_TOOLS_COMMANDS_HPP
#define SIGNCUT_TOOLS_COMMANDS_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "signcut/signcut.hpp"

namespace signcut::cli {

namespace fs = std::filesystem;

/// Shared by every command.
struct CommonOptions {
  std::uint64_t seed = 1;
  unsigned jobs = 1;
};

struct ClusterTuning {
  int restarts = 8;
  int max_iter = 100;
  double tol = 1e-7;
  double eig_tol = 1e-8;

  ClusterOptions options() const;
  void validate() const;
};

struct BuildGraphConfig {
  fs::path embeddings;
  std::optional<fs::path> thesaurus;
  std::optional<fs::path> vocab_filter;
  KernelParams params;
  /// Graph edge list; the vocabulary goes to "<output>.vocab".
  fs::path output;
};

struct ClusterConfig {
  fs::path graph;
  /// Node names; defaults to "<graph>.vocab" when that file exists.
  std::optional<fs::path> vocab;
  int k = 2;
  ClusterTuning tuning;
  /// Partition TSV.
  fs::path output;
  /// Metrics JSON; written to stdout when unset.
  std::optional<fs::path> report;
};

struct EvaluateConfig {
  fs::path partition;
  std::optional<fs::path> graph;
  std::optional<fs::path> thesaurus;
  std::optional<fs::path> gold;
  std::optional<fs::path> simlex;
  double high_cut = 8.0;
  bool raw_components = false;
  /// Metrics JSON; stdout when unset.
  std::optional<fs::path> output;
};

struct GridSpec {
  std::vector<double> sigma{0.2};
  std::vector<double> thresh{0.04};
  std::vector<int> k{2};
  std::vector<double> gamma{1.0};
  std::vector<double> beta{1.0};
  std::vector<double> beta_ant{1.0};

  std::size_t cell_count() const;
  void validate() const;
};

struct GridConfig {
  GridSpec grid;
  fs::path embeddings;
  std::optional<fs::path> thesaurus;
  std::optional<fs::path> vocab_filter;
  std::optional<fs::path> gold;
  ClusterTuning tuning;
  /// Ranked CSV; stdout when unset.
  std::optional<fs::path> output;
};

struct SynthConfig {
  PlantedConfig planted;
  /// Graph edge list; true labels go to "<output>.labels.tsv".
  fs::path output;
  /// When set, an NNE/NDC curve over `curve_ks` is written here.
  std::optional<fs::path> curve;
  std::vector<int> curve_ks;
  ClusterTuning tuning;
};

struct SpectrumConfig {
  fs::path graph;
  int k = 2;
  double eig_tol = 1e-8;
  /// CSV; stdout when unset.
  std::optional<fs::path> output;
};

/// One evaluated grid cell.
struct GridRow {
  double sigma = 0.0;
  double thresh = 0.0;
  int k = 0;
  double gamma = 0.0;
  double beta = 0.0;
  double beta_ant = 0.0;
  std::size_t cell = 0;
  MetricsReport metrics;
  /// Empty on success, otherwise "<ErrorName>: message".
  std::string failure;
};

// Each command writes its data files, sends data meant for stdout to `out`
// and progress to `log`. Failures are thrown as signcut::Error.
void cmd_build_graph(const BuildGraphConfig& cfg, const CommonOptions& common, std::ostream& out,
                     std::ostream& log);
void cmd_cluster(const ClusterConfig& cfg, const CommonOptions& common, std::ostream& out,
                 std::ostream& log);
void cmd_evaluate(const EvaluateConfig& cfg, const CommonOptions& common, std::ostream& out,
                  std::ostream& log);
void cmd_grid_search(const GridConfig& cfg, const CommonOptions& common, std::ostream& out,
                     std::ostream& log);
void cmd_synth(const SynthConfig& cfg, const CommonOptions& common, std::ostream& out,
               std::ostream& log);
void cmd_spectrum(const SpectrumConfig& cfg, const CommonOptions& common, std::ostream& out,
                  std::ostream& log);

/// Evaluates every cell of `grid` on in-memory inputs, sorted ascending by
/// error (failed cells last, ties by cell order).
std::vector<GridRow> run_grid(const GridSpec& grid, const EmbeddingTable& emb,
                              const Thesaurus& thes, const GoldClasses* gold,
                              const ClusterTuning& tuning, const CommonOptions& common);

void write_grid_csv(std::ostream& out, const std::vector<GridRow>& rows);

/// {"error": "<ErrorName>", "message": "..."}
std::string error_json(std::string_view name, std::string_view message);

}  // namespace signcut::cli

#endif  // SIGNCUT_TOOLS_COMMANDS_HPP
