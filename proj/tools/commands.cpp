#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>
#include <unordered_set>

#include <json.hpp>

namespace signcut::cli {
namespace {

std::ifstream open_input(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  return in;
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  return out;
}

void require_file(const fs::path& path) {
  if (!fs::is_regular_file(path)) throw Error(ErrorCode::kIo, "no such file: " + path.string());
}

// Parse errors gain the file name so the user can find the line.
template <typename Fn>
auto with_file_context(const fs::path& path, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

template <typename Fn>
auto read_file(const fs::path& path, Fn&& parse) {
  return with_file_context(path, [&] {
    auto in = open_input(path);
    return parse(in);
  });
}

fs::path sidecar(const fs::path& base, const std::string& suffix) {
  return fs::path(base.string() + suffix);
}

void write_text(const std::optional<fs::path>& path, std::ostream& fallback,
                const std::string& text) {
  if (path) {
    auto out = open_output(*path);
    out << text;
  } else {
    fallback << text;
  }
}

SignedGraph load_graph(const fs::path& path, const std::optional<fs::path>& vocab) {
  SignedGraph g = read_file(path, [](std::istream& in) { return read_graph(in); });
  fs::path vocab_path = vocab.value_or(sidecar(path, ".vocab"));
  if (vocab || fs::exists(vocab_path)) {
    auto words = read_file(vocab_path, [](std::istream& in) { return read_vocabulary(in); });
    g = g.with_labels(std::move(words));
  }
  return g;
}

std::vector<std::string> node_labels(const SignedGraph& g) {
  std::vector<std::string> labels(static_cast<std::size_t>(g.size()));
  for (Index i = 0; i < g.size(); ++i) labels[static_cast<std::size_t>(i)] = g.label(i);
  return labels;
}

std::string ingestion_json(const IngestionReport& r) {
  nlohmann::ordered_json j;
  j["vocabulary"] = r.vocabulary;
  j["synonym_pairs"] = r.synonym_pairs;
  j["antonym_pairs"] = r.antonym_pairs;
  j["dropped_pairs"] = r.dropped_pairs;
  j["edges"] = r.edges;
  j["negative_edges"] = r.negative_edges;
  return j.dump();
}

std::optional<std::unordered_set<std::string>> load_filter(const std::optional<fs::path>& path) {
  if (!path) return std::nullopt;
  auto words = read_file(*path, [](std::istream& in) { return read_vocabulary(in); });
  return std::unordered_set<std::string>(words.begin(), words.end());
}

std::string csv_optional(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

std::string csv_escape(const std::string& text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

ClusterOptions ClusterTuning::options() const {
  ClusterOptions opts;
  opts.restarts = restarts;
  opts.discretize.max_iter = max_iter;
  opts.discretize.tol = tol;
  opts.eigen.tol = eig_tol;
  return opts;
}

void ClusterTuning::validate() const {
  if (restarts < 1) throw Error(ErrorCode::kInvalidArgument, "restarts must be >= 1");
  if (max_iter < 1) throw Error(ErrorCode::kInvalidArgument, "max-iter must be >= 1");
  if (!(tol >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "tol must be >= 0");
  if (!(eig_tol > 0.0)) throw Error(ErrorCode::kInvalidArgument, "eig-tol must be > 0");
}

std::size_t GridSpec::cell_count() const {
  return sigma.size() * thresh.size() * k.size() * gamma.size() * beta.size() * beta_ant.size();
}

void GridSpec::validate() const {
  if (cell_count() == 0) throw Error(ErrorCode::kInvalidArgument, "every grid list must be nonempty");
  for (int v : k) {
    if (v < 2) throw Error(ErrorCode::kBadK, "grid K values must be >= 2");
  }
  for (double s : sigma) {
    for (double t : thresh) {
      KernelParams p;
      p.sigma = s;
      p.thresh = t;
      p.validate();
    }
  }
  for (double g : gamma) {
    for (double b : beta) {
      for (double a : beta_ant) {
        KernelParams p;
        p.gamma = g;
        p.beta = b;
        p.beta_ant = a;
        p.validate();
      }
    }
  }
}

void cmd_build_graph(const BuildGraphConfig& cfg, const CommonOptions&, std::ostream& out,
                     std::ostream& log) {
  cfg.params.validate();
  require_file(cfg.embeddings);
  if (cfg.thesaurus) require_file(*cfg.thesaurus);

  const auto filter = load_filter(cfg.vocab_filter);
  const EmbeddingTable emb =
      read_file(cfg.embeddings, [&](std::istream& in) { return load_embeddings(in, filter); });
  const Thesaurus thes =
      cfg.thesaurus ? read_file(*cfg.thesaurus, [](std::istream& in) { return load_thesaurus(in); })
                    : Thesaurus{};
  log << "build-graph: " << emb.size() << " words, dimension " << emb.dim() << '\n';

  const LexicalGraph built = build_lexical_graph(emb, thes, cfg.params);
  {
    auto file = open_output(cfg.output);
    write_graph(file, built.graph);
  }
  {
    auto file = open_output(sidecar(cfg.output, ".vocab"));
    write_vocabulary(file, built.graph.labels());
  }
  out << ingestion_json(built.report) << '\n';
}

void cmd_cluster(const ClusterConfig& cfg, const CommonOptions& common, std::ostream& out,
                 std::ostream& log) {
  cfg.tuning.validate();
  if (cfg.k < 2) throw Error(ErrorCode::kBadK, "K must be >= 2");
  require_file(cfg.graph);
  const SignedGraph g = load_graph(cfg.graph, cfg.vocab);
  if (cfg.k > g.size()) {
    throw Error(ErrorCode::kBadK, "K = " + std::to_string(cfg.k) + " exceeds node count " +
                                      std::to_string(g.size()));
  }
  log << "cluster: n = " << g.size() << ", K = " << cfg.k << ", restarts = "
      << cfg.tuning.restarts << '\n';

  const ClusterResult result = cluster(g, cfg.k, common.seed, cfg.tuning.options());
  {
    auto file = open_output(cfg.output);
    write_partition(file, g, result.partition);
  }
  write_text(cfg.report, out, report_json(result.report) + "\n");
}

void cmd_evaluate(const EvaluateConfig& cfg, const CommonOptions&, std::ostream& out,
                  std::ostream& log) {
  if (!(cfg.high_cut > 0.0 && cfg.high_cut < 10.0)) {
    throw Error(ErrorCode::kInvalidArgument, "high-cut must lie in (0, 10)");
  }
  const LabeledPartition lp =
      read_file(cfg.partition, [](std::istream& in) { return read_partition(in); });

  std::optional<SignedGraph> graph;
  if (cfg.graph) {
    graph = load_graph(*cfg.graph, std::nullopt);
    if (graph->size() != lp.partition.size()) {
      throw Error(ErrorCode::kDimensionMismatch, "partition and graph sizes differ");
    }
  }
  std::optional<Thesaurus> thes;
  if (cfg.thesaurus) {
    thes = read_file(*cfg.thesaurus, [](std::istream& in) { return load_thesaurus(in); });
  }
  std::optional<GoldClasses> gold;
  if (cfg.gold) gold = read_file(*cfg.gold, [](std::istream& in) { return load_gold_classes(in); });
  std::optional<SimilarityPairs> pairs;
  if (cfg.simlex) {
    pairs = read_file(*cfg.simlex, [](std::istream& in) { return load_similarity_pairs(in); });
  }

  ReportInputs inputs;
  inputs.graph = graph ? &*graph : nullptr;
  inputs.thesaurus = thes ? &*thes : nullptr;
  inputs.gold = gold ? &*gold : nullptr;
  inputs.pairs = pairs ? &*pairs : nullptr;
  inputs.high_cut = cfg.high_cut;
  inputs.ndc_convention = cfg.raw_components ? NdcConvention::kRaw : NdcConvention::kExcess;
  log << "evaluate: " << lp.partition.size() << " nodes, " << lp.partition.k << " clusters\n";

  const MetricsReport r = report(lp.partition, lp.labels, inputs);
  write_text(cfg.output, out, report_json(r) + "\n");
}

std::vector<GridRow> run_grid(const GridSpec& grid, const EmbeddingTable& emb,
                              const Thesaurus& thes, const GoldClasses* gold,
                              const ClusterTuning& tuning, const CommonOptions& common) {
  std::vector<GridRow> rows;
  for (double sigma : grid.sigma) {
    for (double thresh : grid.thresh) {
      for (int k : grid.k) {
        for (double gamma : grid.gamma) {
          for (double beta : grid.beta) {
            for (double beta_ant : grid.beta_ant) {
              GridRow row;
              row.sigma = sigma;
              row.thresh = thresh;
              row.k = k;
              row.gamma = gamma;
              row.beta = beta;
              row.beta_ant = beta_ant;
              row.cell = rows.size();
              rows.push_back(row);
            }
          }
        }
      }
    }
  }

  const ClusterOptions opts = tuning.options();
  const std::vector<std::string>& labels = emb.words();
  auto evaluate_cell = [&](GridRow& row) {
    try {
      KernelParams params;
      params.sigma = row.sigma;
      params.thresh = row.thresh;
      params.gamma = row.gamma;
      params.beta = row.beta;
      params.beta_ant = row.beta_ant;
      const LexicalGraph built = build_lexical_graph(emb, thes, params);
      const ClusterResult result = cluster(built.graph, row.k, common.seed, opts);
      ReportInputs inputs;
      inputs.graph = &built.graph;
      inputs.thesaurus = &thes;
      inputs.gold = gold;
      row.metrics = report(result.partition, labels, inputs);
    } catch (const Error& e) {
      row.failure = std::string(e.name()) + ": " + e.what();
    }
  };

  // Workers claim cells by index; every cell writes only its own row.
  const unsigned workers = std::max(1u, std::min<unsigned>(common.jobs,
                                                           static_cast<unsigned>(rows.size())));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < rows.size();) evaluate_cell(rows[i]);
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  std::stable_sort(rows.begin(), rows.end(), [](const GridRow& a, const GridRow& b) {
    const bool a_ok = a.failure.empty(), b_ok = b.failure.empty();
    if (a_ok != b_ok) return a_ok;
    if (a_ok && *a.metrics.error != *b.metrics.error) return *a.metrics.error < *b.metrics.error;
    return a.cell < b.cell;
  });
  return rows;
}

void write_grid_csv(std::ostream& out, const std::vector<GridRow>& rows) {
  out << "sigma,thresh,K,gamma,beta,beta_ant,error,purity,entropy,nne,ndc,sncut,status\n";
  for (const GridRow& row : rows) {
    out << format_double(row.sigma) << ',' << format_double(row.thresh) << ',' << row.k << ','
        << format_double(row.gamma) << ',' << format_double(row.beta) << ','
        << format_double(row.beta_ant) << ',';
    if (row.failure.empty()) {
      const MetricsReport& m = row.metrics;
      out << csv_optional(m.error) << ',' << csv_optional(m.purity) << ','
          << csv_optional(m.entropy) << ',' << *m.nne << ',' << *m.ndc << ','
          << csv_optional(m.sncut) << ",ok\n";
    } else {
      out << ",,,,,," << csv_escape(row.failure) << '\n';
    }
  }
}

void cmd_grid_search(const GridConfig& cfg, const CommonOptions& common, std::ostream& out,
                     std::ostream& log) {
  cfg.grid.validate();
  cfg.tuning.validate();
  if (!cfg.thesaurus) {
    throw Error(ErrorCode::kInvalidArgument, "grid-search needs --thesaurus to score cells");
  }
  require_file(cfg.embeddings);
  require_file(*cfg.thesaurus);

  const auto filter = load_filter(cfg.vocab_filter);
  const EmbeddingTable emb =
      read_file(cfg.embeddings, [&](std::istream& in) { return load_embeddings(in, filter); });
  const Thesaurus thes =
      read_file(*cfg.thesaurus, [](std::istream& in) { return load_thesaurus(in); });
  std::optional<GoldClasses> gold;
  if (cfg.gold) gold = read_file(*cfg.gold, [](std::istream& in) { return load_gold_classes(in); });

  log << "grid-search: " << cfg.grid.cell_count() << " cells ("
      << cfg.grid.sigma.size() << " sigma x " << cfg.grid.thresh.size() << " thresh x "
      << cfg.grid.k.size() << " K x " << cfg.grid.gamma.size() << " gamma x "
      << cfg.grid.beta.size() << " beta x " << cfg.grid.beta_ant.size() << " beta_ant), "
      << common.jobs << " jobs\n";

  const auto rows = run_grid(cfg.grid, emb, thes, gold ? &*gold : nullptr, cfg.tuning, common);
  std::ostringstream csv;
  write_grid_csv(csv, rows);
  write_text(cfg.output, out, csv.str());
}

void cmd_synth(const SynthConfig& cfg, const CommonOptions& common, std::ostream&,
               std::ostream& log) {
  cfg.planted.validate();
  cfg.tuning.validate();
  if (cfg.curve && cfg.curve_ks.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "--curve needs at least one --curve-k value");
  }
  for (int k : cfg.curve_ks) {
    if (k < 1 || k > cfg.planted.n) throw Error(ErrorCode::kBadK, "curve K outside [1, n]");
  }

  const PlantedGraph planted = generate_planted(cfg.planted);
  if (planted.isolated > 0) {
    log << "synth: warning: " << planted.isolated << " isolated vertices\n";
  }
  {
    auto file = open_output(cfg.output);
    write_graph(file, planted.graph);
  }
  {
    auto file = open_output(sidecar(cfg.output, ".labels.tsv"));
    write_partition(file, planted.graph, Partition{planted.truth, cfg.planted.k});
  }
  log << "synth: n = " << cfg.planted.n << ", edges = " << planted.graph.edge_count()
      << ", negative = " << planted.graph.negative_edge_count() << '\n';

  if (cfg.curve) {
    const auto curve =
        nne_ndc_curve(planted.graph, nullptr, cfg.curve_ks, common.seed, cfg.tuning.options());
    auto file = open_output(*cfg.curve);
    write_curve(file, curve);
  }
}

void cmd_spectrum(const SpectrumConfig& cfg, const CommonOptions& common, std::ostream& out,
                  std::ostream&) {
  if (cfg.k < 1) throw Error(ErrorCode::kBadK, "K must be >= 1");
  require_file(cfg.graph);
  const SignedGraph g = load_graph(cfg.graph, std::nullopt);
  EigenOptions opts;
  opts.tol = cfg.eig_tol;
  opts.seed = common.seed;
  const RelaxedSolution rs = relaxed_solution(g, cfg.k, opts);
  std::ostringstream csv;
  write_spectrum(csv, rs.eigenvalues);
  write_text(cfg.output, out, csv.str());
}

std::string error_json(std::string_view name, std::string_view message) {
  nlohmann::ordered_json j;
  j["error"] = name;
  j["message"] = message;
  return j.dump();
}

}  // namespace signcut::cli
