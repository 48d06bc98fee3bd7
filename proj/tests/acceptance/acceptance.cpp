// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.
#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <Eigen/QR>

#include <json.hpp>

#include "commands.hpp"
#include "oracles.hpp"
#include "signcut/signcut.hpp"

namespace fs = std::filesystem;
using namespace signcut;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* pattern, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), pattern, args...);
  return buf;
}

// Shared between criteria 4, 5 and 6.
struct DiscretizationLog {
  std::vector<std::vector<double>> phi_histories;
  std::vector<std::pair<Eigen::MatrixXd, Eigen::MatrixXd>> procrustes_samples;  // (Z, X)

  void add(const ClusterResult& res) {
    for (const auto& h : res.phi_histories) phi_histories.push_back(h);
    if (procrustes_samples.size() < 40) procrustes_samples.emplace_back(res.relaxed.z, res.state.x);
  }
};

Eigen::MatrixXd random_orthogonal(Index k, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  Eigen::MatrixXd m(k, k);
  for (Index i = 0; i < k * k; ++i) m.data()[i] = gauss(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
  Eigen::MatrixXd q = qr.householderQ();
  // Fix column signs so Q is Haar distributed.
  for (Index j = 0; j < k; ++j) {
    if (qr.matrixQR()(j, j) < 0.0) q.col(j) = -q.col(j);
  }
  return q;
}

// 30 small graphs reused by criteria 2 and 3.
std::vector<Eigen::MatrixXd> small_instances() {
  std::mt19937_64 rng(2024);
  std::vector<Eigen::MatrixXd> out;
  for (int i = 0; i < 30; ++i) {
    const Index n = 4 + static_cast<Index>(i % 4);  // 4..7
    out.push_back(oracle::random_signed_weights(n, 0.6, rng));
  }
  return out;
}

Outcome criterion_psd() {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> gauss;
  std::uniform_int_distribution<int> size(2, 50);
  std::uniform_real_distribution<double> density(0.05, 0.9);
  int negative = 0, mismatched = 0;
  double worst_rel = 0.0;
  for (int t = 0; t < 200; ++t) {
    const Index n = size(rng);
    const Eigen::MatrixXd w = oracle::random_signed_weights(n, density(rng), rng);
    const SignedGraph g = SignedGraph::from_dense(w);
    for (int v = 0; v < 5; ++v) {
      Eigen::VectorXd x(n);
      for (Index i = 0; i < n; ++i) x[i] = gauss(rng);
      const double q = quadratic_form(g, x);
      const double scale = w.cwiseAbs().sum() * x.squaredNorm();
      if (q < -1e-9 * scale) ++negative;
      const double ref = oracle::half_sum_form(w, x);
      const double rel = std::abs(q - ref) / std::max(std::abs(ref), 1e-300);
      worst_rel = std::max(worst_rel, std::abs(q - ref) <= 1e-300 ? 0.0 : rel);
      if (std::abs(q - ref) > 1e-10 * std::max(std::abs(ref), scale * 1e-16)) ++mismatched;
    }
  }
  return {negative == 0 && mismatched == 0,
          fmt("1000 vectors on 200 graphs: %d negative, %d mismatched, worst rel %.2e", negative,
              mismatched, worst_rel)};
}

Outcome criterion_dual_forms(const std::vector<Eigen::MatrixXd>& graphs) {
  std::size_t checked = 0, bad = 0;
  for (const auto& w : graphs) {
    const SignedGraph g = SignedGraph::from_dense(w);
    for (int k = 2; k <= 3; ++k) {
      for_each_partition(w.rows(), k, [&](const std::vector<int>& a) {
        const Partition p{a, k};
        const double direct = sncut(g, p), rayleigh = sncut_rayleigh(g, p);
        const double reference = oracle::sncut_direct(w, a, k);
        ++checked;
        const double tol = 1e-10 * std::max(1.0, std::abs(reference));
        if (std::abs(direct - rayleigh) > tol || std::abs(direct - reference) > tol) ++bad;
      });
    }
  }
  return {bad == 0, fmt("%zu partitions, %zu disagreements", checked, bad)};
}

Outcome criterion_lower_bound(const std::vector<Eigen::MatrixXd>& graphs) {
  std::size_t checked = 0, violations = 0;
  double worst = -std::numeric_limits<double>::infinity();
  auto check = [&](double bound, double value) {
    ++checked;
    worst = std::max(worst, bound - value);
    if (bound > value + 1e-8) ++violations;
  };
  for (const auto& w : graphs) {
    const SignedGraph g = SignedGraph::from_dense(w);
    for (int k = 2; k <= 3; ++k) {
      const double bound = relaxed_solution(g, k).eigenvalues.sum();
      for_each_partition(w.rows(), k, [&](const std::vector<int>& a) {
        check(bound, sncut(g, Partition{a, k}));
      });
    }
  }
  std::mt19937_64 rng(303);
  std::uniform_int_distribution<int> size(10, 60), clusters(2, 5);
  std::uniform_real_distribution<double> density(0.05, 0.5);
  for (int t = 0; t < 100; ++t) {
    const SignedGraph g =
        SignedGraph::from_dense(oracle::random_signed_weights(size(rng), density(rng), rng));
    const int k = clusters(rng);
    const ClusterResult res = cluster(g, k, static_cast<std::uint64_t>(t));
    check(res.relaxed.eigenvalues.sum(), *res.report.sncut);
  }
  return {violations == 0,
          fmt("%zu checks, %zu violations, max(bound - sncut) = %.3e", checked, violations, worst)};
}

Outcome criterion_near_optimal(DiscretizationLog& log) {
  std::mt19937_64 rng(404);
  std::uniform_int_distribution<int> size(4, 8);
  std::uniform_real_distribution<double> density(0.3, 0.8);
  int within_10 = 0, exact = 0;
  for (int t = 0; t < 100; ++t) {
    const SignedGraph g =
        SignedGraph::from_dense(oracle::random_signed_weights(size(rng), density(rng), rng));
    const double best = brute_force_min_sncut(g, 2).value;
    const ClusterResult res = cluster(g, 2, static_cast<std::uint64_t>(t));
    log.add(res);
    const double got = *res.report.sncut;
    if (got <= 1.10 * best) ++within_10;
    if (got <= (1.0 + 1e-9) * best) ++exact;
  }
  return {within_10 >= 90 && exact >= 60,
          fmt("100 graphs: %d within 1.10x (need 90), %d optimal (need 60)", within_10, exact)};
}

Outcome criterion_planted(DiscretizationLog& log) {
  int good = 0, total = 0;
  double worst = 1.0;
  for (int k = 2; k <= 4; ++k) {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
      PlantedConfig cfg;
      cfg.n = 100;
      cfg.k = k;
      cfg.p_in = 0.8;
      cfg.p_out = 0.1;
      cfg.frac_neg_out = 1.0;
      cfg.seed = seed;
      const PlantedGraph pg = generate_planted(cfg);
      const ClusterResult res = cluster(pg.graph, k, seed);
      log.add(res);
      const double ari = adjusted_rand_index(res.partition.assign, pg.truth);
      worst = std::min(worst, ari);
      ++total;
      if (ari >= 0.95) ++good;
    }
  }
  return {good * 100 >= 95 * total,
          fmt("%d/%d runs with ARI >= 0.95, worst ARI %.4f", good, total, worst)};
}

Outcome criterion_monotone(const DiscretizationLog& log) {
  std::size_t sweeps = 0, increases = 0;
  for (const auto& h : log.phi_histories) {
    for (std::size_t t = 1; t < h.size(); ++t) {
      ++sweeps;
      if (h[t] > h[t - 1] + 1e-12) ++increases;
    }
  }
  std::mt19937_64 rng(606);
  std::size_t beaten = 0;
  for (const auto& [z, x] : log.procrustes_samples) {
    const double best = (x - z * procrustes_r(z, x)).norm();
    for (int trial = 0; trial < 1000; ++trial) {
      if ((x - z * random_orthogonal(z.cols(), rng)).norm() < best - 1e-12) {
        ++beaten;
        break;
      }
    }
  }
  return {increases == 0 && beaten == 0 && !log.procrustes_samples.empty(),
          fmt("%zu runs, %zu sweep pairs, %zu increases; Procrustes beaten in %zu of %zu checks",
              log.phi_histories.size(), sweeps, increases, beaten,
              log.procrustes_samples.size())};
}

Outcome criterion_overlay() {
  // Per seed: the lowest-error signed cell (beta_ant > 0) against the
  // lowest-NNE unsigned cell (beta_ant = 0), both at K = 4.
  cli::GridSpec spec;
  spec.sigma = {1.0, 2.0, 4.0, 8.0};
  spec.thresh = {0.02, 0.05, 0.1, 0.2, 0.3};
  spec.k = {4};
  spec.gamma = {1.0};
  spec.beta = {0.0};  // no synonym term: beta_ant = 0 cells are purely distributional
  spec.beta_ant = {0.0, 2.0, 4.0, 8.0, 12.0, 16.0, 24.0};
  cli::CommonOptions common;
  common.jobs = std::max(1u, std::thread::hardware_concurrency());
  int passing = 0;
  double worst_ratio = 0.0;
  std::size_t total_base = 0, total_signed = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    LexiconConfig lc;
    lc.seed = seed;
    const Lexicon lex = generate_lexicon(lc);
    const auto rows = cli::run_grid(spec, lex.embeddings, lex.thesaurus, &lex.gold,
                                    cli::ClusterTuning{}, common);
    std::optional<std::size_t> base, signed_nne;
    for (const auto& row : rows) {  // ranked by error
      if (!row.failure.empty()) continue;
      if (row.beta_ant == 0.0) {
        if (!base || *row.metrics.nne < *base) base = *row.metrics.nne;
      } else if (!signed_nne) {
        signed_nne = *row.metrics.nne;
      }
    }
    if (!base || !signed_nne) continue;
    total_base += *base;
    total_signed += *signed_nne;
    const double ratio = *base == 0 ? (*signed_nne == 0 ? 0.0 : 1.0)
                                    : static_cast<double>(*signed_nne) / static_cast<double>(*base);
    worst_ratio = std::max(worst_ratio, ratio);
    if (ratio <= 0.2) ++passing;
  }
  return {passing == 10,
          fmt("%d/10 seeds reach an 80%% NNE reduction; NNE %zu -> %zu summed, worst ratio %.3f",
              passing, total_base, total_signed, worst_ratio)};
}

Outcome criterion_metric_oracles() {
  std::mt19937_64 rng(808);
  int bad_nne = 0, bad_ndc = 0, bad_pe = 0;
  double worst = 0.0;
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = 2 + rng() % 80;
    const int k = 1 + static_cast<int>(rng() % 8);
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back("w" + std::to_string(i));
    std::vector<int> assign(n);
    for (int& c : assign) c = static_cast<int>(rng() % static_cast<std::uint64_t>(k));
    Thesaurus thes;
    std::vector<std::pair<std::size_t, std::size_t>> syn;
    std::set<std::pair<std::size_t, std::size_t>> ant;
    const std::size_t relations = rng() % (3 * n);
    for (std::size_t e = 0; e < relations; ++e) {
      const std::size_t a = rng() % n, b = rng() % n;
      if (a == b) continue;
      try {
        if (rng() % 2) {
          thes.add_synonym(labels[a], labels[b]);
          syn.emplace_back(a, b);
        } else {
          thes.add_antonym(labels[a], labels[b]);
          ant.insert(std::minmax(a, b));
        }
      } catch (const Error&) {
      }
    }
    const Partition p{assign, k};
    const std::vector<std::pair<std::size_t, std::size_t>> ant_list(ant.begin(), ant.end());
    if (count_nne(p, thes, labels).count != oracle::nne_enumerate(assign, ant_list)) ++bad_nne;
    if (count_ndc(p, thes, labels) != oracle::ndc_union_find(assign, k, syn)) ++bad_ndc;

    // Purity and entropy against the contingency-table formulas.
    const int q = 2 + static_cast<int>(rng() % 5);
    std::vector<int> cls(n);
    for (int& c : cls) c = static_cast<int>(rng() % static_cast<std::uint64_t>(q));
    cls[0] = 0;
    cls[1] = 1;
    std::map<int, int> dense;
    for (int c : std::set<int>(cls.begin(), cls.end())) dense.emplace(c, static_cast<int>(dense.size()));
    GoldClasses gold;
    for (std::size_t i = 0; i < n; ++i) {
      cls[i] = dense[cls[i]];
      gold.class_of[labels[i]] = std::to_string(cls[i]);
    }
    const auto [pur, ent] = oracle::purity_entropy(assign, cls, k, static_cast<int>(dense.size()));
    const double dp = std::abs(purity(p, gold, labels) - pur);
    const double de = std::abs(entropy(p, gold, labels) - ent);
    worst = std::max({worst, dp, de});
    if (dp > 1e-12 || de > 1e-12) ++bad_pe;
  }
  return {bad_nne == 0 && bad_ndc == 0 && bad_pe == 0,
          fmt("500 instances: %d NNE, %d NDC, %d purity/entropy mismatches (max diff %.1e)",
              bad_nne, bad_ndc, bad_pe, worst)};
}

// ---- criterion 9 ----

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int run(const std::string& args, const fs::path& out, const fs::path& err) {
  const std::string cmd = std::string(SIGNCUT_CLI_PATH) + " " + args + " > \"" + out.string() +
                          "\" 2> \"" + err.string() + "\"";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Outcome criterion_determinism() {
  const fs::path root = fs::temp_directory_path() / "signcut_acceptance_cli";
  fs::remove_all(root);
  std::vector<std::string> problems;

  // Inputs shared by both runs.
  fs::create_directories(root / "in");
  LexiconConfig lc;
  lc.words = 80;
  lc.antonym_pairs = 20;
  const Lexicon lex = generate_lexicon(lc);
  {
    std::ofstream out(root / "in" / "emb.txt");
    for (Index i = 0; i < lex.embeddings.size(); ++i) {
      out << lex.embeddings.words()[i];
      for (Index c = 0; c < lex.embeddings.dim(); ++c) {
        out << ' ' << format_double(lex.embeddings.vectors()(i, c));
      }
      out << '\n';
    }
    std::ofstream thes(root / "in" / "thes.tsv");
    write_thesaurus(thes, lex.thesaurus);
    std::ofstream gold(root / "in" / "gold.tsv");
    for (const auto& w : lex.embeddings.words()) gold << w << '\t' << lex.gold.class_of.at(w) << '\n';
    std::ofstream pairs(root / "in" / "simlex.tsv");
    pairs << "word1\tword2\tscore\n";
    for (const auto& [a, b] : lex.thesaurus.synonyms()) pairs << a << '\t' << b << "\t9.0\n";
  }
  const std::string in = (root / "in").string();

  auto run_all = [&](const fs::path& dir, const std::string& jobs) {
    fs::create_directories(dir);
    const std::string d = dir.string();
    const std::string common = "--seed 7 --jobs " + jobs + " ";
    const std::vector<std::pair<std::string, std::string>> steps{
        {"synth", common + "synth --nodes 60 -k 3 --p-in 0.8 --p-out 0.1 --output " + d +
                      "/planted.txt --curve " + d + "/curve.csv --curve-k 1,2,3,4"},
        {"build-graph", common + "build-graph --embeddings " + in + "/emb.txt --thesaurus " + in +
                            "/thes.tsv --sigma 4 --thresh 0.05 --beta 0 --beta-ant 2 --output " +
                            d + "/lex.txt"},
        {"cluster", common + "cluster --graph " + d + "/lex.txt -k 4 --output " + d +
                        "/part.tsv --report " + d + "/report.json"},
        {"evaluate", common + "evaluate --partition " + d + "/part.tsv --graph " + d +
                         "/lex.txt --thesaurus " + in + "/thes.tsv --gold " + in +
                         "/gold.tsv --simlex " + in + "/simlex.tsv --output " + d + "/eval.json"},
        {"grid-search", common + "grid-search --embeddings " + in + "/emb.txt --thesaurus " + in +
                            "/thes.tsv --gold " + in +
                            "/gold.tsv --sigma 2,4 --thresh 0.05 -k 2,4 --beta 0 --beta-ant 0,2 "
                            "--output " + d + "/grid.csv"},
        {"spectrum", common + "spectrum --graph " + d + "/planted.txt -k 4 --output " + d +
                         "/spectrum.csv"},
    };
    for (const auto& [name, args] : steps) {
      const int code = run(args, dir / (name + ".stdout"), dir / (name + ".stderr"));
      if (code != 0) problems.push_back(name + " exited " + std::to_string(code));
    }
  };
  run_all(root / "a", "1");
  run_all(root / "b", "4");

  std::size_t compared = 0;
  for (const auto& entry : fs::directory_iterator(root / "a")) {
    const std::string name = entry.path().filename().string();
    if (name.ends_with(".stderr")) continue;  // progress log only
    ++compared;
    if (slurp(entry.path()) != slurp(root / "b" / name)) problems.push_back(name + " differs");
  }

  // Round-trips of every file format.
  const SignedGraph planted = [&] {
    std::ifstream f(root / "a" / "planted.txt");
    return read_graph(f);
  }();
  {
    std::stringstream buf;
    write_graph(buf, planted);
    if (buf.str() != slurp(root / "a" / "planted.txt")) problems.push_back("graph round-trip");
    if (read_graph(buf).edges() != planted.edges()) problems.push_back("graph reparse");
  }
  {
    std::ifstream f(root / "a" / "part.tsv");
    const LabeledPartition lp = read_partition(f);
    std::stringstream buf;
    write_partition(buf, lp.labels, lp.partition);
    if (buf.str() != slurp(root / "a" / "part.tsv")) problems.push_back("partition round-trip");
  }
  {
    std::ifstream f(root / "a" / "lex.txt.vocab");
    const auto vocab = read_vocabulary(f);
    std::stringstream buf;
    write_vocabulary(buf, vocab);
    if (buf.str() != slurp(root / "a" / "lex.txt.vocab")) problems.push_back("vocab round-trip");
  }
  {
    std::ifstream f(root / "in" / "thes.tsv");
    const Thesaurus t = load_thesaurus(f);
    std::stringstream buf;
    write_thesaurus(buf, t);
    if (buf.str() != slurp(root / "in" / "thes.tsv")) problems.push_back("thesaurus round-trip");
  }
  {
    std::ifstream f(root / "in" / "emb.txt");
    const EmbeddingTable t = load_embeddings(f);
    if (t.words() != lex.embeddings.words() || t.vectors() != lex.embeddings.vectors()) {
      problems.push_back("embedding round-trip");
    }
  }
  {
    std::ifstream f(root / "in" / "gold.tsv");
    const GoldClasses g = load_gold_classes(f);
    if (g.class_of != lex.gold.class_of) problems.push_back("gold round-trip");
  }
  {
    std::ifstream f(root / "a" / "report.json");
    const std::string text = slurp(root / "a" / "report.json");
    const auto j = nlohmann::json::parse(text);
    if (j.dump() + "\n" != text) problems.push_back("report JSON round-trip");
  }

  std::string detail = fmt("%zu outputs compared across reruns", compared);
  if (problems.empty()) {
    fs::remove_all(root);
  } else {
    detail += "; problems:";
    for (const auto& p : problems) detail += " [" + p + "]";
  }
  return {problems.empty() && compared >= 14, detail};
}

}  // namespace

int main() {
  const auto graphs = small_instances();
  DiscretizationLog log;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 Laplacian PSD and quadratic-form identity (< 5 s)", criterion_psd},
      {"2 Direct and Rayleigh sncut agree (< 30 s)", [&] { return criterion_dual_forms(graphs); }},
      {"3 Relaxation lower bound", [&] { return criterion_lower_bound(graphs); }},
      {"4 Near-optimality vs exhaustive search (< 2 min)", [&] { return criterion_near_optimal(log); }},
      {"5 Planted partition recovery (< 2 min)", [&] { return criterion_planted(log); }},
      {"6 Discretization monotone, Procrustes optimal", [&] { return criterion_monotone(log); }},
      {"7 Signed overlay reduces NNE by 80% (< 5 min)", criterion_overlay},
      {"8 Metric oracles (< 10 s)", criterion_metric_oracles},
      {"9 CLI determinism and format round-trips", criterion_determinism},
  };
  const double limits[] = {5, 30, 0, 120, 120, 0, 300, 10, 0};

  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (limits[i] > 0 && secs > limits[i]) {
      o.pass = false;
      o.detail += fmt("; over time limit %.0f s", limits[i]);
    }
    all = all && o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  [" << criteria[i].first << "] " << o.detail
              << fmt(" (%.2f s)", secs) << std::endl;
  }
  return all ? 0 : 1;
}
