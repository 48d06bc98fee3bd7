#include "signcut/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>

#include <json.hpp>

#include "signcut/error.hpp"
#include "signcut/graph_io.hpp"

namespace signcut {
namespace {

using WordIndex = std::unordered_map<std::string, std::size_t>;

WordIndex index_words(const Partition& p, std::span<const std::string> labels) {
  if (labels.size() != p.assign.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "label count does not match partition size");
  }
  WordIndex index;
  for (std::size_t i = 0; i < labels.size(); ++i) index.emplace(labels[i], i);
  return index;
}

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> cols;
  std::size_t start = 0;
  for (std::size_t tab; (tab = line.find('\t', start)) != std::string::npos; start = tab + 1) {
    cols.push_back(line.substr(start, tab - start));
  }
  cols.push_back(line.substr(start));
  return cols;
}

// Words of the partition that carry a gold class, grouped by cluster as
// class -> count.
struct ClassCounts {
  std::vector<std::map<std::string, std::size_t>> per_cluster;
  std::size_t labeled = 0;
  std::size_t classes = 0;
};

ClassCounts class_counts(const Partition& p, const GoldClasses& gold,
                         std::span<const std::string> labels) {
  if (labels.size() != p.assign.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "label count does not match partition size");
  }
  ClassCounts out;
  out.per_cluster.resize(static_cast<std::size_t>(p.k));
  std::map<std::string, int> seen_classes;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto it = gold.class_of.find(labels[i]);
    if (it == gold.class_of.end()) continue;
    ++out.per_cluster[static_cast<std::size_t>(p.assign[i])][it->second];
    ++out.labeled;
    seen_classes[it->second] = 1;
  }
  out.classes = seen_classes.size();
  if (out.labeled == 0) {
    throw Error(ErrorCode::kInvalidArgument, "no partition word has a gold class");
  }
  return out;
}

}  // namespace

PairCount count_nne(const Partition& p, const Thesaurus& thes,
                    std::span<const std::string> labels) {
  const WordIndex index = index_words(p, labels);
  PairCount out;
  for (const auto& [a, b] : thes.antonyms()) {
    auto ia = index.find(a);
    auto ib = index.find(b);
    if (ia == index.end() || ib == index.end()) {
      ++out.out_of_vocabulary;
      continue;
    }
    if (p.assign[ia->second] == p.assign[ib->second]) ++out.count;
  }
  return out;
}

std::size_t count_ndc(const Partition& p, const Thesaurus& thes,
                      std::span<const std::string> labels, NdcConvention convention) {
  const WordIndex index = index_words(p, labels);
  const std::size_t n = labels.size();
  std::vector<std::vector<std::size_t>> adjacency(n);
  for (const auto& [a, b] : thes.synonyms()) {
    auto ia = index.find(a);
    auto ib = index.find(b);
    if (ia == index.end() || ib == index.end()) continue;
    if (p.assign[ia->second] != p.assign[ib->second]) continue;
    adjacency[ia->second].push_back(ib->second);
    adjacency[ib->second].push_back(ia->second);
  }

  // Breadth-first flood fill; edges never leave a cluster.
  std::vector<std::size_t> components(static_cast<std::size_t>(p.k), 0);
  std::vector<char> visited(n, 0);
  std::vector<std::size_t> frontier;
  for (std::size_t s = 0; s < n; ++s) {
    if (visited[s]) continue;
    ++components[static_cast<std::size_t>(p.assign[s])];
    visited[s] = 1;
    frontier.assign(1, s);
    while (!frontier.empty()) {
      const std::size_t v = frontier.back();
      frontier.pop_back();
      for (std::size_t u : adjacency[v]) {
        if (!visited[u]) {
          visited[u] = 1;
          frontier.push_back(u);
        }
      }
    }
  }

  std::size_t total = 0;
  for (std::size_t c : components) {
    if (convention == NdcConvention::kRaw) {
      total += c;
    } else if (c > 0) {
      total += c - 1;
    }
  }
  return total;
}

double purity(const Partition& p, const GoldClasses& gold, std::span<const std::string> labels) {
  const ClassCounts counts = class_counts(p, gold, labels);
  std::size_t dominant = 0;
  for (const auto& cluster : counts.per_cluster) {
    std::size_t best = 0;
    for (const auto& [cls, count] : cluster) best = std::max(best, count);
    dominant += best;
  }
  return static_cast<double>(dominant) / static_cast<double>(counts.labeled);
}

double entropy(const Partition& p, const GoldClasses& gold, std::span<const std::string> labels) {
  const ClassCounts counts = class_counts(p, gold, labels);
  if (counts.classes < 2) {
    throw Error(ErrorCode::kSingleClass, "entropy needs at least two gold classes");
  }
  const double n = static_cast<double>(counts.labeled);
  const double log_q = std::log(static_cast<double>(counts.classes));
  double total = 0.0;
  for (const auto& cluster : counts.per_cluster) {
    std::size_t size = 0;
    for (const auto& [cls, count] : cluster) size += count;
    if (size == 0) continue;
    const double nr = static_cast<double>(size);
    double h = 0.0;
    for (const auto& [cls, count] : cluster) {
      const double share = static_cast<double>(count) / nr;
      h -= share * std::log(share);
    }
    total += (nr / n) * h / log_q;
  }
  return total;
}

SimlexResult simlex_eval(const Partition& p, const SimilarityPairs& pairs,
                         std::span<const std::string> labels, double high_cut) {
  if (!(high_cut > 0.0 && high_cut < 10.0)) {
    throw Error(ErrorCode::kInvalidArgument, "high_cut must lie in (0, 10)");
  }
  const WordIndex index = index_words(p, labels);
  SimlexResult out;
  std::size_t together = 0;
  for (const auto& pair : pairs) {
    if (!(pair.rating > high_cut)) continue;
    ++out.high_pairs;
    auto ia = index.find(pair.first);
    auto ib = index.find(pair.second);
    if (ia == index.end() || ib == index.end()) continue;
    ++out.covered_pairs;
    if (p.assign[ia->second] == p.assign[ib->second]) ++together;
  }
  if (out.high_pairs > 0) {
    out.coverage = static_cast<double>(out.covered_pairs) / static_cast<double>(out.high_pairs);
  }
  if (out.covered_pairs > 0) {
    out.accuracy = static_cast<double>(together) / static_cast<double>(out.covered_pairs);
  }
  return out;
}

double adjusted_rand_index(std::span<const int> a, std::span<const int> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "labelings differ in length");
  }
  std::map<std::pair<int, int>, double> joint;
  std::map<int, double> rows, cols;
  for (std::size_t i = 0; i < a.size(); ++i) {
    joint[{a[i], b[i]}] += 1.0;
    rows[a[i]] += 1.0;
    cols[b[i]] += 1.0;
  }
  auto choose2 = [](double x) { return x * (x - 1.0) / 2.0; };
  double index = 0.0, sum_rows = 0.0, sum_cols = 0.0;
  for (const auto& [key, count] : joint) index += choose2(count);
  for (const auto& [key, count] : rows) sum_rows += choose2(count);
  for (const auto& [key, count] : cols) sum_cols += choose2(count);
  const double total = choose2(static_cast<double>(a.size()));
  if (total == 0.0) return 1.0;
  const double expected = sum_rows * sum_cols / total;
  const double maximum = 0.5 * (sum_rows + sum_cols);
  // Both labelings trivial (all one cluster, or all singletons) and equal.
  if (maximum == expected) return 1.0;
  return (index - expected) / (maximum - expected);
}

MetricsReport report(const Partition& p, std::span<const std::string> labels,
                     const ReportInputs& inputs) {
  MetricsReport r;
  r.n = p.assign.size();
  if (inputs.graph != nullptr) r.sncut = sncut(*inputs.graph, p);
  if (inputs.thesaurus != nullptr) {
    const PairCount nne = count_nne(p, *inputs.thesaurus, labels);
    r.nne = nne.count;
    r.oov_antonym_pairs = nne.out_of_vocabulary;
    r.ndc = count_ndc(p, *inputs.thesaurus, labels, inputs.ndc_convention);
    const WordIndex index = index_words(p, labels);
    for (const auto& [a, b] : inputs.thesaurus->synonyms()) {
      if (!index.count(a) || !index.count(b)) ++r.oov_synonym_pairs;
    }
    r.error = r.n == 0 ? 0.0
                       : static_cast<double>(*r.nne + *r.ndc) / static_cast<double>(r.n);
  }
  if (inputs.gold != nullptr) {
    r.purity = purity(p, *inputs.gold, labels);
    r.entropy = entropy(p, *inputs.gold, labels);
    const WordIndex index = index_words(p, labels);
    for (const auto& [word, cls] : inputs.gold->class_of) {
      if (!index.count(word)) ++r.oov_gold_words;
    }
  }
  if (inputs.pairs != nullptr) {
    const SimlexResult s = simlex_eval(p, *inputs.pairs, labels, inputs.high_cut);
    r.simlex_accuracy = s.accuracy;
    r.simlex_coverage = s.coverage;
    r.oov_simlex_pairs = s.high_pairs - s.covered_pairs;
  }
  return r;
}

std::string report_json(const MetricsReport& r) {
  nlohmann::ordered_json j;
  j["n"] = r.n;
  if (r.sncut) j["sncut"] = *r.sncut;
  if (r.nne) j["nne"] = *r.nne;
  if (r.ndc) j["ndc"] = *r.ndc;
  if (r.error) j["error"] = *r.error;
  if (r.purity) j["purity"] = *r.purity;
  if (r.entropy) j["entropy"] = *r.entropy;
  if (r.simlex_accuracy) j["simlex_accuracy"] = *r.simlex_accuracy;
  if (r.simlex_coverage) j["simlex_coverage"] = *r.simlex_coverage;
  if (r.nne) {
    j["oov_antonym_pairs"] = r.oov_antonym_pairs;
    j["oov_synonym_pairs"] = r.oov_synonym_pairs;
  }
  if (r.purity) j["oov_gold_words"] = r.oov_gold_words;
  if (r.simlex_accuracy) j["oov_simlex_pairs"] = r.oov_simlex_pairs;
  return j.dump();
}

GoldClasses load_gold_classes(std::istream& in) {
  GoldClasses gold;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cols = split_tabs(line);
    if (cols.size() != 2 || cols[0].empty() || cols[1].empty()) {
      throw Error(ErrorCode::kParse,
                  "line " + std::to_string(line_no) + ": expected \"word<TAB>class_id\"");
    }
    auto [it, inserted] = gold.class_of.emplace(cols[0], cols[1]);
    if (!inserted && it->second != cols[1]) {
      throw Error(ErrorCode::kConflict,
                  "line " + std::to_string(line_no) + ": word '" + cols[0] +
                      "' has two gold classes");
    }
  }
  return gold;
}

SimilarityPairs load_similarity_pairs(std::istream& in) {
  SimilarityPairs pairs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cols = split_tabs(line);
    double rating = 0.0;
    const bool numeric = cols.size() >= 3 && parse_double(cols[2], rating);
    if (!numeric && line_no == 1) continue;
    if (cols.size() != 3 || !numeric || cols[0].empty() || cols[1].empty()) {
      throw Error(ErrorCode::kParse, "line " + std::to_string(line_no) +
                                         ": expected \"word1<TAB>word2<TAB>rating\"");
    }
    pairs.push_back({cols[0], cols[1], rating});
  }
  return pairs;
}

}  // namespace signcut
