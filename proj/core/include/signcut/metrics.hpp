#ifndef SIGNCUT_METRICS_HPP
#define SIGNCUT_METRICS_HPP

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "signcut/construct.hpp"
#include "signcut/sgraph.hpp"

namespace signcut {

/// Gold labeling of a subset of words.
struct GoldClasses {
  std::unordered_map<std::string, std::string> class_of;
};

struct SimilarityPair {
  std::string first;
  std::string second;
  double rating = 0.0;
};

using SimilarityPairs = std::vector<SimilarityPair>;

struct MetricsReport {
  std::size_t n = 0;
  std::optional<double> sncut;
  std::optional<std::size_t> nne;
  std::optional<std::size_t> ndc;
  /// (nne + ndc) / n.
  std::optional<double> error;
  std::optional<double> purity;
  std::optional<double> entropy;
  std::optional<double> simlex_accuracy;
  std::optional<double> simlex_coverage;

  // Inputs that could not be matched to the partition's vocabulary.
  std::size_t oov_antonym_pairs = 0;
  std::size_t oov_synonym_pairs = 0;
  std::size_t oov_gold_words = 0;
  std::size_t oov_simlex_pairs = 0;
};

/// Count together with the number of pairs skipped as out of vocabulary.
struct PairCount {
  std::size_t count = 0;
  std::size_t out_of_vocabulary = 0;
};

/// Antonym pairs whose two words share a cluster.
PairCount count_nne(const Partition& p, const Thesaurus& thes,
                    std::span<const std::string> labels);

enum class NdcConvention {
  kExcess,  ///< sum over clusters of (components - 1)
  kRaw,     ///< sum over clusters of components
};

/// Connected components of the synonym subgraph inside each cluster,
/// every member word counting as a vertex.
std::size_t count_ndc(const Partition& p, const Thesaurus& thes,
                      std::span<const std::string> labels,
                      NdcConvention convention = NdcConvention::kExcess);

/// Only labeled words count. Throws InvalidArgument if none are labeled.
double purity(const Partition& p, const GoldClasses& gold, std::span<const std::string> labels);
/// Normalized by log q; throws SingleClassError when q = 1.
double entropy(const Partition& p, const GoldClasses& gold, std::span<const std::string> labels);

struct SimlexResult {
  double accuracy = 0.0;
  double coverage = 0.0;
  std::size_t high_pairs = 0;
  std::size_t covered_pairs = 0;
};

/// Pairs rated above `high_cut`: coverage is the share with both words in
/// the vocabulary, accuracy the share of those placed in one cluster.
/// Both are 0 when their denominator is empty.
SimlexResult simlex_eval(const Partition& p, const SimilarityPairs& pairs,
                         std::span<const std::string> labels, double high_cut = 8.0);

double adjusted_rand_index(std::span<const int> a, std::span<const int> b);

struct ReportInputs {
  const SignedGraph* graph = nullptr;
  const Thesaurus* thesaurus = nullptr;
  const GoldClasses* gold = nullptr;
  const SimilarityPairs* pairs = nullptr;
  double high_cut = 8.0;
  NdcConvention ndc_convention = NdcConvention::kExcess;
};

/// Fills every block whose inputs are present.
MetricsReport report(const Partition& p, std::span<const std::string> labels,
                     const ReportInputs& inputs);

/// Flat JSON object; absent blocks are omitted.
std::string report_json(const MetricsReport& r);

// "word<TAB>class_id"
GoldClasses load_gold_classes(std::istream& in);
// "word1<TAB>word2<TAB>rating"; a non-numeric first line is taken as a header.
SimilarityPairs load_similarity_pairs(std::istream& in);

}  // namespace signcut

#endif  // SIGNCUT_METRICS_HPP
