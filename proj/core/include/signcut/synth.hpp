#ifndef SIGNCUT_SYNTH_HPP
#define SIGNCUT_SYNTH_HPP

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "signcut/construct.hpp"
#include "signcut/discrete.hpp"
#include "signcut/metrics.hpp"
#include "signcut/sgraph.hpp"

namespace signcut {

/// Planted-partition signed graph. Nodes are split into k contiguous,
/// near-equal blocks.
struct PlantedConfig {
  Index n = 100;
  int k = 5;
  double p_in = 0.3;
  double p_out = 0.05;
  double frac_neg_out = 0.5;
  double w_min = 0.5;
  double w_max = 1.0;
  std::uint64_t seed = 1;

  void validate() const;
};

struct PlantedGraph {
  SignedGraph graph;
  std::vector<int> truth;
  /// Nodes left without any edge; such graphs cannot be clustered as is.
  std::size_t isolated = 0;
};

PlantedGraph generate_planted(const PlantedConfig& cfg);

/// Calls `visit` with every assignment of n nodes to exactly k nonempty
/// clusters, enumerated as restricted growth strings.
void for_each_partition(Index n, int k, const std::function<void(const std::vector<int>&)>& visit);

struct BruteForceResult {
  Partition partition;
  double value = 0.0;
  std::size_t evaluated = 0;
};

/// Exhaustive minimum of sncut over all k-way partitions; n <= 12, else
/// TooLarge. Partitions with a zero-volume cluster are skipped.
BruteForceResult brute_force_min_sncut(const SignedGraph& g, int k);

/// Positive edges become synonyms, negative edges antonyms, words being
/// the node labels.
Thesaurus thesaurus_from_signs(const SignedGraph& g);

struct CurvePoint {
  int k = 0;
  std::size_t nne = 0;
  std::size_t ndc = 0;
  double sncut = 0.0;
};

/// Clusters for every K in `ks` and records within-cluster antonym pairs
/// and excess synonym components. K = 1 is the single-cluster partition.
/// Without a thesaurus the graph's own edge signs are used.
std::vector<CurvePoint> nne_ndc_curve(const SignedGraph& g, const Thesaurus* thes,
                                      std::span<const int> ks, std::uint64_t seed,
                                      const ClusterOptions& opts = {});

/// CSV "K,nne,ndc" with a header row.
void write_curve(std::ostream& out, std::span<const CurvePoint> curve);

/**
 * Synthetic lexicon: groups come in pairs that share one region of the
 * embedding space (think "hot" words next to "cold" words). Antonyms link
 * nearby words across the two groups of a pair; synonyms link words to
 * their nearest neighbors inside a group.
 */
struct LexiconConfig {
  Index words = 200;
  int groups = 4;
  Index dim = 8;
  /// Distance between paired regions.
  double region_separation = 4.0;
  /// Offset between the two groups sharing a region.
  double pair_offset = 1.0;
  double spread = 0.5;
  std::size_t antonym_pairs = 80;
  int synonyms_per_word = 2;
  std::uint64_t seed = 1;

  void validate() const;
};

struct Lexicon {
  EmbeddingTable embeddings;
  Thesaurus thesaurus;
  GoldClasses gold;
  std::vector<int> truth;
};

Lexicon generate_lexicon(const LexiconConfig& cfg);

}  // namespace signcut

#endif  // SIGNCUT_SYNTH_HPP
