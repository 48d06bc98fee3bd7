#include "signcut/synth.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <numeric>
#include <ostream>
#include <random>

#include "signcut/error.hpp"

namespace signcut {
namespace {

constexpr Index kBruteForceLimit = 12;

bool is_probability(double p) { return p >= 0.0 && p <= 1.0; }

std::vector<int> contiguous_blocks(Index n, int k) {
  std::vector<int> truth(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    truth[static_cast<std::size_t>(i)] = static_cast<int>(i * k / n);
  }
  return truth;
}

void enumerate(std::vector<int>& rgs, Index pos, int used, int k,
               const std::function<void(const std::vector<int>&)>& visit) {
  const auto n = static_cast<Index>(rgs.size());
  if (pos == n) {
    if (used == k) visit(rgs);
    return;
  }
  // Not enough positions left to open the remaining clusters.
  if (k - used > n - pos) return;
  const int limit = std::min(used + 1, k);
  for (int c = 0; c < limit; ++c) {
    rgs[static_cast<std::size_t>(pos)] = c;
    enumerate(rgs, pos + 1, std::max(used, c + 1), k, visit);
  }
}

}  // namespace

void PlantedConfig::validate() const {
  if (k < 1 || n < k) throw Error(ErrorCode::kInvalidArgument, "need n >= k >= 1");
  if (!is_probability(p_in) || !is_probability(p_out) || !is_probability(frac_neg_out)) {
    throw Error(ErrorCode::kInvalidArgument, "probabilities must lie in [0, 1]");
  }
  if (!(w_min > 0.0) || !(w_max >= w_min)) {
    throw Error(ErrorCode::kInvalidArgument, "weight bounds must satisfy 0 < w_min <= w_max");
  }
}

PlantedGraph generate_planted(const PlantedConfig& cfg) {
  cfg.validate();
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> weight(cfg.w_min, cfg.w_max);

  PlantedGraph out;
  out.truth = contiguous_blocks(cfg.n, cfg.k);
  std::vector<Edge> edges;
  for (Index i = 0; i < cfg.n; ++i) {
    for (Index j = i + 1; j < cfg.n; ++j) {
      // Three draws per pair keep the stream aligned across configs.
      const double present = unit(rng);
      const double negative = unit(rng);
      const double w = weight(rng);
      if (out.truth[static_cast<std::size_t>(i)] == out.truth[static_cast<std::size_t>(j)]) {
        if (present < cfg.p_in) edges.push_back({i, j, w});
      } else if (present < cfg.p_out) {
        edges.push_back({i, j, negative < cfg.frac_neg_out ? -w : w});
      }
    }
  }
  out.graph = SignedGraph::from_edges(cfg.n, edges);
  const Eigen::VectorXd d = signed_degree(out.graph);
  out.isolated = static_cast<std::size_t>((d.array() == 0.0).count());
  return out;
}

void for_each_partition(Index n, int k, const std::function<void(const std::vector<int>&)>& visit) {
  if (k < 1 || k > n) return;
  std::vector<int> rgs(static_cast<std::size_t>(n), 0);
  enumerate(rgs, 0, 0, k, visit);
}

BruteForceResult brute_force_min_sncut(const SignedGraph& g, int k) {
  if (g.size() > kBruteForceLimit) {
    throw Error(ErrorCode::kTooLarge, "exhaustive search limited to n <= 12");
  }
  if (k < 1 || k > g.size()) throw Error(ErrorCode::kBadK, "K outside [1, n]");

  BruteForceResult best;
  best.value = std::numeric_limits<double>::infinity();
  for_each_partition(g.size(), k, [&](const std::vector<int>& assign) {
    Partition p{assign, k};
    double value = 0.0;
    try {
      value = sncut(g, p);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kZeroVolume) return;
      throw;
    }
    ++best.evaluated;
    if (value < best.value) {
      best.value = value;
      best.partition = std::move(p);
    }
  });
  if (best.evaluated == 0) {
    throw Error(ErrorCode::kZeroVolume, "every partition has a zero-volume cluster");
  }
  return best;
}

Thesaurus thesaurus_from_signs(const SignedGraph& g) {
  Thesaurus thes;
  for (const Edge& e : g.edges()) {
    if (e.w > 0.0) {
      thes.add_synonym(g.label(e.i), g.label(e.j));
    } else {
      thes.add_antonym(g.label(e.i), g.label(e.j));
    }
  }
  return thes;
}

std::vector<CurvePoint> nne_ndc_curve(const SignedGraph& g, const Thesaurus* thes,
                                      std::span<const int> ks, std::uint64_t seed,
                                      const ClusterOptions& opts) {
  const Thesaurus derived = thes == nullptr ? thesaurus_from_signs(g) : Thesaurus{};
  const Thesaurus& relations = thes == nullptr ? derived : *thes;
  std::vector<std::string> labels(static_cast<std::size_t>(g.size()));
  for (Index i = 0; i < g.size(); ++i) labels[static_cast<std::size_t>(i)] = g.label(i);

  std::vector<CurvePoint> curve;
  for (int k : ks) {
    if (k < 1 || k > g.size()) {
      throw Error(ErrorCode::kBadK, "K = " + std::to_string(k) + " outside [1, n]");
    }
    Partition p;
    if (k == 1) {
      p = Partition{std::vector<int>(static_cast<std::size_t>(g.size()), 0), 1};
    } else {
      p = cluster(g, k, seed, opts).partition;
    }
    CurvePoint point;
    point.k = k;
    point.nne = count_nne(p, relations, labels).count;
    point.ndc = count_ndc(p, relations, labels);
    point.sncut = sncut(g, p);
    curve.push_back(point);
  }
  return curve;
}

void write_curve(std::ostream& out, std::span<const CurvePoint> curve) {
  out << "K,nne,ndc\n";
  for (const auto& point : curve) out << point.k << ',' << point.nne << ',' << point.ndc << '\n';
}

void LexiconConfig::validate() const {
  if (groups < 2 || groups % 2 != 0) {
    throw Error(ErrorCode::kInvalidArgument, "groups must be a positive even number");
  }
  if (words < 2 * groups) throw Error(ErrorCode::kInvalidArgument, "too few words per group");
  if (dim < groups / 2 + 1) {
    throw Error(ErrorCode::kInvalidArgument, "dim must exceed the number of regions");
  }
  if (!(spread >= 0.0) || !(pair_offset >= 0.0) || !(region_separation >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "geometry parameters must be >= 0");
  }
  if (synonyms_per_word < 0) throw Error(ErrorCode::kInvalidArgument, "synonyms_per_word < 0");
}

Lexicon generate_lexicon(const LexiconConfig& cfg) {
  cfg.validate();
  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> gauss;
  const int regions = cfg.groups / 2;

  std::vector<int> truth = contiguous_blocks(cfg.words, cfg.groups);
  std::vector<std::string> words(static_cast<std::size_t>(cfg.words));
  Eigen::MatrixXd vectors(cfg.words, cfg.dim);
  for (Index i = 0; i < cfg.words; ++i) {
    char name[32];
    std::snprintf(name, sizeof(name), "w%03ld", static_cast<long>(i));
    words[static_cast<std::size_t>(i)] = name;
    const int group = truth[static_cast<std::size_t>(i)];
    const int region = group / 2;
    Eigen::VectorXd center = Eigen::VectorXd::Zero(cfg.dim);
    center[region] = cfg.region_separation;
    center[cfg.dim - 1] = (group % 2 == 0 ? 0.5 : -0.5) * cfg.pair_offset;
    for (Index c = 0; c < cfg.dim; ++c) vectors(i, c) = center[c] + cfg.spread * gauss(rng);
  }

  std::vector<std::vector<Index>> members(static_cast<std::size_t>(cfg.groups));
  for (Index i = 0; i < cfg.words; ++i) {
    members[static_cast<std::size_t>(truth[static_cast<std::size_t>(i)])].push_back(i);
  }
  auto dist2 = [&](Index a, Index b) { return (vectors.row(a) - vectors.row(b)).squaredNorm(); };

  Lexicon lex;
  // Antonyms: each sampled word of the even group is paired with its
  // nearest still-unpaired word in the odd group of the same region.
  for (int region = 0; region < regions; ++region) {
    std::size_t quota = cfg.antonym_pairs / static_cast<std::size_t>(regions) +
                        (static_cast<std::size_t>(region) <
                                 cfg.antonym_pairs % static_cast<std::size_t>(regions)
                             ? 1
                             : 0);
    std::vector<Index> left = members[static_cast<std::size_t>(2 * region)];
    std::vector<Index> right = members[static_cast<std::size_t>(2 * region + 1)];
    quota = std::min({quota, left.size(), right.size()});
    std::shuffle(left.begin(), left.end(), rng);
    std::vector<char> taken(right.size(), 0);
    for (std::size_t a = 0; a < quota; ++a) {
      std::size_t best = right.size();
      for (std::size_t b = 0; b < right.size(); ++b) {
        if (taken[b]) continue;
        if (best == right.size() || dist2(left[a], right[b]) < dist2(left[a], right[best])) {
          best = b;
        }
      }
      taken[best] = 1;
      lex.thesaurus.add_antonym(words[static_cast<std::size_t>(left[a])],
                                words[static_cast<std::size_t>(right[best])]);
    }
  }
  // Synonyms: nearest neighbors within the group.
  for (const auto& group : members) {
    for (Index i : group) {
      std::vector<Index> others;
      for (Index j : group) {
        if (j != i) others.push_back(j);
      }
      const auto take = std::min<std::size_t>(static_cast<std::size_t>(cfg.synonyms_per_word),
                                              others.size());
      std::partial_sort(others.begin(), others.begin() + static_cast<std::ptrdiff_t>(take),
                        others.end(), [&](Index a, Index b) {
                          const double da = dist2(i, a), db = dist2(i, b);
                          return da != db ? da < db : a < b;
                        });
      for (std::size_t s = 0; s < take; ++s) {
        lex.thesaurus.add_synonym(words[static_cast<std::size_t>(i)],
                                  words[static_cast<std::size_t>(others[s])]);
      }
    }
  }
  for (Index i = 0; i < cfg.words; ++i) {
    lex.gold.class_of.emplace(words[static_cast<std::size_t>(i)],
                              std::to_string(truth[static_cast<std::size_t>(i)]));
  }
  lex.truth = std::move(truth);
  lex.embeddings = EmbeddingTable(std::move(words), std::move(vectors));
  return lex;
}

}  // namespace signcut
