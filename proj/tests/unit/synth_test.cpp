#include <gtest/gtest.h>

#include <random>
#include <set>
#include <sstream>

#include "oracles.hpp"
#include "signcut/error.hpp"
#include "signcut/synth.hpp"

namespace signcut {
namespace {

std::size_t stirling2(int n, int k) {
  std::vector<std::vector<std::size_t>> s(n + 1, std::vector<std::size_t>(k + 1, 0));
  s[0][0] = 1;
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= k; ++j) s[i][j] = j * s[i - 1][j] + s[i - 1][j - 1];
  }
  return s[n][k];
}

TEST(ForEachPartition, CountsMatchStirlingNumbers) {
  for (int n = 1; n <= 9; ++n) {
    for (int k = 1; k <= n; ++k) {
      std::size_t count = 0;
      std::set<std::vector<int>> seen;
      for_each_partition(n, k, [&](const std::vector<int>& a) {
        ++count;
        seen.insert(a);
        EXPECT_EQ(*std::max_element(a.begin(), a.end()), k - 1);
      });
      EXPECT_EQ(count, stirling2(n, k)) << n << "," << k;
      EXPECT_EQ(seen.size(), count);
    }
  }
}

TEST(BruteForce, MatchesOracleMinimum) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 5; ++trial) {
    const Eigen::MatrixXd w = oracle::random_signed_weights(7, 0.5, rng);
    const SignedGraph g = SignedGraph::from_dense(w);
    const BruteForceResult best = brute_force_min_sncut(g, 2);
    double expected = std::numeric_limits<double>::infinity();
    for (unsigned mask = 1; mask + 1 < (1u << 7); ++mask) {
      std::vector<int> assign(7);
      for (int i = 0; i < 7; ++i) assign[i] = (mask >> i) & 1u;
      expected = std::min(expected, oracle::sncut_direct(w, assign, 2));
    }
    EXPECT_NEAR(best.value, expected, 1e-12);
    EXPECT_EQ(best.evaluated, stirling2(7, 2));
  }
}

TEST(BruteForce, TooLarge) {
  std::mt19937_64 rng(3);
  const SignedGraph g = SignedGraph::from_dense(oracle::random_signed_weights(13, 0.5, rng));
  try {
    brute_force_min_sncut(g, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kTooLarge);
  }
}

TEST(Planted, StructureFollowsConfig) {
  PlantedConfig cfg;
  cfg.n = 50;
  cfg.k = 3;
  cfg.p_in = 1.0;
  cfg.p_out = 1.0;
  cfg.frac_neg_out = 1.0;
  const PlantedGraph pg = generate_planted(cfg);
  EXPECT_EQ(pg.truth.front(), 0);
  EXPECT_EQ(pg.truth.back(), 2);
  for (const Edge& e : pg.graph.edges()) {
    const bool same = pg.truth[e.i] == pg.truth[e.j];
    EXPECT_EQ(e.w > 0.0, same);
    EXPECT_GE(std::abs(e.w), cfg.w_min);
    EXPECT_LE(std::abs(e.w), cfg.w_max);
  }
  EXPECT_EQ(pg.graph.edge_count(), 50u * 49u / 2u);
  EXPECT_EQ(pg.isolated, 0u);
}

TEST(Planted, SeededAndValidated) {
  PlantedConfig cfg;
  cfg.seed = 9;
  EXPECT_EQ(generate_planted(cfg).graph.edges(), generate_planted(cfg).graph.edges());
  cfg.p_in = 1.5;
  EXPECT_THROW(generate_planted(cfg), Error);
}

TEST(ThesaurusFromSigns, SplitsBySign) {
  const Edge edges[] = {{0, 1, 1.0}, {1, 2, -2.0}};
  const Thesaurus t = thesaurus_from_signs(SignedGraph::from_edges(3, edges, {"a", "b", "c"}));
  EXPECT_EQ(t.synonyms().size(), 1u);
  EXPECT_TRUE(t.antonyms().count(make_pair_key("b", "c")));
}

TEST(Curve, SeparatesPlantedBlocks) {
  PlantedConfig cfg;
  cfg.n = 60;
  cfg.k = 3;
  cfg.p_in = 0.8;
  cfg.p_out = 0.1;
  cfg.frac_neg_out = 1.0;
  const PlantedGraph pg = generate_planted(cfg);
  const int ks[] = {1, 3};
  const auto curve = nne_ndc_curve(pg.graph, nullptr, ks, 1);
  ASSERT_EQ(curve.size(), 2u);
  EXPECT_EQ(curve[0].nne, pg.graph.negative_edge_count());
  // Positive edges stay inside blocks: one synonym component per block.
  EXPECT_EQ(curve[0].ndc, 2u);
  EXPECT_EQ(curve[1].nne, 0u);
  std::ostringstream out;
  write_curve(out, curve);
  EXPECT_EQ(out.str().substr(0, 10), "K,nne,ndc\n");
}

TEST(Lexicon, RelationsRespectGroups) {
  LexiconConfig cfg;
  const Lexicon lex = generate_lexicon(cfg);
  EXPECT_EQ(lex.embeddings.size(), cfg.words);
  EXPECT_EQ(lex.thesaurus.antonyms().size(), cfg.antonym_pairs);
  std::unordered_map<std::string, int> group;
  for (Index i = 0; i < cfg.words; ++i) group[lex.embeddings.words()[i]] = lex.truth[i];
  for (const auto& [a, b] : lex.thesaurus.antonyms()) {
    EXPECT_NE(group[a], group[b]);
    EXPECT_EQ(group[a] / 2, group[b] / 2);
  }
  for (const auto& [a, b] : lex.thesaurus.synonyms()) EXPECT_EQ(group[a], group[b]);
  EXPECT_EQ(lex.gold.class_of.size(), static_cast<std::size_t>(cfg.words));
}

}  // namespace
}  // namespace signcut
