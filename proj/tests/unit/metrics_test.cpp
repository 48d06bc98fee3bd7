#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include <json.hpp>

#include "oracles.hpp"
#include "signcut/error.hpp"
#include "signcut/metrics.hpp"

namespace signcut {
namespace {

std::vector<std::string> words(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back("w" + std::to_string(i));
  return out;
}

TEST(Nne, HandExamples) {
  Thesaurus thes;
  thes.add_antonym("hot", "cold");
  const std::vector<std::string> labels{"hot", "cold"};
  EXPECT_EQ(count_nne(Partition{{0, 0}, 1}, thes, labels).count, 1u);
  EXPECT_EQ(count_nne(Partition{{0, 1}, 2}, thes, labels).count, 0u);
  thes.add_antonym("hot", "freezing");
  EXPECT_EQ(count_nne(Partition{{0, 0}, 1}, thes, labels).out_of_vocabulary, 1u);
}

TEST(Ndc, HandExamples) {
  Thesaurus thes;
  thes.add_synonym("a", "b");
  thes.add_synonym("b", "c");
  const std::vector<std::string> labels{"a", "b", "c"};
  EXPECT_EQ(count_ndc(Partition{{0, 1, 0}, 2}, thes, labels), 1u);
  EXPECT_EQ(count_ndc(Partition{{0, 1, 0}, 2}, thes, labels, NdcConvention::kRaw), 3u);
  EXPECT_EQ(count_ndc(Partition{{0, 0, 0}, 1}, thes, labels), 0u);
  EXPECT_EQ(count_ndc(Partition{{0, 0, 0}, 1}, thes, labels, NdcConvention::kRaw), 1u);
}

TEST(NneNdc, MatchOraclesOnRandomInstances) {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 5 + rng() % 40;
    const int k = 1 + static_cast<int>(rng() % 6);
    const auto labels = words(n);
    std::vector<int> assign(n);
    for (int& c : assign) c = static_cast<int>(rng() % static_cast<std::uint64_t>(k));
    Thesaurus thes;
    std::vector<std::pair<std::size_t, std::size_t>> syn, ant;
    for (std::size_t e = 0; e < 2 * n; ++e) {
      const std::size_t a = rng() % n, b = rng() % n;
      if (a == b) continue;
      try {
        if (rng() % 2) {
          thes.add_synonym(labels[a], labels[b]);
          syn.emplace_back(a, b);
        } else {
          thes.add_antonym(labels[a], labels[b]);
          ant.emplace_back(a, b);
        }
      } catch (const Error&) {
      }
    }
    // Duplicate pairs in the oracle lists only matter for NNE.
    std::set<std::pair<std::size_t, std::size_t>> ant_set;
    for (auto [a, b] : ant) ant_set.insert(std::minmax(a, b));
    const std::vector<std::pair<std::size_t, std::size_t>> ant_unique(ant_set.begin(),
                                                                      ant_set.end());
    const Partition p{assign, k};
    EXPECT_EQ(count_nne(p, thes, labels).count, oracle::nne_enumerate(assign, ant_unique));
    EXPECT_EQ(count_ndc(p, thes, labels), oracle::ndc_union_find(assign, k, syn));
  }
}

TEST(PurityEntropy, HandExamples) {
  const std::vector<std::string> labels{"a", "b", "c", "d"};
  GoldClasses gold;
  gold.class_of = {{"a", "x"}, {"b", "x"}, {"c", "y"}, {"d", "y"}};
  EXPECT_DOUBLE_EQ(purity(Partition{{0, 0, 1, 1}, 2}, gold, labels), 1.0);
  EXPECT_NEAR(entropy(Partition{{0, 0, 1, 1}, 2}, gold, labels), 0.0, 1e-15);
  EXPECT_DOUBLE_EQ(purity(Partition{{0, 1, 0, 1}, 2}, gold, labels), 0.5);
  EXPECT_NEAR(entropy(Partition{{0, 1, 0, 1}, 2}, gold, labels), 1.0, 1e-15);
}

TEST(PurityEntropy, SingleClassAndUnlabeled) {
  const std::vector<std::string> labels{"a", "b"};
  GoldClasses gold;
  gold.class_of = {{"a", "x"}, {"b", "x"}};
  EXPECT_DOUBLE_EQ(purity(Partition{{0, 1}, 2}, gold, labels), 1.0);
  try {
    entropy(Partition{{0, 1}, 2}, gold, labels);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSingleClass);
  }
  GoldClasses none;
  EXPECT_THROW(purity(Partition{{0, 1}, 2}, none, labels), Error);
}

TEST(PurityEntropy, MatchOracleAndBounds) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 10 + rng() % 50;
    const int k = 1 + static_cast<int>(rng() % 5);
    const int q = 2 + static_cast<int>(rng() % 4);
    const auto labels = words(n);
    std::vector<int> assign(n), cls(n);
    for (int& c : assign) c = static_cast<int>(rng() % static_cast<std::uint64_t>(k));
    for (int& c : cls) c = static_cast<int>(rng() % static_cast<std::uint64_t>(q));
    cls[0] = 0;
    cls[1] = 1;  // at least two classes present
    std::set<int> present(cls.begin(), cls.end());
    // Reindex classes densely so q counts only those present.
    std::map<int, int> dense;
    for (int c : present) dense.emplace(c, static_cast<int>(dense.size()));
    GoldClasses gold;
    for (std::size_t i = 0; i < n; ++i) {
      cls[i] = dense[cls[i]];
      gold.class_of[labels[i]] = "c" + std::to_string(cls[i]);
    }
    const Partition p{assign, k};
    const auto [pur, ent] =
        oracle::purity_entropy(assign, cls, k, static_cast<int>(present.size()));
    const double got_pur = purity(p, gold, labels), got_ent = entropy(p, gold, labels);
    EXPECT_NEAR(got_pur, pur, 1e-12);
    EXPECT_NEAR(got_ent, ent, 1e-12);
    EXPECT_GE(got_pur, 1.0 / static_cast<double>(present.size()) - 1e-12);
    EXPECT_LE(got_pur, 1.0 + 1e-12);
    EXPECT_GE(got_ent, -1e-12);
    EXPECT_LE(got_ent, 1.0 + 1e-12);
  }
}

TEST(Simlex, AccuracyAndCoverage) {
  const std::vector<std::string> labels{"a", "b", "c"};
  const Partition p{{0, 0, 1}, 2};
  const SimilarityPairs pairs{{"a", "b", 9.0}, {"a", "c", 8.5}, {"a", "z", 9.5}, {"b", "c", 2.0}};
  const SimlexResult r = simlex_eval(p, pairs, labels);
  EXPECT_EQ(r.high_pairs, 3u);
  EXPECT_EQ(r.covered_pairs, 2u);
  EXPECT_DOUBLE_EQ(r.accuracy, 0.5);
  EXPECT_DOUBLE_EQ(r.coverage, 2.0 / 3.0);
  const SimlexResult empty = simlex_eval(p, {{"a", "b", 3.0}}, labels);
  EXPECT_EQ(empty.accuracy, 0.0);
  EXPECT_EQ(empty.coverage, 0.0);
}

double ari_pair_oracle(const std::vector<int>& a, const std::vector<int>& b) {
  // Pair-counting form: agreements over all unordered pairs.
  double both = 0, only_a = 0, only_b = 0, total = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      const bool sa = a[i] == a[j], sb = b[i] == b[j];
      both += (sa && sb) ? 1 : 0;
      only_a += sa ? 1 : 0;
      only_b += sb ? 1 : 0;
      total += 1;
    }
  }
  const double expected = only_a * only_b / total;
  const double maximum = 0.5 * (only_a + only_b);
  if (maximum == expected) return 1.0;
  return (both - expected) / (maximum - expected);
}

TEST(AdjustedRandIndex, MatchesPairCounting) {
  std::mt19937_64 rng(55);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 5 + rng() % 40;
    std::vector<int> a(n), b(n);
    for (int& c : a) c = static_cast<int>(rng() % 4);
    for (int& c : b) c = static_cast<int>(rng() % 3);
    EXPECT_NEAR(adjusted_rand_index(a, b), ari_pair_oracle(a, b), 1e-12);
  }
  const std::vector<int> x{0, 0, 1, 1, 2}, relabeled{2, 2, 0, 0, 1};
  EXPECT_NEAR(adjusted_rand_index(x, relabeled), 1.0, 1e-15);
}

TEST(Report, ErrorIsNormalizedCount) {
  Thesaurus thes;
  thes.add_antonym("a", "b");
  thes.add_synonym("c", "d");
  const std::vector<std::string> labels{"a", "b", "c", "d"};
  ReportInputs in;
  in.thesaurus = &thes;
  const MetricsReport r = report(Partition{{0, 0, 0, 1}, 2}, labels, in);
  EXPECT_EQ(*r.nne, 1u);
  EXPECT_EQ(*r.ndc, 2u);  // {a,b,c} as three singletons inside cluster 0
  EXPECT_DOUBLE_EQ(*r.error, 3.0 / 4.0);
  EXPECT_FALSE(r.purity.has_value());

  const auto json = nlohmann::json::parse(report_json(r));
  EXPECT_EQ(json["n"], 4);
  EXPECT_EQ(json["nne"], 1);
  EXPECT_FALSE(json.contains("purity"));
}

TEST(Loaders, GoldAndPairs) {
  std::istringstream gold_in("a\t1\nb\t2\n");
  const GoldClasses g = load_gold_classes(gold_in);
  EXPECT_EQ(g.class_of.at("b"), "2");
  std::istringstream conflict("a\t1\na\t2\n");
  EXPECT_THROW(load_gold_classes(conflict), Error);

  std::istringstream pairs_in("word1\tword2\tscore\na\tb\t9.5\n");
  const SimilarityPairs pairs = load_similarity_pairs(pairs_in);
  ASSERT_EQ(pairs.size(), 1u);
  EXPECT_EQ(pairs[0].rating, 9.5);
  std::istringstream bad("a\tb\t9\nc\td\tx\n");
  EXPECT_THROW(load_similarity_pairs(bad), Error);
}

}  // namespace
}  // namespace signcut
