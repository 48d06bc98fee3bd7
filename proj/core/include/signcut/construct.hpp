#ifndef SIGNCUT_CONSTRUCT_HPP
#define SIGNCUT_CONSTRUCT_HPP

#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "signcut/sgraph.hpp"

namespace signcut {

/// Ordered vocabulary with one embedding vector per word (row-aligned).
class EmbeddingTable {
 public:
  EmbeddingTable() = default;

  /// Rejects duplicate words, non-finite entries and row/word count mismatch.
  EmbeddingTable(std::vector<std::string> words, Eigen::MatrixXd vectors);

  Index size() const noexcept { return vectors_.rows(); }
  Index dim() const noexcept { return vectors_.cols(); }
  const std::vector<std::string>& words() const noexcept { return words_; }
  const Eigen::MatrixXd& vectors() const noexcept { return vectors_; }

 private:
  std::vector<std::string> words_;
  Eigen::MatrixXd vectors_;
};

/// Unordered word pair, stored with first < second.
using WordPair = std::pair<std::string, std::string>;
WordPair make_pair_key(const std::string& a, const std::string& b);

/// Synonym and antonym relations. A pair is never both.
class Thesaurus {
 public:
  /// Returns false if the pair was already present. Throws ConflictError if
  /// the pair already has the other relation, InvalidArgument on a self-pair.
  bool add_synonym(const std::string& a, const std::string& b);
  bool add_antonym(const std::string& a, const std::string& b);

  const std::set<WordPair>& synonyms() const noexcept { return synonyms_; }
  const std::set<WordPair>& antonyms() const noexcept { return antonyms_; }
  bool empty() const noexcept { return synonyms_.empty() && antonyms_.empty(); }

 private:
  std::set<WordPair> synonyms_;
  std::set<WordPair> antonyms_;
};

/// Parameters of the lexical graph. Defaults follow the best Word2Vec
/// row of the original grid search (sigma 0.2, thresh 0.04).
struct KernelParams {
  double sigma = 0.2;
  double thresh = 0.04;
  double gamma = 1.0;
  double beta = 1.0;
  double beta_ant = 1.0;

  /// Throws InvalidArgument when out of range.
  void validate() const;
};

/// Reads "word v1 ... vd" lines, with an optional "count dim" first line.
/// Later duplicates of a word are ignored. `vocab_filter`, when set, keeps
/// only the listed words.
EmbeddingTable load_embeddings(
    std::istream& in,
    const std::optional<std::unordered_set<std::string>>& vocab_filter = std::nullopt);

/// Reads "word1<TAB>word2<TAB>rel" lines with rel in {syn, ant}.
Thesaurus load_thesaurus(std::istream& in);
void write_thesaurus(std::ostream& out, const Thesaurus& thes);

/// exp(-||u - v||^2 / sigma).
double heat_kernel(const Eigen::Ref<const Eigen::VectorXd>& u,
                   const Eigen::Ref<const Eigen::VectorXd>& v, double sigma);

/// Nonnegative graph with W_ij = exp(-dist^2/sigma) when that value is at
/// least `thresh`, zero otherwise. Nodes are labeled with the words.
SignedGraph heat_kernel_matrix(const EmbeddingTable& emb, double sigma, double thresh);

struct ThesaurusMatrices {
  /// +1 for synonyms, -1 for antonyms.
  SparseMatrix t;
  /// -1 for antonyms only.
  SparseMatrix t_ant;
  std::size_t synonym_pairs = 0;
  std::size_t antonym_pairs = 0;
  /// Pairs with at least one word outside the vocabulary.
  std::size_t dropped_pairs = 0;
};

ThesaurusMatrices thesaurus_matrices(const Thesaurus& thes,
                                     const std::vector<std::string>& words);

/**
 * W^ = gamma * Wk + beta_ant * (T_ant o K) + beta * (T o K).
 *
 * Wk is the thresholded kernel graph; K is the unthresholded kernel, so
 * thesaurus pairs keep their weight even when the embeddings are far
 * apart. The result carries the kernel graph's labels.
 */
SignedGraph combine(const EmbeddingTable& emb, const SignedGraph& kernel,
                    const ThesaurusMatrices& thes, const KernelParams& params);

struct IngestionReport {
  std::size_t vocabulary = 0;
  std::size_t synonym_pairs = 0;
  std::size_t antonym_pairs = 0;
  std::size_t dropped_pairs = 0;
  std::size_t edges = 0;
  std::size_t negative_edges = 0;
};

struct LexicalGraph {
  SignedGraph graph;
  IngestionReport report;
};

/// Kernel, thesaurus overlay and combination in one call.
LexicalGraph build_lexical_graph(const EmbeddingTable& emb, const Thesaurus& thes,
                                 const KernelParams& params);

}  // namespace signcut

#endif  // SIGNCUT_CONSTRUCT_HPP
