#include "signcut/construct.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "signcut/error.hpp"
#include "signcut/graph_io.hpp"

namespace signcut {
namespace {

std::string at_line(std::size_t line_no) { return "line " + std::to_string(line_no) + ": "; }

bool is_count(const std::string& token) {
  return !token.empty() && token.find_first_not_of("0123456789") == std::string::npos;
}

}  // namespace

EmbeddingTable::EmbeddingTable(std::vector<std::string> words, Eigen::MatrixXd vectors)
    : words_(std::move(words)), vectors_(std::move(vectors)) {
  if (static_cast<Index>(words_.size()) != vectors_.rows()) {
    throw Error(ErrorCode::kDimensionMismatch, "word count does not match vector rows");
  }
  if (!vectors_.allFinite()) {
    throw Error(ErrorCode::kInvalidArgument, "embedding contains non-finite values");
  }
  std::unordered_set<std::string> seen;
  for (const auto& w : words_) {
    if (!seen.insert(w).second) {
      throw Error(ErrorCode::kInvalidArgument, "duplicate word '" + w + "'");
    }
  }
}

WordPair make_pair_key(const std::string& a, const std::string& b) {
  return a < b ? WordPair{a, b} : WordPair{b, a};
}

bool Thesaurus::add_synonym(const std::string& a, const std::string& b) {
  if (a == b) throw Error(ErrorCode::kInvalidArgument, "self-pair '" + a + "'");
  auto key = make_pair_key(a, b);
  if (antonyms_.count(key)) {
    throw Error(ErrorCode::kConflict, "'" + a + "' / '" + b + "' is both synonym and antonym");
  }
  return synonyms_.insert(std::move(key)).second;
}

bool Thesaurus::add_antonym(const std::string& a, const std::string& b) {
  if (a == b) throw Error(ErrorCode::kInvalidArgument, "self-pair '" + a + "'");
  auto key = make_pair_key(a, b);
  if (synonyms_.count(key)) {
    throw Error(ErrorCode::kConflict, "'" + a + "' / '" + b + "' is both synonym and antonym");
  }
  return antonyms_.insert(std::move(key)).second;
}

void KernelParams::validate() const {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw Error(ErrorCode::kInvalidArgument, "sigma must be positive");
  }
  if (!(thresh >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "thresh must be >= 0");
  if (!(gamma >= 0.0) || !(beta >= 0.0) || !(beta_ant >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "gamma, beta and beta_ant must be >= 0");
  }
  if (gamma == 0.0 && beta == 0.0 && beta_ant == 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "at least one of gamma, beta, beta_ant must be > 0");
  }
}

EmbeddingTable load_embeddings(
    std::istream& in, const std::optional<std::unordered_set<std::string>>& vocab_filter) {
  std::vector<std::string> words;
  std::vector<std::vector<double>> rows;
  std::unordered_set<std::string> seen;
  Index dim = -1;
  std::string line;
  std::size_t line_no = 0;
  bool first_record = true;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream fields(line);
    std::vector<std::string> tokens;
    for (std::string t; fields >> t;) tokens.push_back(t);
    if (tokens.empty()) continue;

    if (first_record) {
      first_record = false;
      if (tokens.size() == 2 && is_count(tokens[0]) && is_count(tokens[1])) continue;
    }
    if (tokens.size() < 2) {
      throw Error(ErrorCode::kParse, at_line(line_no) + "expected a word followed by values");
    }
    std::vector<double> values(tokens.size() - 1);
    for (std::size_t k = 1; k < tokens.size(); ++k) {
      if (!parse_double(tokens[k], values[k - 1])) {
        throw Error(ErrorCode::kParse, at_line(line_no) + "bad number '" + tokens[k] + "'");
      }
    }
    if (dim < 0) {
      dim = static_cast<Index>(values.size());
    } else if (static_cast<Index>(values.size()) != dim) {
      throw Error(ErrorCode::kDimensionMismatch,
                  at_line(line_no) + "expected " + std::to_string(dim) + " values, got " +
                      std::to_string(values.size()));
    }
    if (vocab_filter && !vocab_filter->count(tokens[0])) continue;
    if (!seen.insert(tokens[0]).second) continue;
    words.push_back(tokens[0]);
    rows.push_back(std::move(values));
  }

  if (words.empty()) throw Error(ErrorCode::kEmptyVocabulary, "no embeddings loaded");
  Eigen::MatrixXd vectors(static_cast<Index>(rows.size()), dim);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    vectors.row(static_cast<Index>(r)) =
        Eigen::Map<const Eigen::RowVectorXd>(rows[r].data(), dim);
  }
  return EmbeddingTable(std::move(words), std::move(vectors));
}

Thesaurus load_thesaurus(std::istream& in) {
  Thesaurus thes;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cols;
    std::size_t start = 0;
    for (std::size_t tab; (tab = line.find('\t', start)) != std::string::npos; start = tab + 1) {
      cols.push_back(line.substr(start, tab - start));
    }
    cols.push_back(line.substr(start));
    if (cols.size() != 3 || cols[0].empty() || cols[1].empty()) {
      throw Error(ErrorCode::kParse, at_line(line_no) + "expected \"word1<TAB>word2<TAB>rel\"");
    }
    if (cols[0] == cols[1]) {
      throw Error(ErrorCode::kParse, at_line(line_no) + "self-pair '" + cols[0] + "'");
    }
    try {
      if (cols[2] == "syn") {
        thes.add_synonym(cols[0], cols[1]);
      } else if (cols[2] == "ant") {
        thes.add_antonym(cols[0], cols[1]);
      } else {
        throw Error(ErrorCode::kParse, at_line(line_no) + "unknown relation '" + cols[2] + "'");
      }
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kConflict) {
        throw Error(ErrorCode::kConflict, at_line(line_no) + e.what());
      }
      throw;
    }
  }
  return thes;
}

void write_thesaurus(std::ostream& out, const Thesaurus& thes) {
  for (const auto& [a, b] : thes.synonyms()) out << a << '\t' << b << "\tsyn\n";
  for (const auto& [a, b] : thes.antonyms()) out << a << '\t' << b << "\tant\n";
}

double heat_kernel(const Eigen::Ref<const Eigen::VectorXd>& u,
                   const Eigen::Ref<const Eigen::VectorXd>& v, double sigma) {
  return std::exp(-(u - v).squaredNorm() / sigma);
}

SignedGraph heat_kernel_matrix(const EmbeddingTable& emb, double sigma, double thresh) {
  if (!(sigma > 0.0)) throw Error(ErrorCode::kInvalidArgument, "sigma must be positive");
  const Index n = emb.size();
  // Row-major copy so each word vector is contiguous.
  const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> x = emb.vectors();
  std::vector<Edge> edges;
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      const double w = std::exp(-(x.row(i) - x.row(j)).squaredNorm() / sigma);
      if (w >= thresh && w >= SignedGraph::kZeroWeight) edges.push_back({i, j, w});
    }
  }
  return SignedGraph::from_edges(n, edges, emb.words());
}

ThesaurusMatrices thesaurus_matrices(const Thesaurus& thes,
                                     const std::vector<std::string>& words) {
  std::unordered_map<std::string, Index> index;
  for (std::size_t i = 0; i < words.size(); ++i) index.emplace(words[i], static_cast<Index>(i));
  const auto n = static_cast<Index>(words.size());

  ThesaurusMatrices out;
  std::vector<Eigen::Triplet<double>> t, t_ant;
  auto place = [&](const WordPair& pair, double value, bool antonym) {
    auto a = index.find(pair.first);
    auto b = index.find(pair.second);
    if (a == index.end() || b == index.end()) {
      ++out.dropped_pairs;
      return;
    }
    t.emplace_back(a->second, b->second, value);
    t.emplace_back(b->second, a->second, value);
    if (antonym) {
      t_ant.emplace_back(a->second, b->second, value);
      t_ant.emplace_back(b->second, a->second, value);
      ++out.antonym_pairs;
    } else {
      ++out.synonym_pairs;
    }
  };
  for (const auto& pair : thes.synonyms()) place(pair, 1.0, false);
  for (const auto& pair : thes.antonyms()) place(pair, -1.0, true);

  out.t.resize(n, n);
  out.t.setFromTriplets(t.begin(), t.end());
  out.t_ant.resize(n, n);
  out.t_ant.setFromTriplets(t_ant.begin(), t_ant.end());
  return out;
}

SignedGraph combine(const EmbeddingTable& emb, const SignedGraph& kernel,
                    const ThesaurusMatrices& thes, const KernelParams& params) {
  params.validate();
  const Index n = kernel.size();
  if (emb.size() != n || thes.t.rows() != n || thes.t.cols() != n ||
      thes.t_ant.rows() != n || thes.t_ant.cols() != n) {
    throw Error(ErrorCode::kDimensionMismatch, "kernel, thesaurus and embedding sizes differ");
  }
  if (kernel.has_labels() && kernel.labels() != emb.words()) {
    throw Error(ErrorCode::kDimensionMismatch, "kernel labels do not match embedding words");
  }

  SparseMatrix overlay = params.beta * thes.t + params.beta_ant * thes.t_ant;
  SparseMatrix hadamard(n, n);
  {
    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(static_cast<std::size_t>(overlay.nonZeros()));
    const auto& x = emb.vectors();
    for (Index col = 0; col < overlay.outerSize(); ++col) {
      for (SparseMatrix::InnerIterator it(overlay, col); it; ++it) {
        const double k = heat_kernel(x.row(it.row()).transpose(), x.row(it.col()).transpose(),
                                     params.sigma);
        triplets.emplace_back(it.row(), it.col(), it.value() * k);
      }
    }
    hadamard.setFromTriplets(triplets.begin(), triplets.end());
  }
  const SparseMatrix combined = params.gamma * kernel.weights() + hadamard;

  std::vector<Edge> edges;
  for (Index col = 0; col < combined.outerSize(); ++col) {
    for (SparseMatrix::InnerIterator it(combined, col); it; ++it) {
      if (it.row() < it.col()) edges.push_back({it.row(), it.col(), it.value()});
    }
  }
  return SignedGraph::from_edges(n, edges, kernel.labels());
}

LexicalGraph build_lexical_graph(const EmbeddingTable& emb, const Thesaurus& thes,
                                 const KernelParams& params) {
  params.validate();
  const SignedGraph kernel = heat_kernel_matrix(emb, params.sigma, params.thresh);
  const ThesaurusMatrices mats = thesaurus_matrices(thes, emb.words());
  LexicalGraph out{combine(emb, kernel, mats, params), {}};
  out.report.vocabulary = static_cast<std::size_t>(emb.size());
  out.report.synonym_pairs = mats.synonym_pairs;
  out.report.antonym_pairs = mats.antonym_pairs;
  out.report.dropped_pairs = mats.dropped_pairs;
  out.report.edges = out.graph.edge_count();
  out.report.negative_edges = out.graph.negative_edge_count();
  return out;
}

}  // namespace signcut
