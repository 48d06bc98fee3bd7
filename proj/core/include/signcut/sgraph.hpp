#ifndef SIGNCUT_SGRAPH_HPP
#define SIGNCUT_SGRAPH_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

namespace signcut {

using Index = Eigen::Index;
using SparseMatrix = Eigen::SparseMatrix<double>;

/// One undirected edge. Stored with i < j when produced by the library.
struct Edge {
  Index i = 0;
  Index j = 0;
  double w = 0.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/**
 * Undirected graph whose weights may be negative.
 *
 * The weight matrix is kept symmetric with a zero diagonal and without
 * explicit zeros, so its sparsity pattern is exactly the edge set of the
 * underlying graph. Weights with magnitude below kZeroWeight are dropped
 * when the graph is built. Instances are immutable.
 */
class SignedGraph {
 public:
  static constexpr double kZeroWeight = 1e-12;

  SignedGraph() = default;

  /// Builds a graph on n nodes. An edge may be listed in one or both
  /// orientations; listing the same pair with different weights is a
  /// ConflictError. Self-loops with nonzero weight are rejected.
  static SignedGraph from_edges(Index n, std::span<const Edge> edges,
                                std::vector<std::string> labels = {});

  /// Builds from a dense matrix, which must be symmetric with zero diagonal.
  static SignedGraph from_dense(const Eigen::MatrixXd& weights,
                                std::vector<std::string> labels = {});

  Index size() const noexcept { return n_; }
  const SparseMatrix& weights() const noexcept { return weights_; }
  Eigen::MatrixXd dense_weights() const { return Eigen::MatrixXd(weights_); }

  /// Node names; empty when the graph is unlabeled.
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  bool has_labels() const noexcept { return !labels_.empty(); }
  /// Name of node i, falling back to its decimal index.
  std::string label(Index i) const;

  /// Upper-triangle edges sorted by (i, j).
  std::vector<Edge> edges() const;
  std::size_t edge_count() const noexcept {
    return static_cast<std::size_t>(weights_.nonZeros() / 2);
  }
  std::size_t negative_edge_count() const;

  /// Same weights, new names (size must match or be zero).
  SignedGraph with_labels(std::vector<std::string> labels) const;

 private:
  Index n_ = 0;
  SparseMatrix weights_;
  std::vector<std::string> labels_;
};

/// Assignment of each node to one of k clusters.
struct Partition {
  std::vector<int> assign;
  int k = 0;

  /// Validates that every entry lies in [0, k).
  static Partition from_assignments(std::vector<int> assign, int k);

  Index size() const noexcept { return static_cast<Index>(assign.size()); }
  std::vector<std::size_t> cluster_sizes() const;
  bool has_empty_cluster() const;
  std::vector<std::vector<Index>> members() const;

  friend bool operator==(const Partition&, const Partition&) = default;
};

/// d_i = sum_j |w_ij|. Zero entries are allowed here.
Eigen::VectorXd signed_degree(const SignedGraph& g);

/// D - W, where D is the signed degree matrix.
SparseMatrix signed_laplacian(const SignedGraph& g);

/// I - D^{-1/2} W D^{-1/2}. Throws IsolatedVertexError on a zero degree.
SparseMatrix normalized_signed_laplacian(const SignedGraph& g);

/// x^T (D - W) x.
double quadratic_form(const SignedGraph& g, const Eigen::VectorXd& x);

// Node-set weight sums. Sets are node index lists; duplicates are ignored.
double links_pos(const SignedGraph& g, std::span<const Index> a,
                 std::span<const Index> b);
double links_neg(const SignedGraph& g, std::span<const Index> a,
                 std::span<const Index> b);
/// Sum of |w_ij| over i in a and j outside a.
double cut(const SignedGraph& g, std::span<const Index> a);
double vol(const SignedGraph& g, std::span<const Index> a);

/// Signed normalized cut:
///   sum_j [cut(A_j, ~A_j) + 2 links-(A_j, A_j)] / vol(A_j).
/// Throws EmptyClusterError or ZeroVolumeError on degenerate clusters.
double sncut(const SignedGraph& g, const Partition& p);

/// The same objective as a sum of per-cluster Rayleigh quotients
/// X^jT L X^j / X^jT D X^j, using amplitude a_j on cluster j (all ones
/// when `amplitudes` is empty).
double sncut_rayleigh(const SignedGraph& g, const Partition& p,
                      std::span<const double> amplitudes = {});

}  // namespace signcut

#endif  // SIGNCUT_SGRAPH_HPP
