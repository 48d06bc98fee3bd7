#include "signcut/sgraph.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

#include "signcut/error.hpp"

namespace signcut {
namespace {

std::vector<char> membership(Index n, std::span<const Index> nodes) {
  std::vector<char> mask(static_cast<std::size_t>(n), 0);
  for (Index v : nodes) {
    if (v < 0 || v >= n) {
      throw Error(ErrorCode::kInvalidArgument,
                  "node index " + std::to_string(v) + " out of range");
    }
    mask[static_cast<std::size_t>(v)] = 1;
  }
  return mask;
}

// Visits each stored entry (both orientations of every edge).
template <typename Fn>
void for_each_entry(const SparseMatrix& w, Fn&& fn) {
  for (Index col = 0; col < w.outerSize(); ++col) {
    for (SparseMatrix::InnerIterator it(w, col); it; ++it) {
      fn(it.row(), it.col(), it.value());
    }
  }
}

}  // namespace

SignedGraph SignedGraph::from_edges(Index n, std::span<const Edge> edges,
                                    std::vector<std::string> labels) {
  if (n < 0) throw Error(ErrorCode::kInvalidArgument, "negative node count");
  if (!labels.empty() && static_cast<Index>(labels.size()) != n) {
    throw Error(ErrorCode::kDimensionMismatch,
                "label count " + std::to_string(labels.size()) +
                    " does not match node count " + std::to_string(n));
  }

  std::map<std::pair<Index, Index>, double> merged;
  for (const Edge& e : edges) {
    if (e.i < 0 || e.j < 0 || e.i >= n || e.j >= n) {
      throw Error(ErrorCode::kInvalidArgument,
                  "edge (" + std::to_string(e.i) + ", " + std::to_string(e.j) +
                      ") out of range for n = " + std::to_string(n));
    }
    if (!std::isfinite(e.w)) {
      throw Error(ErrorCode::kInvalidArgument, "non-finite edge weight");
    }
    if (e.i == e.j) {
      if (std::abs(e.w) >= kZeroWeight) {
        throw Error(ErrorCode::kInvalidArgument,
                    "self-loop on node " + std::to_string(e.i));
      }
      continue;
    }
    auto key = std::minmax(e.i, e.j);
    auto [it, inserted] = merged.emplace(key, e.w);
    if (!inserted && it->second != e.w) {
      throw Error(ErrorCode::kConflict,
                  "conflicting weights for edge (" + std::to_string(key.first) +
                      ", " + std::to_string(key.second) + ")");
    }
  }

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(merged.size() * 2);
  for (const auto& [key, w] : merged) {
    if (std::abs(w) < kZeroWeight) continue;
    triplets.emplace_back(key.first, key.second, w);
    triplets.emplace_back(key.second, key.first, w);
  }

  SignedGraph g;
  g.n_ = n;
  g.weights_.resize(n, n);
  g.weights_.setFromTriplets(triplets.begin(), triplets.end());
  g.weights_.makeCompressed();
  g.labels_ = std::move(labels);
  return g;
}

SignedGraph SignedGraph::from_dense(const Eigen::MatrixXd& weights,
                                    std::vector<std::string> labels) {
  if (weights.rows() != weights.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "weight matrix is not square");
  }
  const Index n = weights.rows();
  std::vector<Edge> edges;
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) {
      if (weights(i, j) != weights(j, i)) {
        throw Error(ErrorCode::kInvalidArgument, "weight matrix is not symmetric");
      }
      if (i == j) {
        if (std::abs(weights(i, i)) >= kZeroWeight) {
          throw Error(ErrorCode::kInvalidArgument, "nonzero diagonal entry");
        }
      } else if (i < j && weights(i, j) != 0.0) {
        edges.push_back({i, j, weights(i, j)});
      }
    }
  }
  return from_edges(n, edges, std::move(labels));
}

std::string SignedGraph::label(Index i) const {
  if (labels_.empty()) return std::to_string(i);
  return labels_.at(static_cast<std::size_t>(i));
}

std::vector<Edge> SignedGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for_each_entry(weights_, [&](Index i, Index j, double w) {
    if (i < j) out.push_back({i, j, w});
  });
  std::sort(out.begin(), out.end(), [](const Edge& a, const Edge& b) {
    return a.i != b.i ? a.i < b.i : a.j < b.j;
  });
  return out;
}

std::size_t SignedGraph::negative_edge_count() const {
  std::size_t count = 0;
  for_each_entry(weights_, [&](Index i, Index j, double w) {
    if (i < j && w < 0.0) ++count;
  });
  return count;
}

SignedGraph SignedGraph::with_labels(std::vector<std::string> labels) const {
  if (!labels.empty() && static_cast<Index>(labels.size()) != n_) {
    throw Error(ErrorCode::kDimensionMismatch, "label count does not match graph size");
  }
  SignedGraph g = *this;
  g.labels_ = std::move(labels);
  return g;
}

Partition Partition::from_assignments(std::vector<int> assign, int k) {
  if (k < 1) throw Error(ErrorCode::kBadK, "cluster count must be at least 1");
  for (int c : assign) {
    if (c < 0 || c >= k) {
      throw Error(ErrorCode::kInvalidArgument,
                  "cluster id " + std::to_string(c) + " outside [0, " +
                      std::to_string(k) + ")");
    }
  }
  return Partition{std::move(assign), k};
}

std::vector<std::size_t> Partition::cluster_sizes() const {
  std::vector<std::size_t> sizes(static_cast<std::size_t>(k), 0);
  for (int c : assign) ++sizes[static_cast<std::size_t>(c)];
  return sizes;
}

bool Partition::has_empty_cluster() const {
  const auto sizes = cluster_sizes();
  return std::find(sizes.begin(), sizes.end(), 0u) != sizes.end();
}

std::vector<std::vector<Index>> Partition::members() const {
  std::vector<std::vector<Index>> out(static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < assign.size(); ++i) {
    out[static_cast<std::size_t>(assign[i])].push_back(static_cast<Index>(i));
  }
  return out;
}

Eigen::VectorXd signed_degree(const SignedGraph& g) {
  Eigen::VectorXd d = Eigen::VectorXd::Zero(g.size());
  for_each_entry(g.weights(), [&](Index i, Index, double w) { d[i] += std::abs(w); });
  return d;
}

SparseMatrix signed_laplacian(const SignedGraph& g) {
  const Eigen::VectorXd d = signed_degree(g);
  SparseMatrix diag(g.size(), g.size());
  diag.reserve(Eigen::VectorXi::Constant(g.size(), 1));
  for (Index i = 0; i < g.size(); ++i) diag.insert(i, i) = d[i];
  SparseMatrix lap = diag - g.weights();
  lap.prune(0.0);
  lap.makeCompressed();
  return lap;
}

SparseMatrix normalized_signed_laplacian(const SignedGraph& g) {
  const Eigen::VectorXd d = signed_degree(g);
  for (Index i = 0; i < d.size(); ++i) {
    if (d[i] <= 0.0) {
      throw Error(ErrorCode::kIsolatedVertex,
                  "node " + g.label(i) + " has zero signed degree");
    }
  }
  const Eigen::VectorXd inv_sqrt = d.cwiseSqrt().cwiseInverse();
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(g.weights().nonZeros() + g.size()));
  for (Index i = 0; i < g.size(); ++i) triplets.emplace_back(i, i, 1.0);
  for_each_entry(g.weights(), [&](Index i, Index j, double w) {
    triplets.emplace_back(i, j, -w * inv_sqrt[i] * inv_sqrt[j]);
  });
  SparseMatrix lap(g.size(), g.size());
  lap.setFromTriplets(triplets.begin(), triplets.end());
  lap.makeCompressed();
  return lap;
}

double quadratic_form(const SignedGraph& g, const Eigen::VectorXd& x) {
  if (x.size() != g.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "vector length " + std::to_string(x.size()) +
                    " does not match graph size " + std::to_string(g.size()));
  }
  const Eigen::VectorXd d = signed_degree(g);
  const double degree_part = x.cwiseProduct(x).dot(d);
  const double weight_part = x.dot(g.weights() * x);
  return degree_part - weight_part;
}

double links_pos(const SignedGraph& g, std::span<const Index> a,
                 std::span<const Index> b) {
  const auto in_a = membership(g.size(), a);
  const auto in_b = membership(g.size(), b);
  double sum = 0.0;
  for_each_entry(g.weights(), [&](Index i, Index j, double w) {
    if (w > 0.0 && in_a[static_cast<std::size_t>(i)] && in_b[static_cast<std::size_t>(j)]) {
      sum += w;
    }
  });
  return sum;
}

double links_neg(const SignedGraph& g, std::span<const Index> a,
                 std::span<const Index> b) {
  const auto in_a = membership(g.size(), a);
  const auto in_b = membership(g.size(), b);
  double sum = 0.0;
  for_each_entry(g.weights(), [&](Index i, Index j, double w) {
    if (w < 0.0 && in_a[static_cast<std::size_t>(i)] && in_b[static_cast<std::size_t>(j)]) {
      sum -= w;
    }
  });
  return sum;
}

double cut(const SignedGraph& g, std::span<const Index> a) {
  const auto in_a = membership(g.size(), a);
  double sum = 0.0;
  for_each_entry(g.weights(), [&](Index i, Index j, double w) {
    if (in_a[static_cast<std::size_t>(i)] && !in_a[static_cast<std::size_t>(j)]) {
      sum += std::abs(w);
    }
  });
  return sum;
}

double vol(const SignedGraph& g, std::span<const Index> a) {
  const auto in_a = membership(g.size(), a);
  const Eigen::VectorXd d = signed_degree(g);
  double sum = 0.0;
  for (Index i = 0; i < g.size(); ++i) {
    if (in_a[static_cast<std::size_t>(i)]) sum += d[i];
  }
  return sum;
}

namespace {

void check_partition(const SignedGraph& g, const Partition& p) {
  if (p.size() != g.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "partition covers " + std::to_string(p.size()) + " nodes, graph has " +
                    std::to_string(g.size()));
  }
  const auto sizes = p.cluster_sizes();
  for (std::size_t c = 0; c < sizes.size(); ++c) {
    if (sizes[c] == 0) {
      throw Error(ErrorCode::kEmptyCluster, "cluster " + std::to_string(c) + " is empty");
    }
  }
}

}  // namespace

double sncut(const SignedGraph& g, const Partition& p) {
  check_partition(g, p);
  const auto k = static_cast<std::size_t>(p.k);
  std::vector<double> boundary(k, 0.0), internal_neg(k, 0.0), volume(k, 0.0);
  for_each_entry(g.weights(), [&](Index i, Index j, double w) {
    const auto ci = static_cast<std::size_t>(p.assign[static_cast<std::size_t>(i)]);
    const auto cj = static_cast<std::size_t>(p.assign[static_cast<std::size_t>(j)]);
    volume[ci] += std::abs(w);
    if (ci != cj) {
      boundary[ci] += std::abs(w);
    } else if (w < 0.0) {
      internal_neg[ci] -= w;
    }
  });
  double total = 0.0;
  for (std::size_t c = 0; c < k; ++c) {
    if (volume[c] <= 0.0) {
      throw Error(ErrorCode::kZeroVolume, "cluster " + std::to_string(c) + " has zero volume");
    }
    total += (boundary[c] + 2.0 * internal_neg[c]) / volume[c];
  }
  return total;
}

double sncut_rayleigh(const SignedGraph& g, const Partition& p,
                      std::span<const double> amplitudes) {
  check_partition(g, p);
  if (!amplitudes.empty() && amplitudes.size() != static_cast<std::size_t>(p.k)) {
    throw Error(ErrorCode::kDimensionMismatch, "one amplitude per cluster required");
  }
  const SparseMatrix lap = signed_laplacian(g);
  const Eigen::VectorXd d = signed_degree(g);
  double total = 0.0;
  for (int c = 0; c < p.k; ++c) {
    const double a = amplitudes.empty() ? 1.0 : amplitudes[static_cast<std::size_t>(c)];
    if (a == 0.0) throw Error(ErrorCode::kInvalidArgument, "amplitudes must be nonzero");
    Eigen::VectorXd x = Eigen::VectorXd::Zero(g.size());
    for (std::size_t i = 0; i < p.assign.size(); ++i) {
      if (p.assign[i] == c) x[static_cast<Index>(i)] = a;
    }
    const double denom = x.cwiseProduct(x).dot(d);
    if (denom <= 0.0) {
      throw Error(ErrorCode::kZeroVolume, "cluster " + std::to_string(c) + " has zero volume");
    }
    total += x.dot(lap * x) / denom;
  }
  return total;
}

}  // namespace signcut
