#ifndef SIGNCUT_DISCRETE_HPP
#define SIGNCUT_DISCRETE_HPP

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "signcut/metrics.hpp"
#include "signcut/sgraph.hpp"
#include "signcut/spectral.hpp"

namespace signcut {

/**
 * Iterate of the alternating discretization.
 *
 * `x` has one nonzero per row, equal to the amplitude of that row's
 * cluster, and ||x||_F = ||Z||_F. The rotation-and-scaling Q = R * diag(lambda)
 * maps the relaxed solution onto it; `phi` = ||x - Z Q||_F.
 */
struct DiscreteState {
  Eigen::MatrixXd x;
  Eigen::MatrixXd r;
  Eigen::VectorXd lambda;
  double phi = 0.0;
};

struct DiscretizeOptions {
  int max_iter = 100;
  /// Stop once a sweep lowers phi by less than this.
  double tol = 1e-7;
};

/// Farthest-point choice of K normalized rows of Z (first row picked by
/// `seed`), orthonormalized into a K x K rotation.
Eigen::MatrixXd init_rotation(const Eigen::MatrixXd& z, std::uint64_t seed);

/// Row argmax of Z R diag(lambda), lowest column on ties.
std::vector<int> argmax_labels(const Eigen::MatrixXd& z, const Eigen::MatrixXd& r,
                               const Eigen::VectorXd& lambda);

/// Indicator with amplitude c / sqrt(|A_j|) on cluster j, where c makes
/// ||X||_F equal `frobenius`. Empty clusters get a zero column.
Eigen::MatrixXd indicator_matrix(const std::vector<int>& labels, Index k, double frobenius);

/// X-step: argmax assignment with the amplitude rule above, ||X||_F = ||Z||_F.
Eigen::MatrixXd assign_x(const Eigen::MatrixXd& z, const Eigen::MatrixXd& r,
                         const Eigen::VectorXd& lambda);

/// Orthogonal R maximizing tr(R^T Z^T X), i.e. U V^T from the SVD of Z^T X.
/// Throws RankDeficient when Z^T X has a zero singular value.
Eigen::MatrixXd procrustes_r(const Eigen::MatrixXd& z, const Eigen::MatrixXd& x);

/// Per-column least squares lambda_j = <X^j, (ZR)^j> / ||(ZR)^j||^2, with
/// zeros replaced by 1e-12 so diag(lambda) stays invertible.
Eigen::VectorXd fit_lambda(const Eigen::MatrixXd& z, const Eigen::MatrixXd& r,
                           const Eigen::MatrixXd& x);

/// ||X - Z R diag(lambda)||_F.
double discretization_objective(const Eigen::MatrixXd& z, const Eigen::MatrixXd& x,
                                const Eigen::MatrixXd& r, const Eigen::VectorXd& lambda);

/// Cluster index of each row's nonzero.
Partition partition_from_indicator(const Eigen::MatrixXd& x);

struct DiscreteResult {
  Partition partition;
  DiscreteState state;
  /// phi after each accepted sweep; non-increasing.
  std::vector<double> phi_history;
  /// Number of Procrustes checks that fell back to jitter.
  int jitter_retries = 0;
};

/// Alternates X, R and lambda steps. A sweep that would raise phi is
/// discarded and ends the iteration.
DiscreteResult discretize(const RelaxedSolution& rs, std::uint64_t seed,
                          const DiscretizeOptions& opts = {});
/// Same, starting from a caller-supplied rotation.
DiscreteResult discretize_from(const RelaxedSolution& rs, const Eigen::MatrixXd& initial_r,
                               std::uint64_t seed, const DiscretizeOptions& opts = {});

struct ClusterOptions {
  int restarts = 8;
  DiscretizeOptions discretize;
  EigenOptions eigen;
};

struct ClusterResult {
  Partition partition;
  MetricsReport report;
  RelaxedSolution relaxed;
  DiscreteState state;
  /// One phi trace per restart.
  std::vector<std::vector<double>> phi_histories;
  int best_restart = 0;
};

/// Relaxation followed by `restarts` seeded discretizations; keeps the
/// partition with the lowest signed normalized cut (first one on ties).
ClusterResult cluster(const SignedGraph& g, int k, std::uint64_t seed,
                      const ClusterOptions& opts = {});

}  // namespace signcut

#endif  // SIGNCUT_DISCRETE_HPP
