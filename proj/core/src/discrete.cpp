#include "signcut/discrete.hpp"

#include <cmath>
#include <limits>
#include <random>

#include <Eigen/SVD>

#include "signcut/error.hpp"

namespace signcut {
namespace {

constexpr double kLambdaFloor = 1e-12;
constexpr double kJitter = 1e-10;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Eigen::MatrixXd rotation_from_cross(const Eigen::MatrixXd& cross, bool check_rank) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(cross, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::VectorXd& s = svd.singularValues();
  if (check_rank && (s.size() == 0 || s[s.size() - 1] <= 1e-12 * std::max(s[0], 1e-300))) {
    throw Error(ErrorCode::kRankDeficient, "Z^T X has a zero singular value");
  }
  return svd.matrixU() * svd.matrixV().transpose();
}

// Moves the worst-reconstructed rows into empty clusters until none is empty.
void repair_empty_clusters(std::vector<int>& labels, const Eigen::MatrixXd& target, Index k,
                           double frobenius) {
  int failures = 0;
  while (true) {
    std::vector<std::size_t> sizes(static_cast<std::size_t>(k), 0);
    for (int c : labels) ++sizes[static_cast<std::size_t>(c)];
    Index empty = -1;
    for (Index c = 0; c < k; ++c) {
      if (sizes[static_cast<std::size_t>(c)] == 0) {
        empty = c;
        break;
      }
    }
    if (empty < 0) return;

    const Eigen::MatrixXd x = indicator_matrix(labels, k, frobenius);
    Index worst = -1;
    double worst_residual = -1.0;
    for (Index i = 0; i < x.rows(); ++i) {
      if (sizes[static_cast<std::size_t>(labels[static_cast<std::size_t>(i)])] < 2) continue;
      const double residual = (x.row(i) - target.row(i)).norm();
      if (residual > worst_residual) {
        worst_residual = residual;
        worst = i;
      }
    }
    if (worst < 0) {
      if (++failures >= k) {
        throw Error(ErrorCode::kConvergence, "cannot repair empty clusters");
      }
      continue;
    }
    failures = 0;
    labels[static_cast<std::size_t>(worst)] = static_cast<int>(empty);
  }
}

}  // namespace

Eigen::MatrixXd init_rotation(const Eigen::MatrixXd& z, std::uint64_t seed) {
  const Index n = z.rows();
  const Index k = z.cols();
  if (n == 0 || k == 0) throw Error(ErrorCode::kInvalidArgument, "empty relaxed solution");
  if (k == 1) return Eigen::MatrixXd::Identity(1, 1);

  Eigen::MatrixXd rows = z;
  for (Index i = 0; i < n; ++i) {
    const double norm = rows.row(i).norm();
    if (norm > 0.0) rows.row(i) /= norm;
  }
  bool identical = true;
  for (Index i = 1; i < n && identical; ++i) {
    identical = (rows.row(i) - rows.row(0)).norm() < 1e-12;
  }
  if (identical) throw Error(ErrorCode::kDegenerateRows, "all rows of Z point the same way");

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Index> pick(0, n - 1);
  Eigen::MatrixXd r(k, k);
  r.col(0) = rows.row(pick(rng)).transpose();
  Eigen::VectorXd closeness = Eigen::VectorXd::Zero(n);
  for (Index j = 1; j < k; ++j) {
    closeness += (rows * r.col(j - 1)).cwiseAbs();
    Index next = 0;
    closeness.minCoeff(&next);
    r.col(j) = rows.row(next).transpose();
  }

  // Gram-Schmidt; a dependent pick is replaced by a coordinate axis.
  for (Index j = 0; j < k; ++j) {
    Eigen::VectorXd v = r.col(j);
    for (Index axis = 0;; ++axis) {
      for (int pass = 0; pass < 2; ++pass) {
        for (Index prev = 0; prev < j; ++prev) v -= r.col(prev).dot(v) * r.col(prev);
      }
      if (v.norm() > 1e-8) break;
      if (axis == k) throw Error(ErrorCode::kDegenerateRows, "cannot complete rotation basis");
      v = Eigen::VectorXd::Unit(k, axis);
    }
    r.col(j) = v.normalized();
  }
  return r;
}

std::vector<int> argmax_labels(const Eigen::MatrixXd& z, const Eigen::MatrixXd& r,
                               const Eigen::VectorXd& lambda) {
  const Eigen::MatrixXd scores = z * r * lambda.asDiagonal();
  std::vector<int> labels(static_cast<std::size_t>(scores.rows()), 0);
  for (Index i = 0; i < scores.rows(); ++i) {
    Index best = 0;
    for (Index j = 1; j < scores.cols(); ++j) {
      if (scores(i, j) > scores(i, best)) best = j;
    }
    labels[static_cast<std::size_t>(i)] = static_cast<int>(best);
  }
  return labels;
}

Eigen::MatrixXd indicator_matrix(const std::vector<int>& labels, Index k, double frobenius) {
  std::vector<std::size_t> sizes(static_cast<std::size_t>(k), 0);
  for (int c : labels) ++sizes[static_cast<std::size_t>(c)];
  std::size_t nonempty = 0;
  for (std::size_t s : sizes) nonempty += s > 0 ? 1 : 0;

  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(static_cast<Index>(labels.size()), k);
  if (nonempty == 0) return x;
  const double scale = frobenius / std::sqrt(static_cast<double>(nonempty));
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const auto c = static_cast<std::size_t>(labels[i]);
    x(static_cast<Index>(i), static_cast<Index>(c)) =
        scale / std::sqrt(static_cast<double>(sizes[c]));
  }
  return x;
}

Eigen::MatrixXd assign_x(const Eigen::MatrixXd& z, const Eigen::MatrixXd& r,
                         const Eigen::VectorXd& lambda) {
  return indicator_matrix(argmax_labels(z, r, lambda), z.cols(), z.norm());
}

Eigen::MatrixXd procrustes_r(const Eigen::MatrixXd& z, const Eigen::MatrixXd& x) {
  if (z.rows() != x.rows() || z.cols() != x.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "Z and X shapes differ");
  }
  return rotation_from_cross(z.transpose() * x, true);
}

Eigen::VectorXd fit_lambda(const Eigen::MatrixXd& z, const Eigen::MatrixXd& r,
                           const Eigen::MatrixXd& x) {
  if (z.rows() != x.rows() || z.cols() != x.cols() || r.rows() != z.cols() ||
      r.cols() != z.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "Z, R and X shapes disagree");
  }
  const Eigen::MatrixXd zr = z * r;
  Eigen::VectorXd lambda(z.cols());
  for (Index j = 0; j < z.cols(); ++j) {
    const double denom = zr.col(j).squaredNorm();
    double value = denom > 0.0 ? x.col(j).dot(zr.col(j)) / denom : 0.0;
    if (std::abs(value) < kLambdaFloor) value = value < 0.0 ? -kLambdaFloor : kLambdaFloor;
    lambda[j] = value;
  }
  return lambda;
}

double discretization_objective(const Eigen::MatrixXd& z, const Eigen::MatrixXd& x,
                                const Eigen::MatrixXd& r, const Eigen::VectorXd& lambda) {
  return (x - z * r * lambda.asDiagonal()).norm();
}

Partition partition_from_indicator(const Eigen::MatrixXd& x) {
  std::vector<int> labels(static_cast<std::size_t>(x.rows()), 0);
  for (Index i = 0; i < x.rows(); ++i) {
    Index c = 0;
    x.row(i).cwiseAbs().maxCoeff(&c);
    labels[static_cast<std::size_t>(i)] = static_cast<int>(c);
  }
  return Partition::from_assignments(std::move(labels), static_cast<int>(x.cols()));
}

DiscreteResult discretize(const RelaxedSolution& rs, std::uint64_t seed,
                          const DiscretizeOptions& opts) {
  return discretize_from(rs, init_rotation(rs.z, seed), seed, opts);
}

DiscreteResult discretize_from(const RelaxedSolution& rs, const Eigen::MatrixXd& initial_r,
                               std::uint64_t seed, const DiscretizeOptions& opts) {
  const Eigen::MatrixXd& z = rs.z;
  const Index k = z.cols();
  if (opts.max_iter < 1) throw Error(ErrorCode::kInvalidArgument, "max_iter must be >= 1");
  if (initial_r.rows() != k || initial_r.cols() != k) {
    throw Error(ErrorCode::kDimensionMismatch, "initial rotation must be K x K");
  }
  const double frobenius = z.norm();
  std::mt19937_64 jitter_rng(splitmix64(seed));
  std::uniform_real_distribution<double> jitter(-kJitter, kJitter);

  DiscreteResult result;
  Eigen::VectorXd lambda = Eigen::VectorXd::Ones(k);
  std::vector<int> labels = argmax_labels(z, initial_r, lambda);
  repair_empty_clusters(labels, z * initial_r, k, frobenius);

  bool have_state = false;
  for (int sweep = 0; sweep < opts.max_iter; ++sweep) {
    Eigen::MatrixXd x = indicator_matrix(labels, k, frobenius);
    const Eigen::MatrixXd cross = z.transpose() * x;
    Eigen::MatrixXd r;
    try {
      r = rotation_from_cross(cross, true);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kRankDeficient) throw;
      ++result.jitter_retries;
      const Eigen::MatrixXd noisy =
          cross + Eigen::MatrixXd::NullaryExpr(k, k, [&] { return jitter(jitter_rng); });
      r = rotation_from_cross(noisy, false);
    }
    Eigen::VectorXd next_lambda = fit_lambda(z, r, x);
    const double phi = discretization_objective(z, x, r, next_lambda);

    if (have_state && phi > result.state.phi) break;
    const double improvement =
        have_state ? result.state.phi - phi : std::numeric_limits<double>::infinity();
    result.state = DiscreteState{std::move(x), std::move(r), std::move(next_lambda), phi};
    result.phi_history.push_back(phi);
    have_state = true;
    if (improvement < opts.tol) break;

    std::vector<int> next_labels = argmax_labels(z, result.state.r, result.state.lambda);
    repair_empty_clusters(next_labels, z * result.state.r * result.state.lambda.asDiagonal(), k,
                          frobenius);
    if (next_labels == labels) break;
    labels = std::move(next_labels);
  }

  result.partition = partition_from_indicator(result.state.x);
  return result;
}

ClusterResult cluster(const SignedGraph& g, int k, std::uint64_t seed, const ClusterOptions& opts) {
  if (k < 2 || k > g.size()) {
    throw Error(ErrorCode::kBadK, "K = " + std::to_string(k) + " outside [2, " +
                                      std::to_string(g.size()) + "]");
  }
  if (opts.restarts < 1) throw Error(ErrorCode::kInvalidArgument, "restarts must be >= 1");

  ClusterResult out;
  out.relaxed = relaxed_solution(g, k, opts.eigen);
  double best = std::numeric_limits<double>::infinity();
  for (int restart = 0; restart < opts.restarts; ++restart) {
    const std::uint64_t restart_seed = splitmix64(seed + static_cast<std::uint64_t>(restart));
    DiscreteResult run = discretize(out.relaxed, restart_seed, opts.discretize);
    const double value = sncut(g, run.partition);
    out.phi_histories.push_back(std::move(run.phi_history));
    if (value < best) {
      best = value;
      out.partition = std::move(run.partition);
      out.state = std::move(run.state);
      out.best_restart = restart;
    }
  }
  out.report.n = static_cast<std::size_t>(g.size());
  out.report.sncut = best;
  return out;
}

}  // namespace signcut
