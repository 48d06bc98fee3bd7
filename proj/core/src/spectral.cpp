#include "signcut/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "signcut/error.hpp"
#include "signcut/graph_io.hpp"

namespace signcut {
namespace {

// Flip each column so its largest-magnitude entry is positive.
void fix_signs(Eigen::MatrixXd& v) {
  for (Index c = 0; c < v.cols(); ++c) {
    Index arg = 0;
    v.col(c).cwiseAbs().maxCoeff(&arg);
    if (v(arg, c) < 0.0) v.col(c) = -v.col(c);
  }
}

Eigenpairs dense_smallest(const SparseMatrix& matrix, Index k) {
  const Eigen::MatrixXd dense(matrix);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::kConvergence, "dense symmetric eigensolver failed");
  }
  Eigenpairs out{solver.eigenvalues().head(k), solver.eigenvectors().leftCols(k)};
  return out;
}

void project_out(Eigen::VectorXd& v, const Eigen::MatrixXd& basis, Index cols) {
  if (cols == 0) return;
  const Eigen::VectorXd coeffs = basis.leftCols(cols).transpose() * v;
  v.noalias() -= basis.leftCols(cols) * coeffs;
}

// Two passes against the Krylov basis and the locked vectors. The locked
// projection comes last in each pass; otherwise the basis step leaks
// locked components back in and Lanczos amplifies them.
void orthogonalize(Eigen::VectorXd& v, const Eigen::MatrixXd& basis, Index basis_cols,
                   const Eigen::MatrixXd& locked, Index locked_cols) {
  for (int pass = 0; pass < 2; ++pass) {
    project_out(v, basis, basis_cols);
    project_out(v, locked, locked_cols);
  }
}

struct RitzPair {
  double value;
  Eigen::VectorXd vector;
};

/**
 * One Lanczos run with full reorthogonalization on the complement of
 * `locked`. Returns the `want` smallest Ritz pairs once their residual
 * estimates fall below tol * norm_estimate, or whatever the Krylov space yields on
 * breakdown. `norm_estimate` is raised to the largest Ritz magnitude seen.
 */
std::vector<RitzPair> lanczos_run(const SparseMatrix& a, const Eigen::MatrixXd& locked,
                                  Index locked_cols, Index want, double tol,
                                  std::mt19937_64& rng, Index& matvecs, Index budget,
                                  double& norm_estimate) {
  const Index n = a.rows();
  const Index max_dim = n - locked_cols;
  Eigen::MatrixXd basis(n, std::min<Index>(max_dim, std::max<Index>(64, 4 * want)));
  std::vector<double> alpha, beta;

  std::normal_distribution<double> gauss;
  Eigen::VectorXd v(n);
  for (Index i = 0; i < n; ++i) v[i] = gauss(rng);
  orthogonalize(v, basis, 0, locked, locked_cols);
  v.normalize();

  Index m = 0;
  while (true) {
    if (m == basis.cols()) {
      basis.conservativeResize(Eigen::NoChange, std::min<Index>(max_dim, 2 * basis.cols()));
    }
    basis.col(m) = v;
    ++m;
    Eigen::VectorXd w = a * v;
    ++matvecs;
    alpha.push_back(v.dot(w));
    orthogonalize(w, basis, m, locked, locked_cols);
    const double b = w.norm();

    const bool breakdown = b <= 1e-12 * std::max(1.0, norm_estimate) || m == max_dim;
    if (breakdown || matvecs >= budget || (m >= want + 4 && m % 4 == 0)) {
      Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(m, m);
      for (Index i = 0; i < m; ++i) {
        tri(i, i) = alpha[static_cast<std::size_t>(i)];
        if (i + 1 < m) {
          tri(i, i + 1) = beta[static_cast<std::size_t>(i)];
          tri(i + 1, i) = beta[static_cast<std::size_t>(i)];
        }
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ritz(tri);
      norm_estimate = std::max(norm_estimate, ritz.eigenvalues().cwiseAbs().maxCoeff());
      const Index take = std::min(want, m);
      bool converged = true;
      for (Index j = 0; j < take && !breakdown; ++j) {
        if (std::abs(b * ritz.eigenvectors()(m - 1, j)) > tol * norm_estimate) {
          converged = false;
          break;
        }
      }
      if (converged) {
        std::vector<RitzPair> out;
        for (Index j = 0; j < take; ++j) {
          Eigen::VectorXd x = basis.leftCols(m) * ritz.eigenvectors().col(j);
          x.normalize();
          out.push_back({ritz.eigenvalues()[j], std::move(x)});
        }
        return out;
      }
      if (matvecs >= budget) {
        throw Error(ErrorCode::kConvergence,
                    "Lanczos iteration budget of " + std::to_string(budget) +
                        " matrix-vector products exhausted");
      }
    }
    beta.push_back(b);
    v = w / b;
  }
}

Eigenpairs lanczos_smallest(const SparseMatrix& a, Index k, const EigenOptions& opts) {
  const Index n = a.rows();
  const Index budget = opts.max_matvecs > 0 ? opts.max_matvecs : 10 * n;
  std::mt19937_64 rng(opts.seed);
  Eigen::MatrixXd locked(n, std::min<Index>(n, k + 1));
  std::vector<double> values;
  Index matvecs = 0;
  double norm_estimate = 0.0;

  // Fill k slots, then keep searching the deflated complement until it
  // offers nothing smaller than the current k-th value. The second phase
  // picks up extra copies of repeated eigenvalues, which a single start
  // vector cannot see.
  while (true) {
    const auto cols = static_cast<Index>(values.size());
    const Index want = std::max<Index>(1, k - cols);
    if (cols == n) break;
    auto found = lanczos_run(a, locked, cols, want, opts.tol, rng, matvecs, budget,
                             norm_estimate);
    const double slack = opts.tol * std::max(norm_estimate, 1e-300);
    if (cols < k) {
      for (auto& pair : found) {
        if (static_cast<Index>(values.size()) == k) break;
        locked.col(static_cast<Index>(values.size())) = pair.vector;
        values.push_back(pair.value);
      }
      continue;
    }
    const auto worst = std::max_element(values.begin(), values.end());
    if (found.empty() || found.front().value >= *worst - slack) break;
    const auto slot = static_cast<Index>(worst - values.begin());
    locked.col(slot) = found.front().vector;
    values[static_cast<std::size_t>(slot)] = found.front().value;
  }

  // Rayleigh-Ritz on the locked span restores exact orthonormality.
  const Index cols = static_cast<Index>(values.size());
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(locked.leftCols(cols));
  const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, cols);
  const Eigen::MatrixXd projected = q.transpose() * (a * q);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> small(0.5 * (projected + projected.transpose()));
  Eigenpairs out{small.eigenvalues().head(k), q * small.eigenvectors().leftCols(k)};

  for (Index j = 0; j < k; ++j) {
    const double residual = (a * out.vectors.col(j) - out.values[j] * out.vectors.col(j)).norm();
    if (residual > opts.tol * std::max(norm_estimate, 1e-300)) {
      throw Error(ErrorCode::kConvergence, "Lanczos eigenvector residual above tolerance");
    }
  }
  return out;
}

}  // namespace

Eigenpairs smallest_eigenpairs(const SparseMatrix& matrix, Index k, const EigenOptions& opts) {
  if (matrix.rows() != matrix.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "matrix is not square");
  }
  const Index n = matrix.rows();
  if (k < 1 || k > n) {
    throw Error(ErrorCode::kBadK, "K = " + std::to_string(k) + " outside [1, " +
                                      std::to_string(n) + "]");
  }
  if (!(opts.tol > 0.0)) throw Error(ErrorCode::kInvalidArgument, "tolerance must be positive");

  const bool dense = opts.method == EigenMethod::kDense ||
                     (opts.method == EigenMethod::kAuto && n <= EigenOptions::kDenseLimit);
  Eigenpairs out = dense ? dense_smallest(matrix, k) : lanczos_smallest(matrix, k, opts);
  fix_signs(out.vectors);
  return out;
}

RelaxedSolution relaxed_solution(const SignedGraph& g, Index k, const EigenOptions& opts) {
  const SparseMatrix lsym = normalized_signed_laplacian(g);
  Eigenpairs pairs = smallest_eigenpairs(lsym, k, opts);
  const Eigen::VectorXd inv_sqrt = signed_degree(g).cwiseSqrt().cwiseInverse();
  RelaxedSolution out;
  out.z = inv_sqrt.asDiagonal() * pairs.vectors;
  out.y = std::move(pairs.vectors);
  out.eigenvalues = std::move(pairs.values);
  return out;
}

void write_spectrum(std::ostream& out, const Eigen::VectorXd& eigenvalues) {
  out << "index,eigenvalue\n";
  for (Index i = 0; i < eigenvalues.size(); ++i) {
    out << i << ',' << format_double(eigenvalues[i]) << '\n';
  }
}

}  // namespace signcut
