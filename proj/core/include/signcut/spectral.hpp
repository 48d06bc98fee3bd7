#ifndef SIGNCUT_SPECTRAL_HPP
#define SIGNCUT_SPECTRAL_HPP

#include <cstdint>
#include <iosfwd>

#include <Eigen/Core>

#include "signcut/sgraph.hpp"

namespace signcut {

enum class EigenMethod {
  kAuto,     ///< dense up to kDenseLimit nodes, Lanczos above
  kDense,
  kLanczos,
};

struct EigenOptions {
  static constexpr Index kDenseLimit = 2048;

  EigenMethod method = EigenMethod::kAuto;
  /// Residual bound relative to ||L||.
  double tol = 1e-8;
  /// Lanczos matrix-vector budget; 0 means 10 * n.
  Index max_matvecs = 0;
  std::uint64_t seed = 0x5eed;
};

struct Eigenpairs {
  /// Ascending.
  Eigen::VectorXd values;
  /// Orthonormal columns; each column's largest-magnitude entry is positive.
  Eigen::MatrixXd vectors;
};

/// K smallest eigenpairs of a symmetric positive semidefinite matrix.
/// Throws BadK unless 1 <= k <= n, ConvergenceError when the Lanczos
/// budget runs out before every residual meets the tolerance.
Eigenpairs smallest_eigenpairs(const SparseMatrix& matrix, Index k,
                               const EigenOptions& opts = {});

/// Continuous solution of the relaxed normalized-cut problem.
struct RelaxedSolution {
  /// Relaxed indicators, Z = D^{-1/2} Y, so Z^T D Z = I.
  Eigen::MatrixXd z;
  /// Eigenvectors of the normalized signed Laplacian.
  Eigen::MatrixXd y;
  /// K smallest eigenvalues, ascending.
  Eigen::VectorXd eigenvalues;
};

/// Throws IsolatedVertexError if some node has zero signed degree.
RelaxedSolution relaxed_solution(const SignedGraph& g, Index k,
                                 const EigenOptions& opts = {});

/// CSV "index,eigenvalue" with a header row.
void write_spectrum(std::ostream& out, const Eigen::VectorXd& eigenvalues);

}  // namespace signcut

#endif  // SIGNCUT_SPECTRAL_HPP
