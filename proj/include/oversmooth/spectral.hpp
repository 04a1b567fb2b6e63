#pragma once

#include <Eigen/Dense>

#include <vector>

#include "oversmooth/graph.hpp"

namespace oversmooth {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Central tolerance configuration. One instance per experiment run;
/// individual values can be overridden from the CLI.
struct Tolerances {
  double orthonormality = 1e-10;
  double eigen_residual = 1e-8;
  double rank_rel = 1e-10;
  double assumption = 1e-8;
};

/// Symmetric dense matrix. Construction rejects asymmetric input and then
/// mirrors the lower triangle so entries[i][j] == entries[j][i] holds exactly.
class SymMatrix {
public:
  static SymMatrix from_symmetric(Matrix m, double tol = 1e-12);
  /// Symmetrizes (m + m^T)/2 without checking.
  static SymMatrix symmetrize(const Matrix& m);

  int size() const { return static_cast<int>(m_.rows()); }
  const Matrix& mat() const { return m_; }
  double operator()(int i, int j) const { return m_(i, j); }

private:
  explicit SymMatrix(Matrix m) : m_(std::move(m)) {}
  Matrix m_;
};

/// Eigendecomposition of a symmetric matrix: ascending eigenvalues, column k
/// of `eigenvectors` paired with eigenvalue k. Sign convention: the first
/// component of each eigenvector with magnitude > 1e-12 is positive.
struct Spectrum {
  Vector eigenvalues;
  Matrix eigenvectors;
};

/// Orthonormal basis E of the invariant subspace U. Columns are non-negative
/// and have disjoint supports (one per connected component).
struct SubspaceBasis {
  Matrix vectors;
  int m_count() const { return static_cast<int>(vectors.cols()); }
};

struct AssumptionReport {
  double min_entry = 0.0;        // min over E; Assumption 1 wants >= 0
  double orthonormality_err = 0.0;  // ||E^T E - I||_max
  double invariance_err = 0.0;      // ||P E - E (E^T P E)||_max
  bool nonnegative_ok = false;
  bool orthonormal_ok = false;
  bool invariant_ok = false;
  bool all_ok() const { return nonnegative_ok && orthonormal_ok && invariant_ok; }
};

struct Histogram {
  std::vector<double> bin_left;
  std::vector<double> bin_right;
  std::vector<int> counts;
};

/// Augmented normalized Laplacian: I - (D+I)^{-1/2} (A+I) (D+I)^{-1/2}.
SymMatrix augmented_laplacian(const Graph& g);

/// Propagation matrix P = (D+I)^{-1/2} (A+I) (D+I)^{-1/2}; entrywise >= 0.
SymMatrix propagation_matrix(const Graph& g);

/// Dense symmetric eigendecomposition with deterministic ordering and signs.
Spectrum eigen(const SymMatrix& m);

/// Analytic invariant basis: e_m = (D+I)^{1/2} u_m per connected component,
/// normalized to unit length. Never taken from numerical eigenvectors.
SubspaceBasis invariant_basis(const Graph& g);
SubspaceBasis invariant_basis(const Graph& g, const ComponentLabeling& comps);

/// Contraction rate: max |eigenvalue| of P over the N - M smallest ones
/// (the top M equal 1 and are dropped positionally). Zero when N == M.
double lambda_rate(const Graph& g);
double lambda_rate(const Spectrum& p_spectrum, int m_count);

AssumptionReport check_assumptions(const SymMatrix& p, const SubspaceBasis& basis,
                                   double tol = 1e-8);

/// Uniform-bin histogram of a Laplacian spectrum over [0, 2]. Throws if an
/// eigenvalue lies outside [0, 2] beyond 1e-8 slack.
Histogram spectral_histogram(const Spectrum& s, int bins);

}  // namespace oversmooth
