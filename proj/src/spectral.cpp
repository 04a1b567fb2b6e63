#include "oversmooth/spectral.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>

namespace oversmooth {

SymMatrix SymMatrix::from_symmetric(Matrix m, double tol) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("matrix must be square");
  const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (asym > tol)
    throw std::invalid_argument("matrix is not symmetric");
  // Mirror the lower triangle so equality holds bitwise.
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < i; ++j) m(j, i) = m(i, j);
  return SymMatrix(std::move(m));
}

SymMatrix SymMatrix::symmetrize(const Matrix& m) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("matrix must be square");
  Matrix s = 0.5 * (m + m.transpose());
  for (int i = 0; i < s.rows(); ++i)
    for (int j = 0; j < i; ++j) s(j, i) = s(i, j);
  return SymMatrix(std::move(s));
}

namespace {

Matrix scaled_augmented_adjacency(const Graph& g) {
  const int n = g.node_count();
  const auto deg = g.degrees();
  Vector dinv(n);
  for (int i = 0; i < n; ++i) dinv(i) = 1.0 / std::sqrt(deg[i] + 1.0);
  Matrix p = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) p(i, i) = dinv(i) * dinv(i);
  for (auto [u, v] : g.edges()) {
    p(u, v) = dinv(u) * dinv(v);
    p(v, u) = p(u, v);
  }
  return p;
}

}  // namespace

SymMatrix augmented_laplacian(const Graph& g) {
  Matrix p = scaled_augmented_adjacency(g);
  Matrix lap = Matrix::Identity(p.rows(), p.cols()) - p;
  return SymMatrix::from_symmetric(std::move(lap));
}

SymMatrix propagation_matrix(const Graph& g) {
  return SymMatrix::from_symmetric(scaled_augmented_adjacency(g));
}

Spectrum eigen(const SymMatrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m.mat());
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("symmetric eigendecomposition failed to converge");
  Spectrum s;
  s.eigenvalues = solver.eigenvalues();
  s.eigenvectors = solver.eigenvectors();
  // Sign convention: first component with magnitude > 1e-12 is positive.
  for (int k = 0; k < s.eigenvectors.cols(); ++k) {
    for (int i = 0; i < s.eigenvectors.rows(); ++i) {
      const double v = s.eigenvectors(i, k);
      if (std::abs(v) > 1e-12) {
        if (v < 0.0) s.eigenvectors.col(k) = -s.eigenvectors.col(k);
        break;
      }
    }
  }
  return s;
}

SubspaceBasis invariant_basis(const Graph& g) {
  return invariant_basis(g, connected_components(g));
}

SubspaceBasis invariant_basis(const Graph& g, const ComponentLabeling& comps) {
  const int n = g.node_count();
  const auto deg = g.degrees();
  Matrix e = Matrix::Zero(n, comps.m_count);
  for (int i = 0; i < n; ++i)
    e(i, comps.labels[i]) = std::sqrt(deg[i] + 1.0);
  for (int m = 0; m < comps.m_count; ++m) e.col(m) /= e.col(m).norm();
  return SubspaceBasis{std::move(e)};
}

double lambda_rate(const Spectrum& p_spectrum, int m_count) {
  const int n = static_cast<int>(p_spectrum.eigenvalues.size());
  double lambda = 0.0;
  for (int i = 0; i < n - m_count; ++i)
    lambda = std::max(lambda, std::abs(p_spectrum.eigenvalues(i)));
  return lambda;
}

double lambda_rate(const Graph& g) {
  const auto comps = connected_components(g);
  return lambda_rate(eigen(propagation_matrix(g)), comps.m_count);
}

AssumptionReport check_assumptions(const SymMatrix& p, const SubspaceBasis& basis,
                                   double tol) {
  if (p.size() != basis.vectors.rows())
    throw std::invalid_argument("dimension mismatch between P and basis");
  const Matrix& e = basis.vectors;
  AssumptionReport r;
  r.min_entry = e.minCoeff();
  const int m = basis.m_count();
  r.orthonormality_err =
      (e.transpose() * e - Matrix::Identity(m, m)).cwiseAbs().maxCoeff();
  const Matrix pe = p.mat() * e;
  r.invariance_err = (pe - e * (e.transpose() * pe)).cwiseAbs().maxCoeff();
  r.nonnegative_ok = r.min_entry >= -tol;
  r.orthonormal_ok = r.orthonormality_err <= tol;
  r.invariant_ok = r.invariance_err <= tol;
  return r;
}

Histogram spectral_histogram(const Spectrum& s, int bins) {
  if (bins < 1) throw std::invalid_argument("bins must be >= 1");
  Histogram h;
  h.counts.assign(bins, 0);
  h.bin_left.resize(bins);
  h.bin_right.resize(bins);
  const double width = 2.0 / bins;
  for (int b = 0; b < bins; ++b) {
    h.bin_left[b] = b * width;
    h.bin_right[b] = (b + 1) * width;
  }
  for (int i = 0; i < s.eigenvalues.size(); ++i) {
    const double mu = s.eigenvalues(i);
    if (mu < -1e-8 || mu > 2.0 + 1e-8)
      throw std::domain_error("eigenvalue outside [0, 2]: not a Laplacian spectrum");
    int b = static_cast<int>(std::min(std::max(mu, 0.0), 2.0) / width);
    if (b == bins) b = bins - 1;  // mu == 2 lands in the last bin
    ++h.counts[b];
  }
  return h;
}

}  // namespace oversmooth
