#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "oversmooth/spectral.hpp"

namespace oversmooth {

/// Node-feature matrix, N rows (nodes) by C columns (channels).
using Signal = Matrix;

Signal relu(const Signal& x);

/// One layer of the dynamics: X -> sigma(...sigma(P X W_1)... W_H).
/// Reduces to sigma(P X W) for a single weight matrix.
Signal mlp_layer(const SymMatrix& p, const Signal& x,
                 const std::vector<Matrix>& weights);

/// Frobenius norm of the component of X perpendicular to U (x) R^C,
/// computed as ||X - E (E^T X)||_F.
double distance_to_subspace(const Signal& x, const SubspaceBasis& basis);

/// ||X_perp||_F / ||X_par||_F. Returns +infinity when the parallel part
/// vanishes but the perpendicular part does not, and 0 when both vanish.
double perp_ratio(const Signal& x, const SubspaceBasis& basis);

/// Largest singular value via power iteration on W^T W. Relative error
/// <= 1e-8; throws on non-convergence after 10000 iterations.
double max_singular_value(const Matrix& w);

/// Scales w so its largest singular value equals s_target. Throws on a
/// zero matrix.
Matrix rescale_to_singular(const Matrix& w, double s_target);

/// Per-layer weights. layers[l] holds the H_l matrices of layer l;
/// singular values are cached at construction.
class WeightStack {
public:
  explicit WeightStack(std::vector<std::vector<Matrix>> layers);

  int layer_count() const { return static_cast<int>(layers_.size()); }
  const std::vector<Matrix>& layer(int l) const { return layers_[l]; }
  /// Product of the max singular values within layer l.
  double s_layer(int l) const { return s_layer_[l]; }
  /// sup over layers of s_layer.
  double s_sup() const;
  const std::vector<double>& s_values() const { return s_layer_; }

private:
  std::vector<std::vector<Matrix>> layers_;
  std::vector<double> s_layer_;
};

/// Gaussian init with standard deviation 1/sqrt(c); if s_target is given,
/// every layer is rescaled so its max singular value equals s_target.
/// One matrix per layer (H_l = 1).
WeightStack init_weights(int c, int layer_count, std::optional<double> s_target,
                         std::uint64_t seed);

struct Trajectory {
  std::vector<double> distances;  // d(X^(l)), l = 0..L
  std::vector<double> bounds;     // d(X^(0)) * prod_{k<l} (s_k * lambda)
  std::vector<double> s_values;   // per-layer s_l
  double lambda = 0.0;
};

/// Runs the forward dynamics and records distances against the cumulative
/// bound. Assumptions are verified up front unless bypass_assumptions is
/// set (used for adversarial configurations).
Trajectory run_trajectory(const SymMatrix& p, const SubspaceBasis& basis,
                          const Signal& x0, const WeightStack& ws, double lambda,
                          bool bypass_assumptions = false);

struct FieldSample {
  double x1, x2;       // grid point
  double v1, v2;       // V(X) = f(X) - X
  double speed;        // |V(X)|
  double d_before;     // d(X)
  double d_after;      // d(f(X))
};

struct GridSpec {
  double lo = -2.0;
  double hi = 2.0;
  int resolution = 41;
};

/// Samples the one-step vector field of f(X) = sigma(P X W) for the 2-node,
/// 1-channel case, measuring distance to span(e) before and after the step.
std::vector<FieldSample> vector_field(const SymMatrix& p, const Vector& e,
                                      double w, const GridSpec& grid = {});

/// One-hot class embedding input: each node gets a random class in [0, K)
/// and the class rows of a Gaussian K x C matrix become the features.
Signal onehot_embedding_signal(int n, int k, int c, std::uint64_t seed);

/// Per-trial RNG stream derivation (splitmix64 over master ^ index).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

}  // namespace oversmooth
