#include "oversmooth/dynamics.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace oversmooth {

Signal relu(const Signal& x) { return x.cwiseMax(0.0); }

Signal mlp_layer(const SymMatrix& p, const Signal& x,
                 const std::vector<Matrix>& weights) {
  if (weights.empty()) throw std::invalid_argument("weights must be non-empty");
  if (p.size() != x.rows())
    throw std::invalid_argument("P and X dimensions disagree");
  Signal y = p.mat() * x;
  for (const Matrix& w : weights) {
    if (w.rows() != y.cols())
      throw std::invalid_argument("weight dimension mismatch");
    y = relu(y * w);
  }
  return y;
}

double distance_to_subspace(const Signal& x, const SubspaceBasis& basis) {
  const Matrix& e = basis.vectors;
  return (x - e * (e.transpose() * x)).norm();
}

double perp_ratio(const Signal& x, const SubspaceBasis& basis) {
  const Matrix& e = basis.vectors;
  const double par = (e * (e.transpose() * x)).norm();
  const double perp = distance_to_subspace(x, basis);
  if (par == 0.0 && perp == 0.0) return 0.0;
  if (par == 0.0) return std::numeric_limits<double>::infinity();
  return perp / par;
}

double max_singular_value(const Matrix& w) {
  if (w.size() == 0) return 0.0;
  const Matrix gram = w.transpose() * w;
  if (gram.cwiseAbs().maxCoeff() == 0.0) return 0.0;

  const int dim = static_cast<int>(gram.cols());
  Vector v = Vector::Ones(dim);
  v /= v.norm();
  double rayleigh = 0.0;
  double prev = -1.0;
  bool restarted = false;
  constexpr int kMaxIters = 10000;
  for (int iter = 0; iter < kMaxIters; ++iter) {
    Vector u = gram * v;
    rayleigh = v.dot(u);
    const double residual = (u - rayleigh * v).norm();
    if (residual <= 1e-10 * std::max(rayleigh, 1e-300))
      return std::sqrt(std::max(rayleigh, 0.0));
    if (!restarted && iter > 0 &&
        std::abs(rayleigh - prev) < 1e-14 * std::max(1.0, rayleigh)) {
      // Stagnation: restart once from a seeded random direction.
      std::mt19937_64 rng(0x5eed5eed);
      std::normal_distribution<double> gauss;
      for (int i = 0; i < dim; ++i) v(i) = gauss(rng);
      v /= v.norm();
      restarted = true;
      prev = -1.0;
      continue;
    }
    prev = rayleigh;
    const double un = u.norm();
    if (un == 0.0) return 0.0;  // v landed in the kernel of a rank-deficient W
    v = u / un;
  }
  throw std::runtime_error("power iteration did not converge");
}

Matrix rescale_to_singular(const Matrix& w, double s_target) {
  if (s_target <= 0.0) throw std::invalid_argument("s_target must be positive");
  const double s = max_singular_value(w);
  if (s == 0.0) throw std::invalid_argument("cannot rescale a zero matrix");
  return (s_target / s) * w;
}

WeightStack::WeightStack(std::vector<std::vector<Matrix>> layers)
    : layers_(std::move(layers)) {
  s_layer_.reserve(layers_.size());
  for (const auto& layer : layers_) {
    if (layer.empty())
      throw std::invalid_argument("each layer needs at least one matrix");
    double s = 1.0;
    for (const Matrix& w : layer) {
      if (w.rows() != w.cols() || w.rows() != layer.front().rows())
        throw std::invalid_argument("weight matrices must be square and uniform");
      s *= max_singular_value(w);
    }
    s_layer_.push_back(s);
  }
}

double WeightStack::s_sup() const {
  double s = 0.0;
  for (double sl : s_layer_) s = std::max(s, sl);
  return s;
}

WeightStack init_weights(int c, int layer_count, std::optional<double> s_target,
                         std::uint64_t seed) {
  if (c < 1 || layer_count < 1)
    throw std::invalid_argument("channel and layer counts must be >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0 / std::sqrt(c));
  std::vector<std::vector<Matrix>> layers(layer_count);
  for (int l = 0; l < layer_count; ++l) {
    Matrix w(c, c);
    for (int i = 0; i < c; ++i)
      for (int j = 0; j < c; ++j) w(i, j) = gauss(rng);
    if (s_target) w = rescale_to_singular(w, *s_target);
    layers[l].push_back(std::move(w));
  }
  return WeightStack(std::move(layers));
}

Trajectory run_trajectory(const SymMatrix& p, const SubspaceBasis& basis,
                          const Signal& x0, const WeightStack& ws, double lambda,
                          bool bypass_assumptions) {
  if (!bypass_assumptions) {
    const auto report = check_assumptions(p, basis);
    if (!report.all_ok())
      throw std::runtime_error(
          "P/basis violate the invariant-subspace assumptions "
          "(pass bypass_assumptions to run anyway)");
  }
  Trajectory t;
  t.lambda = lambda;
  t.s_values = ws.s_values();
  t.distances.push_back(distance_to_subspace(x0, basis));
  t.bounds.push_back(t.distances.front());
  Signal x = x0;
  for (int l = 0; l < ws.layer_count(); ++l) {
    x = mlp_layer(p, x, ws.layer(l));
    t.distances.push_back(distance_to_subspace(x, basis));
    t.bounds.push_back(t.bounds.back() * ws.s_layer(l) * lambda);
  }
  return t;
}

std::vector<FieldSample> vector_field(const SymMatrix& p, const Vector& e,
                                      double w, const GridSpec& grid) {
  if (p.size() != 2 || e.size() != 2)
    throw std::invalid_argument("vector field requires the 2-node case");
  SubspaceBasis basis{e / e.norm()};
  std::vector<FieldSample> out;
  out.reserve(static_cast<std::size_t>(grid.resolution) * grid.resolution);
  const double step =
      grid.resolution > 1 ? (grid.hi - grid.lo) / (grid.resolution - 1) : 0.0;
  for (int i = 0; i < grid.resolution; ++i) {
    for (int j = 0; j < grid.resolution; ++j) {
      Vector x(2);
      x << grid.lo + i * step, grid.lo + j * step;
      const Vector fx = relu((p.mat() * x) * w);
      FieldSample s;
      s.x1 = x(0);
      s.x2 = x(1);
      s.v1 = fx(0) - x(0);
      s.v2 = fx(1) - x(1);
      s.speed = std::hypot(s.v1, s.v2);
      s.d_before = distance_to_subspace(x, basis);
      s.d_after = distance_to_subspace(fx, basis);
      out.push_back(s);
    }
  }
  return out;
}

Signal onehot_embedding_signal(int n, int k, int c, std::uint64_t seed) {
  if (n < 1 || k < 1 || c < 1)
    throw std::invalid_argument("n, k, c must be >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix embed(k, c);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < c; ++j) embed(i, j) = gauss(rng);
  std::uniform_int_distribution<int> pick(0, k - 1);
  Signal x(n, c);
  for (int i = 0; i < n; ++i) x.row(i) = embed.row(pick(rng));
  return x;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  // splitmix64 over the master seed advanced by the trial index.
  std::uint64_t z = master + (index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace oversmooth
