#include "oversmooth/oracles.hpp"

#include <omp.h>

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

namespace oversmooth {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct TrialOutcome {
  bool violated = false;
  double slack = kInf;  // negative slack marks the violation margin
  std::string payload;
};

std::string json_pair(const char* key, double value) {
  std::ostringstream os;
  os.precision(17);
  os << '"' << key << "\":" << value;
  return os.str();
}

/// Common Monte Carlo driver. Aggregation is commutative (sum, min, and
/// lowest-violating-index payload), so the parallel path reproduces the
/// serial reference exactly.
VerificationReport run_suite(const std::string& name, long trials, int threads,
                             const std::function<TrialOutcome(long)>& trial_fn) {
  VerificationReport r;
  r.name = name;
  r.trials = trials;
  r.worst_slack = trials > 0 ? kInf : 0.0;
  long first_violation = std::numeric_limits<long>::max();
  std::string payload;

  auto absorb = [&](long i, const TrialOutcome& o) {
    r.worst_slack = std::min(r.worst_slack, o.slack);
    if (o.violated) {
      ++r.violations;
      if (i < first_violation) {
        first_violation = i;
        payload = o.payload;
      }
    }
  };

  if (threads <= 1) {
    for (long i = 0; i < trials; ++i) absorb(i, trial_fn(i));
  } else {
#pragma omp parallel for num_threads(threads) schedule(dynamic)
    for (long i = 0; i < trials; ++i) {
      const TrialOutcome o = trial_fn(i);
#pragma omp critical
      absorb(i, o);
    }
  }
  if (r.violations > 0 && !payload.empty()) r.payload = payload;
  return r;
}

/// slack of "lhs <= rhs" under relative tolerance; negative means violated.
double bound_slack(double lhs, double rhs, double rel) {
  return rhs + rel * (1.0 + rhs) - lhs;
}

Graph random_small_graph(std::uint64_t seed, int max_n = 30) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick_n(2, max_n);
  std::uniform_real_distribution<double> pick_p(0.0, 1.0);
  const int n = pick_n(rng);
  const double p = pick_p(rng);
  return erdos_renyi(n, p, rng());
}

Signal random_signal(int n, int c, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  Signal x(n, c);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < c; ++j) x(i, j) = gauss(rng);
  return x;
}

bool is_bipartite(const Graph& g) {
  const auto adj = g.adjacency_lists();
  std::vector<int> color(g.node_count(), -1);
  for (int start = 0; start < g.node_count(); ++start) {
    if (color[start] >= 0) continue;
    color[start] = 0;
    std::vector<int> stack{start};
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (int v : adj[u]) {
        if (color[v] < 0) {
          color[v] = 1 - color[u];
          stack.push_back(v);
        } else if (color[v] == color[u]) {
          return false;
        }
      }
    }
  }
  return true;
}

int numerical_rank(const Matrix& m, double rel_threshold) {
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > rel_threshold * sv(0)) ++rank;
  return rank;
}

}  // namespace

double er_threshold_s0(const ThresholdInputs& t) {
  if (t.n < 1 || t.p <= 0.0 || t.p > 1.0 || t.eps <= 0.0 || t.eps >= 1.0)
    throw std::invalid_argument("invalid threshold inputs");
  const double num = t.n * t.p - t.p + 1.0;
  return std::sqrt(num / std::log(4.0 * t.n / t.eps)) / 7.0;
}

ChungQuantities chung_quantities(const ThresholdInputs& t) {
  if (t.n < 1 || t.p <= 0.0 || t.p > 1.0 || t.eps <= 0.0 || t.eps >= 1.0)
    throw std::invalid_argument("invalid threshold inputs");
  ChungQuantities q;
  q.k_eps = 3.0 * (1.0 + std::log(4.0 / t.eps));
  const double denom = t.n * t.p - t.p + 1.0;
  q.l_npe = (1.0 - t.p) / denom +
            4.0 * std::sqrt(3.0 * std::log(4.0 * t.n / t.eps) / denom);
  if (t.n == 1)
    throw std::domain_error("applicability predicate undefined for n = 1");
  q.applicable = denom / std::log(static_cast<double>(t.n)) > q.k_eps;
  return q;
}

VerificationReport er_concentration_check(const ThresholdInputs& t, int trials,
                                          std::uint64_t seed, int threads) {
  const double center = t.n * t.p / (t.n * t.p - t.p + 1.0);
  const double band =
      4.0 * std::sqrt(3.0 * std::log(4.0 * t.n / t.eps) / (t.n * t.p - t.p + 1.0));

  auto trial = [&, t, seed](long i) {
    const std::uint64_t s = derive_seed(seed, static_cast<std::uint64_t>(i));
    const Graph g = erdos_renyi(t.n, t.p, s);
    const Spectrum spec = eigen(augmented_laplacian(g));
    double max_dev = 0.0;
    for (int k = 1; k < spec.eigenvalues.size(); ++k)
      max_dev = std::max(max_dev, std::abs(spec.eigenvalues(k) - center));
    TrialOutcome o;
    o.slack = band - max_dev;
    o.violated = o.slack < 0.0;
    if (o.violated) {
      std::ostringstream os;
      os << "{" << json_pair("seed", static_cast<double>(s)) << ","
         << json_pair("max_deviation", max_dev) << "," << json_pair("band", band)
         << "}";
      o.payload = os.str();
    }
    return o;
  };

  VerificationReport r = run_suite("er-concentration", trials, threads, trial);
  r.allowed_violations =
      static_cast<long>(std::floor(t.eps * static_cast<double>(trials)));
  r.params = {{"n", static_cast<double>(t.n)},
              {"p", t.p},
              {"eps", t.eps},
              {"center", center},
              {"band", band}};
  return r;
}

MarkovTrace markov_converge(const SymMatrix& p_transition, const Vector& x0,
                            int steps) {
  const int n = p_transition.size();
  const Matrix& p = p_transition.mat();
  if (p.minCoeff() < -1e-10)
    throw std::invalid_argument("transition matrix has negative entries");
  for (int i = 0; i < n; ++i)
    if (std::abs(p.row(i).sum() - 1.0) > 1e-10)
      throw std::invalid_argument("transition matrix rows must sum to 1");
  if (x0.size() != n || x0.minCoeff() < -1e-10 ||
      std::abs(x0.sum() - 1.0) > 1e-10)
    throw std::invalid_argument("x0 must be a probability vector");

  Vector e = Vector::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
  SubspaceBasis basis{e};
  const Spectrum spec = eigen(p_transition);

  MarkovTrace t;
  t.lambda = lambda_rate(spec, 1);
  const Vector uniform = Vector::Constant(n, 1.0 / n);
  Vector x = x0;
  const double d0 = distance_to_subspace(x, basis);
  for (int l = 0; l <= steps; ++l) {
    t.distances.push_back(distance_to_subspace(x, basis));
    t.bounds.push_back(std::pow(t.lambda, l) * d0);
    t.tv_uniform.push_back(0.5 * (x - uniform).lpNorm<1>());
    if (l < steps) x = p * x;
  }
  return t;
}

SymMatrix random_markov_chain(int n, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("chain needs at least 2 states");
  // Metropolis weights on a connected non-bipartite graph give a symmetric
  // stochastic matrix; the lazy 1/2 I + 1/2 W mix guarantees aperiodicity.
  for (std::uint64_t attempt = 0;; ++attempt) {
    const Graph g = erdos_renyi(n, 0.5, derive_seed(seed, attempt));
    if (connected_components(g).m_count != 1 || is_bipartite(g)) continue;
    const auto deg = g.degrees();
    Matrix w = Matrix::Zero(n, n);
    for (auto [u, v] : g.edges()) {
      w(u, v) = 1.0 / std::max(deg[u], deg[v]);
      w(v, u) = w(u, v);
    }
    for (int i = 0; i < n; ++i) w(i, i) = 1.0 - w.row(i).sum();
    Matrix lazy = 0.5 * Matrix::Identity(n, n) + 0.5 * w;
    return SymMatrix::from_symmetric(std::move(lazy));
  }
}

StrictnessReport strictness_construction(double mu, double lam, double w) {
  if (mu <= 0.0 || lam <= 0.0)
    throw std::invalid_argument("mu and lam must be positive");
  if (w <= 1.0 / lam)
    throw std::invalid_argument("w must exceed 1/lam");

  Matrix p(2, 2);
  p << mu, 0.0, 0.0, lam;
  const SymMatrix pm = SymMatrix::from_symmetric(p);
  Vector e(2);
  e << 1.0, 0.0;
  SubspaceBasis basis{e};
  const std::vector<Matrix> weights{Matrix::Constant(1, 1, w)};

  StrictnessReport r;
  r.min_ratio = kInf;
  r.max_ratio = -kInf;
  for (int i = 0; i <= 20; ++i) {
    for (int j = 1; j <= 20; ++j) {  // x_2 > 0 only
      Signal x(2, 1);
      x << -2.0 + 0.2 * i, 0.1 * j;
      const double before = distance_to_subspace(x, basis);
      const double after = distance_to_subspace(mlp_layer(pm, x, weights), basis);
      const double ratio = after / before;
      r.min_ratio = std::min(r.min_ratio, ratio);
      r.max_ratio = std::max(r.max_ratio, ratio);
      ++r.grid_points;
      if (after > before) ++r.strict_increases;
    }
  }
  r.all_increase = r.strict_increases == r.grid_points;
  return r;
}

NonStrictnessReport nonstrictness_construction(double lam) {
  if (lam <= 1.0 || lam >= 2.0)
    throw std::invalid_argument("lam must lie in (1, 2)");

  Matrix p(2, 2);
  p << lam / 2.0, -lam / 2.0, -lam / 2.0, lam / 2.0;
  const SymMatrix pm = SymMatrix::from_symmetric(p);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  Vector e(2), e_perp(2);
  e << inv_sqrt2, inv_sqrt2;
  e_perp << inv_sqrt2, -inv_sqrt2;
  SubspaceBasis basis{e};
  const std::vector<Matrix> weights{Matrix::Constant(1, 1, 1.0)};

  NonStrictnessReport r;
  r.w_lambda = lam;
  r.min_ratio = kInf;
  r.max_ratio = -kInf;
  for (int i = 0; i <= 20; ++i) {
    for (int j = 0; j <= 20; ++j) {
      if (j == 10) continue;  // b = 0 excluded
      const double a = 0.2 * (i - 10);
      const double b = 0.2 * (j - 10);
      const Signal x = a * e + b * e_perp;
      const double before = distance_to_subspace(x, basis);
      const double after = distance_to_subspace(mlp_layer(pm, x, weights), basis);
      const double ratio = after / before;
      r.min_ratio = std::min(r.min_ratio, ratio);
      r.max_ratio = std::max(r.max_ratio, ratio);
      ++r.grid_points;
    }
  }
  r.all_decrease = r.max_ratio < 1.0;
  return r;
}

std::vector<int> counterexample_rank_trace(int max_steps, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  Signal x(4, 3);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 3; ++j) x(i, j) = std::abs(gauss(rng));
  return counterexample_rank_trace(max_steps, x);
}

std::vector<int> counterexample_rank_trace(int max_steps, const Signal& x0) {
  if (max_steps < 1) throw std::invalid_argument("max_steps must be >= 1");
  const SymMatrix l = propagation_matrix(counterexample_graph());
  const std::vector<Matrix> identity{Matrix::Identity(3, 3)};
  std::vector<int> ranks;
  Signal y = x0;
  ranks.push_back(numerical_rank(y, 1e-10));
  for (int step = 1; step <= max_steps; ++step) {
    y = mlp_layer(l, y, identity);
    ranks.push_back(numerical_rank(y, 1e-10));
  }
  return ranks;
}

FixedPointReport trivial_fixed_point_check(const Graph& g, const WeightStack& ws,
                                           const Signal& x0, int layers) {
  if (layers < 1 || layers > ws.layer_count())
    throw std::invalid_argument("layers out of range for the weight stack");
  for (int l = 0; l < layers; ++l)
    if (ws.s_layer(l) >= 1.0)
      throw std::invalid_argument("trivial fixed point requires every s_l < 1");

  const SymMatrix p = propagation_matrix(g);
  FixedPointReport r;
  r.norms.push_back(x0.norm());
  r.bounds.push_back(x0.norm());
  Signal x = x0;
  r.within_bound = true;
  for (int l = 0; l < layers; ++l) {
    x = mlp_layer(p, x, ws.layer(l));
    r.norms.push_back(x.norm());
    r.bounds.push_back(r.bounds.back() * ws.s_layer(l));
    if (r.norms.back() > r.bounds.back() + 1e-9) r.within_bound = false;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Property suites
// ---------------------------------------------------------------------------

VerificationReport check_linear_contraction(const SuiteConfig& cfg) {
  auto trial = [&cfg](long i) {
    const std::uint64_t s = derive_seed(cfg.seed, static_cast<std::uint64_t>(i));
    const Graph g = random_small_graph(s);
    const SymMatrix p = propagation_matrix(g);
    const SubspaceBasis basis = invariant_basis(g);
    const double lambda = lambda_rate(g);
    const Signal x = random_signal(g.node_count(), 4, derive_seed(s, 1));
    const double lhs = distance_to_subspace(Signal(p.mat() * x), basis);
    const double rhs = lambda * distance_to_subspace(x, basis);
    TrialOutcome o;
    o.slack = bound_slack(lhs, rhs, cfg.rel_slack);
    o.violated = o.slack < 0.0;
    if (o.violated)
      o.payload = "{" + json_pair("seed", static_cast<double>(s)) + "," +
                  json_pair("lhs", lhs) + "," + json_pair("rhs", rhs) + "}";
    return o;
  };
  return run_suite("linear-contraction", cfg.trials, cfg.threads, trial);
}

VerificationReport check_weight_contraction(const SuiteConfig& cfg) {
  auto trial = [&cfg](long i) {
    const std::uint64_t s = derive_seed(cfg.seed, static_cast<std::uint64_t>(i));
    const Graph g = random_small_graph(s);
    const SubspaceBasis basis = invariant_basis(g);
    const int c = 4;
    const Signal x = random_signal(g.node_count(), c, derive_seed(s, 1));
    const Matrix w = random_signal(c, c, derive_seed(s, 2));
    const double lhs = distance_to_subspace(Signal(x * w), basis);
    const double rhs = max_singular_value(w) * distance_to_subspace(x, basis);
    TrialOutcome o;
    o.slack = bound_slack(lhs, rhs, cfg.rel_slack);
    o.violated = o.slack < 0.0;
    if (o.violated)
      o.payload = "{" + json_pair("seed", static_cast<double>(s)) + "," +
                  json_pair("lhs", lhs) + "," + json_pair("rhs", rhs) + "}";
    return o;
  };
  return run_suite("weight-contraction", cfg.trials, cfg.threads, trial);
}

VerificationReport check_relu_contraction(const SuiteConfig& cfg) {
  auto trial = [&cfg](long i) {
    const std::uint64_t s = derive_seed(cfg.seed, static_cast<std::uint64_t>(i));
    const Graph g = random_small_graph(s);
    const SubspaceBasis basis = invariant_basis(g);
    const Signal x = random_signal(g.node_count(), 4, derive_seed(s, 1));
    const double lhs = distance_to_subspace(relu(x), basis);
    const double rhs = distance_to_subspace(x, basis);
    TrialOutcome o;
    o.slack = bound_slack(lhs, rhs, cfg.rel_slack);
    o.violated = o.slack < 0.0;
    if (o.violated)
      o.payload = "{" + json_pair("seed", static_cast<double>(s)) + "," +
                  json_pair("lhs", lhs) + "," + json_pair("rhs", rhs) + "}";
    return o;
  };
  return run_suite("relu-contraction", cfg.trials, cfg.threads, trial);
}

VerificationReport check_layer_contraction(const SuiteConfig& cfg) {
  auto trial = [&cfg](long i) {
    const std::uint64_t s = derive_seed(cfg.seed, static_cast<std::uint64_t>(i));
    const Graph g = random_small_graph(s);
    const SymMatrix p = propagation_matrix(g);
    const SubspaceBasis basis = invariant_basis(g);
    const double lambda = lambda_rate(g);
    const int c = 4;
    const int depth = 1 + static_cast<int>(i % 3);
    const Signal x = random_signal(g.node_count(), c, derive_seed(s, 1));
    std::vector<Matrix> weights;
    double s_l = 1.0;
    for (int h = 0; h < depth; ++h) {
      weights.push_back(random_signal(c, c, derive_seed(s, 2 + h)));
      s_l *= max_singular_value(weights.back());
    }
    const double lhs = distance_to_subspace(mlp_layer(p, x, weights), basis);
    const double rhs = s_l * lambda * distance_to_subspace(x, basis);
    TrialOutcome o;
    o.slack = bound_slack(lhs, rhs, cfg.rel_slack);
    o.violated = o.slack < 0.0;
    if (o.violated)
      o.payload = "{" + json_pair("seed", static_cast<double>(s)) + "," +
                  json_pair("depth", depth) + "," + json_pair("lhs", lhs) + "," +
                  json_pair("rhs", rhs) + "}";
    return o;
  };
  return run_suite("layer-contraction", cfg.trials, cfg.threads, trial);
}

VerificationReport check_propagation_spectra(const SuiteConfig& cfg) {
  auto trial = [&cfg](long i) {
    const std::uint64_t s = derive_seed(cfg.seed, static_cast<std::uint64_t>(i));
    const Graph g = random_small_graph(s);
    const int n = g.node_count();
    const int m = connected_components(g).m_count;
    const SymMatrix prop = propagation_matrix(g);
    const Spectrum spec = eigen(prop);
    const SubspaceBasis basis = invariant_basis(g);
    const Matrix& p = prop.mat();

    double slack = kInf;
    slack = std::min(slack, spec.eigenvalues(0) - (-1.0));  // lambda_1 > -1
    if (n > m)
      slack = std::min(slack, 1.0 - 1e-8 - spec.eigenvalues(n - m - 1));
    for (int k = n - m; k < n; ++k)
      slack = std::min(slack, 1e-8 - std::abs(spec.eigenvalues(k) - 1.0));
    for (int k = 0; k < m; ++k) {
      const Vector e = basis.vectors.col(k);
      slack = std::min(slack, 1e-10 - (p * e - e).norm());
    }
    TrialOutcome o;
    o.slack = slack;
    o.violated = slack < 0.0;
    if (o.violated)
      o.payload = "{" + json_pair("seed", static_cast<double>(s)) + "," +
                  json_pair("slack", slack) + "}";
    return o;
  };
  return run_suite("propagation-spectra", cfg.trials, cfg.threads, trial);
}

VerificationReport check_perp_invariance(const SuiteConfig& cfg) {
  auto trial = [&cfg](long i) {
    const std::uint64_t s = derive_seed(cfg.seed, static_cast<std::uint64_t>(i));
    const Graph g = random_small_graph(s);
    const SymMatrix p = propagation_matrix(g);
    const SubspaceBasis basis = invariant_basis(g);
    Vector v = random_signal(g.node_count(), 1, derive_seed(s, 1)).col(0);
    v -= basis.vectors * (basis.vectors.transpose() * v);
    TrialOutcome o;
    if (v.norm() < 1e-12) {  // U spans everything (edgeless graph)
      o.slack = 1e-8;
      return o;
    }
    v /= v.norm();
    const double leak = (basis.vectors.transpose() * (p.mat() * v)).norm();
    o.slack = 1e-8 - leak;
    o.violated = o.slack < 0.0;
    if (o.violated)
      o.payload = "{" + json_pair("seed", static_cast<double>(s)) + "," +
                  json_pair("leak", leak) + "}";
    return o;
  };
  return run_suite("perp-invariance", cfg.trials, cfg.threads, trial);
}

VerificationReport check_subspace_invariance(const SuiteConfig& cfg) {
  auto trial = [&cfg](long i) {
    const std::uint64_t s = derive_seed(cfg.seed, static_cast<std::uint64_t>(i));
    const Graph g = random_small_graph(s);
    const SymMatrix p = propagation_matrix(g);
    const SubspaceBasis basis = invariant_basis(g);
    const int c = 4;
    const Signal coeffs = random_signal(basis.m_count(), c, derive_seed(s, 1));
    const Signal x0 = basis.vectors * coeffs;
    const WeightStack ws = init_weights(c, 5, 1.0, derive_seed(s, 2));
    const Trajectory t = run_trajectory(p, basis, x0, ws, lambda_rate(g));
    double worst = 0.0;
    for (double d : t.distances) worst = std::max(worst, d);
    TrialOutcome o;
    o.slack = 1e-10 - worst;
    o.violated = o.slack < 0.0;
    if (o.violated)
      o.payload = "{" + json_pair("seed", static_cast<double>(s)) + "," +
                  json_pair("max_distance", worst) + "}";
    return o;
  };
  return run_suite("subspace-invariance", cfg.trials, cfg.threads, trial);
}

VerificationReport check_counterexample_rank(const SuiteConfig& cfg) {
  auto trial = [&cfg](long i) {
    const std::uint64_t s = derive_seed(cfg.seed, static_cast<std::uint64_t>(i));
    const auto ranks = counterexample_rank_trace(10, s);
    TrialOutcome o;
    int min_rank = 3;
    for (int r : ranks) min_rank = std::min(min_rank, r);
    o.slack = static_cast<double>(min_rank - 3);
    o.violated = min_rank != 3;
    if (o.violated)
      o.payload = "{" + json_pair("seed", static_cast<double>(s)) + "," +
                  json_pair("min_rank", min_rank) + "}";
    return o;
  };
  VerificationReport r =
      run_suite("counterexample-rank", cfg.trials, cfg.threads, trial);
  // The rank-3 event has probability < 1; budget 5% of trials.
  r.allowed_violations = cfg.trials / 20;
  return r;
}

VerificationReport check_markov_convergence(const SuiteConfig& cfg) {
  auto trial = [&cfg](long i) {
    const std::uint64_t s = derive_seed(cfg.seed, static_cast<std::uint64_t>(i));
    const int n = 8;
    const SymMatrix p = random_markov_chain(n, s);
    Vector x0 = random_signal(n, 1, derive_seed(s, 1)).col(0).cwiseAbs();
    x0 /= x0.sum();
    const MarkovTrace t = markov_converge(p, x0, 50);
    double slack = kInf;
    for (std::size_t l = 0; l < t.distances.size(); ++l)
      slack = std::min(slack, t.bounds[l] + 1e-10 - t.distances[l]);
    for (std::size_t l = 1; l < t.tv_uniform.size(); ++l)
      slack = std::min(slack, t.tv_uniform[l - 1] + 1e-12 - t.tv_uniform[l]);
    // probability-vector preservation along the iteration
    Vector x = x0;
    for (int l = 0; l < 50; ++l) {
      x = p.mat() * x;
      slack = std::min(slack, 1e-12 - std::abs(x.sum() - 1.0));
      slack = std::min(slack, x.minCoeff() + 1e-12);
    }
    TrialOutcome o;
    o.slack = slack;
    o.violated = slack < 0.0;
    if (o.violated)
      o.payload = "{" + json_pair("seed", static_cast<double>(s)) + "," +
                  json_pair("slack", slack) + "}";
    return o;
  };
  return run_suite("markov-convergence", cfg.trials, cfg.threads, trial);
}

VerificationReport check_trivial_fixed_point(const SuiteConfig& cfg) {
  auto trial = [&cfg](long i) {
    const std::uint64_t s = derive_seed(cfg.seed, static_cast<std::uint64_t>(i));
    const Graph g = random_small_graph(s);
    std::mt19937_64 rng(derive_seed(s, 1));
    std::uniform_real_distribution<double> pick_s(0.2, 0.95);
    const int c = 4;
    const WeightStack ws = init_weights(c, 10, pick_s(rng), derive_seed(s, 2));
    const Signal x0 = random_signal(g.node_count(), c, derive_seed(s, 3));
    const FixedPointReport fp = trivial_fixed_point_check(g, ws, x0, 10);
    double slack = kInf;
    for (std::size_t l = 0; l < fp.norms.size(); ++l)
      slack = std::min(slack, fp.bounds[l] + 1e-9 - fp.norms[l]);
    TrialOutcome o;
    o.slack = slack;
    o.violated = slack < 0.0;
    if (o.violated)
      o.payload = "{" + json_pair("seed", static_cast<double>(s)) + "," +
                  json_pair("slack", slack) + "}";
    return o;
  };
  return run_suite("trivial-fixed-point", cfg.trials, cfg.threads, trial);
}

VerificationReport check_tightness_constructions() {
  VerificationReport r;
  r.name = "tightness-constructions";
  r.trials = 2;
  r.worst_slack = kInf;

  const StrictnessReport strict = strictness_construction(0.5, 1.0, 1.2);
  double slack = std::min(1e-12 - std::abs(strict.min_ratio - 1.2),
                          1e-12 - std::abs(strict.max_ratio - 1.2));
  if (!strict.all_increase) slack = std::min(slack, -1.0);
  r.worst_slack = std::min(r.worst_slack, slack);
  if (slack < 0.0) ++r.violations;

  const NonStrictnessReport loose = nonstrictness_construction(1.5);
  slack = std::min(1e-12 - std::abs(loose.min_ratio - 0.75),
                   1e-12 - std::abs(loose.max_ratio - 0.75));
  if (!(loose.w_lambda > 1.0) || !loose.all_decrease)
    slack = std::min(slack, -1.0);
  r.worst_slack = std::min(r.worst_slack, slack);
  if (slack < 0.0) ++r.violations;

  if (r.violations > 0)
    r.payload = "{" + json_pair("strict_min_ratio", strict.min_ratio) + "," +
                json_pair("nonstrict_max_ratio", loose.max_ratio) + "}";
  return r;
}

}  // namespace oversmooth
