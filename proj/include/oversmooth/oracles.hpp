#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "oversmooth/dynamics.hpp"
#include "oversmooth/graph.hpp"
#include "oversmooth/spectral.hpp"

namespace oversmooth {

struct ThresholdInputs {
  int n = 1;
  double p = 1.0;
  double eps = 0.05;
};

/// Result of one property check: trial count, violation count, and the most
/// negative margin seen. payload carries a serialized counterexample (JSON
/// fragment) iff violations > 0.
struct VerificationReport {
  std::string name;
  long trials = 0;
  long violations = 0;
  double worst_slack = 0.0;
  /// Probabilistic checks (concentration, rank counterexample) tolerate a
  /// bounded number of failing trials; deterministic checks keep this at 0.
  long allowed_violations = 0;
  std::vector<std::pair<std::string, double>> params;
  std::optional<std::string> payload;

  bool passed() const { return violations <= allowed_violations; }
};

/// ER weight-scale threshold s_0 = (1/7) sqrt((Np - p + 1) / log(4N/eps)).
/// Natural logarithm throughout.
double er_threshold_s0(const ThresholdInputs& t);

struct ChungQuantities {
  double k_eps = 0.0;    // 3 (1 + log(4/eps))
  double l_npe = 0.0;    // (1-p)/(Np-p+1) + 4 sqrt(3 log(4N/eps) / (Np-p+1))
  bool applicable = false;  // (Np - p + 1) / log N > k(eps)
};

ChungQuantities chung_quantities(const ThresholdInputs& t);

/// Samples `trials` ER graphs and checks that all eigenvalues of the
/// augmented Laplacian except the smallest lie within the concentration band
/// |mu - Np/(Np-p+1)| <= 4 sqrt(3 log(4N/eps) / (Np-p+1)). threads <= 1 runs
/// the serial reference loop; otherwise trials fan out over OpenMP.
VerificationReport er_concentration_check(const ThresholdInputs& t, int trials,
                                          std::uint64_t seed, int threads = 1);

struct MarkovTrace {
  std::vector<double> distances;   // d(x_l) against e = 1/sqrt(n)
  std::vector<double> bounds;      // lambda^l d(x_0)
  std::vector<double> tv_uniform;  // total-variation distance to uniform
  double lambda = 0.0;
};

/// Iterates x_{l+1} = P x_l for a symmetric doubly stochastic P. Throws if P
/// is not stochastic or x0 is not a probability vector (tolerance 1e-10).
MarkovTrace markov_converge(const SymMatrix& p_transition, const Vector& x0,
                            int steps);

/// Symmetric, irreducible, aperiodic transition matrix: Metropolis weights on
/// a connected non-bipartite graph, lazily mixed with identity.
SymMatrix random_markov_chain(int n, std::uint64_t seed);

struct StrictnessReport {
  int grid_points = 0;
  int strict_increases = 0;       // points with x_2 > 0 and d after > d before
  double min_ratio = 0.0;         // min over grid of d_after / d_before
  double max_ratio = 0.0;
  bool all_increase = false;
};

/// Appendix-style tightness probe: P = diag(mu, lam), e = (1, 0), scalar
/// weight w > 1/lam. Evaluates d(X) = |x_2| vs d(f(X)) = (w lam x_2)^+ over a
/// grid with x_2 > 0 and confirms strict increase everywhere.
StrictnessReport strictness_construction(double mu, double lam, double w);

struct NonStrictnessReport {
  int grid_points = 0;
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  double w_lambda = 0.0;  // > 1 by construction
  bool all_decrease = false;
};

/// Conservativeness probe: P = (lam/2) [[1,-1],[-1,1]], e = (1,1)/sqrt(2),
/// w = 1, lam in (1,2). The distance ratio is exactly lam/2 < 1 for b != 0.
NonStrictnessReport nonstrictness_construction(double lam);

/// Iterates Y_{n+1} = sigma(L Y_n) on the 4-node counterexample graph with
/// identity 3x3 weights and a non-negative Gaussian input; returns the rank
/// of Y_n per step (relative singular-value threshold 1e-10).
std::vector<int> counterexample_rank_trace(int max_steps, std::uint64_t seed);
std::vector<int> counterexample_rank_trace(int max_steps, const Signal& x0);

struct FixedPointReport {
  std::vector<double> norms;       // ||X^(l)||_F
  std::vector<double> bounds;      // prod_{k<l} s_k * ||X^(0)||_F
  bool within_bound = false;
};

/// Shrinkage toward the trivial fixed point: requires every s_l < 1 and
/// checks ||X^(l)||_F <= (prod_{k<l} s_k) ||X^(0)||_F + 1e-9.
FixedPointReport trivial_fixed_point_check(const Graph& g, const WeightStack& ws,
                                           const Signal& x0, int layers);

// ---------------------------------------------------------------------------
// Property suites over random instances. Each is deterministic for a fixed
// seed and schedule-independent: per-trial seeds are derived from the master
// seed and results aggregate through commutative counters, so threads > 1
// produces the same report as the serial reference loop.
// ---------------------------------------------------------------------------

struct SuiteConfig {
  int trials = 1000;
  std::uint64_t seed = 0;
  int threads = 1;
  double rel_slack = 1e-9;
};

/// d(PX) <= lambda d(X) over random (graph, X) instances.
VerificationReport check_linear_contraction(const SuiteConfig& cfg);
/// d(XW) <= s d(X) over random (X, W) instances.
VerificationReport check_weight_contraction(const SuiteConfig& cfg);
/// d(sigma(X)) <= d(X) over random X against random-graph bases.
VerificationReport check_relu_contraction(const SuiteConfig& cfg);
/// Full layer step d(f(X)) <= s_l lambda d(X) for H in {1, 2, 3}.
VerificationReport check_layer_contraction(const SuiteConfig& cfg);
/// Spectra of P over random graphs: eigenvalues in (-1, 1], exactly M ones,
/// and the analytic basis consists of exact eigenvectors.
VerificationReport check_propagation_spectra(const SuiteConfig& cfg);
/// For random v with E^T v = 0, P v stays perpendicular to U.
VerificationReport check_perp_invariance(const SuiteConfig& cfg);
/// Invariance of the subspace itself: x0 in M keeps distance below 1e-10
/// along a full trajectory.
VerificationReport check_subspace_invariance(const SuiteConfig& cfg);
/// Rank counterexample across seeds: rank 3 expected at every step in at
/// least 95% of runs.
VerificationReport check_counterexample_rank(const SuiteConfig& cfg);
/// Markov chains: distance bound, probability-vector preservation, and
/// monotone total-variation decay over random chains.
VerificationReport check_markov_convergence(const SuiteConfig& cfg);
/// Trivial fixed point over random graphs and sub-unit weights.
VerificationReport check_trivial_fixed_point(const SuiteConfig& cfg);
/// Tightness constructions (strict + non-strict) at reference parameters.
VerificationReport check_tightness_constructions();

}  // namespace oversmooth
