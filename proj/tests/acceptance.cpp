// Acceptance gate: one line of output per criterion, nonzero exit on any
// failure. Each criterion is independent; all run on fixed seeds.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "oversmooth/dynamics.hpp"
#include "oversmooth/graph.hpp"
#include "oversmooth/io.hpp"
#include "oversmooth/oracles.hpp"
#include "oversmooth/spectral.hpp"

using namespace oversmooth;

namespace {

int g_failures = 0;

void run_criterion(const char* number, const std::string& label,
                   const std::function<bool(std::string&)>& body) {
  std::string detail;
  bool ok = false;
  const auto start = std::chrono::steady_clock::now();
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  std::printf("[%s] criterion %s (%.1fs): %s%s%s\n", ok ? "PASS" : "FAIL",
              number, secs, label.c_str(), detail.empty() ? "" : " — ",
              detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

bool spectra_suite(std::string& detail) {
  std::mt19937_64 rng(1001);
  const double probs[] = {0.02, 0.1, 0.5, 1.0};
  for (int t = 0; t < 200; ++t) {
    const int n = 2 + static_cast<int>(rng() % 199);
    const double p = probs[t % 4];
    const Graph g = erdos_renyi(n, p, rng());
    const Spectrum lap = eigen(augmented_laplacian(g));
    if (lap.eigenvalues(0) < -1e-8 ||
        lap.eigenvalues(n - 1) > 2.0 - 1e-8) {
      detail = "laplacian eigenvalue out of range";
      return false;
    }
    const int m = connected_components(g).m_count;
    const Spectrum prop = eigen(propagation_matrix(g));
    int ones = 0;
    for (int i = 0; i < n; ++i)
      if (std::abs(prop.eigenvalues(i) - 1.0) <= 1e-8) ++ones;
    if (ones != m) {
      detail = "eigenvalue-1 multiplicity != component count";
      return false;
    }
    const SubspaceBasis basis = invariant_basis(g);
    const Matrix resid =
        propagation_matrix(g).mat() * basis.vectors - basis.vectors;
    if (resid.colwise().norm().maxCoeff() > 1e-10) {
      detail = "analytic basis is not fixed by the propagation matrix";
      return false;
    }
  }
  return true;
}

bool lemma_suite(std::string& detail) {
  const SuiteConfig base{.trials = 1000, .seed = 2002, .threads = 4};
  SuiteConfig relu_cfg = base;
  relu_cfg.trials = 10000;
  const VerificationReport reports[] = {
      check_linear_contraction(base), check_weight_contraction(base),
      check_relu_contraction(relu_cfg), check_layer_contraction(base)};
  for (const auto& r : reports) {
    if (!r.passed()) {
      detail = r.name + ": " + std::to_string(r.violations) + " violations";
      return false;
    }
  }
  return true;
}

bool trajectory_suite(bool check_lambda_targets, std::string& detail) {
  struct Preset {
    double p, s, lambda_target;
  };
  const Preset presets[] = {{0.1, 0.1, 0.063}, {0.5, 1.0, 0.197},
                            {0.5, 10.0, 0.194}};
  for (const Preset& cfg : presets) {
    const std::uint64_t seed = 42;
    const Graph g = erdos_renyi(1000, cfg.p, derive_seed(seed, 1));
    const SymMatrix p = propagation_matrix(g);
    const SubspaceBasis basis = invariant_basis(g);
    const double lambda = lambda_rate(g);
    if (check_lambda_targets && std::abs(lambda - cfg.lambda_target) > 0.05) {
      char buf[128];
      std::snprintf(buf, sizeof(buf),
                    "p=%g: measured lambda %.4f vs target %.3f", cfg.p, lambda,
                    cfg.lambda_target);
      detail += detail.empty() ? buf : std::string("; ") + buf;
      continue;
    }
    if (check_lambda_targets) continue;
    const WeightStack ws = init_weights(32, 10, cfg.s, derive_seed(seed, 2));
    const Signal x0 = onehot_embedding_signal(1000, 10, 32, derive_seed(seed, 3));
    const Trajectory tr = run_trajectory(p, basis, x0, ws, lambda);
    for (std::size_t l = 0; l < tr.distances.size(); ++l) {
      if (tr.distances[l] > tr.bounds[l] + 1e-9 * (1.0 + tr.bounds[l])) {
        char buf[96];
        std::snprintf(buf, sizeof(buf), "p=%g s=%g: bound broken at layer %zu",
                      cfg.p, cfg.s, l);
        detail = buf;
        return false;
      }
    }
  }
  return detail.empty();
}

bool two_node_fields(std::string& detail) {
  Matrix p1(2, 2), p2(2, 2);
  p1 << 0.7469915, 0.2499819, 0.2499819, 0.7530085;
  p2 << 0.6899574, -0.2426827, -0.2426827, 0.8100426;
  Vector e1(2), e2(2);
  e1 << 0.7028392, 0.71134876;
  e2 << 0.61637234, -0.78745485;
  e1.normalize();
  e2.normalize();

  int case1_increases = 0, case2_increases = 0;
  for (const auto& s : vector_field(SymMatrix::from_symmetric(p1, 1e-6), e1, 1.2))
    if (s.d_after > s.d_before + 1e-12 * (1.0 + s.d_before)) ++case1_increases;
  for (const auto& s : vector_field(SymMatrix::from_symmetric(p2, 1e-6), e2, 1.2))
    if (s.d_after > s.d_before + 1e-12 * (1.0 + s.d_before)) ++case2_increases;

  if (case1_increases != 0) {
    detail = "case 1 grid has " + std::to_string(case1_increases) +
             " distance increases";
    return false;
  }
  if (case2_increases == 0) {
    detail = "case 2 grid shows no violation";
    return false;
  }
  return true;
}

bool tightness(std::string& detail) {
  const StrictnessReport strict = strictness_construction(0.5, 1.0, 1.2);
  if (!strict.all_increase || std::abs(strict.min_ratio - 1.2) > 1e-12 ||
      std::abs(strict.max_ratio - 1.2) > 1e-12) {
    detail = "strict construction ratio off 1.2";
    return false;
  }
  const NonStrictnessReport loose = nonstrictness_construction(1.5);
  if (std::abs(loose.min_ratio - 0.75) > 1e-12 ||
      std::abs(loose.max_ratio - 0.75) > 1e-12 || !loose.all_decrease) {
    detail = "non-strict construction ratio off 0.75";
    return false;
  }
  return true;
}

bool rank_counterexample(std::string& detail) {
  int full_rank_runs = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const auto ranks = counterexample_rank_trace(10, derive_seed(3003, s));
    bool all3 = true;
    for (int r : ranks)
      if (r != 3) all3 = false;
    if (all3) ++full_rank_runs;
  }
  if (full_rank_runs < 95) {
    detail = "only " + std::to_string(full_rank_runs) + "/100 runs kept rank 3";
    return false;
  }
  Signal control(4, 3);
  Vector col(4);
  col << 1.0, 0.5, 0.5, 0.25;
  for (int j = 0; j < 3; ++j) control.col(j) = col;
  for (int r : counterexample_rank_trace(10, control)) {
    if (r != 1) {
      detail = "rank-1 control input changed rank";
      return false;
    }
  }
  return true;
}

bool concentration(std::string& detail) {
  const VerificationReport r =
      er_concentration_check({.n = 1000, .p = 0.1, .eps = 0.05}, 50, 4004, 4);
  if (r.trials - r.violations < 45) {
    detail = std::to_string(r.violations) + "/50 trials outside the band";
    return false;
  }
  return true;
}

bool markov(std::string& detail) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const SymMatrix p = random_markov_chain(8, derive_seed(5005, s));
    std::mt19937_64 rng(derive_seed(5005, 100 + s));
    Vector x0(8);
    for (int i = 0; i < 8; ++i)
      x0(i) = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    x0 /= x0.sum();
    const MarkovTrace t = markov_converge(p, x0, 50);
    for (std::size_t l = 0; l < t.distances.size(); ++l) {
      if (t.distances[l] > t.bounds[l] + 1e-10) {
        detail = "distance bound broken at step " + std::to_string(l);
        return false;
      }
    }
    for (std::size_t l = 1; l < t.tv_uniform.size(); ++l) {
      if (t.tv_uniform[l] > t.tv_uniform[l - 1] + 1e-12) {
        detail = "total-variation distance increased at step " +
                 std::to_string(l);
        return false;
      }
    }
  }
  return true;
}

bool norm_shrinkage(std::string& detail) {
  const Graph g = erdos_renyi(200, 0.1, 6006);
  const WeightStack ws = init_weights(8, 10, 0.5, 6007);
  const Signal x0 = onehot_embedding_signal(200, 10, 8, 6008);
  const FixedPointReport r = trivial_fixed_point_check(g, ws, x0, 10);
  if (!r.within_bound) {
    detail = "norm exceeded the 0.5^l envelope";
    return false;
  }
  return true;
}

bool numerical_plumbing(std::string& detail) {
  std::mt19937_64 rng(7007);
  std::normal_distribution<double> gauss;
  for (int t = 0; t < 100; ++t) {
    Matrix w(8, 8);
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j) w(i, j) = gauss(rng);
    const double ref = Eigen::JacobiSVD<Matrix>(w).singularValues()(0);
    if (std::abs(max_singular_value(w) - ref) > 1e-8 * ref) {
      detail = "power iteration drifted from the dense oracle";
      return false;
    }
    const double target = 0.1 + std::uniform_real_distribution<double>(0, 5)(rng);
    if (std::abs(max_singular_value(rescale_to_singular(w, target)) - target) >
        1e-7 * target) {
      detail = "rescale_to_singular missed its target";
      return false;
    }
  }
  for (int t = 0; t < 100; ++t) {
    const Graph g = erdos_renyi(2 + static_cast<int>(rng() % 20), 0.4, rng());
    const SubspaceBasis b = invariant_basis(g);
    Matrix x(g.node_count(), 3);
    for (int i = 0; i < x.rows(); ++i)
      for (int j = 0; j < 3; ++j) x(i, j) = gauss(rng);
    const Matrix coeff = b.vectors.colPivHouseholderQr().solve(x);
    const double oracle = (x - b.vectors * coeff).norm();
    if (std::abs(distance_to_subspace(x, b) - oracle) > 1e-10) {
      detail = "subspace distance drifted from the least-squares oracle";
      return false;
    }
  }
  return true;
}

std::string run_verify_bundle(std::uint64_t seed, int threads) {
  const SuiteConfig cfg{.trials = 200, .seed = seed, .threads = threads};
  SuiteConfig relu_cfg = cfg;
  relu_cfg.trials = 1000;
  std::vector<VerificationReport> rs;
  rs.push_back(check_propagation_spectra(cfg));
  rs.push_back(check_linear_contraction(cfg));
  rs.push_back(check_weight_contraction(cfg));
  rs.push_back(check_relu_contraction(relu_cfg));
  rs.push_back(check_layer_contraction(cfg));
  rs.push_back(check_perp_invariance(cfg));
  rs.push_back(check_subspace_invariance(cfg));
  rs.push_back(check_tightness_constructions());
  rs.push_back(check_counterexample_rank(cfg));
  rs.push_back(check_markov_convergence(cfg));
  rs.push_back(check_trivial_fixed_point(cfg));
  rs.push_back(er_concentration_check({.n = 300, .p = 0.1, .eps = 0.05}, 20,
                                      seed, threads));
  return reports_json(rs);
}

bool determinism(std::string& detail) {
  const std::string first = run_verify_bundle(42, 4);
  const std::string second = run_verify_bundle(42, 4);
  if (first != second) {
    detail = "report bundles differ between identical runs";
    return false;
  }
  const std::string serial = run_verify_bundle(42, 1);
  if (first != serial) {
    detail = "parallel bundle differs from the serial reference";
    return false;
  }
  return true;
}

}  // namespace

int main() {
  run_criterion("1", "propagation and Laplacian spectra over 200 random graphs",
                spectra_suite);
  run_criterion("2", "contraction lemmas and single-step layer bound",
                lemma_suite);
  run_criterion("3a", "trajectory presets: measured contraction rates",
                [](std::string& d) { return trajectory_suite(true, d); });
  run_criterion("3b", "trajectory presets: distance below cumulative bound",
                [](std::string& d) { return trajectory_suite(false, d); });
  run_criterion("4", "two-node fields: contraction in case 1, violation in case 2",
                two_node_fields);
  run_criterion("5", "tightness constructions at ratios 1.2 and 0.75", tightness);
  run_criterion("6", "rank persistence on the 4-node counterexample",
                rank_counterexample);
  run_criterion("7", "eigenvalue concentration band over 50 sampled graphs",
                concentration);
  run_criterion("8", "Markov chains: geometric decay and monotone mixing", markov);
  run_criterion("9", "norm shrinkage toward the trivial fixed point at s = 0.5",
                norm_shrinkage);
  run_criterion("10", "power iteration, rescaling, and distance oracles",
                numerical_plumbing);
  run_criterion("11", "byte-identical verification bundles across runs",
                determinism);
  std::printf("%s (%d failing)\n", g_failures == 0 ? "ALL PASS" : "FAILURES",
              g_failures);
  return g_failures == 0 ? 0 : 1;
}
