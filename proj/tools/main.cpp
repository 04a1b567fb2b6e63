#include <CLI11.hpp>
#include <nlohmann/json.hpp>
#include <omp.h>

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <limits>
#include <random>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "oversmooth/dynamics.hpp"
#include "oversmooth/graph.hpp"
#include "oversmooth/io.hpp"
#include "oversmooth/oracles.hpp"
#include "oversmooth/spectral.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace oversmooth;

namespace {

// Appendix-style reference matrices for the 2-node vector-field experiment.
// The non-negative case uses the eigenvalue-1 eigenvector with both signs
// positive; the adversarial case has mixed signs.
struct FieldCase {
  Matrix p;
  Vector e;
};

FieldCase field_case(int which) {
  Matrix p(2, 2);
  Vector e(2);
  if (which == 1) {
    p << 0.7469915, 0.2499819, 0.2499819, 0.7530085;
    e << 0.7028392, 0.71134876;
  } else if (which == 2) {
    p << 0.6899574, -0.2426827, -0.2426827, 0.8100426;
    e << 0.61637234, -0.78745485;
  } else {
    throw CLI::ValidationError("--case must be 1 or 2");
  }
  return {p, e};
}

struct GraphSource {
  std::string edges_path;
  std::vector<double> er;  // n, p
  std::string preset;
  int add_edges = 0;

  Graph build(std::uint64_t seed) const {
    std::optional<Graph> g;
    if (!edges_path.empty()) g = load_edge_list(edges_path);
    if (!er.empty()) {
      if (er.size() != 2) throw CLI::ValidationError("--er expects n,p");
      g = erdos_renyi(static_cast<int>(er[0]), er[1], seed);
    }
    if (preset == "counterexample") g = counterexample_graph();
    if (!g) throw CLI::ValidationError("no graph source given");
    if (add_edges > 0) g = add_random_edges(*g, add_edges, derive_seed(seed, 0x6e6f697379)).graph;
    return *g;
  }
  void attach(CLI::App* cmd) {
    cmd->add_option("--edges", edges_path, "edge-list file");
    cmd->add_option("--er", er, "ER generator: n,p")->delimiter(',');
    cmd->add_option("--preset", preset, "named graph (counterexample)");
    cmd->add_option("--add-edges", add_edges,
                    "add this many uniformly random absent edges");
  }
};

Tolerances parse_tolerances(const std::vector<std::string>& overrides) {
  Tolerances tol;
  std::map<std::string, double*> slots{
      {"orthonormality", &tol.orthonormality},
      {"eigen_residual", &tol.eigen_residual},
      {"rank_rel", &tol.rank_rel},
      {"assumption", &tol.assumption},
  };
  for (const auto& kv : overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw CLI::ValidationError("--tol expects name=value");
    const std::string name = kv.substr(0, eq);
    auto it = slots.find(name);
    if (it == slots.end())
      throw CLI::ValidationError("unknown tolerance: " + name);
    *it->second = std::stod(kv.substr(eq + 1));
  }
  return tol;
}

void emit(const fs::path& dir, const std::string& name,
          const std::string& content) {
  fs::create_directories(dir);
  write_file((dir / name).string(), content);
}

int cmd_spectrum(const GraphSource& src, std::uint64_t seed, const fs::path& out,
                 int bins) {
  const Graph g = src.build(seed);
  const auto comps = connected_components(g);
  const Spectrum spec = eigen(augmented_laplacian(g));
  const double lambda = lambda_rate(eigen(propagation_matrix(g)), comps.m_count);

  emit(out, "spectrum.csv", spectrum_csv(spec));
  emit(out, "histogram.csv", histogram_csv(spectral_histogram(spec, bins)));

  ordered_json summary;
  summary["n"] = g.node_count();
  summary["m_edges"] = g.edge_count();
  summary["components"] = comps.m_count;
  summary["lambda"] = lambda;
  if (lambda > 0.0)
    summary["lambda_inv"] = 1.0 / lambda;
  else
    summary["lambda_inv"] = nullptr;
  emit(out, "summary.json", summary.dump(2) + "\n");
  std::cout << "spectrum: n=" << g.node_count() << " M=" << comps.m_count
            << " lambda=" << format_double(lambda) << "\n";
  return 0;
}

int cmd_trajectory(GraphSource src, std::uint64_t seed, const fs::path& out,
                   const std::string& preset, double s, int layers, int channels,
                   int k_onehot, bool x0_in_m) {
  double p_edge = -1.0;
  if (preset == "fig2a") {
    p_edge = 0.1;
    s = 0.1;
  } else if (preset == "fig2b") {
    p_edge = 0.5;
    s = 1.0;
  } else if (preset == "fig2c") {
    p_edge = 0.5;
    s = 10.0;
  } else if (!preset.empty()) {
    throw CLI::ValidationError("unknown trajectory preset: " + preset);
  }
  if (p_edge >= 0.0) src.er = {1000.0, p_edge};

  const Graph g = src.build(derive_seed(seed, 1));
  const auto comps = connected_components(g);
  const SymMatrix p = propagation_matrix(g);
  const SubspaceBasis basis = invariant_basis(g, comps);
  const double lambda = lambda_rate(eigen(p), comps.m_count);

  const WeightStack ws = init_weights(channels, layers, s, derive_seed(seed, 2));
  Signal x0;
  if (x0_in_m) {
    std::mt19937_64 rng(derive_seed(seed, 3));
    std::normal_distribution<double> gauss;
    Signal coeffs(comps.m_count, channels);
    for (int i = 0; i < coeffs.rows(); ++i)
      for (int j = 0; j < coeffs.cols(); ++j) coeffs(i, j) = gauss(rng);
    x0 = basis.vectors * coeffs;
  } else {
    x0 = onehot_embedding_signal(g.node_count(), k_onehot, channels,
                                 derive_seed(seed, 3));
  }

  const Trajectory t = run_trajectory(p, basis, x0, ws, lambda);
  emit(out, "trajectory.csv", trajectory_csv(t));
  emit(out, "trajectory.svg", trajectory_svg(t));

  ordered_json summary;
  summary["n"] = g.node_count();
  summary["components"] = comps.m_count;
  summary["lambda"] = lambda;
  summary["s"] = ws.s_sup();
  summary["s_lambda"] = ws.s_sup() * lambda;
  summary["contractive"] = ws.s_sup() * lambda < 1.0;
  emit(out, "summary.json", summary.dump(2) + "\n");
  std::cout << "trajectory: lambda=" << format_double(lambda)
            << " s=" << format_double(ws.s_sup())
            << " s*lambda=" << format_double(ws.s_sup() * lambda) << "\n";
  return 0;
}

int cmd_field(int which, std::vector<double> w_values, bool sweep,
              const fs::path& out, const GridSpec& grid) {
  const FieldCase fc = field_case(which);
  const SymMatrix p = SymMatrix::from_symmetric(fc.p);
  if (sweep) w_values = {0.5, 1.0, 1.2, 1.5, 2.0, 4.0};
  if (w_values.empty()) w_values = {1.2};

  int status = 0;
  for (double w : w_values) {
    const auto samples = vector_field(p, fc.e, w, grid);
    bool uniform_decrease = true;
    for (const auto& smp : samples)
      if (smp.d_after > smp.d_before + 1e-12) uniform_decrease = false;
    std::string name = "field_w" + format_double(w) + ".csv";
    emit(out, name, field_csv(samples));
    std::cout << "case " << which << " W=" << format_double(w)
              << " uniform decrease: " << (uniform_decrease ? "yes" : "no")
              << "\n";
  }
  return status;
}

int cmd_threshold(int n, double p, double eps, const fs::path& out) {
  const ThresholdInputs t{n, p, eps};
  const double s0 = er_threshold_s0(t);
  const ChungQuantities q = chung_quantities(t);
  ordered_json j;
  j["n"] = n;
  j["p"] = p;
  j["eps"] = eps;
  j["s0"] = s0;
  j["k_eps"] = q.k_eps;
  j["l_npe"] = q.l_npe;
  j["l_npe_inv"] = 1.0 / q.l_npe;
  j["applicable"] = q.applicable;
  emit(out, "threshold.json", j.dump(2) + "\n");
  std::cout << "s0=" << format_double(s0) << " 1/l=" << format_double(1.0 / q.l_npe)
            << " applicable=" << (q.applicable ? "yes" : "no") << "\n";
  return 0;
}

int cmd_concentration(int n, double p, double eps, int trials,
                      std::uint64_t seed, int threads, const fs::path& out) {
  const auto r = er_concentration_check({n, p, eps}, trials, seed, threads);
  emit(out, "concentration.json", report_json(r));
  std::cout << r.name << ": " << (r.trials - r.violations) << "/" << r.trials
            << " trials within band (allowed failures " << r.allowed_violations
            << ") -> " << (r.passed() ? "pass" : "FAIL") << "\n";
  return r.passed() ? 0 : 1;
}

int cmd_markov(int states, int steps, std::uint64_t seed, const fs::path& out) {
  const SymMatrix p = random_markov_chain(states, seed);
  std::mt19937_64 rng(derive_seed(seed, 1));
  std::normal_distribution<double> gauss;
  Vector x0(states);
  for (int i = 0; i < states; ++i) x0(i) = std::abs(gauss(rng));
  x0 /= x0.sum();
  const MarkovTrace t = markov_converge(p, x0, steps);
  emit(out, "markov.csv", markov_csv(t));
  ordered_json summary;
  summary["states"] = states;
  summary["steps"] = steps;
  summary["lambda"] = t.lambda;
  summary["final_tv"] = t.tv_uniform.back();
  emit(out, "summary.json", summary.dump(2) + "\n");
  std::cout << "markov: lambda=" << format_double(t.lambda)
            << " final_tv=" << format_double(t.tv_uniform.back()) << "\n";
  return 0;
}

int cmd_counterexample(int steps, std::uint64_t seed, const fs::path& out) {
  const auto ranks = counterexample_rank_trace(steps, seed);
  // Rank-1 control: principal eigenvector times a constant channel vector.
  const Graph g = counterexample_graph();
  const SubspaceBasis basis = invariant_basis(g);
  Signal control = basis.vectors.col(0) * Matrix::Ones(1, 3);
  const auto control_ranks = counterexample_rank_trace(steps, control);

  std::string csv = "step,rank_random,rank_control\n";
  for (std::size_t i = 0; i < ranks.size(); ++i)
    csv += std::to_string(i) + "," + std::to_string(ranks[i]) + "," +
           std::to_string(control_ranks[i]) + "\n";
  emit(out, "ranks.csv", csv);
  std::cout << "counterexample: rank at step " << steps << " = " << ranks.back()
            << " (control " << control_ranks.back() << ")\n";
  return 0;
}

/// Adversarial demonstration: Theorem-1 style bound checked on the mixed-sign
/// eigenvector case, where violations are the expected outcome.
VerificationReport case2_adversarial_report() {
  const FieldCase fc = field_case(2);
  const SymMatrix p = SymMatrix::from_symmetric(fc.p);
  SubspaceBasis basis{fc.e / fc.e.norm()};
  const double w = 1.2;
  const double lambda = 0.5;  // the non-unit eigenvalue of the 2x2 case
  VerificationReport r;
  r.name = "case2-adversarial";
  r.params = {{"w", w}, {"lambda", lambda}};
  r.worst_slack = std::numeric_limits<double>::infinity();
  const std::vector<Matrix> weights{Matrix::Constant(1, 1, w)};
  GridSpec grid;
  const double step = (grid.hi - grid.lo) / (grid.resolution - 1);
  std::string payload;
  for (int i = 0; i < grid.resolution; ++i) {
    for (int j = 0; j < grid.resolution; ++j) {
      Signal x(2, 1);
      x << grid.lo + i * step, grid.lo + j * step;
      const double before = distance_to_subspace(x, basis);
      const double after = distance_to_subspace(mlp_layer(p, x, weights), basis);
      ++r.trials;
      const double slack = w * lambda * before + 1e-12 - after;
      r.worst_slack = std::min(r.worst_slack, slack);
      if (slack < 0.0) {
        ++r.violations;
        if (payload.empty())
          payload = "{\"x1\":" + format_double(x(0)) +
                    ",\"x2\":" + format_double(x(1)) + "}";
      }
    }
  }
  if (r.violations > 0) r.payload = payload;
  return r;
}

int cmd_verify(std::uint64_t seed, const fs::path& out, int threads,
               std::optional<int> trials_override, const std::string& only,
               bool bypass_assumptions) {
  SuiteConfig base;
  base.seed = seed;
  base.threads = threads;

  auto cfg = [&](int default_trials) {
    SuiteConfig c = base;
    c.trials = trials_override.value_or(default_trials);
    return c;
  };

  std::vector<std::pair<std::string, std::function<VerificationReport()>>> checks{
      {"propagation-spectra", [&] { return check_propagation_spectra(cfg(200)); }},
      {"linear-contraction", [&] { return check_linear_contraction(cfg(1000)); }},
      {"weight-contraction", [&] { return check_weight_contraction(cfg(1000)); }},
      {"relu-lemma", [&] { return check_relu_contraction(cfg(10000)); }},
      {"layer-contraction", [&] { return check_layer_contraction(cfg(1000)); }},
      {"perp-invariance", [&] { return check_perp_invariance(cfg(100)); }},
      {"subspace-invariance", [&] { return check_subspace_invariance(cfg(100)); }},
      {"tightness", [&] { return check_tightness_constructions(); }},
      {"counterexample-rank", [&] { return check_counterexample_rank(cfg(100)); }},
      {"markov", [&] { return check_markov_convergence(cfg(20)); }},
      {"trivial-fixed-point", [&] { return check_trivial_fixed_point(cfg(100)); }},
      {"er-concentration",
       [&] {
         return er_concentration_check({1000, 0.1, 0.05},
                                       trials_override.value_or(50), seed,
                                       threads);
       }},
  };
  if (bypass_assumptions)
    checks.emplace_back("case2-adversarial", case2_adversarial_report);

  std::vector<VerificationReport> reports;
  bool any_failed = false;
  for (auto& [name, fn] : checks) {
    if (!only.empty() && only != name) continue;
    VerificationReport r = fn();
    r.name = name;
    std::cout << name << ": " << (r.passed() ? "pass" : "FAIL") << " ("
              << r.violations << "/" << r.trials << " violations)\n";
    emit(out / "reports", name + ".json", report_json(r));
    any_failed = any_failed || !r.passed();
    reports.push_back(std::move(r));
  }
  if (reports.empty())
    throw CLI::ValidationError("no check matches --check " + only);
  emit(out / "reports", "summary.json", reports_json(reports));
  return any_failed ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectral over-smoothing analysis of graph convolutions"};
  app.require_subcommand(1);

  std::uint64_t seed = 0;
  std::string out_dir = ".";
  std::vector<std::string> tol_overrides;
  app.add_option("--seed", seed, "RNG seed (default 0)");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--tol", tol_overrides, "tolerance override name=value");

  auto* sp = app.add_subcommand("spectrum", "Laplacian spectrum and lambda");
  GraphSource sp_src;
  sp_src.attach(sp);
  int bins = 50;
  sp->add_option("--bins", bins, "histogram bins");

  auto* tr = app.add_subcommand("trajectory", "distance-to-subspace dynamics");
  GraphSource tr_src;
  tr_src.attach(tr);
  std::string tr_preset;
  double tr_s = 1.0;
  int tr_layers = 10, tr_channels = 32, tr_k = 10;
  bool x0_in_m = false;
  tr->add_option("--traj-preset", tr_preset, "fig2a | fig2b | fig2c");
  tr->add_option("--s", tr_s, "target max singular value");
  tr->add_option("--layers", tr_layers, "layer count");
  tr->add_option("--channels", tr_channels, "channel count");
  tr->add_option("--k-onehot", tr_k, "one-hot class count");
  tr->add_flag("--x0-in-M", x0_in_m, "seed the input inside the subspace");

  auto* fi = app.add_subcommand("field", "one-step vector field");
  int field_case_id = 1;
  std::vector<double> field_w;
  bool field_sweep = false;
  GridSpec grid;
  fi->add_option("--case", field_case_id, "1 (non-negative) or 2 (mixed signs)");
  fi->add_option("--w", field_w, "weight value(s)");
  fi->add_flag("--w-sweep", field_sweep, "sweep W over {0.5,1,1.2,1.5,2,4}");
  fi->add_option("--grid-lo", grid.lo, "grid lower bound");
  fi->add_option("--grid-hi", grid.hi, "grid upper bound");
  fi->add_option("--grid-res", grid.resolution, "grid resolution");

  auto* th = app.add_subcommand("threshold", "ER weight-scale thresholds");
  int th_n = 1000;
  double th_p = 0.1, th_eps = 0.05;
  th->add_option("--n", th_n, "node count");
  th->add_option("--p", th_p, "edge probability");
  th->add_option("--eps", th_eps, "failure probability");

  auto* co = app.add_subcommand("concentration", "spectral concentration trials");
  int co_n = 1000, co_trials = 50, co_threads = omp_get_max_threads();
  double co_p = 0.1, co_eps = 0.05;
  co->add_option("--n", co_n, "node count");
  co->add_option("--p", co_p, "edge probability");
  co->add_option("--eps", co_eps, "failure probability");
  co->add_option("--trials", co_trials, "number of sampled graphs");
  co->add_option("--threads", co_threads, "worker threads (1 = serial)");

  auto* ma = app.add_subcommand("markov", "doubly stochastic chain mixing");
  int ma_states = 8, ma_steps = 50;
  ma->add_option("--states", ma_states, "state count");
  ma->add_option("--steps", ma_steps, "iteration count");

  auto* ce = app.add_subcommand("counterexample", "rank trace on the 4-node graph");
  int ce_steps = 10;
  ce->add_option("--steps", ce_steps, "propagation steps");

  auto* ve = app.add_subcommand("verify", "run the full property suite");
  int ve_threads = omp_get_max_threads();
  std::optional<int> ve_trials;
  std::string ve_only;
  bool ve_bypass = false;
  ve->add_option("--threads", ve_threads, "worker threads (1 = serial)");
  ve->add_option("--trials", ve_trials, "override per-check trial counts");
  ve->add_option("--check", ve_only, "run a single named check");
  ve->add_flag("--bypass-assumptions", ve_bypass,
               "include the adversarial mixed-sign demonstration");

  // let --seed/--out/--tol appear after the subcommand name as well
  for (auto* sub : {sp, tr, fi, th, co, ma, ce, ve}) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    parse_tolerances(tol_overrides);  // validated; defaults applied in-library
    const fs::path out(out_dir);
    if (sp->parsed()) return cmd_spectrum(sp_src, seed, out, bins);
    if (tr->parsed())
      return cmd_trajectory(tr_src, seed, out, tr_preset, tr_s, tr_layers,
                            tr_channels, tr_k, x0_in_m);
    if (fi->parsed()) return cmd_field(field_case_id, field_w, field_sweep, out, grid);
    if (th->parsed()) return cmd_threshold(th_n, th_p, th_eps, out);
    if (co->parsed())
      return cmd_concentration(co_n, co_p, co_eps, co_trials, seed, co_threads, out);
    if (ma->parsed()) return cmd_markov(ma_states, ma_steps, seed, out);
    if (ce->parsed()) return cmd_counterexample(ce_steps, seed, out);
    if (ve->parsed())
      return cmd_verify(seed, out, ve_threads, ve_trials, ve_only, ve_bypass);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  }
  return 0;
}
