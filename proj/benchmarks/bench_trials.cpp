// Compares the serial reference loop against the OpenMP fan-out for the
// trial-based suites and prints a speedup table.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "oversmooth/oracles.hpp"

using namespace oversmooth;

namespace {

double time_once(const std::function<VerificationReport()>& fn,
                 VerificationReport& out) {
  const auto start = std::chrono::steady_clock::now();
  out = fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

void bench(const std::string& name,
           const std::function<VerificationReport(const SuiteConfig&)>& fn,
           int trials, int threads) {
  const SuiteConfig serial{.trials = trials, .seed = 7, .threads = 1};
  const SuiteConfig parallel{.trials = trials, .seed = 7, .threads = threads};
  VerificationReport rs, rp;
  const double ts = time_once([&] { return fn(serial); }, rs);
  const double tp = time_once([&] { return fn(parallel); }, rp);
  const bool same = rs.violations == rp.violations &&
                    rs.worst_slack == rp.worst_slack && rs.payload == rp.payload;
  std::printf("%-24s %8d %10.3fs %10.3fs %7.2fx   %s\n", name.c_str(), trials,
              ts, tp, ts / tp, same ? "identical" : "MISMATCH");
}

}  // namespace

int main() {
  const int threads = omp_get_max_threads();
  std::printf("threads available: %d\n\n", threads);
  std::printf("%-24s %8s %11s %11s %8s\n", "suite", "trials", "serial",
              "parallel", "speedup");

  bench("linear-contraction", check_linear_contraction, 4000, threads);
  bench("weight-contraction", check_weight_contraction, 4000, threads);
  bench("relu-lemma", check_relu_contraction, 20000, threads);
  bench("layer-contraction", check_layer_contraction, 2000, threads);
  bench("markov-convergence", check_markov_convergence, 200, threads);
  bench(
      "er-concentration",
      [](const SuiteConfig& cfg) {
        return er_concentration_check({.n = 400, .p = 0.1, .eps = 0.05},
                                      cfg.trials, cfg.seed, cfg.threads);
      },
      40, threads);
  return 0;
}
