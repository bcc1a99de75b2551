// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
// Every random draw is tagged with (seed, stream) so a failing trial can be
// rerun on its own through the CLI.

#include <Eigen/Dense>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "entcont/bounds.hpp"
#include "entcont/entanglement.hpp"
#include "entcont/metrics.hpp"
#include "entcont/states.hpp"
#include "harness.hpp"

using namespace entcont;
using harness::CampaignConfig;
using harness::CampaignResult;
using harness::Command;

namespace {

int failures = 0;

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void report(int id, const char* title, bool pass, const std::string& detail, double secs) {
  std::printf("[%s] %d %s: %s (%.1f s)\n", pass ? "PASS" : "FAIL", id, title, detail.c_str(),
              secs);
  std::fflush(stdout);
  if (!pass) ++failures;
}

int worker_count() { return static_cast<int>(std::max(1u, std::thread::hardware_concurrency())); }

std::string fmt(const char* pattern, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, pattern, args...);
  return buf;
}

// Rows of `result` whose name starts with `prefix`.
std::vector<const BoundReport*> rows_named(const CampaignResult& result, const std::string& prefix) {
  std::vector<const BoundReport*> out;
  for (const auto& r : result.rows) {
    if (r.name.rfind(prefix, 0) == 0) out.push_back(&r);
  }
  return out;
}

void log_violation(const BoundReport& r) {
  std::printf("    violation %s dims=%lldx%lld seed=%llu stream=%llu lhs=%.17g rhs=%.17g\n",
              r.name.c_str(), static_cast<long long>(r.da), static_cast<long long>(r.db),
              static_cast<unsigned long long>(r.seed), static_cast<unsigned long long>(r.stream),
              r.lhs, r.rhs);
}

void fannes_suite() {
  Stopwatch clock;
  CampaignConfig c;
  c.command = Command::VerifyFannes;
  c.seed = 101;
  c.trials = 5000;
  c.dims = {{2, 1}, {4, 1}, {8, 1}, {16, 1}};
  c.amplitudes = {0.05, 1.0};  // both regimes
  c.threads = worker_count();
  const CampaignResult r = run_campaign(c);
  for (const auto& row : r.rows) {
    if (!row.satisfied) log_violation(row);
  }
  report(1, "Fannes", r.summary.violations == 0 && r.summary.total == 40000,
         fmt("%zu pairs, %zu violations, restricted=%zu, worst slack %.3g", r.summary.total,
             r.summary.violations, r.summary.regime_counts.count("restricted")
                                       ? r.summary.regime_counts.at("restricted")
                                       : std::size_t{0},
             r.summary.worst_slack),
         clock.seconds());
}

void pure_suite() {
  Stopwatch clock;
  CampaignConfig c;
  c.command = Command::VerifyPure;
  c.seed = 202;
  c.trials = 1429;  // x 7 dims > 10^4 per amplitude
  c.dims = {{2, 2}, {3, 3}, {4, 4}, {5, 5}, {6, 6}, {7, 7}, {8, 8}};
  c.amplitudes = {1.0, 0.05};  // 1.0 replaces psi by an independent Haar state
  c.threads = worker_count();
  const CampaignResult r = run_campaign(c);
  for (const auto& row : r.rows) {
    if (!row.satisfied) log_violation(row);
  }
  report(2, "pure-state continuity", r.summary.violations == 0,
         fmt("%zu Haar + %zu perturbed pairs, %zu violations, worst slack %.3g",
             r.summary.total / 2, r.summary.total / 2, r.summary.violations,
             r.summary.worst_slack),
         clock.seconds());
}

void eof_suite() {
  Stopwatch clock;
  CampaignConfig c;
  c.command = Command::VerifyEof;
  c.seed = 303;
  c.trials = 3334;
  c.dims = {{2, 2}};
  c.amplitudes = {0.01, 0.05, 0.1};
  c.provider = EofProvider::Oracle;
  c.threads = worker_count();
  const CampaignResult r = run_campaign(c);
  for (const auto& row : r.rows) {
    if (!row.satisfied) log_violation(row);
  }
  report(3, "two-qubit EoF continuity", r.summary.violations == 0,
         fmt("%zu pairs, %zu violations, worst slack %.3g", r.summary.total,
             r.summary.violations, r.summary.worst_slack),
         clock.seconds());
}

void optimizer_suite() {
  Stopwatch clock;
  double worst = 0.0;
  int bad = 0;
  std::uniform_int_distribution<Index> rank(1, 4);
  for (std::uint64_t i = 0; i < 100; ++i) {
    Engine rng = make_engine({404, i});
    const BipartiteState state({2, 2}, sample_density(4, rank(rng), rng));
    const double oracle = eof_two_qubit(state);
    const double found = eof_minimize(state).value;
    const double err = std::abs(found - oracle);
    worst = std::max(worst, err);
    if (err > 1e-3) {
      ++bad;
      std::printf("    mismatch seed=404 stream=%llu oracle=%.12f optimizer=%.12f\n",
                  static_cast<unsigned long long>(i), oracle, found);
    }
  }
  report(4, "optimizer vs oracle", bad == 0,
         fmt("100 states, %d outside 1e-3, worst error %.3g", bad, worst), clock.seconds());
}

void chain_suite() {
  Stopwatch clock;
  CampaignConfig c;
  c.command = Command::VerifyEof;
  c.seed = 505;
  c.trials = 334;
  c.dims = {{2, 2}};
  c.amplitudes = {0.01, 0.1, 1.0};
  c.chain = true;
  // The contraction links hold for any measurement basis, so a short search suffices.
  c.optimizer.restarts = 4;
  c.threads = worker_count();
  const CampaignResult r = run_campaign(c);
  std::size_t links = 0;
  std::size_t broken = 0;
  double worst = std::numeric_limits<double>::infinity();
  for (const BoundReport* row : rows_named(r, "chain:contract")) {
    ++links;
    worst = std::min(worst, row->slack);
    if (row->slack < -1e-9) {
      ++broken;
      log_violation(*row);
    }
  }
  const std::size_t pairs = rows_named(r, "eof_continuity").size();
  report(5, "proof-chain contraction", broken == 0 && links == 3 * pairs,
         fmt("%zu pairs, %zu contraction links, %zu broken, worst slack %.3g, "
             "theorem-class violations %zu",
             pairs, links, broken, worst, r.summary.theorem_violations),
         clock.seconds());
}

void tightness_suite() {
  Stopwatch clock;
  const harness::TightnessTable table =
      harness::emit_tightness_table({4, 16, 64, 256}, harness::TightnessPolicy::FixedT, 1.0);
  bool rows_ok = true;
  for (const auto& row : table.rows) {
    std::printf("    d=%-4lld gap=%.6f lower=%.6f t=%.6f\n", static_cast<long long>(row.d), row.gap,
                row.lower, row.t);
    rows_ok = rows_ok && row.bound_holds && row.t_matches;
  }
  const bool slope_ok = table.fit.slope >= 0.5;
  report(6, "tightness", rows_ok && slope_ok,
         fmt("gap >= t log2(d)/2 - 1 on all rows: %s; fitted slope %.6f (need >= 0.5)",
             rows_ok ? "yes" : "no", table.fit.slope),
         clock.seconds());
}

void proportionality_suite() {
  Stopwatch clock;
  const ProportionalityRecord even = proportionality_demo(ProbVector({0.5, 0.5}));
  const ProportionalityRecord skew = proportionality_demo(ProbVector({0.9, 0.1}));
  const bool pass = even.ratio && skew.ratio && std::abs(*even.ratio - 1.0) <= 1e-12 &&
                    std::abs(*skew.ratio - 0.6106) <= 1e-3;
  report(7, "non-proportionality", pass,
         fmt("ratio(0.5,0.5)=%.6f ratio(0.9,0.1)=%.6f", even.ratio.value_or(NAN),
             skew.ratio.value_or(NAN)),
         clock.seconds());
}

// tr sqrt(sqrt(rho) sigma sqrt(rho)) straight from Eigen, independent of metrics.cpp.
double direct_spectral_fidelity(const ComplexMatrix& rho, const ComplexMatrix& sigma) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> er(rho);
  const Eigen::VectorXd roots = er.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const ComplexMatrix root =
      er.eigenvectors() * roots.cast<Complex>().asDiagonal() * er.eigenvectors().adjoint();
  const ComplexMatrix inner = root * sigma * root;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> ei(0.5 * (inner + inner.adjoint()),
                                                  Eigen::EigenvaluesOnly);
  return ei.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
}

double reduced_error(const PureState& pur, const DensityMatrix& target, Index ref) {
  const Index n = target.dim();
  const Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
      amp(pur.amplitudes().data(), n, ref);
  return (amp * amp.adjoint() - target.matrix()).cwiseAbs().maxCoeff();
}

void metric_suite() {
  Stopwatch clock;
  double worst_mixed = 0.0;
  double worst_purification = 0.0;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    Engine rng = make_engine({606, i});
    const Index n = std::uniform_int_distribution<Index>(2, 8)(rng);
    std::uniform_int_distribution<Index> ancilla(1, n);
    const DensityMatrix rho = sample_density(n, ancilla(rng), rng);
    const DensityMatrix sigma = sample_density(n, ancilla(rng), rng);
    const UhlmannPair pair = uhlmann_purifications(rho, sigma, n);
    const double direct = direct_spectral_fidelity(rho.matrix(), sigma.matrix());
    const double overlap = std::abs(pair.pur_rho.amplitudes().dot(pair.pur_sigma.amplitudes()));
    worst_mixed = std::max({worst_mixed, std::abs(pair.achieved_overlap - direct),
                            std::abs(overlap - direct)});
    worst_purification = std::max(
        {worst_purification, reduced_error(pair.pur_rho, rho, n), reduced_error(pair.pur_sigma, sigma, n)});
  }
  double worst_pure = 0.0;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    Engine rng = make_engine({607, i});
    const Index n = std::uniform_int_distribution<Index>(2, 8)(rng);
    const PureState psi = sample_haar_pure(n, rng);
    const PureState phi = sample_haar_pure(n, rng);
    const double overlap = std::abs(psi.amplitudes().dot(phi.amplitudes()));
    const double f = fidelity(DensityMatrix::from_pure(psi), DensityMatrix::from_pure(phi));
    worst_pure = std::max(worst_pure, std::abs(f - overlap));
  }
  report(8, "metric cross-checks",
         worst_mixed <= 1e-7 && worst_pure <= 1e-9 && worst_purification <= 1e-9,
         fmt("Uhlmann vs spectral worst %.3g (tol 1e-7), pure fidelity vs overlap worst %.3g "
             "(tol 1e-9), purification residual %.3g",
             worst_mixed, worst_pure, worst_purification),
         clock.seconds());
}

}  // namespace

int main() {
  const struct {
    void (*run)();
    int id;
  } suites[] = {{fannes_suite, 1},      {pure_suite, 2},      {eof_suite, 3},
                {optimizer_suite, 4},   {chain_suite, 5},     {tightness_suite, 6},
                {proportionality_suite, 7}, {metric_suite, 8}};
  for (const auto& suite : suites) {
    try {
      suite.run();
    } catch (const std::exception& e) {
      report(suite.id, "exception", false, e.what(), 0.0);
    }
  }
  std::printf("%d of 8 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
