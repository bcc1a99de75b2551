#pragma once

#include <cstdint>
#include <vector>

#include "entcont/metrics.hpp"
#include "entcont/states.hpp"

namespace entcont {

// Probability-weighted pure states on dA*dB realizing a mixed state.
struct Ensemble {
  std::vector<double> weights;
  std::vector<PureState> members;

  std::size_t size() const noexcept { return weights.size(); }
  /// sum_m p_m |psi_m><psi_m|
  ComplexMatrix mixture() const;
  /// sum_m p_m S(tr_B |psi_m><psi_m|)
  double average_entanglement(BipartiteDims dims) const;
};

struct MeasuredSplit {
  double s_ar = 0.0;  // S(AR') after measuring R
  double s_r = 0.0;   // S(R') after measuring R
  Ensemble ensemble;
};

struct OptimizerConfig {
  int restarts = 32;
  int max_sweeps = 2000;
  double tol_objective = 1e-7;
  double initial_step = 0.3;
  double step_shrink = 0.5;
  double min_step = 1e-5;
  double agreement_tol = 1e-4;  // best two restarts must agree for converged=true
  std::uint64_t seed = 0;
  Index dim_cap = 16;
  Index ref_dim = 0;  // 0 selects (dA*dB)^2
  int threads = 1;
};

// Upper bound on the entanglement of formation, certified by `ensemble`.
struct EofResult {
  double value = 0.0;
  Ensemble ensemble;
  bool converged = false;
  int restarts_used = 0;
  std::vector<double> objective_history;  // per sweep, winning restart
  std::vector<double> restart_values;     // final objective of every restart
  ComplexMatrix basis;                    // measurement basis on the reference (columns)
  Index ref_dim = 0;
};

inline constexpr double kPruneWeight = 1e-12;

/// S(rho_A) of a pure bipartite state.
double pure_entanglement(const PureState& psi, BipartiteDims dims);

/// -log2 tr(rho_A^2).
double monotone_tilde(const PureState& psi, BipartiteDims dims);

/// Two-qubit concurrence from the spin-flipped spectrum.
double concurrence_two_qubit(const BipartiteState& state);

/// Closed-form two-qubit entanglement of formation, h((1 + sqrt(1 - C^2)) / 2).
double eof_two_qubit(const BipartiteState& state);

/// Measures the reference of `purification` (on dA*dB*ref_dim, reference
/// fastest) in the orthonormal columns of `basis`.
MeasuredSplit ensemble_from_measurement(const PureState& purification, BipartiteDims dims,
                                        Index ref_dim, const ComplexMatrix& basis);

/// Minimizes sum_m p_m S(rho_A,m) over measurement bases on the reference of
/// the spectral purification. Always an upper bound on E(rho).
EofResult eof_minimize(const BipartiteState& state, const OptimizerConfig& config = {});

}  // namespace entcont
