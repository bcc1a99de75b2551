#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "entcont/entanglement.hpp"
#include "entcont/metrics.hpp"
#include "entcont/states.hpp"

namespace entcont {

inline constexpr double kCheckTol = 1e-9;
inline constexpr double kRegimeMargin = 1e-12;

/// 1/e as a double.
double inv_e();

/// log2(e) / e, the unrestricted replacement for eta(t).
double log2e_over_e();

/// True when `t` is far enough below 1/e (by kRegimeMargin) for the
/// restricted, eta-based forms.
bool restricted_regime(double t);

enum class BoundClass {
  Theorem,      // a violation is an implementation bug
  Indicative,   // recorded, never fatal
};

enum class EofProvider { Oracle, Optimizer };

std::string to_string(EofProvider provider);

struct BoundReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  bool satisfied = true;
  bool regime_ok = true;  // restricted (eta) form applied
  BoundClass klass = BoundClass::Theorem;

  Index da = 0;
  Index db = 0;
  double distance = 0.0;
  std::string provider;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

/// Fills slack and satisfied from lhs and rhs.
BoundReport make_report(std::string name, double lhs, double rhs, bool regime_ok,
                        BoundClass klass = BoundClass::Theorem);

/// t log2 d + eta(t) (restricted, needs t <= 1/e) or t log2 d + log2(e)/e.
double fannes_rhs(double t, Index d, bool restricted);

BoundReport check_fannes(const DensityMatrix& rho, const DensityMatrix& sigma);

/// |E(psi) - E(phi)| against the Fannes form with d = dA and T the trace
/// distance of the two projectors.
BoundReport check_pure_continuity(const PureState& psi, const PureState& phi,
                                  BipartiteDims dims);

enum class LogCoefficient {
  Split,       // 5 log2 d + 4 log2 d', with d <= d'
  NineLogMax,  // 9 log2 max(d, d')
};

double eof_continuity_rhs(double dist, Index da, Index db, bool restricted,
                          LogCoefficient coefficient = LogCoefficient::Split);

struct EofContinuityOptions {
  EofProvider provider = EofProvider::Oracle;
  bool chain = false;
  OptimizerConfig optimizer{};
};

// The main bound plus, when requested, one report per intermediate step of
// the purification/measurement argument.
struct EofContinuityReport {
  BoundReport main;
  std::vector<BoundReport> chain;
  double eof_rho = 0.0;
  double eof_sigma = 0.0;
  double bures = 0.0;
};

EofContinuityReport check_eof_continuity(const BipartiteState& rho, const BipartiteState& sigma,
                                         const EofContinuityOptions& options = {});

/// eps*d |1><1| + (1/d - eps) I, valid for 0 < eps < 1/d.
DensityMatrix tightness_state(Index d, double epsilon);

struct TightnessRow {
  Index d = 0;
  double epsilon = 0.0;
  double gap = 0.0;    // S(I/d) - S(rho)
  double t = 0.0;      // T(I/d, rho)
  double lower = 0.0;  // t log2(d) / 2 - 1
  bool t_matches = false;   // t == 2 (d - 1) eps within 1e-9
  bool bound_holds = false; // gap >= lower - 1e-9
};

TightnessRow tightness_row(Index d, double epsilon);

/// Epsilon that puts T(I/d, rho) at `t`: t / (2 (d - 1)).
double epsilon_for_distance(Index d, double t);

/// Least-squares slope and intercept of gap against log2 d.
struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
};
LinearFit fit_gap_vs_log_d(const std::vector<TightnessRow>& rows);

struct ProportionalityRecord {
  double s = 0.0;
  double tilde = 0.0;
  std::optional<double> ratio;  // empty when S = 0
};

/// Builds sum_i sqrt(p_i) |i>|i> and compares S against -log2 tr(rho_A^2).
ProportionalityRecord proportionality_demo(const ProbVector& schmidt);

/// Bipartite state from Schmidt weights, sum_i sqrt(p_i) |i>|i> on d x d.
PureState schmidt_state(const ProbVector& schmidt);

}  // namespace entcont
