#include "entcont/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "entcont/error.hpp"

namespace entcont {

namespace {

void require_same_dims(const BipartiteState& rho, const BipartiteState& sigma) {
  if (!(rho.dims() == sigma.dims())) {
    throw Error(Errc::DimensionMismatch, "bipartite dimensions differ");
  }
}

double log2_index(Index d) { return std::log2(static_cast<double>(d)); }

// Non-selective measurement of the reference in `basis`: the post-measurement
// operator on A (x) B (x) R.
ComplexMatrix measured_abr(const PureState& purification, Index n, Index ref_dim,
                           const ComplexMatrix& basis) {
  using RowMajorMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  const Eigen::Map<const RowMajorMatrix> amp(purification.amplitudes().data(), n, ref_dim);
  const ComplexMatrix posterior = amp * basis.conjugate();
  ComplexMatrix out = ComplexMatrix::Zero(n * ref_dim, n * ref_dim);
  for (Index m = 0; m < ref_dim; ++m) {
    // (psi_m (x) b_m)(psi_m (x) b_m)^dagger
    ComplexVector joint(n * ref_dim);
    for (Index s = 0; s < n; ++s) joint.segment(s * ref_dim, ref_dim) = posterior(s, m) * basis.col(m);
    out.noalias() += joint * joint.adjoint();
  }
  return out;
}

double eof_by_provider(const BipartiteState& state, const EofContinuityOptions& options) {
  if (options.provider == EofProvider::Oracle) return eof_two_qubit(state);
  return eof_minimize(state, options.optimizer).value;
}

}  // namespace

double inv_e() { return 1.0 / std::numbers::e; }

double log2e_over_e() { return std::numbers::log2e / std::numbers::e; }

bool restricted_regime(double t) { return t <= inv_e() - kRegimeMargin; }

std::string to_string(EofProvider provider) {
  return provider == EofProvider::Oracle ? "oracle" : "optimizer";
}

BoundReport make_report(std::string name, double lhs, double rhs, bool regime_ok,
                        BoundClass klass) {
  BoundReport r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.slack = rhs - lhs;
  r.satisfied = r.slack >= -kCheckTol;
  r.regime_ok = regime_ok;
  r.klass = klass;
  return r;
}

double fannes_rhs(double t, Index d, bool restricted) {
  if (!(t >= 0.0)) throw Error(Errc::OutOfDomain, "distance must be non-negative");
  if (d < 1) throw Error(Errc::OutOfDomain, "dimension must be positive");
  if (restricted) {
    if (t > inv_e()) {
      throw Error(Errc::RegimeViolation, "restricted form needs t <= 1/e, got " + std::to_string(t));
    }
    return t * log2_index(d) + eta(t);
  }
  return t * log2_index(d) + log2e_over_e();
}

BoundReport check_fannes(const DensityMatrix& rho, const DensityMatrix& sigma) {
  const double t = trace_distance(rho, sigma);
  const bool restricted = restricted_regime(t);
  const double lhs = std::abs(entropy(rho) - entropy(sigma));
  BoundReport r = make_report("fannes", lhs, fannes_rhs(t, rho.dim(), restricted), restricted);
  r.da = rho.dim();
  r.db = 1;
  r.distance = t;
  return r;
}

BoundReport check_pure_continuity(const PureState& psi, const PureState& phi,
                                  BipartiteDims dims) {
  if (psi.dim() != dims.total() || phi.dim() != dims.total()) {
    throw Error(Errc::DimensionMismatch, "pure states do not live on dA*dB");
  }
  const double t = trace_distance(psi, phi);
  const bool restricted = restricted_regime(t);
  const double lhs = std::abs(pure_entanglement(psi, dims) - pure_entanglement(phi, dims));
  BoundReport r = make_report("pure_continuity", lhs, fannes_rhs(t, dims.a, restricted), restricted);
  r.da = dims.a;
  r.db = dims.b;
  r.distance = t;
  return r;
}

double eof_continuity_rhs(double dist, Index da, Index db, bool restricted,
                          LogCoefficient coefficient) {
  if (!(dist >= 0.0)) throw Error(Errc::OutOfDomain, "distance must be non-negative");
  if (da < 1 || db < 1) throw Error(Errc::OutOfDomain, "dimensions must be positive");
  const Index d = std::min(da, db);
  const Index d_prime = std::max(da, db);
  const double linear = coefficient == LogCoefficient::Split
                            ? 5.0 * log2_index(d) + 4.0 * log2_index(d_prime)
                            : 9.0 * log2_index(d_prime);
  if (restricted) {
    if (dist > inv_e()) {
      throw Error(Errc::RegimeViolation,
                  "restricted form needs D <= 1/e, got " + std::to_string(dist));
    }
    return linear * dist + 2.0 * eta(dist);
  }
  return linear * dist + 2.0 * log2e_over_e();
}

EofContinuityReport check_eof_continuity(const BipartiteState& rho, const BipartiteState& sigma,
                                         const EofContinuityOptions& options) {
  require_same_dims(rho, sigma);
  const BipartiteDims dims = rho.dims();
  if (options.provider == EofProvider::Oracle && (dims.a != 2 || dims.b != 2)) {
    throw Error(Errc::ProviderUnavailable, "closed-form provider only covers 2x2");
  }

  EofContinuityReport out;
  const bool need_sigma_basis = options.chain;
  std::optional<EofResult> sigma_search;
  if (options.provider == EofProvider::Optimizer || need_sigma_basis) {
    sigma_search = eof_minimize(sigma, options.optimizer);
  }
  out.eof_rho = eof_by_provider(rho, options);
  out.eof_sigma = options.provider == EofProvider::Optimizer ? sigma_search->value
                                                             : eof_two_qubit(sigma);
  out.bures = bures_distance(rho.rho(), sigma.rho());

  const bool restricted = restricted_regime(out.bures);
  const double lhs = std::max(out.eof_rho - out.eof_sigma, out.eof_sigma - out.eof_rho);
  out.main = make_report("eof_continuity", lhs,
                         eof_continuity_rhs(out.bures, dims.a, dims.b, restricted), restricted,
                         BoundClass::Indicative);
  out.main.da = dims.a;
  out.main.db = dims.b;
  out.main.distance = out.bures;
  out.main.provider = to_string(options.provider);

  if (!options.chain) return out;

  const Index n = dims.total();
  const Index k_dim = sigma_search->ref_dim;
  const UhlmannPair pair = uhlmann_purifications(rho.rho(), sigma.rho(), k_dim);
  // The search ran on sigma's spectral purification; pur_sigma is that state
  // rotated by V on the reference, so the same ensemble comes from V * basis.
  const ComplexMatrix basis = pair.reference_unitary * sigma_search->basis;

  const DensityMatrix abr_rho(measured_abr(pair.pur_rho, n, k_dim, basis));
  const DensityMatrix abr_sigma(measured_abr(pair.pur_sigma, n, k_dim, basis));
  const Index factors[] = {dims.a, dims.b, k_dim};
  const std::size_t keep_ar[] = {0, 2};
  const std::size_t keep_r[] = {2};
  const DensityMatrix ar_rho(reduce_to(abr_rho.matrix(), factors, keep_ar));
  const DensityMatrix ar_sigma(reduce_to(abr_sigma.matrix(), factors, keep_ar));
  const DensityMatrix r_rho(reduce_to(abr_rho.matrix(), factors, keep_r));
  const DensityMatrix r_sigma(reduce_to(abr_sigma.matrix(), factors, keep_r));

  const double t_r = trace_distance(r_rho, r_sigma);
  const double t_ar = trace_distance(ar_rho, ar_sigma);
  const double t_abr = trace_distance(abr_rho, abr_sigma);
  const double t_pure = trace_distance(pair.pur_rho, pair.pur_sigma);
  const double f = fidelity(rho.rho(), sigma.rho());

  const MeasuredSplit split_rho = ensemble_from_measurement(pair.pur_rho, dims, k_dim, basis);
  const MeasuredSplit split_sigma = ensemble_from_measurement(pair.pur_sigma, dims, k_dim, basis);

  const BoundClass exact_e =
      options.provider == EofProvider::Oracle ? BoundClass::Theorem : BoundClass::Indicative;

  auto add = [&](std::string name, double lhs_v, double rhs_v, double dist, bool regime,
                 BoundClass klass) {
    BoundReport r = make_report("chain:" + std::move(name), lhs_v, rhs_v, regime, klass);
    r.da = dims.a;
    r.db = dims.b;
    r.distance = dist;
    r.provider = out.main.provider;
    out.chain.push_back(std::move(r));
  };

  add("uhlmann_overlap", std::abs(pair.achieved_overlap - f), 1e-7, out.bures, true,
      BoundClass::Theorem);
  add("contract_R_AR", t_r, t_ar, t_r, true, BoundClass::Theorem);
  add("contract_AR_ABR", t_ar, t_abr, t_ar, true, BoundClass::Theorem);
  add("contract_ABR_pure", t_abr, t_pure, t_abr, true, BoundClass::Theorem);
  // Pure-state T versus Bures D of the marginals; T = 2 sqrt(1 - F^2) exceeds
  // D = 2 sqrt(1 - F) whenever 0 < F < 1.
  add("pure_T_le_D", t_pure, out.bures, t_pure, true, BoundClass::Indicative);
  add("T_AR_le_D", t_ar, out.bures, t_ar, true, BoundClass::Indicative);
  add("remote_rho", out.eof_rho, split_rho.s_ar - split_rho.s_r, t_ar, true, exact_e);

  const bool r_restricted = restricted_regime(t_r);
  const bool ar_restricted = restricted_regime(t_ar);
  const double fannes_sum = fannes_rhs(t_ar, dims.a * k_dim, ar_restricted) +
                            fannes_rhs(t_r, k_dim, r_restricted);
  add("fannes_split", out.eof_rho - (split_sigma.s_ar - split_sigma.s_r), fannes_sum, t_ar,
      r_restricted && ar_restricted, exact_e);
  return out;
}

DensityMatrix tightness_state(Index d, double epsilon) {
  if (d < 1) throw Error(Errc::EpsilonOutOfRange, "dimension must be positive");
  const double inv_d = 1.0 / static_cast<double>(d);
  if (!(epsilon > 0.0 && epsilon < inv_d)) {
    throw Error(Errc::EpsilonOutOfRange,
                "epsilon " + std::to_string(epsilon) + " outside (0, 1/d)");
  }
  std::vector<double> diag(static_cast<std::size_t>(d), inv_d - epsilon);
  diag[0] += epsilon * static_cast<double>(d);
  return DensityMatrix::diagonal(diag);
}

TightnessRow tightness_row(Index d, double epsilon) {
  const DensityMatrix rho = tightness_state(d, epsilon);
  const DensityMatrix mixed = DensityMatrix::maximally_mixed(d);
  TightnessRow row;
  row.d = d;
  row.epsilon = epsilon;
  row.gap = entropy(mixed) - entropy(rho);
  row.t = trace_distance(mixed, rho);
  row.lower = row.t * log2_index(d) / 2.0 - 1.0;
  row.t_matches = std::abs(row.t - 2.0 * static_cast<double>(d - 1) * epsilon) <= 1e-9;
  row.bound_holds = row.gap >= row.lower - 1e-9;
  return row;
}

double epsilon_for_distance(Index d, double t) {
  if (d < 2) throw Error(Errc::EpsilonOutOfRange, "fixed-t policy needs d >= 2");
  return t / (2.0 * static_cast<double>(d - 1));
}

LinearFit fit_gap_vs_log_d(const std::vector<TightnessRow>& rows) {
  if (rows.size() < 2) return {};
  double mx = 0.0;
  double my = 0.0;
  for (const auto& r : rows) {
    mx += log2_index(r.d);
    my += r.gap;
  }
  mx /= static_cast<double>(rows.size());
  my /= static_cast<double>(rows.size());
  double sxy = 0.0;
  double sxx = 0.0;
  for (const auto& r : rows) {
    const double dx = log2_index(r.d) - mx;
    sxy += dx * (r.gap - my);
    sxx += dx * dx;
  }
  if (sxx == 0.0) return {0.0, my};
  const double slope = sxy / sxx;
  return {slope, my - slope * mx};
}

PureState schmidt_state(const ProbVector& schmidt) {
  const auto d = static_cast<Index>(schmidt.size());
  ComplexVector v = ComplexVector::Zero(d * d);
  for (Index i = 0; i < d; ++i) v(i * d + i) = std::sqrt(schmidt[static_cast<std::size_t>(i)]);
  return PureState::normalized(std::move(v));
}

ProportionalityRecord proportionality_demo(const ProbVector& schmidt) {
  const auto d = static_cast<Index>(schmidt.size());
  const PureState psi = schmidt_state(schmidt);
  ProportionalityRecord rec;
  rec.s = pure_entanglement(psi, {d, d});
  rec.tilde = monotone_tilde(psi, {d, d});
  if (rec.s > 1e-12) rec.ratio = rec.tilde / rec.s;
  return rec;
}

}  // namespace entcont
