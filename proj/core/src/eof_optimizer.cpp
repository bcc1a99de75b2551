// Variational entanglement-of-formation search.
//
// Every ensemble of rho arises from measuring the reference of the spectral
// purification in some orthonormal basis. With X the n x n matrix whose
// columns are sqrt(l_i) e_i and C a K x K unitary, the unnormalized posterior
// states are the columns of X * C.topRows(n), and the objective is
//
//   f(C) = sum_m p_m S(tr_B psi_m / p_m).
//
// Each restart does derivative-free coordinate descent in the exponential
// chart around the current point: a coordinate is one entry of the
// anti-Hermitian generator, and exp(step * G) for a single off-diagonal
// entry (real or imaginary part) is a Givens rotation acting on two columns
// of C. Only two posterior states change per move, so a trial costs O(n).
// Diagonal generator entries only rephase a column and never change f.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <string>
#include <thread>
#include <vector>

#include "entcont/entanglement.hpp"
#include "entcont/error.hpp"

namespace entcont {

namespace {

// p * S(psi / sqrt(p)) for an unnormalized bipartite vector, i.e.
// -sum nu log2 nu + p log2 p over the eigenvalues nu of its reduced operator.
class MemberCost {
 public:
  explicit MemberCost(BipartiteDims dims)
      : rows_(std::min(dims.a, dims.b)),
        cols_(std::max(dims.a, dims.b)),
        transpose_(dims.a > dims.b),
        dims_(dims),
        gram_(rows_, rows_),
        solver_(rows_) {}

  double operator()(const Complex* psi) {
    // Gram matrix of the reshaped amplitudes along the smaller side.
    double p = 0.0;
    for (Index i = 0; i < rows_; ++i) {
      for (Index j = i; j < rows_; ++j) {
        Complex acc = 0.0;
        for (Index k = 0; k < cols_; ++k) acc += at(psi, i, k) * std::conj(at(psi, j, k));
        gram_(i, j) = acc;
        gram_(j, i) = std::conj(acc);
      }
      p += gram_(i, i).real();
    }
    if (p <= 0.0) return 0.0;

    double s = 0.0;
    if (rows_ == 1) return 0.0;
    if (rows_ == 2) {
      const double a = gram_(0, 0).real();
      const double d = gram_(1, 1).real();
      const double disc = std::sqrt((a - d) * (a - d) + 4.0 * std::norm(gram_(0, 1)));
      s = xlogx(0.5 * (a + d + disc)) + xlogx(0.5 * (a + d - disc));
    } else {
      solver_.compute(gram_, Eigen::EigenvaluesOnly);
      for (Index i = 0; i < rows_; ++i) s += xlogx(solver_.eigenvalues()(i));
    }
    return std::max(0.0, -s + p * std::log2(p));
  }

 private:
  static double xlogx(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

  // Element (i, k) of the min-side x max-side reshape; amplitudes are
  // stored as psi[a * dB + b].
  Complex at(const Complex* psi, Index i, Index k) const {
    return transpose_ ? psi[k * dims_.b + i] : psi[i * dims_.b + k];
  }

  Index rows_;
  Index cols_;
  bool transpose_;
  BipartiteDims dims_;
  ComplexMatrix gram_;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver_;
};

struct RestartOutcome {
  double value = std::numeric_limits<double>::infinity();
  ComplexMatrix unitary;
  std::vector<double> history;
};

enum class Plane { Real, Imag };

// Applies exp(theta * G) to columns (j, k) of `m` in place, G the generator
// with a single off-diagonal entry pair at (j, k).
void rotate_columns(ComplexMatrix& m, Index j, Index k, Plane plane, double c, double s) {
  for (Index r = 0; r < m.rows(); ++r) {
    const Complex x = m(r, j);
    const Complex y = m(r, k);
    if (plane == Plane::Real) {
      m(r, j) = c * x + s * y;
      m(r, k) = -s * x + c * y;
    } else {
      m(r, j) = c * x + Complex(0.0, s) * y;
      m(r, k) = Complex(0.0, s) * x + c * y;
    }
  }
}

void rotate_pair(const Complex* xj, const Complex* xk, Complex* outj, Complex* outk, Index n,
                 Plane plane, double c, double s) {
  for (Index r = 0; r < n; ++r) {
    if (plane == Plane::Real) {
      outj[r] = c * xj[r] + s * xk[r];
      outk[r] = -s * xj[r] + c * xk[r];
    } else {
      outj[r] = c * xj[r] + Complex(0.0, s) * xk[r];
      outk[r] = Complex(0.0, s) * xj[r] + c * xk[r];
    }
  }
}

ComplexMatrix reorthonormalize(const ComplexMatrix& u) {
  Eigen::HouseholderQR<ComplexMatrix> qr(u);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(u.rows(), u.cols());
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index i = 0; i < u.cols(); ++i) {
    const double mag = std::abs(r(i, i));
    if (mag > 0.0) q.col(i) *= r(i, i) / mag;
  }
  return q;
}

RestartOutcome descend(const ComplexMatrix& weighted_eigvecs, BipartiteDims dims,
                       ComplexMatrix unitary, const OptimizerConfig& config) {
  const Index n = weighted_eigvecs.rows();
  const Index k_dim = unitary.rows();
  MemberCost cost(dims);

  RestartOutcome out;
  ComplexMatrix posterior;
  std::vector<double> terms(static_cast<std::size_t>(k_dim));
  auto refresh = [&]() {
    posterior = weighted_eigvecs * unitary.topRows(n);
    double total = 0.0;
    for (Index m = 0; m < k_dim; ++m) {
      terms[static_cast<std::size_t>(m)] = cost(posterior.col(m).data());
      total += terms[static_cast<std::size_t>(m)];
    }
    return total;
  };

  double current = refresh();
  out.history.push_back(current);
  double step = config.initial_step;
  ComplexVector trial_j(n);
  ComplexVector trial_k(n);

  for (int sweep = 0; sweep < config.max_sweeps && step >= config.min_step; ++sweep) {
    const double start = current;
    for (Index j = 0; j < k_dim; ++j) {
      for (Index k = j + 1; k < k_dim; ++k) {
        for (Plane plane : {Plane::Real, Plane::Imag}) {
          const double old_pair = terms[static_cast<std::size_t>(j)] + terms[static_cast<std::size_t>(k)];
          for (double theta : {step, -step}) {
            const double c = std::cos(theta);
            const double s = std::sin(theta);
            rotate_pair(posterior.col(j).data(), posterior.col(k).data(), trial_j.data(),
                        trial_k.data(), n, plane, c, s);
            const double tj = cost(trial_j.data());
            const double tk = cost(trial_k.data());
            if (tj + tk < old_pair - 1e-15) {
              posterior.col(j) = trial_j;
              posterior.col(k) = trial_k;
              rotate_columns(unitary, j, k, plane, c, s);
              terms[static_cast<std::size_t>(j)] = tj;
              terms[static_cast<std::size_t>(k)] = tk;
              current += (tj + tk) - old_pair;
              break;
            }
          }
        }
      }
    }
    // Resynchronize the incrementally updated posterior with the unitary.
    unitary = reorthonormalize(unitary);
    current = refresh();
    out.history.push_back(current);
    if (start - current < config.tol_objective) step *= config.step_shrink;
  }

  out.value = current;
  out.unitary = std::move(unitary);
  return out;
}

void validate_config(const OptimizerConfig& config) {
  if (config.restarts < 1) throw Error(Errc::InvalidConfig, "restarts must be >= 1");
  if (config.max_sweeps < 0) throw Error(Errc::InvalidConfig, "max_sweeps must be >= 0");
  if (!(config.initial_step > 0.0) || !(config.min_step > 0.0)) {
    throw Error(Errc::InvalidConfig, "step sizes must be positive");
  }
  if (!(config.step_shrink > 0.0 && config.step_shrink < 1.0)) {
    throw Error(Errc::InvalidConfig, "step_shrink must lie in (0, 1)");
  }
  if (!(config.tol_objective >= 0.0)) throw Error(Errc::InvalidConfig, "negative tolerance");
}

}  // namespace

EofResult eof_minimize(const BipartiteState& state, const OptimizerConfig& config) {
  validate_config(config);
  const BipartiteDims dims = state.dims();
  const Index n = dims.total();
  if (n > config.dim_cap) {
    throw Error(Errc::DimensionCap, "dA*dB = " + std::to_string(n) + " exceeds cap " +
                                        std::to_string(config.dim_cap));
  }
  const Index k_dim = config.ref_dim > 0 ? config.ref_dim : n * n;
  if (k_dim < n) throw Error(Errc::RefTooSmall, "reference dimension below dA*dB");

  EigenSystem es = hermitian_eig(state.rho().matrix());
  clamp_spectrum(es.eigenvalues);
  const ComplexMatrix weighted =
      es.eigenvectors * es.eigenvalues.cwiseSqrt().cast<Complex>().asDiagonal();
  const Index rank = (es.eigenvalues.array() > tol::psd).count();

  std::vector<RestartOutcome> outcomes;
  if (rank <= 1) {
    // A pure state has exactly one ensemble; no search needed.
    RestartOutcome only;
    only.unitary = ComplexMatrix::Identity(k_dim, k_dim);
    outcomes.push_back(std::move(only));
  } else {
    outcomes.resize(static_cast<std::size_t>(config.restarts));
    auto run = [&](int r) {
      ComplexMatrix start = ComplexMatrix::Identity(k_dim, k_dim);
      if (r > 0) {
        Engine rng = make_engine({config.seed, static_cast<std::uint64_t>(r)});
        start = sample_haar_unitary(k_dim, rng);
      }
      outcomes[static_cast<std::size_t>(r)] = descend(weighted, dims, std::move(start), config);
    };
    const int workers = std::clamp(config.threads, 1, config.restarts);
    if (workers == 1) {
      for (int r = 0; r < config.restarts; ++r) run(r);
    } else {
      std::atomic<int> next{0};
      std::vector<std::jthread> pool;
      for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&]() {
          for (int r = next++; r < config.restarts; r = next++) run(r);
        });
      }
    }
  }

  // Minimum with ties broken by restart index.
  std::size_t best = 0;
  for (std::size_t r = 1; r < outcomes.size(); ++r) {
    if (outcomes[r].value < outcomes[best].value) best = r;
  }

  EofResult result;
  result.ref_dim = k_dim;
  result.restarts_used = static_cast<int>(outcomes.size());
  for (const auto& o : outcomes) result.restart_values.push_back(o.value);
  result.objective_history = outcomes[best].history;

  std::vector<double> sorted = result.restart_values;
  std::sort(sorted.begin(), sorted.end());
  result.converged = rank <= 1 ||
                     (sorted.size() >= 2 && sorted[1] - sorted[0] <= config.agreement_tol);

  const ComplexMatrix& u = outcomes[best].unitary;
  result.basis = u.conjugate();

  // Certificate: rebuild the ensemble and re-evaluate through the public
  // pure-state path.
  const ComplexMatrix posterior = weighted * u.topRows(n);
  double total = 0.0;
  for (Index m = 0; m < k_dim; ++m) {
    const double p = posterior.col(m).squaredNorm();
    if (p < kPruneWeight) continue;
    result.ensemble.weights.push_back(p);
    result.ensemble.members.push_back(PureState::normalized(posterior.col(m)));
    total += p;
  }
  for (double& w : result.ensemble.weights) w /= total;
  result.value = std::max(0.0, result.ensemble.average_entanglement(dims));
  return result;
}

}  // namespace entcont
