#include "entcont/states.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "entcont/error.hpp"

namespace entcont {

namespace {

void validate_density(const ComplexMatrix& m) {
  if (m.rows() != m.cols() || m.rows() < 1) {
    throw Error(Errc::InvalidState, "density matrix must be square and non-empty");
  }
  if (hermitian_deviation(m) > tol::herm) {
    throw Error(Errc::InvalidState, "density matrix is not Hermitian");
  }
  const double tr = m.trace().real();
  if (std::abs(tr - 1.0) > tol::trace) {
    throw Error(Errc::InvalidState, "trace is " + std::to_string(tr));
  }
  const RealVector ev = hermitian_eigenvalues(m);
  if (ev(ev.size() - 1) < -tol::psd) {
    throw Error(Errc::InvalidState,
                "negative eigenvalue " + std::to_string(ev(ev.size() - 1)));
  }
}

ComplexVector gaussian_vector(Index n, Engine& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexVector v(n);
  for (Index i = 0; i < n; ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    v(i) = Complex(re, im);
  }
  return v;
}

}  // namespace

// --- DensityMatrix ---------------------------------------------------------

DensityMatrix::DensityMatrix(ComplexMatrix mat) : mat_(std::move(mat)) {
  validate_density(mat_);
  mat_ = 0.5 * (mat_ + mat_.adjoint()).eval();
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
  return DensityMatrix(psi.projector());
}

DensityMatrix DensityMatrix::maximally_mixed(Index dim) {
  if (dim < 1) throw Error(Errc::InvalidState, "dimension must be positive");
  return DensityMatrix(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

DensityMatrix DensityMatrix::diagonal(std::span<const double> probabilities) {
  const auto n = static_cast<Index>(probabilities.size());
  if (n < 1) throw Error(Errc::InvalidState, "empty diagonal");
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) m(i, i) = probabilities[static_cast<std::size_t>(i)];
  return DensityMatrix(std::move(m));
}

double DensityMatrix::purity() const {
  // tr(rho^2) = sum |rho_ij|^2 for Hermitian rho
  return mat_.cwiseAbs2().sum();
}

// --- PureState -------------------------------------------------------------

PureState::PureState(ComplexVector amplitudes) : amps_(std::move(amplitudes)) {
  if (amps_.size() < 1) throw Error(Errc::InvalidState, "empty state vector");
  const double norm = amps_.norm();
  if (std::abs(norm - 1.0) > tol::trace) {
    throw Error(Errc::InvalidState, "state norm is " + std::to_string(norm));
  }
}

PureState PureState::normalized(ComplexVector amplitudes) {
  const double norm = amplitudes.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw Error(Errc::InvalidState, "cannot normalize a zero vector");
  }
  amplitudes /= norm;
  return PureState(std::move(amplitudes));
}

PureState PureState::basis(Index dim, Index index) {
  if (index < 0 || index >= dim) throw Error(Errc::InvalidState, "basis index out of range");
  ComplexVector v = ComplexVector::Zero(dim);
  v(index) = 1.0;
  return PureState(std::move(v));
}

// --- Bipartite -------------------------------------------------------------

BipartiteDims::BipartiteDims(Index da, Index db) : a(da), b(db) {
  if (da < 1 || db < 1) {
    throw Error(Errc::DimensionMismatch, "subsystem dimensions must be positive");
  }
}

BipartiteState::BipartiteState(BipartiteDims dims, DensityMatrix rho)
    : dims_(dims), rho_(std::move(rho)) {
  if (dims_.total() != rho_.dim()) {
    throw Error(Errc::DimensionMismatch,
                std::to_string(dims_.a) + "x" + std::to_string(dims_.b) +
                    " does not factor dimension " + std::to_string(rho_.dim()));
  }
}

BipartiteState BipartiteState::from_pure(const PureState& psi, BipartiteDims dims) {
  return BipartiteState(dims, DensityMatrix::from_pure(psi));
}

Engine make_engine(RngSeed seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed.seed), static_cast<std::uint32_t>(seed.seed >> 32),
                    static_cast<std::uint32_t>(seed.stream),
                    static_cast<std::uint32_t>(seed.stream >> 32)};
  return Engine(seq);
}

// --- Partial trace ---------------------------------------------------------

ComplexMatrix reduce_to(const ComplexMatrix& m, std::span<const Index> factors,
                        std::span<const std::size_t> keep) {
  Index total = 1;
  for (Index f : factors) {
    if (f < 1) throw Error(Errc::DimensionMismatch, "non-positive factor dimension");
    total *= f;
  }
  if (m.rows() != total || m.cols() != total) {
    throw Error(Errc::DimensionMismatch, "operator dimension " + std::to_string(m.rows()) +
                                             " does not match factor product " +
                                             std::to_string(total));
  }

  std::vector<bool> kept(factors.size(), false);
  for (std::size_t k : keep) {
    if (k >= factors.size()) throw Error(Errc::DimensionMismatch, "kept factor out of range");
    kept[k] = true;
  }

  // Strides of each factor in the full index, then the (kept, traced) split.
  std::vector<Index> stride(factors.size());
  Index s = 1;
  for (std::size_t i = factors.size(); i-- > 0;) {
    stride[i] = s;
    s *= factors[i];
  }
  Index kept_dim = 1;
  Index traced_dim = 1;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    (kept[i] ? kept_dim : traced_dim) *= factors[i];
  }

  // full[k * traced_dim + t] = full index of (kept multi-index k, traced t)
  std::vector<Index> full(static_cast<std::size_t>(total));
  for (Index idx = 0; idx < total; ++idx) {
    Index k = 0;
    Index t = 0;
    for (std::size_t i = 0; i < factors.size(); ++i) {
      const Index digit = (idx / stride[i]) % factors[i];
      if (kept[i]) {
        k = k * factors[i] + digit;
      } else {
        t = t * factors[i] + digit;
      }
    }
    full[static_cast<std::size_t>(k * traced_dim + t)] = idx;
  }

  ComplexMatrix out = ComplexMatrix::Zero(kept_dim, kept_dim);
  for (Index r = 0; r < kept_dim; ++r) {
    for (Index c = 0; c < kept_dim; ++c) {
      Complex acc = 0.0;
      for (Index t = 0; t < traced_dim; ++t) {
        acc += m(full[static_cast<std::size_t>(r * traced_dim + t)],
                 full[static_cast<std::size_t>(c * traced_dim + t)]);
      }
      out(r, c) = acc;
    }
  }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, BipartiteDims dims, Subsystem keep) {
  const Index factors[] = {dims.a, dims.b};
  const std::size_t which[] = {keep == Subsystem::A ? std::size_t{0} : std::size_t{1}};
  return reduce_to(m, factors, which);
}

DensityMatrix partial_trace(const BipartiteState& state, Subsystem keep) {
  return DensityMatrix(partial_trace(state.rho().matrix(), state.dims(), keep));
}

ComplexMatrix reduced_from_pure(const ComplexVector& amplitudes, BipartiteDims dims,
                                Subsystem keep) {
  if (amplitudes.size() != dims.total()) {
    throw Error(Errc::DimensionMismatch, "state dimension " + std::to_string(amplitudes.size()) +
                                             " != " + std::to_string(dims.total()));
  }
  // Row-major reshape: M(a, b) = psi[a * dB + b].
  const Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
      mat(amplitudes.data(), dims.a, dims.b);
  if (keep == Subsystem::A) return mat * mat.adjoint();
  return mat.transpose() * mat.conjugate();
}

// --- Purification ----------------------------------------------------------

Index numerical_rank(const DensityMatrix& rho) {
  const RealVector ev = hermitian_eigenvalues(rho.matrix());
  return (ev.array() > tol::psd).count();
}

PureState purify(const DensityMatrix& rho, Index ref_dim) {
  EigenSystem es = hermitian_eig(rho.matrix());
  clamp_spectrum(es.eigenvalues);
  const Index n = rho.dim();
  const Index rank = (es.eigenvalues.array() > tol::psd).count();
  if (ref_dim < 1 || (ref_dim < n && ref_dim < rank)) {
    throw Error(Errc::RefTooSmall, "reference dimension " + std::to_string(ref_dim) +
                                       " below rank " + std::to_string(rank));
  }
  // Amplitude matrix M(s, r), system index s slow.
  ComplexMatrix amp = ComplexMatrix::Zero(n, ref_dim);
  const Index terms = std::min(n, ref_dim);
  for (Index i = 0; i < terms; ++i) {
    amp.col(i) = std::sqrt(es.eigenvalues(i)) * es.eigenvectors.col(i);
  }
  ComplexVector v(n * ref_dim);
  for (Index s = 0; s < n; ++s) {
    for (Index r = 0; r < ref_dim; ++r) v(s * ref_dim + r) = amp(s, r);
  }
  // Dropped tail eigenvalues (all <= tol::psd) can leave the norm a hair
  // below one.
  return PureState::normalized(std::move(v));
}

// --- Sampling --------------------------------------------------------------

PureState sample_haar_pure(Index dim, Engine& rng) {
  if (dim < 1) throw Error(Errc::InvalidState, "dimension must be positive");
  if (dim == 1) return PureState(ComplexVector::Ones(1));
  return PureState::normalized(gaussian_vector(dim, rng));
}

PureState sample_haar_pure(Index dim, RngSeed seed) {
  Engine rng = make_engine(seed);
  return sample_haar_pure(dim, rng);
}

DensityMatrix sample_density(Index dim, Index ancilla_dim, Engine& rng) {
  if (dim < 1 || ancilla_dim < 1) {
    throw Error(Errc::InvalidState, "dimensions must be positive");
  }
  const PureState psi = sample_haar_pure(dim * ancilla_dim, rng);
  ComplexMatrix rho = reduced_from_pure(psi.amplitudes(), {dim, ancilla_dim}, Subsystem::A);
  rho /= rho.trace().real();
  return DensityMatrix(std::move(rho));
}

DensityMatrix sample_density(Index dim, Index ancilla_dim, RngSeed seed) {
  Engine rng = make_engine(seed);
  return sample_density(dim, ancilla_dim, rng);
}

ComplexMatrix sample_haar_unitary(Index dim, Engine& rng) {
  ComplexMatrix g(dim, dim);
  for (Index c = 0; c < dim; ++c) g.col(c) = gaussian_vector(dim, rng) / std::sqrt(2.0);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(dim, dim);
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index i = 0; i < dim; ++i) {
    const Complex d = r(i, i);
    const double mag = std::abs(d);
    if (mag > 0.0) q.col(i) *= d / mag;
  }
  return q;
}

DensityMatrix perturb(const DensityMatrix& rho, double amplitude, Engine& rng) {
  if (!(amplitude >= 0.0 && amplitude <= 1.0)) {
    throw Error(Errc::AmplitudeOutOfRange, "amplitude " + std::to_string(amplitude));
  }
  const DensityMatrix noise = sample_density(rho.dim(), rho.dim(), rng);
  if (amplitude == 0.0) return rho;
  return DensityMatrix((1.0 - amplitude) * rho.matrix() + amplitude * noise.matrix());
}

DensityMatrix perturb(const DensityMatrix& rho, double amplitude, RngSeed seed) {
  Engine rng = make_engine(seed);
  return perturb(rho, amplitude, rng);
}

PureState perturb_pure(const PureState& psi, double amplitude, Engine& rng) {
  if (!(amplitude >= 0.0 && amplitude <= 1.0)) {
    throw Error(Errc::AmplitudeOutOfRange, "amplitude " + std::to_string(amplitude));
  }
  const PureState chi = sample_haar_pure(psi.dim(), rng);
  if (amplitude == 0.0) return psi;
  if (amplitude == 1.0) return chi;
  ComplexVector mixed = (1.0 - amplitude) * psi.amplitudes() + amplitude * chi.amplitudes();
  return PureState::normalized(std::move(mixed));
}

}  // namespace entcont
