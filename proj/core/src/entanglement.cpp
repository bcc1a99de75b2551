#include "entcont/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "entcont/error.hpp"

namespace entcont {

namespace {

using RowMajorMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

double binary_entropy(double x) {
  x = std::clamp(x, 0.0, 1.0);
  return eta(x) + eta(1.0 - x);
}

}  // namespace

ComplexMatrix Ensemble::mixture() const {
  if (members.empty()) throw Error(Errc::InvalidState, "empty ensemble");
  const Index n = members.front().dim();
  ComplexMatrix rho = ComplexMatrix::Zero(n, n);
  for (std::size_t m = 0; m < members.size(); ++m) {
    rho += weights[m] * members[m].projector();
  }
  return rho;
}

double Ensemble::average_entanglement(BipartiteDims dims) const {
  double total = 0.0;
  for (std::size_t m = 0; m < members.size(); ++m) {
    total += weights[m] * pure_entanglement(members[m], dims);
  }
  return total;
}

double pure_entanglement(const PureState& psi, BipartiteDims dims) {
  const Subsystem side = dims.a <= dims.b ? Subsystem::A : Subsystem::B;
  RealVector ev = hermitian_eigenvalues(reduced_from_pure(psi.amplitudes(), dims, side));
  clamp_spectrum(ev);
  const double s = entropy_of_spectrum(ev);
  return std::clamp(s, 0.0, std::log2(static_cast<double>(std::min(dims.a, dims.b))));
}

double monotone_tilde(const PureState& psi, BipartiteDims dims) {
  const ComplexMatrix rho_a = reduced_from_pure(psi.amplitudes(), dims, Subsystem::A);
  const double purity = rho_a.cwiseAbs2().sum();
  return std::max(0.0, -std::log2(purity));
}

double concurrence_two_qubit(const BipartiteState& state) {
  if (state.dims().a != 2 || state.dims().b != 2) {
    throw Error(Errc::WrongDimensions, "two-qubit formula needs 2x2, got " +
                                           std::to_string(state.dims().a) + "x" +
                                           std::to_string(state.dims().b));
  }
  const ComplexMatrix& rho = state.rho().matrix();
  // sigma_y (x) sigma_y is real: the anti-diagonal (-1, 1, 1, -1).
  ComplexMatrix yy = ComplexMatrix::Zero(4, 4);
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;
  const ComplexMatrix flipped = yy * rho.conjugate() * yy;
  // Eigenvalues of rho*flipped equal those of the Hermitian root*flipped*root.
  const ComplexMatrix root = psd_sqrt(rho);
  const ComplexMatrix inner = root * flipped * root;
  RealVector mu = hermitian_eigenvalues(0.5 * (inner + inner.adjoint()));
  for (Index i = 0; i < mu.size(); ++i) mu(i) = std::sqrt(std::max(mu(i), 0.0));
  return std::max(0.0, mu(0) - mu(1) - mu(2) - mu(3));
}

double eof_two_qubit(const BipartiteState& state) {
  const double c = std::min(concurrence_two_qubit(state), 1.0);
  return binary_entropy(0.5 * (1.0 + std::sqrt(1.0 - c * c)));
}

MeasuredSplit ensemble_from_measurement(const PureState& purification, BipartiteDims dims,
                                        Index ref_dim, const ComplexMatrix& basis) {
  const Index n = dims.total();
  if (ref_dim < 1 || purification.dim() != n * ref_dim) {
    throw Error(Errc::DimensionMismatch, "purification dimension " +
                                             std::to_string(purification.dim()) + " != " +
                                             std::to_string(n) + "*" + std::to_string(ref_dim));
  }
  if (basis.rows() != ref_dim || basis.cols() != ref_dim) {
    throw Error(Errc::DimensionMismatch, "basis must be ref_dim x ref_dim");
  }
  if (unitary_deviation(basis) > tol::herm) {
    throw Error(Errc::NotUnitary, "measurement basis is not orthonormal");
  }

  const Eigen::Map<const RowMajorMatrix> amp(purification.amplitudes().data(), n, ref_dim);
  // Column m: unnormalized posterior (I (x) <b_m|)|purification>.
  const ComplexMatrix posterior = amp * basis.conjugate();

  const Index da = dims.a;
  ComplexMatrix rho_ar = ComplexMatrix::Zero(da * ref_dim, da * ref_dim);
  ComplexMatrix rho_r = ComplexMatrix::Zero(ref_dim, ref_dim);
  std::vector<double> kept_weights;
  std::vector<ComplexVector> kept_members;
  for (Index m = 0; m < ref_dim; ++m) {
    const ComplexVector col = posterior.col(m);
    const double p = col.squaredNorm();
    const ComplexMatrix proj_b = basis.col(m) * basis.col(m).adjoint();
    rho_r += p * proj_b;
    if (p > 0.0) {
      const ComplexMatrix reduced = reduced_from_pure(col, dims, Subsystem::A);
      for (Index a1 = 0; a1 < da; ++a1) {
        for (Index a2 = 0; a2 < da; ++a2) {
          rho_ar.block(a1 * ref_dim, a2 * ref_dim, ref_dim, ref_dim) += reduced(a1, a2) * proj_b;
        }
      }
    }
    if (p >= kPruneWeight) {
      kept_weights.push_back(p);
      kept_members.push_back(col / std::sqrt(p));
    }
  }

  double total = 0.0;
  for (double w : kept_weights) total += w;
  MeasuredSplit out;
  for (std::size_t i = 0; i < kept_weights.size(); ++i) {
    out.ensemble.weights.push_back(kept_weights[i] / total);
    out.ensemble.members.push_back(PureState::normalized(kept_members[i]));
  }

  RealVector ev_ar = hermitian_eigenvalues(rho_ar);
  RealVector ev_r = hermitian_eigenvalues(rho_r);
  clamp_spectrum(ev_ar);
  clamp_spectrum(ev_r);
  out.s_ar = entropy_of_spectrum(ev_ar);
  out.s_r = entropy_of_spectrum(ev_r);
  return out;
}

}  // namespace entcont
