#include "entcont/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "entcont/error.hpp"

namespace entcont {

namespace {

void require_same_dim(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) {
    throw Error(Errc::DimensionMismatch, "dimensions " + std::to_string(rho.dim()) + " and " +
                                             std::to_string(sigma.dim()));
  }
}

}  // namespace

ProbVector::ProbVector(std::vector<double> p) : p_(std::move(p)) {
  if (p_.empty()) throw Error(Errc::InvalidDistribution, "empty distribution");
  double sum = 0.0;
  for (double x : p_) {
    if (!(x >= 0.0) || !std::isfinite(x)) {
      throw Error(Errc::InvalidDistribution, "negative or non-finite weight");
    }
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw Error(Errc::InvalidDistribution, "weights sum to " + std::to_string(sum));
  }
}

double eta(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw Error(Errc::OutOfDomain, "eta argument " + std::to_string(x));
  if (x == 0.0) return 0.0;
  return -x * std::log2(x);
}

double entropy_of_spectrum(const RealVector& eigenvalues) {
  double s = 0.0;
  for (Index i = 0; i < eigenvalues.size(); ++i) {
    const double v = eigenvalues(i);
    if (v > 0.0) s -= v * std::log2(v);
  }
  return s;
}

double entropy(const DensityMatrix& rho) {
  RealVector ev = hermitian_eigenvalues(rho.matrix());
  try {
    clamp_spectrum(ev);
  } catch (const Error& e) {
    throw Error(Errc::InvalidState, e.what());
  }
  const double s = entropy_of_spectrum(ev);
  return std::clamp(s, 0.0, std::log2(static_cast<double>(rho.dim())));
}

double shannon(const ProbVector& p) {
  double h = 0.0;
  for (double x : p.values()) {
    if (x > 0.0) h -= x * std::log2(x);
  }
  return h;
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho, sigma);
  return std::min(trace_norm(rho.matrix() - sigma.matrix()), 2.0);
}

double trace_distance(const PureState& psi, const PureState& phi) {
  return trace_distance(DensityMatrix::from_pure(psi), DensityMatrix::from_pure(phi));
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  require_same_dim(rho, sigma);
  // Singular values of sqrt(rho) sqrt(sigma) are the square roots of the eigenvalues of
  // sqrt(rho) sigma sqrt(rho), but come without the sqrt blow-up of eigenvalue noise near 0.
  const ComplexMatrix product = psd_sqrt(rho.matrix()) * psd_sqrt(sigma.matrix());
  const double f = Eigen::JacobiSVD<ComplexMatrix>(product).singularValues().sum();
  return std::clamp(f, 0.0, 1.0);
}

double bures_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  return 2.0 * std::sqrt(1.0 - fidelity(rho, sigma));
}

UhlmannPair uhlmann_purifications(const DensityMatrix& rho, const DensityMatrix& sigma,
                                  Index ref_dim) {
  require_same_dim(rho, sigma);
  const Index n = rho.dim();
  if (ref_dim < n) {
    throw Error(Errc::RefTooSmall, "reference dimension " + std::to_string(ref_dim) +
                                       " below system dimension " + std::to_string(n));
  }

  EigenSystem er = hermitian_eig(rho.matrix());
  EigenSystem es = hermitian_eig(sigma.matrix());
  clamp_spectrum(er.eigenvalues);
  clamp_spectrum(es.eigenvalues);

  // Reference-side overlap operator: <rho|(I (x) V)|sigma> = tr(A^T V) with
  // A_ij = sqrt(l_i mu_j) <e_i|f_j>. Only the leading n x n block is nonzero.
  const ComplexMatrix a = er.eigenvalues.cwiseSqrt().cast<Complex>().asDiagonal() *
                          (er.eigenvectors.adjoint() * es.eigenvectors) *
                          es.eigenvalues.cwiseSqrt().cast<Complex>().asDiagonal();
  Eigen::JacobiSVD<ComplexMatrix> svd(a.transpose(), Eigen::ComputeFullU | Eigen::ComputeFullV);
  ComplexMatrix v = ComplexMatrix::Identity(ref_dim, ref_dim);
  v.topLeftCorner(n, n) = svd.matrixV() * svd.matrixU().adjoint();

  PureState pur_rho = purify(rho, ref_dim);
  const PureState spectral_sigma = purify(sigma, ref_dim);

  // (I (x) V) on amplitude matrix M(s, r): M' = M V^T.
  const Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
      m(spectral_sigma.amplitudes().data(), n, ref_dim);
  const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rotated =
      m * v.transpose();
  ComplexVector rotated_vec =
      Eigen::Map<const ComplexVector>(rotated.data(), n * ref_dim);
  PureState pur_sigma = PureState::normalized(std::move(rotated_vec));

  const double overlap = std::abs(pur_rho.amplitudes().dot(pur_sigma.amplitudes()));
  return UhlmannPair{std::move(pur_rho), std::move(pur_sigma), overlap, std::move(v)};
}

}  // namespace entcont
