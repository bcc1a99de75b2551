#pragma once

#include <complex>

#include <Eigen/Dense>

namespace entcont {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

namespace tol {
inline constexpr double herm = 1e-9;   // max |m - m^dagger| entry
inline constexpr double psd = 1e-9;    // negative-eigenvalue slack
inline constexpr double recon = 1e-8;  // reconstruction, max-abs entry
inline constexpr double trace = 1e-9;  // unit trace / unit norm
}  // namespace tol

// Eigenvalues sorted descending; column i of `eigenvectors` belongs to
// eigenvalues(i).
struct EigenSystem {
  RealVector eigenvalues;
  ComplexMatrix eigenvectors;
};

/// Largest entry of |m - m^dagger|. Requires a square matrix.
double hermitian_deviation(const ComplexMatrix& m);

/// Largest entry of |m^dagger m - I|. Requires a square matrix.
double unitary_deviation(const ComplexMatrix& m);

/// Throws NotSquare / NotHermitian when `m` fails the tol::herm check.
void require_hermitian(const ComplexMatrix& m);

/// Spectral decomposition of a Hermitian matrix. Ties keep the solver's
/// order (stable sort), so repeated calls on equal input agree bit-for-bit.
EigenSystem hermitian_eig(const ComplexMatrix& m);

/// Eigenvalues only, descending.
RealVector hermitian_eigenvalues(const ComplexMatrix& m);

/// Square root of a positive-semidefinite matrix. Eigenvalues in
/// [-tol::psd, 0) are clamped to zero; anything lower is NegativeSpectrum.
ComplexMatrix psd_sqrt(const ComplexMatrix& m);

/// Sum of absolute eigenvalues of a Hermitian matrix.
double trace_norm(const ComplexMatrix& m);

/// Zeroes eigenvalues in [-tol::psd, 0); throws NegativeSpectrum below that.
void clamp_spectrum(RealVector& eigenvalues);

}  // namespace entcont
