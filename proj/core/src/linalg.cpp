#include "entcont/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "entcont/error.hpp"

namespace entcont {

namespace {

void require_square(const ComplexMatrix& m) {
  if (m.rows() != m.cols() || m.rows() < 1) {
    throw Error(Errc::NotSquare, "expected a non-empty square matrix, got " +
                                     std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

std::vector<Index> descending_order(const RealVector& values) {
  std::vector<Index> order(static_cast<std::size_t>(values.size()));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Index a, Index b) { return values(a) > values(b); });
  return order;
}

}  // namespace

double hermitian_deviation(const ComplexMatrix& m) {
  require_square(m);
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double unitary_deviation(const ComplexMatrix& m) {
  require_square(m);
  const ComplexMatrix gram = m.adjoint() * m;
  return (gram - ComplexMatrix::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff();
}

void require_hermitian(const ComplexMatrix& m) {
  const double dev = hermitian_deviation(m);
  if (dev > tol::herm) {
    throw Error(Errc::NotHermitian, "max |m - m^dagger| = " + std::to_string(dev));
  }
}

EigenSystem hermitian_eig(const ComplexMatrix& m) {
  require_hermitian(m);
  // Symmetrize so the solver sees an exactly Hermitian input.
  const ComplexMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::ComputeEigenvectors);

  const auto order = descending_order(solver.eigenvalues());
  const Index n = h.rows();
  EigenSystem out{RealVector(n), ComplexMatrix(n, n)};
  for (Index i = 0; i < n; ++i) {
    const Index src = order[static_cast<std::size_t>(i)];
    out.eigenvalues(i) = solver.eigenvalues()(src);
    out.eigenvectors.col(i) = solver.eigenvectors().col(src);
  }
  return out;
}

RealVector hermitian_eigenvalues(const ComplexMatrix& m) {
  require_hermitian(m);
  const ComplexMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
  RealVector values = solver.eigenvalues().reverse();
  return values;
}

void clamp_spectrum(RealVector& eigenvalues) {
  for (Index i = 0; i < eigenvalues.size(); ++i) {
    double& v = eigenvalues(i);
    if (v < -tol::psd) {
      throw Error(Errc::NegativeSpectrum, "eigenvalue " + std::to_string(v));
    }
    v = std::max(v, 0.0);
  }
}

ComplexMatrix psd_sqrt(const ComplexMatrix& m) {
  EigenSystem es = hermitian_eig(m);
  clamp_spectrum(es.eigenvalues);
  // Eigenvalues this close to zero are solver noise; their square roots would not be.
  const double floor = 10.0 * static_cast<double>(m.rows()) *
                       std::numeric_limits<double>::epsilon() * es.eigenvalues.maxCoeff();
  const RealVector roots =
      es.eigenvalues.unaryExpr([floor](double v) { return v > floor ? std::sqrt(v) : 0.0; });
  return es.eigenvectors * roots.cast<Complex>().asDiagonal() * es.eigenvectors.adjoint();
}

double trace_norm(const ComplexMatrix& m) {
  return hermitian_eigenvalues(m).cwiseAbs().sum();
}

}  // namespace entcont
