#pragma once

// Generators and brute-force reference routines for the test suites. Nothing
// here calls into the library's linear-algebra paths, so the oracles stay
// independent of the code they check.

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace testing {

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline Vec gaussian_vector(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Vec v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = Complex(normal(rng), normal(rng));
  return v;
}

inline Mat random_hermitian(Eigen::Index n, std::mt19937_64& rng) {
  Mat g(n, n);
  for (Eigen::Index c = 0; c < n; ++c) g.col(c) = gaussian_vector(n, rng);
  return 0.5 * (g + g.adjoint());
}

/// G G^dagger / tr, rank = min(n, k).
inline Mat random_density(Eigen::Index n, Eigen::Index k, std::mt19937_64& rng) {
  Mat g(n, k);
  for (Eigen::Index c = 0; c < k; ++c) g.col(c) = gaussian_vector(n, rng);
  Mat rho = g * g.adjoint();
  return rho / rho.trace().real();
}

/// Gram-Schmidt on a Gaussian matrix.
inline Mat random_unitary(Eigen::Index n, std::mt19937_64& rng) {
  Mat u(n, n);
  for (Eigen::Index c = 0; c < n; ++c) {
    Vec v = gaussian_vector(n, rng);
    for (Eigen::Index p = 0; p < c; ++p) v -= u.col(p).dot(v) * u.col(p);
    u.col(c) = v / v.norm();
  }
  return u;
}

inline Vec random_unit(Eigen::Index n, std::mt19937_64& rng) {
  Vec v = gaussian_vector(n, rng);
  return v / v.norm();
}

/// Element-by-element partial trace with composite index a * dB + b.
inline Mat trace_out_b(const Mat& m, Eigen::Index da, Eigen::Index db) {
  Mat out = Mat::Zero(da, da);
  for (Eigen::Index a1 = 0; a1 < da; ++a1)
    for (Eigen::Index a2 = 0; a2 < da; ++a2)
      for (Eigen::Index b = 0; b < db; ++b) out(a1, a2) += m(a1 * db + b, a2 * db + b);
  return out;
}

inline Mat trace_out_a(const Mat& m, Eigen::Index da, Eigen::Index db) {
  Mat out = Mat::Zero(db, db);
  for (Eigen::Index b1 = 0; b1 < db; ++b1)
    for (Eigen::Index b2 = 0; b2 < db; ++b2)
      for (Eigen::Index a = 0; a < da; ++a) out(b1, b2) += m(a * db + b1, a * db + b2);
  return out;
}

inline double binary_entropy(double p) {
  auto term = [](double x) { return x > 0.0 ? -x * std::log2(x) : 0.0; };
  return term(p) + term(1.0 - p);
}

inline double max_abs_diff(const Mat& a, const Mat& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace testing
