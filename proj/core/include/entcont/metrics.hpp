#pragma once

#include <span>
#include <vector>

#include "entcont/linalg.hpp"
#include "entcont/states.hpp"

namespace entcont {

// Non-negative weights summing to one (within 1e-9).
class ProbVector {
 public:
  explicit ProbVector(std::vector<double> p);

  std::size_t size() const noexcept { return p_.size(); }
  double operator[](std::size_t i) const { return p_[i]; }
  std::span<const double> values() const noexcept { return p_; }

 private:
  std::vector<double> p_;
};

// All logarithms are base 2.

/// -x log2 x, with eta(0) = 0. Domain [0, 1].
double eta(double x);

/// -sum p log2 p over a clamped spectrum (no normalization check).
double entropy_of_spectrum(const RealVector& eigenvalues);

double entropy(const DensityMatrix& rho);
double shannon(const ProbVector& p);

/// tr|rho - sigma|, range [0, 2].
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);
double trace_distance(const PureState& psi, const PureState& phi);

/// tr sqrt(rho^{1/2} sigma rho^{1/2}), clamped to [0, 1].
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

/// 2 sqrt(1 - F).
double bures_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

// Purifications of rho and sigma on system (x) reference whose overlap
// attains the fidelity.
struct UhlmannPair {
  PureState pur_rho;
  PureState pur_sigma;
  double achieved_overlap = 0.0;
  // Reference-side unitary V with pur_sigma = (I (x) V) purify(sigma, ref_dim).
  ComplexMatrix reference_unitary;
};

UhlmannPair uhlmann_purifications(const DensityMatrix& rho, const DensityMatrix& sigma,
                                  Index ref_dim);

}  // namespace entcont
