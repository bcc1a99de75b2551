#pragma once

#include <cstdint>
#include <random>
#include <span>

#include "entcont/linalg.hpp"

namespace entcont {

class PureState;

// Hermitian, positive-semidefinite, unit-trace operator. Construction
// validates all three; afterwards the value is immutable.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix mat);

  static DensityMatrix from_pure(const PureState& psi);
  static DensityMatrix maximally_mixed(Index dim);
  static DensityMatrix diagonal(std::span<const double> probabilities);

  Index dim() const noexcept { return mat_.rows(); }
  const ComplexMatrix& matrix() const noexcept { return mat_; }

  double purity() const;

 private:
  ComplexMatrix mat_;
};

class PureState {
 public:
  explicit PureState(ComplexVector amplitudes);

  /// Rescales `amplitudes` to unit norm; throws InvalidState on a zero vector.
  static PureState normalized(ComplexVector amplitudes);
  static PureState basis(Index dim, Index index);

  Index dim() const noexcept { return amps_.size(); }
  const ComplexVector& amplitudes() const noexcept { return amps_; }
  ComplexMatrix projector() const { return amps_ * amps_.adjoint(); }

 private:
  ComplexVector amps_;
};

struct BipartiteDims {
  Index a = 1;  // d, system A
  Index b = 1;  // d', system B

  BipartiteDims() = default;
  BipartiteDims(Index da, Index db);

  Index total() const noexcept { return a * b; }
  friend bool operator==(const BipartiteDims&, const BipartiteDims&) = default;
};

enum class Subsystem { A, B };

// A density matrix on A (x) B with composite index a*dB + b.
class BipartiteState {
 public:
  BipartiteState(BipartiteDims dims, DensityMatrix rho);

  static BipartiteState from_pure(const PureState& psi, BipartiteDims dims);

  const BipartiteDims& dims() const noexcept { return dims_; }
  const DensityMatrix& rho() const noexcept { return rho_; }

 private:
  BipartiteDims dims_;
  DensityMatrix rho_;
};

// Seed for one deterministic sample stream; each (seed, stream) pair maps to
// its own independent engine.
struct RngSeed {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

using Engine = std::mt19937_64;

Engine make_engine(RngSeed seed);

/// Traces out every factor except `keep` from an operator on the tensor
/// product of `factors` (first factor is the slowest index).
ComplexMatrix reduce_to(const ComplexMatrix& m, std::span<const Index> factors,
                        std::span<const std::size_t> keep);

/// Reduced operator of a bipartite matrix. No state validation.
ComplexMatrix partial_trace(const ComplexMatrix& m, BipartiteDims dims, Subsystem keep);

DensityMatrix partial_trace(const BipartiteState& state, Subsystem keep);

/// Reduced state of a pure bipartite vector, computed as M M^dagger (keep=A)
/// or M^T conj(M) (keep=B) on the dA x dB amplitude matrix.
ComplexMatrix reduced_from_pure(const ComplexVector& amplitudes, BipartiteDims dims,
                                Subsystem keep);

/// Spectral purification sum_i sqrt(l_i) |e_i>|i> on dim * ref_dim, system
/// first. Throws RefTooSmall when ref_dim is below the rank.
PureState purify(const DensityMatrix& rho, Index ref_dim);

/// Numerical rank: eigenvalues above tol::psd.
Index numerical_rank(const DensityMatrix& rho);

PureState sample_haar_pure(Index dim, Engine& rng);
PureState sample_haar_pure(Index dim, RngSeed seed);

/// Induced-measure state: partial trace of a Haar vector on dim * ancilla_dim.
DensityMatrix sample_density(Index dim, Index ancilla_dim, Engine& rng);
DensityMatrix sample_density(Index dim, Index ancilla_dim, RngSeed seed);

/// Haar-distributed unitary (QR of a complex Ginibre matrix with the
/// diagonal phases of R divided out).
ComplexMatrix sample_haar_unitary(Index dim, Engine& rng);

/// (1 - amplitude) rho + amplitude * rho_random, rho_random full-rank induced.
DensityMatrix perturb(const DensityMatrix& rho, double amplitude, Engine& rng);
DensityMatrix perturb(const DensityMatrix& rho, double amplitude, RngSeed seed);

/// normalize((1 - amplitude) psi + amplitude * chi) with chi Haar; amplitude 1
/// gives an independent Haar state.
PureState perturb_pure(const PureState& psi, double amplitude, Engine& rng);

}  // namespace entcont
