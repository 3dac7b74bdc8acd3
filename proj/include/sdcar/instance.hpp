#pragma once

// Seeded random problem instances for sweeps and invariant checks.
// Deterministic given (seed, index) regardless of threading.

#include <cstdint>
#include <random>

#include "sdcar/hilbert.hpp"

namespace sdcar {

using Rng = std::mt19937_64;

Matrix random_complex_matrix(Rng& rng, int rows, int cols);
Vector random_complex_vector(Rng& rng, int dim);

// Haar-like unitary via QR of a Gaussian matrix, phase-fixed.
Matrix random_unitary(Rng& rng, int dim);

// Random involution K = U U^T: unitary with K conj(K) = 1.
OneParticleSpace random_space(Rng& rng, int dim);

// Gaussian hermitian h projected onto the Gamma h Gamma = -h subspace,
// rescaled to spectral radius max_energy and resampled until
// min |eigenvalue| >= gap * max_energy.
DynamicsGenerator random_generator(Rng& rng, const OneParticleSpace& space,
                                   double max_energy = 2.0, double gap = 0.05);

// Gamma-invariant field with (f, f) = 2 from a Gaussian seed.
FieldVector random_field(Rng& rng, const OneParticleSpace& space);

struct SweepInstance {
  std::uint64_t seed = 0;
  int index = 0;
  int dim = 0;
  double beta = 0.0;
};

// Instance index i of a sweep drawn from dims (cyclically) and
// beta ~ U[beta_min, beta_max]; the per-instance rng stream is decoupled
// from every other instance.
Rng instance_rng(std::uint64_t seed, int index);

}  // namespace sdcar
