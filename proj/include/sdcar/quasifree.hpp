#pragma once

// Basis polarizations and projections, the KMS polarization S =
// (1 + e^{-beta h})^{-1}, the doubled-space projection P_S, and quasifree
// n-point functions over the self-dual CAR algebra.

#include <utility>
#include <vector>

#include "sdcar/hilbert.hpp"

namespace sdcar {

// Hermitian S with 0 <= S <= 1 and S + Gamma S Gamma = 1; the two-point
// kernel of a quasifree state. Idempotent instances are basis projections.
class BasisPolarization {
 public:
  BasisPolarization(const OneParticleSpace& space, Matrix s,
                    double tol = kDefaultTol);

  const Matrix& matrix() const { return s_; }
  int dim() const { return static_cast<int>(s_.rows()); }

  // Spectrum inside [tol_f, 1 - tol_f]: Tomita theory applies.
  bool faithful() const { return faithful_; }
  // S^2 = S within tol: pure Fock state.
  bool projection() const { return projection_; }

 private:
  Matrix s_;
  bool faithful_;
  bool projection_;
};

struct PolarizationReport {
  double hermiticity_residual = 0.0;
  double spectrum_min = 0.0;
  double spectrum_max = 0.0;
  double completeness_residual = 0.0;  // ||S + Gamma S Gamma - 1||
  double idempotence_residual = 0.0;   // ||S^2 - S||
  bool spectrum_in_range = false;
  bool faithful = false;
  bool projection = false;
  bool pass = false;
};

// Diagnostic form of the BasisPolarization invariants; never throws.
PolarizationReport validate_polarization(const OneParticleSpace& space,
                                         const Matrix& s,
                                         double tol = kDefaultTol);

// S = (1 + e^{-beta h})^{-1}; faithful, commutes with h.
BasisPolarization kms_polarization(const OneParticleSpace& space,
                                   const DynamicsGenerator& gen, double beta,
                                   double tol = kDefaultTol);

// Spectral projection onto the positive part of the spectrum of h. Throws
// ZeroMode when an eigenvalue sits within tol of zero.
BasisPolarization ground_projection(const OneParticleSpace& space,
                                    const DynamicsGenerator& gen,
                                    double tol = kDefaultTol);

// Rank-d/2 projection onto span{(f_{2n} + i f_{2n-1}) / sqrt(2)} over a
// Gamma-invariant orthonormal basis {f_i}.
BasisPolarization basis_projection_from_pairing(const OneParticleSpace& space,
                                                double tol = kDefaultTol);

// Doubled space (dim 2d, involution K + (-K)) with the basis projection
//   P_S = [ S                  S^{1/2}(1-S)^{1/2} ]
//         [ S^{1/2}(1-S)^{1/2} 1 - S              ].
std::pair<OneParticleSpace, BasisPolarization> doubling(
    const OneParticleSpace& space, const BasisPolarization& s,
    double tol = kDefaultTol);

// phi(B*(f) B(g)) = (f, S g), conjugate-linear in f.
Complex two_point(const BasisPolarization& s, const Vector& f,
                  const Vector& g);

// Quasifree n-point function: 0 for odd n, the signed ordered-pair-partition
// sum of pair kernels omega(B(f_i) B(f_j)) = (Gamma f_i, S f_j) for even n.
Complex n_point(const OneParticleSpace& space, const BasisPolarization& s,
                const std::vector<Vector>& fields);

}  // namespace sdcar
