#pragma once

// Finite-dimensional one-particle Hilbert spaces carrying an antiunitary
// involution Gamma, plus hermitian dynamics generators and Gamma-invariant
// field vectors. Gamma is stored as a unitary matrix K composed with
// entrywise conjugation: Gamma v = K conj(v).

#include <vector>

#include "sdcar/linalg.hpp"
#include "sdcar/types.hpp"

namespace sdcar {

class OneParticleSpace {
 public:
  // Validates: d even and >= 2, K d x d, K K* = 1, K conj(K) = 1.
  OneParticleSpace(int dim, Matrix involution, double tol = kDefaultTol);

  int dim() const { return dim_; }
  const Matrix& involution_matrix() const { return k_; }

  Vector gamma(const Vector& v) const;

  // The involution conjugated onto matrices: Gamma A Gamma = K conj(A) K*.
  Matrix gamma_conjugate(const Matrix& a) const;

 private:
  int dim_;
  Matrix k_;
};

class DynamicsGenerator {
 public:
  // Validates h = h*. When require_gamma_compatible is set, also checks
  // Gamma h Gamma = -h, the condition for [V_t, Gamma] = 0.
  DynamicsGenerator(const OneParticleSpace& space, Matrix h,
                    bool require_gamma_compatible = true,
                    double tol = kDefaultTol);

  const Matrix& hamiltonian() const { return h_; }
  const RealVector& eigenvalues() const { return eig_.values; }
  const Matrix& eigenvectors() const { return eig_.vectors; }
  bool gamma_compatible() const { return gamma_compatible_; }

  // exp(-i t h) v through the cached eigendecomposition.
  Vector evolve(double t, const Vector& v) const;

 private:
  Matrix h_;
  HermitianEigen eig_;
  bool gamma_compatible_;
};

struct FieldVector {
  Vector v;
  bool gamma_invariant = false;
  double norm_sq = 0.0;
};

OneParticleSpace make_space(int dim, const Matrix& involution,
                            double tol = kDefaultTol);

Vector gamma_apply(const OneParticleSpace& space, const Vector& v);

// Builds f with Gamma f = f and (f, f) = 2 from an arbitrary nonzero seed:
// (1 + Gamma) h when that has norm above tol, else i (1 - Gamma) h.
FieldVector make_gamma_invariant(const OneParticleSpace& space,
                                 const Vector& seed, double tol = kDefaultTol);

// d orthonormal Gamma-invariant vectors, by Gram-Schmidt over the candidates
// (1 + Gamma) e_i, i (1 - Gamma) e_i taken in index order.
std::vector<Vector> gamma_invariant_basis(const OneParticleSpace& space,
                                          double tol = kDefaultTol);

Vector evolve(const OneParticleSpace& space, const DynamicsGenerator& gen,
              double t, const Vector& v);

}  // namespace sdcar
