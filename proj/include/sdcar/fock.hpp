#pragma once

// Antisymmetric Fock space over the range of a basis projection, with
// Jordan-Wigner creation/annihilation matrices, field representation,
// second-quantized Hamiltonians and Gibbs density matrices. Operators are
// dense 2^m x 2^m matrices; basis states are occupation bitstrings with
// mode j mapped to bit j.

#include <optional>
#include <vector>

#include "sdcar/quasifree.hpp"

namespace sdcar {

class FockSpace {
 public:
  // Modes span range(P). With a generator, modes are the eigenvectors of
  // h restricted to range(P), sorted by ascending eigenvalue; without one
  // they come from the eigendecomposition of P itself. Either way each mode
  // is phase-fixed so builds are deterministic.
  FockSpace(const OneParticleSpace& space, const BasisPolarization& p,
            const DynamicsGenerator* gen = nullptr, double tol = kDefaultTol);

  int modes() const { return m_; }
  Eigen::Index dim() const { return Eigen::Index(1) << m_; }
  const Matrix& projection() const { return p_; }
  const std::vector<Vector>& mode_basis() const { return mode_basis_; }

  Vector vacuum() const;

 private:
  int m_;
  Matrix p_;
  std::vector<Vector> mode_basis_;
};

Matrix creation(const FockSpace& fock, int mode);
Matrix annihilation(const FockSpace& fock, int mode);

// pi(B(f)) = a*(P f) + a(P Gamma f); a *-map, C-linear in f, with
// pi(B(Gamma f)) = pi(B(f))*.
Matrix represent_field(const FockSpace& fock, const OneParticleSpace& space,
                       const Vector& f);

// H = sum_{jk} <e_j, h e_k> a*_j a_k. Requires range(P) invariant under h.
Matrix second_quantize(const FockSpace& fock, const OneParticleSpace& space,
                       const DynamicsGenerator& gen, double tol = kDefaultTol);

// e^{-beta H} / Tr e^{-beta H}.
Matrix gibbs_density(const Matrix& hamiltonian, double beta,
                     double tol = kDefaultTol);

}  // namespace sdcar
