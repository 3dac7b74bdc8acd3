#pragma once

// Type-I Tomita-Takesaki machinery on bipartite vectors: Schmidt
// decompositions, modular and relative modular operators, von Neumann
// relative entropy, and the Araki entropy computed through log of the
// relative modular operator.

#include "sdcar/linalg.hpp"

namespace sdcar {

// Vector in H1 (x) H2 with dim H1 = dim H2 = n; psi[i*n + j] multiplies
// |i> (x) |j>. Schmidt coefficients are real nonnegative, descending;
// phases are absorbed into the second basis.
struct BipartiteVector {
  Vector psi;
  int n = 0;
  RealVector coefficients;
  Matrix basis1;  // columns u_k
  Matrix basis2;  // columns v_k, psi = sum_k c_k u_k (x) v_k
  bool cyclic_separating = false;
};

BipartiteVector schmidt(const Vector& psi, int n, double tol = kDefaultTol);

struct DensityMatrix {
  Matrix rho;
};

// Validates rho = rho*, rho >= -tol, Tr rho = 1 within tol.
DensityMatrix make_density(const Matrix& rho, double tol = kDefaultTol);

DensityMatrix reduced_density_1(const BipartiteVector& psi);
DensityMatrix reduced_density_2(const BipartiteVector& psi);

// Delta_Psi = rho_1 (x) rho_2^{-1} together with the modular conjugation,
// stored as J x = j_matrix * conj(x).
struct ModularPair {
  Matrix delta;
  Matrix j_matrix;
};

ModularPair modular_operator_bipartite(const BipartiteVector& psi,
                                       double tol = kDefaultTol);

// Delta_{Phi|Psi} = sigma_1 (x) rho_2^{-1}; phi need not be separating.
Matrix relative_modular_bipartite(const BipartiteVector& phi,
                                  const BipartiteVector& psi,
                                  double tol = kDefaultTol);

// Tr rho (ln rho - ln sigma) on the support of rho; +infinity when rho has
// weight outside the support of sigma.
double vn_relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma,
                           double tol = kDefaultTol);

// -<Psi, log Delta_{Phi|Psi} Psi>, evaluated spectrally. Agrees with
// vn_relative_entropy(rho_1, sigma_1).
double araki_entropy_bipartite(const BipartiteVector& phi,
                               const BipartiteVector& psi,
                               double tol = kDefaultTol);

}  // namespace sdcar
