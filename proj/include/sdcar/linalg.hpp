#pragma once

// Dense hermitian matrix functions. Matrix exponentials, logarithms and
// square roots all go through SelfAdjointEigenSolver; non-hermitian inputs
// are rejected rather than silently symmetrized.

#include <functional>

#include "sdcar/types.hpp"

namespace sdcar {

struct HermitianEigen {
  RealVector values;  // ascending
  Matrix vectors;     // columns
};

double hermiticity_residual(const Matrix& a);

// Throws NotHermitian when ||a - a*||_F exceeds tol.
HermitianEigen hermitian_eigen(const Matrix& a, double tol = kDefaultTol);

// U f(diag) U* for hermitian a.
Matrix hermitian_function(const Matrix& a,
                          const std::function<double(double)>& f,
                          double tol = kDefaultTol);

// sqrt with eigenvalues clamped to [0, 1] first, so that -1e-16 rounding on
// a polarization spectrum cannot produce NaN.
Matrix clamped_unit_sqrt(const Matrix& a, double tol = kDefaultTol);

Matrix kron(const Matrix& a, const Matrix& b);

// Simpson rule on [x0, x1] with an even number of panels.
double simpson(const std::function<double(double)>& f, double x0, double x1,
               int panels);

}  // namespace sdcar
