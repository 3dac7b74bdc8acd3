#include "sdcar/instance.hpp"

#include <cmath>

namespace sdcar {

Matrix random_complex_matrix(Rng& rng, int rows, int cols) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      m(i, j) = Complex(gauss(rng), gauss(rng));
    }
  }
  return m;
}

Vector random_complex_vector(Rng& rng, int dim) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector v(dim);
  for (int i = 0; i < dim; ++i) {
    v[i] = Complex(gauss(rng), gauss(rng));
  }
  return v;
}

Matrix random_unitary(Rng& rng, int dim) {
  const Matrix g = random_complex_matrix(rng, dim, dim);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the phase ambiguity of QR so draws are well distributed.
  for (int j = 0; j < dim; ++j) {
    const Complex diag = r(j, j);
    if (std::abs(diag) > 0.0) {
      q.col(j) *= diag / std::abs(diag);
    }
  }
  return q;
}

OneParticleSpace random_space(Rng& rng, int dim) {
  const Matrix u = random_unitary(rng, dim);
  return OneParticleSpace(dim, u * u.transpose());
}

DynamicsGenerator random_generator(Rng& rng, const OneParticleSpace& space,
                                   double max_energy, double gap) {
  const int d = space.dim();
  for (int attempt = 0; attempt < 256; ++attempt) {
    const Matrix g = random_complex_matrix(rng, d, d);
    Matrix h = (g + g.adjoint()) / 2.0;
    h = (h - space.gamma_conjugate(h)) / 2.0;
    HermitianEigen eig = hermitian_eigen(h);
    const double radius = eig.values.cwiseAbs().maxCoeff();
    if (radius <= 0.0) continue;
    h *= max_energy / radius;
    if (eig.values.cwiseAbs().minCoeff() * (max_energy / radius) <
        gap * max_energy) {
      continue;
    }
    return DynamicsGenerator(space, std::move(h));
  }
  throw Error(ErrorCode::ZeroMode,
              "could not draw a gapped Gamma-compatible hamiltonian");
}

FieldVector random_field(Rng& rng, const OneParticleSpace& space) {
  return make_gamma_invariant(space, random_complex_vector(rng, space.dim()));
}

Rng instance_rng(std::uint64_t seed, int index) {
  std::seed_seq seq{seed, static_cast<std::uint64_t>(index) + 1};
  return Rng(seq);
}

}  // namespace sdcar
