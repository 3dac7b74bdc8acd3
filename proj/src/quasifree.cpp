#include "sdcar/quasifree.hpp"

#include <cmath>

namespace sdcar {

namespace {

PolarizationReport inspect(const OneParticleSpace& space, const Matrix& s,
                           double tol) {
  PolarizationReport report;
  if (s.rows() != space.dim() || s.cols() != space.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "S is not d x d");
  }
  report.hermiticity_residual = hermiticity_residual(s);
  if (report.hermiticity_residual > tol) {
    report.pass = false;
    return report;
  }
  HermitianEigen eig = hermitian_eigen(s, tol);
  report.spectrum_min = eig.values.minCoeff();
  report.spectrum_max = eig.values.maxCoeff();
  report.spectrum_in_range =
      report.spectrum_min >= -tol && report.spectrum_max <= 1.0 + tol;
  report.completeness_residual =
      (s + space.gamma_conjugate(s) - Matrix::Identity(s.rows(), s.cols()))
          .norm();
  report.idempotence_residual = (s * s - s).norm();
  report.faithful = report.spectrum_min >= kFaithfulTol &&
                    report.spectrum_max <= 1.0 - kFaithfulTol;
  report.projection = report.idempotence_residual <= tol;
  report.pass = report.spectrum_in_range &&
                report.completeness_residual <= tol &&
                report.hermiticity_residual <= tol;
  return report;
}

}  // namespace

BasisPolarization::BasisPolarization(const OneParticleSpace& space, Matrix s,
                                     double tol)
    : s_(std::move(s)) {
  PolarizationReport report = inspect(space, s_, tol);
  if (report.hermiticity_residual > tol) {
    throw Error(ErrorCode::NotHermitian,
                "||S - S*|| = " + std::to_string(report.hermiticity_residual));
  }
  if (!report.spectrum_in_range) {
    throw Error(ErrorCode::SpectrumOutOfRange,
                "spectrum in [" + std::to_string(report.spectrum_min) + ", " +
                    std::to_string(report.spectrum_max) + "]");
  }
  if (report.completeness_residual > tol) {
    throw Error(ErrorCode::CompletenessFails,
                "||S + Gamma S Gamma - 1|| = " +
                    std::to_string(report.completeness_residual));
  }
  faithful_ = report.faithful;
  projection_ = report.projection;
}

PolarizationReport validate_polarization(const OneParticleSpace& space,
                                         const Matrix& s, double tol) {
  try {
    return inspect(space, s, tol);
  } catch (const Error&) {
    PolarizationReport report;
    report.pass = false;
    return report;
  }
}

BasisPolarization kms_polarization(const OneParticleSpace& space,
                                   const DynamicsGenerator& gen, double beta,
                                   double tol) {
  if (beta <= 0.0) {
    throw Error(ErrorCode::BetaNonPositive, "beta = " + std::to_string(beta));
  }
  Matrix s = gen.eigenvectors() *
             gen.eigenvalues()
                 .unaryExpr([beta](double e) {
                   return 1.0 / (1.0 + std::exp(-beta * e));
                 })
                 .asDiagonal()
                 .toDenseMatrix()
                 .cast<Complex>() *
             gen.eigenvectors().adjoint();
  return BasisPolarization(space, std::move(s), tol);
}

BasisPolarization ground_projection(const OneParticleSpace& space,
                                    const DynamicsGenerator& gen, double tol) {
  double min_abs = gen.eigenvalues().cwiseAbs().minCoeff();
  if (min_abs <= tol) {
    throw Error(ErrorCode::ZeroMode,
                "|eigenvalue| = " + std::to_string(min_abs) +
                    " makes the positive-spectrum projection ambiguous");
  }
  Matrix p = gen.eigenvectors() *
             gen.eigenvalues()
                 .unaryExpr([](double e) { return e > 0.0 ? 1.0 : 0.0; })
                 .asDiagonal()
                 .toDenseMatrix()
                 .cast<Complex>() *
             gen.eigenvectors().adjoint();
  return BasisPolarization(space, std::move(p), tol);
}

BasisPolarization basis_projection_from_pairing(const OneParticleSpace& space,
                                                double tol) {
  const std::vector<Vector> basis = gamma_invariant_basis(space, tol);
  const int d = space.dim();
  Matrix p = Matrix::Zero(d, d);
  for (int n = 0; n < d / 2; ++n) {
    Vector u = (basis[2 * n + 1] + Complex(0.0, 1.0) * basis[2 * n]) /
               std::sqrt(2.0);
    p += u * u.adjoint();
  }
  return BasisPolarization(space, std::move(p), tol);
}

std::pair<OneParticleSpace, BasisPolarization> doubling(
    const OneParticleSpace& space, const BasisPolarization& s, double tol) {
  const int d = space.dim();
  const Matrix& sm = s.matrix();
  const Matrix id = Matrix::Identity(d, d);
  Matrix off = clamped_unit_sqrt(sm, tol) * clamped_unit_sqrt(id - sm, tol);

  Matrix k2 = Matrix::Zero(2 * d, 2 * d);
  k2.topLeftCorner(d, d) = space.involution_matrix();
  k2.bottomRightCorner(d, d) = -space.involution_matrix();
  OneParticleSpace doubled(2 * d, std::move(k2), tol);

  Matrix ps(2 * d, 2 * d);
  ps.topLeftCorner(d, d) = sm;
  ps.topRightCorner(d, d) = off;
  ps.bottomLeftCorner(d, d) = off;
  ps.bottomRightCorner(d, d) = id - sm;
  BasisPolarization projection(doubled, std::move(ps), tol);
  return {std::move(doubled), std::move(projection)};
}

Complex two_point(const BasisPolarization& s, const Vector& f,
                  const Vector& g) {
  if (f.size() != s.dim() || g.size() != s.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "field length != dim");
  }
  return f.dot(s.matrix() * g);
}

namespace {

// Signed sum over pairings with each pair ascending and pairs ordered by
// their first element; pairing the front index with the k-th remaining
// element carries sign (-1)^{k-1}.
Complex pairing_sum(const Matrix& kernel, const std::vector<int>& active) {
  if (active.empty()) return Complex(1.0, 0.0);
  const int first = active.front();
  Complex total(0.0, 0.0);
  double sign = 1.0;
  for (std::size_t k = 1; k < active.size(); ++k, sign = -sign) {
    const int partner = active[k];
    std::vector<int> rest;
    rest.reserve(active.size() - 2);
    for (std::size_t j = 1; j < active.size(); ++j) {
      if (j != k) rest.push_back(active[j]);
    }
    total += sign * kernel(first, partner) * pairing_sum(kernel, rest);
  }
  return total;
}

}  // namespace

Complex n_point(const OneParticleSpace& space, const BasisPolarization& s,
                const std::vector<Vector>& fields) {
  const int n = static_cast<int>(fields.size());
  if (n % 2 != 0) return Complex(0.0, 0.0);
  if (n == 0) return Complex(1.0, 0.0);
  for (const Vector& f : fields) {
    if (f.size() != s.dim()) {
      throw Error(ErrorCode::DimensionMismatch, "field length != dim");
    }
  }
  Matrix kernel = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const Vector gf = space.gamma(fields[i]);
    for (int j = i + 1; j < n; ++j) {
      kernel(i, j) = gf.dot(s.matrix() * fields[j]);
    }
  }
  std::vector<int> active(n);
  for (int i = 0; i < n; ++i) active[i] = i;
  return pairing_sum(kernel, active);
}

}  // namespace sdcar
