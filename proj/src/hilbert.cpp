#include "sdcar/hilbert.hpp"

#include <cmath>

namespace sdcar {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::OddDimension: return "OddDimension";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::InvolutionSquareFails: return "InvolutionSquareFails";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::GammaIncompatible: return "GammaIncompatible";
    case ErrorCode::DegenerateSeed: return "DegenerateSeed";
    case ErrorCode::BetaNonPositive: return "BetaNonPositive";
    case ErrorCode::ZeroMode: return "ZeroMode";
    case ErrorCode::SpectrumOutOfRange: return "SpectrumOutOfRange";
    case ErrorCode::CompletenessFails: return "CompletenessFails";
    case ErrorCode::RankMismatch: return "RankMismatch";
    case ErrorCode::ModeOutOfRange: return "ModeOutOfRange";
    case ErrorCode::NotInvariant: return "NotInvariant";
    case ErrorCode::TooManyModes: return "TooManyModes";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::NotSeparating: return "NotSeparating";
    case ErrorCode::NotDensityMatrix: return "NotDensityMatrix";
    case ErrorCode::NotGammaInvariant: return "NotGammaInvariant";
    case ErrorCode::WrongNormalization: return "WrongNormalization";
    case ErrorCode::FlowIncompatible: return "FlowIncompatible";
    case ErrorCode::MasslessDegenerate: return "MasslessDegenerate";
    case ErrorCode::BadMode: return "BadMode";
    case ErrorCode::UsageError: return "UsageError";
    case ErrorCode::ConfigParseError: return "ConfigParseError";
  }
  return "UnknownError";
}

double hermiticity_residual(const Matrix& a) {
  return (a - a.adjoint()).norm();
}

HermitianEigen hermitian_eigen(const Matrix& a, double tol) {
  if (a.rows() != a.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "matrix is not square");
  }
  double res = hermiticity_residual(a);
  if (res > tol) {
    throw Error(ErrorCode::NotHermitian,
                "||a - a*|| = " + std::to_string(res));
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::NotHermitian, "eigendecomposition failed");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

Matrix hermitian_function(const Matrix& a,
                          const std::function<double(double)>& f, double tol) {
  HermitianEigen eig = hermitian_eigen(a, tol);
  RealVector mapped(eig.values.size());
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    mapped[i] = f(eig.values[i]);
  }
  return eig.vectors * mapped.asDiagonal() * eig.vectors.adjoint();
}

Matrix clamped_unit_sqrt(const Matrix& a, double tol) {
  return hermitian_function(
      a,
      [](double x) { return std::sqrt(std::min(1.0, std::max(0.0, x))); },
      tol);
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

double simpson(const std::function<double(double)>& f, double x0, double x1,
               int panels) {
  if (panels < 2 || panels % 2 != 0) {
    throw Error(ErrorCode::UsageError, "simpson needs an even panel count");
  }
  const double h = (x1 - x0) / panels;
  double acc = f(x0) + f(x1);
  for (int i = 1; i < panels; ++i) {
    acc += f(x0 + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
  }
  return acc * h / 3.0;
}

OneParticleSpace::OneParticleSpace(int dim, Matrix involution, double tol)
    : dim_(dim), k_(std::move(involution)) {
  if (dim_ < 2 || dim_ % 2 != 0) {
    throw Error(ErrorCode::OddDimension,
                "dim = " + std::to_string(dim_) + ", need even dim >= 2");
  }
  if (k_.rows() != dim_ || k_.cols() != dim_) {
    throw Error(ErrorCode::DimensionMismatch, "involution matrix is not d x d");
  }
  const Matrix id = Matrix::Identity(dim_, dim_);
  double unit_res = (k_ * k_.adjoint() - id).norm();
  if (unit_res > tol) {
    throw Error(ErrorCode::NotUnitary,
                "||K K* - 1|| = " + std::to_string(unit_res));
  }
  double invol_res = (k_ * k_.conjugate() - id).norm();
  if (invol_res > tol) {
    throw Error(ErrorCode::InvolutionSquareFails,
                "||K conj(K) - 1|| = " + std::to_string(invol_res));
  }
}

Vector OneParticleSpace::gamma(const Vector& v) const {
  if (v.size() != dim_) {
    throw Error(ErrorCode::DimensionMismatch, "vector length != dim");
  }
  return k_ * v.conjugate();
}

Matrix OneParticleSpace::gamma_conjugate(const Matrix& a) const {
  if (a.rows() != dim_ || a.cols() != dim_) {
    throw Error(ErrorCode::DimensionMismatch, "matrix is not d x d");
  }
  return k_ * a.conjugate() * k_.adjoint();
}

DynamicsGenerator::DynamicsGenerator(const OneParticleSpace& space, Matrix h,
                                     bool require_gamma_compatible, double tol)
    : h_(std::move(h)), gamma_compatible_(false) {
  if (h_.rows() != space.dim() || h_.cols() != space.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "hamiltonian is not d x d");
  }
  eig_ = hermitian_eigen(h_, tol);
  double anti_res = (space.gamma_conjugate(h_) + h_).norm();
  gamma_compatible_ = anti_res <= tol;
  if (require_gamma_compatible && !gamma_compatible_) {
    throw Error(ErrorCode::GammaIncompatible,
                "||Gamma h Gamma + h|| = " + std::to_string(anti_res));
  }
}

Vector DynamicsGenerator::evolve(double t, const Vector& v) const {
  if (v.size() != h_.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "vector length != dim");
  }
  Vector coeffs = eig_.vectors.adjoint() * v;
  for (Eigen::Index i = 0; i < coeffs.size(); ++i) {
    coeffs[i] *= std::exp(Complex(0.0, -t * eig_.values[i]));
  }
  return eig_.vectors * coeffs;
}

OneParticleSpace make_space(int dim, const Matrix& involution, double tol) {
  return OneParticleSpace(dim, involution, tol);
}

Vector gamma_apply(const OneParticleSpace& space, const Vector& v) {
  return space.gamma(v);
}

FieldVector make_gamma_invariant(const OneParticleSpace& space,
                                 const Vector& seed, double tol) {
  if (seed.size() != space.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "seed length != dim");
  }
  Vector candidate = seed + space.gamma(seed);
  if (candidate.norm() <= tol) {
    candidate = Complex(0.0, 1.0) * (seed - space.gamma(seed));
  }
  if (candidate.norm() <= tol) {
    throw Error(ErrorCode::DegenerateSeed,
                "both (1 + Gamma) h and i (1 - Gamma) h are below tol");
  }
  FieldVector f;
  f.v = candidate * (std::sqrt(2.0) / candidate.norm());
  f.gamma_invariant = true;
  f.norm_sq = f.v.squaredNorm();
  return f;
}

std::vector<Vector> gamma_invariant_basis(const OneParticleSpace& space,
                                          double tol) {
  const int d = space.dim();
  std::vector<Vector> basis;
  basis.reserve(d);
  for (int i = 0; i < d && static_cast<int>(basis.size()) < d; ++i) {
    Vector e = Vector::Zero(d);
    e[i] = 1.0;
    const Vector ge = space.gamma(e);
    Vector candidates[2] = {e + ge, Complex(0.0, 1.0) * (e - ge)};
    for (Vector& c : candidates) {
      if (static_cast<int>(basis.size()) == d) break;
      // Inner products between Gamma-invariant vectors are real, so
      // projecting with the real part keeps the residual invariant.
      for (const Vector& b : basis) {
        c -= b.dot(c).real() * b;
      }
      if (c.norm() < tol) continue;
      basis.push_back(c / c.norm());
    }
  }
  if (static_cast<int>(basis.size()) != d) {
    // Existence is guaranteed; reaching this means the involution was bad.
    throw Error(ErrorCode::InvolutionSquareFails,
                "Gamma-invariant candidates did not span the space");
  }
  return basis;
}

Vector evolve(const OneParticleSpace& space, const DynamicsGenerator& gen,
              double t, const Vector& v) {
  if (v.size() != space.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "vector length != dim");
  }
  return gen.evolve(t, v);
}

}  // namespace sdcar
