#include "sdcar/modular.hpp"

#include <cmath>
#include <limits>

namespace sdcar {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Matrix coefficient_matrix(const Vector& psi, int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) {
    m.row(i) = psi.segment(static_cast<Eigen::Index>(i) * n, n).transpose();
  }
  return m;
}

}  // namespace

BipartiteVector schmidt(const Vector& psi, int n, double tol) {
  if (n < 1 || psi.size() != static_cast<Eigen::Index>(n) * n) {
    throw Error(ErrorCode::DimensionMismatch,
                "psi length != n^2 for n = " + std::to_string(n));
  }
  if (psi.norm() <= tol) {
    throw Error(ErrorCode::ZeroVector, "||psi|| below tol");
  }
  const Matrix m = coefficient_matrix(psi, n);
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);

  BipartiteVector out;
  out.psi = psi;
  out.n = n;
  out.coefficients = svd.singularValues();
  out.basis1 = svd.matrixU();
  // M = U diag(c) V*, so psi = sum_k c_k (U e_k) (x) (conj(V) e_k).
  out.basis2 = svd.matrixV().conjugate();
  out.cyclic_separating = out.coefficients.minCoeff() > tol;
  return out;
}

DensityMatrix make_density(const Matrix& rho, double tol) {
  if (rho.rows() != rho.cols()) {
    throw Error(ErrorCode::NotDensityMatrix, "not square");
  }
  if (hermiticity_residual(rho) > tol) {
    throw Error(ErrorCode::NotDensityMatrix, "not hermitian");
  }
  HermitianEigen eig = hermitian_eigen(rho, tol);
  if (eig.values.minCoeff() < -tol) {
    throw Error(ErrorCode::NotDensityMatrix,
                "negative eigenvalue " + std::to_string(eig.values.minCoeff()));
  }
  if (std::abs(rho.trace().real() - 1.0) > tol) {
    throw Error(ErrorCode::NotDensityMatrix,
                "trace = " + std::to_string(rho.trace().real()));
  }
  return {rho};
}

DensityMatrix reduced_density_1(const BipartiteVector& psi) {
  const Matrix m = coefficient_matrix(psi.psi, psi.n);
  return {m * m.adjoint()};
}

DensityMatrix reduced_density_2(const BipartiteVector& psi) {
  const Matrix m = coefficient_matrix(psi.psi, psi.n);
  return {(m.adjoint() * m).transpose()};
}

ModularPair modular_operator_bipartite(const BipartiteVector& psi,
                                       double tol) {
  if (psi.coefficients.minCoeff() <= tol) {
    throw Error(ErrorCode::NotSeparating,
                "psi has a Schmidt coefficient below tol");
  }
  const int n = psi.n;
  RealVector c2 = psi.coefficients.array().square();
  Matrix rho1 = Matrix::Zero(n, n);
  Matrix rho2_inv = Matrix::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    rho1 += c2[k] * psi.basis1.col(k) * psi.basis1.col(k).adjoint();
    rho2_inv +=
        (1.0 / c2[k]) * psi.basis2.col(k) * psi.basis2.col(k).adjoint();
  }
  ModularPair out;
  out.delta = kron(rho1, rho2_inv);

  // With real nonnegative Schmidt coefficients, J |u_j (x) v_i> =
  // |u_i (x) v_j>; as matrix-plus-conjugation this is
  // sum_{j,i} (u_i (x) v_j) (u_j (x) v_i)^T.
  out.j_matrix = Matrix::Zero(n * n, n * n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const Matrix target =
          kron(psi.basis1.col(i), psi.basis2.col(j));
      const Matrix source =
          kron(psi.basis1.col(j), psi.basis2.col(i));
      out.j_matrix += target * source.transpose();
    }
  }
  return out;
}

Matrix relative_modular_bipartite(const BipartiteVector& phi,
                                  const BipartiteVector& psi, double tol) {
  if (phi.n != psi.n) {
    throw Error(ErrorCode::DimensionMismatch, "phi and psi dims differ");
  }
  if (psi.coefficients.minCoeff() <= tol) {
    throw Error(ErrorCode::NotSeparating,
                "psi has a Schmidt coefficient below tol");
  }
  const int n = psi.n;
  const Matrix sigma1 = reduced_density_1(phi).rho;
  RealVector c2 = psi.coefficients.array().square();
  Matrix rho2_inv = Matrix::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    rho2_inv +=
        (1.0 / c2[k]) * psi.basis2.col(k) * psi.basis2.col(k).adjoint();
  }
  return kron(sigma1, rho2_inv);
}

double vn_relative_entropy(const DensityMatrix& rho,
                           const DensityMatrix& sigma, double tol) {
  if (rho.rho.rows() != sigma.rho.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "density matrix dims differ");
  }
  HermitianEigen rho_eig = hermitian_eigen(rho.rho, tol);
  HermitianEigen sigma_eig = hermitian_eigen(sigma.rho, tol);

  // Exact kernel eigenvalues come out of the solver at machine scale; the
  // log is taken for everything genuinely above it, so thermal weights as
  // small as e^{-30} are kept rather than misread as support violations.
  const double zero_floor = 1e-14 * std::max(1.0, sigma_eig.values.maxCoeff());

  double entropy = 0.0;
  for (Eigen::Index k = 0; k < rho_eig.values.size(); ++k) {
    const double p = rho_eig.values[k];
    if (p > zero_floor) entropy += p * std::log(p);
  }
  // Weight of rho on the kernel of sigma decides the +inf branch; weights
  // are summed over the whole near-kernel eigenspace so the verdict does
  // not depend on how a degenerate solver splits it.
  double unsupported = 0.0;
  for (Eigen::Index k = 0; k < sigma_eig.values.size(); ++k) {
    const double q = sigma_eig.values[k];
    const double weight =
        sigma_eig.vectors.col(k).dot(rho.rho * sigma_eig.vectors.col(k))
            .real();
    if (q <= zero_floor) {
      unsupported += weight;
      continue;
    }
    entropy -= weight * std::log(q);
  }
  if (unsupported > tol) return kInf;
  return entropy;
}

double araki_entropy_bipartite(const BipartiteVector& phi,
                               const BipartiteVector& psi, double tol) {
  const Matrix delta = relative_modular_bipartite(phi, psi, tol);
  HermitianEigen eig = hermitian_eigen(delta, std::max(tol, 1e-8));
  const double zero_floor = 1e-14 * std::max(1.0, eig.values.maxCoeff());
  double entropy = 0.0;
  double unsupported = 0.0;
  for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
    const double weight = std::norm(eig.vectors.col(k).dot(psi.psi));
    if (eig.values[k] <= zero_floor) {
      unsupported += weight;
      continue;
    }
    entropy -= weight * std::log(eig.values[k]);
  }
  if (unsupported > tol) return kInf;
  return entropy;
}

}  // namespace sdcar
