#include "sdcar/fock.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace sdcar {

namespace {

// Phase-normalize so the first component above threshold is real positive.
Vector phase_fixed(const Vector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) > 1e-8) {
      return v * (std::conj(v[i]) / std::abs(v[i]));
    }
  }
  return v;
}

bool lexicographic_less(const Vector& a, const Vector& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i].real() != b[i].real()) return a[i].real() < b[i].real();
    if (a[i].imag() != b[i].imag()) return a[i].imag() < b[i].imag();
  }
  return false;
}

double jw_sign(Eigen::Index state, int mode) {
  const auto below = static_cast<unsigned long long>(state) &
                     ((1ULL << static_cast<unsigned>(mode)) - 1ULL);
  return std::popcount(below) % 2 == 0 ? 1.0 : -1.0;
}

}  // namespace

FockSpace::FockSpace(const OneParticleSpace& space, const BasisPolarization& p,
                     const DynamicsGenerator* gen, double tol)
    : p_(p.matrix()) {
  const int d = space.dim();
  m_ = d / 2;
  if (m_ > kMaxFockModes) {
    throw Error(ErrorCode::TooManyModes,
                std::to_string(m_) + " modes exceed the dense cap of " +
                    std::to_string(kMaxFockModes));
  }
  if (!p.projection()) {
    throw Error(ErrorCode::RankMismatch,
                "polarization is not idempotent; only basis projections "
                "carry a Fock space");
  }
  double rank = p_.trace().real();
  if (std::abs(rank - m_) > tol * d) {
    throw Error(ErrorCode::RankMismatch,
                "trace(P) = " + std::to_string(rank) + ", expected d/2 = " +
                    std::to_string(m_));
  }

  // Unit-eigenvalue eigenvectors of P (ascending order puts them last).
  HermitianEigen eig = hermitian_eigen(p_, tol);
  Matrix range(d, m_);
  for (int j = 0; j < m_; ++j) {
    range.col(j) = eig.vectors.col(d - m_ + j);
  }

  std::vector<std::pair<double, Vector>> modes;
  modes.reserve(m_);
  if (gen != nullptr) {
    // Diagonalize h compressed onto range(P).
    Matrix h_small = range.adjoint() * gen->hamiltonian() * range;
    HermitianEigen small = hermitian_eigen(h_small, std::max(tol, 1e-8));
    for (int j = 0; j < m_; ++j) {
      modes.emplace_back(small.values[j],
                         phase_fixed(range * small.vectors.col(j)));
    }
  } else {
    for (int j = 0; j < m_; ++j) {
      modes.emplace_back(static_cast<double>(j), phase_fixed(range.col(j)));
    }
  }
  std::stable_sort(modes.begin(), modes.end(),
                   [](const auto& a, const auto& b) {
                     if (a.first != b.first) return a.first < b.first;
                     return lexicographic_less(a.second, b.second);
                   });
  mode_basis_.reserve(m_);
  for (auto& mode : modes) {
    mode_basis_.push_back(std::move(mode.second));
  }
}

Vector FockSpace::vacuum() const {
  Vector v = Vector::Zero(dim());
  v[0] = 1.0;
  return v;
}

Matrix creation(const FockSpace& fock, int mode) {
  if (mode < 0 || mode >= fock.modes()) {
    throw Error(ErrorCode::ModeOutOfRange, "mode " + std::to_string(mode));
  }
  const Eigen::Index n = fock.dim();
  Matrix a_dag = Matrix::Zero(n, n);
  const Eigen::Index bit = Eigen::Index(1) << mode;
  for (Eigen::Index s = 0; s < n; ++s) {
    if ((s & bit) == 0) {
      a_dag(s | bit, s) = jw_sign(s, mode);
    }
  }
  return a_dag;
}

Matrix annihilation(const FockSpace& fock, int mode) {
  return creation(fock, mode).adjoint();
}

Matrix represent_field(const FockSpace& fock, const OneParticleSpace& space,
                       const Vector& f) {
  if (f.size() != space.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "field length != dim");
  }
  const Vector pf = fock.projection() * f;
  const Vector pgf = fock.projection() * space.gamma(f);
  const Eigen::Index n = fock.dim();
  Matrix op = Matrix::Zero(n, n);
  for (int j = 0; j < fock.modes(); ++j) {
    const Complex create_coeff = fock.mode_basis()[j].dot(pf);
    const Complex annihilate_coeff = std::conj(fock.mode_basis()[j].dot(pgf));
    if (create_coeff == Complex(0.0, 0.0) &&
        annihilate_coeff == Complex(0.0, 0.0)) {
      continue;
    }
    const Eigen::Index bit = Eigen::Index(1) << j;
    for (Eigen::Index s = 0; s < n; ++s) {
      if ((s & bit) == 0) {
        const double sign = jw_sign(s, j);
        op(s | bit, s) += sign * create_coeff;
        op(s, s | bit) += sign * annihilate_coeff;
      }
    }
  }
  return op;
}

Matrix second_quantize(const FockSpace& fock, const OneParticleSpace& space,
                       const DynamicsGenerator& gen, double tol) {
  const int d = space.dim();
  const Matrix& h = gen.hamiltonian();
  const Matrix leak =
      (Matrix::Identity(d, d) - fock.projection()) * h * fock.projection();
  if (leak.norm() > tol * std::max(1.0, h.norm())) {
    throw Error(ErrorCode::NotInvariant,
                "||(1 - P) h P|| = " + std::to_string(leak.norm()));
  }
  const int m = fock.modes();
  Matrix h_modes(m, m);
  for (int j = 0; j < m; ++j) {
    for (int k = 0; k < m; ++k) {
      h_modes(j, k) = fock.mode_basis()[j].dot(h * fock.mode_basis()[k]);
    }
  }
  const Eigen::Index n = fock.dim();
  Matrix big = Matrix::Zero(n, n);
  for (Eigen::Index s = 0; s < n; ++s) {
    for (int k = 0; k < m; ++k) {
      const Eigen::Index kbit = Eigen::Index(1) << k;
      if ((s & kbit) == 0) continue;
      const double sign_k = jw_sign(s, k);
      const Eigen::Index s1 = s & ~kbit;
      for (int j = 0; j < m; ++j) {
        const Eigen::Index jbit = Eigen::Index(1) << j;
        if ((s1 & jbit) != 0) continue;
        big(s1 | jbit, s) += h_modes(j, k) * sign_k * jw_sign(s1, j);
      }
    }
  }
  return big;
}

Matrix gibbs_density(const Matrix& hamiltonian, double beta, double tol) {
  if (beta <= 0.0) {
    throw Error(ErrorCode::BetaNonPositive, "beta = " + std::to_string(beta));
  }
  HermitianEigen eig = hermitian_eigen(hamiltonian, tol);
  const double shift = eig.values.minCoeff();
  RealVector weights =
      (-(beta * (eig.values.array() - shift))).exp().matrix();
  weights /= weights.sum();
  return eig.vectors * weights.asDiagonal().toDenseMatrix().cast<Complex>() *
         eig.vectors.adjoint();
}

}  // namespace sdcar
