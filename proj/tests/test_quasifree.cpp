#include <doctest.h>

#include <cmath>

#include "sdcar/instance.hpp"
#include "sdcar/quasifree.hpp"

using namespace sdcar;

namespace {

Matrix swap2() {
  Matrix k(2, 2);
  k << 0, 1, 1, 0;
  return k;
}

// K with Gamma Psi+ = -Psi- on the standard basis.
Matrix antidiag_minus(int d) {
  Matrix k = Matrix::Zero(d, d);
  for (int i = 0; i < d; i += 2) {
    k(i, i + 1) = -1.0;
    k(i + 1, i) = -1.0;
  }
  return k;
}

Matrix diag2(double a, double b) {
  Matrix h = Matrix::Zero(2, 2);
  h(0, 0) = a;
  h(1, 1) = b;
  return h;
}

}  // namespace

TEST_CASE("kms polarization on a single mode") {
  const OneParticleSpace space = make_space(2, swap2());
  const DynamicsGenerator gen(space, diag2(1.0, -1.0));

  const BasisPolarization s = kms_polarization(space, gen, std::log(3.0));
  CHECK(s.matrix()(0, 0).real() == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(s.matrix()(1, 1).real() == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(std::abs(s.matrix()(0, 1)) < 1e-15);
  CHECK(s.faithful());
  CHECK_FALSE(s.projection());

  CHECK_THROWS_WITH_AS(kms_polarization(space, gen, 0.0),
                       doctest::Contains("BetaNonPositive"), Error);
  CHECK_THROWS_WITH_AS(kms_polarization(space, gen, -1.0),
                       doctest::Contains("BetaNonPositive"), Error);
}

TEST_CASE("kms polarization of trivial dynamics is the tracial state") {
  const OneParticleSpace space = make_space(2, swap2());
  const DynamicsGenerator gen(space, Matrix::Zero(2, 2));
  for (double beta : {0.3, 1.0, 7.0}) {
    const BasisPolarization s = kms_polarization(space, gen, beta);
    CHECK((s.matrix() - 0.5 * Matrix::Identity(2, 2)).norm() < 1e-15);
  }
}

TEST_CASE("kms polarization satisfies completeness for the Majorana-type K") {
  const OneParticleSpace space = make_space(2, antidiag_minus(2));
  const DynamicsGenerator gen(space, diag2(0.8, -0.8));
  for (double beta : {0.1, 1.0, 4.0}) {
    const BasisPolarization s = kms_polarization(space, gen, beta);
    const Matrix residual = s.matrix() + space.gamma_conjugate(s.matrix()) -
                            Matrix::Identity(2, 2);
    CHECK(residual.norm() < 1e-14);
  }
}

TEST_CASE("ground projection is the positive spectral projection") {
  const OneParticleSpace space = make_space(2, swap2());
  const DynamicsGenerator gen(space, diag2(2.0, -2.0));
  const BasisPolarization p = ground_projection(space, gen);
  CHECK((p.matrix() - diag2(1.0, 0.0)).norm() < 1e-14);
  CHECK(p.projection());

  Matrix k4 = Matrix::Zero(4, 4);
  k4(0, 2) = k4(2, 0) = k4(1, 3) = k4(3, 1) = 1.0;
  const OneParticleSpace space4 = make_space(4, k4);
  Matrix h4 = Matrix::Zero(4, 4);
  h4(0, 0) = 1.0;
  h4(1, 1) = 3.0;
  h4(2, 2) = -1.0;
  h4(3, 3) = -3.0;
  const DynamicsGenerator gen4(space4, h4);
  const BasisPolarization p4 = ground_projection(space4, gen4);
  Matrix expected = Matrix::Zero(4, 4);
  expected(0, 0) = expected(1, 1) = 1.0;
  CHECK((p4.matrix() - expected).norm() < 1e-14);

  const DynamicsGenerator tiny(space, diag2(1e-12, -1e-12));
  CHECK_THROWS_WITH_AS(ground_projection(space, tiny),
                       doctest::Contains("ZeroMode"), Error);
}

TEST_CASE("pairing projection for the trivial involution") {
  const OneParticleSpace space = make_space(2, Matrix::Identity(2, 2));
  const BasisPolarization p = basis_projection_from_pairing(space);
  // Projects onto (e2 + i e1)/sqrt(2).
  Matrix expected(2, 2);
  expected << 0.5, Complex(0, 0.5), Complex(0, -0.5), 0.5;
  CHECK((p.matrix() - expected).norm() < 1e-14);
  CHECK(p.projection());
}

TEST_CASE("pairing projection postconditions on random spaces") {
  for (int trial = 0; trial < 8; ++trial) {
    Rng rng = instance_rng(31, trial);
    const int d = 2 * (1 + static_cast<int>(rng() % 4));
    const OneParticleSpace space = random_space(rng, d);
    const BasisPolarization p = basis_projection_from_pairing(space);
    CHECK(std::abs(p.matrix().trace().real() - d / 2.0) < 1e-12);
    const Matrix completeness = space.gamma_conjugate(p.matrix()) +
                                p.matrix() - Matrix::Identity(d, d);
    CHECK(completeness.norm() < 1e-10);
    CHECK((p.matrix() * p.matrix() - p.matrix()).norm() < 1e-12);
  }
}

TEST_CASE("doubling of the tracial polarization") {
  const OneParticleSpace space = make_space(2, swap2());
  const DynamicsGenerator gen(space, Matrix::Zero(2, 2));
  const BasisPolarization s = kms_polarization(space, gen, 1.0);
  const auto [doubled, ps] = doubling(space, s);

  CHECK(doubled.dim() == 4);
  Matrix expected(4, 4);
  expected.setConstant(0.0);
  expected.topLeftCorner(2, 2) = 0.5 * Matrix::Identity(2, 2);
  expected.topRightCorner(2, 2) = 0.5 * Matrix::Identity(2, 2);
  expected.bottomLeftCorner(2, 2) = 0.5 * Matrix::Identity(2, 2);
  expected.bottomRightCorner(2, 2) = 0.5 * Matrix::Identity(2, 2);
  CHECK((ps.matrix() - expected).norm() < 1e-14);
}

TEST_CASE("doubling a projection has no off-diagonal block") {
  const OneParticleSpace space = make_space(2, swap2());
  const DynamicsGenerator gen(space, diag2(1.0, -1.0));
  const BasisPolarization p = ground_projection(space, gen);
  const auto [doubled, ps] = doubling(space, p);
  (void)doubled;
  CHECK(ps.matrix().topRightCorner(2, 2).norm() < 1e-9);
  CHECK((ps.matrix().topLeftCorner(2, 2) - p.matrix()).norm() < 1e-12);
  CHECK((ps.matrix().bottomRightCorner(2, 2) -
         (Matrix::Identity(2, 2) - p.matrix()))
            .norm() < 1e-12);
}

TEST_CASE("doubling postconditions on random polarizations") {
  for (int trial = 0; trial < 8; ++trial) {
    Rng rng = instance_rng(37, trial);
    const int d = 2 * (1 + static_cast<int>(rng() % 4));
    const OneParticleSpace space = random_space(rng, d);
    const DynamicsGenerator gen = random_generator(rng, space);
    std::uniform_real_distribution<double> beta_dist(0.1, 5.0);
    const BasisPolarization s = kms_polarization(space, gen, beta_dist(rng));

    const auto [doubled, ps] = doubling(space, s);
    const Matrix& m = ps.matrix();
    CHECK((m * m - m).norm() < 1e-9);
    CHECK(hermiticity_residual(m) < 1e-9);
    const Matrix completeness =
        m + doubled.gamma_conjugate(m) - Matrix::Identity(2 * d, 2 * d);
    CHECK(completeness.norm() < 1e-9);
  }
}

TEST_CASE("doubling restricts to the original two-point function") {
  for (int trial = 0; trial < 6; ++trial) {
    Rng rng = instance_rng(39, trial);
    const int d = 2 * (1 + static_cast<int>(rng() % 3));
    const OneParticleSpace space = random_space(rng, d);
    const DynamicsGenerator gen = random_generator(rng, space);
    const BasisPolarization s = kms_polarization(space, gen, 1.1);
    const auto [doubled, ps] = doubling(space, s);
    (void)doubled;

    const Vector f = random_complex_vector(rng, d);
    const Vector g = random_complex_vector(rng, d);
    Vector f_embedded = Vector::Zero(2 * d);
    Vector g_embedded = Vector::Zero(2 * d);
    f_embedded.head(d) = f;
    g_embedded.head(d) = g;
    CHECK(std::abs(two_point(ps, f_embedded, g_embedded) -
                   two_point(s, f, g)) < 1e-12);
  }
}

TEST_CASE("two_point values and identities") {
  const OneParticleSpace space = make_space(2, swap2());
  const DynamicsGenerator gen(space, Matrix::Zero(2, 2));
  const BasisPolarization half = kms_polarization(space, gen, 1.0);

  Rng rng(5);
  const FieldVector f =
      make_gamma_invariant(space, random_complex_vector(rng, 2));
  CHECK(std::abs(two_point(half, f.v, f.v) - Complex(1.0, 0.0)) < 1e-13);

  // f in ker P annihilates the two-point function.
  const DynamicsGenerator gapped(space, diag2(1.0, -1.0));
  const BasisPolarization p = ground_projection(space, gapped);
  Vector kernel_vec(2);
  kernel_vec << 0.0, 1.0;
  CHECK(std::abs(two_point(p, kernel_vec, kernel_vec)) < 1e-15);

  CHECK_THROWS_AS(two_point(p, Vector::Zero(3), kernel_vec), Error);
}

TEST_CASE("two_point sesquilinearity and anticommutator identity") {
  for (int trial = 0; trial < 10; ++trial) {
    Rng rng = instance_rng(41, trial);
    const int d = 2 * (1 + static_cast<int>(rng() % 4));
    const OneParticleSpace space = random_space(rng, d);
    const DynamicsGenerator gen = random_generator(rng, space);
    const BasisPolarization s = kms_polarization(space, gen, 1.3);

    const Vector f = random_complex_vector(rng, d);
    const Vector g = random_complex_vector(rng, d);
    const Complex alpha(0.3, -1.1);
    CHECK(std::abs(two_point(s, alpha * f, g) -
                   std::conj(alpha) * two_point(s, f, g)) < 1e-12);
    CHECK(std::abs(two_point(s, f, alpha * g) -
                   alpha * two_point(s, f, g)) < 1e-12);

    const Complex lhs = two_point(s, f, g) +
                        two_point(s, space.gamma(g), space.gamma(f));
    CHECK(std::abs(lhs - f.dot(g)) < 1e-10);
  }
}

TEST_CASE("kms two-point function obeys the detailed-balance symmetry") {
  for (int trial = 0; trial < 6; ++trial) {
    Rng rng = instance_rng(43, trial);
    const int d = 2 * (1 + static_cast<int>(rng() % 3));
    const OneParticleSpace space = random_space(rng, d);
    const DynamicsGenerator gen = random_generator(rng, space);
    std::uniform_real_distribution<double> beta_dist(0.2, 3.0);
    const double beta = beta_dist(rng);
    const BasisPolarization s = kms_polarization(space, gen, beta);

    for (Eigen::Index k = 0; k < d; ++k) {
      const double energy = gen.eigenvalues()[k];
      const Vector psi = gen.eigenvectors().col(k);
      const Complex hot = two_point(s, psi, psi);
      const Complex cold = two_point(s, space.gamma(psi), space.gamma(psi));
      CHECK(std::abs(hot - std::exp(beta * energy) * cold) < 1e-10);
    }
  }
}

TEST_CASE("ground projection satisfies the ground-state inequality") {
  for (int trial = 0; trial < 10; ++trial) {
    Rng rng = instance_rng(47, trial);
    const int d = 2 * (1 + static_cast<int>(rng() % 4));
    const OneParticleSpace space = random_space(rng, d);
    const DynamicsGenerator gen = random_generator(rng, space);
    const BasisPolarization p = ground_projection(space, gen);
    const Vector g = random_complex_vector(rng, d);
    const double derivative =
        g.dot(p.matrix() * (gen.hamiltonian() * g)).real();
    CHECK(derivative >= -1e-12);
  }
}

TEST_CASE("n_point vanishes for odd orders") {
  const OneParticleSpace space = make_space(2, swap2());
  const DynamicsGenerator gen(space, diag2(1.0, -1.0));
  const BasisPolarization s = kms_polarization(space, gen, 1.0);
  Rng rng(71);
  const std::vector<Vector> one = {random_complex_vector(rng, 2)};
  const std::vector<Vector> three = {random_complex_vector(rng, 2),
                                     random_complex_vector(rng, 2),
                                     random_complex_vector(rng, 2)};
  CHECK(n_point(space, s, one) == Complex(0.0, 0.0));
  CHECK(n_point(space, s, three) == Complex(0.0, 0.0));
}

TEST_CASE("n_point four-point expansion has the Pfaffian sign pattern") {
  for (int trial = 0; trial < 6; ++trial) {
    Rng rng = instance_rng(53, trial);
    const int d = 2 * (1 + static_cast<int>(rng() % 3));
    const OneParticleSpace space = random_space(rng, d);
    const DynamicsGenerator gen = random_generator(rng, space);
    const BasisPolarization s = kms_polarization(space, gen, 0.9);

    std::vector<Vector> fields;
    for (int k = 0; k < 4; ++k) {
      fields.push_back(random_complex_vector(rng, d));
    }
    const auto pair_kernel = [&](int i, int j) {
      return space.gamma(fields[i]).dot(s.matrix() * fields[j]);
    };
    const Complex expected = pair_kernel(0, 1) * pair_kernel(2, 3) -
                             pair_kernel(0, 2) * pair_kernel(1, 3) +
                             pair_kernel(0, 3) * pair_kernel(1, 2);
    CHECK(std::abs(n_point(space, s, fields) - expected) < 1e-12);
  }
}

TEST_CASE("n_point with a single repeated unitary excitation") {
  const OneParticleSpace space = make_space(2, swap2());
  const DynamicsGenerator gen(space, diag2(1.0, -1.0));
  const BasisPolarization s = kms_polarization(space, gen, 2.0);
  Rng rng(5);
  const FieldVector f =
      make_gamma_invariant(space, random_complex_vector(rng, 2));

  // (f, S f) = 1 for a Gamma-invariant f with (f, f) = 2; B(f)^2 = 1 then
  // forces every even correlator of B(f) to be 1.
  CHECK(std::abs(two_point(s, f.v, f.v) - Complex(1.0, 0.0)) < 1e-13);
  const std::vector<Vector> four(4, f.v);
  CHECK(std::abs(n_point(space, s, four) - Complex(1.0, 0.0)) < 1e-12);
  const std::vector<Vector> six(6, f.v);
  CHECK(std::abs(n_point(space, s, six) - Complex(1.0, 0.0)) < 1e-12);
}

TEST_CASE("validate_polarization reports residuals without throwing") {
  const OneParticleSpace space = make_space(2, swap2());

  const PolarizationReport good =
      validate_polarization(space, 0.5 * Matrix::Identity(2, 2));
  CHECK(good.pass);
  CHECK(good.completeness_residual < 1e-15);
  CHECK(good.hermiticity_residual == 0.0);
  CHECK(good.faithful);

  const PolarizationReport bad = validate_polarization(space, diag2(2.0, -1.0));
  CHECK_FALSE(bad.pass);
  CHECK_FALSE(bad.spectrum_in_range);

  const OneParticleSpace trivial = make_space(2, Matrix::Identity(2, 2));
  const BasisPolarization paired = basis_projection_from_pairing(trivial);
  const PolarizationReport proj = validate_polarization(trivial, paired.matrix());
  CHECK(proj.pass);
  CHECK(proj.projection);
  CHECK(proj.idempotence_residual < 1e-14);
  CHECK_FALSE(proj.faithful);
}

TEST_CASE("polarization constructor rejects bad spectra and completeness") {
  const OneParticleSpace space = make_space(2, swap2());
  CHECK_THROWS_WITH_AS(BasisPolarization(space, diag2(2.0, -1.0)),
                       doctest::Contains("SpectrumOutOfRange"), Error);
  // 0 <= S <= 1 but misses S + Gamma S Gamma = 1.
  CHECK_THROWS_WITH_AS(BasisPolarization(space, diag2(0.9, 0.9)),
                       doctest::Contains("CompletenessFails"), Error);
}
