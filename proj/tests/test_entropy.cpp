#include <doctest.h>

#include <cmath>

#include "sdcar/entropy.hpp"
#include "sdcar/instance.hpp"

using namespace sdcar;

namespace {

// Single-mode reference instance: h = diag(eps, -eps) and Gamma Psi+ = -Psi-,
// with the unitary excitation f = Psi+ - Psi-. Every entropy route must
// produce beta * eps * tanh(beta * eps / 2).
struct SingleMode {
  explicit SingleMode(double eps) : space(2, involution()), gen(space, h(eps)) {
    f = Vector(2);
    f << 1.0, -1.0;
  }

  static Matrix involution() {
    Matrix k(2, 2);
    k << 0, -1, -1, 0;
    return k;
  }

  static Matrix h(double eps) {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = eps;
    m(1, 1) = -eps;
    return m;
  }

  OneParticleSpace space;
  DynamicsGenerator gen;
  Vector f;
};

double closed_form(double beta, double eps) {
  return beta * eps * std::tanh(beta * eps / 2.0);
}

}  // namespace

TEST_CASE("single-mode excitation entropy across the beta-eps grid") {
  for (double eps : {0.5, 1.0, 2.0}) {
    SingleMode instance(eps);
    for (double beta : {0.1, 1.0, 2.0, 10.0}) {
      const double expected = closed_form(beta, eps);
      const BasisPolarization s =
          kms_polarization(instance.space, instance.gen, beta);

      const ArakiResult araki = araki_unitary_excitation(
          instance.space, s, instance.gen, beta, instance.f);
      CHECK(std::abs(araki.analytic - expected) < 1e-12);
      CHECK(std::abs(araki.finite_difference - expected) < 1e-8);

      const VnResult vn =
          vn_route(instance.space, instance.gen, beta, instance.f);
      CHECK(std::abs(vn.direct - expected) < 1e-10);
      CHECK(std::abs(vn.commutator - expected) < 1e-10);
    }
  }
}

TEST_CASE("single-mode reference values") {
  SingleMode instance(1.0);
  const BasisPolarization s =
      kms_polarization(instance.space, instance.gen, 1.0);
  const ArakiResult one = araki_unitary_excitation(instance.space, s,
                                                   instance.gen, 1.0,
                                                   instance.f);
  CHECK(one.analytic == doctest::Approx(0.4621171573).epsilon(1e-9));

  const BasisPolarization s2 =
      kms_polarization(instance.space, instance.gen, 2.0);
  const ArakiResult two = araki_unitary_excitation(instance.space, s2,
                                                   instance.gen, 2.0,
                                                   instance.f);
  CHECK(two.analytic == doctest::Approx(2.0 * std::tanh(1.0)).epsilon(1e-12));
}

TEST_CASE("trivial dynamics produces zero entropy") {
  const OneParticleSpace space(2, SingleMode::involution());
  const DynamicsGenerator gen(space, Matrix::Zero(2, 2));
  const BasisPolarization s = kms_polarization(space, gen, 1.7);
  Vector f(2);
  f << 1.0, -1.0;
  const ArakiResult result = araki_unitary_excitation(space, s, gen, 1.7, f);
  CHECK(std::abs(result.analytic) < 1e-14);
  CHECK(std::abs(result.finite_difference) < 1e-10);
}

TEST_CASE("excitation preconditions are enforced") {
  SingleMode instance(1.0);
  const BasisPolarization s =
      kms_polarization(instance.space, instance.gen, 1.0);

  Vector not_invariant(2);
  not_invariant << std::sqrt(2.0), 0.0;  // Gamma maps e1 to -e2
  CHECK_THROWS_WITH_AS(
      araki_unitary_excitation(instance.space, s, instance.gen, 1.0,
                               not_invariant),
      doctest::Contains("NotGammaInvariant"), Error);

  CHECK_THROWS_WITH_AS(
      araki_unitary_excitation(instance.space, s, instance.gen, 1.0,
                               2.0 * instance.f),
      doctest::Contains("WrongNormalization"), Error);

  CHECK_THROWS_WITH_AS(
      araki_unitary_excitation(instance.space, s, instance.gen, -1.0,
                               instance.f),
      doctest::Contains("BetaNonPositive"), Error);

  // A polarization that does not commute with h: the pairing projection of
  // a generic 4-dim space against an unrelated hamiltonian.
  Rng rng(7);
  const OneParticleSpace space4 = random_space(rng, 4);
  const DynamicsGenerator gen4 = random_generator(rng, space4);
  const BasisPolarization paired = basis_projection_from_pairing(space4);
  const FieldVector f4 = random_field(rng, space4);
  CHECK_THROWS_WITH_AS(
      araki_unitary_excitation(space4, paired, gen4, 1.0, f4.v),
      doctest::Contains("FlowIncompatible"), Error);
}

TEST_CASE("vn_route refuses zero modes") {
  const OneParticleSpace space(2, SingleMode::involution());
  const DynamicsGenerator gen(space, Matrix::Zero(2, 2));
  Vector f(2);
  f << 1.0, -1.0;
  CHECK_THROWS_WITH_AS(vn_route(space, gen, 1.0, f),
                       doctest::Contains("ZeroMode"), Error);
}

TEST_CASE("full report on the single mode passes at 1e-9") {
  SingleMode instance(1.0);
  const EntropyReport report =
      full_report(instance.space, instance.gen, 1.0, instance.f);
  CHECK(report.pass);
  CHECK(report.max_pairwise_discrepancy < 1e-9);
  const double expected = closed_form(1.0, 1.0);
  CHECK(std::abs(report.araki_analytic - expected) < 1e-12);
  CHECK(std::abs(report.araki_fd - expected) < 1e-9);
  CHECK(std::abs(report.vn_direct - expected) < 1e-10);
  CHECK(std::abs(report.vn_commutator - expected) < 1e-10);
}

TEST_CASE("infinite-temperature limit suppresses the entropy") {
  SingleMode instance(1.0);
  const EntropyReport report =
      full_report(instance.space, instance.gen, 1e-3, instance.f);
  CHECK(report.pass);
  CHECK(std::abs(report.araki_analytic) <= 1e-3 * 2.0);
}

TEST_CASE("random instances pass the oracle-equivalence gate") {
  for (int trial = 0; trial < 25; ++trial) {
    Rng rng = instance_rng(101, trial);
    const int d = 2 * (1 + static_cast<int>(rng() % 6));
    const OneParticleSpace space = random_space(rng, d);
    const DynamicsGenerator gen = random_generator(rng, space);
    std::uniform_real_distribution<double> beta_dist(0.1, 5.0);
    const double beta = beta_dist(rng);
    const FieldVector f = random_field(rng, space);

    const EntropyReport report = full_report(space, gen, beta, f.v);
    CHECK(report.pass);
    CHECK(report.max_pairwise_discrepancy <=
          1e-8 * (1.0 + std::abs(report.araki_analytic)));
    CHECK(report.araki_analytic >= -1e-12);
    CHECK(report.araki_fd >= -1e-12);
    CHECK(report.vn_direct >= -1e-12);
    CHECK(report.vn_commutator >= -1e-12);
    CHECK(std::abs(report.araki_analytic - report.araki_fd) <= 1e-7);
  }
}

TEST_CASE("derivative scales quadratically in the field amplitude") {
  for (int trial = 0; trial < 5; ++trial) {
    Rng rng = instance_rng(103, trial);
    const int d = 2 * (1 + static_cast<int>(rng() % 4));
    const OneParticleSpace space = random_space(rng, d);
    const DynamicsGenerator gen = random_generator(rng, space);
    const BasisPolarization s = kms_polarization(space, gen, 1.2);
    const FieldVector f = random_field(rng, space);

    const auto derivative = [&](const Vector& v) {
      return (1.2 * v.dot(s.matrix() * (gen.hamiltonian() * v))).real();
    };
    CHECK(std::abs(derivative(2.0 * f.v) - 4.0 * derivative(f.v)) < 1e-10);
  }
}

TEST_CASE("large-beta entropy approaches the positive-mode asymptote") {
  for (int trial = 0; trial < 5; ++trial) {
    Rng rng = instance_rng(107, trial);
    const int d = 2 * (1 + static_cast<int>(rng() % 4));
    const OneParticleSpace space = random_space(rng, d);
    const DynamicsGenerator gen = random_generator(rng, space);
    const FieldVector f = random_field(rng, space);
    const double beta = 50.0;

    const BasisPolarization s = kms_polarization(space, gen, beta);
    const ArakiResult result =
        araki_unitary_excitation(space, s, gen, beta, f.v);

    const BasisPolarization ground = ground_projection(space, gen);
    const double asymptote =
        beta * f.v.dot(ground.matrix() * (gen.hamiltonian() * f.v)).real();
    CHECK(std::abs(result.analytic - asymptote) <= 0.01 * asymptote);
  }
}

TEST_CASE("multi-excitation reduces to the single case for N = 1") {
  SingleMode instance(1.3);
  const BasisPolarization s =
      kms_polarization(instance.space, instance.gen, 0.9);
  const MultiExcitationResult multi = multi_excitation_entropy(
      instance.space, s, instance.gen, 0.9, {instance.f});
  const ArakiResult single = araki_unitary_excitation(
      instance.space, s, instance.gen, 0.9, instance.f);
  CHECK(std::abs(multi.analytic - single.analytic) < 1e-14);
  CHECK(std::abs(multi.finite_difference - single.finite_difference) < 1e-10);
  CHECK(multi.orthogonal);
}

TEST_CASE("multi-excitation additivity on disjoint mode pairs") {
  // d = 4 with two decoupled mode pairs carrying different energies.
  Matrix k = Matrix::Zero(4, 4);
  k(0, 1) = k(1, 0) = k(2, 3) = k(3, 2) = -1.0;
  const OneParticleSpace space(4, k);
  Matrix h = Matrix::Zero(4, 4);
  h(0, 0) = 0.8;
  h(1, 1) = -0.8;
  h(2, 2) = 2.1;
  h(3, 3) = -2.1;
  const DynamicsGenerator gen(space, h);
  const double beta = 1.4;
  const BasisPolarization s = kms_polarization(space, gen, beta);

  Vector f1 = Vector::Zero(4);
  f1[0] = 1.0;
  f1[1] = -1.0;
  Vector f2 = Vector::Zero(4);
  f2[2] = 1.0;
  f2[3] = -1.0;

  const MultiExcitationResult multi =
      multi_excitation_entropy(space, s, gen, beta, {f1, f2});
  CHECK(multi.orthogonal);
  const double expected = closed_form(beta, 0.8) + closed_form(beta, 2.1);
  CHECK(std::abs(multi.analytic - expected) < 1e-12);
  CHECK(std::abs(multi.finite_difference - expected) < 1e-8);
}

TEST_CASE("multi-excitation additivity on random orthogonal families") {
  for (int trial = 0; trial < 8; ++trial) {
    Rng rng = instance_rng(109, trial);
    const OneParticleSpace space = random_space(rng, 8);
    const DynamicsGenerator gen = random_generator(rng, space);
    std::uniform_real_distribution<double> beta_dist(0.3, 3.0);
    const double beta = beta_dist(rng);
    const BasisPolarization s = kms_polarization(space, gen, beta);

    // Eigenvector pairs of h give S-orthogonal Gamma-invariant fields.
    std::vector<Vector> fields;
    for (Eigen::Index k = 4; k < 8 && fields.size() < 2; ++k) {
      const Vector psi = gen.eigenvectors().col(k);
      const Vector candidate = psi + space.gamma(psi);
      if (candidate.norm() < 1e-6) continue;
      fields.push_back(candidate * std::sqrt(2.0) / candidate.norm());
    }
    if (fields.size() < 2) continue;

    const MultiExcitationResult multi =
        multi_excitation_entropy(space, s, gen, beta, fields);
    CHECK(multi.orthogonal);

    double sum = 0.0;
    for (const Vector& f : fields) {
      sum += araki_unitary_excitation(space, s, gen, beta, f).analytic;
    }
    CHECK(std::abs(multi.analytic - sum) <= 1e-8 * (1.0 + std::abs(sum)));
    CHECK(std::abs(multi.analytic - multi.finite_difference) <= 1e-7);
  }
}

TEST_CASE("non-orthogonal multi-excitation stays self-consistent") {
  for (int trial = 0; trial < 6; ++trial) {
    Rng rng = instance_rng(113, trial);
    const OneParticleSpace space = random_space(rng, 4);
    const DynamicsGenerator gen = random_generator(rng, space);
    const double beta = 1.1;
    const BasisPolarization s = kms_polarization(space, gen, beta);

    const FieldVector f1 = random_field(rng, space);
    const FieldVector f2 = random_field(rng, space);
    const MultiExcitationResult multi =
        multi_excitation_entropy(space, s, gen, beta, {f1.v, f2.v});
    CHECK(std::abs(multi.analytic - multi.finite_difference) <=
          1e-7 * (1.0 + std::abs(multi.analytic)));
    if (!multi.orthogonal) {
      CHECK(multi.max_cross_pairing > 0.0);
    }
  }
}

TEST_CASE("exponential excitation carries the sin^2(1) factor") {
  SingleMode instance(1.0);
  const double beta = 1.0;
  const BasisPolarization s =
      kms_polarization(instance.space, instance.gen, beta);
  const ExponentialExcitationResult result = exponential_excitation_entropy(
      instance.space, s, instance.gen, beta, instance.f);

  const double sin2 = std::sin(1.0) * std::sin(1.0);
  CHECK(result.base == doctest::Approx(closed_form(1.0, 1.0)).epsilon(1e-12));
  CHECK(result.value ==
        doctest::Approx(sin2 * closed_form(1.0, 1.0)).epsilon(1e-12));
  CHECK(std::abs(result.vn_check - result.value) <
        1e-9 * (1.0 + result.value));
}

TEST_CASE("exponential excitation of trivial dynamics vanishes") {
  const OneParticleSpace space(2, SingleMode::involution());
  const DynamicsGenerator gen(space, Matrix::Zero(2, 2));
  const BasisPolarization s = kms_polarization(space, gen, 1.0);
  Vector f(2);
  f << 1.0, -1.0;
  const ExponentialExcitationResult result =
      exponential_excitation_entropy(space, s, gen, 1.0, f);
  CHECK(result.value == 0.0);
  CHECK(result.base == 0.0);
  CHECK_FALSE(result.vn_check_available);  // h has only zero modes
}

TEST_CASE("exponential excitation ratio is exact across random instances") {
  const double sin2 = std::sin(1.0) * std::sin(1.0);
  for (int trial = 0; trial < 10; ++trial) {
    Rng rng = instance_rng(127, trial);
    const int d = 2 * (1 + static_cast<int>(rng() % 4));
    const OneParticleSpace space = random_space(rng, d);
    const DynamicsGenerator gen = random_generator(rng, space);
    std::uniform_real_distribution<double> beta_dist(0.2, 4.0);
    const double beta = beta_dist(rng);
    const BasisPolarization s = kms_polarization(space, gen, beta);
    const FieldVector f = random_field(rng, space);

    const ExponentialExcitationResult result =
        exponential_excitation_entropy(space, s, gen, beta, f.v);
    if (result.base > 1e-12) {
      CHECK(std::abs(result.value / result.base - sin2) < 1e-9);
    }
    CHECK(std::abs(result.vn_check - result.value) <=
          1e-8 * (1.0 + std::abs(result.value)));
  }
}

TEST_CASE("standard-subspace excitation carries the factor two") {
  SingleMode instance(1.0);
  const double beta = 1.0;
  const BasisPolarization s =
      kms_polarization(instance.space, instance.gen, beta);

  const Vector f_unit = instance.f / std::sqrt(2.0);
  const StandardSubspaceResult result = standard_subspace_excitation_entropy(
      instance.space, s, instance.gen, beta, f_unit);

  CHECK(result.value == doctest::Approx(2.0 * result.base_derivative)
                            .epsilon(1e-14));
  // Quadratic scaling: the (f,f)=1 derivative is half the unit-excitation
  // entropy, so the factor two recovers it exactly.
  CHECK(result.value ==
        doctest::Approx(closed_form(1.0, 1.0)).epsilon(1e-12));

  CHECK_THROWS_WITH_AS(
      standard_subspace_excitation_entropy(instance.space, s, instance.gen,
                                           beta, instance.f),
      doctest::Contains("WrongNormalization"), Error);
}

TEST_CASE("standard-subspace factor two on random instances") {
  for (int trial = 0; trial < 10; ++trial) {
    Rng rng = instance_rng(131, trial);
    const int d = 2 * (1 + static_cast<int>(rng() % 4));
    const OneParticleSpace space = random_space(rng, d);
    const DynamicsGenerator gen = random_generator(rng, space);
    std::uniform_real_distribution<double> beta_dist(0.2, 4.0);
    const double beta = beta_dist(rng);
    const BasisPolarization s = kms_polarization(space, gen, beta);
    const FieldVector f = random_field(rng, space);

    const StandardSubspaceResult result =
        standard_subspace_excitation_entropy(space, s, gen, beta,
                                             f.v / std::sqrt(2.0));
    const ArakiResult unit =
        araki_unitary_excitation(space, s, gen, beta, f.v);
    CHECK(std::abs(result.value - 2.0 * result.base_derivative) < 1e-14);
    CHECK(std::abs(result.value - unit.analytic) <=
          1e-9 * (1.0 + std::abs(unit.analytic)));
  }
}
