#include "sdcar/check.hpp"

#include <cmath>
#include <functional>
#include <numbers>

#include "sdcar/entropy.hpp"
#include "sdcar/instance.hpp"
#include "sdcar/majorana1d.hpp"
#include "sdcar/modular.hpp"

namespace sdcar {

namespace {

class Suite {
 public:
  explicit Suite(std::string name) { result_.name = std::move(name); }

  void expect(const std::string& label, double residual, double bound) {
    ++result_.checks;
    result_.max_residual = std::max(result_.max_residual, residual);
    if (!(residual <= bound)) {
      ++result_.failures;
      result_.notes.push_back(label + ": residual " + std::to_string(residual) +
                              " > " + std::to_string(bound));
    }
  }

  SuiteResult take() { return std::move(result_); }

 private:
  SuiteResult result_;
};

SuiteResult hilbert_suite(std::uint64_t seed) {
  Suite suite("hilbert");
  for (int i = 0; i < 20; ++i) {
    Rng rng = instance_rng(seed, i);
    const int d = 2 * (1 + static_cast<int>(rng() % 4));
    const OneParticleSpace space = random_space(rng, d);
    const Vector f = random_complex_vector(rng, d);
    const Vector g = random_complex_vector(rng, d);

    suite.expect("gamma involutive", (space.gamma(space.gamma(f)) - f).norm(),
                 1e-12);
    suite.expect(
        "antiunitarity",
        std::abs(space.gamma(f).dot(space.gamma(g)) - std::conj(f.dot(g))),
        1e-12);

    const DynamicsGenerator gen = random_generator(rng, space);
    std::uniform_real_distribution<double> time_dist(-3.0, 3.0);
    const double t = time_dist(rng);
    suite.expect("evolution commutes with gamma",
                 (space.gamma(gen.evolve(t, f)) - gen.evolve(t, space.gamma(f)))
                     .norm(),
                 1e-10);
    suite.expect("evolution unitary",
                 std::abs(gen.evolve(t, f).norm() - f.norm()), 1e-12);

    const FieldVector a = random_field(rng, space);
    const FieldVector b = random_field(rng, space);
    suite.expect("invariant pair has real inner product",
                 std::abs(a.v.dot(b.v).imag()), 1e-12);

    const auto basis = gamma_invariant_basis(space);
    double worst = 0.0;
    for (std::size_t p = 0; p < basis.size(); ++p) {
      worst = std::max(worst, (space.gamma(basis[p]) - basis[p]).norm());
      for (std::size_t q = 0; q < basis.size(); ++q) {
        const double expected = p == q ? 1.0 : 0.0;
        worst = std::max(worst, std::abs(basis[p].dot(basis[q]) - expected));
      }
    }
    suite.expect("gamma-invariant basis", worst, 1e-10);
  }
  return suite.take();
}

SuiteResult quasifree_suite(std::uint64_t seed) {
  Suite suite("quasifree");
  for (int i = 0; i < 16; ++i) {
    Rng rng = instance_rng(seed, 1000 + i);
    const int d = 2 * (1 + static_cast<int>(rng() % 4));
    const OneParticleSpace space = random_space(rng, d);
    const DynamicsGenerator gen = random_generator(rng, space);
    std::uniform_real_distribution<double> beta_dist(0.1, 5.0);
    const double beta = beta_dist(rng);

    const BasisPolarization kms = kms_polarization(space, gen, beta);
    const PolarizationReport kms_report =
        validate_polarization(space, kms.matrix());
    suite.expect("kms polarization invariants",
                 std::max(kms_report.completeness_residual,
                          kms_report.hermiticity_residual),
                 1e-9);
    suite.expect("kms faithful", kms_report.faithful ? 0.0 : 1.0, 0.5);

    const BasisPolarization ground = ground_projection(space, gen);
    suite.expect("ground projection idempotent",
                 validate_polarization(space, ground.matrix())
                     .idempotence_residual,
                 1e-9);

    const BasisPolarization paired = basis_projection_from_pairing(space);
    suite.expect("pairing projection rank",
                 std::abs(paired.matrix().trace().real() - d / 2.0), 1e-9);

    const auto [doubled, ps] = doubling(space, kms);
    suite.expect("doubling idempotent",
                 (ps.matrix() * ps.matrix() - ps.matrix()).norm(), 1e-9);

    const Vector f = random_complex_vector(rng, d);
    const Vector g = random_complex_vector(rng, d);
    suite.expect(
        "anticommutator identity",
        std::abs(two_point(kms, f, g) +
                 two_point(kms, space.gamma(g), space.gamma(f)) - f.dot(g)),
        1e-10);

    // Discrete KMS symmetry on an eigenpair of h.
    const Eigen::Index top = gen.eigenvalues().size() - 1;
    const double energy = gen.eigenvalues()[top];
    const Vector psi_plus = gen.eigenvectors().col(top);
    const Complex hot = two_point(kms, psi_plus, psi_plus);
    const Complex cold =
        two_point(kms, space.gamma(psi_plus), space.gamma(psi_plus));
    suite.expect("kms symmetry",
                 std::abs(hot - std::exp(beta * energy) * cold), 1e-10);

    // Ground-state inequality: (g, P h g) >= 0.
    const Complex positivity =
        g.dot(ground.matrix() * (gen.hamiltonian() * g));
    suite.expect("ground state positivity",
                 std::max(0.0, -positivity.real()), 1e-12);
  }
  return suite.take();
}

SuiteResult fock_suite(std::uint64_t seed) {
  Suite suite("fock");
  for (int i = 0; i < 10; ++i) {
    Rng rng = instance_rng(seed, 2000 + i);
    const int d = 2 * (1 + static_cast<int>(rng() % 3));
    const OneParticleSpace space = random_space(rng, d);
    const DynamicsGenerator gen = random_generator(rng, space);
    const BasisPolarization ground = ground_projection(space, gen);
    const FockSpace fock(space, ground, &gen);

    double car_worst = 0.0;
    const Matrix id = Matrix::Identity(fock.dim(), fock.dim());
    for (int j = 0; j < fock.modes(); ++j) {
      const Matrix aj = annihilation(fock, j);
      for (int k = 0; k < fock.modes(); ++k) {
        const Matrix adk = creation(fock, k);
        const Matrix ak = annihilation(fock, k);
        car_worst = std::max(
            car_worst,
            (aj * adk + adk * aj - (j == k ? 1.0 : 0.0) * id).norm());
        car_worst = std::max(car_worst, (aj * ak + ak * aj).norm());
      }
    }
    suite.expect("car relations", car_worst, 1e-12);

    // Quasifree oracle for the pure state.
    std::vector<Vector> fields;
    for (int k = 0; k < 4; ++k) {
      fields.push_back(random_complex_vector(rng, d));
    }
    Matrix product = id;
    for (const Vector& f : fields) {
      product *= represent_field(fock, space, f);
    }
    const Vector vac = fock.vacuum();
    const Complex fock_value = vac.dot(product * vac);
    const Complex wick_value = n_point(space, ground, fields);
    suite.expect("pure quasifree oracle", std::abs(fock_value - wick_value),
                 1e-10);

    // Thermal two-point oracle against the KMS polarization.
    std::uniform_real_distribution<double> beta_dist(0.2, 4.0);
    const double beta = beta_dist(rng);
    const Matrix big_h = second_quantize(fock, space, gen);
    const Matrix rho = gibbs_density(big_h, beta);
    const BasisPolarization kms = kms_polarization(space, gen, beta);
    const Vector f = random_complex_vector(rng, d);
    const Vector g = random_complex_vector(rng, d);
    const Matrix bstar = represent_field(fock, space, space.gamma(f));
    const Matrix b = represent_field(fock, space, g);
    const Complex thermal = (rho * bstar * b).trace();
    suite.expect("thermal two-point oracle",
                 std::abs(thermal - two_point(kms, f, g)), 1e-9);
  }
  return suite.take();
}

SuiteResult modular_suite(std::uint64_t seed) {
  Suite suite("modular");
  for (int i = 0; i < 25; ++i) {
    Rng rng = instance_rng(seed, 3000 + i);
    const int n = 2 + static_cast<int>(rng() % 5);
    const Vector psi_raw = random_complex_vector(rng, n * n);
    const Vector phi_raw = random_complex_vector(rng, n * n);
    const BipartiteVector psi = schmidt(psi_raw / psi_raw.norm(), n);
    const BipartiteVector phi = schmidt(phi_raw / phi_raw.norm(), n);
    if (!psi.cyclic_separating) continue;

    const ModularPair pair = modular_operator_bipartite(psi);
    suite.expect("delta fixes psi", (pair.delta * psi.psi - psi.psi).norm(),
                 1e-10);
    suite.expect("J squared",
                 (pair.j_matrix * pair.j_matrix.conjugate() -
                  Matrix::Identity(n * n, n * n))
                     .norm(),
                 1e-10);
    const Matrix delta_inv = pair.delta.inverse();
    suite.expect(
        "J delta J = delta inverse",
        (pair.j_matrix * pair.delta.conjugate() * pair.j_matrix.conjugate() -
         delta_inv)
                .norm() /
            std::max(1.0, delta_inv.norm()),
        1e-8);

    const double araki = araki_entropy_bipartite(phi, psi);
    const double vn =
        vn_relative_entropy(reduced_density_1(psi), reduced_density_1(phi));
    suite.expect("araki equals vn",
                 std::abs(araki - vn) / (1.0 + std::abs(vn)), 1e-10);
    suite.expect("vn positivity", std::max(0.0, -vn), 1e-12);
  }
  return suite.take();
}

SuiteResult entropy_suite(std::uint64_t seed) {
  Suite suite("entropy");
  for (int i = 0; i < 20; ++i) {
    Rng rng = instance_rng(seed, 4000 + i);
    const int d = 2 * (1 + static_cast<int>(rng() % 6));
    const OneParticleSpace space = random_space(rng, d);
    const DynamicsGenerator gen = random_generator(rng, space);
    std::uniform_real_distribution<double> beta_dist(0.1, 5.0);
    const double beta = beta_dist(rng);
    const FieldVector f = random_field(rng, space);

    const EntropyReport report = full_report(space, gen, beta, f.v);
    suite.expect("route agreement", report.max_pairwise_discrepancy,
                 1e-8 * (1.0 + std::abs(report.araki_analytic)));
    suite.expect("positivity", std::max(0.0, -report.araki_analytic), 1e-12);

    const BasisPolarization kms = kms_polarization(space, gen, beta);
    const ExponentialExcitationResult exp_result =
        exponential_excitation_entropy(space, kms, gen, beta, f.v);
    const double sin2 = std::sin(1.0) * std::sin(1.0);
    suite.expect("exponential ratio",
                 std::abs(exp_result.value - sin2 * exp_result.base), 1e-12);
    suite.expect("exponential vn check",
                 std::abs(exp_result.vn_check - exp_result.value),
                 1e-8 * (1.0 + std::abs(exp_result.value)));

    const StandardSubspaceResult sub = standard_subspace_excitation_entropy(
        space, kms, gen, beta, f.v / std::sqrt(2.0));
    suite.expect("standard subspace factor",
                 std::abs(sub.value - 2.0 * sub.base_derivative), 1e-12);
    suite.expect("standard subspace equals unit excitation",
                 std::abs(sub.value - report.araki_analytic),
                 1e-9 * (1.0 + std::abs(report.araki_analytic)));
  }
  return suite.take();
}

SuiteResult majorana_suite(std::uint64_t seed) {
  Suite suite("majorana");
  MajoranaConfig base;
  base.interval = std::numbers::pi;
  base.mass = 1.0;
  base.beta = 1.0;
  base.n_max = 16;
  base.coefficients[1] = {Complex(1.0, 0.0), Complex(0.0, 0.0)};

  const OrthonormalityReport ortho = mode_functions_orthonormal(base);
  suite.expect("mode orthonormality", ortho.max_residual, 1e-8);

  for (int n = 1; n <= 8; ++n) {
    const ModeData data = mode_data(n, base.interval, base.mass);
    const Eigen::Matrix2cd h2 = mode_hamiltonian(data.momentum, base.mass);
    suite.expect("eigen residual +",
                 (h2 * data.v_plus - data.energy * data.v_plus).norm(), 1e-12);
    suite.expect("eigen residual -",
                 (h2 * data.v_minus + data.energy * data.v_minus).norm(),
                 1e-12);
    suite.expect("spectrum gap", std::max(0.0, base.mass - data.energy),
                 1e-12);
    suite.expect("charge conjugation sign",
                 charge_conjugation_residual(n, base.interval, base.mass),
                 1e-12);
    const Eigen::Matrix2cd proj = projection_matrix(data.momentum, base.mass);
    suite.expect("projection idempotent", (proj * proj - proj).norm(), 1e-12);
    suite.expect("projection selects +", (proj * data.v_plus - data.v_plus)
                                             .norm(),
                 1e-12);
  }

  for (int i = 0; i < 6; ++i) {
    Rng rng = instance_rng(seed, 5000 + i);
    MajoranaConfig config = base;
    config.coefficients.clear();
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (int n = 1; n <= 4; ++n) {
      config.coefficients[n] = {Complex(unit(rng), unit(rng)),
                                Complex(unit(rng), unit(rng))};
    }
    const MajoranaEntropyResult result = truncated_matrix_entropy(config);
    suite.expect("closed form vs matrix route",
                 std::abs(result.closed_form - result.matrix_total),
                 1e-8 * (1.0 + std::abs(result.closed_form)));
  }
  return suite.take();
}

}  // namespace

std::vector<SuiteResult> run_check_suites(const std::string& which,
                                          std::uint64_t seed) {
  std::vector<SuiteResult> results;
  const bool all = which == "all";
  if (all || which == "hilbert") results.push_back(hilbert_suite(seed));
  if (all || which == "quasifree") results.push_back(quasifree_suite(seed));
  if (all || which == "fock") results.push_back(fock_suite(seed));
  if (all || which == "modular") results.push_back(modular_suite(seed));
  if (all || which == "entropy") results.push_back(entropy_suite(seed));
  if (all || which == "majorana") results.push_back(majorana_suite(seed));
  if (results.empty()) {
    throw Error(ErrorCode::UsageError, "unknown suite \"" + which + "\"");
  }
  return results;
}

}  // namespace sdcar
