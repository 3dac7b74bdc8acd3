#include "sdcar/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "sdcar/check.hpp"
#include "sdcar/entropy.hpp"
#include "sdcar/instance.hpp"
#include "sdcar/io.hpp"
#include "sdcar/majorana1d.hpp"
#include "sdcar/modular.hpp"

namespace sdcar {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInputError = 1;
constexpr int kExitVerificationFailure = 2;

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    throw Error(ErrorCode::UsageError, "cannot write " + out_path);
  }
  out << text;
}

struct CommonOptions {
  std::string config_path;
  std::string out_path;
  std::string format = "json";
  double accept_tol = kDefaultAcceptTol;
  double fd_step = kDefaultFdStep;
};

EntropyOptions entropy_options(const CommonOptions& common) {
  EntropyOptions opts;
  opts.accept_tol = common.accept_tol;
  opts.fd_step = common.fd_step;
  return opts;
}

struct LoadedProblem {
  OneParticleSpace space;
  DynamicsGenerator gen;
  EntropyProblem problem;
};

LoadedProblem load_problem(const std::string& path) {
  const EntropyProblem problem =
      entropy_problem_from_json(load_json_file(path));
  OneParticleSpace space(problem.dim, problem.involution);
  DynamicsGenerator gen(space, problem.hamiltonian);
  return {std::move(space), std::move(gen), problem};
}

int cmd_entropy_single(const CommonOptions& common) {
  const LoadedProblem loaded = load_problem(common.config_path);
  const EntropyOptions opts = entropy_options(common);
  const EntropyReport report =
      full_report(loaded.space, loaded.gen, loaded.problem.beta,
                  loaded.problem.fields.front(), opts);
  if (common.format == "csv") {
    std::string text =
        "araki_analytic,araki_fd,vn_direct,vn_commutator,"
        "max_pairwise_discrepancy,verdict\n";
    text += entropy_report_to_csv(report) + "\n";
    write_output(text, common.out_path);
  } else {
    write_output(entropy_report_to_json(report).dump(2), common.out_path);
  }
  return report.pass ? kExitOk : kExitVerificationFailure;
}

int cmd_entropy_multi(const CommonOptions& common) {
  const LoadedProblem loaded = load_problem(common.config_path);
  const EntropyOptions opts = entropy_options(common);
  const BasisPolarization s =
      kms_polarization(loaded.space, loaded.gen, loaded.problem.beta);
  const MultiExcitationResult result =
      multi_excitation_entropy(loaded.space, s, loaded.gen,
                               loaded.problem.beta, loaded.problem.fields,
                               opts);
  double sum_singles = 0.0;
  for (const Vector& f : loaded.problem.fields) {
    sum_singles += araki_unitary_excitation(loaded.space, s, loaded.gen,
                                            loaded.problem.beta, f, opts)
                       .analytic;
  }
  const double self_consistency =
      std::abs(result.analytic - result.finite_difference);
  bool pass = self_consistency <= 1e-7 * (1.0 + std::abs(result.analytic));
  if (result.orthogonal) {
    pass = pass && std::abs(result.analytic - sum_singles) <=
                       opts.accept_tol * (1.0 + std::abs(result.analytic));
  }

  Json j;
  j["analytic"] = result.analytic;
  j["finite_difference"] = result.finite_difference;
  j["sum_of_singles"] = sum_singles;
  j["max_cross_pairing"] = result.max_cross_pairing;
  j["orthogonal"] = result.orthogonal;
  if (!result.orthogonal) {
    j["warning"] = "NonOrthogonalWarning: additivity not applicable";
  }
  j["verdict"] = pass ? "pass" : "fail";
  write_output(j.dump(2), common.out_path);
  return pass ? kExitOk : kExitVerificationFailure;
}

int cmd_entropy_exp(const CommonOptions& common) {
  const LoadedProblem loaded = load_problem(common.config_path);
  const EntropyOptions opts = entropy_options(common);
  const BasisPolarization s =
      kms_polarization(loaded.space, loaded.gen, loaded.problem.beta);
  const ExponentialExcitationResult result = exponential_excitation_entropy(
      loaded.space, s, loaded.gen, loaded.problem.beta,
      loaded.problem.fields.front(), opts);
  const bool pass =
      !result.vn_check_available ||
      std::abs(result.vn_check - result.value) <=
          opts.accept_tol * (1.0 + std::abs(result.value));
  Json j;
  j["value"] = result.value;
  j["base"] = result.base;
  j["sin_squared_1"] = std::sin(1.0) * std::sin(1.0);
  if (result.vn_check_available) {
    j["vn_check"] = result.vn_check;
  }
  j["verdict"] = pass ? "pass" : "fail";
  write_output(j.dump(2), common.out_path);
  return pass ? kExitOk : kExitVerificationFailure;
}

int cmd_entropy_subspace(const CommonOptions& common) {
  const LoadedProblem loaded = load_problem(common.config_path);
  const EntropyOptions opts = entropy_options(common);
  const BasisPolarization s =
      kms_polarization(loaded.space, loaded.gen, loaded.problem.beta);
  const StandardSubspaceResult result = standard_subspace_excitation_entropy(
      loaded.space, s, loaded.gen, loaded.problem.beta,
      loaded.problem.fields.front(), opts);
  Json j;
  j["value"] = result.value;
  j["base_derivative"] = result.base_derivative;
  j["factor"] = 2.0;
  if (result.vn_check_available) {
    j["vn_check"] = result.vn_check;  // reported, not asserted
  }
  j["verdict"] = "pass";
  write_output(j.dump(2), common.out_path);
  return kExitOk;
}

std::pair<Complex, Complex> parse_coeff_value(const std::string& text) {
  std::vector<double> parts;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    parts.push_back(std::stod(item));
  }
  if (parts.size() == 2) {
    return {Complex(parts[0], 0.0), Complex(parts[1], 0.0)};
  }
  if (parts.size() == 4) {
    return {Complex(parts[0], parts[1]), Complex(parts[2], parts[3])};
  }
  throw Error(ErrorCode::UsageError,
              "--coeff wants n:aplus,aminus or n:re+,im+,re-,im-");
}

int cmd_majorana(const CommonOptions& common, double a, double m, double beta,
                 int n_max, const std::vector<std::string>& coeff_args) {
  MajoranaConfig config;
  if (!common.config_path.empty()) {
    config = majorana_config_from_json(load_json_file(common.config_path));
  } else {
    config.interval = a;
    config.mass = m;
    config.beta = beta;
    config.n_max = n_max;
    for (const std::string& arg : coeff_args) {
      const auto colon = arg.find(':');
      if (colon == std::string::npos) {
        throw Error(ErrorCode::UsageError, "--coeff wants n:values");
      }
      int n = 0;
      try {
        n = std::stoi(arg.substr(0, colon));
      } catch (const std::exception&) {
        throw Error(ErrorCode::UsageError,
                    "--coeff mode index \"" + arg.substr(0, colon) + "\"");
      }
      config.coefficients[n] = parse_coeff_value(arg.substr(colon + 1));
    }
  }
  if (config.coefficients.empty()) {
    throw Error(ErrorCode::UsageError, "no mode coefficients given");
  }

  const std::vector<MajoranaModeRow> rows = per_mode_breakdown(config);
  const double closed = closed_form_entropy(config);
  const bool matrix_route =
      static_cast<int>(config.coefficients.size()) <= 12;
  MajoranaEntropyResult result;
  bool pass = true;
  if (matrix_route) {
    result = truncated_matrix_entropy(config, entropy_options(common));
    pass = result.report.pass &&
           std::abs(result.closed_form - result.matrix_total) <=
               common.accept_tol * (1.0 + std::abs(result.closed_form));
  }

  if (common.format == "csv") {
    std::string text = "n,p,energy,E_tilde,term\n";
    for (const MajoranaModeRow& row : rows) {
      text += std::to_string(row.n) + "," + format_double(row.momentum) +
              "," + format_double(row.energy) + "," +
              format_double(row.energy_content) + "," +
              format_double(row.term) + "\n";
    }
    write_output(text, common.out_path);
  } else {
    Json j;
    j["total"] = closed;
    j["matrix_route_run"] = matrix_route;
    if (matrix_route) {
      j["matrix_total"] = result.matrix_total;
      j["norm_sq"] = result.norm_sq;
      j["degenerate"] = result.degenerate;
      j["report"] = entropy_report_to_json(result.report);
    }
    Json modes = Json::array();
    for (const MajoranaModeRow& row : rows) {
      Json mode;
      mode["n"] = row.n;
      mode["p"] = row.momentum;
      mode["energy"] = row.energy;
      mode["E_tilde"] = row.energy_content;
      mode["term"] = row.term;
      modes.push_back(mode);
    }
    j["modes"] = modes;
    j["verdict"] = pass ? "pass" : "fail";
    write_output(j.dump(2), common.out_path);
  }
  return pass ? kExitOk : kExitVerificationFailure;
}

int cmd_bipartite(const CommonOptions& common) {
  const BipartiteProblem problem =
      bipartite_problem_from_json(load_json_file(common.config_path));
  const BipartiteVector psi = schmidt(problem.psi, problem.n);

  Json j;
  Json coeffs = Json::array();
  for (Eigen::Index i = 0; i < psi.coefficients.size(); ++i) {
    coeffs.push_back(psi.coefficients[i]);
  }
  j["schmidt_coefficients"] = coeffs;
  j["cyclic_separating"] = psi.cyclic_separating;

  bool pass = true;
  if (psi.cyclic_separating) {
    const ModularPair pair = modular_operator_bipartite(psi);
    const Eigen::Index nn = psi.psi.size();
    const double j_sq_residual =
        (pair.j_matrix * pair.j_matrix.conjugate() -
         Matrix::Identity(nn, nn))
            .norm();
    const Matrix delta_inv = pair.delta.inverse();
    const double tomita_residual =
        (pair.j_matrix * pair.delta.conjugate() * pair.j_matrix.conjugate() -
         delta_inv)
            .norm() /
        std::max(1.0, delta_inv.norm());
    j["j_squared_residual"] = j_sq_residual;
    j["tomita_relation_residual"] = tomita_residual;
    pass = pass && j_sq_residual <= 1e-10 && tomita_residual <= 1e-10;

    if (problem.phi.size() > 0) {
      const BipartiteVector phi = schmidt(problem.phi, problem.n);
      const double araki = araki_entropy_bipartite(phi, psi);
      const double vn = vn_relative_entropy(reduced_density_1(psi),
                                            reduced_density_1(phi));
      j["araki_entropy"] = std::isinf(araki) ? Json("inf") : Json(araki);
      j["vn_entropy"] = std::isinf(vn) ? Json("inf") : Json(vn);
      if (std::isinf(araki) || std::isinf(vn)) {
        pass = pass && std::isinf(araki) == std::isinf(vn);
      } else {
        const double diff = std::abs(araki - vn);
        j["discrepancy"] = diff;
        pass = pass && diff <= 1e-10 * (1.0 + std::abs(vn));
      }
    }
  }
  j["verdict"] = pass ? "pass" : "fail";
  write_output(j.dump(2), common.out_path);
  return pass ? kExitOk : kExitVerificationFailure;
}

int cmd_check(const std::string& suite, std::uint64_t seed,
              const std::string& out_path) {
  const std::vector<SuiteResult> results = run_check_suites(suite, seed);
  std::string text;
  int failures = 0;
  for (const SuiteResult& result : results) {
    failures += result.failures;
    text += result.name + ": " + std::to_string(result.checks) + " checks, " +
            std::to_string(result.failures) + " failures, max residual " +
            format_double(result.max_residual) + "\n";
    for (const std::string& note : result.notes) {
      text += "  " + note + "\n";
    }
  }
  text += failures == 0 ? "all suites passed\n" : "FAILURES PRESENT\n";
  write_output(text, out_path);
  return failures == 0 ? kExitOk : kExitVerificationFailure;
}

struct SweepSettings {
  int instances = 200;
  std::vector<int> dims = {2, 4, 6, 8, 10, 12};
  double beta_min = 0.1;
  double beta_max = 5.0;
  std::uint64_t seed = 42;
  int threads = 1;
};

std::string sweep_row(int index, std::uint64_t seed,
                      const EntropyOptions& opts,
                      const std::vector<int>& dims, double beta_min,
                      double beta_max) {
  Rng rng = instance_rng(seed, index);
  const int dim = dims[static_cast<std::size_t>(index) % dims.size()];
  std::uniform_real_distribution<double> beta_dist(beta_min, beta_max);
  const double beta = beta_dist(rng);
  const OneParticleSpace space = random_space(rng, dim);
  const DynamicsGenerator gen = random_generator(rng, space);
  const FieldVector f = random_field(rng, space);
  const EntropyReport report = full_report(space, gen, beta, f.v, opts);

  std::string row = std::to_string(index) + "," + std::to_string(dim) + "," +
                    format_double(beta) + "," +
                    entropy_report_to_csv(report);
  return row;
}

int cmd_sweep(const SweepSettings& settings, const CommonOptions& common) {
  const EntropyOptions opts = entropy_options(common);
  std::vector<std::string> rows(settings.instances);

  const int worker_count =
      std::max(1, std::min(settings.threads, settings.instances));
  if (worker_count <= 1) {
    for (int i = 0; i < settings.instances; ++i) {
      rows[i] = sweep_row(i, settings.seed, opts, settings.dims,
                          settings.beta_min, settings.beta_max);
    }
  } else {
    std::vector<std::thread> workers;
    workers.reserve(worker_count);
    for (int w = 0; w < worker_count; ++w) {
      workers.emplace_back([&, w]() {
        for (int i = w; i < settings.instances; i += worker_count) {
          rows[i] = sweep_row(i, settings.seed, opts, settings.dims,
                              settings.beta_min, settings.beta_max);
        }
      });
    }
    for (std::thread& worker : workers) worker.join();
  }

  std::string text =
      "instance,dim,beta,araki_analytic,araki_fd,vn_direct,vn_commutator,"
      "max_pairwise_discrepancy,verdict\n";
  bool all_pass = true;
  for (const std::string& row : rows) {
    text += row + "\n";
    if (row.size() >= 4 && row.compare(row.size() - 4, 4, "fail") == 0) {
      all_pass = false;
    }
  }
  write_output(text, common.out_path);
  return all_pass ? kExitOk : kExitVerificationFailure;
}

}  // namespace

int run_cli(std::vector<std::string> args) {
  CLI::App app{"Relative entropy for finite self-dual CAR algebras", "sdcar"};
  app.require_subcommand(1);

  CommonOptions common;

  // entropy single|multi|exp|subspace
  CLI::App* entropy_cmd =
      app.add_subcommand("entropy", "entropy of unitary excitations");
  entropy_cmd->require_subcommand(1);
  CLI::App* single = entropy_cmd->add_subcommand(
      "single", "single unitary excitation, all four routes");
  CLI::App* multi =
      entropy_cmd->add_subcommand("multi", "product of unitary excitations");
  CLI::App* exp_cmd = entropy_cmd->add_subcommand(
      "exp", "unitary exponential excitation e^{iB(f)}");
  CLI::App* subspace = entropy_cmd->add_subcommand(
      "subspace", "standard-subspace excitation (1+i)B(f)");
  for (CLI::App* cmd : {single, multi, exp_cmd, subspace}) {
    cmd->add_option("--config", common.config_path, "problem JSON")
        ->required();
    cmd->add_option("--out", common.out_path, "output path");
    cmd->add_option("--format", common.format, "json|csv");
    cmd->add_option("--tol", common.accept_tol, "acceptance tolerance");
    cmd->add_option("--fd-step", common.fd_step, "finite-difference step");
  }

  // majorana
  double a = 0.0, m = 0.0, beta = 0.0;
  int n_max = 32;
  std::vector<std::string> coeff_args;
  CLI::App* majorana = app.add_subcommand(
      "majorana", "1+1 Majorana field on an interval, closed form vs matrix");
  majorana->add_option("--config", common.config_path, "problem JSON");
  majorana->add_option("--a", a, "interval length");
  majorana->add_option("--m", m, "mass");
  majorana->add_option("--beta", beta, "inverse temperature");
  majorana->add_option("--modes", n_max, "mode cutoff n_max");
  majorana->add_option("--coeff", coeff_args,
                       "mode coefficients n:aplus,aminus (repeatable)");
  majorana->add_option("--out", common.out_path, "output path");
  majorana->add_option("--format", common.format, "json|csv");
  majorana->add_option("--tol", common.accept_tol, "acceptance tolerance");
  majorana->add_option("--fd-step", common.fd_step, "finite-difference step");

  // bipartite
  CLI::App* bipartite = app.add_subcommand(
      "bipartite", "Schmidt/modular suite on a bipartite vector");
  bipartite->add_option("--config", common.config_path, "problem JSON")
      ->required();
  bipartite->add_option("--out", common.out_path, "output path");

  // check
  std::string suite = "all";
  std::uint64_t check_seed = 42;
  CLI::App* check = app.add_subcommand("check", "seeded invariant suites");
  check->add_option("--suite", suite,
                    "all|hilbert|quasifree|fock|modular|entropy|majorana");
  check->add_option("--seed", check_seed, "rng seed");
  check->add_option("--out", common.out_path, "output path");

  // sweep
  SweepSettings sweep;
  std::string dims_arg = "2,4,6,8,10,12";
  CLI::App* sweep_cmd = app.add_subcommand(
      "sweep", "random-instance sweep over all entropy routes, CSV");
  sweep_cmd->add_option("--instances", sweep.instances, "instance count");
  sweep_cmd->add_option("--dims", dims_arg, "comma-separated even dims");
  sweep_cmd->add_option("--beta-min", sweep.beta_min, "lower beta");
  sweep_cmd->add_option("--beta-max", sweep.beta_max, "upper beta");
  sweep_cmd->add_option("--seed", sweep.seed, "rng seed");
  sweep_cmd->add_option("--threads", sweep.threads, "worker threads");
  sweep_cmd->add_option("--out", common.out_path, "output path");
  sweep_cmd->add_option("--tol", common.accept_tol, "acceptance tolerance");
  sweep_cmd->add_option("--fd-step", common.fd_step, "finite-difference step");

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (common.format != "json" && common.format != "csv") {
      throw Error(ErrorCode::UsageError,
                  "--format must be json or csv, got \"" + common.format +
                      "\"");
    }
    if (single->parsed()) return cmd_entropy_single(common);
    if (multi->parsed()) return cmd_entropy_multi(common);
    if (exp_cmd->parsed()) return cmd_entropy_exp(common);
    if (subspace->parsed()) return cmd_entropy_subspace(common);
    if (majorana->parsed()) {
      return cmd_majorana(common, a, m, beta, n_max, coeff_args);
    }
    if (bipartite->parsed()) return cmd_bipartite(common);
    if (check->parsed()) return cmd_check(suite, check_seed, common.out_path);
    if (sweep_cmd->parsed()) {
      sweep.dims.clear();
      std::stringstream stream(dims_arg);
      std::string item;
      while (std::getline(stream, item, ',')) {
        sweep.dims.push_back(std::stoi(item));
      }
      if (sweep.dims.empty()) {
        throw Error(ErrorCode::UsageError, "--dims list is empty");
      }
      for (int d : sweep.dims) {
        if (d < 2 || d % 2 != 0) {
          throw Error(ErrorCode::UsageError,
                      "dims must be even and >= 2, got " + std::to_string(d));
        }
      }
      if (sweep.instances < 0) {
        throw Error(ErrorCode::UsageError, "--instances must be >= 0");
      }
      return cmd_sweep(sweep, common);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace sdcar
