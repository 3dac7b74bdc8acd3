#include "sdcar/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include <nlohmann/json.hpp>

namespace sdcar {

std::string format_double(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

Json complex_to_json(const Complex& z) {
  return Json::array({z.real(), z.imag()});
}

Complex complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() ||
      !j[1].is_number()) {
    throw Error(ErrorCode::ConfigParseError,
                "complex number must be [re, im]");
  }
  return Complex(j[0].get<double>(), j[1].get<double>());
}

Json vector_to_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    out.push_back(complex_to_json(v[i]));
  }
  return out;
}

Vector vector_from_json(const Json& j) {
  if (!j.is_array()) {
    throw Error(ErrorCode::ConfigParseError, "vector must be an array");
  }
  Vector v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    v[static_cast<Eigen::Index>(i)] = complex_from_json(j[i]);
  }
  return v;
}

Json matrix_to_json(const Matrix& m) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      row.push_back(complex_to_json(m(i, k)));
    }
    out.push_back(row);
  }
  return out;
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) {
    throw Error(ErrorCode::ConfigParseError, "matrix must be a nonempty array");
  }
  const std::size_t rows = j.size();
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) {
      throw Error(ErrorCode::ConfigParseError, "ragged matrix rows");
    }
    for (std::size_t k = 0; k < cols; ++k) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
          complex_from_json(j[i][k]);
    }
  }
  return m;
}

namespace {

const Json& require(const Json& j, const char* key) {
  if (!j.contains(key)) {
    throw Error(ErrorCode::ConfigParseError,
                std::string("missing key \"") + key + "\"");
  }
  return j.at(key);
}

}  // namespace

EntropyProblem entropy_problem_from_json(const Json& j) {
  EntropyProblem problem;
  problem.dim = require(j, "dim").get<int>();
  problem.involution = matrix_from_json(require(j, "K"));
  problem.hamiltonian = matrix_from_json(require(j, "h"));
  problem.beta = require(j, "beta").get<double>();
  if (j.contains("f")) {
    problem.fields.push_back(vector_from_json(j.at("f")));
  }
  if (j.contains("fields")) {
    for (const Json& field : j.at("fields")) {
      problem.fields.push_back(vector_from_json(field));
    }
  }
  if (problem.fields.empty()) {
    throw Error(ErrorCode::ConfigParseError, "need \"f\" or \"fields\"");
  }
  return problem;
}

Json entropy_problem_to_json(const EntropyProblem& problem) {
  Json j;
  j["dim"] = problem.dim;
  j["K"] = matrix_to_json(problem.involution);
  j["h"] = matrix_to_json(problem.hamiltonian);
  j["beta"] = problem.beta;
  if (problem.fields.size() == 1) {
    j["f"] = vector_to_json(problem.fields.front());
  } else {
    Json fields = Json::array();
    for (const Vector& f : problem.fields) {
      fields.push_back(vector_to_json(f));
    }
    j["fields"] = fields;
  }
  return j;
}

MajoranaConfig majorana_config_from_json(const Json& j) {
  MajoranaConfig config;
  config.interval = require(j, "a").get<double>();
  config.mass = require(j, "m").get<double>();
  config.beta = require(j, "beta").get<double>();
  config.n_max = j.value("n_max", 32);
  const Json& coeffs = require(j, "coeffs");
  if (!coeffs.is_object()) {
    throw Error(ErrorCode::ConfigParseError,
                "\"coeffs\" must map mode index to [[re,im],[re,im]]");
  }
  for (const auto& [key, value] : coeffs.items()) {
    int n = 0;
    try {
      n = std::stoi(key);
    } catch (const std::exception&) {
      throw Error(ErrorCode::ConfigParseError,
                  "coeff key \"" + key + "\" is not a mode index");
    }
    if (!value.is_array() || value.size() != 2) {
      throw Error(ErrorCode::ConfigParseError,
                  "coeff for mode " + key + " must be [[re,im],[re,im]]");
    }
    config.coefficients[n] = {complex_from_json(value[0]),
                              complex_from_json(value[1])};
  }
  return config;
}

Json majorana_config_to_json(const MajoranaConfig& config) {
  Json j;
  j["a"] = config.interval;
  j["m"] = config.mass;
  j["beta"] = config.beta;
  j["n_max"] = config.n_max;
  Json coeffs = Json::object();
  for (const auto& [n, pair] : config.coefficients) {
    coeffs[std::to_string(n)] =
        Json::array({complex_to_json(pair.first), complex_to_json(pair.second)});
  }
  j["coeffs"] = coeffs;
  return j;
}

BipartiteProblem bipartite_problem_from_json(const Json& j) {
  BipartiteProblem problem;
  problem.n = require(j, "n").get<int>();
  problem.psi = vector_from_json(require(j, "psi"));
  if (j.contains("phi")) {
    problem.phi = vector_from_json(j.at("phi"));
  }
  return problem;
}

Json entropy_report_to_json(const EntropyReport& report) {
  Json j;
  j["araki_analytic"] = report.araki_analytic;
  j["araki_fd"] = report.araki_fd;
  if (std::isinf(report.vn_direct)) {
    j["vn_direct"] = "inf";
  } else {
    j["vn_direct"] = report.vn_direct;
  }
  j["vn_commutator"] = report.vn_commutator;
  j["max_pairwise_discrepancy"] = report.max_pairwise_discrepancy;
  j["accept_tol"] = report.accept_tol;
  j["verdict"] = report.pass ? "pass" : "fail";
  return j;
}

EntropyReport entropy_report_from_json(const Json& j) {
  EntropyReport report;
  report.araki_analytic = require(j, "araki_analytic").get<double>();
  report.araki_fd = require(j, "araki_fd").get<double>();
  const Json& vn = require(j, "vn_direct");
  report.vn_direct = vn.is_string()
                         ? std::numeric_limits<double>::infinity()
                         : vn.get<double>();
  report.vn_commutator = require(j, "vn_commutator").get<double>();
  report.max_pairwise_discrepancy =
      require(j, "max_pairwise_discrepancy").get<double>();
  report.accept_tol = require(j, "accept_tol").get<double>();
  report.pass = require(j, "verdict").get<std::string>() == "pass";
  return report;
}

std::string entropy_report_to_csv(const EntropyReport& report) {
  std::string row;
  row += format_double(report.araki_analytic) + ",";
  row += format_double(report.araki_fd) + ",";
  row += format_double(report.vn_direct) + ",";
  row += format_double(report.vn_commutator) + ",";
  row += format_double(report.max_pairwise_discrepancy) + ",";
  row += report.pass ? "pass" : "fail";
  return row;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::ConfigParseError, "cannot open " + path);
  }
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw Error(ErrorCode::ConfigParseError,
                path + ": " + std::string(e.what()));
  }
  return j;
}

}  // namespace sdcar
