#pragma once

// JSON config/report serialization and CSV helpers. Complex numbers are
// [re, im] pairs, vectors are arrays of pairs, matrices arrays of rows.
// CSV output uses 17 significant digits so numeric fields survive a
// round trip bit-exactly.

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "sdcar/entropy.hpp"
#include "sdcar/majorana1d.hpp"

namespace sdcar {

using Json = nlohmann::json;

std::string format_double(double x);

Json complex_to_json(const Complex& z);
Complex complex_from_json(const Json& j);

Json vector_to_json(const Vector& v);
Vector vector_from_json(const Json& j);

Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

// Config for the entropy subcommands: one-particle data plus excitations.
struct EntropyProblem {
  int dim = 0;
  Matrix involution;
  Matrix hamiltonian;
  double beta = 0.0;
  std::vector<Vector> fields;  // one entry for single/exp/subspace
};

EntropyProblem entropy_problem_from_json(const Json& j);
Json entropy_problem_to_json(const EntropyProblem& problem);

MajoranaConfig majorana_config_from_json(const Json& j);
Json majorana_config_to_json(const MajoranaConfig& config);

struct BipartiteProblem {
  int n = 0;
  Vector psi;
  Vector phi;
};

BipartiteProblem bipartite_problem_from_json(const Json& j);

Json entropy_report_to_json(const EntropyReport& report);
EntropyReport entropy_report_from_json(const Json& j);
std::string entropy_report_to_csv(const EntropyReport& report);

Json load_json_file(const std::string& path);

}  // namespace sdcar
