#pragma once

#include <string>

#include <json.hpp>

#include "aro/dro.hpp"
#include "aro/geometry.hpp"
#include "aro/model.hpp"
#include "aro/robust_solve.hpp"
#include "aro/synthesis.hpp"
#include "aro/wasserstein.hpp"

namespace aro::io {

using nlohmann::json;

json to_json(const VectorXd& v);
json to_json(const MatrixXd& m);
VectorXd vector_from_json(const json& j, const std::string& what);
MatrixXd matrix_from_json(const json& j, const std::string& what);

// Problem schema:
// {
//   "objective": [c...],
//   "uncertainty_dim": m,
//   "constraints": [{"a": [...], "e": [...], "Q": [[...]]?, "const": s}, ...],
//   "decision_set": {"G": [[...]], "h": [...]}
// }
json to_json(const RobustProgram& p);
RobustProgram program_from_json(const json& j);

// Set schema: {"type": "norm_ball", "p": 1|2|"inf", "radius": r, "dim": m}
//          or {"type": "polytope", "V": [[...]], "d": [...]}
json to_json(const UncertaintySet& s);
UncertaintySet set_from_json(const json& j);

// Scaled set schema: {"base": <set>, "alpha": a, "anchor": [...], "rhs": [...]}
// (rhs is emitted for polytopes and ignored on input).
json to_json(const ScaledSet& s);
ScaledSet scaled_set_from_json(const json& j);

json to_json(const DualCertificate& cert);

// Samples CSV: header xi_1,...,xi_m then one sample per row.
std::string samples_to_csv(const SampleSet& data);
SampleSet samples_from_csv(const std::string& text);

SampleSet read_samples_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

// Reproducibility stamp embedded in every CLI output. "timestamp" and
// "wall_clock_ms" are the only fields allowed to differ between identical
// runs.
struct RunManifest {
  std::string command;
  std::vector<std::string> inputs;
  unsigned long long seed = 0;
  json config;
  std::string tool_version;
  double wall_clock_ms = 0.0;
  std::string timestamp;
};

json to_json(const RunManifest& m);

// Canonical serialization used for result files: 2-space indent, sorted keys
// (nlohmann objects are key-ordered), trailing newline.
std::string dump_result(const json& j);

}  // namespace aro::io
