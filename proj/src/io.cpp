#include "aro/io.hpp"

#include <fstream>
#include <sstream>

#include "aro/version.hpp"

namespace aro::io {

json to_json(const VectorXd& v) {
  json arr = json::array();
  for (int i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

json to_json(const MatrixXd& m) {
  json rows = json::array();
  for (int r = 0; r < m.rows(); ++r) rows.push_back(to_json(VectorXd(m.row(r).transpose())));
  return rows;
}

VectorXd vector_from_json(const json& j, const std::string& what) {
  if (!j.is_array()) fail(ErrorCode::InvalidInput, what + " must be an array");
  VectorXd v(j.size());
  for (size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) fail(ErrorCode::InvalidInput, what + " must hold numbers");
    v(static_cast<int>(i)) = j[i].get<double>();
  }
  return v;
}

MatrixXd matrix_from_json(const json& j, const std::string& what) {
  if (!j.is_array() || j.empty()) fail(ErrorCode::InvalidInput, what + " must be a nonempty array of rows");
  const size_t cols = j[0].is_array() ? j[0].size() : 0;
  MatrixXd m(j.size(), cols);
  for (size_t r = 0; r < j.size(); ++r) {
    VectorXd row = vector_from_json(j[r], what + " row");
    if (static_cast<size_t>(row.size()) != cols)
      fail(ErrorCode::InvalidInput, what + " rows have unequal lengths");
    m.row(static_cast<int>(r)) = row.transpose();
  }
  return m;
}

json to_json(const RobustProgram& p) {
  json j;
  j["objective"] = to_json(p.objective);
  j["uncertainty_dim"] = p.uncertainty_dim;
  json cons = json::array();
  for (const BiAffineConstraint& c : p.constraints) {
    json jc;
    jc["a"] = to_json(c.a);
    jc["e"] = to_json(c.e);
    if (c.Q.size() > 0) jc["Q"] = to_json(c.Q);
    jc["const"] = c.constant;
    cons.push_back(jc);
  }
  j["constraints"] = cons;
  j["decision_set"] = {{"G", to_json(p.decision_set.G)}, {"h", to_json(p.decision_set.h)}};
  return j;
}

RobustProgram program_from_json(const json& j) {
  RobustProgram p;
  if (!j.contains("objective") || !j.contains("constraints") || !j.contains("decision_set") ||
      !j.contains("uncertainty_dim"))
    fail(ErrorCode::InvalidInput,
         "problem JSON needs objective, constraints, decision_set, uncertainty_dim");
  p.objective = vector_from_json(j.at("objective"), "objective");
  p.uncertainty_dim = j.at("uncertainty_dim").get<int>();
  for (const json& jc : j.at("constraints")) {
    BiAffineConstraint c;
    c.a = vector_from_json(jc.at("a"), "constraint a");
    c.e = vector_from_json(jc.at("e"), "constraint e");
    if (jc.contains("Q")) c.Q = matrix_from_json(jc.at("Q"), "constraint Q");
    c.constant = jc.value("const", 0.0);
    p.constraints.push_back(std::move(c));
  }
  const json& ds = j.at("decision_set");
  p.decision_set.G = matrix_from_json(ds.at("G"), "decision_set G");
  p.decision_set.h = vector_from_json(ds.at("h"), "decision_set h");
  return p;
}

json to_json(const UncertaintySet& s) {
  json j;
  if (s.is_polytope()) {
    j["type"] = "polytope";
    j["V"] = to_json(s.polytope().V);
    j["d"] = to_json(s.polytope().d);
  } else {
    const NormBall& b = s.norm_ball();
    j["type"] = "norm_ball";
    j["p"] = b.p == Norm::Linf ? json("inf") : json(b.p == Norm::L1 ? 1 : 2);
    j["radius"] = b.radius;
    j["dim"] = b.dim;
  }
  return j;
}

UncertaintySet set_from_json(const json& j) {
  const std::string type = j.value("type", "");
  if (type == "polytope") {
    Polytope p;
    p.V = matrix_from_json(j.at("V"), "set V");
    p.d = vector_from_json(j.at("d"), "set d");
    return UncertaintySet(p);
  }
  if (type == "norm_ball") {
    NormBall b;
    const json& p = j.at("p");
    if (p.is_string()) {
      if (p.get<std::string>() != "inf") fail(ErrorCode::InvalidInput, "p must be 1, 2 or \"inf\"");
      b.p = Norm::Linf;
    } else if (p.get<int>() == 1) {
      b.p = Norm::L1;
    } else if (p.get<int>() == 2) {
      b.p = Norm::L2;
    } else {
      fail(ErrorCode::InvalidInput, "p must be 1, 2 or \"inf\"");
    }
    b.radius = j.at("radius").get<double>();
    b.dim = j.at("dim").get<int>();
    return UncertaintySet(b);
  }
  fail(ErrorCode::InvalidInput, "set type must be polytope or norm_ball");
}

json to_json(const ScaledSet& s) {
  json j;
  j["base"] = to_json(s.base);
  j["alpha"] = s.alpha;
  j["anchor"] = to_json(s.anchor);
  if (s.base.is_polytope()) j["rhs"] = to_json(homothety_rhs(s));
  return j;
}

ScaledSet scaled_set_from_json(const json& j) {
  UncertaintySet base = set_from_json(j.at("base"));
  double alpha = j.at("alpha").get<double>();
  if (j.contains("anchor") && base.is_polytope())
    return make_scaled(base, alpha, vector_from_json(j.at("anchor"), "anchor"));
  return make_scaled(base, alpha);
}

json to_json(const DualCertificate& cert) {
  json j;
  j["lambda"] = cert.lambda;
  j["s"] = to_json(cert.s);
  j["theta"] = to_json(cert.theta);
  json gammas = json::array();
  for (const MatrixXd& g : cert.gamma) gammas.push_back(to_json(g));
  j["gamma"] = gammas;
  j["objective"] = cert.objective;
  return j;
}

std::string samples_to_csv(const SampleSet& data) {
  std::ostringstream out;
  out.precision(17);
  const int m = data.dim();
  for (int k = 0; k < m; ++k) out << (k ? "," : "") << "xi_" << (k + 1);
  out << "\n";
  for (const VectorXd& xi : data.samples) {
    for (int k = 0; k < xi.size(); ++k) out << (k ? "," : "") << xi(k);
    out << "\n";
  }
  return out.str();
}

SampleSet samples_from_csv(const std::string& text) {
  SampleSet data;
  std::istringstream in(text);
  std::string line;
  bool header = true;
  int m = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (header) {
      std::istringstream cells(line);
      std::string cell;
      while (std::getline(cells, cell, ',')) ++m;
      if (m == 0) fail(ErrorCode::InvalidInput, "samples CSV has an empty header");
      header = false;
      continue;
    }
    std::istringstream cells(line);
    std::string cell;
    VectorXd xi(m);
    int k = 0;
    while (std::getline(cells, cell, ',')) {
      if (k >= m) fail(ErrorCode::InvalidInput, "samples CSV row longer than header");
      try {
        xi(k) = std::stod(cell);
      } catch (const std::exception&) {
        fail(ErrorCode::InvalidInput, "samples CSV holds a non-numeric cell: " + cell);
      }
      ++k;
    }
    if (k != m) fail(ErrorCode::InvalidInput, "samples CSV row shorter than header");
    data.samples.push_back(xi);
  }
  if (header) fail(ErrorCode::InvalidInput, "samples CSV is empty");
  data.source = "csv";
  return data;
}

SampleSet read_samples_file(const std::string& path) {
  return samples_from_csv(read_text_file(path));
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::InvalidInput, "cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::InvalidInput, "cannot write " + path);
  out << text;
}

json to_json(const RunManifest& m) {
  json j;
  j["command"] = m.command;
  j["inputs"] = m.inputs;
  j["seed"] = m.seed;
  j["config"] = m.config;
  j["tool_version"] = m.tool_version.empty() ? kVersion : m.tool_version;
  j["wall_clock_ms"] = m.wall_clock_ms;
  j["timestamp"] = m.timestamp;
  return j;
}

std::string dump_result(const json& j) { return j.dump(2) + "\n"; }

}  // namespace aro::io
