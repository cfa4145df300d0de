#include "aro/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

#include "aro/geometry.hpp"
#include "aro/tolerances.hpp"

#ifndef ARO_DATA_DIR
#define ARO_DATA_DIR "data"
#endif

namespace aro::bench {
namespace {

// Pinned FNV-1a 64 checksum of the bundled case file.
constexpr unsigned long long kCase5Checksum = 0x39fe56886bd56ecfULL;

// Frequency-adequacy parameters. The reserve product bound comes from the
// published reserve sizing (R * H >= numerator / (4 * df_lim)); the Dro
// variant uses the alternative constants tied to the distributionally robust
// runs.
struct FrequencyParams {
  double conventional_inertia;  // aggregate inertia of online units
  double reserve;               // primary frequency response, MW
  double nadir_rhs;             // reserve-product lower bound
  double rocof_floor;           // required aggregate inertia for RoCoF
};

constexpr double kLossOfGeneration = 600.0;  // largest unit, MW
constexpr double kRocofLimit = 0.5;          // Hz/s

struct CaseData {
  std::vector<double> load;                       // per bus, MW
  std::vector<std::tuple<int, int, double>> branches;  // from, to, x_pu
  struct Gen {
    int bus;
    double pmin, pmax, cost, inertia;
    bool online;
  };
  std::vector<Gen> gens;
  struct Vi {
    int bus;
    double hmin, hmax, cost;
  };
  std::vector<Vi> vis;
  int num_buses = 0;
};

unsigned long long fnv1a(const std::string& bytes) {
  unsigned long long h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

CaseData parse_case(const std::string& path, bool verify_checksum) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::MissingCaseFile, "cannot open case file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  if (verify_checksum && fnv1a(text) != kCase5Checksum)
    fail(ErrorCode::MissingCaseFile, "bundled case file failed its checksum: " + path);

  CaseData data;
  std::istringstream lines(text);
  std::string line;
  int lineno = 0;
  while (std::getline(lines, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string tag;
    if (!(fields >> tag)) continue;
    auto need = [&](auto&... vals) {
      if (!((fields >> vals) && ...)) {
        std::ostringstream msg;
        msg << "malformed " << tag << " record at line " << lineno;
        fail(ErrorCode::MissingCaseFile, msg.str());
      }
    };
    if (tag == "BUS") {
      int id;
      double load;
      need(id, load);
      data.load.resize(std::max<size_t>(data.load.size(), id), 0.0);
      data.load[id - 1] = load;
      data.num_buses = std::max(data.num_buses, id);
    } else if (tag == "BRANCH") {
      int from, to;
      double x;
      need(from, to, x);
      data.branches.emplace_back(from - 1, to - 1, x);
    } else if (tag == "GEN") {
      int bus, status;
      double pmin, pmax, cost, inertia;
      need(bus, pmin, pmax, cost, inertia, status);
      data.gens.push_back({bus - 1, pmin, pmax, cost, inertia, status != 0});
    } else if (tag == "VI") {
      int bus;
      double hmin, hmax, cost;
      need(bus, hmin, hmax, cost);
      data.vis.push_back({bus - 1, hmin, hmax, cost});
    } else {
      fail(ErrorCode::MissingCaseFile, "unknown record tag " + tag);
    }
  }
  if (data.num_buses == 0 || data.branches.empty() || data.gens.empty())
    fail(ErrorCode::MissingCaseFile, "case file is missing sections");
  return data;
}

Benchmark build_motivating() {
  Benchmark b;
  b.id = BenchmarkId::Motivating;
  b.variable_names = {"x"};

  RobustProgram p;
  p.objective = VectorXd::Constant(1, 1.0);
  p.uncertainty_dim = 1;
  BiAffineConstraint c;
  c.a = VectorXd::Constant(1, 1.0);
  c.e = VectorXd::Constant(1, 1.0);
  c.constant = -5.0;
  p.constraints.push_back(c);
  p.decision_set.G = MatrixXd(2, 1);
  p.decision_set.G << 1, -1;
  p.decision_set.h = VectorXd(2);
  p.decision_set.h << 2, -1;
  b.program = p;

  Polytope s;
  s.V = MatrixXd(2, 1);
  s.V << 1, -1;
  s.d = VectorXd(2);
  s.d << 5, -3;
  b.base_set = UncertaintySet(s);

  ExpectedSolution exp;
  exp.alpha_star = 0.5;
  exp.anchor = VectorXd::Constant(1, 3.0);
  exp.scaled_rhs = VectorXd(2);
  exp.scaled_rhs << 4, -3;
  exp.dispatch = VectorXd::Constant(1, 1.0);
  b.expected = exp;
  return b;
}

Benchmark build_numerical_lp() {
  Benchmark b;
  b.id = BenchmarkId::NumericalLp;
  b.variable_names = {"x1", "x2"};

  RobustProgram p;
  p.objective = VectorXd(2);
  p.objective << -1, -3;
  p.uncertainty_dim = 2;
  MatrixXd A(2, 2);
  A << 1, 1, 1, 2;
  VectorXd rhs(2);
  rhs << 5, 6;
  for (int j = 0; j < 2; ++j) {
    BiAffineConstraint c;
    c.a = A.row(j).transpose();
    c.e = VectorXd::Zero(2);
    c.e(j) = -1.0;  // A x <= b + xi
    c.constant = -rhs(j);
    p.constraints.push_back(c);
  }
  p.decision_set.G = -MatrixXd::Identity(2, 2);
  p.decision_set.h = VectorXd::Zero(2);
  b.program = p;

  Polytope s;
  s.V = MatrixXd(4, 2);
  s.V << 1, 0, 0, 1, -1, 0, 0, -1;
  s.d = VectorXd::Constant(4, 10.0);
  b.base_set = UncertaintySet(s);

  ExpectedSolution exp;
  exp.alpha_star = 0.75;
  exp.anchor = VectorXd::Constant(2, 10.0);
  exp.scaled_rhs = VectorXd(4);
  exp.scaled_rhs << 10, 10, 5, 5;
  exp.dispatch = VectorXd::Zero(2);
  b.expected = exp;
  return b;
}

Benchmark build_opf(OpfVariant variant, const std::string& case_file) {
  const bool use_default = case_file.empty();
  const std::string path = use_default ? default_case_file() : case_file;
  CaseData data = parse_case(path, use_default);

  std::vector<CaseData::Gen> gens;
  double conventional_inertia = 0.0;
  for (const auto& g : data.gens) {
    if (!g.online) continue;
    gens.push_back(g);
    conventional_inertia += g.inertia;
  }
  const int G = static_cast<int>(gens.size());
  const int C = static_cast<int>(data.vis.size());
  const int B = data.num_buses;
  const int n = G + C + B;
  const int p_off = 0;
  const int hc_off = G;
  const int th_off = G + C;
  const double s_base = 100.0;

  FrequencyParams fp;
  if (variant == OpfVariant::Standard) {
    fp = {conventional_inertia, 324.0, 829440.0 / 3.2,
          kLossOfGeneration / (2.0 * kRocofLimit)};
  } else {
    fp = {550.0, 300.0, 720000.0 / 3.2, kLossOfGeneration / (2.0 * kRocofLimit)};
  }

  Benchmark b;
  b.id = BenchmarkId::Opf5Bus;
  RobustProgram p;
  p.objective = VectorXd::Zero(n);
  p.uncertainty_dim = 1;
  {
    int seq = 0;
    for (const auto& g : data.gens) {
      ++seq;
      if (!g.online) continue;
      b.variable_names.push_back("P_g" + std::to_string(seq));
    }
  }
  for (int k = 0; k < C; ++k) b.variable_names.push_back("H_c" + std::to_string(k + 1));
  for (int k = 0; k < B; ++k) b.variable_names.push_back("theta_" + std::to_string(k + 1));
  for (int g = 0; g < G; ++g) p.objective(p_off + g) = gens[g].cost;
  for (int k = 0; k < C; ++k) p.objective(hc_off + k) = data.vis[k].cost;

  // Reserve adequacy: (H_conv + sum Hc + xi) * R >= nadir_rhs.
  {
    BiAffineConstraint c;
    c.a = VectorXd::Zero(n);
    for (int k = 0; k < C; ++k) c.a(hc_off + k) = -fp.reserve;
    c.e = VectorXd::Constant(1, -fp.reserve);
    c.constant = fp.nadir_rhs - fp.reserve * fp.conventional_inertia;
    p.constraints.push_back(c);
  }
  // RoCoF: H_conv + sum Hc + xi >= P_L / (2 df_lim), already affine.
  {
    BiAffineConstraint c;
    c.a = VectorXd::Zero(n);
    for (int k = 0; k < C; ++k) c.a(hc_off + k) = -1.0;
    c.e = VectorXd::Constant(1, -1.0);
    c.constant = fp.rocof_floor - fp.conventional_inertia;
    p.constraints.push_back(c);
  }

  // Decision polytope: nodal balance (pairs of inequalities), DC flows
  // substituted, box bounds, and the aggregate virtual-inertia window.
  std::vector<VectorXd> rows;
  std::vector<double> rhs;
  auto add_row = [&](const VectorXd& row, double r) {
    rows.push_back(row);
    rhs.push_back(r);
  };

  for (int bus = 0; bus < B; ++bus) {
    VectorXd row = VectorXd::Zero(n);
    for (int g = 0; g < G; ++g) {
      if (gens[g].bus == bus) row(p_off + g) = 1.0;
    }
    for (const auto& [from, to, x] : data.branches) {
      const double w = s_base / x;
      if (from == bus) {
        row(th_off + from) -= w;
        row(th_off + to) += w;
      } else if (to == bus) {
        row(th_off + to) -= w;
        row(th_off + from) += w;
      }
    }
    add_row(row, data.load[bus]);
    add_row(-row, -data.load[bus]);
  }
  for (int g = 0; g < G; ++g) {
    VectorXd row = VectorXd::Zero(n);
    row(p_off + g) = 1.0;
    add_row(row, gens[g].pmax);
    add_row(-row, -gens[g].pmin);
  }
  for (int k = 0; k < C; ++k) {
    VectorXd row = VectorXd::Zero(n);
    row(hc_off + k) = 1.0;
    add_row(row, data.vis[k].hmax);
    add_row(-row, -data.vis[k].hmin);
  }
  {
    VectorXd row = VectorXd::Zero(n);
    for (int k = 0; k < C; ++k) row(hc_off + k) = 1.0;
    add_row(row, 175.0);
    add_row(-row, -116.0);
  }
  for (int k = 0; k < B; ++k) {
    VectorXd row = VectorXd::Zero(n);
    row(th_off + k) = 1.0;
    add_row(row, M_PI);
    add_row(-row, 0.0);
  }

  p.decision_set.G = MatrixXd(static_cast<int>(rows.size()), n);
  p.decision_set.h = VectorXd(static_cast<int>(rows.size()));
  for (size_t r = 0; r < rows.size(); ++r) {
    p.decision_set.G.row(static_cast<int>(r)) = rows[r].transpose();
    p.decision_set.h(static_cast<int>(r)) = rhs[r];
  }
  b.program = p;

  Polytope s;
  s.V = MatrixXd(2, 1);
  s.V << 1, -1;
  s.d = VectorXd(2);
  s.d << 35, -20;
  b.base_set = UncertaintySet(s);

  ExpectedSolution exp;
  exp.alpha_star = 2.0 / 3.0;
  exp.anchor = VectorXd::Constant(1, 35.0);
  exp.scaled_rhs = VectorXd(2);
  exp.scaled_rhs << 35, -25;
  exp.dispatch = VectorXd(G + C);
  exp.dispatch << 40, 170, 520, 270, 100, 75;
  b.expected = exp;
  return b;
}

// Deterministic uniforms independent of platform distribution quirks.
class Uniform {
 public:
  explicit Uniform(unsigned long long seed) : rng_(seed) {}
  double next() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
  double range(double lo, double hi) { return lo + (hi - lo) * next(); }
  double gaussian() {
    // Box-Muller on the owned stream.
    double u1 = std::max(next(), 1e-300);
    double u2 = next();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }
  double exponential() { return -std::log(std::max(1.0 - next(), 1e-300)); }

 private:
  std::mt19937_64 rng_;
};

}  // namespace

BenchmarkId parse_benchmark_id(const std::string& name) {
  if (name == "motivating") return BenchmarkId::Motivating;
  if (name == "numerical_lp") return BenchmarkId::NumericalLp;
  if (name == "opf_5bus") return BenchmarkId::Opf5Bus;
  fail(ErrorCode::UnknownBenchmark, "unknown benchmark id " + name);
}

std::string benchmark_id_name(BenchmarkId id) {
  switch (id) {
    case BenchmarkId::Motivating: return "motivating";
    case BenchmarkId::NumericalLp: return "numerical_lp";
    case BenchmarkId::Opf5Bus: return "opf_5bus";
  }
  return "?";
}

std::string default_case_file() {
  if (const char* env = std::getenv("ARO_CASE_FILE")) return env;
  return std::string(ARO_DATA_DIR) + "/case5.txt";
}

Benchmark load_benchmark(BenchmarkId id, OpfVariant variant, const std::string& case_file) {
  switch (id) {
    case BenchmarkId::Motivating: return build_motivating();
    case BenchmarkId::NumericalLp: return build_numerical_lp();
    case BenchmarkId::Opf5Bus: return build_opf(variant, case_file);
  }
  fail(ErrorCode::UnknownBenchmark, "unhandled benchmark id");
}

SampleSet generate_samples(const UncertaintySet& set, int n, unsigned long long seed) {
  if (n < 0) fail(ErrorCode::InvalidInput, "sample count must be nonnegative");
  const int m = set.dim();
  SampleSet out;
  out.seed = seed;
  Uniform rng(seed);

  std::ostringstream src;
  if (set.is_polytope()) {
    src << "uniform(polytope dim=" << m << ")";
    Box box = bounding_box(set.polytope());
    long long attempts = 0;
    while (static_cast<int>(out.samples.size()) < n) {
      VectorXd xi(m);
      for (int k = 0; k < m; ++k) xi(k) = rng.range(box.lo(k), box.hi(k));
      ++attempts;
      if (contains(set, xi)) out.samples.push_back(xi);
      if (attempts >= 10000 &&
          static_cast<double>(out.samples.size()) / attempts < 1e-4)
        fail(ErrorCode::RejectionStall, "rejection acceptance rate below 1e-4");
    }
  } else {
    const NormBall& ball = set.norm_ball();
    src << "uniform(" << norm_name(ball.p) << "-ball r=" << ball.radius << " dim=" << m << ")";
    for (int i = 0; i < n; ++i) {
      VectorXd xi(m);
      switch (ball.p) {
        case Norm::Linf:
          for (int k = 0; k < m; ++k) xi(k) = rng.range(-ball.radius, ball.radius);
          break;
        case Norm::L2: {
          for (int k = 0; k < m; ++k) xi(k) = rng.gaussian();
          double nrm = xi.norm();
          if (nrm < 1e-12) nrm = 1.0;
          xi *= ball.radius * std::pow(rng.next(), 1.0 / m) / nrm;
          break;
        }
        case Norm::L1: {
          double total = rng.exponential();
          for (int k = 0; k < m; ++k) {
            double g = rng.exponential();
            xi(k) = (rng.next() < 0.5 ? -1.0 : 1.0) * g;
            total += g;
          }
          xi *= ball.radius / total;
          break;
        }
      }
      out.samples.push_back(xi);
    }
  }
  src << " seed=" << seed;
  out.source = src.str();
  return out;
}

}  // namespace aro::bench
