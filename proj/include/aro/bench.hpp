#pragma once

#include <optional>
#include <string>

#include "aro/model.hpp"

namespace aro::bench {

enum class BenchmarkId { Motivating, NumericalLp, Opf5Bus };

// The OPF benchmark ships two encodings of the frequency-adequacy rows that
// differ in the aggregate conventional inertia and reserve constants; the
// Dro variant matches the parameters used for the distributionally robust
// runs.
enum class OpfVariant { Standard, Dro };

struct ExpectedSolution {
  double alpha_star = 0.0;
  VectorXd anchor;
  VectorXd scaled_rhs;
  VectorXd dispatch;  // published decision vector, when the source reports one
};

struct Benchmark {
  BenchmarkId id = BenchmarkId::Motivating;
  RobustProgram program;
  UncertaintySet base_set;
  std::optional<ExpectedSolution> expected;
  std::vector<std::string> variable_names;
};

BenchmarkId parse_benchmark_id(const std::string& name);
std::string benchmark_id_name(BenchmarkId id);

// Loads one of the built-in problems. The 5-bus case reads its network data
// from the bundled case file (checksum-pinned); pass case_file to override
// the compiled-in location.
Benchmark load_benchmark(BenchmarkId id, OpfVariant variant = OpfVariant::Standard,
                         const std::string& case_file = "");

// n i.i.d. uniform samples from the set, deterministic per seed. Polytopes
// use rejection from the bounding box; balls use direct radial scaling.
SampleSet generate_samples(const UncertaintySet& set, int n, unsigned long long seed);

// Default location of the bundled 5-bus case file.
std::string default_case_file();

}  // namespace aro::bench
