#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fourflow/geometry.hpp"

namespace fourflow {

enum class RunMode { canonical4d, gauge4d, reference3d, compare, quantum };

std::string to_string(RunMode mode);

struct ModelSpec {
  std::string type = "free_nonrel";
  double m = 1.0;
  double e = 1.0;
  double c = 1.0;
  double hbar = 1.0;
};

// Potential parameters; 3-vector coefficients for trajectory modes, scalar
// coefficients (g1, center1, f0) for the 1-dimensional quantum mode.
struct PotentialSpec {
  std::string type = "none";
  double v0 = 0.0;
  Vec3 g;
  double g1 = 0.0;
  double k = 1.0;
  Vec3 center;
  double center1 = 0.0;
  Vec3 f;
  double f0 = 0.0;
  double omega = 1.0;
};

struct FieldSpec {
  std::string type;
  Vec3 E;
  Vec3 B;
};

struct IndexSpec {
  std::string type = "uniform";
  double n0 = 1.0;
  Vec3 alpha;
};

struct InitialSpec {
  double t0 = 0.0;
  Vec3 r;
  Vec3 p;
};

struct PacketSpec {
  double x0 = 0.0;
  double k0 = 0.0;
  double sigma = 1.0;
};

struct GridSpec {
  long n = 2048;
  double xmin = -40.0;
  double xmax = 40.0;
};

struct Scenario {
  RunMode mode = RunMode::canonical4d;
  double dt = 0.0;
  long steps = 0;
  std::string output;

  ModelSpec model;
  std::optional<PotentialSpec> potential;
  std::optional<FieldSpec> field;
  std::optional<IndexSpec> index;
  std::optional<InitialSpec> initial;
  std::optional<PacketSpec> packet;
  GridSpec grid;
};

// Result of parsing and validating a scenario text. On failure, errors holds
// every problem found (syntax and semantic), each annotated with a line
// number where one applies.
struct ScenarioParseResult {
  std::optional<Scenario> scenario;
  std::vector<std::string> errors;

  bool ok() const { return scenario.has_value(); }
};

// Grammar: '#' starts a comment, '[name]' opens a section, 'key = value'
// assigns. Top-level keys: mode, dt, steps, output. Vectors are three
// whitespace-separated numbers. See the README for the full schema.
ScenarioParseResult parse_scenario(std::string_view text);

// Reads the file and parses it; throws IoError if the file cannot be read.
ScenarioParseResult parse_scenario_file(const std::string& path);

}  // namespace fourflow
