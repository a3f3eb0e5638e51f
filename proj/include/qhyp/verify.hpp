#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qhyp/lattice.hpp"

namespace qhyp {

struct RunConfig {
  double q = 0.5;
  int n = 2;
  int m = 2;
  int L = 0;
  int Lp = 0;
  int max_j = 30;
  std::optional<double> tol;  // replaces every threshold when set
  int quad_nodes = 64;
  std::string format = "json";
  std::uint64_t seed = 1;

  ModelParams params() const { return ModelParams::make(q, n, m); }
  Sector sector() const { return Sector{L, Lp}; }
};

// Throws DomainError on an invalid configuration (also q > 0.95, which is
// outside the supported regime).
void validate(const RunConfig& c);

struct CheckResult {
  std::string name;
  double residual = 0.0;
  double threshold = 0.0;
  bool pass = false;
  std::string note;
};

struct VerifyReport {
  std::vector<CheckResult> checks;

  bool all_pass() const;
  const CheckResult* first_failure() const;
  nlohmann::json to_json(const RunConfig& c) const;
};

// Runs the property battery for one parameter set.
VerifyReport run_verification(const RunConfig& c);

}  // namespace qhyp
