// Numerical validation of the structural assumptions on a probe cloud. The
// reported constants are the smallest ones witnessing each bound on the probe;
// they are lower bounds on the true constants ("sampled, not proven").
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lattice/model.hpp"

namespace lattice {

struct ProbePlan {
  int n_random = 512;        // random local configurations
  double amplitude = 2.5;    // gaussian scale of random probes
  int grid_n = 201;          // 1d grid for the on-site checks
  double grid_halfwidth = 6.0;
  std::uint64_t seed = 12345;
};

struct AssumptionResult {
  std::string id;        // "F", "R", "TI", "P1", ... , "ss-like"
  bool pass = false;
  bool trivial = false;  // satisfied structurally (e.g. torus)
  double constant = 0.0; // empirical witness (meaning depends on the item)
  std::string note;
};

struct AssumptionReport {
  std::vector<AssumptionResult> items;
  bool all_pass = false;
  // named constants for downstream use
  double C0 = 0.0, C1 = 0.0, C2 = 0.0, C3 = 0.0;
  double p2_a = 0.0, p2_b = 0.0;
  double ss_epsilon = 0.0;
  std::string provenance = "sampled, not proven";

  const AssumptionResult* find(const std::string& id) const;
};

AssumptionReport validate_assumptions(const LatticeModel& model, const ProbePlan& probe);

}  // namespace lattice
