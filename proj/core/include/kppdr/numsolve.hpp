#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kppdr/chain.hpp"
#include "kppdr/topology.hpp"

namespace kppdr {

struct SolveConfig {
  double tol = 1e-7;       // objective spread convergence threshold
  int max_evals = 20000;   // total objective evaluations across restarts
  int restarts = 5;
  std::uint64_t seed = 0;
};

struct SolveResult {
  TopologySpec spec;
  OrbitProbabilities probs;
  double slem = 0.0;
  int evals = 0;
  bool converged = false;

  std::string to_json() const;
};

/// Derivative-free minimization of the SLEM over per-orbit probabilities
/// (Nelder-Mead with projection onto p >= 0, a penalty on negative holding
/// probabilities, and a final strict-feasibility repair). Multi-start:
/// closed-form weights, Metropolis-Hastings weights, then seeded random
/// feasible points. Deterministic given (spec, cfg).
SolveResult minimize_slem(const TopologySpec& spec, const SolveConfig& cfg = {});

struct ProfilePoint {
  double p = 0.0;
  double slem = 0.0;
  bool feasible = true;
};

/// One-dimensional slice of the objective: orbit `along_orbit` (1-based)
/// sweeps the grid while the other orbits stay at the closed-form optimum.
/// Infeasible grid points are evaluated on the relaxed weight matrix and
/// flagged rather than dropped.
std::vector<ProfilePoint> profile_objective(const TopologySpec& spec, int along_orbit,
                                            const std::vector<double>& grid);

/// CSV with header "p,slem,feasible".
std::string profile_to_csv(const std::vector<ProfilePoint>& points);

}  // namespace kppdr
