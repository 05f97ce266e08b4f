#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kppdr/chain.hpp"
#include "kppdr/linalg.hpp"

namespace kppdr {

enum class InitMode { RandomUniform, PointMass };

std::string init_mode_name(InitMode m);
InitMode init_mode_from_name(const std::string& name);

struct TrialConfig {
  int trials = 200;
  int iterations = 100;
  std::uint64_t seed = 0;
  InitMode init = InitMode::RandomUniform;
  bool geometric_mean = false;  // aggregate with geometric instead of arithmetic mean
};

/// Per-iteration normalized Euclidean distance of the node-value vector from
/// its stationary (uniform) projection, averaged over trials.
/// distances[0] == 1 by construction.
struct MixingTrace {
  std::vector<double> distances;  // indexed by iteration 0..T
  std::string label;
  TopologySpec spec;
  OrbitProbabilities probs;
  TrialConfig cfg;
  int redraws = 0;  // initial vectors redrawn because they were exactly uniform

  /// CSV with header "iteration,distance".
  std::string to_csv() const;
};

/// Runs cfg.trials independent trials of x <- P x from random initial values
/// and averages the normalized distance traces. Trials use independent RNG
/// substreams keyed by trial index, so results are deterministic given the
/// seed and unchanged for trial i when the trial count grows.
MixingTrace simulate(const TransitionMatrix& p, const TrialConfig& cfg);

/// Same dynamics on a bare symmetric stochastic matrix (no provenance).
MixingTrace simulate(const SymmetricMatrix& p, const TrialConfig& cfg);

/// Least-squares slope of log(distance) over the final `window` iterations,
/// exponentiated: an estimate of the SLEM. Requires 2 <= window < length and
/// tail entries above 1e-14 (throws with a shorter-horizon hint otherwise).
double asymptotic_rate(const MixingTrace& trace, int window);

struct PairCrossover {
  std::string a;
  std::string b;
  std::optional<int> iteration;  // first strict reordering; empty if none
};

struct ComparisonReport {
  std::vector<std::string> labels;
  int iterations = 0;
  std::vector<std::vector<int>> per_iteration_order;  // trace indices, ascending distance
  std::optional<int> first_crossover;
  std::vector<PairCrossover> pairwise_crossovers;
  std::vector<std::optional<double>> tail_rates;
  bool tail_rates_match = false;
  int window = 0;
  double rate_tolerance = 0.0;

  std::string to_json() const;
};

/// Per-iteration ordering of the traces, pairwise crossover iterations and
/// tail-rate agreement. All traces must share the same iteration count.
ComparisonReport compare(const std::vector<MixingTrace>& traces,
                         double rate_tolerance = 0.02, int window = 0);

/// Plot-ready long format: "label,iteration,distance".
std::string traces_to_long_csv(const std::vector<MixingTrace>& traces);

}  // namespace kppdr
