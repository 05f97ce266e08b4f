#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "kppdr/chain.hpp"
#include "kppdr/topology.hpp"

namespace kppdr_test {

inline double unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Strictly feasible orbit probabilities: every holding probability ends up
// at least 1 - target_mass > 0.
inline kppdr::OrbitProbabilities random_feasible(const kppdr::Graph& g, std::mt19937_64& rng) {
  std::vector<double> p(g.orbit_count());
  for (double& v : p) v = 0.02 + 0.98 * unit(rng);
  const std::vector<double> holdings =
      kppdr::holding_probabilities(g, kppdr::OrbitProbabilities{p});
  double max_mass = 0.0;
  for (double h : holdings) max_mass = std::max(max_mass, 1.0 - h);
  const double target_mass = 0.2 + 0.75 * unit(rng);
  if (max_mass > 0.0) {
    const double scale = target_mass / max_mass;
    for (double& v : p) v *= scale;
  }
  return kppdr::OrbitProbabilities{p};
}

inline std::vector<kppdr::TopologySpec> family_grid() {
  using kppdr::Family;
  return {
      {Family::Symmetric, 2, 1, {}},     {Family::Symmetric, 2, 3, {}},
      {Family::Symmetric, 5, 2, {}},     {Family::Symmetric, 8, 3, {}},
      {Family::SemiSymmetric, 3, 2, {}}, {Family::SemiSymmetric, 6, 3, {}},
      {Family::SemiSymmetric, 7, 2, {}}, {Family::Cycle, 3, 2, {}},
      {Family::Cycle, 6, 1, {}},         {Family::Cycle, 9, 2, {}},
      {Family::SemiCycle, 4, 2, {}},     {Family::SemiCycle, 8, 3, {}},
  };
}

}  // namespace kppdr_test
