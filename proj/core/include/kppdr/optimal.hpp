#pragma once

#include <map>
#include <string>
#include <vector>

#include "kppdr/chain.hpp"
#include "kppdr/linalg.hpp"
#include "kppdr/topology.hpp"

namespace kppdr {

/// Closed-form fastest-mixing weights for a spec, the SLEM they achieve,
/// and a feasibility flag computed by actually assembling the chain.
/// `theta` is pi/K for the Symmetric family with K >= 3 and zero otherwise.
struct OptimalResult {
  TopologySpec spec;
  OrbitProbabilities probs;
  double slem = 0.0;
  double theta = 0.0;
  bool feasible = true;

  std::string to_json() const;
};

/// Per-family closed forms:
///   Symmetric K >= 3: all orbits 1/(2n), slem cos(pi/K).
///   Symmetric K = 2:  2/(3n), slem 1/3.
///   SemiSymmetric K >= 4: full 1/(2n), strait 1/2, slem cos(pi/K).
///   SemiSymmetric K = 3:  full 2/(3n), strait 1/2, slem (1+sqrt(13))/6;
///                         infeasible under the default pattern, which the
///                         `feasible` flag reports.
///   Cycle: all orbits 1/(n*(2 - c1 - c2)) with c1 = cos(2*pi/K),
///          c2 = cos(2*floor(K/2)*pi/K); slem (c1 - c2)/(2 - c1 - c2).
///   SemiCycle: strait 1/2, full as Cycle, slem as Cycle.
OptimalResult optimal_probabilities(const TopologySpec& spec);

/// Numerical optimality certificate for the Symmetric family, K >= 3.
///
/// The dual vectors z1, z2 are expanded over the edge-difference vectors
/// alpha_i (z1 = sum a_i alpha_i, z2 = sum a_prime_i alpha_i) with
/// a_j = sin(j*theta)/sin(theta) * a1 and
/// a_prime_j = sin(j*(pi-theta))/sin(pi-theta) * a1_prime, theta = pi/K.
/// a1 and a1_prime are normalized so that z1'z1 + z2'z2 = 1 and
/// z1'z1 - z2'z2 = s = cos(theta); the scale factors applied to the
/// closed-form seed values are reported.
///
/// Residuals (all should vanish at the optimum p = 1/(2n)):
///   z1_orthogonality, z2_orthogonality  |1' z|
///   normalization                       |z1'z1 + z2'z2 - 1|
///   projection_match                    max_i |(alpha_i'z1)^2 - (alpha_i'z2)^2|
///   duality_gap                         |z1'z1 - z2'z2 - s|
///   z1_recursion_first/interior/last    slackness rows for z1
///   z2_recursion_first/interior/last    slackness rows for z2
struct DualCertificate {
  int k = 0;
  int n = 0;
  double s = 0.0;
  double theta = 0.0;
  std::vector<double> a;        // K-1 coordinates of z1
  std::vector<double> a_prime;  // K-1 coordinates of z2
  double a1 = 0.0;
  double a1_prime = 0.0;
  double a1_scale = 1.0;        // normalization factor applied to the seed a1
  double a1_prime_scale = 1.0;  // normalization factor applied to the seed a1_prime
  std::map<std::string, double> residuals;

  double max_residual() const;
  std::string to_json() const;
};

/// Builds and evaluates the certificate. Throws InvalidSpecError for K < 3
/// (the K = 2 optimum is located in the residual block and has no
/// certificate of this form).
DualCertificate dual_certificate(int k, int n);

/// Gram matrix of the edge-difference vectors alpha_i: (K-1) x (K-1),
/// diagonal 2n, first off-diagonals -n.
SymmetricMatrix gram_matrix(int k, int n);

}  // namespace kppdr
