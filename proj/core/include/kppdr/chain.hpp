#pragma once

#include <string>
#include <vector>

#include "kppdr/linalg.hpp"
#include "kppdr/topology.hpp"

namespace kppdr {

/// One transition probability per edge orbit, indexed by layer
/// (values[j-1] is the probability on every edge of layer j).
struct OrbitProbabilities {
  std::vector<double> values;
};

/// Symmetric stochastic matrix over the n*K nodes of a graph, together with
/// the spec and orbit probabilities it was assembled from.
class TransitionMatrix {
 public:
  TransitionMatrix(SymmetricMatrix matrix, TopologySpec spec, OrbitProbabilities probs);

  int size() const { return matrix_.size(); }
  const SymmetricMatrix& matrix() const { return matrix_; }
  const TopologySpec& spec() const { return spec_; }
  const OrbitProbabilities& probs() const { return probs_; }

  /// size() rows of size() comma-separated full-precision values.
  std::string to_csv() const;
  /// {"spec": ..., "probs": ..., "matrix": [[...], ...]}.
  std::string to_json() const;

 private:
  SymmetricMatrix matrix_;
  TopologySpec spec_;
  OrbitProbabilities probs_;
};

/// Row-stochastic symmetric weight matrix for the given orbit probabilities,
/// with no feasibility check: diagonal entries may be negative. Rows always
/// sum to one.
SymmetricMatrix weight_matrix(const Graph& g, const OrbitProbabilities& probs);
SymmetricMatrix weight_matrix(const TopologySpec& spec, const OrbitProbabilities& probs);

/// Holding probability (1 minus incident edge mass) per flat node index.
std::vector<double> holding_probabilities(const Graph& g, const OrbitProbabilities& probs);

/// Builds the transition matrix, enforcing elementwise nonnegativity.
/// Throws InfeasibleError naming the worst node if any holding probability
/// falls below -1e-12 (values in [-1e-12, 0) are clamped to zero), or if any
/// orbit probability is negative.
TransitionMatrix assemble(const TopologySpec& spec, const OrbitProbabilities& probs);

/// Second largest eigenvalue modulus of the chain.
double slem(const TransitionMatrix& p);

/// Metropolis-Hastings weights for the uniform stationary distribution:
/// per-edge probability min(1/deg_i, 1/deg_j), constant on each orbit.
OrbitProbabilities metropolis_hastings(const Graph& g);

}  // namespace kppdr
