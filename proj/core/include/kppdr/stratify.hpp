#pragma once

#include <string>
#include <vector>

#include "kppdr/chain.hpp"
#include "kppdr/linalg.hpp"
#include "kppdr/topology.hpp"

namespace kppdr {

/// Block form of the transition matrix under the position-DFT basis change:
/// one K x K quotient block plus n-1 identical diagonal residual blocks.
struct BlockDecomposition {
  SymmetricMatrix quotient;
  std::vector<std::vector<double>> residual_diagonals;  // n-1 blocks of K entries

  BlockDecomposition() : quotient(1) {}
};

/// K x K quotient block: tridiagonal with off-diagonal n*p_j for Symmetric,
/// circulant-tridiagonal (corner entries n*p_K) for Cycle. Semi families are
/// unsupported and throw InvalidSpecError.
SymmetricMatrix quotient_block(const TopologySpec& spec, const OrbitProbabilities& probs);

/// The n-1 identical diagonal residual blocks; each entry is the holding
/// probability of one set. Empty for n = 1. Symmetric and Cycle only.
std::vector<std::vector<double>> residual_blocks(const TopologySpec& spec,
                                                 const OrbitProbabilities& probs);

BlockDecomposition block_decomposition(const TopologySpec& spec,
                                       const OrbitProbabilities& probs);

struct PartitionReport {
  std::vector<double> full_spectrum;      // sorted descending
  std::vector<double> quotient_spectrum;  // sorted descending
  std::vector<double> residual_entries;   // flattened, sorted descending
  double max_discrepancy = 0.0;
  double slem_value = 0.0;
  bool slem_in_quotient = false;
  bool slem_in_residual = false;
  std::string slem_location;  // "quotient", "residual" or "both"

  std::string to_json() const;
};

/// Checks that the multiset union of the block spectra reproduces the full
/// nK x nK spectrum, and locates where the SLEM is attained.
PartitionReport verify_spectrum_partition(const TopologySpec& spec,
                                          const OrbitProbabilities& probs);

}  // namespace kppdr
