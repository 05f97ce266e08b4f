#include "kppdr/stratify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "json_util.hpp"

namespace kppdr {

namespace {

void require_full_family(const TopologySpec& spec, const char* what) {
  if (spec.family != Family::Symmetric && spec.family != Family::Cycle)
    throw InvalidSpecError(std::string(what) + " is only defined for symmetric and cycle " +
                           "networks (got " + family_name(spec.family) + ")");
}

// Holding probability of each set (all nodes of a set share one value).
std::vector<double> set_holdings(const TopologySpec& spec, const OrbitProbabilities& probs) {
  const Graph g = build_graph(spec);
  const std::vector<double> holdings = holding_probabilities(g, probs);
  std::vector<double> per_set(spec.k);
  for (int i = 0; i < spec.k; ++i) per_set[i] = holdings[static_cast<size_t>(i) * spec.n];
  return per_set;
}

}  // namespace

SymmetricMatrix quotient_block(const TopologySpec& spec, const OrbitProbabilities& probs) {
  require_full_family(spec, "the quotient block");
  const int k = spec.k;
  const int layers = spec.family == Family::Cycle ? k : k - 1;
  if (static_cast<int>(probs.values.size()) != layers)
    throw InvalidSpecError("expected " + std::to_string(layers) + " orbit probabilities, got " +
                           std::to_string(probs.values.size()));

  const std::vector<double> holdings = set_holdings(spec, probs);
  SymmetricMatrix q(k);
  for (int i = 0; i < k; ++i) q.set(i, i, holdings[i]);
  for (int j = 1; j <= layers; ++j) {
    const int left = j - 1;
    const int right = (j == k) ? 0 : j;  // cycle corner couples set K to set 1
    q.set(left, right, spec.n * probs.values[j - 1]);
  }
  return q;
}

std::vector<std::vector<double>> residual_blocks(const TopologySpec& spec,
                                                 const OrbitProbabilities& probs) {
  require_full_family(spec, "the residual block form");
  if (spec.n == 1) return {};
  const std::vector<double> holdings = set_holdings(spec, probs);
  return std::vector<std::vector<double>>(spec.n - 1, holdings);
}

BlockDecomposition block_decomposition(const TopologySpec& spec,
                                       const OrbitProbabilities& probs) {
  BlockDecomposition d;
  d.quotient = quotient_block(spec, probs);
  d.residual_diagonals = residual_blocks(spec, probs);
  return d;
}

PartitionReport verify_spectrum_partition(const TopologySpec& spec,
                                          const OrbitProbabilities& probs) {
  require_full_family(spec, "spectrum partition verification");
  const BlockDecomposition blocks = block_decomposition(spec, probs);

  PartitionReport report;
  report.full_spectrum = eigenvalues_symmetric(weight_matrix(spec, probs)).eigenvalues;
  report.quotient_spectrum = eigenvalues_symmetric(blocks.quotient).eigenvalues;
  for (const std::vector<double>& block : blocks.residual_diagonals)
    report.residual_entries.insert(report.residual_entries.end(), block.begin(), block.end());
  std::sort(report.residual_entries.begin(), report.residual_entries.end(), std::greater<>());

  std::vector<double> combined = report.quotient_spectrum;
  combined.insert(combined.end(), report.residual_entries.begin(), report.residual_entries.end());
  std::sort(combined.begin(), combined.end(), std::greater<>());
  for (size_t i = 0; i < combined.size(); ++i)
    report.max_discrepancy =
        std::max(report.max_discrepancy, std::abs(combined[i] - report.full_spectrum[i]));

  Spectrum full{report.full_spectrum};
  report.slem_value = second_modulus(full);
  report.slem_in_quotient =
      std::abs(second_modulus(Spectrum{report.quotient_spectrum}) - report.slem_value) <= 1e-9;
  double residual_modulus = 0.0;
  for (double e : report.residual_entries) residual_modulus = std::max(residual_modulus, std::abs(e));
  report.slem_in_residual =
      !report.residual_entries.empty() && std::abs(residual_modulus - report.slem_value) <= 1e-9;
  report.slem_location = report.slem_in_quotient && report.slem_in_residual ? "both"
                         : report.slem_in_quotient                          ? "quotient"
                         : report.slem_in_residual                          ? "residual"
                                                                            : "none";
  return report;
}

std::string PartitionReport::to_json() const {
  detail::ordered_json j;
  j["full_spectrum"] = full_spectrum;
  j["quotient_spectrum"] = quotient_spectrum;
  j["residual_entries"] = residual_entries;
  j["max_discrepancy"] = max_discrepancy;
  j["slem"] = slem_value;
  j["slem_in_quotient"] = slem_in_quotient;
  j["slem_in_residual"] = slem_in_residual;
  j["slem_location"] = slem_location;
  return j.dump(2);
}

}  // namespace kppdr
