#pragma once

// Internal helpers shared by the serialization code. Not installed.

#include <json.hpp>

#include "kppdr/chain.hpp"
#include "kppdr/topology.hpp"

namespace kppdr::detail {

using ordered_json = nlohmann::ordered_json;

inline ordered_json spec_json(const TopologySpec& spec) {
  ordered_json j;
  j["family"] = family_name(spec.family);
  j["k"] = spec.k;
  j["n"] = spec.n;
  ordered_json pat = ordered_json::array();
  for (LayerKind kind : spec.pattern ? *spec.pattern : default_pattern(spec.family, spec.k))
    pat.push_back(kind_name(kind));
  j["pattern"] = pat;
  return j;
}

inline ordered_json probs_json(const OrbitProbabilities& probs) {
  return ordered_json(probs.values);
}

}  // namespace kppdr::detail
