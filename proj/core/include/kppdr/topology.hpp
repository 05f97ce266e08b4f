#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kppdr/errors.hpp"

namespace kppdr {

/// The four supported network families. Path-like families (Symmetric,
/// SemiSymmetric) have K-1 layers between consecutive sets; cycle-like
/// families (Cycle, SemiCycle) add a closing layer from set K back to set 1.
enum class Family { Symmetric, SemiSymmetric, Cycle, SemiCycle };

/// Connectivity of one layer: complete bipartite (n^2 edges) or a
/// position-aligned perfect matching (n edges).
enum class LayerKind { Full, Strait };

std::string family_name(Family f);
Family family_from_name(const std::string& name);
std::string kind_name(LayerKind k);
LayerKind kind_from_name(const std::string& name);

/// K sets of n nodes each; layers between consecutive sets follow `pattern`
/// (resolved to default_pattern(family, k) when absent).
struct TopologySpec {
  Family family = Family::Symmetric;
  int k = 2;
  int n = 1;
  std::optional<std::vector<LayerKind>> pattern;
};

/// Node identity as (set, position), both 1-based.
struct NodeId {
  int set = 1;
  int pos = 1;
};

struct Edge {
  NodeId a;
  NodeId b;
  int layer = 1;  // 1-based; layer index doubles as the edge-orbit index
  LayerKind kind = LayerKind::Full;
};

class Graph {
 public:
  const TopologySpec& spec() const { return spec_; }
  const std::vector<LayerKind>& pattern() const { return pattern_; }

  int set_count() const { return spec_.k; }
  int set_size() const { return spec_.n; }
  int node_count() const { return spec_.k * spec_.n; }
  int orbit_count() const { return static_cast<int>(pattern_.size()); }

  /// Edges sorted by (layer, position in set a, position in set b).
  const std::vector<Edge>& edges() const { return edges_; }

  int degree(NodeId node) const;

  int flat_index(NodeId node) const;
  NodeId node_at(int flat) const;

  /// One line per edge: "set,pos  set,pos  layer  kind".
  std::string to_edge_list() const;

 private:
  friend Graph build_graph(const TopologySpec& spec);

  TopologySpec spec_;
  std::vector<LayerKind> pattern_;
  std::vector<Edge> edges_;
  std::vector<int> degrees_;  // by flat node index
};

/// Canonical layer pattern for a family: all Full for Symmetric/Cycle,
/// alternating Full/Strait starting Full for the semi families.
/// SemiCycle requires even K (the alternation must close the cycle).
std::vector<LayerKind> default_pattern(Family family, int k);

/// Validates the spec and constructs the graph. Family minimums: Symmetric
/// K >= 2, SemiSymmetric K >= 3, Cycle K >= 3, SemiCycle K >= 4 and even.
Graph build_graph(const TopologySpec& spec);

int degree(const Graph& g, NodeId node);

}  // namespace kppdr
