#include "kppdr/topology.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <string>

namespace kppdr {

std::string family_name(Family f) {
  switch (f) {
    case Family::Symmetric: return "symmetric";
    case Family::SemiSymmetric: return "semi-symmetric";
    case Family::Cycle: return "cycle";
    case Family::SemiCycle: return "semi-cycle";
  }
  throw InvalidSpecError("unknown family");
}

Family family_from_name(const std::string& name) {
  std::string s;
  for (char c : name)
    if (c != '-' && c != '_') s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (s == "symmetric") return Family::Symmetric;
  if (s == "semisymmetric") return Family::SemiSymmetric;
  if (s == "cycle") return Family::Cycle;
  if (s == "semicycle") return Family::SemiCycle;
  throw InvalidSpecError("unknown family \"" + name +
                         "\" (expected symmetric, semi-symmetric, cycle or semi-cycle)");
}

std::string kind_name(LayerKind k) {
  return k == LayerKind::Full ? "full" : "strait";
}

LayerKind kind_from_name(const std::string& name) {
  std::string s;
  for (char c : name) s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (s == "full" || s == "f") return LayerKind::Full;
  if (s == "strait" || s == "s") return LayerKind::Strait;
  throw InvalidSpecError("unknown layer kind \"" + name + "\" (expected full or strait)");
}

namespace {

bool is_cycle_family(Family f) { return f == Family::Cycle || f == Family::SemiCycle; }

int min_sets(Family f) {
  switch (f) {
    case Family::Symmetric: return 2;
    case Family::SemiSymmetric: return 3;
    case Family::Cycle: return 3;
    case Family::SemiCycle: return 4;
  }
  return 2;
}

void validate_pattern(Family family, int k, const std::vector<LayerKind>& pattern) {
  const int expected = is_cycle_family(family) ? k : k - 1;
  if (static_cast<int>(pattern.size()) != expected)
    throw InvalidSpecError("pattern must have " + std::to_string(expected) + " layers, got " +
                           std::to_string(pattern.size()));
  if (family == Family::Symmetric || family == Family::Cycle) {
    for (LayerKind kind : pattern)
      if (kind != LayerKind::Full)
        throw InvalidSpecError(family_name(family) + " networks admit only full layers");
    return;
  }
  // Semi families: strait layers must not be adjacent (cyclically for SemiCycle).
  const int count = static_cast<int>(pattern.size());
  for (int j = 0; j < count; ++j) {
    const int next = j + 1;
    const bool wrap = next == count;
    if (wrap && family != Family::SemiCycle) break;
    const LayerKind b = pattern[wrap ? 0 : next];
    if (pattern[j] == LayerKind::Strait && b == LayerKind::Strait)
      throw InvalidSpecError("two consecutive strait layers at layers " + std::to_string(j + 1) +
                             " and " + std::to_string((wrap ? 0 : next) + 1));
  }
}

}  // namespace

std::vector<LayerKind> default_pattern(Family family, int k) {
  if (k < min_sets(family))
    throw InvalidSpecError(family_name(family) + " requires at least " +
                           std::to_string(min_sets(family)) + " sets, got " + std::to_string(k));
  if (family == Family::SemiCycle && k % 2 != 0)
    throw InvalidSpecError("semi-cycle requires an even number of sets, got " + std::to_string(k));
  const int layers = is_cycle_family(family) ? k : k - 1;
  std::vector<LayerKind> pattern(layers, LayerKind::Full);
  if (family == Family::SemiSymmetric || family == Family::SemiCycle) {
    for (int j = 1; j < layers; j += 2) pattern[j] = LayerKind::Strait;
  }
  return pattern;
}

Graph build_graph(const TopologySpec& spec) {
  if (spec.n < 1) throw InvalidSpecError("set size n must be at least 1");
  std::vector<LayerKind> pattern = spec.pattern ? *spec.pattern : default_pattern(spec.family, spec.k);
  if (spec.pattern) {
    if (spec.k < min_sets(spec.family))
      throw InvalidSpecError(family_name(spec.family) + " requires at least " +
                             std::to_string(min_sets(spec.family)) + " sets, got " +
                             std::to_string(spec.k));
    if (spec.family == Family::SemiCycle && spec.k % 2 != 0)
      throw InvalidSpecError("semi-cycle requires an even number of sets, got " +
                             std::to_string(spec.k));
  }
  validate_pattern(spec.family, spec.k, pattern);

  Graph g;
  g.spec_ = spec;
  g.spec_.pattern = pattern;
  g.pattern_ = std::move(pattern);
  g.degrees_.assign(static_cast<size_t>(spec.k) * spec.n, 0);

  const int layers = static_cast<int>(g.pattern_.size());
  for (int j = 1; j <= layers; ++j) {
    const int left = j;
    const int right = (j == spec.k) ? 1 : j + 1;  // closing layer wraps to set 1
    const LayerKind kind = g.pattern_[j - 1];
    if (kind == LayerKind::Full) {
      for (int mu = 1; mu <= spec.n; ++mu)
        for (int rho = 1; rho <= spec.n; ++rho)
          g.edges_.push_back({{left, mu}, {right, rho}, j, kind});
    } else {
      for (int mu = 1; mu <= spec.n; ++mu)
        g.edges_.push_back({{left, mu}, {right, mu}, j, kind});
    }
  }
  for (const Edge& e : g.edges_) {
    ++g.degrees_[g.flat_index(e.a)];
    ++g.degrees_[g.flat_index(e.b)];
  }
  return g;
}

int Graph::flat_index(NodeId node) const {
  if (node.set < 1 || node.set > spec_.k || node.pos < 1 || node.pos > spec_.n)
    throw std::out_of_range("node (" + std::to_string(node.set) + ", " + std::to_string(node.pos) +
                            ") outside " + std::to_string(spec_.k) + " sets of " +
                            std::to_string(spec_.n));
  return (node.set - 1) * spec_.n + (node.pos - 1);
}

NodeId Graph::node_at(int flat) const {
  if (flat < 0 || flat >= node_count()) throw std::out_of_range("flat node index out of range");
  return {flat / spec_.n + 1, flat % spec_.n + 1};
}

int Graph::degree(NodeId node) const { return degrees_[flat_index(node)]; }

int degree(const Graph& g, NodeId node) { return g.degree(node); }

std::string Graph::to_edge_list() const {
  std::ostringstream out;
  for (const Edge& e : edges_) {
    out << e.a.set << ',' << e.a.pos << "  " << e.b.set << ',' << e.b.pos << "  " << e.layer
        << "  " << kind_name(e.kind) << '\n';
  }
  return out.str();
}

}  // namespace kppdr
