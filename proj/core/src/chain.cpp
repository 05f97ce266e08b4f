#include "kppdr/chain.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "format_util.hpp"
#include "json_util.hpp"

namespace kppdr {

namespace {

constexpr double kHoldingSlack = 1e-12;

void check_probs(const Graph& g, const OrbitProbabilities& probs) {
  if (static_cast<int>(probs.values.size()) != g.orbit_count())
    throw InvalidSpecError("expected " + std::to_string(g.orbit_count()) +
                           " orbit probabilities, got " + std::to_string(probs.values.size()));
}

}  // namespace

TransitionMatrix::TransitionMatrix(SymmetricMatrix matrix, TopologySpec spec,
                                   OrbitProbabilities probs)
    : matrix_(std::move(matrix)), spec_(std::move(spec)), probs_(std::move(probs)) {
  const int n = matrix_.size();
  for (int i = 0; i < n; ++i) {
    double row = 0.0;
    for (int j = 0; j < n; ++j) {
      const double v = matrix_(i, j);
      if (v < 0.0)
        throw InfeasibleError("negative entry " + detail::full_precision(v) + " at (" +
                                  std::to_string(i) + ", " + std::to_string(j) + ")",
                              0, 0, v);
      row += v;
    }
    if (std::abs(row - 1.0) > 1e-12)
      throw InvalidSpecError("row " + std::to_string(i) + " sums to " +
                             detail::full_precision(row));
  }
}

SymmetricMatrix weight_matrix(const Graph& g, const OrbitProbabilities& probs) {
  check_probs(g, probs);
  const int n = g.node_count();
  SymmetricMatrix m(n);
  std::vector<double> mass(n, 0.0);
  // Accumulate in edge (layer) order so results are bit-deterministic.
  for (const Edge& e : g.edges()) {
    const double p = probs.values[e.layer - 1];
    const int ia = g.flat_index(e.a);
    const int ib = g.flat_index(e.b);
    m.add(ia, ib, p);
    mass[ia] += p;
    mass[ib] += p;
  }
  for (int i = 0; i < n; ++i) m.set(i, i, 1.0 - mass[i]);
  return m;
}

SymmetricMatrix weight_matrix(const TopologySpec& spec, const OrbitProbabilities& probs) {
  return weight_matrix(build_graph(spec), probs);
}

std::vector<double> holding_probabilities(const Graph& g, const OrbitProbabilities& probs) {
  check_probs(g, probs);
  std::vector<double> mass(g.node_count(), 0.0);
  for (const Edge& e : g.edges()) {
    const double p = probs.values[e.layer - 1];
    mass[g.flat_index(e.a)] += p;
    mass[g.flat_index(e.b)] += p;
  }
  for (double& v : mass) v = 1.0 - v;
  return mass;
}

TransitionMatrix assemble(const TopologySpec& spec, const OrbitProbabilities& probs) {
  const Graph g = build_graph(spec);
  check_probs(g, probs);
  for (size_t j = 0; j < probs.values.size(); ++j) {
    if (probs.values[j] < 0.0)
      throw InfeasibleError("negative transition probability " +
                                detail::full_precision(probs.values[j]) + " on layer " +
                                std::to_string(j + 1),
                            0, 0, probs.values[j]);
  }

  SymmetricMatrix m = weight_matrix(g, probs);
  int worst = -1;
  double worst_holding = 0.0;
  for (int i = 0; i < m.size(); ++i) {
    const double h = m(i, i);
    if (h < worst_holding) {
      worst_holding = h;
      worst = i;
    }
  }
  if (worst >= 0 && worst_holding < -kHoldingSlack) {
    const NodeId node = g.node_at(worst);
    throw InfeasibleError("negative holding probability " + detail::full_precision(worst_holding) +
                              " at node (" + std::to_string(node.set) + ", " +
                              std::to_string(node.pos) + ")",
                          node.set, node.pos, worst_holding);
  }
  // Roundoff-scale negatives become exact zeros.
  for (int i = 0; i < m.size(); ++i)
    if (m(i, i) < 0.0) m.set(i, i, 0.0);

  return TransitionMatrix(std::move(m), spec, probs);
}

double slem(const TransitionMatrix& p) {
  return slem_of_spectrum(eigenvalues_symmetric(p.matrix()));
}

OrbitProbabilities metropolis_hastings(const Graph& g) {
  OrbitProbabilities probs;
  probs.values.assign(g.orbit_count(), -1.0);
  for (const Edge& e : g.edges()) {
    const double p = std::min(1.0 / g.degree(e.a), 1.0 / g.degree(e.b));
    double& orbit = probs.values[e.layer - 1];
    if (orbit < 0.0) {
      orbit = p;
    } else if (orbit != p) {
      // Orbit members have identical endpoint-degree pairs by construction.
      throw std::logic_error("Metropolis-Hastings weight varies within orbit " +
                             std::to_string(e.layer));
    }
  }
  return probs;
}

std::string TransitionMatrix::to_csv() const {
  std::ostringstream out;
  const int n = matrix_.size();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (j) out << ',';
      out << detail::full_precision(matrix_(i, j));
    }
    out << '\n';
  }
  return out.str();
}

std::string TransitionMatrix::to_json() const {
  detail::ordered_json j;
  j["spec"] = detail::spec_json(spec_);
  j["probs"] = detail::probs_json(probs_);
  detail::ordered_json rows = detail::ordered_json::array();
  const int n = matrix_.size();
  for (int i = 0; i < n; ++i) {
    detail::ordered_json row = detail::ordered_json::array();
    for (int jj = 0; jj < n; ++jj) row.push_back(matrix_(i, jj));
    rows.push_back(std::move(row));
  }
  j["matrix"] = std::move(rows);
  return j.dump(2);
}

}  // namespace kppdr
