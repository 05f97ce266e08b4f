#include <doctest.h>

#include <map>
#include <set>
#include <sstream>

#include "kppdr/topology.hpp"
#include "test_util.hpp"

using namespace kppdr;

TEST_CASE("default patterns") {
  using enum LayerKind;
  CHECK(default_pattern(Family::SemiSymmetric, 6) ==
        std::vector<LayerKind>{Full, Strait, Full, Strait, Full});
  CHECK(default_pattern(Family::Symmetric, 3) == std::vector<LayerKind>{Full, Full});
  CHECK(default_pattern(Family::SemiCycle, 8) ==
        std::vector<LayerKind>{Full, Strait, Full, Strait, Full, Strait, Full, Strait});
  CHECK_THROWS_AS(default_pattern(Family::SemiCycle, 7), InvalidSpecError);
}

TEST_CASE("graph sizes") {
  const Graph sym63 = build_graph({Family::Symmetric, 6, 3, {}});
  CHECK(sym63.node_count() == 18);
  CHECK(sym63.edges().size() == 45);
  CHECK(sym63.orbit_count() == 5);

  const Graph sym21 = build_graph({Family::Symmetric, 2, 1, {}});
  CHECK(sym21.node_count() == 2);
  CHECK(sym21.edges().size() == 1);

  const Graph cycle82 = build_graph({Family::Cycle, 8, 2, {}});
  CHECK(cycle82.node_count() == 16);
  CHECK(cycle82.edges().size() == 32);
  CHECK(cycle82.orbit_count() == 8);
}

TEST_CASE("degrees") {
  const Graph sym63 = build_graph({Family::Symmetric, 6, 3, {}});
  CHECK(sym63.degree({1, 1}) == 3);
  CHECK(sym63.degree({3, 2}) == 6);
  CHECK_THROWS_AS(sym63.degree({7, 1}), std::out_of_range);
  CHECK_THROWS_AS(sym63.degree({1, 4}), std::out_of_range);

  const Graph semi63 = build_graph({Family::SemiSymmetric, 6, 3, {}});
  CHECK(semi63.degree({2, 1}) == 4);
}

TEST_CASE("degree matches brute-force incidence count") {
  for (const TopologySpec& spec : kppdr_test::family_grid()) {
    const Graph g = build_graph(spec);
    std::map<std::pair<int, int>, int> count;
    for (const Edge& e : g.edges()) {
      ++count[{e.a.set, e.a.pos}];
      ++count[{e.b.set, e.b.pos}];
    }
    int degree_sum = 0;
    for (int set = 1; set <= spec.k; ++set) {
      for (int pos = 1; pos <= spec.n; ++pos) {
        CHECK(g.degree({set, pos}) == count[{set, pos}]);
        degree_sum += g.degree({set, pos});
      }
    }
    CHECK(degree_sum == 2 * static_cast<int>(g.edges().size()));
  }
}

TEST_CASE("no intra-set edges; strait layers are position-aligned matchings") {
  for (const TopologySpec& spec : kppdr_test::family_grid()) {
    const Graph g = build_graph(spec);
    for (const Edge& e : g.edges()) {
      CHECK(e.a.set != e.b.set);
      if (e.kind == LayerKind::Strait) CHECK(e.a.pos == e.b.pos);
    }
    // Each node carries exactly one edge per incident strait layer.
    std::map<std::pair<int, int>, int> strait_count;
    for (const Edge& e : g.edges()) {
      if (e.kind != LayerKind::Strait) continue;
      ++strait_count[{e.layer, e.a.pos}];
    }
    for (const auto& [key, c] : strait_count) CHECK(c == 1);
  }
}

TEST_CASE("orbit members share endpoint degree pairs") {
  for (const TopologySpec& spec : kppdr_test::family_grid()) {
    const Graph g = build_graph(spec);
    std::map<int, std::pair<int, int>> orbit_degrees;
    for (const Edge& e : g.edges()) {
      const int da = g.degree(e.a);
      const int db = g.degree(e.b);
      const std::pair<int, int> key{std::min(da, db), std::max(da, db)};
      auto [it, inserted] = orbit_degrees.try_emplace(e.layer, key);
      if (!inserted) CHECK(it->second == key);
    }
  }
}

TEST_CASE("all-full n=1 path family is the path graph") {
  const int k = 6;
  const Graph g = build_graph({Family::Symmetric, k, 1, {}});
  REQUIRE(g.edges().size() == static_cast<size_t>(k - 1));
  for (int j = 1; j < k; ++j) {
    const Edge& e = g.edges()[j - 1];
    CHECK(e.a.set == j);
    CHECK(e.b.set == j + 1);
    CHECK(e.layer == j);
  }
}

TEST_CASE("spec validation") {
  CHECK_THROWS_AS(build_graph({Family::SemiSymmetric, 2, 1, {}}), InvalidSpecError);
  CHECK_THROWS_AS(build_graph({Family::Cycle, 2, 2, {}}), InvalidSpecError);
  CHECK_THROWS_AS(build_graph({Family::SemiCycle, 7, 1, {}}), InvalidSpecError);
  CHECK_THROWS_AS(build_graph({Family::Symmetric, 3, 0, {}}), InvalidSpecError);

  using enum LayerKind;
  // Wrong pattern length.
  CHECK_THROWS_AS(build_graph({Family::Symmetric, 4, 1, std::vector<LayerKind>{Full, Full}}),
                  InvalidSpecError);
  // Strait layers inside an all-full family.
  CHECK_THROWS_AS(build_graph({Family::Symmetric, 3, 2, std::vector<LayerKind>{Full, Strait}}),
                  InvalidSpecError);
  // Adjacent strait layers.
  CHECK_THROWS_AS(
      build_graph({Family::SemiSymmetric, 5, 2, std::vector<LayerKind>{Full, Strait, Strait, Full}}),
      InvalidSpecError);
  // Adjacent strait layers across the cycle closure.
  CHECK_THROWS_AS(
      build_graph(
          {Family::SemiCycle, 4, 2, std::vector<LayerKind>{Strait, Full, Full, Strait}}),
      InvalidSpecError);
  // A valid override is accepted.
  CHECK_NOTHROW(
      build_graph({Family::SemiSymmetric, 5, 2, std::vector<LayerKind>{Strait, Full, Strait, Full}}));
}

TEST_CASE("edge list text format") {
  const Graph g = build_graph({Family::Symmetric, 2, 1, {}});
  CHECK(g.to_edge_list() == "1,1  2,1  1  full\n");

  const Graph semi = build_graph({Family::SemiSymmetric, 3, 2, {}});
  std::istringstream lines(semi.to_edge_list());
  std::string line;
  size_t count = 0;
  while (std::getline(lines, line)) ++count;
  CHECK(count == semi.edges().size());
  CHECK(semi.to_edge_list().find("2,2  3,2  2  strait\n") != std::string::npos);
}

TEST_CASE("family and kind names round-trip") {
  for (Family f : {Family::Symmetric, Family::SemiSymmetric, Family::Cycle, Family::SemiCycle})
    CHECK(family_from_name(family_name(f)) == f);
  CHECK(family_from_name("SEMISYMMETRIC") == Family::SemiSymmetric);
  CHECK(family_from_name("semi_cycle") == Family::SemiCycle);
  CHECK_THROWS_AS(family_from_name("ring"), InvalidSpecError);
  for (LayerKind k : {LayerKind::Full, LayerKind::Strait})
    CHECK(kind_from_name(kind_name(k)) == k);
  CHECK_THROWS_AS(kind_from_name("half"), InvalidSpecError);
}

TEST_CASE("cycle closing layer wraps to set 1") {
  const Graph g = build_graph({Family::Cycle, 5, 1, {}});
  const Edge& last = g.edges().back();
  CHECK(last.layer == 5);
  CHECK(last.a.set == 5);
  CHECK(last.b.set == 1);
}
