#include <doctest.h>

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "kppdr/stratify.hpp"
#include "test_util.hpp"

using namespace kppdr;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("quotient block of the three-set chain") {
  const SymmetricMatrix q = quotient_block({Family::Symmetric, 3, 2, {}}, {{0.25, 0.25}});
  const SymmetricMatrix expected =
      SymmetricMatrix::from_rows({{0.5, 0.5, 0.0}, {0.5, 0.0, 0.5}, {0.0, 0.5, 0.5}});
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(q(i, j) == expected(i, j));
}

TEST_CASE("n=1 quotient equals the full transition matrix") {
  const TopologySpec spec{Family::Symmetric, 2, 1, {}};
  const SymmetricMatrix q = quotient_block(spec, {{2.0 / 3.0}});
  const TransitionMatrix p = assemble(spec, {{2.0 / 3.0}});
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(q(i, j) == p.matrix()(i, j));
}

TEST_CASE("cycle quotient is circulant with the stated spectrum") {
  const TopologySpec spec{Family::Cycle, 4, 1, {}};
  const double p = 1.0 / 3.0;
  const SymmetricMatrix q = quotient_block(spec, {std::vector<double>(4, p)});
  CHECK(q(0, 3) == doctest::Approx(p));  // corner coupling closes the cycle
  CHECK(q(0, 0) == doctest::Approx(1.0 - 2.0 * p));

  // Circulant eigenvalues 1 - n*p*(2 - 2*cos(2*i*pi/K)).
  std::vector<double> expected;
  for (int i = 1; i <= 4; ++i) expected.push_back(1.0 - p * (2.0 - 2.0 * std::cos(2.0 * i * kPi / 4)));
  std::sort(expected.begin(), expected.end(), std::greater<>());
  const Spectrum s = eigenvalues_symmetric(q);
  for (int i = 0; i < 4; ++i) CHECK(s.eigenvalues[i] == doctest::Approx(expected[i]).epsilon(1e-9));
}

TEST_CASE("residual blocks are the per-set holding probabilities") {
  const auto blocks32 = residual_blocks({Family::Symmetric, 3, 2, {}}, {{0.25, 0.25}});
  REQUIRE(blocks32.size() == 1);
  CHECK(blocks32[0] == std::vector<double>{0.5, 0.0, 0.5});

  const auto blocks63 =
      residual_blocks({Family::Symmetric, 6, 3, {}}, {std::vector<double>(5, 1.0 / 6.0)});
  REQUIRE(blocks63.size() == 2);
  for (const auto& block : blocks63) {
    CHECK(block.front() == doctest::Approx(0.5));
    CHECK(block.back() == doctest::Approx(0.5));
    for (size_t i = 1; i + 1 < block.size(); ++i) CHECK(std::abs(block[i]) < 1e-15);
  }
  CHECK(blocks63[0] == blocks63[1]);

  const auto blocks22 = residual_blocks({Family::Symmetric, 2, 2, {}}, {{1.0 / 3.0}});
  REQUIRE(blocks22.size() == 1);
  CHECK(blocks22[0][0] == doctest::Approx(1.0 / 3.0));
  CHECK(blocks22[0][1] == doctest::Approx(1.0 / 3.0));

  CHECK(residual_blocks({Family::Symmetric, 4, 1, {}}, {{0.5, 0.5, 0.5}}).empty());
}

TEST_CASE("cycle residual blocks carry the uniform holding probability") {
  const TopologySpec spec{Family::Cycle, 4, 3, {}};
  const OrbitProbabilities p{std::vector<double>(4, 1.0 / 9.0)};
  const auto blocks = residual_blocks(spec, p);
  REQUIRE(blocks.size() == 2);
  for (const auto& block : blocks)
    for (double h : block) CHECK(h == doctest::Approx(1.0 - 2.0 / 3.0).epsilon(1e-12));

  const BlockDecomposition d = block_decomposition(spec, p);
  CHECK(d.quotient.size() == 4);
  CHECK(d.residual_diagonals.size() == 2);
}

TEST_CASE("semi families have no closed block form") {
  CHECK_THROWS_AS(quotient_block({Family::SemiSymmetric, 4, 2, {}}, {{0.25, 0.5, 0.25}}),
                  InvalidSpecError);
  CHECK_THROWS_AS(residual_blocks({Family::SemiCycle, 4, 2, {}}, {{0.25, 0.5, 0.25, 0.5}}),
                  InvalidSpecError);
  CHECK_THROWS_AS(verify_spectrum_partition({Family::SemiSymmetric, 4, 2, {}}, {{0.25, 0.5, 0.25}}),
                  InvalidSpecError);
}

TEST_CASE("partition report for the three-set chain") {
  const PartitionReport r = verify_spectrum_partition({Family::Symmetric, 3, 2, {}}, {{0.25, 0.25}});
  CHECK(r.max_discrepancy < 1e-9);
  CHECK(r.slem_value == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(r.slem_in_quotient);
}

TEST_CASE("partition report at the six-set optimum") {
  const PartitionReport r =
      verify_spectrum_partition({Family::Symmetric, 6, 3, {}}, {std::vector<double>(5, 1.0 / 6.0)});
  CHECK(r.max_discrepancy < 1e-9);
  CHECK(r.slem_value == doctest::Approx(std::cos(kPi / 6)).epsilon(1e-9));
  CHECK(r.slem_in_quotient);
  CHECK_FALSE(r.slem_in_residual);
  CHECK(r.slem_location == "quotient");
  for (double e : r.residual_entries) CHECK(std::abs(e) < std::cos(kPi / 6));
}

TEST_CASE("two-set optimum attains the slem in the residual block") {
  const PartitionReport r = verify_spectrum_partition({Family::Symmetric, 2, 2, {}}, {{1.0 / 3.0}});
  CHECK(r.slem_value == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
  CHECK(r.slem_in_residual);
}

TEST_CASE("block spectra partition the full spectrum for random weights") {
  std::mt19937_64 rng(41);
  for (int k = 2; k <= 10; k += 2) {
    for (int n = 1; n <= 4; ++n) {
      const TopologySpec spec{Family::Symmetric, k, n, {}};
      const Graph g = build_graph(spec);
      for (int rep = 0; rep < 5; ++rep) {
        const PartitionReport r = verify_spectrum_partition(spec, kppdr_test::random_feasible(g, rng));
        CHECK(r.max_discrepancy < 1e-9);
      }
    }
  }
  for (int k = 3; k <= 9; k += 2) {
    for (int n = 1; n <= 4; ++n) {
      const TopologySpec spec{Family::Cycle, k, n, {}};
      const Graph g = build_graph(spec);
      for (int rep = 0; rep < 5; ++rep) {
        const PartitionReport r = verify_spectrum_partition(spec, kppdr_test::random_feasible(g, rng));
        CHECK(r.max_discrepancy < 1e-9);
      }
    }
  }
}

TEST_CASE("symmetric quotient spectrum at the optimum is cos(i*pi/K)") {
  for (int k = 3; k <= 10; ++k) {
    for (int n : {1, 3}) {
      const TopologySpec spec{Family::Symmetric, k, n, {}};
      const OrbitProbabilities p{std::vector<double>(k - 1, 1.0 / (2.0 * n))};
      const Spectrum s = eigenvalues_symmetric(quotient_block(spec, p));
      for (int i = 0; i < k; ++i)
        CHECK(s.eigenvalues[i] == doctest::Approx(std::cos(i * kPi / k)).epsilon(1e-9));
    }
  }
}

TEST_CASE("partition report serializes") {
  const PartitionReport r = verify_spectrum_partition({Family::Symmetric, 3, 2, {}}, {{0.25, 0.25}});
  const auto j = nlohmann::json::parse(r.to_json());
  CHECK(j["full_spectrum"].size() == 6);
  CHECK(j["quotient_spectrum"].size() == 3);
  CHECK(j["residual_entries"].size() == 3);
  CHECK(j["max_discrepancy"].get<double>() < 1e-9);
  CHECK(j["slem_location"] == "both");
}
