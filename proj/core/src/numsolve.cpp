#include "kppdr/numsolve.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <utility>

#include "format_util.hpp"
#include "json_util.hpp"
#include "kppdr/linalg.hpp"
#include "kppdr/optimal.hpp"

namespace kppdr {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double unit_double(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// max(lambda_2, -lambda_N) of the relaxed weight matrix; no feasibility
// or stochasticity checks, so it stays defined off the feasible set.
double relaxed_slem(const Graph& g, const std::vector<double>& probs) {
  const SymmetricMatrix w = weight_matrix(g, OrbitProbabilities{probs});
  return second_modulus(eigenvalues_symmetric(w));
}

// Scale factor that brings every holding probability back to >= 0.
double repair_scale(const Graph& g, const std::vector<double>& probs) {
  const std::vector<double> holdings = holding_probabilities(g, OrbitProbabilities{probs});
  double max_mass = 0.0;
  for (double h : holdings) max_mass = std::max(max_mass, 1.0 - h);
  return max_mass > 1.0 ? 1.0 / max_mass : 1.0;
}

struct NelderMead {
  std::function<double(const std::vector<double>&)> objective;
  int max_evals = 0;
  double ftol = 1e-7;
  double diameter_tol = 1e-9;
  double initial_step = 1.0;  // scales the default per-coordinate offsets

  int evals = 0;
  bool converged = false;

  std::pair<std::vector<double>, double> run(const std::vector<double>& start) {
    const int dim = static_cast<int>(start.size());
    std::vector<std::vector<double>> simplex;
    std::vector<double> values;
    simplex.push_back(start);
    for (int i = 0; i < dim; ++i) {
      std::vector<double> v = start;
      v[i] += initial_step * std::max(0.05, 0.15 * std::abs(v[i]));
      simplex.push_back(std::move(v));
    }
    for (const auto& v : simplex) values.push_back(eval(v));

    std::vector<size_t> order(simplex.size());
    while (evals < max_evals) {
      std::iota(order.begin(), order.end(), size_t{0});
      std::stable_sort(order.begin(), order.end(),
                       [&](size_t a, size_t b) { return values[a] < values[b]; });
      reorder(simplex, values, order);

      if (values.back() - values.front() < ftol || diameter(simplex) < diameter_tol) {
        converged = true;
        break;
      }

      std::vector<double> centroid(dim, 0.0);
      for (size_t i = 0; i + 1 < simplex.size(); ++i)
        for (int d = 0; d < dim; ++d) centroid[d] += simplex[i][d] / dim;

      const std::vector<double>& worst = simplex.back();
      std::vector<double> reflected = blend(centroid, worst, -1.0);
      const double fr = eval(reflected);
      if (fr < values.front()) {
        std::vector<double> expanded = blend(centroid, worst, -2.0);
        const double fe = eval(expanded);
        if (fe < fr) {
          simplex.back() = std::move(expanded);
          values.back() = fe;
        } else {
          simplex.back() = std::move(reflected);
          values.back() = fr;
        }
      } else if (fr < values[values.size() - 2]) {
        simplex.back() = std::move(reflected);
        values.back() = fr;
      } else {
        const bool outside = fr < values.back();
        std::vector<double> contracted = blend(centroid, outside ? reflected : worst, 0.5);
        const double fc = eval(contracted);
        if (fc < std::min(fr, values.back())) {
          simplex.back() = std::move(contracted);
          values.back() = fc;
        } else {
          // Shrink toward the best vertex.
          for (size_t i = 1; i < simplex.size(); ++i) {
            for (int d = 0; d < dim; ++d)
              simplex[i][d] = simplex[0][d] + 0.5 * (simplex[i][d] - simplex[0][d]);
            values[i] = eval(simplex[i]);
          }
        }
      }
    }

    size_t best = 0;
    for (size_t i = 1; i < simplex.size(); ++i)
      if (values[i] < values[best]) best = i;
    return {simplex[best], values[best]};
  }

 private:
  double eval(const std::vector<double>& x) {
    ++evals;
    return objective(x);
  }

  static std::vector<double> blend(const std::vector<double>& centroid,
                                   const std::vector<double>& v, double t) {
    // centroid + t * (v - centroid)
    std::vector<double> out(centroid.size());
    for (size_t d = 0; d < centroid.size(); ++d) out[d] = centroid[d] + t * (v[d] - centroid[d]);
    return out;
  }

  static double diameter(const std::vector<std::vector<double>>& simplex) {
    double diam = 0.0;
    for (size_t i = 1; i < simplex.size(); ++i)
      for (size_t d = 0; d < simplex[i].size(); ++d)
        diam = std::max(diam, std::abs(simplex[i][d] - simplex[0][d]));
    return diam;
  }

  static void reorder(std::vector<std::vector<double>>& simplex, std::vector<double>& values,
                      const std::vector<size_t>& order) {
    std::vector<std::vector<double>> s;
    std::vector<double> v;
    s.reserve(simplex.size());
    v.reserve(values.size());
    for (size_t idx : order) {
      s.push_back(std::move(simplex[idx]));
      v.push_back(values[idx]);
    }
    simplex = std::move(s);
    values = std::move(v);
  }
};

}  // namespace

SolveResult minimize_slem(const TopologySpec& spec, const SolveConfig& cfg) {
  if (cfg.tol <= 0.0) throw InvalidSpecError("solver tolerance must be positive");
  if (cfg.max_evals < 1) throw InvalidSpecError("max_evals must be at least 1");
  if (cfg.restarts < 1) throw InvalidSpecError("restarts must be at least 1");

  const Graph g = build_graph(spec);
  const int dim = g.orbit_count();
  if (dim > 32) throw InvalidSpecError("orbit dimension " + std::to_string(dim) + " exceeds 32");

  auto objective = [&](const std::vector<double>& x) {
    std::vector<double> proj = x;
    double negative = 0.0;
    for (double& v : proj) {
      if (v < 0.0) {
        negative -= v;
        v = 0.0;
      }
    }
    const std::vector<double> holdings = holding_probabilities(g, OrbitProbabilities{proj});
    double violation = 0.0;
    for (double h : holdings) violation += std::max(0.0, -h);
    return relaxed_slem(g, proj) + 10.0 * (violation + negative);
  };

  // Start points: closed form (repaired if needed), Metropolis-Hastings,
  // then seeded random feasible vectors.
  std::vector<std::vector<double>> starts;
  {
    std::vector<double> closed = optimal_probabilities(spec).probs.values;
    const double scale = repair_scale(g, closed);
    for (double& v : closed) v *= scale;
    starts.push_back(std::move(closed));
    starts.push_back(metropolis_hastings(g).values);
  }
  for (int r = static_cast<int>(starts.size()); r < cfg.restarts; ++r) {
    std::mt19937_64 rng(splitmix64(splitmix64(cfg.seed) ^ static_cast<std::uint64_t>(r)));
    std::vector<double> x(dim);
    for (double& v : x) v = 0.02 + 0.98 * unit_double(rng);
    const double scale = 0.9 * repair_scale(g, x);
    for (double& v : x) v *= scale;
    starts.push_back(std::move(x));
  }
  starts.resize(std::min<size_t>(starts.size(), static_cast<size_t>(cfg.restarts)));

  const int rounds = static_cast<int>(starts.size()) + 1;  // restarts plus a polish pass
  const int per_restart = std::max(1, cfg.max_evals / rounds);
  std::vector<double> best;
  double best_value = 0.0;
  bool best_converged = false;
  int total_evals = 0;
  for (size_t r = 0; r < starts.size(); ++r) {
    NelderMead nm;
    nm.objective = objective;
    nm.max_evals = per_restart;
    nm.ftol = cfg.tol;
    auto [x, fx] = nm.run(starts[r]);
    total_evals += nm.evals;
    if (r == 0 || fx < best_value) {
      best = std::move(x);
      best_value = fx;
      best_converged = nm.converged;
    }
  }
  {
    // Restart from the incumbent with a tight simplex; recovers accuracy
    // lost to premature simplex collapse on the nonsmooth objective.
    NelderMead nm;
    nm.objective = objective;
    nm.max_evals = std::max(1, cfg.max_evals - total_evals);
    nm.ftol = std::min(cfg.tol, 1e-10);
    nm.initial_step = 0.01;
    auto [x, fx] = nm.run(best);
    total_evals += nm.evals;
    if (fx < best_value) {
      best = std::move(x);
      best_value = fx;
      best_converged = nm.converged;
    }
  }

  // Strict-feasibility repair, then report the SLEM of the actual chain.
  for (double& v : best) v = std::max(v, 0.0);
  const double scale = repair_scale(g, best);
  for (double& v : best) v *= scale;

  SolveResult result;
  result.spec = g.spec();
  result.probs = OrbitProbabilities{best};
  result.slem = slem(assemble(spec, result.probs));
  result.evals = total_evals;
  result.converged = best_converged;
  return result;
}

std::vector<ProfilePoint> profile_objective(const TopologySpec& spec, int along_orbit,
                                            const std::vector<double>& grid) {
  const Graph g = build_graph(spec);
  if (along_orbit < 1 || along_orbit > g.orbit_count())
    throw InvalidSpecError("orbit index " + std::to_string(along_orbit) + " outside 1.." +
                           std::to_string(g.orbit_count()));
  const std::vector<double> base = optimal_probabilities(spec).probs.values;

  std::vector<ProfilePoint> points;
  points.reserve(grid.size());
  for (double p : grid) {
    std::vector<double> probs = base;
    probs[along_orbit - 1] = p;
    ProfilePoint point;
    point.p = p;
    point.slem = relaxed_slem(g, probs);
    bool feasible = p >= 0.0;
    if (feasible) {
      for (double h : holding_probabilities(g, OrbitProbabilities{probs}))
        if (h < -1e-12) feasible = false;
    }
    point.feasible = feasible;
    points.push_back(point);
  }
  return points;
}

std::string profile_to_csv(const std::vector<ProfilePoint>& points) {
  std::ostringstream out;
  out << "p,slem,feasible\n";
  for (const ProfilePoint& point : points)
    out << detail::full_precision(point.p) << ',' << detail::full_precision(point.slem) << ','
        << (point.feasible ? 1 : 0) << '\n';
  return out.str();
}

std::string SolveResult::to_json() const {
  detail::ordered_json j;
  j["spec"] = detail::spec_json(spec);
  j["probs"] = detail::probs_json(probs);
  j["slem"] = slem;
  j["evals"] = evals;
  j["converged"] = converged;
  return j.dump(2);
}

}  // namespace kppdr
