#include "kppdr/mixsim.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "format_util.hpp"
#include "json_util.hpp"

namespace kppdr {

std::string init_mode_name(InitMode m) {
  return m == InitMode::RandomUniform ? "random-uniform-values" : "point-mass";
}

InitMode init_mode_from_name(const std::string& name) {
  if (name == "random-uniform-values" || name == "uniform") return InitMode::RandomUniform;
  if (name == "point-mass" || name == "point") return InitMode::PointMass;
  throw InvalidSpecError("unknown init mode \"" + name +
                         "\" (expected random-uniform-values or point-mass)");
}

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

double deviation_norm(const std::vector<double>& x, double mean) {
  double acc = 0.0;
  for (double v : x) {
    const double d = v - mean;
    acc += d * d;
  }
  return std::sqrt(acc);
}

MixingTrace simulate_impl(const SymmetricMatrix& p, const TrialConfig& cfg) {
  if (cfg.trials < 1) throw InvalidSpecError("trials must be at least 1");
  if (cfg.iterations < 1) throw InvalidSpecError("iterations must be at least 1");
  const int n = p.size();
  if (n < 2) throw InvalidSpecError("simulation requires at least 2 nodes");

  MixingTrace trace;
  trace.cfg = cfg;
  trace.distances.assign(cfg.iterations + 1, 0.0);
  std::vector<double> acc(cfg.iterations + 1, 0.0);

  std::vector<double> x(n);
  for (int trial = 0; trial < cfg.trials; ++trial) {
    // Independent substream per trial: trial counts can grow without
    // reshuffling earlier trials.
    std::mt19937_64 rng(splitmix64(splitmix64(cfg.seed) ^ static_cast<std::uint64_t>(trial)));

    double mean = 0.0;
    double denom = 0.0;
    for (int attempt = 0; attempt < 100; ++attempt) {
      if (cfg.init == InitMode::RandomUniform) {
        for (double& v : x) v = unit_double(rng);
      } else {
        std::fill(x.begin(), x.end(), 0.0);
        x[rng() % n] = 1.0;
      }
      mean = 0.0;
      for (double v : x) mean += v;
      mean /= n;
      denom = deviation_norm(x, mean);
      if (denom > 0.0) break;
      ++trace.redraws;
    }
    if (denom == 0.0)
      throw InvalidSpecError("could not draw a non-uniform initial vector after 100 attempts");

    acc[0] += cfg.geometric_mean ? 0.0 : 1.0;
    for (int t = 1; t <= cfg.iterations; ++t) {
      x = multiply(p, x);
      const double d = deviation_norm(x, mean) / denom;
      acc[t] += cfg.geometric_mean ? std::log(d) : d;
    }
  }

  for (int t = 0; t <= cfg.iterations; ++t) {
    const double m = acc[t] / cfg.trials;
    trace.distances[t] = cfg.geometric_mean ? std::exp(m) : m;
  }
  trace.distances[0] = 1.0;
  return trace;
}

}  // namespace

MixingTrace simulate(const TransitionMatrix& p, const TrialConfig& cfg) {
  MixingTrace trace = simulate_impl(p.matrix(), cfg);
  trace.spec = p.spec();
  trace.probs = p.probs();
  trace.label = family_name(p.spec().family);
  return trace;
}

MixingTrace simulate(const SymmetricMatrix& p, const TrialConfig& cfg) {
  return simulate_impl(p, cfg);
}

double asymptotic_rate(const MixingTrace& trace, int window) {
  const int length = static_cast<int>(trace.distances.size());
  if (window < 2) throw InvalidSpecError("window must be at least 2");
  if (length <= window)
    throw InvalidSpecError("trace of length " + std::to_string(length) +
                           " is too short for window " + std::to_string(window));

  // Least-squares slope of log(distance) over the last `window` points.
  double sum_t = 0.0, sum_y = 0.0, sum_tt = 0.0, sum_ty = 0.0;
  for (int i = 0; i < window; ++i) {
    const int t = length - window + i;
    const double d = trace.distances[t];
    if (d <= 1e-14)
      throw std::runtime_error("trace tail has reached the numerical floor (distance " +
                               detail::full_precision(d) + " at iteration " + std::to_string(t) +
                               "); estimate the rate over a shorter horizon");
    const double y = std::log(d);
    sum_t += t;
    sum_y += y;
    sum_tt += static_cast<double>(t) * t;
    sum_ty += t * y;
  }
  const double slope =
      (window * sum_ty - sum_t * sum_y) / (window * sum_tt - sum_t * sum_t);
  return std::exp(slope);
}

ComparisonReport compare(const std::vector<MixingTrace>& traces, double rate_tolerance,
                         int window) {
  if (traces.empty()) throw InvalidSpecError("nothing to compare");
  const int entries = static_cast<int>(traces[0].distances.size());
  for (const MixingTrace& t : traces)
    if (static_cast<int>(t.distances.size()) != entries)
      throw InvalidSpecError("traces must share the same iteration count");

  ComparisonReport report;
  report.iterations = entries - 1;
  report.rate_tolerance = rate_tolerance;
  report.window = window > 0 ? window : std::max(2, std::min(50, report.iterations / 2));
  for (size_t i = 0; i < traces.size(); ++i)
    report.labels.push_back(traces[i].label.empty() ? "trace" + std::to_string(i)
                                                    : traces[i].label);

  const int m = static_cast<int>(traces.size());
  report.per_iteration_order.resize(entries);
  for (int t = 0; t < entries; ++t) {
    std::vector<int> order(m);
    for (int i = 0; i < m; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return traces[a].distances[t] < traces[b].distances[t];
    });
    report.per_iteration_order[t] = std::move(order);
  }

  // A crossover is the first iteration where a pair strictly reorders
  // relative to its first strictly ordered iteration.
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      PairCrossover pc;
      pc.a = report.labels[i];
      pc.b = report.labels[j];
      int reference = 0;
      for (int t = 1; t < entries; ++t) {
        const double diff = traces[i].distances[t] - traces[j].distances[t];
        const int sign = diff < 0.0 ? -1 : diff > 0.0 ? 1 : 0;
        if (sign == 0) continue;
        if (reference == 0) {
          reference = sign;
        } else if (sign != reference) {
          pc.iteration = t;
          break;
        }
      }
      if (pc.iteration && (!report.first_crossover || *pc.iteration < *report.first_crossover))
        report.first_crossover = *pc.iteration;
      report.pairwise_crossovers.push_back(std::move(pc));
    }
  }

  for (const MixingTrace& t : traces) {
    try {
      report.tail_rates.push_back(asymptotic_rate(t, report.window));
    } catch (const std::exception&) {
      report.tail_rates.push_back(std::nullopt);
    }
  }
  report.tail_rates_match = true;
  for (int i = 0; i < m && report.tail_rates_match; ++i) {
    for (int j = i + 1; j < m; ++j) {
      if (!report.tail_rates[i] || !report.tail_rates[j]) {
        report.tail_rates_match = false;
        break;
      }
      const double a = *report.tail_rates[i];
      const double b = *report.tail_rates[j];
      if (std::abs(a - b) > rate_tolerance * std::max(a, b)) {
        report.tail_rates_match = false;
        break;
      }
    }
  }
  return report;
}

std::string MixingTrace::to_csv() const {
  std::ostringstream out;
  out << "iteration,distance\n";
  for (size_t t = 0; t < distances.size(); ++t)
    out << t << ',' << detail::full_precision(distances[t]) << '\n';
  return out.str();
}

std::string traces_to_long_csv(const std::vector<MixingTrace>& traces) {
  std::ostringstream out;
  out << "label,iteration,distance\n";
  for (size_t i = 0; i < traces.size(); ++i) {
    const std::string label = traces[i].label.empty() ? "trace" + std::to_string(i)
                                                      : traces[i].label;
    for (size_t t = 0; t < traces[i].distances.size(); ++t)
      out << label << ',' << t << ',' << detail::full_precision(traces[i].distances[t]) << '\n';
  }
  return out.str();
}

std::string ComparisonReport::to_json() const {
  detail::ordered_json j;
  j["labels"] = labels;
  j["iterations"] = iterations;
  j["window"] = window;
  j["rate_tolerance"] = rate_tolerance;
  if (first_crossover)
    j["first_crossover"] = *first_crossover;
  else
    j["first_crossover"] = nullptr;
  detail::ordered_json pairs = detail::ordered_json::array();
  for (const PairCrossover& pc : pairwise_crossovers) {
    detail::ordered_json p;
    p["a"] = pc.a;
    p["b"] = pc.b;
    if (pc.iteration)
      p["iteration"] = *pc.iteration;
    else
      p["iteration"] = nullptr;
    pairs.push_back(std::move(p));
  }
  j["pairwise_crossovers"] = std::move(pairs);
  detail::ordered_json rates = detail::ordered_json::array();
  for (const auto& r : tail_rates) {
    if (r)
      rates.push_back(*r);
    else
      rates.push_back(nullptr);
  }
  j["tail_rates"] = std::move(rates);
  j["tail_rates_match"] = tail_rates_match;
  detail::ordered_json order = detail::ordered_json::array();
  for (const std::vector<int>& per_t : per_iteration_order) order.push_back(per_t);
  j["per_iteration_order"] = std::move(order);
  return j.dump(2);
}

}  // namespace kppdr
