#include "kppdr/optimal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "json_util.hpp"

namespace kppdr {

namespace {

constexpr double kPi = std::numbers::pi;

double cycle_coupling(int k) {
  // Uniform per-edge mass n*p that balances the two extreme cycle modes.
  const double c1 = std::cos(2.0 * kPi / k);
  const double c2 = std::cos(2.0 * (k / 2) * kPi / k);
  return 1.0 / (2.0 - c1 - c2);
}

double cycle_slem(int k) {
  const double c1 = std::cos(2.0 * kPi / k);
  const double c2 = std::cos(2.0 * (k / 2) * kPi / k);
  return (c1 - c2) / (2.0 - c1 - c2);
}

}  // namespace

OptimalResult optimal_probabilities(const TopologySpec& spec) {
  const Graph g = build_graph(spec);  // validates the spec
  const std::vector<LayerKind>& pattern = g.pattern();
  const int n = spec.n;

  OptimalResult result;
  result.spec = g.spec();

  switch (spec.family) {
    case Family::Symmetric:
      if (spec.k >= 3) {
        result.probs.values.assign(pattern.size(), 1.0 / (2.0 * n));
        result.slem = std::cos(kPi / spec.k);
        result.theta = kPi / spec.k;
      } else {
        result.probs.values.assign(pattern.size(), 2.0 / (3.0 * n));
        result.slem = 1.0 / 3.0;
      }
      break;
    case Family::SemiSymmetric: {
      const double full = spec.k >= 4 ? 1.0 / (2.0 * n) : 2.0 / (3.0 * n);
      for (LayerKind kind : pattern)
        result.probs.values.push_back(kind == LayerKind::Full ? full : 0.5);
      result.slem = spec.k >= 4 ? std::cos(kPi / spec.k) : (1.0 + std::sqrt(13.0)) / 6.0;
      break;
    }
    case Family::Cycle:
      result.probs.values.assign(pattern.size(), cycle_coupling(spec.k) / n);
      result.slem = cycle_slem(spec.k);
      break;
    case Family::SemiCycle: {
      const double full = cycle_coupling(spec.k) / n;
      for (LayerKind kind : pattern)
        result.probs.values.push_back(kind == LayerKind::Full ? full : 0.5);
      result.slem = cycle_slem(spec.k);
      break;
    }
  }

  try {
    assemble(spec, result.probs);
    result.feasible = true;
  } catch (const InfeasibleError&) {
    result.feasible = false;
  }
  return result;
}

SymmetricMatrix gram_matrix(int k, int n) {
  if (k < 2) throw InvalidSpecError("gram matrix requires at least 2 sets");
  if (n < 1) throw InvalidSpecError("set size n must be at least 1");
  SymmetricMatrix g(k - 1);
  for (int i = 0; i < k - 1; ++i) {
    g.set(i, i, 2.0 * n);
    if (i + 1 < k - 1) g.set(i, i + 1, -static_cast<double>(n));
  }
  return g;
}

namespace {

// z = sum_i coords[i] * alpha_i with alpha_i = sqrt(n) (e_i - e_{i+1}).
std::vector<double> expand_dual_vector(const std::vector<double>& coords, int k, int n) {
  std::vector<double> z(k, 0.0);
  const double root_n = std::sqrt(static_cast<double>(n));
  for (int i = 0; i < k - 1; ++i) {
    z[i] += coords[i] * root_n;
    z[i + 1] -= coords[i] * root_n;
  }
  return z;
}

double dot(const std::vector<double>& x, const std::vector<double>& y) {
  double acc = 0.0;
  for (size_t i = 0; i < x.size(); ++i) acc += x[i] * y[i];
  return acc;
}

double quadratic_form(const SymmetricMatrix& m, const std::vector<double>& x) {
  return dot(x, multiply(m, x));
}

}  // namespace

DualCertificate dual_certificate(int k, int n) {
  if (k < 3)
    throw InvalidSpecError("the dual certificate requires K >= 3 (the K = 2 optimum sits in "
                           "the residual block)");
  if (n < 1) throw InvalidSpecError("set size n must be at least 1");

  DualCertificate cert;
  cert.k = k;
  cert.n = n;
  cert.theta = kPi / k;
  cert.s = std::cos(cert.theta);
  const double theta = cert.theta;
  const double s = cert.s;
  const double p = 1.0 / (2.0 * n);
  const double sin_theta = std::sin(theta);
  const double sin2 = sin_theta * sin_theta;

  // Closed-form seed values; only their scale is adjusted below.
  const double a1_seed = (1.0 + s) / (1.0 - s) / n * sin2;
  const double a1_prime_seed = (1.0 - s) / (1.0 + s) / n * sin2;

  cert.a.resize(k - 1);
  cert.a_prime.resize(k - 1);
  const double phi = kPi - theta;
  for (int j = 1; j <= k - 1; ++j) {
    cert.a[j - 1] = std::sin(j * theta) / std::sin(theta) * a1_seed;
    cert.a_prime[j - 1] = std::sin(j * phi) / std::sin(phi) * a1_prime_seed;
  }

  // Normalize so that z1'z1 = (1+s)/2 and z2'z2 = (1-s)/2, which together
  // force both the unit-trace constraint and the strong-duality condition.
  const SymmetricMatrix gram = gram_matrix(k, n);
  const double q1 = quadratic_form(gram, cert.a);
  const double q2 = quadratic_form(gram, cert.a_prime);
  cert.a1_scale = std::sqrt((1.0 + s) / 2.0 / q1);
  cert.a1_prime_scale = std::sqrt((1.0 - s) / 2.0 / q2);
  for (double& v : cert.a) v *= cert.a1_scale;
  for (double& v : cert.a_prime) v *= cert.a1_prime_scale;
  cert.a1 = cert.a[0];
  cert.a1_prime = cert.a_prime[0];

  const std::vector<double> z1 = expand_dual_vector(cert.a, k, n);
  const std::vector<double> z2 = expand_dual_vector(cert.a_prime, k, n);

  double z1_sum = 0.0, z2_sum = 0.0;
  for (int i = 0; i < k; ++i) {
    z1_sum += z1[i];
    z2_sum += z2[i];
  }
  cert.residuals["z1_orthogonality"] = std::abs(z1_sum);
  cert.residuals["z2_orthogonality"] = std::abs(z2_sum);

  const double zz1 = dot(z1, z1);
  const double zz2 = dot(z2, z2);
  cert.residuals["normalization"] = std::abs(zz1 + zz2 - 1.0);
  cert.residuals["duality_gap"] = std::abs(zz1 - zz2 - s);

  const double root_n = std::sqrt(static_cast<double>(n));
  double projection = 0.0;
  for (int i = 0; i < k - 1; ++i) {
    const double p1 = root_n * (z1[i] - z1[i + 1]);
    const double p2 = root_n * (z2[i] - z2[i + 1]);
    projection = std::max(projection, std::abs(p1 * p1 - p2 * p2));
  }
  cert.residuals["projection_match"] = projection;

  const double np = n * p;
  auto first_row = [&](const std::vector<double>& a, double sign) {
    return std::abs((sign * s + 1.0 - 2.0 * np) * a[0] + p * n * a[1]);
  };
  auto last_row = [&](const std::vector<double>& a, double sign) {
    return std::abs((sign * s + 1.0 - 2.0 * np) * a[k - 2] + p * n * a[k - 3]);
  };
  auto interior_rows = [&](const std::vector<double>& a, double sign) {
    double worst = 0.0;
    for (int i = 2; i <= k - 2; ++i)
      worst = std::max(worst, std::abs((sign * s + 1.0 - 2.0 * np) * a[i - 1] +
                                       p * n * (a[i - 2] + a[i])));
    return worst;
  };
  cert.residuals["z1_recursion_first"] = first_row(cert.a, -1.0);
  cert.residuals["z1_recursion_interior"] = interior_rows(cert.a, -1.0);
  cert.residuals["z1_recursion_last"] = last_row(cert.a, -1.0);
  cert.residuals["z2_recursion_first"] = first_row(cert.a_prime, 1.0);
  cert.residuals["z2_recursion_interior"] = interior_rows(cert.a_prime, 1.0);
  cert.residuals["z2_recursion_last"] = last_row(cert.a_prime, 1.0);
  return cert;
}

double DualCertificate::max_residual() const {
  double worst = 0.0;
  for (const auto& [name, value] : residuals) worst = std::max(worst, value);
  return worst;
}

std::string OptimalResult::to_json() const {
  detail::ordered_json j;
  j["spec"] = detail::spec_json(spec);
  j["probs"] = detail::probs_json(probs);
  j["slem"] = slem;
  j["theta"] = theta;
  j["feasible"] = feasible;
  return j.dump(2);
}

std::string DualCertificate::to_json() const {
  detail::ordered_json j;
  j["k"] = k;
  j["n"] = n;
  j["s"] = s;
  j["theta"] = theta;
  j["a"] = a;
  j["a_prime"] = a_prime;
  j["a1"] = a1;
  j["a1_prime"] = a1_prime;
  j["a1_scale"] = a1_scale;
  j["a1_prime_scale"] = a1_prime_scale;
  detail::ordered_json res;
  for (const auto& [name, value] : residuals) res[name] = value;
  j["residuals"] = res;
  j["max_residual"] = max_residual();
  return j.dump(2);
}

}  // namespace kppdr
