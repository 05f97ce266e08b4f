#include "kppdr/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <string>

namespace kppdr {

SymmetricMatrix::SymmetricMatrix(int size) : size_(size) {
  if (size < 1) throw InvalidSpecError("matrix size must be at least 1");
  entries_.assign(static_cast<size_t>(size) * size, 0.0);
}

SymmetricMatrix SymmetricMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  const int n = static_cast<int>(rows.size());
  SymmetricMatrix m(n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[i].size()) != n)
      throw InvalidSpecError("matrix rows must all have length " + std::to_string(n));
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (rows[i][j] != rows[j][i])
        throw InvalidSpecError("matrix is not symmetric at (" + std::to_string(i) + ", " +
                               std::to_string(j) + ")");
      m.entries_[static_cast<size_t>(i) * n + j] = rows[i][j];
    }
  }
  return m;
}

void SymmetricMatrix::set(int i, int j, double value) {
  entries_[static_cast<size_t>(i) * size_ + j] = value;
  entries_[static_cast<size_t>(j) * size_ + i] = value;
}

void SymmetricMatrix::add(int i, int j, double value) {
  entries_[static_cast<size_t>(i) * size_ + j] += value;
  if (i != j) entries_[static_cast<size_t>(j) * size_ + i] += value;
}

double SymmetricMatrix::trace() const {
  double t = 0.0;
  for (int i = 0; i < size_; ++i) t += (*this)(i, i);
  return t;
}

double SymmetricMatrix::max_abs() const {
  double m = 0.0;
  for (double v : entries_) m = std::max(m, std::abs(v));
  return m;
}

namespace {

double off_diagonal_norm(const std::vector<double>& a, int n) {
  double sum = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double v = a[static_cast<size_t>(i) * n + j];
      sum += 2.0 * v * v;
    }
  return std::sqrt(sum);
}

// One Jacobi rotation zeroing a[p][q]; updates only the touched rows/columns.
void rotate(std::vector<double>& a, int n, int p, int q) {
  auto at = [&](int i, int j) -> double& { return a[static_cast<size_t>(i) * n + j]; };
  const double apq = at(p, q);
  const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
  const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const double tau = s / (1.0 + c);

  const double app = at(p, p);
  const double aqq = at(q, q);
  at(p, p) = app - t * apq;
  at(q, q) = aqq + t * apq;
  at(p, q) = 0.0;
  at(q, p) = 0.0;
  for (int k = 0; k < n; ++k) {
    if (k == p || k == q) continue;
    const double akp = at(k, p);
    const double akq = at(k, q);
    at(k, p) = akp - s * (akq + tau * akp);
    at(p, k) = at(k, p);
    at(k, q) = akq + s * (akp - tau * akq);
    at(q, k) = at(k, q);
  }
}

}  // namespace

Spectrum eigenvalues_symmetric(const SymmetricMatrix& m, double tol, int max_sweeps) {
  if (tol <= 0.0) throw InvalidSpecError("eigensolver tolerance must be positive");
  const int n = m.size();
  std::vector<double> a = m.data();

  const double scale = m.max_abs();
  Spectrum out;
  out.eigenvalues.resize(n);
  if (n == 1 || scale == 0.0) {
    for (int i = 0; i < n; ++i) out.eigenvalues[i] = a[static_cast<size_t>(i) * n + i];
    std::sort(out.eigenvalues.begin(), out.eigenvalues.end(), std::greater<>());
    return out;
  }

  const double stop = tol * scale;
  // Rotations below this size cannot keep the residual above `stop`.
  const double skip = stop / (2.0 * n * n);

  bool converged = off_diagonal_norm(a, n) < stop;
  for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
    for (int p = 0; p < n - 1; ++p)
      for (int q = p + 1; q < n; ++q)
        if (std::abs(a[static_cast<size_t>(p) * n + q]) > skip) rotate(a, n, p, q);
    converged = off_diagonal_norm(a, n) < stop;
  }
  if (!converged) {
    const double residual = off_diagonal_norm(a, n);
    throw ConvergenceError("jacobi eigensolver did not converge after " +
                               std::to_string(max_sweeps) +
                               " sweeps (off-diagonal residual " + std::to_string(residual) + ")",
                           residual);
  }

  for (int i = 0; i < n; ++i) out.eigenvalues[i] = a[static_cast<size_t>(i) * n + i];
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end(), std::greater<>());
  return out;
}

double second_modulus(const Spectrum& s) {
  if (s.eigenvalues.size() < 2)
    throw InvalidSpecError("second eigenvalue modulus is undefined for spectra of length < 2");
  return std::max(s.eigenvalues[1], -s.eigenvalues.back());
}

double slem_of_spectrum(const Spectrum& s) {
  const double mu = second_modulus(s);
  if (std::abs(s.eigenvalues[0] - 1.0) > 1e-9)
    throw InvalidSpecError("not a stochastic-matrix spectrum: largest eigenvalue is " +
                           std::to_string(s.eigenvalues[0]));
  return mu;
}

std::vector<double> multiply(const SymmetricMatrix& m, const std::vector<double>& x) {
  const int n = m.size();
  if (static_cast<int>(x.size()) != n)
    throw InvalidSpecError("vector length does not match matrix size");
  std::vector<double> y(n, 0.0);
  const std::vector<double>& a = m.data();
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    const double* row = a.data() + static_cast<size_t>(i) * n;
    for (int j = 0; j < n; ++j) acc += row[j] * x[j];
    y[i] = acc;
  }
  return y;
}

}  // namespace kppdr
