#pragma once

#include <vector>

#include "kppdr/errors.hpp"

namespace kppdr {

/// Dense real symmetric matrix. Symmetry is structural: every write goes
/// through set()/add(), which update both (i, j) and (j, i), so
/// entries[i][j] == entries[j][i] holds exactly at all times.
class SymmetricMatrix {
 public:
  explicit SymmetricMatrix(int size);

  /// Builds from explicit rows; throws InvalidSpecError if the rows are not
  /// exactly symmetric or not square.
  static SymmetricMatrix from_rows(const std::vector<std::vector<double>>& rows);

  int size() const { return size_; }

  double operator()(int i, int j) const { return entries_[static_cast<size_t>(i) * size_ + j]; }

  void set(int i, int j, double value);
  void add(int i, int j, double value);

  double trace() const;
  double max_abs() const;

  /// Row-major storage, size() * size() entries.
  const std::vector<double>& data() const { return entries_; }

 private:
  int size_;
  std::vector<double> entries_;
};

/// Real eigenvalues sorted in decreasing order.
struct Spectrum {
  std::vector<double> eigenvalues;
};

/// Full symmetric eigendecomposition by cyclic Jacobi rotations.
///
/// Returns all size() eigenvalues sorted descending. Convergence contract:
/// the off-diagonal Frobenius residual after diagonalization is below
/// tol * max|entry| of the input. Throws ConvergenceError (carrying the
/// final residual) if the sweep budget is exhausted first.
Spectrum eigenvalues_symmetric(const SymmetricMatrix& m, double tol = 1e-12,
                               int max_sweeps = 100);

/// max(lambda_2, -lambda_N) of an arbitrary symmetric spectrum.
/// Throws InvalidSpecError for spectra with fewer than two eigenvalues.
double second_modulus(const Spectrum& s);

/// Second largest eigenvalue modulus of a stochastic-matrix spectrum:
/// max(lambda_2, -lambda_N). Requires lambda_1 within 1e-9 of one.
double slem_of_spectrum(const Spectrum& s);

/// y = m * x.
std::vector<double> multiply(const SymmetricMatrix& m, const std::vector<double>& x);

}  // namespace kppdr
