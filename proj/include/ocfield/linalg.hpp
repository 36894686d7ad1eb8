#pragma once

// Small dense complex linear algebra for L x L array covariances.

#include <complex>
#include <span>
#include <variant>
#include <vector>

namespace ocfield {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

/// <a, b> = a^H b.
Complex inner(std::span<const Complex> a, std::span<const Complex> b);
double norm_sq(std::span<const Complex> v);

/// Conjugate-symmetric L x L matrix. The lower triangle is authoritative;
/// reads above the diagonal return the conjugate of the mirrored entry.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(int n);
  static HermitianMatrix identity(int n, double scale = 1.0);

  int size() const { return n_; }
  Complex operator()(int i, int j) const;
  /// Stores `value` at (i, j) and implicitly conj(value) at (j, i).
  void set(int i, int j, Complex value);

  /// this += weight * v v^H
  void add_outer(double weight, std::span<const Complex> v);
  void add_diagonal(double value);

  double max_diagonal() const;
  double max_abs() const;
  /// v^H M v (real for Hermitian M).
  double quadratic(std::span<const Complex> v) const;
  ComplexVector multiply(std::span<const Complex> v) const;

 private:
  int n_;
  std::vector<Complex> a_;  // row-major, i >= j used
};

/// Lower-triangular G with G G^H = M.
class LowerFactor {
 public:
  explicit LowerFactor(int n) : n_(n), g_(static_cast<size_t>(n) * n) {}

  int size() const { return n_; }
  Complex operator()(int i, int j) const { return g_[static_cast<size_t>(i) * n_ + j]; }
  Complex& at(int i, int j) { return g_[static_cast<size_t>(i) * n_ + j]; }

  /// Solves G y = c.
  ComplexVector forward(std::span<const Complex> c) const;
  /// Solves G^H x = y.
  ComplexVector backward(std::span<const Complex> y) const;

 private:
  int n_;
  std::vector<Complex> g_;
};

/// P^T M P = G G^H with diagonal pivoting. Factorization stops at the first
/// step whose largest remaining pivot is <= pivot_tolerance(M); columns from
/// `rank` on are zero.
struct PivotedFactor {
  LowerFactor factor;
  std::vector<int> permutation;  // row i of G corresponds to row permutation[i] of M
  int rank;
};

PivotedFactor pivoted_cholesky(const HermitianMatrix& m);

/// A pivot fell below tau = L * eps * max-diagonal at `column`.
struct SingularIndication {
  int column;
};

/// Pivot tolerance used for rank detection.
double pivot_tolerance(const HermitianMatrix& m);

std::variant<LowerFactor, SingularIndication> cholesky(const HermitianMatrix& m);

/// x with M x = c. Requires M positive definite; throws std::domain_error otherwise.
ComplexVector solve(const HermitianMatrix& m, std::span<const Complex> c);

/// c^H M^{-1} c. When M is singular: +infinity if c has a component outside
/// range(M), else the quadratic form on the pseudo-inverse.
double quadratic_form_inverse(std::span<const Complex> c, const HermitianMatrix& m);

/// Component of c orthogonal to span(basis), by modified Gram-Schmidt with
/// a second orthogonalization pass. Zero vector if c lies in the span.
ComplexVector project_out(std::span<const Complex> c, std::span<const ComplexVector> basis);

}  // namespace ocfield
