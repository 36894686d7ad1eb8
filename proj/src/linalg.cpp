#include "ocfield/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ocfield {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Relative size of the forward-solve residual at a dropped pivot above
// which c is declared to leave the range of M.
constexpr double kRangeResidual = 1e-8;

// Relative norm below which a projected vector is treated as zero.
constexpr double kSpanTolerance = 1e-12;

}  // namespace

Complex inner(std::span<const Complex> a, std::span<const Complex> b) {
  Complex s{};
  for (size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

double norm_sq(std::span<const Complex> v) {
  double s = 0.0;
  for (const Complex& z : v) s += std::norm(z);
  return s;
}

HermitianMatrix::HermitianMatrix(int n) : n_(n), a_(static_cast<size_t>(n) * n) {
  if (n < 1) throw std::domain_error("matrix dimension must be >= 1");
}

HermitianMatrix HermitianMatrix::identity(int n, double scale) {
  HermitianMatrix m(n);
  m.add_diagonal(scale);
  return m;
}

Complex HermitianMatrix::operator()(int i, int j) const {
  if (i >= j) return a_[static_cast<size_t>(i) * n_ + j];
  return std::conj(a_[static_cast<size_t>(j) * n_ + i]);
}

void HermitianMatrix::set(int i, int j, Complex value) {
  if (i >= j) {
    a_[static_cast<size_t>(i) * n_ + j] = (i == j) ? Complex(value.real(), 0.0) : value;
  } else {
    a_[static_cast<size_t>(j) * n_ + i] = std::conj(value);
  }
}

void HermitianMatrix::add_outer(double weight, std::span<const Complex> v) {
  for (int i = 0; i < n_; ++i) {
    const Complex wi = weight * v[i];
    Complex* row = &a_[static_cast<size_t>(i) * n_];
    for (int j = 0; j < i; ++j) row[j] += wi * std::conj(v[j]);
    row[i] += Complex(weight * std::norm(v[i]), 0.0);
  }
}

void HermitianMatrix::add_diagonal(double value) {
  for (int i = 0; i < n_; ++i) a_[static_cast<size_t>(i) * n_ + i] += value;
}

double HermitianMatrix::max_diagonal() const {
  double m = 0.0;
  for (int i = 0; i < n_; ++i) m = std::max(m, a_[static_cast<size_t>(i) * n_ + i].real());
  return m;
}

double HermitianMatrix::max_abs() const {
  double m = 0.0;
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j <= i; ++j) m = std::max(m, std::abs(a_[static_cast<size_t>(i) * n_ + j]));
  }
  return m;
}

double HermitianMatrix::quadratic(std::span<const Complex> v) const {
  double diag = 0.0;
  Complex off{};
  for (int i = 0; i < n_; ++i) {
    const Complex* row = &a_[static_cast<size_t>(i) * n_];
    diag += row[i].real() * std::norm(v[i]);
    for (int j = 0; j < i; ++j) off += std::conj(v[i]) * row[j] * v[j];
  }
  return diag + 2.0 * off.real();
}

ComplexVector HermitianMatrix::multiply(std::span<const Complex> v) const {
  ComplexVector out(n_);
  for (int i = 0; i < n_; ++i) {
    Complex s{};
    for (int j = 0; j < n_; ++j) s += (*this)(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

ComplexVector LowerFactor::forward(std::span<const Complex> c) const {
  ComplexVector y(n_);
  for (int i = 0; i < n_; ++i) {
    Complex r = c[i];
    for (int k = 0; k < i; ++k) r -= (*this)(i, k) * y[k];
    y[i] = r / (*this)(i, i).real();
  }
  return y;
}

ComplexVector LowerFactor::backward(std::span<const Complex> y) const {
  ComplexVector x(n_);
  for (int i = n_ - 1; i >= 0; --i) {
    Complex r = y[i];
    for (int k = i + 1; k < n_; ++k) r -= std::conj((*this)(k, i)) * x[k];
    x[i] = r / (*this)(i, i).real();
  }
  return x;
}

double pivot_tolerance(const HermitianMatrix& m) {
  return m.size() * kEps * m.max_diagonal();
}

std::variant<LowerFactor, SingularIndication> cholesky(const HermitianMatrix& m) {
  const int n = m.size();
  const double tau = pivot_tolerance(m);
  LowerFactor g(n);
  for (int j = 0; j < n; ++j) {
    double d = m(j, j).real();
    for (int k = 0; k < j; ++k) d -= std::norm(g(j, k));
    if (d <= tau) return SingularIndication{j};
    const double pivot = std::sqrt(d);
    g.at(j, j) = pivot;
    for (int i = j + 1; i < n; ++i) {
      Complex s = m(i, j);
      for (int k = 0; k < j; ++k) s -= g(i, k) * std::conj(g(j, k));
      g.at(i, j) = s / pivot;
    }
  }
  return g;
}

PivotedFactor pivoted_cholesky(const HermitianMatrix& m) {
  const int n = m.size();
  const double tau = pivot_tolerance(m);
  PivotedFactor out{LowerFactor(n), std::vector<int>(n), 0};
  std::vector<int>& perm = out.permutation;
  for (int i = 0; i < n; ++i) perm[i] = i;
  LowerFactor& g = out.factor;

  // Remaining diagonal of the Schur complement, in permuted order.
  std::vector<double> d(n);
  for (int i = 0; i < n; ++i) d[i] = m(i, i).real();

  for (int j = 0; j < n; ++j) {
    int p = j;
    for (int i = j + 1; i < n; ++i) {
      if (d[i] > d[p]) p = i;
    }
    if (d[p] <= tau) break;
    if (p != j) {
      std::swap(perm[j], perm[p]);
      std::swap(d[j], d[p]);
      for (int k = 0; k < j; ++k) std::swap(g.at(j, k), g.at(p, k));
    }
    const double pivot = std::sqrt(d[j]);
    g.at(j, j) = pivot;
    for (int i = j + 1; i < n; ++i) {
      Complex s = m(perm[i], perm[j]);
      for (int k = 0; k < j; ++k) s -= g(i, k) * std::conj(g(j, k));
      const Complex gij = s / pivot;
      g.at(i, j) = gij;
      d[i] -= std::norm(gij);
    }
    out.rank = j + 1;
  }
  return out;
}

ComplexVector solve(const HermitianMatrix& m, std::span<const Complex> c) {
  auto f = cholesky(m);
  if (std::holds_alternative<SingularIndication>(f)) {
    throw std::domain_error("solve: matrix is not positive definite");
  }
  const LowerFactor& g = std::get<LowerFactor>(f);
  return g.backward(g.forward(c));
}

double quadratic_form_inverse(std::span<const Complex> c, const HermitianMatrix& m) {
  const PivotedFactor pf = pivoted_cholesky(m);
  const LowerFactor& g = pf.factor;
  const int n = g.size();
  const double c_norm = std::sqrt(norm_sq(c));

  // Forward solve on the leading `rank` rows; the trailing rows must then be
  // reproduced by the solution for c to lie in range(M).
  ComplexVector y(pf.rank);
  double q = 0.0;
  for (int i = 0; i < n; ++i) {
    Complex r = c[pf.permutation[i]];
    const int cols = std::min(i, pf.rank);
    for (int k = 0; k < cols; ++k) r -= g(i, k) * y[k];
    if (i < pf.rank) {
      y[i] = r / g(i, i).real();
      q += std::norm(y[i]);
    } else if (std::abs(r) > kRangeResidual * c_norm) {
      return std::numeric_limits<double>::infinity();
    }
  }
  return q;
}

ComplexVector project_out(std::span<const Complex> c, std::span<const ComplexVector> basis) {
  ComplexVector w(c.begin(), c.end());
  if (basis.empty()) return w;

  // Orthonormalize the basis, discarding dependent directions.
  std::vector<ComplexVector> q;
  q.reserve(basis.size());
  for (const ComplexVector& b : basis) {
    if (b.size() != c.size()) throw std::domain_error("project_out: dimension mismatch");
    ComplexVector v = b;
    const double original = std::sqrt(norm_sq(v));
    if (original == 0.0) continue;
    for (int pass = 0; pass < 2; ++pass) {
      for (const ComplexVector& e : q) {
        const Complex p = inner(e, v);
        for (size_t i = 0; i < v.size(); ++i) v[i] -= p * e[i];
      }
    }
    const double len = std::sqrt(norm_sq(v));
    if (len <= kSpanTolerance * original) continue;
    for (Complex& z : v) z /= len;
    q.push_back(std::move(v));
  }

  const double c_norm = std::sqrt(norm_sq(c));
  for (int pass = 0; pass < 2; ++pass) {
    for (const ComplexVector& e : q) {
      const Complex p = inner(e, w);
      for (size_t i = 0; i < w.size(); ++i) w[i] -= p * e[i];
    }
  }
  if (std::sqrt(norm_sq(w)) <= kSpanTolerance * c_norm) {
    std::fill(w.begin(), w.end(), Complex{});
  }
  return w;
}

}  // namespace ocfield
