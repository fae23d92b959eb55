#pragma once

// Fixed-size complex linear algebra for two-qubit operators.
//
// Basis ordering is |00>, |01>, |10>, |11>; index = 2 * first + second.
// Everything here is templated on the real scalar so the same kernels run in
// double or long double.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <initializer_list>
#include <limits>
#include <span>
#include <string>

#include "xgeom/error.hpp"

namespace xgeom {

template <typename Real>
using Matrix4c = Eigen::Matrix<std::complex<Real>, 4, 4>;
template <typename Real>
using Matrix2c = Eigen::Matrix<std::complex<Real>, 2, 2>;
template <typename Real>
using Vector4c = Eigen::Matrix<std::complex<Real>, 4, 1>;
template <typename Real>
using Vector4r = Eigen::Matrix<Real, 4, 1>;

using Matrix4cd = Matrix4c<double>;
using Matrix2cd = Matrix2c<double>;
using Vector4cd = Vector4c<double>;
using Vector4d = Vector4r<double>;

enum class Qubit { First, Second };

template <typename Real>
struct Spectrum {
  Vector4r<Real> values;   // descending
  Matrix4c<Real> vectors;  // column k belongs to values[k]
};

namespace detail {

inline constexpr int kJacobiMaxSweeps = 64;

template <typename Real>
constexpr Real jacobi_threshold() {
  return std::max(Real(1e-14), Real(8) * std::numeric_limits<Real>::epsilon());
}

template <typename Real>
Real off_diagonal_norm(const Matrix4c<Real>& a) {
  Real sum = 0;
  for (int p = 0; p < 4; ++p)
    for (int q = p + 1; q < 4; ++q) sum += std::norm(a(p, q));
  return std::sqrt(Real(2) * sum);
}

}  // namespace detail

/// Largest |m(k,j) - conj(m(j,k))| over all entries.
template <typename Real>
Real hermiticity_defect(const Matrix4c<Real>& m) {
  Real worst = 0;
  for (int k = 0; k < 4; ++k)
    for (int j = k; j < 4; ++j)
      worst = std::max(worst, std::abs(m(k, j) - std::conj(m(j, k))));
  return worst;
}

template <typename Real>
bool is_hermitian(const Matrix4c<Real>& m, Real tol) {
  return hermiticity_defect(m) <= tol;
}

/// Cyclic Jacobi diagonalization of a Hermitian 4x4 matrix.
///
/// Each (p, q) step removes the phase of m(p,q) with a diagonal unitary and
/// then applies the classical real rotation, so the combined transform is
/// unitary. Sweeps stop once the off-diagonal Frobenius norm falls below
/// 1e-14 relative to the matrix norm. Only the Hermitian part of `m` is used.
template <typename Real>
Spectrum<Real> jacobi_eigensystem(const Matrix4c<Real>& m) {
  using C = std::complex<Real>;
  Matrix4c<Real> a = (m + m.adjoint()) / Real(2);
  Matrix4c<Real> v = Matrix4c<Real>::Identity();

  const Real scale = std::max(a.norm(), std::numeric_limits<Real>::min());
  for (int sweep = 0; sweep < detail::kJacobiMaxSweeps; ++sweep) {
    if (detail::off_diagonal_norm(a) <= detail::jacobi_threshold<Real>() * scale) break;
    for (int p = 0; p < 3; ++p) {
      for (int q = p + 1; q < 4; ++q) {
        const Real mag = std::abs(a(p, q));
        if (mag == Real(0)) continue;
        const C phase = a(p, q) / mag;
        const C phase_bar = std::conj(phase);

        const Real theta = (a(q, q).real() - a(p, p).real()) / (Real(2) * mag);
        Real t = Real(1) / (std::abs(theta) + std::sqrt(theta * theta + Real(1)));
        if (theta < 0) t = -t;
        const Real c = Real(1) / std::sqrt(t * t + Real(1));
        const Real s = t * c;

        // J = diag(1, e^{-i alpha}) * [[c, s], [-s, c]] on the (p, q) plane.
        const C jpp = c, jpq = s, jqp = -s * phase_bar, jqq = c * phase_bar;

        for (int k = 0; k < 4; ++k) {  // a <- a J
          const C akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * jpp + akq * jqp;
          a(k, q) = akp * jpq + akq * jqq;
        }
        for (int k = 0; k < 4; ++k) {  // a <- J^H a
          const C apk = a(p, k), aqk = a(q, k);
          a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
          a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
        }
        for (int k = 0; k < 4; ++k) {  // v <- v J
          const C vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * jpp + vkq * jqp;
          v(k, q) = vkp * jpq + vkq * jqq;
        }
        a(p, q) = a(q, p) = C(0);
        a(p, p) = C(a(p, p).real());
        a(q, q) = C(a(q, q).real());
      }
    }
  }

  std::array<int, 4> order{0, 1, 2, 3};
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return a(i, i).real() > a(j, j).real(); });
  Spectrum<Real> out;
  for (int k = 0; k < 4; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    out.vectors.col(k) = v.col(order[k]);
  }
  return out;
}

/// Eigensystem of a Hermitian matrix; rejects input whose Hermiticity defect
/// exceeds `tol`.
template <typename Real>
Spectrum<Real> eigensystem_hermitian(const Matrix4c<Real>& m, Real tol = Real(1e-10)) {
  const Real defect = hermiticity_defect(m);
  if (!(defect <= tol))
    throw InvalidDensity(InvalidDensity::Reason::NotHermitian, static_cast<double>(defect));
  return jacobi_eigensystem(m);
}

/// Reduced state of `keep`, tracing out the other qubit.
template <typename Real>
Matrix2c<Real> partial_trace(const Matrix4c<Real>& m, Qubit keep, Real tol = Real(1e-10)) {
  const Real trace_error = std::abs(m.trace() - std::complex<Real>(1));
  if (!(trace_error <= tol))
    throw InvalidDensity(InvalidDensity::Reason::TraceNotOne, static_cast<double>(trace_error));

  Matrix2c<Real> r = Matrix2c<Real>::Zero();
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int s = 0; s < 2; ++s)
        r(a, b) += keep == Qubit::First ? m(2 * a + s, 2 * b + s) : m(2 * s + a, 2 * s + b);
  return r;
}

/// Transpose with respect to the second qubit:
/// (a b | a' b') -> (a b' | a' b). Exact involution.
template <typename Real>
Matrix4c<Real> partial_transpose_second(const Matrix4c<Real>& m) {
  Matrix4c<Real> out;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int ap = 0; ap < 2; ++ap)
        for (int bp = 0; bp < 2; ++bp) out(2 * a + b, 2 * ap + bp) = m(2 * a + bp, 2 * ap + b);
  return out;
}

/// Shannon/von Neumann entropy in bits of a probability vector. Entries down
/// to -tol are clamped to zero; 0 log 0 = 0.
template <typename Real>
Real von_neumann_entropy(std::span<const Real> probabilities, Real tol = Real(1e-10)) {
  Real total = 0;
  for (Real p : probabilities) {
    if (!std::isfinite(p) || p < -tol)
      throw DomainError("probability entry out of range: " + std::to_string(static_cast<double>(p)));
    total += p;
  }
  if (!(std::abs(total - Real(1)) <= tol))
    throw DomainError("probabilities sum to " + std::to_string(static_cast<double>(total)));

  Real s = 0;
  for (Real p : probabilities)
    if (p > 0 && p < 1) s -= p * std::log2(p);
  return s;
}

template <typename Real>
Real von_neumann_entropy(std::initializer_list<Real> probabilities, Real tol = Real(1e-10)) {
  return von_neumann_entropy(std::span<const Real>(probabilities.begin(), probabilities.size()), tol);
}

/// h(p) = -p log2 p - (1-p) log2 (1-p), clamped to the unit interval.
template <typename Real>
Real binary_entropy(Real p) {
  p = std::clamp(p, Real(0), Real(1));
  Real s = 0;
  if (p > 0) s -= p * std::log2(p);
  if (p < 1) s -= (Real(1) - p) * std::log2(Real(1) - p);
  return s;
}

/// Entropy of a Hermitian matrix's spectrum (bits).
template <typename Real>
Real von_neumann_entropy(const Matrix2c<Real>& m) {
  Eigen::SelfAdjointEigenSolver<Matrix2c<Real>> es(m, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  return binary_entropy(std::clamp(ev[1], Real(0), Real(1)));
}

/// Tr m^2 for Hermitian m.
template <typename Real>
Real purity(const Matrix4c<Real>& m) {
  return (m * m).trace().real();
}

/// Number of eigenvalues above `tol`.
template <typename Real>
int numerical_rank(const Matrix4c<Real>& m, Real tol = Real(1e-9)) {
  const auto spectrum = jacobi_eigensystem(m);
  return static_cast<int>((spectrum.values.array() > tol).count());
}

/// Principal square root of a Hermitian PSD matrix. Eigenvalues below zero
/// (numerical noise) are clamped.
template <typename Real>
Matrix4c<Real> sqrt_psd(const Matrix4c<Real>& m) {
  const auto sp = jacobi_eigensystem(m);
  Vector4r<Real> roots = sp.values.cwiseMax(Real(0)).cwiseSqrt();
  return sp.vectors * roots.template cast<std::complex<Real>>().asDiagonal() * sp.vectors.adjoint();
}

template <typename Real>
Matrix4c<Real> kron(const Matrix2c<Real>& a, const Matrix2c<Real>& b) {
  Matrix4c<Real> out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.template block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

}  // namespace xgeom
