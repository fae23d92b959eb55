#include "xgeom/measures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

namespace xgeom {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Matrix4cd spin_flip(const Matrix4cd& m) {
  // sy x sy is real and anti-diagonal: (-1, 1, 1, -1) reading upward.
  Matrix4cd yy = Matrix4cd::Zero();
  yy(0, 3) = yy(3, 0) = -1.0;
  yy(1, 2) = yy(2, 1) = 1.0;
  return yy * m.conjugate() * yy;
}

// max(x - y0, y - x0); convex in omega along the blend, negative at omega = 1.
double signed_subtraction(const XState& s) {
  const auto e = extreme_points(s);
  return std::max(s.x - e.y0, s.y - e.x0);
}

}  // namespace

double concurrence_x(const XState& s) { return l_measure({s.x, s.y}, extreme_points(s)); }

Vector4d spin_flip_roots(const DensityMatrix& rho) {
  const Matrix4cd root = sqrt_psd(rho.matrix());
  Matrix4cd m = root * spin_flip(rho.matrix()) * root;
  m = 0.5 * (m + m.adjoint()).eval();
  return jacobi_eigensystem(m).values.cwiseMax(0.0).cwiseSqrt();
}

double concurrence(const DensityMatrix& rho) {
  const Vector4d r = spin_flip_roots(rho);
  return std::max(0.0, r[0] - r[1] - r[2] - r[3]);
}

PptVerdict ppt_verdict(const DensityMatrix& rho, double tol) {
  const double smallest = jacobi_eigensystem(partial_transpose_second(rho.matrix())).values[3];
  return {smallest < -tol, smallest};
}

bool ppt_inequalities_hold(const XState& s, double tol) {
  const auto e = extreme_points(s);
  return s.y - e.x0 > tol || s.x - e.y0 > tol;
}

double entanglement_of_formation(double c, double tol) {
  if (!std::isfinite(c) || c < -tol || c > 1.0 + tol)
    throw DomainError("concurrence " + fmt(c) + " outside [0, 1]");
  c = std::clamp(c, 0.0, 1.0);
  if (c == 0.0) return 0.0;
  // h is symmetric; evaluate it at the small root without cancellation.
  const double p = c * c / (2.0 * (1.0 + std::sqrt(1.0 - c * c)));
  if (p >= 0.5) return 1.0;
  return -(p * std::log2(p) + (1.0 - p) * std::log1p(-p) / std::numbers::ln2);
}

XState blend_with_maximally_mixed(const XState& s, double omega) {
  if (!std::isfinite(omega) || omega < 0.0 || omega > 1.0)
    throw ParameterError("blend weight " + fmt(omega) + " outside [0, 1]");
  XState out = s;
  const double keep = 1.0 - omega;
  const double add = 0.25 * omega;
  out.r11 = keep * s.r11 + add;
  out.r22 = keep * s.r22 + add;
  out.r33 = keep * s.r33 + add;
  out.r44 = keep * s.r44 + add;
  out.x = keep * s.x;
  out.y = keep * s.y;
  return out;
}

double disentangling_weight(const XState& s, double resolution) {
  if (signed_subtraction(s) <= 0) return 0.0;
  double lo = 0.0, hi = 1.0;
  while (hi - lo > resolution) {
    const double mid = 0.5 * (lo + hi);
    if (signed_subtraction(blend_with_maximally_mixed(s, mid)) > 0)
      lo = mid;
    else
      hi = mid;
  }
  return hi;
}

RobustnessReport robustness(const XState& s, int curve_samples) {
  RobustnessReport rep;
  const auto e = extreme_points(s);
  const double along_x = s.x - e.y0;
  const double along_y = s.y - e.x0;
  if (along_x > 0 || along_y > 0) {
    rep.active_term = along_x >= along_y ? 1 : 2;
    rep.active_value = 2.0 * std::max(along_x, along_y);
    rep.omega0 = rep.active_value / (rep.active_value + 0.25);
    rep.omega_separable = disentangling_weight(s);
  }
  if (curve_samples > 1) {
    rep.curve.reserve(curve_samples);
    for (int i = 0; i < curve_samples; ++i) {
      const double omega = i == curve_samples - 1 ? 1.0 : double(i) / (curve_samples - 1);
      rep.curve.emplace_back(omega, concurrence_x(blend_with_maximally_mixed(s, omega)));
    }
  }
  return rep;
}

MeasureReport full_report(const DensityMatrix& rho, const Tolerances& tol) {
  const Matrix4cd& m = rho.matrix();
  MeasureReport rep;
  rep.concurrence = concurrence(rho);
  rep.ppt = ppt_verdict(rho, tol.psd_floor);
  rep.rank = numerical_rank(m, tol.rank);
  rep.purity = purity(m);
  rep.pure = std::abs(rep.purity - 1.0) <= tol.rank;
  rep.subsystem_entropy1 = von_neumann_entropy(partial_trace(m, Qubit::First, tol.trace));
  rep.subsystem_entropy2 = von_neumann_entropy(partial_trace(m, Qubit::Second, tol.trace));
  rep.delta = compute_delta(rho, tol.geometry).delta;

  // Margins for the cross-checks; near the separability boundary the two
  // sides legitimately straddle their tolerances.
  constexpr double kAgree = 1e-8;

  bool is_x = true;
  XState s;
  try {
    s = x_state_from_density(rho, tol);
  } catch (const NotXShaped&) {
    is_x = false;
  }

  if (is_x) {
    XGeometry g;
    g.point = to_point(s, tol.geometry);
    g.region = classify(s, tol.geometry);
    g.L = l_measure(g.point.p, g.point.e);
    g.closest = closest_separable_point(g.point.p, g.point.e);
    g.l_max = l_max(g.point.e);
    g.robustness = robustness(s);

    if (std::abs(g.L - rep.concurrence) > kAgree)
      throw ConsistencyError("L = " + fmt(g.L) + " disagrees with concurrence " + fmt(rep.concurrence));
    if (rep.ppt.entangled != (g.L > tol.geometry) &&
        (g.L > kAgree || rep.ppt.min_eigenvalue < -kAgree))
      throw ConsistencyError("PPT verdict disagrees with L = " + fmt(g.L) + " (min eigenvalue " +
                             fmt(rep.ppt.min_eigenvalue) + ")");
    rep.eof = entanglement_of_formation(std::min(g.L, 1.0), tol.geometry);
    rep.x = g;
  } else {
    rep.eof = entanglement_of_formation(std::min(rep.concurrence, 1.0), tol.geometry);
    if (rep.ppt.entangled != (rep.concurrence > tol.geometry) &&
        (rep.concurrence > kAgree || rep.ppt.min_eigenvalue < -kAgree))
      throw ConsistencyError("PPT verdict disagrees with concurrence " + fmt(rep.concurrence));
  }
  if ((rep.eof > 0) != (rep.L() > 0))
    throw ConsistencyError("entanglement of formation and concurrence disagree on zero");
  return rep;
}

}  // namespace xgeom
