#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "xgeom/geometry.hpp"
#include "xgeom/state.hpp"

namespace xgeom {

/// Closed-form concurrence of an X-state,
/// 2 max{0, |r14| - sqrt(r22 r33), |r23| - sqrt(r11 r44)}.
double concurrence_x(const XState& s);

/// sqrt of the eigenvalues of rho (sy x sy) rho* (sy x sy), descending.
/// Computed as the spectrum of the Hermitian sqrt(rho) rho~ sqrt(rho).
Vector4d spin_flip_roots(const DensityMatrix& rho);

/// Wootters concurrence for an arbitrary two-qubit state.
double concurrence(const DensityMatrix& rho);

struct PptVerdict {
  bool entangled = false;
  double min_eigenvalue = 0;  // of the partial transpose
};

PptVerdict ppt_verdict(const DensityMatrix& rho, double tol = 1e-10);

/// |r23| > sqrt(r11 r44) or |r14| > sqrt(r22 r33), margins beyond tol.
bool ppt_inequalities_hold(const XState& s, double tol = 1e-10);

/// h((1 + sqrt(1 - C^2)) / 2) in bits; 0 for C = 0.
double entanglement_of_formation(double concurrence, double tol = 1e-10);

/// (1 - omega) s + omega I/4, omega in [0, 1].
XState blend_with_maximally_mixed(const XState& s, double omega);

struct RobustnessReport {
  // L_j / (L_j + 1/4) with L_j = 2 (active subtraction), the value reported
  // for the optimized families (4/5 for a Bell state).
  double omega0 = 0;
  int active_term = 0;        // 1: x - y0, 2: y - x0, 0: separable
  double active_value = 0;    // L_j entering omega0
  // Smallest omega at which L(blend(s, omega)) vanishes, found by bisection.
  double omega_separable = 0;
  std::vector<std::pair<double, double>> curve;  // (omega, L) samples
};

RobustnessReport robustness(const XState& s, int curve_samples = 0);

/// Root of L(blend(s, omega)) = 0 on [0, 1] by bisection to `resolution`.
double disentangling_weight(const XState& s, double resolution = 1e-13);

struct XGeometry {
  TrianglePoint point;
  RegionClass region;
  SPoint closest;
  double L = 0;
  double l_max = 0;
  RobustnessReport robustness;
};

struct MeasureReport {
  std::optional<XGeometry> x;  // present for X-shaped input
  double concurrence = 0;      // general (spin-flip) route
  double eof = 0;              // bits
  PptVerdict ppt;
  int rank = 0;
  double purity = 0;
  double subsystem_entropy1 = 0;  // bits
  double subsystem_entropy2 = 0;
  double delta = 0;
  bool pure = false;

  double L() const { return x ? x->L : concurrence; }
};

/// All measures of one state, with the L = C, EoF/C and PPT/L cross-checks
/// enforced (ConsistencyError on disagreement).
MeasureReport full_report(const DensityMatrix& rho, const Tolerances& tol = {});

}  // namespace xgeom
