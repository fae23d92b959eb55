#include "xgeom/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace xgeom {

std::string_view to_string(Region r) noexcept {
  switch (r) {
    case Region::M0: return "M0";
    case Region::M1: return "M1";
    case Region::M2: return "M2";
  }
  return "?";
}

std::string_view to_string(Subregion s) noexcept {
  switch (s) {
    case Subregion::Interior: return "interior";
    case Subregion::SeparableSquare: return "separable_square";
    case Subregion::VertexQ0: return "vertex_q0";
    case Subregion::RightEdge: return "right_edge";
    case Subregion::TopEdge: return "top_edge";
    case Subregion::LegMx: return "leg_Mx";
    case Subregion::LegMy: return "leg_My";
  }
  return "?";
}

ExtremePoints extreme_points(const XState& s) {
  return {std::sqrt(std::max(s.r11 * s.r44, 0.0)), std::sqrt(std::max(s.r22 * s.r33, 0.0))};
}

TrianglePoint to_point(const XState& s, double tol) {
  const TrianglePoint tp{{s.x, s.y}, extreme_points(s)};
  if (tp.p.x + tp.p.y > max_extreme_sum() + tol)
    throw DomainError("point (" + std::to_string(s.x) + ", " + std::to_string(s.y) +
                      ") lies outside S");
  return tp;
}

namespace {

// Rank of one 2x2 coherence block: 0 when its populations vanish, 1 when the
// amplitude saturates the extreme point, 2 otherwise.
std::optional<int> block_rank(double amp, double extreme, std::optional<double> block_trace, double tol) {
  if (block_trace) {
    if (*block_trace <= tol) return 0;
    return extreme - amp <= tol ? 1 : 2;
  }
  if (extreme > tol) return extreme - amp <= tol ? 1 : 2;
  return std::nullopt;
}

Subregion rectangle_subregion(double amp, double extreme, double other, double other_extreme,
                              bool horizontal, double tol) {
  // amp is the coordinate that carries the entanglement, other the one bounded by the square.
  if (other <= tol) return horizontal ? Subregion::LegMx : Subregion::LegMy;
  const bool amp_saturated = extreme - amp <= tol;
  const bool other_saturated = other_extreme - other <= tol;
  if (amp_saturated && other_saturated) return Subregion::VertexQ0;
  if (horizontal) {
    if (amp_saturated) return Subregion::RightEdge;
    if (other_saturated) return Subregion::TopEdge;
  } else {
    if (other_saturated) return Subregion::RightEdge;
    if (amp_saturated) return Subregion::TopEdge;
  }
  return Subregion::Interior;
}

RegionClass classify_impl(SPoint p, ExtremePoints e, double tol, std::optional<double> trace14,
                          std::optional<double> trace23) {
  if (p.x < -tol || p.y < -tol || e.x0 < 0 || e.y0 < 0)
    throw DomainError("negative coordinates in S");
  if (p.x > e.x0 + tol || p.y > e.y0 + tol)
    throw DomainError("point (" + std::to_string(p.x) + ", " + std::to_string(p.y) +
                      ") is not admissible for extremes (" + std::to_string(e.x0) + ", " +
                      std::to_string(e.y0) + ")");

  RegionClass rc;
  if (std::abs(e.x0 - e.y0) <= tol) {
    rc.region = Region::M0;
    rc.subregion = Subregion::SeparableSquare;
  } else if (e.y0 < e.x0) {
    rc.region = Region::M1;
    rc.subregion = p.x - e.y0 <= tol ? Subregion::SeparableSquare
                                     : rectangle_subregion(p.x, e.x0, p.y, e.y0, true, tol);
  } else {
    rc.region = Region::M2;
    rc.subregion = p.y - e.x0 <= tol ? Subregion::SeparableSquare
                                     : rectangle_subregion(p.y, e.y0, p.x, e.x0, false, tol);
  }

  const auto r14 = block_rank(p.x, e.x0, trace14, tol);
  const auto r23 = block_rank(p.y, e.y0, trace23, tol);
  if (r14 && r23) rc.predicted_rank = *r14 + *r23;
  return rc;
}

}  // namespace

RegionClass classify(SPoint p, ExtremePoints e, double tol) {
  return classify_impl(p, e, tol, std::nullopt, std::nullopt);
}

RegionClass classify(const XState& s, double tol) {
  const auto tp = to_point(s, tol);
  return classify_impl(tp.p, tp.e, tol, s.r11 + s.r44, s.r22 + s.r33);
}

double l_measure(SPoint p, ExtremePoints e) {
  return 2.0 * std::max({0.0, p.x - e.y0, p.y - e.x0});
}

SPoint closest_separable_point(SPoint p, ExtremePoints e) {
  const double along_x = p.x - e.y0;
  const double along_y = p.y - e.x0;
  if (along_x <= 0 && along_y <= 0) return p;
  // Both subtractions cannot be positive for an admissible point:
  // x > y0 >= y > x0 >= x is impossible.
  if (along_x >= along_y) return {e.y0, p.y};
  return {p.x, e.x0};
}

double chebyshev_distance(SPoint a, SPoint b) {
  return std::max(std::abs(a.x - b.x), std::abs(a.y - b.y));
}

double l_max(ExtremePoints e) { return 2.0 * std::abs(e.x0 - e.y0); }

}  // namespace xgeom
