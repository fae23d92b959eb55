#pragma once

// The triangle S = {x, y >= 0, x + y <= 1/2} of coherence amplitudes,
// x = |r14|, y = |r23|, with the extreme points x0 = sqrt(r11 r44) and
// y0 = sqrt(r22 r33).

#include <optional>
#include <string_view>

#include "xgeom/state.hpp"

namespace xgeom {

struct SPoint {
  double x = 0;
  double y = 0;
};

struct ExtremePoints {
  double x0 = 0;
  double y0 = 0;
};

enum class Region { M0, M1, M2 };

enum class Subregion { Interior, SeparableSquare, VertexQ0, RightEdge, TopEdge, LegMx, LegMy };

struct RegionClass {
  Region region = Region::M0;
  Subregion subregion = Subregion::SeparableSquare;
  // Empty when the rank is not fixed by (p, e) alone: an extreme point is
  // zero and the corresponding populations are unknown.
  std::optional<int> predicted_rank;
};

std::string_view to_string(Region r) noexcept;
std::string_view to_string(Subregion s) noexcept;

struct TrianglePoint {
  SPoint p;
  ExtremePoints e;
};

ExtremePoints extreme_points(const XState& s);

/// Point of S for an X-state. Throws DomainError if x + y > 1/2 + tol.
TrianglePoint to_point(const XState& s, double tol = 1e-10);

/// Region and subregion of p for the given extremes. Requires
/// x <= x0 + tol and y <= y0 + tol.
RegionClass classify(SPoint p, ExtremePoints e, double tol = 1e-10);

/// Same as above, with the populations available to pin down the rank on
/// the legs and at zero extreme points.
RegionClass classify(const XState& s, double tol = 1e-10);

/// L = 2 max{0, x - y0, y - x0}.
double l_measure(SPoint p, ExtremePoints e);

/// Point of the separable square realizing the Chebyshev distance L / 2;
/// p itself when L = 0.
SPoint closest_separable_point(SPoint p, ExtremePoints e);

double chebyshev_distance(SPoint a, SPoint b);

/// 2 |x0 - y0|.
double l_max(ExtremePoints e);

/// Maximum of sqrt(r11 r44) + sqrt(r22 r33) over the probability simplex.
constexpr double max_extreme_sum() { return 0.5; }

}  // namespace xgeom
