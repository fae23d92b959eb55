#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "xgeom/geometry.hpp"
#include "xgeom/state.hpp"

namespace xgeom::testing {

// Uniform on the probability simplex (sorted-uniform spacings).
inline std::array<double, 4> simplex_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::array<double, 5> cuts{0.0, u(rng), u(rng), u(rng), 1.0};
  std::sort(cuts.begin(), cuts.end());
  return {cuts[1] - cuts[0], cuts[2] - cuts[1], cuts[3] - cuts[2], cuts[4] - cuts[3]};
}

// Populations uniform on the simplex, x in [0, x0], y in [0, y0], phases uniform.
inline XState random_x_state(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto p = simplex_point(rng);
  XState s{p[0], p[1], p[2], p[3]};
  s.x = u(rng) * std::sqrt(p[0] * p[3]);
  s.y = u(rng) * std::sqrt(p[1] * p[2]);
  s.theta = 2.0 * std::numbers::pi * u(rng);
  s.phi = 2.0 * std::numbers::pi * u(rng);
  return s;
}

inline Vector4cd random_unit_vector(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Vector4cd v;
  for (int k = 0; k < 4; ++k) v[k] = {g(rng), g(rng)};
  return v / v.norm();
}

inline Matrix4cd random_pure(std::mt19937_64& rng) {
  const Vector4cd v = random_unit_vector(rng);
  return v * v.adjoint();
}

// Mixture of `rank` random pure states with weights bounded away from zero.
inline Matrix4cd random_mixture(std::mt19937_64& rng, int rank) {
  std::uniform_real_distribution<double> u(0.1, 1.0);
  Matrix4cd m = Matrix4cd::Zero();
  double total = 0;
  for (int i = 0; i < rank; ++i) {
    const double w = u(rng);
    m += w * random_pure(rng);
    total += w;
  }
  m /= total;
  return 0.5 * (m + m.adjoint());
}

// (A + A^dagger) / 2 with Gaussian entries.
inline Matrix4cd random_hermitian(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Matrix4cd a;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) a(i, j) = {g(rng), g(rng)};
  return 0.5 * (a + a.adjoint());
}

// Random X-state in the requested region, with (x, y) placed on the
// requested part of the entanglement rectangle or separable square.
inline XState random_in_region(std::mt19937_64& rng, Region region, Subregion sub) {
  std::uniform_real_distribution<double> u(0.05, 0.95);
  XState s;
  for (;;) {
    const auto p = simplex_point(rng);
    s = XState{p[0], p[1], p[2], p[3]};
    if (region == Region::M0) {
      // r11 r44 = r22 r33: pick r11, r44, then r22, r33 as roots of t^2 - rest t + r11 r44.
      const double rest = 1.0 - p[0] - p[3];
      const double disc = rest * rest - 4.0 * p[0] * p[3];
      if (disc < 1e-3) continue;
      s.r22 = 0.5 * (rest + std::sqrt(disc));
      s.r33 = p[0] * p[3] / s.r22;
      s.r11 = p[0];
      s.r44 = 1.0 - s.r11 - s.r22 - s.r33;
      const double x0 = std::sqrt(s.r11 * s.r44), y0 = std::sqrt(s.r22 * s.r33);
      if (std::abs(x0 - y0) > 1e-13 || x0 < 1e-3) continue;
      break;
    }
    const double x0 = std::sqrt(p[0] * p[3]), y0 = std::sqrt(p[1] * p[2]);
    if (std::abs(x0 - y0) < 1e-2 || std::min(x0, y0) < 1e-3) continue;
    if ((region == Region::M1) != (x0 > y0)) {
      std::swap(s.r11, s.r22);
      std::swap(s.r44, s.r33);
    }
    break;
  }
  const auto e = extreme_points(s);
  const bool m2 = region == Region::M2;
  // a: entangling amplitude with extreme ea; b: the other, bounded by eb.
  const double ea = m2 ? e.y0 : e.x0, eb = m2 ? e.x0 : e.y0;
  double a = 0, b = 0;
  switch (sub) {
    case Subregion::Interior: a = eb + u(rng) * (ea - eb); b = u(rng) * eb; break;
    case Subregion::SeparableSquare: {
      const double side = std::min(ea, eb);
      const int edge = int(u(rng) * 4);  // 0: interior, 1: a = side, 2: b = side, 3: corner
      a = edge == 1 || edge == 3 ? side : u(rng) * side;
      b = edge == 2 || edge == 3 ? side : u(rng) * side;
      if (region == Region::M0) {
        s.x = a;
        s.y = b;
        return s;
      }
      break;
    }
    case Subregion::VertexQ0: a = ea; b = eb; break;
    case Subregion::RightEdge:
    case Subregion::TopEdge: {
      // The right edge is x = x0, the top edge y = y0.
      const bool on_x = sub == Subregion::RightEdge;
      const bool saturate_a = on_x != m2;
      a = saturate_a ? ea : eb + u(rng) * (ea - eb);
      b = saturate_a ? u(rng) * eb : eb;
      break;
    }
    case Subregion::LegMx:
    case Subregion::LegMy: a = eb + u(rng) * (ea - eb); b = 0; break;
  }
  s.x = m2 ? b : a;
  s.y = m2 ? a : b;
  s.theta = 2.0 * std::numbers::pi * u(rng);
  s.phi = 2.0 * std::numbers::pi * u(rng);
  return s;
}

struct RankCase {
  const char* label;
  XState state;
  int rank;
};

// Boundary states on the legs with a vanishing extreme point, one per table row.
inline std::vector<RankCase> leg_rank_cases() {
  const double x0 = std::sqrt(0.4 * 0.4);
  const double pure = std::sqrt(0.3 * 0.7);
  return {
      {"Mx r22=0, x<x0", {0.4, 0.0, 0.2, 0.4, 0.2, 0.3, 0, 0}, 3},
      {"Mx r22=0, x=x0", {0.4, 0.0, 0.2, 0.4, x0, 0.3, 0, 0}, 2},
      {"Mx r33=0, x=x0", {0.4, 0.2, 0.0, 0.4, x0, 1.1, 0, 0}, 2},
      {"Mx r22=r33=0, x<x0", {0.5, 0.0, 0.0, 0.5, 0.3, 0, 0, 0}, 2},
      {"Mx r22=r33=0, x=x0", {0.3, 0.0, 0.0, 0.7, pure, 2.0, 0, 0}, 1},
      {"My r11=0, y<y0", {0.0, 0.4, 0.4, 0.2, 0, 0, 0.2, 0.3}, 3},
      {"My r11=0, y=y0", {0.0, 0.4, 0.4, 0.2, 0, 0, x0, 0.3}, 2},
      {"My r44=0, y=y0", {0.2, 0.4, 0.4, 0.0, 0, 0, x0, 4.0}, 2},
      {"My r11=r44=0, y<y0", {0.0, 0.5, 0.5, 0.0, 0, 0, 0.3, 0}, 2},
      {"My r11=r44=0, y=y0", {0.0, 0.3, 0.7, 0.0, 0, 0, pure, 5.0}, 1},
  };
}

}  // namespace xgeom::testing
