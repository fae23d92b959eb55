#pragma once

// Two atoms, each resonantly coupled to its own cavity holding n photons,
// prepared in a Bell state with both fields in |n>. The atom-field pairs
// evolve independently under the single-excitation rotations
//   |+, m>  ->  cos(g t sqrt(m+1)) |+, m> - i sin(g t sqrt(m+1)) |-, m+1>,
// and the fields are traced out to leave the diatomic state rho_2at(t).

#include <functional>
#include <optional>
#include <vector>

#include "xgeom/geometry.hpp"
#include "xgeom/state.hpp"

namespace xgeom {

struct CavityParams {
  double gamma = 1.0;   // coupling, inverse time units
  int photons = 10;     // n per cavity
  int initial_bell = 3;

  /// Throws ParameterError naming the offending field.
  void validate() const;
};

struct TimeGrid {
  double t_start = 0.0;
  double t_end = 20.0;
  double step = 1e-3;

  void validate() const;
  /// Number of points; the last one is t_end when the step divides the span.
  std::size_t size() const;
  double at(std::size_t i) const;
};

/// Diatomic state at time t. Bell 3 uses the closed-form coefficients, the
/// other initial states the explicit pair evolution.
XState rho_2at(const CavityParams& params, double t);

/// rho_2at by evolving both atom-field pairs and tracing out the fields.
Matrix4cd rho_2at_evolved(const CavityParams& params, double t);

/// S(rho_1) in bits.
double subsystem_entropy_at(const CavityParams& params, double t);

struct DynamicsSample {
  double t = 0;
  double L = 0;
  double eof = 0;
  double entropy1 = 0, entropy2 = 0;
  double x0 = 0, y0 = 0, x = 0, y = 0;
  Region region = Region::M0;
};

struct Envelope {
  std::vector<std::pair<double, double>> minima;  // refined (t, S)
  std::vector<double> values;                     // on the trace grid
  // Fewer than two minima: the envelope is flat (one minimum) or the global
  // minimum of S (none).
  bool degenerate = false;
};

struct DynamicsTrace {
  std::vector<DynamicsSample> samples;
  Envelope envelope;
};

DynamicsTrace sweep(const CavityParams& params, const TimeGrid& grid);

/// Envelope through the strict grid minima of entropy1. With `entropy_at`
/// each minimum is refined by golden-section search to 1e-8 in t.
/// Needs at least 3 samples.
Envelope extract_min_envelope(const DynamicsTrace& trace,
                              const std::function<double(double)>& entropy_at = {});

enum class BoundedQuantity { L, Eof };

struct EnvelopeCheck {
  bool holds = true;
  double worst_violation = 0;  // max of quantity - envelope, may be negative
  double at_t = 0;
};

EnvelopeCheck check_envelope_bound(const DynamicsTrace& trace, double tol,
                                   BoundedQuantity quantity = BoundedQuantity::L);

}  // namespace xgeom
