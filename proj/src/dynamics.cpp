#include "xgeom/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "xgeom/measures.hpp"

namespace xgeom {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// One atom-field pair: index 3 a + f, a = 0 (+) or 1 (-), f = 0, 1, 2 for
// the Fock states n-1, n, n+1.
using PairMatrix = Eigen::Matrix<std::complex<double>, 6, 6>;

constexpr int idx(int atom, int slot) { return 3 * atom + slot; }

PairMatrix pair_propagator(double gamma, int n, double t) {
  PairMatrix u = PairMatrix::Identity();
  const std::complex<double> minus_i(0.0, -1.0);
  auto rotate = [&](int plus, int minus, double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    u(plus, plus) = c;
    u(minus, minus) = c;
    u(minus, plus) = minus_i * s;
    u(plus, minus) = minus_i * s;
  };
  rotate(idx(0, 0), idx(1, 1), gamma * t * std::sqrt(double(n)));
  rotate(idx(0, 1), idx(1, 2), gamma * t * std::sqrt(double(n) + 1.0));
  return u;
}

XState closed_form_bell3(const CavityParams& p, double t) {
  const double a1 = p.gamma * t * std::sqrt(double(p.photons) + 1.0);
  const double a0 = p.gamma * t * std::sqrt(double(p.photons));
  const double c1 = std::pow(std::cos(a1), 2), s1 = std::pow(std::sin(a1), 2);
  const double c0 = std::pow(std::cos(a0), 2), s0 = std::pow(std::sin(a0), 2);
  XState s;
  s.r11 = c1 * s0;
  s.r44 = s1 * c0;
  s.r22 = s.r33 = 0.5 * (c1 * c0 + s1 * s0);
  s.y = 0.5 * c1 * c0;
  return s;
}

double entropy_of(const XState& s) { return binary_entropy(s.r11 + s.r22); }

double golden_minimum(const std::function<double(double)>& f, double a, double b, double resolution) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > resolution) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

void CavityParams::validate() const {
  if (!std::isfinite(gamma) || gamma <= 0) throw ParameterError("gamma must be positive, got " + fmt(gamma));
  if (photons < 0) throw ParameterError("photon number must be non-negative, got " + std::to_string(photons));
  if (initial_bell < 1 || initial_bell > 4)
    throw ParameterError("initial Bell index must be 1..4, got " + std::to_string(initial_bell));
}

void TimeGrid::validate() const {
  if (!std::isfinite(t_start) || !std::isfinite(t_end) || !std::isfinite(step))
    throw ParameterError("time grid must be finite");
  if (t_start < 0) throw ParameterError("t_start must be non-negative, got " + fmt(t_start));
  if (!(t_start < t_end)) throw ParameterError("t_start must be below t_end");
  if (!(step > 0) || step > t_end - t_start)
    throw ParameterError("step must lie in (0, t_end - t_start], got " + fmt(step));
}

std::size_t TimeGrid::size() const {
  const double steps = (t_end - t_start) / step;
  const double nearest = std::round(steps);
  if (std::abs(steps - nearest) <= 1e-9 * std::max(1.0, nearest)) return std::size_t(nearest) + 1;
  return std::size_t(std::floor(steps)) + 1;
}

double TimeGrid::at(std::size_t i) const {
  const double steps = (t_end - t_start) / step;
  if (i + 1 == size() && std::abs(steps - std::round(steps)) <= 1e-9 * std::max(1.0, std::round(steps)))
    return t_end;
  return t_start + double(i) * step;
}

Matrix4cd rho_2at_evolved(const CavityParams& params, double t) {
  params.validate();
  if (!(t >= 0)) throw ParameterError("time must be non-negative, got " + fmt(t));

  const Vector4cd bell = bell_vector(params.initial_bell);
  PairMatrix psi = PairMatrix::Zero();  // psi(i, j): pair 1 in i, pair 2 in j
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) psi(idx(a, 1), idx(b, 1)) = bell[2 * a + b];

  const PairMatrix u = pair_propagator(params.gamma, params.photons, t);
  psi = (u * psi * u.transpose()).eval();

  Matrix4cd rho = Matrix4cd::Zero();
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int ap = 0; ap < 2; ++ap)
        for (int bp = 0; bp < 2; ++bp) {
          std::complex<double> sum = 0;
          for (int f = 0; f < 3; ++f)
            for (int g = 0; g < 3; ++g) sum += psi(idx(a, f), idx(b, g)) * std::conj(psi(idx(ap, f), idx(bp, g)));
          rho(2 * a + b, 2 * ap + bp) = sum;
        }
  return rho;
}

XState rho_2at(const CavityParams& params, double t) {
  params.validate();
  if (!(t >= 0)) throw ParameterError("time must be non-negative, got " + fmt(t));
  if (params.initial_bell == 3) return closed_form_bell3(params, t);
  Matrix4cd m = rho_2at_evolved(params, t);
  m = 0.5 * (m + m.adjoint()).eval();
  return x_state_from_density(DensityMatrix::validate(m));
}

double subsystem_entropy_at(const CavityParams& params, double t) { return entropy_of(rho_2at(params, t)); }

DynamicsTrace sweep(const CavityParams& params, const TimeGrid& grid) {
  params.validate();
  grid.validate();
  DynamicsTrace trace;
  const std::size_t n = grid.size();
  trace.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = grid.at(i);
    const XState s = rho_2at(params, t);
    const auto tp = to_point(s);
    DynamicsSample& out = trace.samples[i];
    out.t = t;
    out.L = l_measure(tp.p, tp.e);
    out.eof = entanglement_of_formation(std::min(out.L, 1.0));
    out.entropy1 = entropy_of(s);
    out.entropy2 = binary_entropy(s.r11 + s.r33);
    out.x0 = tp.e.x0;
    out.y0 = tp.e.y0;
    out.x = s.x;
    out.y = s.y;
    out.region = classify(s).region;
  }
  if (n >= 3) trace.envelope = extract_min_envelope(trace, [&](double t) { return subsystem_entropy_at(params, t); });
  return trace;
}

Envelope extract_min_envelope(const DynamicsTrace& trace, const std::function<double(double)>& entropy_at) {
  const auto& s = trace.samples;
  if (s.size() < 3) throw DomainError("envelope needs at least 3 samples");

  Envelope env;
  for (std::size_t i = 1; i + 1 < s.size(); ++i) {
    if (!(s[i].entropy1 < s[i - 1].entropy1 && s[i].entropy1 < s[i + 1].entropy1)) continue;
    double t = s[i].t, value = s[i].entropy1;
    if (entropy_at) {
      const double refined = golden_minimum(entropy_at, s[i - 1].t, s[i + 1].t, 1e-8);
      const double refined_value = entropy_at(refined);
      if (refined_value <= value) {
        t = refined;
        value = refined_value;
      }
    }
    env.minima.emplace_back(t, value);
  }

  env.values.resize(s.size());
  if (env.minima.empty()) {
    env.degenerate = true;
    double lowest = s.front().entropy1;
    for (const auto& sample : s) lowest = std::min(lowest, sample.entropy1);
    std::fill(env.values.begin(), env.values.end(), lowest);
    return env;
  }
  if (env.minima.size() == 1) {
    env.degenerate = true;
    std::fill(env.values.begin(), env.values.end(), env.minima.front().second);
    return env;
  }

  const auto& m = env.minima;
  auto line = [&](std::size_t k, double t) {
    const auto [t0, v0] = m[k];
    const auto [t1, v1] = m[k + 1];
    return v0 + (v1 - v0) * (t - t0) / (t1 - t0);
  };
  std::size_t k = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double t = s[i].t;
    while (k + 2 < m.size() && t > m[k + 1].first) ++k;
    double v = line(k, t);
    // Outside the first/last minimum the segment is extrapolated.
    if (t < m.front().first || t > m.back().first) v = std::clamp(v, 0.0, 1.0);
    env.values[i] = v;
  }
  return env;
}

EnvelopeCheck check_envelope_bound(const DynamicsTrace& trace, double tol, BoundedQuantity quantity) {
  const auto& s = trace.samples;
  const auto& env = trace.envelope.values;
  if (env.size() != s.size()) throw DomainError("trace has no envelope on its grid");

  EnvelopeCheck check;
  check.worst_violation = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double q = quantity == BoundedQuantity::L ? s[i].L : s[i].eof;
    const double margin = q - env[i];
    if (margin > check.worst_violation) {
      check.worst_violation = margin;
      check.at_t = s[i].t;
    }
  }
  check.holds = check.worst_violation <= tol;
  return check;
}

}  // namespace xgeom
