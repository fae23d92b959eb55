#include "xgeom/state.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace xgeom {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_finite(const Matrix4cd& m) {
  if (!m.allFinite()) throw DomainError("matrix has non-finite entries");
}

double safe_sqrt(double v) { return std::sqrt(std::max(v, 0.0)); }

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Polar form of a real signed coherence: returns (|c|, 0 or pi).
std::pair<double, double> signed_to_polar(double c) {
  return {std::abs(c), c < 0 ? std::numbers::pi : 0.0};
}

}  // namespace

DensityMatrix DensityMatrix::validate(const Matrix4cd& m, const Tolerances& tol) {
  require_finite(m);
  const double defect = hermiticity_defect(m);
  if (defect > tol.hermitian) throw InvalidDensity(InvalidDensity::Reason::NotHermitian, defect);
  const double trace_error = std::abs(m.trace() - std::complex<double>(1.0));
  if (trace_error > tol.trace) throw InvalidDensity(InvalidDensity::Reason::TraceNotOne, trace_error);
  const double smallest = jacobi_eigensystem(m).values[3];
  if (smallest < -tol.psd_floor) throw InvalidDensity(InvalidDensity::Reason::NotPSD, smallest);
  return DensityMatrix(m);
}

double wrap_phase(double angle) {
  double r = std::fmod(angle, kTwoPi);
  if (r < 0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

std::complex<double> unit_phase(double angle) {
  const double a = wrap_phase(angle);
  if (a == 0.0) return {1.0, 0.0};
  if (a == std::numbers::pi) return {-1.0, 0.0};
  if (a == 0.5 * std::numbers::pi) return {0.0, 1.0};
  if (a == 1.5 * std::numbers::pi) return {0.0, -1.0};
  return std::polar(1.0, a);
}

std::complex<double> XState::r14() const { return x * unit_phase(theta); }
std::complex<double> XState::r23() const { return y * unit_phase(phi); }

Matrix4cd XState::matrix() const {
  Matrix4cd m = Matrix4cd::Zero();
  m(0, 0) = r11;
  m(1, 1) = r22;
  m(2, 2) = r33;
  m(3, 3) = r44;
  m(0, 3) = r14();
  m(3, 0) = std::conj(m(0, 3));
  m(1, 2) = r23();
  m(2, 1) = std::conj(m(1, 2));
  return m;
}

void check_x_state(const XState& s, double tol) {
  const double values[] = {s.r11, s.r22, s.r33, s.r44, s.x, s.theta, s.y, s.phi};
  for (double v : values)
    if (!std::isfinite(v)) throw ParameterError("X-state has non-finite parameters");
  const double pops[] = {s.r11, s.r22, s.r33, s.r44};
  double total = 0;
  for (double p : pops) {
    if (p < -tol) throw ParameterError("negative population " + fmt(p));
    total += p;
  }
  if (std::abs(total - 1.0) > tol) throw ParameterError("populations sum to " + fmt(total));
  if (s.x < 0 || s.y < 0) throw ParameterError("coherence amplitudes must be non-negative");
  const double x0 = safe_sqrt(s.r11 * s.r44);
  const double y0 = safe_sqrt(s.r22 * s.r33);
  if (s.x > x0 + tol) throw ParameterError("|r14| = " + fmt(s.x) + " exceeds sqrt(r11 r44) = " + fmt(x0));
  if (s.y > y0 + tol) throw ParameterError("|r23| = " + fmt(s.y) + " exceeds sqrt(r22 r33) = " + fmt(y0));
}

XState make_x_state(const std::array<double, 4>& populations, double x, double theta, double y,
                    double phi, double tol) {
  XState s{populations[0], populations[1], populations[2], populations[3],
           x,              wrap_phase(theta), y,           wrap_phase(phi)};
  check_x_state(s, tol);
  return s;
}

namespace {

// Eigenpairs of the 2x2 block [[a, c], [conj(c), b]] with |c| = amp.
// Of the two equivalent eigenvector forms (c, L - a) and (L - b, conj(c)),
// the one with the larger norm is used; it avoids cancellation in L - a.
void block_eigenpairs(double a, double b, std::complex<double> c, int i, int j, int slot,
                      Spectrum<double>& out) {
  const double amp = std::abs(c);
  const double half_gap = 0.5 * (a - b);
  const double d = std::hypot(half_gap, amp);
  const double mean = 0.5 * (a + b);
  const double upper = mean + d;
  const double lower = upper > 0 ? (a * b - amp * amp) / upper : mean - d;
  const double values[2] = {upper, lower};
  const double minus_a[2] = {d - half_gap, -d - half_gap};  // L - a
  const double minus_b[2] = {d + half_gap, -d + half_gap};  // L - b

  for (int r = 0; r < 2; ++r) {
    Vector4cd v = Vector4cd::Zero();
    const double norm_a = std::hypot(amp, minus_a[r]);
    const double norm_b = std::hypot(amp, minus_b[r]);
    if (std::max(norm_a, norm_b) == 0.0) {
      // c = 0 and a = b: any basis works.
      v[r == 0 ? i : j] = 1.0;
    } else if (norm_a >= norm_b) {
      v[i] = c / norm_a;
      v[j] = minus_a[r] / norm_a;
    } else {
      v[i] = minus_b[r] / norm_b;
      v[j] = std::conj(c) / norm_b;
    }
    out.values[slot + r] = values[r];
    out.vectors.col(slot + r) = v;
  }
}

}  // namespace

Spectrum<double> x_state_eigensystem(const XState& s) {
  Spectrum<double> out;
  out.vectors.setZero();
  block_eigenpairs(s.r11, s.r44, s.r14(), 0, 3, 0, out);
  block_eigenpairs(s.r22, s.r33, s.r23(), 1, 2, 2, out);
  return out;
}

DeltaReport compute_delta(const DensityMatrix& rho, double tol) {
  const Matrix4cd& m = rho.matrix();
  DeltaReport rep;
  rep.delta = (m(0, 0).real() - m(3, 3).real()) * (m(1, 1).real() - m(2, 2).real()) +
              std::norm(m(0, 2) + m(1, 3)) - std::norm(m(0, 1) + m(2, 3));

  auto smallest = [](const Matrix2cd& r) {
    const double det = (r(0, 0) * r(1, 1) - r(0, 1) * r(1, 0)).real();
    return ProbabilityVector2{0.5 * (1.0 - safe_sqrt(1.0 - 4.0 * det))};
  };
  rep.lambda1 = smallest(partial_trace(m, Qubit::First, 1.0));
  rep.lambda2 = smallest(partial_trace(m, Qubit::Second, 1.0));
  rep.entropy1 = binary_entropy(rep.lambda1.lambda);
  rep.entropy2 = binary_entropy(rep.lambda2.lambda);
  rep.entropies_equal = std::abs(rep.delta) <= tol;
  return rep;
}

std::optional<Vector4cd> factorize_pure(const DensityMatrix& rho, double tol) {
  const Matrix4cd& m = rho.matrix();
  if (std::abs(purity(m) - 1.0) > tol) return std::nullopt;

  const auto sp = jacobi_eigensystem(m);
  Vector4cd alpha = std::sqrt(std::max(sp.values[0], 0.0)) * sp.vectors.col(0);
  for (int k = 0; k < 4; ++k) {
    const double mag = std::abs(alpha[k]);
    if (mag * mag > tol) {
      alpha *= std::conj(alpha[k]) / mag;
      alpha[k] = mag;
      break;
    }
  }
  const double err = (m - alpha * alpha.adjoint()).cwiseAbs().maxCoeff();
  if (err > tol) return std::nullopt;
  return alpha;
}

Vector4cd bell_vector(int k) {
  const double h = std::numbers::sqrt2 / 2.0;
  Vector4cd v = Vector4cd::Zero();
  switch (k) {
    case 1: v << h, 0, 0, h; break;
    case 2: v << h, 0, 0, -h; break;
    case 3: v << 0, h, h, 0; break;
    case 4: v << 0, h, -h, 0; break;
    default: throw ParameterError("Bell index must be 1..4, got " + std::to_string(k));
  }
  return v;
}

DensityMatrix make_bell(int k) {
  const Vector4cd v = bell_vector(k);
  Matrix4cd m = v * v.adjoint();
  // 1/sqrt(2)^2 is 0.5000000000000001; store the exact projector entries.
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (m(i, j) != 0.0) m(i, j) = m(i, j).real() > 0 ? 0.5 : -0.5;
  return DensityMatrix::validate(m);
}

XState make_bell_mixture(const std::array<double, 4>& b, double tol) {
  double total = 0;
  for (double w : b) {
    if (!std::isfinite(w) || w < -tol || w > 1.0 + tol)
      throw ParameterError("Bell weight out of [0, 1]: " + fmt(w));
    total += w;
  }
  if (std::abs(total - 1.0) > tol) throw ParameterError("Bell weights sum to " + fmt(total));

  XState s;
  s.r11 = s.r44 = 0.5 * (b[0] + b[1]);
  s.r22 = s.r33 = 0.5 * (b[2] + b[3]);
  std::tie(s.x, s.theta) = signed_to_polar(0.5 * (b[0] - b[1]));
  std::tie(s.y, s.phi) = signed_to_polar(0.5 * (b[2] - b[3]));
  return s;
}

XState make_werner(int k, double q) {
  if (k < 1 || k > 4) throw ParameterError("Werner index must be 1..4, got " + std::to_string(k));
  if (!std::isfinite(q) || q < -1.0 / 3.0 || q > 1.0)
    throw ParameterError("Werner parameter q = " + fmt(q) + " outside [-1/3, 1]");

  XState s;
  const double heavy = 0.25 * (1.0 + q);
  const double light = 0.25 * (1.0 - q);
  if (k <= 2) {
    s.r11 = s.r44 = heavy;
    s.r22 = s.r33 = light;
    std::tie(s.x, s.theta) = signed_to_polar(0.5 * (k == 1 ? q : -q));
  } else {
    s.r11 = s.r44 = light;
    s.r22 = s.r33 = heavy;
    std::tie(s.y, s.phi) = signed_to_polar(0.5 * (k == 3 ? q : -q));
  }
  return s;
}

XState make_generalized_werner(const std::array<double, 4>& q, double s, double tol) {
  if (!std::isfinite(s)) throw ParameterError("s must be finite");
  double total = 0;
  double q_min = q[0];
  for (int k = 0; k < 4; ++k) {
    if (!std::isfinite(q[k])) throw ParameterError("q_k must be finite");
    total += q[k];
    q_min = std::min(q_min, q[k]);
    const std::string name = "q_" + std::to_string(k + 1);
    if (q[k] < 0.25 * (s - 1.0) - tol)
      throw ParameterError("lower bound violated: " + name + " = " + fmt(q[k]) + " < (s - 1)/4");
    if (q[k] > 0.25 * (s + 3.0) + tol)
      throw ParameterError("upper bound violated: " + name + " = " + fmt(q[k]) + " > (s + 3)/4");
  }
  if (std::abs(total - s) > tol)
    throw ParameterError("sum of q_k = " + fmt(total) + " differs from s = " + fmt(s));
  if (s > 1.0 + q_min + tol) throw ParameterError("s = " + fmt(s) + " exceeds 1 + q_min");

  XState out;
  out.r11 = out.r44 = 0.25 * (1.0 + q[0] + q[1] - q[2] - q[3]);
  out.r22 = out.r33 = 0.25 * (1.0 - q[0] - q[1] + q[2] + q[3]);
  std::tie(out.x, out.theta) = signed_to_polar(0.5 * (q[0] - q[1]));
  std::tie(out.y, out.phi) = signed_to_polar(0.5 * (q[2] - q[3]));
  return out;
}

XState x_state_from_density(const DensityMatrix& rho, const Tolerances& tol) {
  const Matrix4cd& m = rho.matrix();
  static constexpr int kOffX[8][2] = {{0, 1}, {0, 2}, {1, 0}, {1, 3}, {2, 0}, {2, 3}, {3, 1}, {3, 2}};
  int worst_row = 0, worst_col = 1;
  double worst = -1.0;
  for (const auto& rc : kOffX) {
    const double mag = std::abs(m(rc[0], rc[1]));
    if (mag > worst) {
      worst = mag;
      worst_row = rc[0];
      worst_col = rc[1];
    }
  }
  if (worst > tol.x_shape) throw NotXShaped(worst_row, worst_col, worst);

  XState s;
  s.r11 = m(0, 0).real();
  s.r22 = m(1, 1).real();
  s.r33 = m(2, 2).real();
  s.r44 = m(3, 3).real();
  s.x = std::abs(m(0, 3));
  s.theta = s.x > 0 ? wrap_phase(std::arg(m(0, 3))) : 0.0;
  s.y = std::abs(m(1, 2));
  s.phi = s.y > 0 ? wrap_phase(std::arg(m(1, 2))) : 0.0;
  return s;
}

}  // namespace xgeom
