#pragma once

#include <array>
#include <optional>

#include "xgeom/linalg.hpp"

namespace xgeom {

/// Tolerances shared by the validators. Defaults are the documented ones.
struct Tolerances {
  double hermitian = 1e-10;
  double trace = 1e-10;
  double psd_floor = 1e-10;  // smallest admissible eigenvalue is -psd_floor
  double rank = 1e-9;
  double x_shape = 1e-10;    // magnitude allowed in the eight non-X entries
  double geometry = 1e-10;   // edge/vertex/region comparisons in S
};

/// A validated two-qubit density operator (Hermitian, unit trace, PSD).
class DensityMatrix {
 public:
  static DensityMatrix validate(const Matrix4cd& m, const Tolerances& tol = {});

  const Matrix4cd& matrix() const noexcept { return m_; }
  std::complex<double> operator()(int k, int j) const { return m_(k, j); }

 private:
  explicit DensityMatrix(const Matrix4cd& m) : m_(m) {}
  Matrix4cd m_;
};

inline DensityMatrix validate_density(const Matrix4cd& m, const Tolerances& tol = {}) {
  return DensityMatrix::validate(m, tol);
}

/// X-shaped state: populations plus the two coherences in polar form,
/// r14 = x e^{i theta}, r23 = y e^{i phi}.
struct XState {
  double r11 = 0, r22 = 0, r33 = 0, r44 = 0;
  double x = 0, theta = 0;
  double y = 0, phi = 0;

  Matrix4cd matrix() const;
  std::complex<double> r14() const;
  std::complex<double> r23() const;
};

/// Throws ParameterError unless populations are a probability vector and
/// x <= sqrt(r11 r44), y <= sqrt(r22 r33) within `tol`.
void check_x_state(const XState& s, double tol = 1e-10);

/// Builds and validates an X-state; phases are wrapped into [0, 2 pi).
XState make_x_state(const std::array<double, 4>& populations, double x, double theta, double y,
                    double phi, double tol = 1e-10);

/// e^{i angle}, exact on multiples of pi/2.
std::complex<double> unit_phase(double angle);
double wrap_phase(double angle);

/// Closed-form spectrum of an X-state: values (L1, L2, L3, L4) in the block
/// order {e1,e4}+, {e1,e4}-, {e2,e3}+, {e2,e3}-, not globally sorted.
Spectrum<double> x_state_eigensystem(const XState& s);

/// (lambda, 1 - lambda) with lambda the smallest eigenvalue of a qubit state.
struct ProbabilityVector2 {
  double lambda = 0;
  double complement() const { return 1.0 - lambda; }
};

struct DeltaReport {
  double delta = 0;
  ProbabilityVector2 lambda1, lambda2;
  double entropy1 = 0, entropy2 = 0;  // bits
  bool entropies_equal = false;       // |delta| <= tol
};

DeltaReport compute_delta(const DensityMatrix& rho, double tol = 1e-10);

/// Amplitudes alpha with r_kj = alpha_k conj(alpha_j), or nullopt for a
/// mixed state. The first amplitude with |alpha_k|^2 > tol is real positive.
std::optional<Vector4cd> factorize_pure(const DensityMatrix& rho, double tol = 2e-10);

Vector4cd bell_vector(int k);
DensityMatrix make_bell(int k);

/// sum_k b_k |beta_k><beta_k|.
XState make_bell_mixture(const std::array<double, 4>& b, double tol = 1e-10);

/// q |beta_k><beta_k| + (1 - q)/4 I, q in [-1/3, 1].
XState make_werner(int k, double q);

/// sum_k q_k |beta_k><beta_k| + (1 - s)/4 I.
XState make_generalized_werner(const std::array<double, 4>& q, double s, double tol = 1e-10);

/// Reads (x, theta, y, phi) off an X-shaped density matrix. Throws NotXShaped
/// naming the largest non-X entry when it exceeds tol.x_shape.
XState x_state_from_density(const DensityMatrix& rho, const Tolerances& tol = {});

}  // namespace xgeom
