#pragma once

/// @file hermite.hpp
/// @brief Scaled Hermite polynomials, the Gaussian vortex basis, projection
///        coefficients, and the closed-form velocity of the Gaussian core.
///
/// Basis conventions, with λ the core width:
///   φ_00(x;λ) = e^{−|x|²/λ²} / (πλ²)                    (unit total mass)
///   H_n(z;λ)  = H_n(z/λ) / λⁿ                            (scaled Hermite)
///   φ_k(x;λ)  = ∂^k φ_00 = (−1)^{|k|} H_{k₁}(x₁;λ) H_{k₂}(x₂;λ) φ_00(x;λ)
/// The dual projection P_k(ω) = c_k ∫ H_{k₁}H_{k₂} ω dx with
///   c_k = (−1)^{|k|} λ^{2|k|} / (2^{|k|} k₁! k₂!)
/// satisfies P_k(φ_m) = δ_{km}.

#include <cmath>
#include <numbers>

#include <Eigen/Core>

#include "vmom/errors.hpp"
#include "vmom/jet.hpp"

namespace vmom {

/// Shared core parameters: initial width λ0 and kinematic viscosity ν.
struct CoreParams {
  double lambda0 = 1.0;
  double nu = 0.0;
};

/// Viscous core spread λ(t) = √(λ0² + 4νt).
inline double lambda_of_t(const CoreParams& core, double t) {
  const double s = core.lambda0 * core.lambda0 + 4.0 * core.nu * t;
  if (!(s > 0.0))
    throw numeric_error("core width: lambda0^2 + 4*nu*t must stay positive");
  return std::sqrt(s);
}

/// Scaled Hermite polynomial H_n(z;λ) = H_n(z/λ)/λⁿ via the recurrence
/// H_{n+1}(z;λ) = (2z H_n(z;λ) − 2n H_{n−1}(z;λ)) / λ².
template <typename Scalar = double>
Scalar hermite_scaled(int n, Scalar z, Scalar lambda) {
  const Scalar inv_l2 = Scalar(1) / (lambda * lambda);
  Scalar hm = Scalar(1);  // H_0
  if (n == 0) return hm;
  Scalar h = Scalar(2) * z * inv_l2;  // H_1
  for (int m = 1; m < n; ++m) {
    const Scalar hp = (Scalar(2) * z * h - Scalar(2 * m) * hm) * inv_l2;
    hm = h;
    h = hp;
  }
  return h;
}

/// The normalized Gaussian core φ_00(x;λ) = e^{−|x|²/λ²}/(πλ²).
template <typename Scalar = double>
Scalar gaussian_phi00(Scalar x1, Scalar x2, Scalar lambda) {
  const Scalar l2 = lambda * lambda;
  return std::exp(-(x1 * x1 + x2 * x2) / l2) / (std::numbers::pi_v<Scalar> * l2);
}

/// Basis element φ_k(x;λ) = (−1)^{|k|} H_{k₁}(x₁;λ) H_{k₂}(x₂;λ) φ_00(x;λ).
template <typename Scalar = double>
Scalar hermite_basis(int k1, int k2, Scalar x1, Scalar x2, Scalar lambda) {
  const Scalar sign = ((k1 + k2) % 2 == 0) ? Scalar(1) : Scalar(-1);
  return sign * hermite_scaled(k1, x1, lambda) * hermite_scaled(k2, x2, lambda) *
         gaussian_phi00(x1, x2, lambda);
}

/// Dual-projection coefficient c_k = (−1)^{|k|} λ^{2|k|} / (2^{|k|} k₁! k₂!).
inline double projection_coefficient(int k1, int k2, double lambda) {
  const int K = k1 + k2;
  double fact = 1.0;
  for (int i = 2; i <= k1; ++i) fact *= i;
  for (int i = 2; i <= k2; ++i) fact *= i;
  const double sign = (K % 2 == 0) ? 1.0 : -1.0;
  return sign * std::pow(lambda * lambda, K) / (std::pow(2.0, K) * fact);
}

/// Velocity of the unit-mass Gaussian core (counterclockwise for positive
/// mass):  V_00(x;λ) = (1/2π)(−x₂, x₁)(1 − e^{−|x|²/λ²})/|x|², with the
/// removable singularity at the center filled by its Taylor series.
template <typename Scalar = double>
Eigen::Matrix<Scalar, 2, 1> velocity_v00(const Eigen::Matrix<Scalar, 2, 1>& x,
                                         Scalar lambda) {
  const Scalar r2 = x.squaredNorm();
  const Scalar l2 = lambda * lambda;
  const Scalar v = r2 / l2;
  Scalar g;
  if (v < Scalar(1e-6)) {
    g = (Scalar(1) -
         v * (Scalar(0.5) - v * (Scalar(1) / Scalar(6) - v / Scalar(24)))) /
        l2;
  } else {
    g = (Scalar(1) - std::exp(-v)) / r2;
  }
  const Scalar pre = g / (Scalar(2) * std::numbers::pi_v<Scalar>);
  return Eigen::Matrix<Scalar, 2, 1>(-pre * x[1], pre * x[0]);
}

/// Velocity field of the basis element φ_k at x: since the streamfunction
/// solve commutes with derivatives, V_k(x) = ∂^k V_00(x).  Evaluated by
/// composing the closed form on 2-variable jets about x and extracting the
/// (k₁,k₂) partial.
inline Eigen::Vector2d velocity_of_basis(int k1, int k2, const Eigen::Vector2d& x,
                                         double lambda) {
  if (k1 == 0 && k2 == 0) return velocity_v00<double>(x, lambda);
  const int order = k1 + k2;
  const TaylorJet<double> w1 = jet_variable<double>(2, order, 0, x[0]);
  const TaylorJet<double> w2 = jet_variable<double>(2, order, 1, x[1]);
  const TaylorJet<double> g =
      jet_entire_g(w1 * w1 + w2 * w2, 1.0 / (lambda * lambda));
  const double pre = 1.0 / (2.0 * std::numbers::pi);
  const TaylorJet<double> v1 = jet_scale(jet_mul(w2, g), -pre);
  const TaylorJet<double> v2 = jet_scale(jet_mul(w1, g), pre);
  const int alpha[2] = {k1, k2};
  return {extract_partial(v1, alpha), extract_partial(v2, alpha)};
}

}  // namespace vmom
