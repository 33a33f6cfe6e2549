#pragma once

/// @file reference.hpp
/// @brief Independent reference models used to validate the moment system:
///        the classical point-vortex system, mutually-advected Gaussian
///        cores, and two closed-form co-rotation frequency predictions for
///        an equal pair of spreading vortices.

#include <cmath>
#include <numbers>
#include <vector>

#include <Eigen/Core>

#include "vmom/errors.hpp"

namespace vmom {

/// One classical RK4 step of ẏ = f(t, y) for any Eigen-like state.
template <typename F, typename Y>
Y rk4_step(F&& f, double t, const Y& y, double h) {
  const Y k1 = f(t, y);
  const Y k2 = f(t + 0.5 * h, Y(y + (0.5 * h) * k1));
  const Y k3 = f(t + 0.5 * h, Y(y + (0.5 * h) * k2));
  const Y k4 = f(t + h, Y(y + h * k3));
  return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

/// Point-vortex velocities: ẋ^j = (1/2π) Σ_{ℓ≠j} m_ℓ (x^j−x^ℓ)^⊥ / |x^j−x^ℓ|²
/// with z^⊥ = (−z₂, z₁).  Positions packed [x¹₁, x¹₂, x²₁, …].
inline Eigen::VectorXd point_vortex_rhs(const Eigen::VectorXd& pos,
                                        const std::vector<double>& masses) {
  const int J = static_cast<int>(masses.size());
  Eigen::VectorXd v = Eigen::VectorXd::Zero(2 * J);
  for (int j = 0; j < J; ++j) {
    for (int l = 0; l < J; ++l) {
      if (l == j) continue;
      const Eigen::Vector2d d = pos.segment<2>(2 * j) - pos.segment<2>(2 * l);
      const double r2 = d.squaredNorm();
      if (r2 == 0.0) throw numeric_error("point vortices collided");
      const double pre = masses[l] / (2.0 * std::numbers::pi * r2);
      v[2 * j] += -pre * d[1];
      v[2 * j + 1] += pre * d[0];
    }
  }
  return v;
}

/// Gaussian-core velocities: like the point-vortex law but smoothed by the
/// pair of core widths,  factor (1 − e^{−|d|²/(λ_j²+λ_ℓ²)}).
inline Eigen::VectorXd gaussian_core_rhs(const Eigen::VectorXd& pos,
                                         const std::vector<double>& masses,
                                         const std::vector<double>& lambdas) {
  const int J = static_cast<int>(masses.size());
  Eigen::VectorXd v = Eigen::VectorXd::Zero(2 * J);
  for (int j = 0; j < J; ++j) {
    for (int l = 0; l < J; ++l) {
      if (l == j) continue;
      const Eigen::Vector2d d = pos.segment<2>(2 * j) - pos.segment<2>(2 * l);
      const double r2 = d.squaredNorm();
      if (r2 == 0.0) throw numeric_error("vortex centers collided");
      const double lsum = lambdas[j] * lambdas[j] + lambdas[l] * lambdas[l];
      const double pre = masses[l] * (1.0 - std::exp(-r2 / lsum)) /
                         (2.0 * std::numbers::pi * r2);
      v[2 * j] += -pre * d[1];
      v[2 * j + 1] += pre * d[0];
    }
  }
  return v;
}

/// Co-rotation frequency of an equal pair (masses M, orbit radius r, width λ)
/// from the smoothed mutual-induction law:
///   Ω(t) = M/(4πr²) (1 − e^{−2r²/λ(t)²}).
inline double rotation_frequency_pair(double mass, double r, double lambda) {
  return mass / (4.0 * std::numbers::pi * r * r) *
         (1.0 - std::exp(-2.0 * r * r / (lambda * lambda)));
}

/// Older prediction for the same quantity, kept for comparison plots:
///   Ω(t) = (M/8π) [ ln(1 + 4νt/r²)/(2νt) − (λ0²/r⁴)/(1 + 4νt/r²) ],
/// with the first bracket continued by its series 2/r² − 4νt/r⁴ as νt → 0.
inline double rotation_frequency_pair_legacy(double mass, double r, double lambda0,
                                             double nu, double t) {
  const double r2 = r * r;
  const double x = 4.0 * nu * t / r2;
  double term1;
  if (nu * t / r2 < 1e-8) {
    term1 = 2.0 / r2 - 4.0 * nu * t / (r2 * r2);
  } else {
    term1 = std::log1p(x) / (2.0 * nu * t);
  }
  const double term2 = (lambda0 * lambda0 / (r2 * r2)) / (1.0 + x);
  return mass / (8.0 * std::numbers::pi) * (term1 - term2);
}

}  // namespace vmom
