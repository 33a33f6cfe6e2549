#pragma once

/// @file fields.hpp
/// @brief Physical-space views of a moment system: vorticity and velocity
///        evaluation, grid sampling, moment projection, and slow independent
///        quadrature oracles used to validate the fast tensor machinery.

#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include <Eigen/Core>

#include "vmom/hermite.hpp"
#include "vmom/quadrature.hpp"
#include "vmom/state.hpp"

namespace vmom {

/// ω(x) = Σ_j Σ_ℓ M^j[ℓ] φ_ℓ(x − x^j; λ_j).
inline double eval_vorticity(const SystemState& state, const Eigen::Vector2d& x) {
  const MultiIndexTable& table = moment_table(state.order);
  double w = 0.0;
  for (std::size_t j = 0; j < state.vortices.size(); ++j) {
    const VortexState& v = state.vortices[j];
    const double lam = state.lambda(static_cast<int>(j));
    const Eigen::Vector2d z = x - v.center;
    for (int l = 0; l < table.size(); ++l) {
      if (v.moments[l] == 0.0) continue;
      const int* e = table.exponents(l);
      w += v.moments[l] * hermite_basis(e[0], e[1], z[0], z[1], lam);
    }
  }
  return w;
}

/// u(x) = Σ_j Σ_m M^j[m] V_m(x − x^j; λ_j).
inline Eigen::Vector2d eval_velocity(const SystemState& state,
                                     const Eigen::Vector2d& x) {
  const MultiIndexTable& table = moment_table(state.order);
  Eigen::Vector2d u = Eigen::Vector2d::Zero();
  for (std::size_t j = 0; j < state.vortices.size(); ++j) {
    const VortexState& v = state.vortices[j];
    const double lam = state.lambda(static_cast<int>(j));
    const Eigen::Vector2d z = x - v.center;
    for (int m = 0; m < table.size(); ++m) {
      if (v.moments[m] == 0.0) continue;
      const int* e = table.exponents(m);
      u += v.moments[m] * velocity_of_basis(e[0], e[1], z, lam);
    }
  }
  return u;
}

/// Moment projection of a scalar field about `center`:
///   P_k(ω) = c_k ∫ H_{k₁}(z₁;λ) H_{k₂}(z₂;λ) ω(center + z) dz,
/// by Gauss–Hermite quadrature whose rule is scaled by `quad_scale` (pick the
/// decay width of ω; for fields near the basis family use λ itself).
inline Eigen::VectorXd project_moments(
    const std::function<double(double, double)>& omega,
    const Eigen::Vector2d& center, double lambda, int order, int n_nodes,
    double quad_scale = 0.0) {
  const MultiIndexTable& table = moment_table(order);
  const double scale = quad_scale > 0.0 ? quad_scale : lambda;
  Eigen::VectorXd M(table.size());
  for (int k = 0; k < table.size(); ++k) {
    const int* e = table.exponents(k);
    const double integral = integrate_plane(
        [&](double z1, double z2) {
          return hermite_scaled(e[0], z1, lambda) * hermite_scaled(e[1], z2, lambda) *
                 omega(center[0] + z1, center[1] + z2);
        },
        scale, n_nodes);
    M[k] = projection_coefficient(e[0], e[1], lambda) * integral;
  }
  return M;
}

/// Projection plus a node-doubling convergence check.
struct ProjectionResult {
  Eigen::VectorXd moments;  ///< values at the doubled node count
  bool converged = true;    ///< false if doubling still moved some moment
  double max_change = 0.0;  ///< largest |Δ| between the two node counts
};

/// Runs project_moments at `n_nodes` and `2·n_nodes` and reports the largest
/// shift; `converged` is false when that shift exceeds `tol`.
inline ProjectionResult project_moments_checked(
    const std::function<double(double, double)>& omega,
    const Eigen::Vector2d& center, double lambda, int order, int n_nodes,
    double quad_scale = 0.0, double tol = 1e-8) {
  const Eigen::VectorXd coarse =
      project_moments(omega, center, lambda, order, n_nodes, quad_scale);
  ProjectionResult r;
  r.moments =
      project_moments(omega, center, lambda, order, 2 * n_nodes, quad_scale);
  r.max_change = (r.moments - coarse).cwiseAbs().maxCoeff();
  r.converged = r.max_change <= tol;
  return r;
}

/// Uniform square grid of n×n cell centers covering [c−L/2, c+L/2]².
struct GridField {
  int n = 0;
  double h = 0.0;                                ///< cell width
  Eigen::Vector2d origin = Eigen::Vector2d::Zero();  ///< lower-left cell center
  Eigen::ArrayXXd values;                        ///< values(i,j) at x=origin+(i,j)h

  double x1(int i) const { return origin[0] + i * h; }
  double x2(int j) const { return origin[1] + j * h; }
};

inline GridField make_grid(const Eigen::Vector2d& center, double side, int n) {
  GridField g;
  g.n = n;
  g.h = side / n;
  g.origin = center - 0.5 * (side - g.h) * Eigen::Vector2d::Ones();
  g.values = Eigen::ArrayXXd::Zero(n, n);
  return g;
}

template <typename F>
GridField sample_grid(const Eigen::Vector2d& center, double side, int n, F&& f) {
  GridField g = make_grid(center, side, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g.values(i, j) = f(g.x1(i), g.x2(j));
  return g;
}

/// Midpoint-rule integral Σ f h² — spectrally accurate for smooth fields that
/// decay inside the box.
inline double grid_integral(const GridField& g) {
  return g.values.sum() * g.h * g.h;
}

/// Moment projection of a gridded field about `center` (midpoint rule):
///   P_k = c_k Σ_cells H_{k₁}H_{k₂}(x−center) ω(x) h².
inline Eigen::VectorXd project_moments_grid(const GridField& g,
                                            const Eigen::Vector2d& center,
                                            double lambda, int order) {
  const MultiIndexTable& table = moment_table(order);
  Eigen::VectorXd M = Eigen::VectorXd::Zero(table.size());
  for (int k = 0; k < table.size(); ++k) {
    const int* e = table.exponents(k);
    double acc = 0.0;
    for (int i = 0; i < g.n; ++i) {
      const double h1 = hermite_scaled(e[0], g.x1(i) - center[0], lambda);
      for (int j = 0; j < g.n; ++j) {
        acc += h1 * hermite_scaled(e[1], g.x2(j) - center[1], lambda) * g.values(i, j);
      }
    }
    M[k] = projection_coefficient(e[0], e[1], lambda) * acc * g.h * g.h;
  }
  return M;
}

/// Mass and centroid of a gridded field (for recentering before projection).
inline void grid_mass_centroid(const GridField& g, double& mass,
                               Eigen::Vector2d& centroid) {
  mass = 0.0;
  centroid.setZero();
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j) {
      const double w = g.values(i, j);
      mass += w;
      centroid += w * Eigen::Vector2d(g.x1(i), g.x2(j));
    }
  mass *= g.h * g.h;
  centroid *= g.h * g.h;
  if (mass != 0.0) centroid /= mass;
}

/// Direct Biot–Savart velocity of a smooth compact field by midpoint rule,
///   u(x) = (1/2π) ∫ (x−y)^⊥ / |x−y|² ω(y) dy,
/// with the cell containing the singularity replaced by its local expansion
/// −R² (∇ω(x))^⊥ / 4, R = h/√π (equal-area disk); ∇ω by central differences.
/// The grid is centered on x (n forced odd) so the singular cell is exactly
/// the one whose center is x; `side` must cover the support of ω around x.
template <typename F>
Eigen::Vector2d biot_savart_quadrature(F&& omega, const Eigen::Vector2d& x,
                                       double side, int n) {
  n |= 1;
  const GridField g = sample_grid(x, side, n, omega);
  Eigen::Vector2d u = Eigen::Vector2d::Zero();
  const double r_cut2 = 0.25 * g.h * g.h;  // inside: the singular cell
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j) {
      const Eigen::Vector2d d(x[0] - g.x1(i), x[1] - g.x2(j));
      const double r2 = d.squaredNorm();
      if (r2 <= r_cut2) continue;
      u += (g.values(i, j) / r2) * Eigen::Vector2d(-d[1], d[0]);
    }
  u *= g.h * g.h / (2.0 * std::numbers::pi);
  const double fd = 1e-5;
  const Eigen::Vector2d grad(
      (omega(x[0] + fd, x[1]) - omega(x[0] - fd, x[1])) / (2 * fd),
      (omega(x[0], x[1] + fd) - omega(x[0], x[1] - fd)) / (2 * fd));
  const double R2 = g.h * g.h / std::numbers::pi;
  u += -0.25 * R2 * Eigen::Vector2d(-grad[1], grad[0]);
  return u;
}

/// Independent quadrature oracle for the interaction tensor:
///   Γ[k;ℓ;m] = ∫ H_{k₁}H_{k₂}(z;λ) · V_m(z−s;λ′) · ∇φ_ℓ(z;λ) dz
/// with ∇φ_ℓ = (φ_{ℓ+e₁}, φ_{ℓ+e₂}).  Matches the jet-built tensors entry by
/// entry; used to pin them against an implementation-independent path.
inline double gamma_by_quadrature(int k1, int k2, int l1, int l2, int m1, int m2,
                                  const Eigen::Vector2d& s, double lambda,
                                  double lambda_src, int n_nodes) {
  return integrate_plane(
      [&](double z1, double z2) {
        const Eigen::Vector2d vm =
            velocity_of_basis(m1, m2, Eigen::Vector2d(z1 - s[0], z2 - s[1]), lambda_src);
        const double gx = hermite_basis(l1 + 1, l2, z1, z2, lambda);
        const double gy = hermite_basis(l1, l2 + 1, z1, z2, lambda);
        return hermite_scaled(k1, z1, lambda) * hermite_scaled(k2, z2, lambda) *
               (vm[0] * gx + vm[1] * gy);
      },
      lambda, n_nodes);
}

/// Quadrature oracle for the center-velocity tensor via the exact relation
/// Ξ_i[ℓ;m] = (−λ²/2) Γ[e_i;ℓ;m].
inline Eigen::Vector2d xi_by_quadrature(int l1, int l2, int m1, int m2,
                                        const Eigen::Vector2d& s, double lambda,
                                        double lambda_src, int n_nodes) {
  const double pre = -0.5 * lambda * lambda;
  return {pre * gamma_by_quadrature(1, 0, l1, l2, m1, m2, s, lambda, lambda_src, n_nodes),
          pre * gamma_by_quadrature(0, 1, l1, l2, m1, m2, s, lambda, lambda_src, n_nodes)};
}

}  // namespace vmom
