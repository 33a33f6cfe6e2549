#pragma once

/// @file spectral.hpp
/// @brief Pseudo-spectral solver for the 2-D vorticity equation on a periodic
///        box — the full-PDE oracle the moment model is validated against.
///
///   ∂_t ω + u·∇ω = ν ∆ω,   u from ω via the streamfunction:
///   û₁ = +i k₂ ω̂/|k|²,  û₂ = −i k₁ ω̂/|k|²  (zero mean flow).
///
/// Fourier collocation with 2/3-rule dealiasing; time stepping by the
/// integrating-factor RK4, which treats the viscous term exactly.  The box
/// must be large enough that the field is negligible at the boundary — this
/// is checked, as is a CFL bound on the advection.

#include <functional>

#include <Eigen/Core>

#include "vmom/fields.hpp"

namespace vmom {

struct SpectralOptions {
  int n = 256;            ///< grid points per side
  double box_size = 32.0; ///< periodic box side L
  Eigen::Vector2d box_center = Eigen::Vector2d::Zero();
  double nu = 0.0;
  double dt = 0.0;
  double t_final = 0.0;
  double cfl_limit = 0.9;  ///< abort if dt·max|u|/h exceeds this
  int check_every = 8;     ///< steps between CFL / finiteness checks
};

class SpectralSolver {
 public:
  explicit SpectralSolver(const SpectralOptions& opts);

  /// Set ω(x, t=0) by sampling a callable on the solver grid.
  void set_initial(const std::function<double(double, double)>& omega0);

  /// Advance to t_final; `on_sample`, if set, is called every `sample_every`
  /// steps (and at the start and end) with the clock and physical vorticity.
  void run(const std::function<void(double, const GridField&)>& on_sample = {},
           int sample_every = 0);

  /// Current physical vorticity.
  GridField omega() const;

  /// Current physical velocity components.
  void velocity(GridField& u1, GridField& u2) const;

  double time() const { return t_; }
  const SpectralOptions& options() const { return opts_; }

 private:
  Eigen::MatrixXcd nonlinear(const Eigen::MatrixXcd& what, double* umax_out) const;
  GridField to_grid(const Eigen::MatrixXcd& spectral) const;

  SpectralOptions opts_;
  double t_ = 0.0;
  Eigen::VectorXd kx_, ky_;      ///< signed wavenumbers per index
  Eigen::ArrayXXd dealias_;      ///< 2/3-rule mask (1 keep / 0 drop)
  Eigen::ArrayXXd inv_k2_;       ///< 1/|k|², zero at k = 0
  Eigen::MatrixXcd what_;        ///< ω̂
};

}  // namespace vmom
