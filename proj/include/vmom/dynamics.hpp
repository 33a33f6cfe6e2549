#pragma once

/// @file dynamics.hpp
/// @brief The coupled moment/center ODE system and its RK4 integrator.
///
/// Per vortex j with width λ_j(t), mass m_j = M^j[(0,0)], and separation
/// s = x^{j′} − x^j to each partner:
///
///   ẋ^j    = (1/m_j) Σ_{j′} Σ_{ℓm} Ξ^{jj′}[ℓ;m] M^j[ℓ] M^{j′}[m]
///   Ṁ^j[k] = −c_k Σ_{j′} Σ_{ℓm} Γ^{jj′}[k;ℓ;m] M^j[ℓ] M^{j′}[m]
///            + ẋ^j₁ M^j[k−e₁] + ẋ^j₂ M^j[k−e₂]          (center advection)
///
/// with c_k = (−1)^{|k|} λ^{2|k|} / (2^{|k|} k₁!k₂!).  The viscous part is
/// carried exactly by the width law λ(t)² = λ0² + 4νt, so only transport
/// appears on the right-hand side.  Tensors are cached at unit scale and the
/// width scaling is applied separably at contraction time: moments are
/// pre-scaled by λ^{−|ℓ|}, contracted against unit tensors, and the result
/// scaled by the remaining λ power.
///
/// Structural invariants inherited from the kernels: Ṁ[(0,0)] is an exact
/// floating-point zero (masses are bit-constant), and the k = e₁, e₂ rows
/// cancel against center advection, pinning each vortex's first moments.

#include <cmath>
#include <functional>
#include <vector>

#include <Eigen/Core>

#include "vmom/coefficients.hpp"
#include "vmom/diagnostics.hpp"
#include "vmom/errors.hpp"
#include "vmom/state.hpp"

namespace vmom {

struct ModelOptions {
  bool include_center_advection = true;
  double tensor_refresh_tolerance = 0.0;  ///< reduced-separation reuse window
};

/// Packed time derivative of state.pack() (same layout), using and updating
/// the pair-tensor cache.
inline Eigen::VectorXd system_rhs(const SystemState& state, TensorCache& cache,
                                  const ModelOptions& model) {
  const MultiIndexTable& table = moment_table(state.order);
  const int S = table.size();
  const int J = static_cast<int>(state.vortices.size());
  Eigen::VectorXd dydt = Eigen::VectorXd::Zero((2 + S) * J);

  for (int j = 0; j < J; ++j) {
    const VortexState& vj = state.vortices[j];
    const double lam = state.lambda(j);
    const double mass = vj.mass();
    if (mass == 0.0) throw numeric_error("vortex mass must be nonzero");

    Eigen::VectorXd powneg(state.order + 1);  // λ^{−d}
    powneg[0] = 1.0;
    for (int d = 1; d <= state.order; ++d) powneg[d] = powneg[d - 1] / lam;

    Eigen::VectorXd mj_scaled(S);
    for (int l = 0; l < S; ++l) mj_scaled[l] = vj.moments[l] * powneg[table.degree(l)];

    Eigen::Vector2d xdot = Eigen::Vector2d::Zero();
    Eigen::VectorXd contract = Eigen::VectorXd::Zero(S);
    Eigen::VectorXd mp_scaled(S);

    for (int jp = 0; jp < J; ++jp) {
      const VortexState& vp = state.vortices[jp];
      const Eigen::Vector2d s = vp.center - vj.center;
      const double ratio = state.lambda(jp) / lam;
      const PairTensors& T = cache.get(j, jp, s / lam, ratio);

      for (int m = 0; m < S; ++m)
        mp_scaled[m] = vp.moments[m] * powneg[table.degree(m)];

      xdot[0] += mj_scaled.dot(T.xi1 * mp_scaled);
      xdot[1] += mj_scaled.dot(T.xi2 * mp_scaled);
      for (int k = 0; k < S; ++k)
        contract[k] += mj_scaled.dot(T.gamma[k] * mp_scaled);
    }

    xdot /= lam * mass;  // λ^{−1} scaling and the 1/m_j in the center law

    const int at = (2 + S) * j;
    dydt.segment<2>(at) = xdot;

    for (int k = 0; k < S; ++k) {
      if (contract[k] == 0.0) continue;
      const int* ke = table.exponents(k);
      const int dk = table.degree(k);
      double fact = 1.0;
      for (int i = 2; i <= ke[0]; ++i) fact *= i;
      for (int i = 2; i <= ke[1]; ++i) fact *= i;
      // −c_k(λ) combined with the λ^{−(2+|k|)} tensor scaling:
      const double sign = (dk % 2 == 0) ? -1.0 : 1.0;
      const double pre = sign * std::pow(lam, dk - 2) / (std::pow(2.0, dk) * fact);
      dydt[at + 2 + k] = pre * contract[k];
    }

    if (model.include_center_advection) {
      int km[2];
      for (int k = 0; k < S; ++k) {
        const int* ke = table.exponents(k);
        for (int v = 0; v < 2; ++v) {
          if (ke[v] == 0) continue;
          km[0] = ke[0];
          km[1] = ke[1];
          --km[v];
          dydt[at + 2 + k] += xdot[v] * vj.moments[table.rank(km)];
        }
      }
    }
  }
  return dydt;
}

struct IntegrateOptions {
  double dt = 0.0;
  double t_final = 0.0;
  int sample_every = 1;  ///< record every this many steps (plus first/last)
  ModelOptions model;
};

/// One recorded sample along a run.
struct Sample {
  double t = 0.0;
  SystemState state;
  std::vector<Eigen::Vector2d> center_velocity;  ///< ẋ^j at the sample
};

/// Per-sample health row (see diagnostics.hpp for the individual measures).
struct MonitorRow {
  double t = 0.0;
  double mass_drift = 0.0;          ///< max_j |m_j − m_j(0)|
  double first_moment = 0.0;        ///< max_j max(|M^j[e₁]|, |M^j[e₂]|)
  double enstrophy = 0.0;           ///< max_j E^j
  double log_enstrophy_growth = 0.0;  ///< max_j log(E^j/E^j(0))
  double growth_bound = 0.0;        ///< ∫ max_j (4C_j/ν + 4ν/λ_j²) dt so far
  double tail = 0.0;                ///< max_j top-degree moment fraction
  double total_first_moment_drift = 0.0;  ///< ‖Σ_j m_j x^j − initial‖∞
  bool nonfinite = false;
};

struct Trajectory {
  std::vector<Sample> samples;
  std::vector<MonitorRow> monitor;
  long tensor_builds = 0;
};

/// Classical fixed-step RK4 over the packed state, with stage times resolved
/// exactly so the width law λ(t) enters each stage at its own clock.
inline Trajectory integrate_system(const SystemState& initial,
                                   const IntegrateOptions& opts) {
  if (!(opts.dt > 0.0)) throw config_error("time step dt must be positive");
  if (opts.t_final < 0.0) throw config_error("final time must be nonnegative");
  const double steps_real = opts.t_final / opts.dt;
  const long nsteps = std::lround(steps_real);
  if (std::abs(steps_real - static_cast<double>(nsteps)) >
      1e-9 * std::max(1.0, steps_real))
    throw config_error("t_final must be an integer multiple of dt");

  const int J = static_cast<int>(initial.vortices.size());
  TensorCache cache(initial.order, J, opts.model.tensor_refresh_tolerance);

  SystemState work = initial;
  Eigen::VectorXd y = work.pack();

  const Eigen::VectorXd m0 = [&] {
    Eigen::VectorXd m(J);
    for (int j = 0; j < J; ++j) m[j] = initial.vortices[j].mass();
    return m;
  }();
  const Eigen::Vector2d total_first0 = [&] {
    Eigen::Vector2d p = Eigen::Vector2d::Zero();
    for (int j = 0; j < J; ++j)
      p += initial.vortices[j].mass() * initial.vortices[j].center;
    return p;
  }();
  Eigen::VectorXd log_e0(J);
  for (int j = 0; j < J; ++j)
    log_e0[j] = std::log(weighted_enstrophy_moments(
        initial.vortices[j].moments, initial.lambda(j), initial.order));

  const auto rhs_at = [&](double t, const Eigen::VectorXd& yv) {
    work.t = t;
    work.unpack(yv);
    return system_rhs(work, cache, opts.model);
  };

  Trajectory traj;
  double bound_integral = 0.0;
  double prev_bound_rate = 0.0;
  double prev_sample_t = 0.0;

  const auto record = [&](long step) {
    const double t = step * opts.dt;
    work.t = t;
    work.unpack(y);

    Sample smp;
    smp.t = t;
    smp.state = work;
    const Eigen::VectorXd dy = rhs_at(t, y);
    const int S = work.moment_count();
    smp.center_velocity.resize(J);
    for (int j = 0; j < J; ++j)
      smp.center_velocity[j] = dy.segment<2>((2 + S) * j);

    MonitorRow row;
    row.t = t;
    row.nonfinite = !y.allFinite();
    Eigen::Vector2d total_first = Eigen::Vector2d::Zero();
    double bound_rate = 0.0;
    const MultiIndexTable& table = moment_table(work.order);
    for (int j = 0; j < J; ++j) {
      const VortexState& v = work.vortices[j];
      const double lam = work.lambda(j);
      row.mass_drift = std::max(row.mass_drift, std::abs(v.mass() - m0[j]));
      if (work.order >= 1) {
        int e1[2] = {1, 0}, e2[2] = {0, 1};
        row.first_moment = std::max(
            row.first_moment, std::max(std::abs(v.moments[table.rank(e1)]),
                                       std::abs(v.moments[table.rank(e2)])));
      }
      const double ens = weighted_enstrophy_moments(v.moments, lam, work.order);
      row.enstrophy = std::max(row.enstrophy, ens);
      row.log_enstrophy_growth =
          std::max(row.log_enstrophy_growth, std::log(ens) - log_e0[j]);
      row.tail = std::max(row.tail, tail_fraction(v.moments, work.order));
      total_first += v.mass() * v.center;
      bound_rate = std::max(
          bound_rate, enstrophy_growth_rate_bound(
                          smp.center_velocity[j].squaredNorm(), work.core.nu, lam));
    }
    if (!traj.samples.empty())
      bound_integral += 0.5 * (prev_bound_rate + bound_rate) * (t - prev_sample_t);
    prev_bound_rate = bound_rate;
    prev_sample_t = t;
    row.growth_bound = bound_integral;
    row.total_first_moment_drift =
        (total_first - total_first0).lpNorm<Eigen::Infinity>();

    traj.samples.push_back(std::move(smp));
    traj.monitor.push_back(row);
  };

  record(0);
  const int every = std::max(1, opts.sample_every);
  Eigen::VectorXd k1, k2, k3, k4;
  for (long i = 0; i < nsteps; ++i) {
    const double t = i * opts.dt;
    const double h = opts.dt;
    k1 = rhs_at(t, y);
    k2 = rhs_at(t + 0.5 * h, y + (0.5 * h) * k1);
    k3 = rhs_at(t + 0.5 * h, y + (0.5 * h) * k2);
    k4 = rhs_at(t + h, y + h * k3);
    y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

    if (!y.allFinite())
      throw numeric_error("state became non-finite during the step to t = " +
                          std::to_string((i + 1) * opts.dt) +
                          "; last finite state at t = " + std::to_string(t));
    if ((i + 1) % every == 0 || i + 1 == nsteps) record(i + 1);
  }
  traj.tensor_builds = cache.builds();
  return traj;
}

}  // namespace vmom
