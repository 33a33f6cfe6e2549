#pragma once

/// @file state.hpp
/// @brief State containers: one moment-carrying vortex, and a system of them.
///
/// Each vortex carries a center x ∈ R² and a dense vector of Hermite moments
/// M[k], |k| ≤ N, stored over the graded multi-index table with dim = 2;
/// M[(0,0)] is the total circulation (mass) of the vortex.  The system adds
/// shared core parameters (λ0, ν) and the simulation clock.

#include <vector>

#include <Eigen/Core>

#include "vmom/errors.hpp"
#include "vmom/hermite.hpp"
#include "vmom/multi_index.hpp"

namespace vmom {

/// Moment table for truncation order N (dim-2 graded multi-indices).
inline const MultiIndexTable& moment_table(int order) {
  return multi_index_table(2, order);
}

struct VortexState {
  Eigen::Vector2d center = Eigen::Vector2d::Zero();
  Eigen::VectorXd moments;     ///< over moment_table(order); [0] is the mass
  double lambda0 = 0.0;        ///< per-vortex width override; 0 ⇒ shared core

  double mass() const { return moments[0]; }
};

struct SystemState {
  double t = 0.0;
  int order = 0;  ///< moment truncation N
  CoreParams core;
  std::vector<VortexState> vortices;

  /// Width of vortex j at the current time (per-vortex λ0 override honored).
  double lambda(int j) const {
    const VortexState& v = vortices[j];
    if (v.lambda0 > 0.0)
      return lambda_of_t(CoreParams{v.lambda0, core.nu}, t);
    return lambda_of_t(core, t);
  }

  int moment_count() const { return moment_table(order).size(); }

  /// Flatten to [x¹, M¹, x², M², …] for generic time stepping.
  Eigen::VectorXd pack() const {
    const int S = moment_count();
    Eigen::VectorXd y((2 + S) * static_cast<int>(vortices.size()));
    int at = 0;
    for (const VortexState& v : vortices) {
      y.segment<2>(at) = v.center;
      y.segment(at + 2, S) = v.moments;
      at += 2 + S;
    }
    return y;
  }

  /// Inverse of pack(); metadata (t, order, core, λ0 overrides) is kept.
  void unpack(const Eigen::VectorXd& y) {
    const int S = moment_count();
    int at = 0;
    for (VortexState& v : vortices) {
      v.center = y.segment<2>(at);
      v.moments = y.segment(at + 2, S);
      at += 2 + S;
    }
  }
};

/// A vortex with unit-normalized Gaussian core: mass at M[(0,0)], rest zero.
inline VortexState make_gaussian_vortex(int order, double mass,
                                        const Eigen::Vector2d& center,
                                        double lambda0_override = 0.0) {
  VortexState v;
  v.center = center;
  v.moments = Eigen::VectorXd::Zero(moment_table(order).size());
  v.moments[0] = mass;
  v.lambda0 = lambda0_override;
  return v;
}

}  // namespace vmom
