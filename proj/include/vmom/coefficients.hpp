#pragma once

/// @file coefficients.hpp
/// @brief Interaction tensors of the moment system, with width scaling.
///
/// For a truncation order N the pairwise coupling is encoded by
///   Γ[k;ℓ;m] = D_τ^k D_b^m D_a^ℓ K |_0     (moment transport)
///   Ξ[ℓ;m]   = D_b^m D_a^ℓ Ξ(a,b) |_0      (center velocity)
/// over the dim-2 moment table (|k|,|ℓ|,|m| ≤ N).  Both obey an exact scaling
/// in the receiving width λ:
///   Γ(s, λ, λ′) = λ^{−(2+|k|+|ℓ|+|m|)} Γ(s/λ, 1, λ′/λ),
///   Ξ(s, λ, λ′) = λ^{−(1+|ℓ|+|m|)}     Ξ(s/λ, 1, λ′/λ),
/// so tensors are built and cached at unit scale, keyed by (s/λ, λ′/λ), and
/// the λ powers are applied at contraction time.  Self pairs (s = 0, λ′ = λ)
/// therefore build exactly once per truncation order, no matter how the core
/// spreads in time.

#include <cmath>
#include <vector>

#include <Eigen/Core>

#include "vmom/kernels.hpp"
#include "vmom/multi_index.hpp"
#include "vmom/state.hpp"

namespace vmom {

/// Unit-scale (λ_j = 1) tensors for one ordered vortex pair.
struct PairTensors {
  int order = -1;                      ///< moment truncation N
  std::vector<Eigen::MatrixXd> gamma;  ///< gamma[k](ℓ,m)
  Eigen::MatrixXd xi1, xi2;            ///< (ℓ,m)
};

/// Build the unit-scale tensors at reduced separation s̃ = s/λ_j and width
/// ratio ρ = λ_{j′}/λ_j.
inline PairTensors build_pair_tensors_unit(const Eigen::Vector2d& s_reduced,
                                           double ratio, int order) {
  const MultiIndexTable& table = moment_table(order);
  const int S = table.size();
  PairTensors out;
  out.order = order;
  out.gamma.assign(S, Eigen::MatrixXd::Zero(S, S));
  out.xi1 = Eigen::MatrixXd::Zero(S, S);
  out.xi2 = Eigen::MatrixXd::Zero(S, S);

  const XiJets xi = xi_jets(s_reduced, 1.0, ratio, 2 * order);
  int alpha[6];
  for (int l = 0; l < S; ++l) {
    const int* le = table.exponents(l);
    alpha[0] = le[0];
    alpha[1] = le[1];
    for (int m = 0; m < S; ++m) {
      const int* me = table.exponents(m);
      alpha[2] = me[0];
      alpha[3] = me[1];
      out.xi1(l, m) = extract_partial(xi.x1, alpha);
      out.xi2(l, m) = extract_partial(xi.x2, alpha);
    }
  }

  if (order >= 1) {
    const TaylorJet<double> K = interaction_jet(s_reduced, 1.0, ratio, 3 * order);
    for (int k = 0; k < S; ++k) {
      const int* ke = table.exponents(k);
      alpha[4] = ke[0];
      alpha[5] = ke[1];
      Eigen::MatrixXd& gk = out.gamma[k];
      for (int l = 0; l < S; ++l) {
        const int* le = table.exponents(l);
        alpha[0] = le[0];
        alpha[1] = le[1];
        for (int m = 0; m < S; ++m) {
          const int* me = table.exponents(m);
          alpha[2] = me[0];
          alpha[3] = me[1];
          gk(l, m) = extract_partial(K, alpha);
        }
      }
    }
  }
  return out;
}

/// Physical-scale copy: multiply each entry by the λ power from the scaling
/// law (used for tensor dumps and scaling tests; dynamics scales on the fly).
inline PairTensors scaled_copy(const PairTensors& unit, double lambda) {
  const MultiIndexTable& table = moment_table(unit.order);
  const int S = table.size();
  PairTensors out = unit;
  for (int k = 0; k < S; ++k)
    for (int l = 0; l < S; ++l)
      for (int m = 0; m < S; ++m)
        out.gamma[k](l, m) *=
            std::pow(lambda, -(2 + table.degree(k) + table.degree(l) + table.degree(m)));
  for (int l = 0; l < S; ++l)
    for (int m = 0; m < S; ++m) {
      const double p = std::pow(lambda, -(1 + table.degree(l) + table.degree(m)));
      out.xi1(l, m) *= p;
      out.xi2(l, m) *= p;
    }
  return out;
}

/// Per-pair cache of unit-scale tensors with a refresh policy: a pair is
/// rebuilt only when its reduced separation (or width ratio) has moved by
/// more than `refresh_tol` in max norm since the cached build.  The strict
/// inequality means tol = 0 rebuilds on any change but still reuses exactly
/// stationary keys — in particular self pairs, whose key is identically 0.
class TensorCache {
 public:
  TensorCache(int order, int n_vortices, double refresh_tol = 0.0)
      : order_(order), n_(n_vortices), tol_(refresh_tol), slots_(n_vortices * n_vortices) {}

  const PairTensors& get(int j, int jp, const Eigen::Vector2d& s_reduced, double ratio) {
    Slot& slot = slots_[j * n_ + jp];
    const bool stale =
        slot.tensors.order < 0 ||
        (s_reduced - slot.s_reduced).lpNorm<Eigen::Infinity>() > tol_ ||
        std::abs(ratio - slot.ratio) > tol_;
    if (stale) {
      slot.tensors = build_pair_tensors_unit(s_reduced, ratio, order_);
      slot.s_reduced = s_reduced;
      slot.ratio = ratio;
      ++builds_;
    }
    return slot.tensors;
  }

  long builds() const { return builds_; }

 private:
  struct Slot {
    PairTensors tensors;
    Eigen::Vector2d s_reduced = Eigen::Vector2d::Zero();
    double ratio = 1.0;
  };
  int order_;
  int n_;
  double tol_;
  std::vector<Slot> slots_;
  long builds_ = 0;
};

}  // namespace vmom
