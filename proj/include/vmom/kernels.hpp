#pragma once

/// @file kernels.hpp
/// @brief Generating-function kernels for the moment interaction tensors.
///
/// All pairwise interaction tensors are mixed partials, at the origin, of two
/// closed-form generators built from the separation s = x^{j′} − x^j and the
/// core widths.  With ∂-variables a (source-moment slot ℓ), b (velocity-moment
/// slot m) and τ (projection slot k):
///
///   K(a,b,τ) = ∇_a · [ e^{−2 a·τ/λ²} V(y) ],   y = b − s + τ − a,
///   Ξ(a,b)   = V(w),                           w = b − s − a,
///
/// where V(y) = (1/2π) y^⊥ g(|y|²), y^⊥ = (−y₂, y₁), g(u) = (1 − e^{−cu})/u,
/// and c = 1/(λ_j² + λ_{j′}²) combines the two core widths (c = 1/(2λ²) for a
/// shared core).  These arise from Gaussian convolution identities: the
/// velocity of a width-λ′ Gaussian core smoothed against a width-λ Gaussian
/// is the velocity of a width-√(λ²+λ′²) core.
///
/// The divergence ∇_a·V(y) vanishes identically (V is divergence-free), so
///   K = (−2/λ²) e^{−2a·τ/λ²} (τ₁ V₁(y) + τ₂ V₂(y)),
/// which is how the jet is assembled: every stored monomial of K carries
/// τ-degree ≥ 1 because the τ_i prefactors are applied by exact coefficient
/// relocation.  Consequently every extraction with k = (0,0) is an exact
/// floating-point zero — the mass row of the moment system never moves.
///
/// Jet variable order: (a₁, a₂, b₁, b₂, τ₁, τ₂) for K; (a₁, a₂, b₁, b₂) for Ξ.

#include <cmath>
#include <numbers>

#include <Eigen/Core>

#include "vmom/jet.hpp"

namespace vmom {

/// The two components of the center-velocity generator Ξ as 4-variable jets.
struct XiJets {
  TaylorJet<double> x1;
  TaylorJet<double> x2;
};

namespace detail {

/// V(y) = (1/2π) y^⊥ g(|y|²) on jets, g(u) = (1−e^{−cu})/u.
template <int Dim>
inline void velocity_form_jets(const TaylorJet<double>& y1,
                               const TaylorJet<double>& y2, double c,
                               TaylorJet<double>& v1, TaylorJet<double>& v2) {
  const TaylorJet<double> g = jet_entire_g(y1 * y1 + y2 * y2, c);
  const double pre = 1.0 / (2.0 * std::numbers::pi);
  v1 = jet_scale(jet_mul(y2, g), -pre);
  v2 = jet_scale(jet_mul(y1, g), pre);
}

}  // namespace detail

/// 6-variable jet of K(a,b,τ) about the origin, to total degree `order`.
/// `lambda` is the receiving vortex width λ_j (projection + transported basis);
/// `lambda_src` the inducing vortex width λ_{j′}.  Tensor entries are
/// Γ[k;ℓ;m] = extract_partial at exponents (ℓ₁,ℓ₂,m₁,m₂,k₁,k₂).
inline TaylorJet<double> interaction_jet(const Eigen::Vector2d& s, double lambda,
                                         double lambda_src, int order) {
  const int P = order;
  const TaylorJet<double> a1 = jet_variable<double>(6, P, 0, 0.0);
  const TaylorJet<double> a2 = jet_variable<double>(6, P, 1, 0.0);
  const TaylorJet<double> b1 = jet_variable<double>(6, P, 2, 0.0);
  const TaylorJet<double> b2 = jet_variable<double>(6, P, 3, 0.0);
  const TaylorJet<double> t1 = jet_variable<double>(6, P, 4, 0.0);
  const TaylorJet<double> t2 = jet_variable<double>(6, P, 5, 0.0);

  const TaylorJet<double> y1 = b1 - a1 + t1 + jet_constant<double>(6, P, -s[0]);
  const TaylorJet<double> y2 = b2 - a2 + t2 + jet_constant<double>(6, P, -s[1]);

  const double c = 1.0 / (lambda * lambda + lambda_src * lambda_src);
  TaylorJet<double> f1(6, P), f2(6, P);
  detail::velocity_form_jets<6>(y1, y2, c, f1, f2);

  const double rate = -2.0 / (lambda * lambda);
  const TaylorJet<double> expo = jet_exp(jet_scale(a1 * t1 + a2 * t2, rate));

  // K = rate · (τ₁·(E·F₁) + τ₂·(E·F₂)); monomial relocation keeps τ-degree ≥ 1.
  return jet_scale(jet_add(jet_mul_monomial(jet_mul(expo, f1), 4),
                           jet_mul_monomial(jet_mul(expo, f2), 5)),
                   rate);
}

/// Convenience overload for a shared core width.
inline TaylorJet<double> interaction_jet(const Eigen::Vector2d& s, double lambda,
                                         int order) {
  return interaction_jet(s, lambda, lambda, order);
}

/// 4-variable jets of Ξ(a,b) = V(b − s − a) about the origin.  Tensor entries
/// are Ξ_i[ℓ;m] = extract_partial at exponents (ℓ₁,ℓ₂,m₁,m₂).
inline XiJets xi_jets(const Eigen::Vector2d& s, double lambda,
                      double lambda_src, int order) {
  const int P = order;
  const TaylorJet<double> a1 = jet_variable<double>(4, P, 0, 0.0);
  const TaylorJet<double> a2 = jet_variable<double>(4, P, 1, 0.0);
  const TaylorJet<double> b1 = jet_variable<double>(4, P, 2, 0.0);
  const TaylorJet<double> b2 = jet_variable<double>(4, P, 3, 0.0);

  const TaylorJet<double> w1 = b1 - a1 + jet_constant<double>(4, P, -s[0]);
  const TaylorJet<double> w2 = b2 - a2 + jet_constant<double>(4, P, -s[1]);

  const double c = 1.0 / (lambda * lambda + lambda_src * lambda_src);
  XiJets out{TaylorJet<double>(4, P), TaylorJet<double>(4, P)};
  detail::velocity_form_jets<4>(w1, w2, c, out.x1, out.x2);
  return out;
}

inline XiJets xi_jets(const Eigen::Vector2d& s, double lambda, int order) {
  return xi_jets(s, lambda, lambda, order);
}

/// Pointwise evaluation of K(a,b,τ) — independent closed form for testing the
/// jet assembly (finite differences of this function approximate the tensors).
inline double interaction_value(const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                                const Eigen::Vector2d& tau, const Eigen::Vector2d& s,
                                double lambda, double lambda_src) {
  const Eigen::Vector2d y = b - s + tau - a;
  const double c = 1.0 / (lambda * lambda + lambda_src * lambda_src);
  const double u = y.squaredNorm();
  const double cu = c * u;
  const double g = (cu < 1e-6)
                       ? c * (1.0 - cu * (0.5 - cu * (1.0 / 6.0 - cu / 24.0)))
                       : (1.0 - std::exp(-cu)) / u;
  const Eigen::Vector2d v(-y[1] * g / (2.0 * std::numbers::pi),
                          y[0] * g / (2.0 * std::numbers::pi));
  const double rate = -2.0 / (lambda * lambda);
  return rate * std::exp(rate * a.dot(tau)) * tau.dot(v);
}

/// Pointwise Ξ(a,b); Ξ[0;0](s) is the smoothed mutual-induction velocity.
inline Eigen::Vector2d xi_value(const Eigen::Vector2d& a, const Eigen::Vector2d& b,
                                const Eigen::Vector2d& s, double lambda,
                                double lambda_src) {
  const Eigen::Vector2d w = b - s - a;
  const double c = 1.0 / (lambda * lambda + lambda_src * lambda_src);
  const double u = w.squaredNorm();
  const double cu = c * u;
  const double g = (cu < 1e-6)
                       ? c * (1.0 - cu * (0.5 - cu * (1.0 / 6.0 - cu / 24.0)))
                       : (1.0 - std::exp(-cu)) / u;
  return Eigen::Vector2d(-w[1] * g / (2.0 * std::numbers::pi),
                         w[0] * g / (2.0 * std::numbers::pi));
}

}  // namespace vmom
