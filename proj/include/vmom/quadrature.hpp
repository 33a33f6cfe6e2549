#pragma once

/// @file quadrature.hpp
/// @brief Gauss–Hermite quadrature with modified (de-weighted) weights.
///
/// Nodes are eigenvalues of the symmetric tridiagonal Jacobi matrix
/// (Golub–Welsch).  The weights returned are the *modified* weights
///   ŵ_i = w_i e^{+x_i²} = 1 / Σ_{k<n} ψ_k(x_i)²,
/// computed with the orthonormal Hermite *functions* ψ_k (Gaussian absorbed),
/// which stays in floating-point range at any node count.  They satisfy
///   ∫ f(z) dz ≈ Σ_i ŵ_i f(x_i),
/// exact whenever f(z) = p(z) e^{−z²} with deg p ≤ 2n−1; the integrand keeps
/// its own Gaussian, which underflows gracefully at far-out nodes.

#include <cmath>
#include <mutex>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Eigenvalues>

namespace vmom {

struct GaussHermiteRule {
  Eigen::VectorXd nodes;    ///< roots of H_n, ascending
  Eigen::VectorXd weights;  ///< modified weights ŵ_i (see file header)
};

namespace detail {

inline GaussHermiteRule build_gauss_hermite(int n) {
  if (n < 1) throw std::invalid_argument("gauss_hermite: need n >= 1");
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double off = std::sqrt(0.5 * k);
    jacobi(k, k - 1) = off;
    jacobi(k - 1, k) = off;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jacobi);
  GaussHermiteRule rule;
  rule.nodes = es.eigenvalues();
  rule.weights.resize(n);
  // ŵ_i = 1 / Σ_{k=0}^{n−1} ψ_k(x_i)² with
  //   ψ_0 = π^{−1/4} e^{−x²/2},  ψ_{k+1} = x√(2/(k+1)) ψ_k − √(k/(k+1)) ψ_{k−1}.
  for (int i = 0; i < n; ++i) {
    const double x = rule.nodes[i];
    double pk = std::pow(M_PI, -0.25) * std::exp(-0.5 * x * x);
    double pkm1 = 0.0;
    double sum = pk * pk;
    for (int k = 0; k + 1 < n; ++k) {
      const double pk1 =
          x * std::sqrt(2.0 / (k + 1)) * pk - std::sqrt(double(k) / (k + 1)) * pkm1;
      pkm1 = pk;
      pk = pk1;
      sum += pk * pk;
    }
    rule.weights[i] = 1.0 / sum;
  }
  return rule;
}

}  // namespace detail

/// Cached n-point Gauss–Hermite rule (thread-safe, built once per n).
inline const GaussHermiteRule& gauss_hermite(int n) {
  static std::mutex mu;
  static std::unordered_map<int, GaussHermiteRule> cache;
  std::scoped_lock lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, detail::build_gauss_hermite(n)).first;
  return it->second;
}

/// Tensor-product rule over the plane, scaled to a Gaussian of width λ:
///   ∫_{R²} f(x) dx ≈ λ² Σ_{ij} ŵ_i ŵ_j f(λu_i, λu_j).
/// Exact when f(x) = p(x) e^{−|x|²/λ²} with deg p ≤ 2n−1 per coordinate.
template <typename F>
double integrate_plane(F&& f, double lambda, int n) {
  const GaussHermiteRule& rule = gauss_hermite(n);
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    const double xi = lambda * rule.nodes[i];
    const double wi = rule.weights[i];
    for (int j = 0; j < n; ++j) {
      acc += wi * rule.weights[j] * f(xi, lambda * rule.nodes[j]);
    }
  }
  return acc * lambda * lambda;
}

}  // namespace vmom
