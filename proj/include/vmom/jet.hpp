#pragma once

/// @file jet.hpp
/// @brief Truncated multivariate Taylor series ("jets") with ring arithmetic,
///        exponentials, and the entire function g(u) = (1 − e^{−cu})/u.
///
/// A jet stores the coefficients c_α of Σ c_α x^α, |α| ≤ order, densely over
/// the graded multi-index table.  extract_partial converts a coefficient into
/// the mixed partial derivative D^α f = c_α · Πα_i! at the expansion point.
///
/// Multiplication is truncated at the jet order and iterates the nonzero
/// entries of the right factor via cached shift rows, so sparse factors
/// (linear forms, quadratics, exponential ladders) cost what they touch.

#include <array>
#include <cmath>
#include <initializer_list>
#include <vector>

#include <Eigen/Core>

#include "vmom/multi_index.hpp"

namespace vmom {

template <typename Scalar = double>
class TaylorJet {
 public:
  TaylorJet(int dim, int order)
      : table_(&multi_index_table(dim, order)),
        c_(Eigen::Array<Scalar, Eigen::Dynamic, 1>::Zero(table_->size())) {}

  int dim() const { return table_->dim(); }
  int order() const { return table_->order(); }
  int size() const { return table_->size(); }
  const MultiIndexTable& table() const { return *table_; }

  Scalar& operator[](int rank) { return c_[rank]; }
  const Scalar& operator[](int rank) const { return c_[rank]; }
  const Eigen::Array<Scalar, Eigen::Dynamic, 1>& coeffs() const { return c_; }
  Eigen::Array<Scalar, Eigen::Dynamic, 1>& coeffs() { return c_; }

  /// Coefficient c_α addressed by exponent tuple.
  Scalar coefficient(const int* alpha) const { return c_[table_->rank(alpha)]; }

  TaylorJet& operator+=(const TaylorJet& b) {
    c_ += b.c_;
    return *this;
  }
  TaylorJet& operator-=(const TaylorJet& b) {
    c_ -= b.c_;
    return *this;
  }
  TaylorJet& operator*=(Scalar s) {
    c_ *= s;
    return *this;
  }

  friend TaylorJet operator+(TaylorJet a, const TaylorJet& b) { return a += b; }
  friend TaylorJet operator-(TaylorJet a, const TaylorJet& b) { return a -= b; }
  friend TaylorJet operator*(TaylorJet a, Scalar s) { return a *= s; }
  friend TaylorJet operator*(Scalar s, TaylorJet a) { return a *= s; }

  /// Truncated product; cost scales with the number of nonzeros of b.
  friend TaylorJet operator*(const TaylorJet& a, const TaylorJet& b) {
    TaylorJet out(a.dim(), a.order());
    const MultiIndexTable& t = *a.table_;
    const int n = t.size();
    for (int jb = 0; jb < n; ++jb) {
      const Scalar bv = b.c_[jb];
      if (bv == Scalar(0)) continue;
      const auto& row = t.shifted_ranks(jb);
      const int na = static_cast<int>(row.size());
      for (int ia = 0; ia < na; ++ia) out.c_[row[ia]] += a.c_[ia] * bv;
    }
    return out;
  }

  /// Formal partial derivative ∂/∂x_v (drops the top order).
  TaylorJet derivative(int v) const {
    TaylorJet out(dim(), order());
    if (order() < 1) return out;
    std::array<int, kMaxJetDim> ev{};
    ev[v] = 1;
    const auto& row = table_->shifted_ranks(table_->rank(ev.data()));
    const int na = static_cast<int>(row.size());
    for (int ia = 0; ia < na; ++ia)
      out.c_[ia] = c_[row[ia]] * Scalar(table_->exponents(row[ia])[v]);
    return out;
  }

  /// Polynomial evaluation at a point (test utility).
  Scalar eval(const Scalar* x) const {
    Scalar acc = Scalar(0);
    for (int i = 0; i < size(); ++i) {
      if (c_[i] == Scalar(0)) continue;
      Scalar mono = Scalar(1);
      const int* e = table_->exponents(i);
      for (int v = 0; v < dim(); ++v)
        for (int p = 0; p < e[v]; ++p) mono *= x[v];
      acc += c_[i] * mono;
    }
    return acc;
  }

 private:
  const MultiIndexTable* table_;
  Eigen::Array<Scalar, Eigen::Dynamic, 1> c_;
};

template <typename Scalar = double>
TaylorJet<Scalar> jet_constant(int dim, int order, Scalar value) {
  TaylorJet<Scalar> j(dim, order);
  j[0] = value;
  return j;
}

/// The affine seed base + x_var (expansion variable var about base).
template <typename Scalar = double>
TaylorJet<Scalar> jet_variable(int dim, int order, int var, Scalar base) {
  TaylorJet<Scalar> j(dim, order);
  j[0] = base;
  if (order >= 1) {
    std::array<int, kMaxJetDim> e{};
    e[var] = 1;
    j[j.table().rank(e.data())] = Scalar(1);
  }
  return j;
}

template <typename Scalar>
TaylorJet<Scalar> jet_add(const TaylorJet<Scalar>& a, const TaylorJet<Scalar>& b) {
  return a + b;
}

template <typename Scalar>
TaylorJet<Scalar> jet_mul(const TaylorJet<Scalar>& a, const TaylorJet<Scalar>& b) {
  return a * b;
}

template <typename Scalar>
TaylorJet<Scalar> jet_scale(const TaylorJet<Scalar>& a, Scalar s) {
  return a * s;
}

/// Multiply by the monomial x_v (exact coefficient relocation).
template <typename Scalar>
TaylorJet<Scalar> jet_mul_monomial(const TaylorJet<Scalar>& a, int v) {
  TaylorJet<Scalar> out(a.dim(), a.order());
  if (a.order() < 1) return out;  // everything lands past the truncation
  const MultiIndexTable& t = a.table();
  std::array<int, kMaxJetDim> ev{};
  ev[v] = 1;
  const auto& row = t.shifted_ranks(t.rank(ev.data()));
  const int na = static_cast<int>(row.size());
  for (int ia = 0; ia < na; ++ia) out[row[ia]] = a[ia];
  return out;
}

/// exp(a) = e^{a_0} Σ (a − a_0)^n / n!, Horner form, exact to the jet order.
template <typename Scalar>
TaylorJet<Scalar> jet_exp(const TaylorJet<Scalar>& a) {
  const int P = a.order();
  TaylorJet<Scalar> delta = a;
  delta[0] = Scalar(0);
  Scalar inv_fact = Scalar(1);
  for (int n = 2; n <= P; ++n) inv_fact /= Scalar(n);
  // Horner: (((1/P!)Δ + 1/(P−1)!)Δ + …)Δ + 1
  TaylorJet<Scalar> acc = jet_constant<Scalar>(a.dim(), P, inv_fact);
  for (int n = P - 1; n >= 0; --n) {
    inv_fact *= Scalar(n + 1);  // now 1/n!
    acc = acc * delta;
    acc[0] += inv_fact;
  }
  return acc * std::exp(a[0]);
}

/// Derivatives g^{(n)}(u0) of g(u) = (1 − e^{−cu})/u for n = 0..nmax.
///
/// g extends to an entire function with g(0) = c; near the origin the
/// alternating series g^{(n)}(u0) = (−1)^n c^{n+1} Σ_r (−cu0)^r / (r! (r+n+1))
/// is used, away from it the recurrence u0 g^{(n)} = −(−c)^n e^{−cu0} − n g^{(n−1)}.
template <typename Scalar>
std::vector<Scalar> entire_g_derivatives(Scalar u0, Scalar c, int nmax) {
  std::vector<Scalar> d(nmax + 1);
  const Scalar cu = c * u0;
  if (std::abs(cu) <= Scalar(8)) {
    for (int n = 0; n <= nmax; ++n) {
      Scalar term = Scalar(1);  // (−cu)^r / r!
      Scalar sum = Scalar(0);
      for (int r = 0; r < 64; ++r) {
        const Scalar add = term / Scalar(r + n + 1);
        sum += add;
        term *= -cu / Scalar(r + 1);
        if (std::abs(term) < Scalar(1e-20) * (std::abs(sum) + Scalar(1e-30)))
          break;
      }
      Scalar cpow = c;
      for (int i = 0; i < n; ++i) cpow *= -c;
      d[n] = cpow * sum;
    }
  } else {
    const Scalar e = std::exp(-cu);
    d[0] = (Scalar(1) - e) / u0;
    Scalar mcpow = Scalar(1);  // (−c)^n
    for (int n = 1; n <= nmax; ++n) {
      mcpow *= -c;
      d[n] = (-mcpow * e - Scalar(n) * d[n - 1]) / u0;
    }
  }
  return d;
}

/// Composition g(a) with g(u) = (1 − e^{−cu})/u, exact to the jet order.
template <typename Scalar>
TaylorJet<Scalar> jet_entire_g(const TaylorJet<Scalar>& a, Scalar c) {
  const int P = a.order();
  TaylorJet<Scalar> delta = a;
  delta[0] = Scalar(0);
  const std::vector<Scalar> d = entire_g_derivatives(a[0], c, P);
  Scalar fact = Scalar(1);
  std::vector<Scalar> taylor(P + 1);  // g^{(n)}(u0)/n!
  for (int n = 0; n <= P; ++n) {
    if (n > 0) fact *= Scalar(n);
    taylor[n] = d[n] / fact;
  }
  TaylorJet<Scalar> acc = jet_constant<Scalar>(a.dim(), P, taylor[P]);
  for (int n = P - 1; n >= 0; --n) {
    acc = acc * delta;
    acc[0] += taylor[n];
  }
  return acc;
}

/// Mixed partial D^α f at the expansion point: c_α · Πα_i!.
template <typename Scalar>
Scalar extract_partial(const TaylorJet<Scalar>& a, const int* alpha) {
  Scalar fact = Scalar(1);
  for (int v = 0; v < a.dim(); ++v)
    for (int p = 2; p <= alpha[v]; ++p) fact *= Scalar(p);
  return a.coefficient(alpha) * fact;
}

template <typename Scalar>
Scalar extract_partial(const TaylorJet<Scalar>& a,
                       std::initializer_list<int> alpha) {
  return extract_partial(a, alpha.begin());
}

}  // namespace vmom
