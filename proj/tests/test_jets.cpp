#include <cmath>
#include <vector>

#include "doctest.h"
#include "vmom/jet.hpp"

using vmom::TaylorJet;

namespace {

/// Pointwise g(u) = (1 − e^{−c·u}) / u, the entire profile the jets compose.
double g_scalar(double u, double c) {
  if (std::abs(c * u) < 1e-8) return c * (1.0 - 0.5 * c * u);
  return (1.0 - std::exp(-c * u)) / u;
}

}  // namespace

TEST_CASE("jet multiplication matches polynomial products and truncates") {
  // (1 + 2x + 3y) * (4 + x y) in 2 variables at order 3.
  TaylorJet<double> a = vmom::jet_constant<double>(2, 3, 1.0);
  a = vmom::jet_add(a, vmom::jet_scale(vmom::jet_variable<double>(2, 3, 0, 0.0), 2.0));
  a = vmom::jet_add(a, vmom::jet_scale(vmom::jet_variable<double>(2, 3, 1, 0.0), 3.0));
  TaylorJet<double> xy = vmom::jet_mul(vmom::jet_variable<double>(2, 3, 0, 0.0),
                                       vmom::jet_variable<double>(2, 3, 1, 0.0));
  TaylorJet<double> b = vmom::jet_add(vmom::jet_constant<double>(2, 3, 4.0), xy);
  TaylorJet<double> p = vmom::jet_mul(a, b);

  const auto coeff = [&](int i, int j) {
    const int alpha[2] = {i, j};
    return p[p.table().rank(alpha)];
  };
  CHECK(coeff(0, 0) == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(coeff(1, 0) == doctest::Approx(8.0).epsilon(1e-15));
  CHECK(coeff(0, 1) == doctest::Approx(12.0).epsilon(1e-15));
  CHECK(coeff(1, 1) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(coeff(2, 1) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(coeff(1, 2) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(coeff(2, 0) == 0.0);

  // Truncation: (x + y)^2 at order 1 is identically zero.
  TaylorJet<double> s = vmom::jet_add(vmom::jet_variable<double>(2, 1, 0, 0.0),
                                      vmom::jet_variable<double>(2, 1, 1, 0.0));
  TaylorJet<double> s2 = vmom::jet_mul(s, s);
  for (int r = 0; r < s2.size(); ++r) CHECK(s2[r] == 0.0);
}

TEST_CASE("jet evaluation agrees with the polynomial it stores") {
  // f(x, y) = (1 + x)^2 (2 − y) built by jet algebra, order 4.
  TaylorJet<double> one_px =
      vmom::jet_add(vmom::jet_constant<double>(2, 4, 1.0),
                    vmom::jet_variable<double>(2, 4, 0, 0.0));
  TaylorJet<double> f = vmom::jet_mul(
      vmom::jet_mul(one_px, one_px),
      vmom::jet_add(vmom::jet_constant<double>(2, 4, 2.0),
                    vmom::jet_scale(vmom::jet_variable<double>(2, 4, 1, 0.0), -1.0)));
  const double pt[2] = {0.3, -0.7};
  const double expected = (1.3 * 1.3) * (2.0 + 0.7);
  CHECK(f.eval(pt) == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("jet derivative lowers exponents with the right factors") {
  // f = x^2 y + 3 y, df/dx = 2 x y, df/dy = x^2 + 3.
  TaylorJet<double> x = vmom::jet_variable<double>(2, 3, 0, 0.0);
  TaylorJet<double> y = vmom::jet_variable<double>(2, 3, 1, 0.0);
  TaylorJet<double> f = vmom::jet_add(vmom::jet_mul(vmom::jet_mul(x, x), y),
                                      vmom::jet_scale(y, 3.0));
  TaylorJet<double> fx = f.derivative(0);
  TaylorJet<double> fy = f.derivative(1);
  const double pt[2] = {0.4, 1.2};
  CHECK(fx.eval(pt) == doctest::Approx(2 * 0.4 * 1.2).epsilon(1e-14));
  CHECK(fy.eval(pt) == doctest::Approx(0.4 * 0.4 + 3.0).epsilon(1e-14));
}

TEST_CASE("jet_mul_monomial relocates coefficients exactly") {
  TaylorJet<double> f = vmom::jet_add(vmom::jet_constant<double>(2, 3, 5.0),
                                      vmom::jet_variable<double>(2, 3, 1, 0.0));
  TaylorJet<double> xf = vmom::jet_mul_monomial(f, 0);  // x * (5 + y)
  CHECK(vmom::extract_partial(xf, {1, 0}) == doctest::Approx(5.0));
  CHECK(vmom::extract_partial(xf, {1, 1}) == doctest::Approx(1.0));
  CHECK(vmom::extract_partial(xf, {0, 0}) == 0.0);
  CHECK(vmom::extract_partial(xf, {0, 1}) == 0.0);
}

TEST_CASE("jet_exp reproduces the exponential's Taylor coefficients") {
  // exp(c0 + x + 2y): partial of order (i, j) is e^{c0} 2^j.
  const double c0 = 0.37;
  TaylorJet<double> arg =
      vmom::jet_add(vmom::jet_constant<double>(2, 5, c0),
                    vmom::jet_add(vmom::jet_variable<double>(2, 5, 0, 0.0),
                                  vmom::jet_scale(vmom::jet_variable<double>(2, 5, 1, 0.0), 2.0)));
  TaylorJet<double> e = vmom::jet_exp(arg);
  for (int i = 0; i <= 3; ++i)
    for (int j = 0; i + j <= 5 && j <= 3; ++j) {
      const int alpha[2] = {i, j};
      CHECK(vmom::extract_partial(e, alpha) ==
            doctest::Approx(std::exp(c0) * std::pow(2.0, j)).epsilon(1e-13));
    }
}

TEST_CASE("jet_exp handles non-linear arguments (finite-difference check)") {
  // F(x) = exp(0.2 + x + 0.5 x^2): compare jet partials against central
  // finite differences of the scalar function.
  const auto F = [](double x) { return std::exp(0.2 + x + 0.5 * x * x); };
  TaylorJet<double> x = vmom::jet_variable<double>(1, 4, 0, 0.0);
  TaylorJet<double> arg = vmom::jet_add(
      vmom::jet_constant<double>(1, 4, 0.2),
      vmom::jet_add(x, vmom::jet_scale(vmom::jet_mul(x, x), 0.5)));
  TaylorJet<double> e = vmom::jet_exp(arg);

  const double h = 1e-5;
  const double d1 = (F(h) - F(-h)) / (2 * h);
  const double d2 = (F(h) - 2 * F(0) + F(-h)) / (h * h);
  CHECK(vmom::extract_partial(e, {0}) == doctest::Approx(F(0)).epsilon(1e-12));
  CHECK(vmom::extract_partial(e, {1}) == doctest::Approx(d1).epsilon(1e-8));
  CHECK(vmom::extract_partial(e, {2}) == doctest::Approx(d2).epsilon(1e-5));
}

TEST_CASE("entire_g_derivatives matches finite differences on both branches") {
  const double c = 0.7;
  // u0 = 0.1 and 5 use the power series (c*u0 <= 8); u0 = 20 the recurrence.
  for (double u0 : {0.1, 5.0, 20.0}) {
    const std::vector<double> d = vmom::entire_g_derivatives(u0, c, 3);
    REQUIRE(d.size() == 4);
    const double h = 1e-4 * std::max(1.0, u0);
    const auto g = [&](double u) { return g_scalar(u, c); };
    const double fd1 = (g(u0 + h) - g(u0 - h)) / (2 * h);
    const double fd2 = (g(u0 + h) - 2 * g(u0) + g(u0 - h)) / (h * h);
    CHECK(d[0] == doctest::Approx(g(u0)).epsilon(1e-12));
    CHECK(d[1] == doctest::Approx(fd1).epsilon(1e-6));
    CHECK(d[2] == doctest::Approx(fd2).epsilon(1e-4));
  }
  // The two branches agree where they meet (c*u0 = 8 boundary).
  const std::vector<double> lo = vmom::entire_g_derivatives(8.0 / c - 1e-9, c, 4);
  const std::vector<double> hi = vmom::entire_g_derivatives(8.0 / c + 1e-9, c, 4);
  for (int n = 0; n <= 4; ++n)
    CHECK(lo[n] == doctest::Approx(hi[n]).epsilon(1e-9));
}

TEST_CASE("jet_entire_g composes g with a polynomial argument") {
  // G(x) = g(u0 + 2x + x^2; c) — check value and first two derivatives
  // against finite differences of the scalar composition.
  const double c = 1.3, u0 = 0.9;
  const auto G = [&](double x) { return g_scalar(u0 + 2 * x + x * x, c); };
  TaylorJet<double> x = vmom::jet_variable<double>(1, 4, 0, 0.0);
  TaylorJet<double> arg = vmom::jet_add(
      vmom::jet_constant<double>(1, 4, u0),
      vmom::jet_add(vmom::jet_scale(x, 2.0), vmom::jet_mul(x, x)));
  TaylorJet<double> gj = vmom::jet_entire_g(arg, c);

  const double h = 1e-5;
  CHECK(vmom::extract_partial(gj, {0}) == doctest::Approx(G(0)).epsilon(1e-12));
  CHECK(vmom::extract_partial(gj, {1}) ==
        doctest::Approx((G(h) - G(-h)) / (2 * h)).epsilon(1e-8));
  CHECK(vmom::extract_partial(gj, {2}) ==
        doctest::Approx((G(h) - 2 * G(0) + G(-h)) / (h * h)).epsilon(1e-5));
}

TEST_CASE("order-0 jets behave as plain constants") {
  TaylorJet<double> x0 = vmom::jet_variable<double>(1, 0, 0, 2.5);
  CHECK(x0.size() == 1);
  CHECK(x0[0] == 2.5);
  TaylorJet<double> m = vmom::jet_mul_monomial(x0, 0);
  CHECK(m[0] == 0.0);  // multiplying by x truncates away at order 0
  TaylorJet<double> e = vmom::jet_exp(x0);
  CHECK(e[0] == doctest::Approx(std::exp(2.5)).epsilon(1e-15));
  TaylorJet<double> d = x0.derivative(0);
  CHECK(d[0] == 0.0);
}
