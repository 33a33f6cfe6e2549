/// @file spectral.cpp
/// @brief Pseudo-spectral vorticity solver implementation.

#include "vmom/spectral.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include <unsupported/Eigen/FFT>

#include "vmom/errors.hpp"

namespace vmom {

namespace {

/// In-place 2-D FFT helpers built from 1-D passes (columns, then rows).
void fft2(Eigen::FFT<double>& fft, Eigen::MatrixXcd& m, bool inverse) {
  const int n = static_cast<int>(m.rows());
  Eigen::VectorXcd in(n), out(n);
  for (int j = 0; j < n; ++j) {
    in = m.col(j);
    if (inverse)
      fft.inv(out, in);
    else
      fft.fwd(out, in);
    m.col(j) = out;
  }
  for (int i = 0; i < n; ++i) {
    in = m.row(i).transpose();
    if (inverse)
      fft.inv(out, in);
    else
      fft.fwd(out, in);
    m.row(i) = out.transpose();
  }
}

thread_local Eigen::FFT<double> g_fft;

Eigen::MatrixXcd forward(Eigen::MatrixXcd m) {
  fft2(g_fft, m, false);
  return m;
}

Eigen::MatrixXcd backward(Eigen::MatrixXcd m) {
  fft2(g_fft, m, true);
  return m;
}

}  // namespace

SpectralSolver::SpectralSolver(const SpectralOptions& opts) : opts_(opts) {
  const int n = opts_.n;
  if (n < 16 || (n & (n - 1)) != 0)
    throw config_error("spectral grid size must be a power of two >= 16");
  if (!(opts_.box_size > 0.0)) throw config_error("box size must be positive");
  if (!(opts_.dt > 0.0)) throw config_error("time step dt must be positive");
  if (opts_.nu < 0.0) throw config_error("viscosity must be nonnegative");

  const double base = 2.0 * std::numbers::pi / opts_.box_size;
  kx_.resize(n);
  ky_.resize(n);
  for (int i = 0; i < n; ++i) {
    const int signed_idx = (i <= n / 2) ? i : i - n;
    kx_[i] = base * signed_idx;
    ky_[i] = base * signed_idx;
  }
  dealias_ = Eigen::ArrayXXd::Zero(n, n);
  inv_k2_ = Eigen::ArrayXXd::Zero(n, n);
  const int keep = n / 3;
  for (int i = 0; i < n; ++i) {
    const int si = (i <= n / 2) ? i : i - n;
    for (int j = 0; j < n; ++j) {
      const int sj = (j <= n / 2) ? j : j - n;
      if (std::abs(si) <= keep && std::abs(sj) <= keep) dealias_(i, j) = 1.0;
      const double k2 = kx_[i] * kx_[i] + ky_[j] * ky_[j];
      if (k2 > 0.0) inv_k2_(i, j) = 1.0 / k2;
    }
  }
  what_ = Eigen::MatrixXcd::Zero(n, n);
}

void SpectralSolver::set_initial(
    const std::function<double(double, double)>& omega0) {
  const int n = opts_.n;
  const double h = opts_.box_size / n;
  const Eigen::Vector2d lo = opts_.box_center -
                             0.5 * opts_.box_size * Eigen::Vector2d::Ones();
  Eigen::MatrixXcd w(n, n);
  double interior_max = 0.0, boundary_max = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double v = omega0(lo[0] + i * h, lo[1] + j * h);
      w(i, j) = v;
      const bool boundary = i == 0 || j == 0 || i == n - 1 || j == n - 1;
      (boundary ? boundary_max : interior_max) =
          std::max(boundary ? boundary_max : interior_max, std::abs(v));
    }
  if (boundary_max > 1e-8 * interior_max)
    throw config_error(
        "initial vorticity does not vanish at the box boundary; enlarge the box");
  what_ = forward(std::move(w));
  what_.array() *= dealias_;
  t_ = 0.0;
}

Eigen::MatrixXcd SpectralSolver::nonlinear(const Eigen::MatrixXcd& what,
                                           double* umax_out) const {
  const int n = opts_.n;
  const std::complex<double> I(0.0, 1.0);
  Eigen::MatrixXcd u1h(n, n), u2h(n, n), wxh(n, n), wyh(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const std::complex<double> wh = what(i, j);
      const double ik2 = inv_k2_(i, j);
      u1h(i, j) = I * ky_[j] * wh * ik2;   // u₁ = +∂₂ψ convention folded in
      u2h(i, j) = -I * kx_[i] * wh * ik2;  // u₂ = −∂₁ψ
      wxh(i, j) = I * kx_[i] * wh;
      wyh(i, j) = I * ky_[j] * wh;
    }
  const Eigen::MatrixXcd u1 = backward(std::move(u1h));
  const Eigen::MatrixXcd u2 = backward(std::move(u2h));
  const Eigen::MatrixXcd wx = backward(std::move(wxh));
  const Eigen::MatrixXcd wy = backward(std::move(wyh));
  if (umax_out) {
    double umax = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        umax = std::max(umax, std::hypot(u1(i, j).real(), u2(i, j).real()));
    *umax_out = umax;
  }
  Eigen::MatrixXcd adv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      adv(i, j) = -(u1(i, j).real() * wx(i, j).real() +
                    u2(i, j).real() * wy(i, j).real());
  Eigen::MatrixXcd advh = forward(std::move(adv));
  advh.array() *= dealias_;
  return advh;
}

void SpectralSolver::run(
    const std::function<void(double, const GridField&)>& on_sample,
    int sample_every) {
  const double h = opts_.dt;
  const double steps_real = opts_.t_final / h;
  const long nsteps = std::lround(steps_real);
  if (std::abs(steps_real - static_cast<double>(nsteps)) >
      1e-9 * std::max(1.0, steps_real))
    throw config_error("t_final must be an integer multiple of dt");

  const int n = opts_.n;
  Eigen::ArrayXXd e_half(n, n), e_full(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double k2 = kx_[i] * kx_[i] + ky_[j] * ky_[j];
      e_half(i, j) = std::exp(-opts_.nu * k2 * h / 2.0);
      e_full(i, j) = e_half(i, j) * e_half(i, j);
    }

  const double grid_h = opts_.box_size / n;
  const auto check_cfl = [&](double umax) {
    if (h * umax / grid_h > opts_.cfl_limit)
      throw numeric_error(
          "advective CFL limit exceeded at t = " + std::to_string(t_) +
          "; use dt <= " + std::to_string(opts_.cfl_limit * grid_h / umax) +
          " or refine the grid");
  };

  if (on_sample) on_sample(t_, to_grid(what_));

  for (long i = 0; i < nsteps; ++i) {
    double umax = 0.0;
    const bool check = (i % std::max(1, opts_.check_every)) == 0;
    const Eigen::MatrixXcd a = nonlinear(what_, check ? &umax : nullptr);
    if (check) {
      check_cfl(umax);
      if (!what_.allFinite())
        throw numeric_error("spectral state became non-finite at t = " +
                            std::to_string(t_));
    }
    Eigen::MatrixXcd wa = what_;
    wa.noalias() += (h / 2.0) * a;
    wa.array() *= e_half;
    const Eigen::MatrixXcd b = nonlinear(wa, nullptr);

    Eigen::MatrixXcd wb = what_;
    wb.array() *= e_half;
    wb.noalias() += (h / 2.0) * b;
    const Eigen::MatrixXcd c = nonlinear(wb, nullptr);

    Eigen::MatrixXcd wc = what_;
    wc.array() *= e_full;
    Eigen::MatrixXcd ch = c;
    ch.array() *= e_half;
    wc.noalias() += h * ch;
    const Eigen::MatrixXcd d = nonlinear(wc, nullptr);

    Eigen::MatrixXcd acc = a;
    acc.array() *= e_full;
    Eigen::MatrixXcd bc = b + c;
    bc.array() *= e_half;
    acc.noalias() += 2.0 * bc;
    acc.noalias() += d;
    what_.array() *= e_full;
    what_.noalias() += (h / 6.0) * acc;

    t_ = (i + 1) * h;
    if (on_sample && (i + 1 == nsteps ||
                      (sample_every > 0 && (i + 1) % sample_every == 0)))
      on_sample(t_, to_grid(what_));
  }
  if (!what_.allFinite())
    throw numeric_error("spectral state became non-finite at t = " +
                        std::to_string(t_));
}

GridField SpectralSolver::to_grid(const Eigen::MatrixXcd& spectral) const {
  const int n = opts_.n;
  const Eigen::MatrixXcd w = backward(spectral);
  GridField g;
  g.n = n;
  g.h = opts_.box_size / n;
  g.origin = opts_.box_center - 0.5 * opts_.box_size * Eigen::Vector2d::Ones();
  g.values.resize(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g.values(i, j) = w(i, j).real();
  return g;
}

GridField SpectralSolver::omega() const { return to_grid(what_); }

void SpectralSolver::velocity(GridField& u1, GridField& u2) const {
  const int n = opts_.n;
  const std::complex<double> I(0.0, 1.0);
  Eigen::MatrixXcd u1h(n, n), u2h(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const std::complex<double> wh = what_(i, j);
      const double ik2 = inv_k2_(i, j);
      u1h(i, j) = I * ky_[j] * wh * ik2;
      u2h(i, j) = -I * kx_[i] * wh * ik2;
    }
  u1 = to_grid(u1h);
  u2 = to_grid(u2h);
}

}  // namespace vmom
