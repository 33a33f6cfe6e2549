/// vmom — command-line front end.
///
/// Subcommands:
///   simulate           integrate a scenario; write trajectory/moments/
///                      diagnostics CSVs and a manifest
///   tensors            dump the interaction tensors for a pair geometry
///   project            project a scenario's t = 0 vorticity onto moments
///   compare-frequency  rotating-pair frequency vs the two reference formulas
///   oracle-compare     moment engine vs the full vorticity-equation solver
///   template           print a commented scenario file
///
/// Exit codes: 0 success, 2 configuration error, 3 numerical failure.

#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "CLI11.hpp"

#include "vmom/coefficients.hpp"
#include "vmom/csv.hpp"
#include "vmom/dynamics.hpp"
#include "vmom/errors.hpp"
#include "vmom/fields.hpp"
#include "vmom/multi_index.hpp"
#include "vmom/reference.hpp"
#include "vmom/scenario.hpp"
#include "vmom/spectral.hpp"
#include "vmom/state.hpp"

namespace {

struct CommonFlags {
  std::string config;
  std::string output_dir;
  int order = -1;
  double dt = 0.0;
  double t_final = 0.0;
  bool quiet = false;
  bool seedless = false;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config, "Scenario file (JSON; // comments allowed)")
      ->required();
  cmd->add_option("--output-dir", f.output_dir,
                  "Output directory (overrides the scenario's)");
  cmd->add_option("--order", f.order, "Override the moment truncation order")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--dt", f.dt, "Override the integrator step")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--T", f.t_final, "Override the end time")
      ->check(CLI::PositiveNumber);
  cmd->add_flag("--quiet", f.quiet, "Suppress progress output");
  cmd->add_flag("--seedless", f.seedless,
                "Accepted for compatibility; runs are deterministic by "
                "construction");
}

vmom::Scenario resolve(const CommonFlags& f) {
  vmom::Scenario s = vmom::load_scenario(f.config);
  if (f.order >= 0) s.order = f.order;
  if (f.dt > 0.0) s.dt = f.dt;
  if (f.t_final > 0.0) s.t_final = f.t_final;
  if (!f.output_dir.empty()) s.output_directory = f.output_dir;
  vmom::validate_scenario(s);
  return s;
}

std::filesystem::path ensure_outdir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec)
    throw vmom::config_error("cannot create output directory " + dir + ": " +
                             ec.message());
  return {dir};
}

/// Mass-weighted centroid; falls back to the plain average when the total
/// mass vanishes (dipoles).
Eigen::Vector2d system_centroid(const vmom::Scenario& s) {
  double msum = 0.0;
  Eigen::Vector2d c = Eigen::Vector2d::Zero(), avg = Eigen::Vector2d::Zero();
  for (const vmom::VortexSpec& v : s.vortices) {
    msum += v.mass;
    c += v.mass * v.center;
    avg += v.center / static_cast<double>(s.vortices.size());
  }
  return msum != 0.0 ? Eigen::Vector2d(c / msum) : avg;
}

vmom::IntegrateOptions integrate_options(const vmom::Scenario& s) {
  vmom::IntegrateOptions opts;
  opts.dt = s.dt;
  opts.t_final = s.t_final;
  opts.sample_every = s.sample_every;
  opts.model = s.model;
  return opts;
}

int run_template(const std::string& output) {
  const std::string text = vmom::scenario_template();
  if (output.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream out(output, std::ios::binary);
  if (!out) throw vmom::config_error("cannot open output file: " + output);
  out << text;
  return 0;
}

int run_simulate(const CommonFlags& f) {
  const vmom::Scenario s = resolve(f);
  const std::filesystem::path dir = ensure_outdir(s.output_directory);
  const vmom::SystemState init = vmom::initial_state(s);
  const vmom::Trajectory traj =
      vmom::integrate_system(init, integrate_options(s));

  const int J = static_cast<int>(s.vortices.size());
  const vmom::MultiIndexTable& table = vmom::moment_table(s.order);

  {
    std::vector<std::string> hdr{"t"};
    for (int j = 0; j < J; ++j) {
      const std::string sj = std::to_string(j);
      hdr.push_back("x1_" + sj);
      hdr.push_back("x2_" + sj);
      hdr.push_back("u1_" + sj);
      hdr.push_back("u2_" + sj);
    }
    vmom::CsvWriter w((dir / "trajectory.csv").string(), hdr);
    for (const vmom::Sample& smp : traj.samples) {
      std::vector<double> row{smp.t};
      for (int j = 0; j < J; ++j) {
        row.push_back(smp.state.vortices[j].center[0]);
        row.push_back(smp.state.vortices[j].center[1]);
        row.push_back(smp.center_velocity[j][0]);
        row.push_back(smp.center_velocity[j][1]);
      }
      w.row(row);
    }
  }

  {
    std::vector<std::string> hdr{"t"};
    for (int j = 0; j < J; ++j)
      for (int k = 0; k < table.size(); ++k) {
        const int* e = table.exponents(k);
        hdr.push_back("v" + std::to_string(j) + "_M_" + std::to_string(e[0]) +
                      "_" + std::to_string(e[1]));
      }
    vmom::CsvWriter w((dir / "moments.csv").string(), hdr);
    for (const vmom::Sample& smp : traj.samples) {
      std::vector<double> row{smp.t};
      for (int j = 0; j < J; ++j)
        for (int k = 0; k < table.size(); ++k)
          row.push_back(smp.state.vortices[j].moments[k]);
      w.row(row);
    }
  }

  {
    vmom::CsvWriter w(
        (dir / "diagnostics.csv").string(),
        {"t", "mass_drift", "first_moment_max", "enstrophy_max",
         "log_enstrophy_growth", "enstrophy_growth_bound", "tail_fraction",
         "total_first_moment_drift"});
    for (const vmom::MonitorRow& r : traj.monitor)
      w.row({r.t, r.mass_drift, r.first_moment, r.enstrophy,
             r.log_enstrophy_growth, r.growth_bound, r.tail,
             r.total_first_moment_drift});
  }

  {
    std::ofstream mf(dir / "manifest.json", std::ios::binary);
    if (!mf)
      throw vmom::config_error("cannot open output file: " +
                               (dir / "manifest.json").string());
    mf << vmom::manifest_json(s, VMOM_VERSION);
  }

  if (!f.quiet)
    std::cout << "simulate: " << traj.samples.size() << " samples to t = "
              << vmom::format_full(traj.samples.back().t) << " in "
              << dir.string() << " (pair-tensor builds: " << traj.tensor_builds
              << ")\n";
  return 0;
}

struct TensorFlags {
  int order = 2;
  std::vector<double> s{1.0, 0.0};
  double lambda = 1.0;
  double lambda_src = 0.0;
  std::string output_dir = "out";
  bool quiet = false;
};

int run_tensors(const TensorFlags& tf) {
  if (tf.order < 0 || tf.order > 8)
    throw vmom::config_error("tensors: --order must be between 0 and 8");
  if (!(tf.lambda > 0.0))
    throw vmom::config_error("tensors: --lambda must be positive");
  const double lambda_src = tf.lambda_src > 0.0 ? tf.lambda_src : tf.lambda;
  const Eigen::Vector2d s(tf.s[0], tf.s[1]);

  const vmom::PairTensors unit = vmom::build_pair_tensors_unit(
      s / tf.lambda, lambda_src / tf.lambda, tf.order);
  const vmom::PairTensors phys = vmom::scaled_copy(unit, tf.lambda);
  const vmom::MultiIndexTable& table = vmom::moment_table(tf.order);
  const std::filesystem::path dir = ensure_outdir(tf.output_dir);

  {
    vmom::CsvWriter w((dir / "gamma.csv").string(),
                      {"k1", "k2", "l1", "l2", "m1", "m2", "value"});
    for (int k = 0; k < table.size(); ++k) {
      const int* ek = table.exponents(k);
      for (int l = 0; l < table.size(); ++l) {
        const int* el = table.exponents(l);
        for (int m = 0; m < table.size(); ++m) {
          const int* em = table.exponents(m);
          w.row({static_cast<double>(ek[0]), static_cast<double>(ek[1]),
                 static_cast<double>(el[0]), static_cast<double>(el[1]),
                 static_cast<double>(em[0]), static_cast<double>(em[1]),
                 phys.gamma[k](l, m)});
        }
      }
    }
  }
  {
    vmom::CsvWriter w((dir / "xi.csv").string(),
                      {"l1", "l2", "m1", "m2", "xi1", "xi2"});
    for (int l = 0; l < table.size(); ++l) {
      const int* el = table.exponents(l);
      for (int m = 0; m < table.size(); ++m) {
        const int* em = table.exponents(m);
        w.row({static_cast<double>(el[0]), static_cast<double>(el[1]),
               static_cast<double>(em[0]), static_cast<double>(em[1]),
               phys.xi1(l, m), phys.xi2(l, m)});
      }
    }
  }

  if (!tf.quiet)
    std::cout << "tensors: order " << tf.order << ", s = (" << tf.s[0] << ", "
              << tf.s[1] << "), lambda = " << tf.lambda
              << ", lambda_src = " << lambda_src << " -> " << dir.string()
              << "\n";
  return 0;
}

int run_project(const CommonFlags& f) {
  const vmom::Scenario s = resolve(f);
  const std::filesystem::path dir = ensure_outdir(s.output_directory);
  const vmom::SystemState st = vmom::initial_state(s);

  const int order = s.project.order < 0 ? s.order : s.project.order;
  const double lambda =
      s.project.lambda > 0.0 ? s.project.lambda : s.core.lambda0;
  Eigen::Vector2d center = s.project.center;
  if (s.project.auto_center) {
    double msum = 0.0;
    for (const vmom::VortexSpec& v : s.vortices) msum += v.mass;
    if (msum == 0.0)
      throw vmom::config_error(
          "config: project.center total mass is zero; give an explicit "
          "[x, y] center");
    center = system_centroid(s);
  }

  const auto omega = [&](double x, double y) {
    return vmom::eval_vorticity(st, Eigen::Vector2d(x, y));
  };
  const vmom::ProjectionResult res = vmom::project_moments_checked(
      omega, center, lambda, order, s.project.nodes);
  if (!res.converged)
    std::cerr << "warning: projection is not converged (doubling the "
              << s.project.nodes << "-node rule moved a moment by "
              << vmom::format_full(res.max_change)
              << "); widen project.lambda or raise project.nodes\n";

  const vmom::MultiIndexTable& table = vmom::moment_table(order);
  vmom::CsvWriter w((dir / "projection.csv").string(), {"k1", "k2", "value"});
  for (int k = 0; k < table.size(); ++k) {
    const int* e = table.exponents(k);
    w.row({static_cast<double>(e[0]), static_cast<double>(e[1]),
           res.moments[k]});
  }

  if (!f.quiet)
    std::cout << "project: order " << order << " about ("
              << vmom::format_full(center[0]) << ", "
              << vmom::format_full(center[1]) << "), lambda = "
              << vmom::format_full(lambda) << ", max node-doubling change "
              << vmom::format_full(res.max_change) << " -> "
              << (dir / "projection.csv").string() << "\n";
  return 0;
}

int run_compare_frequency(const CommonFlags& f) {
  const vmom::Scenario s = resolve(f);
  if (s.vortices.size() != 2)
    throw vmom::config_error(
        "config: compare-frequency requires exactly two vortices");
  const std::filesystem::path dir = ensure_outdir(s.output_directory);

  const double m0 = s.vortices[0].mass, m1 = s.vortices[1].mass;
  const bool symmetric = std::abs(m0 - m1) <=
                             1e-12 * std::max(std::abs(m0), std::abs(m1)) &&
                         s.vortices[0].lambda0 == 0.0 &&
                         s.vortices[1].lambda0 == 0.0;
  if (!symmetric)
    std::cerr << "warning: scenario is not a symmetric equal pair with a "
                 "shared core; the reference frequencies assume one\n";

  const vmom::SystemState init = vmom::initial_state(s);
  const vmom::Trajectory traj =
      vmom::integrate_system(init, integrate_options(s));

  const double mass = 0.5 * (m0 + m1);
  const double msum = m0 + m1;
  vmom::CsvWriter w((dir / "frequency.csv").string(),
                    {"t", "omega_new", "omega_quadrupole", "omega_measured"});
  for (const vmom::Sample& smp : traj.samples) {
    const Eigen::Vector2d x0 = smp.state.vortices[0].center;
    const Eigen::Vector2d x1 = smp.state.vortices[1].center;
    const Eigen::Vector2d centroid =
        msum != 0.0 ? Eigen::Vector2d((m0 * x0 + m1 * x1) / msum)
                    : Eigen::Vector2d(0.5 * (x0 + x1));
    const double r = 0.5 * (x0 - x1).norm();
    const double lam = smp.state.lambda(0);
    const double w_new = vmom::rotation_frequency_pair(mass, r, lam);
    const double w_quad = vmom::rotation_frequency_pair_legacy(
        mass, r, s.core.lambda0, s.core.nu, smp.t);
    double w_meas = 0.0;
    int contributing = 0;
    for (int j = 0; j < 2; ++j) {
      const Eigen::Vector2d d = smp.state.vortices[j].center - centroid;
      const double r2 = d.squaredNorm();
      if (r2 <= 0.0) continue;
      const Eigen::Vector2d& u = smp.center_velocity[j];
      w_meas += (d[0] * u[1] - d[1] * u[0]) / r2;
      ++contributing;
    }
    if (contributing > 0) w_meas /= contributing;
    w.row({smp.t, w_new, w_quad, w_meas});
  }

  if (!f.quiet)
    std::cout << "compare-frequency: " << traj.samples.size()
              << " samples -> " << (dir / "frequency.csv").string() << "\n";
  return 0;
}

int run_oracle_compare(const CommonFlags& f) {
  const vmom::Scenario s = resolve(f);
  const std::filesystem::path dir = ensure_outdir(s.output_directory);
  const vmom::SystemState init = vmom::initial_state(s);

  const long nsteps = std::lround(s.t_final / s.dt);
  if (nsteps % s.oracle.compare_samples != 0)
    throw vmom::config_error(
        "config: oracle.compare_samples must divide the step count "
        "t_final/dt = " +
        std::to_string(nsteps));
  const int every = static_cast<int>(nsteps / s.oracle.compare_samples);

  vmom::IntegrateOptions opts = integrate_options(s);
  opts.sample_every = every;
  const vmom::Trajectory traj = vmom::integrate_system(init, opts);

  vmom::SpectralOptions so;
  so.n = s.oracle.n;
  so.box_size = s.oracle.box_size;
  so.box_center =
      s.oracle.auto_box_center ? system_centroid(s) : s.oracle.box_center;
  so.nu = s.core.nu;
  so.dt = s.dt;
  so.t_final = s.t_final;
  vmom::SpectralSolver solver(so);
  solver.set_initial([&](double x, double y) {
    return vmom::eval_vorticity(init, Eigen::Vector2d(x, y));
  });
  std::vector<std::pair<double, vmom::GridField>> pde;
  solver.run([&](double t, const vmom::GridField& g) { pde.emplace_back(t, g); },
             every);

  if (pde.size() != traj.samples.size())
    throw vmom::numeric_error(
        "oracle-compare: sample counts disagree between the moment engine "
        "and the reference solver");

  const int J = static_cast<int>(s.vortices.size());
  const vmom::MultiIndexTable& table = vmom::moment_table(s.order);

  double dmin = std::numeric_limits<double>::infinity();
  for (int a = 0; a < J; ++a)
    for (int b = a + 1; b < J; ++b)
      dmin = std::min(dmin,
                      (s.vortices[a].center - s.vortices[b].center).norm());

  vmom::CsvWriter wf((dir / "field_error.csv").string(),
                     {"t", "l2_error", "linf_error"});
  vmom::CsvWriter wm((dir / "moment_error.csv").string(),
                     {"t", "vortex", "k1", "k2", "engine", "oracle", "error"});
  vmom::CsvWriter wc((dir / "centers.csv").string(),
                     {"t", "vortex", "engine_x1", "engine_x2", "oracle_x1",
                      "oracle_x2", "distance"});

  for (std::size_t i = 0; i < pde.size(); ++i) {
    const vmom::SystemState& st = traj.samples[i].state;
    const vmom::GridField& g = pde[i].second;

    double num = 0.0, den = 0.0, ninf = 0.0, dinf = 0.0;
    for (int a = 0; a < g.n; ++a)
      for (int b = 0; b < g.n; ++b) {
        const double we =
            vmom::eval_vorticity(st, Eigen::Vector2d(g.x1(a), g.x2(b)));
        const double wo = g.values(a, b);
        num += (we - wo) * (we - wo);
        den += wo * wo;
        ninf = std::max(ninf, std::abs(we - wo));
        dinf = std::max(dinf, std::abs(wo));
      }
    const double l2 = den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
    const double linf = dinf > 0.0 ? ninf / dinf : ninf;
    wf.row({pde[i].first, l2, linf});

    for (int j = 0; j < J; ++j) {
      const Eigen::Vector2d ce = st.vortices[j].center;
      const double lam = st.lambda(j);
      const double r_mask = J > 1 ? std::min(4.0 * lam, 0.45 * dmin)
                                  : std::min(6.0 * lam, 0.45 * so.box_size);
      vmom::GridField masked = g;
      for (int a = 0; a < g.n; ++a)
        for (int b = 0; b < g.n; ++b) {
          const Eigen::Vector2d d(g.x1(a) - ce[0], g.x2(b) - ce[1]);
          if (d.squaredNorm() > r_mask * r_mask) masked.values(a, b) = 0.0;
        }
      double pm = 0.0;
      Eigen::Vector2d co = Eigen::Vector2d::Zero();
      vmom::grid_mass_centroid(masked, pm, co);
      wc.row({pde[i].first, static_cast<double>(j), ce[0], ce[1], co[0],
              co[1], (co - ce).norm()});

      const Eigen::VectorXd mo =
          vmom::project_moments_grid(masked, ce, lam, s.order);
      for (int k = 0; k < table.size(); ++k) {
        const int* e = table.exponents(k);
        const double me = st.vortices[j].moments[k];
        wm.row({pde[i].first, static_cast<double>(j),
                static_cast<double>(e[0]), static_cast<double>(e[1]), me,
                mo[k], std::abs(me - mo[k])});
      }
    }

    if (!f.quiet)
      std::cout << "oracle-compare: t = " << vmom::format_full(pde[i].first)
                << ", relative L2 field error = " << vmom::format_full(l2)
                << "\n";
  }

  if (!f.quiet)
    std::cout << "oracle-compare: wrote field_error.csv, moment_error.csv, "
                 "centers.csv in "
              << dir.string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "vmom — finite-core vortex dynamics via Hermite moment expansions"};
  app.require_subcommand(1);

  std::string tmpl_out;
  CLI::App* tpl =
      app.add_subcommand("template", "Print a commented scenario file");
  tpl->add_option("--output", tmpl_out, "Write to a file instead of stdout");

  CommonFlags fsim, fproj, ffreq, forac;
  CLI::App* sim = app.add_subcommand(
      "simulate",
      "Integrate a scenario; write trajectory, moment, and diagnostic CSVs");
  add_common(sim, fsim);

  TensorFlags tf;
  CLI::App* ten = app.add_subcommand(
      "tensors", "Dump the interaction tensors for a pair geometry");
  ten->add_option("--order", tf.order, "Moment truncation order")
      ->check(CLI::NonNegativeNumber);
  ten->add_option("--s", tf.s, "Separation vector (two numbers)")
      ->expected(2);
  ten->add_option("--lambda", tf.lambda, "Core width of the target vortex")
      ->check(CLI::PositiveNumber);
  ten->add_option("--lambda-src", tf.lambda_src,
                  "Core width of the source vortex (default: --lambda)")
      ->check(CLI::PositiveNumber);
  ten->add_option("--output-dir", tf.output_dir, "Output directory");
  ten->add_flag("--quiet", tf.quiet, "Suppress progress output");

  CLI::App* prj = app.add_subcommand(
      "project", "Project a scenario's t = 0 vorticity onto a moment basis");
  add_common(prj, fproj);

  CLI::App* frq = app.add_subcommand(
      "compare-frequency",
      "Rotating-pair frequency: simulated vs the two reference formulas");
  add_common(frq, ffreq);

  CLI::App* orc = app.add_subcommand(
      "oracle-compare",
      "Compare the moment engine against the full vorticity-equation solver");
  add_common(orc, forac);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (tpl->parsed()) return run_template(tmpl_out);
    if (sim->parsed()) return run_simulate(fsim);
    if (ten->parsed()) return run_tensors(tf);
    if (prj->parsed()) return run_project(fproj);
    if (frq->parsed()) return run_compare_frequency(ffreq);
    if (orc->parsed()) return run_oracle_compare(forac);
  } catch (const vmom::config_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const vmom::numeric_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
