#pragma once
/// Scenario files: JSON (with // comments allowed) describing an initial
/// vortex system, the integration window, model toggles, and output targets.
/// Parsing and validation throw config_error with messages that name the
/// offending field, so the CLI can surface them verbatim (exit code 2).

#include <string>
#include <vector>

#include <Eigen/Core>

#include "vmom/dynamics.hpp"
#include "vmom/errors.hpp"
#include "vmom/hermite.hpp"
#include "vmom/state.hpp"

namespace vmom {

/// One `[k1, k2, value]` entry from a vortex's `moments` list.
struct MomentEntry {
  int k1 = 0;
  int k2 = 0;
  double value = 0.0;
};

/// One entry of the `vortices` array.
struct VortexSpec {
  double mass = 1.0;
  Eigen::Vector2d center = Eigen::Vector2d::Zero();
  double lambda0 = 0.0;  ///< optional per-vortex core width; 0 ⇒ shared core
  std::vector<MomentEntry> moments;
};

/// Target of the `project` subcommand (optional `project` block).
struct ProjectOptions {
  int order = -1;        ///< projection order; -1 ⇒ scenario order
  double lambda = 0.0;   ///< basis core width; 0 ⇒ shared core width
  bool auto_center = true;       ///< centre on the field centroid
  Eigen::Vector2d center = Eigen::Vector2d::Zero();  ///< used when !auto_center
  int nodes = 64;        ///< Gauss–Hermite nodes per axis (doubled for check)
};

/// Settings for the `oracle-compare` subcommand (optional `oracle` block).
struct OracleOptions {
  int n = 256;              ///< spectral grid size (power of two)
  double box_size = 32.0;   ///< periodic box side
  bool auto_box_center = true;
  Eigen::Vector2d box_center = Eigen::Vector2d::Zero();
  int compare_samples = 4;  ///< number of comparison times in (0, T]
};

/// Fully resolved scenario: what the CLI subcommands consume.
struct Scenario {
  int order = 0;
  CoreParams core;
  std::vector<VortexSpec> vortices;
  double dt = 0.01;
  double t_final = 1.0;
  int sample_every = 1;
  ModelOptions model;
  std::string output_directory = "out";
  std::vector<std::string> formats = {"csv"};
  ProjectOptions project;
  OracleOptions oracle;
};

/// Parses scenario text (JSON, `//` comments allowed). `origin` labels parse
/// errors, typically the file name.
Scenario parse_scenario(const std::string& text, const std::string& origin);

/// Reads and parses a scenario file.
Scenario load_scenario(const std::string& path);

/// Cross-field invariants (also called by the CLI after flag overrides):
/// nonzero masses, non-negative order, positive dt and t_final, shared core
/// when order > 0, moment degrees within the order.
void validate_scenario(const Scenario& s);

/// Initial SystemState at t = 0 from the vortex specs.
SystemState initial_state(const Scenario& s);

/// A fully commented scenario file for `vmom template`.
std::string scenario_template();

/// Canonical manifest body: the resolved configuration (defaults filled in)
/// plus the library version, serialized with sorted keys so equal scenarios
/// produce byte-identical manifests.
std::string manifest_json(const Scenario& s, const std::string& version);

}  // namespace vmom
