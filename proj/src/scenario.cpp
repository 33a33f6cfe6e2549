#include "vmom/scenario.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <utility>

#include "json.hpp"

#include "vmom/multi_index.hpp"

namespace vmom {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw config_error("config: " + where + " " + what);
}

/// Rejects fields we do not understand so typos surface as errors instead of
/// silently falling back to defaults.
void check_keys(const json& obj, const std::string& where,
                std::initializer_list<const char*> allowed) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* k : allowed)
      if (item.key() == k) {
        known = true;
        break;
      }
    if (!known) fail(where, "has unknown field \"" + item.key() + "\"");
  }
}

const json* find(const json& obj, const char* key) {
  const auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

double as_number(const json& v, const std::string& where) {
  if (!v.is_number()) fail(where, "must be a number");
  return v.get<double>();
}

int as_int(const json& v, const std::string& where) {
  if (!v.is_number_integer()) fail(where, "must be an integer");
  return v.get<int>();
}

bool as_bool(const json& v, const std::string& where) {
  if (!v.is_boolean()) fail(where, "must be true or false");
  return v.get<bool>();
}

std::string as_string(const json& v, const std::string& where) {
  if (!v.is_string()) fail(where, "must be a string");
  return v.get<std::string>();
}

Eigen::Vector2d as_vec2(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
    fail(where, "must be an array of two numbers");
  return {v[0].get<double>(), v[1].get<double>()};
}

/// Parses a point that may also be the string "centroid".
void parse_center_or_centroid(const json& v, const std::string& where,
                              bool& auto_center, Eigen::Vector2d& center) {
  if (v.is_string()) {
    if (v.get<std::string>() != "centroid")
      fail(where, "must be [x, y] or \"centroid\"");
    auto_center = true;
    return;
  }
  auto_center = false;
  center = as_vec2(v, where);
}

}  // namespace

Scenario parse_scenario(const std::string& text, const std::string& origin) {
  json j;
  try {
    j = json::parse(text, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw config_error("config: " + origin + " is not valid JSON: " + e.what());
  }
  if (!j.is_object())
    throw config_error("config: " + origin + " must contain a JSON object");

  // A run manifest ({"config": {...}, "version": ...}) re-runs as the
  // scenario it recorded.
  if (j.contains("config") && j["config"].is_object() && j.contains("version"))
    j = j["config"];

  Scenario s;
  check_keys(j, "top level", {"order", "core", "vortices", "integrator",
                              "model", "output", "project", "oracle"});

  if (const json* v = find(j, "order")) s.order = as_int(*v, "order");

  if (const json* c = find(j, "core")) {
    check_keys(*c, "core", {"lambda0", "nu"});
    if (const json* v = find(*c, "lambda0"))
      s.core.lambda0 = as_number(*v, "core.lambda0");
    if (const json* v = find(*c, "nu")) s.core.nu = as_number(*v, "core.nu");
  }

  const json* vs = find(j, "vortices");
  if (!vs || !vs->is_array() || vs->empty())
    throw config_error("config: vortices must be a non-empty array");
  for (std::size_t i = 0; i < vs->size(); ++i) {
    const std::string where = "vortices[" + std::to_string(i) + "]";
    const json& v = (*vs)[i];
    if (!v.is_object()) fail(where, "must be an object");
    check_keys(v, where, {"mass", "center", "lambda0", "moments"});
    VortexSpec spec;
    if (const json* m = find(v, "mass"))
      spec.mass = as_number(*m, where + ".mass");
    if (const json* c = find(v, "center"))
      spec.center = as_vec2(*c, where + ".center");
    if (const json* l = find(v, "lambda0"))
      spec.lambda0 = as_number(*l, where + ".lambda0");
    if (const json* mm = find(v, "moments")) {
      if (!mm->is_array())
        fail(where + ".moments", "must be an array of [k1, k2, value] entries");
      for (std::size_t q = 0; q < mm->size(); ++q) {
        const std::string mw = where + ".moments[" + std::to_string(q) + "]";
        const json& e = (*mm)[q];
        if (!e.is_array() || e.size() != 3) fail(mw, "must be [k1, k2, value]");
        MomentEntry me;
        me.k1 = as_int(e[0], mw + "[0]");
        me.k2 = as_int(e[1], mw + "[1]");
        me.value = as_number(e[2], mw + "[2]");
        spec.moments.push_back(me);
      }
    }
    s.vortices.push_back(std::move(spec));
  }

  if (const json* t = find(j, "integrator")) {
    check_keys(*t, "integrator", {"dt", "t_final", "sample_every"});
    if (const json* v = find(*t, "dt")) s.dt = as_number(*v, "integrator.dt");
    if (const json* v = find(*t, "t_final"))
      s.t_final = as_number(*v, "integrator.t_final");
    if (const json* v = find(*t, "sample_every"))
      s.sample_every = as_int(*v, "integrator.sample_every");
  }

  if (const json* m = find(j, "model")) {
    check_keys(*m, "model",
               {"include_center_advection", "tensor_refresh_tolerance"});
    if (const json* v = find(*m, "include_center_advection"))
      s.model.include_center_advection =
          as_bool(*v, "model.include_center_advection");
    if (const json* v = find(*m, "tensor_refresh_tolerance"))
      s.model.tensor_refresh_tolerance =
          as_number(*v, "model.tensor_refresh_tolerance");
  }

  if (const json* o = find(j, "output")) {
    check_keys(*o, "output", {"directory", "formats"});
    if (const json* v = find(*o, "directory"))
      s.output_directory = as_string(*v, "output.directory");
    if (const json* v = find(*o, "formats")) {
      if (!v->is_array()) fail("output.formats", "must be an array of strings");
      s.formats.clear();
      for (std::size_t q = 0; q < v->size(); ++q)
        s.formats.push_back(as_string(
            (*v)[q], "output.formats[" + std::to_string(q) + "]"));
    }
  }

  if (const json* p = find(j, "project")) {
    check_keys(*p, "project", {"order", "lambda", "center", "nodes"});
    if (const json* v = find(*p, "order"))
      s.project.order = as_int(*v, "project.order");
    if (const json* v = find(*p, "lambda"))
      s.project.lambda = as_number(*v, "project.lambda");
    if (const json* v = find(*p, "center"))
      parse_center_or_centroid(*v, "project.center", s.project.auto_center,
                               s.project.center);
    if (const json* v = find(*p, "nodes"))
      s.project.nodes = as_int(*v, "project.nodes");
  }

  if (const json* o = find(j, "oracle")) {
    check_keys(*o, "oracle", {"n", "box_size", "box_center", "compare_samples"});
    if (const json* v = find(*o, "n")) s.oracle.n = as_int(*v, "oracle.n");
    if (const json* v = find(*o, "box_size"))
      s.oracle.box_size = as_number(*v, "oracle.box_size");
    if (const json* v = find(*o, "box_center"))
      parse_center_or_centroid(*v, "oracle.box_center",
                               s.oracle.auto_box_center, s.oracle.box_center);
    if (const json* v = find(*o, "compare_samples"))
      s.oracle.compare_samples = as_int(*v, "oracle.compare_samples");
  }

  validate_scenario(s);
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw config_error("config: cannot open scenario file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), path);
}

void validate_scenario(const Scenario& s) {
  if (s.order < 0) fail("order", "must be >= 0");
  if (s.order > 8)
    fail("order", "must be at most 8 (interaction jets carry 3x the order)");
  if (!(s.core.lambda0 > 0.0)) fail("core.lambda0", "must be positive");
  if (s.core.nu < 0.0) fail("core.nu", "must be non-negative");

  for (std::size_t i = 0; i < s.vortices.size(); ++i) {
    const std::string where = "vortices[" + std::to_string(i) + "]";
    const VortexSpec& v = s.vortices[i];
    if (v.mass == 0.0) fail(where + ".mass", "must be nonzero");
    if (v.lambda0 < 0.0) fail(where + ".lambda0", "must be positive when given");
    if (v.lambda0 > 0.0 && s.order > 0)
      fail(where + ".lambda0",
           "per-vortex core widths require order = 0 (moment dynamics assume "
           "one shared core)");
    for (std::size_t q = 0; q < v.moments.size(); ++q) {
      const std::string mw = where + ".moments[" + std::to_string(q) + "]";
      const MomentEntry& me = v.moments[q];
      if (me.k1 < 0 || me.k2 < 0) fail(mw, "indices must be non-negative");
      const int deg = me.k1 + me.k2;
      if (deg == 0) fail(mw, "uses [0, 0]; set the zeroth moment via `mass`");
      if (deg > s.order)
        fail(mw, "degree " + std::to_string(deg) + " exceeds order " +
                     std::to_string(s.order));
      for (std::size_t r = 0; r < q; ++r)
        if (v.moments[r].k1 == me.k1 && v.moments[r].k2 == me.k2)
          fail(mw, "duplicates multi-index [" + std::to_string(me.k1) + ", " +
                       std::to_string(me.k2) + "]");
    }
  }

  if (!(s.dt > 0.0)) fail("integrator.dt", "must be positive");
  if (!(s.t_final > 0.0)) fail("integrator.t_final", "must be positive");
  if (s.sample_every < 1) fail("integrator.sample_every", "must be >= 1");
  if (s.model.tensor_refresh_tolerance < 0.0)
    fail("model.tensor_refresh_tolerance", "must be non-negative");

  if (s.formats.empty()) fail("output.formats", "must not be empty");
  for (std::size_t q = 0; q < s.formats.size(); ++q)
    if (s.formats[q] != "csv")
      fail("output.formats[" + std::to_string(q) + "]",
           "unsupported format \"" + s.formats[q] + "\" (supported: \"csv\")");

  if (s.project.order < -1 || s.project.order > 16)
    fail("project.order", "must be between 0 and 16 (or -1 for the scenario "
                          "order)");
  if (s.project.lambda < 0.0)
    fail("project.lambda", "must be positive when given");
  if (s.project.nodes < 4) fail("project.nodes", "must be >= 4");

  if (s.oracle.n < 16 || (s.oracle.n & (s.oracle.n - 1)) != 0)
    fail("oracle.n", "must be a power of two >= 16");
  if (!(s.oracle.box_size > 0.0)) fail("oracle.box_size", "must be positive");
  if (s.oracle.compare_samples < 1)
    fail("oracle.compare_samples", "must be >= 1");
}

SystemState initial_state(const Scenario& s) {
  SystemState st;
  st.t = 0.0;
  st.order = s.order;
  st.core = s.core;
  const MultiIndexTable& table = moment_table(s.order);
  for (const VortexSpec& spec : s.vortices) {
    VortexState v =
        make_gaussian_vortex(s.order, spec.mass, spec.center, spec.lambda0);
    for (const MomentEntry& me : spec.moments) {
      const int e[2] = {me.k1, me.k2};
      v.moments[table.rank(e)] = me.value;
    }
    st.vortices.push_back(std::move(v));
  }
  return st;
}

std::string scenario_template() {
  return R"(// Scenario file for the vmom CLI (JSON; // comments are allowed).
// Describes an initial system of Gaussian-core vortices, the moment
// truncation order, the integration window, and output locations.
{
  // Truncation order N: moments M[k] with |k| = k1 + k2 <= N evolve.
  // N = 0 reduces each vortex to a moving Gaussian core.
  "order": 2,

  // Shared core parameters: width(t)^2 = lambda0^2 + 4 * nu * t.
  "core": {
    "lambda0": 1.0, // initial core width (> 0)
    "nu": 0.01      // viscosity (>= 0)
  },

  "vortices": [
    {
      "mass": 1.0,          // total circulation (nonzero)
      "center": [0.0, 0.0], // initial position
      // Higher moments as [k1, k2, value]; omit for a pure Gaussian.
      // The zeroth moment is `mass`; entries need 1 <= k1 + k2 <= order.
      "moments": [[2, 0, 0.05], [0, 2, -0.05]]
      // "lambda0": 0.5     // per-vortex core width; only valid when order = 0
    },
    {
      "mass": 1.0,
      "center": [1.0, 0.0]
    }
  ],

  "integrator": {
    "dt": 0.01,         // fixed RK4 step (> 0)
    "t_final": 1.0,     // end time (> 0, an integer multiple of dt)
    "sample_every": 10  // record every k-th step (>= 1)
  },

  "model": {
    "include_center_advection": true, // moment transport by the moving center
    // Reuse pair tensors while the reduced separation moves less than this
    // (0 = rebuild whenever it changes at all).
    "tensor_refresh_tolerance": 0.0
  },

  "output": {
    "directory": "out", // created if missing
    "formats": ["csv"]
  },

  // Used by `vmom project`: project the t = 0 vorticity onto a moment basis.
  "project": {
    "order": 4,           // target order (-1 = scenario order)
    "lambda": 0.0,        // basis core width (0 = shared core width)
    "center": "centroid", // expansion center, or [x, y]
    "nodes": 64           // quadrature nodes per axis (convergence-checked)
  },

  // Used by `vmom oracle-compare`: full vorticity-equation reference run.
  "oracle": {
    "n": 256,                 // spectral grid size (power of two >= 16)
    "box_size": 32.0,         // periodic box side; field must vanish at edges
    "box_center": "centroid", // or [x, y]
    "compare_samples": 4      // comparison times in (0, t_final]
  }
}
)";
}

std::string manifest_json(const Scenario& s, const std::string& version) {
  json c;
  c["order"] = s.order;
  c["core"]["lambda0"] = s.core.lambda0;
  c["core"]["nu"] = s.core.nu;
  c["vortices"] = json::array();
  for (const VortexSpec& v : s.vortices) {
    json jv;
    jv["mass"] = v.mass;
    jv["center"] = {v.center[0], v.center[1]};
    if (v.lambda0 > 0.0) jv["lambda0"] = v.lambda0;
    if (!v.moments.empty()) {
      jv["moments"] = json::array();
      for (const MomentEntry& me : v.moments)
        jv["moments"].push_back({me.k1, me.k2, me.value});
    }
    c["vortices"].push_back(std::move(jv));
  }
  c["integrator"]["dt"] = s.dt;
  c["integrator"]["t_final"] = s.t_final;
  c["integrator"]["sample_every"] = s.sample_every;
  c["model"]["include_center_advection"] = s.model.include_center_advection;
  c["model"]["tensor_refresh_tolerance"] = s.model.tensor_refresh_tolerance;
  c["output"]["directory"] = s.output_directory;
  c["output"]["formats"] = s.formats;
  c["project"]["order"] = s.project.order;
  c["project"]["lambda"] = s.project.lambda;
  if (s.project.auto_center)
    c["project"]["center"] = "centroid";
  else
    c["project"]["center"] = {s.project.center[0], s.project.center[1]};
  c["project"]["nodes"] = s.project.nodes;
  c["oracle"]["n"] = s.oracle.n;
  c["oracle"]["box_size"] = s.oracle.box_size;
  if (s.oracle.auto_box_center)
    c["oracle"]["box_center"] = "centroid";
  else
    c["oracle"]["box_center"] = {s.oracle.box_center[0],
                                 s.oracle.box_center[1]};
  c["oracle"]["compare_samples"] = s.oracle.compare_samples;

  json m;
  m["config"] = std::move(c);
  m["version"] = version;
  return m.dump(2) + "\n";
}

}  // namespace vmom
