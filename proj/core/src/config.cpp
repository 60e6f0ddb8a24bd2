// Copyright 2026 The viscodelay Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "viscodelay/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "config_json.hpp"
#include "viscodelay/certificate.hpp"
#include "viscodelay/error.hpp"

namespace viscodelay {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::string join(const std::string& base, const std::string& key) {
  return base.empty() ? key : base + "." + key;
}

void reject_unknown(const json& node, const std::string& path,
                    const std::set<std::string>& allowed) {
  for (const auto& item : node.items())
    if (!allowed.count(item.key())) throw ConfigError(join(path, item.key()), "unknown field");
}

const json& object_at(const json& node, const std::string& path) {
  if (!node.is_object()) throw ConfigError(path.empty() ? "<root>" : path, "expected an object");
  return node;
}

double number(const json& node, const std::string& path) {
  if (!node.is_number()) throw ConfigError(path, "expected a number");
  const double value = node.get<double>();
  if (!std::isfinite(value)) throw ConfigError(path, "must be finite");
  return value;
}

int integer(const json& node, const std::string& path) {
  if (!node.is_number_integer()) throw ConfigError(path, "expected an integer");
  return node.get<int>();
}

std::string string(const json& node, const std::string& path) {
  if (!node.is_string()) throw ConfigError(path, "expected a string");
  return node.get<std::string>();
}

template <class Fn>
void optional_field(const json& node, const std::string& base, const char* key, Fn&& fn) {
  if (auto it = node.find(key); it != node.end()) fn(*it, join(base, key));
}

std::vector<double> number_list(const json& node, const std::string& path) {
  if (!node.is_array()) throw ConfigError(path, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < node.size(); ++i)
    out.push_back(number(node[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

MemoryKernel parse_kernel(const json& node, const std::string& path) {
  object_at(node, path);
  reject_unknown(node, path, {"terms"});
  std::vector<PronyTerm> terms;
  optional_field(node, path, "terms", [&](const json& list, const std::string& p) {
    if (!list.is_array()) throw ConfigError(p, "expected an array of {a, b} terms");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string tp = p + "[" + std::to_string(i) + "]";
      object_at(list[i], tp);
      reject_unknown(list[i], tp, {"a", "b"});
      for (const char* key : {"a", "b"})
        if (!list[i].contains(key)) throw ConfigError(tp + "." + key, "required");
      PronyTerm term{number(list[i]["a"], tp + ".a"), number(list[i]["b"], tp + ".b")};
      if (!(term.amplitude > 0.0)) throw ConfigError(tp + ".a", "amplitude must be positive");
      if (!(term.rate > 0.0)) throw ConfigError(tp + ".b", "rate must be positive");
      terms.push_back(term);
    }
  });
  return MemoryKernel(std::move(terms));
}

InitialData parse_init(const json& node, const std::string& path) {
  object_at(node, path);
  reject_unknown(node, path, {"shape", "m", "center", "width", "amplitude", "history", "omega"});
  InitialData init;
  std::string shape = "sine";
  optional_field(node, path, "shape", [&](const json& v, const std::string& p) { shape = string(v, p); });
  if (shape == "sine") {
    SineProfile sine;
    optional_field(node, path, "m", [&](const json& v, const std::string& p) {
      sine.mode = integer(v, p);
      if (sine.mode < 1) throw ConfigError(p, "mode index must be at least 1");
    });
    init.shape = sine;
  } else if (shape == "gaussian") {
    GaussianProfile g;
    optional_field(node, path, "center", [&](const json& v, const std::string& p) { g.center = number(v, p); });
    optional_field(node, path, "width", [&](const json& v, const std::string& p) {
      g.width = number(v, p);
      if (!(g.width > 0.0)) throw ConfigError(p, "width must be positive");
    });
    init.shape = g;
  } else {
    throw ConfigError(join(path, "shape"), "expected \"sine\" or \"gaussian\"");
  }
  optional_field(node, path, "amplitude", [&](const json& v, const std::string& p) { init.amplitude = number(v, p); });
  std::string history = "frozen";
  optional_field(node, path, "history", [&](const json& v, const std::string& p) { history = string(v, p); });
  if (history == "frozen") {
    if (node.contains("omega")) throw ConfigError(join(path, "omega"), "only used with a modulated history");
    init.history = FrozenHistory{};
  } else if (history == "modulated") {
    ModulatedHistory m;
    optional_field(node, path, "omega", [&](const json& v, const std::string& p) { m.omega = number(v, p); });
    init.history = m;
  } else {
    throw ConfigError(join(path, "history"), "expected \"frozen\" or \"modulated\"");
  }
  return init;
}

}  // namespace

double RunConfig::poincare() const {
  return c_poincare ? *c_poincare : poincare_constant_interval(model.length);
}

RunConfig parse_config(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("<root>", std::string("invalid JSON: ") + e.what());
  }
  object_at(root, "");
  reject_unknown(root, "",
                 {"kernel", "L", "nx", "cfl", "ns", "tail_tol", "n_rho", "tau", "k", "theta",
                  "c_poincare", "mode", "delay_realization", "init", "T", "sample_every",
                  "snapshots", "output", "k_values", "k_min", "k_max", "count", "theta_values"});

  RunConfig c;
  const std::string base;
  optional_field(root, base, "kernel", [&](const json& v, const std::string& p) { c.model.kernel = parse_kernel(v, p); });
  optional_field(root, base, "L", [&](const json& v, const std::string& p) {
    c.model.length = number(v, p);
    if (!(c.model.length > 0.0)) throw ConfigError(p, "must be positive");
  });
  optional_field(root, base, "nx", [&](const json& v, const std::string& p) {
    c.grid.nx = integer(v, p);
    if (c.grid.nx < 2) throw ConfigError(p, "must be at least 2");
  });
  optional_field(root, base, "cfl", [&](const json& v, const std::string& p) {
    c.grid.cfl = number(v, p);
    if (!(c.grid.cfl > 0.0 && c.grid.cfl <= kMaxCfl)) throw ConfigError(p, "must lie in (0, 0.5]");
  });
  optional_field(root, base, "ns", [&](const json& v, const std::string& p) {
    c.grid.ns = integer(v, p);
    if (c.grid.ns < 3) throw ConfigError(p, "must be at least 3");
  });
  optional_field(root, base, "tail_tol", [&](const json& v, const std::string& p) {
    c.grid.tail_tol = number(v, p);
    if (!(c.grid.tail_tol > 0.0 && c.grid.tail_tol < 1.0)) throw ConfigError(p, "must lie in (0, 1)");
  });
  optional_field(root, base, "n_rho", [&](const json& v, const std::string& p) {
    c.grid.n_rho = integer(v, p);
    if (c.grid.n_rho < 0) throw ConfigError(p, "must be non-negative");
  });
  optional_field(root, base, "tau", [&](const json& v, const std::string& p) {
    c.model.tau = number(v, p);
    if (c.model.tau < 0.0) throw ConfigError(p, "must be non-negative");
  });
  optional_field(root, base, "k", [&](const json& v, const std::string& p) { c.model.k = number(v, p); });
  optional_field(root, base, "theta", [&](const json& v, const std::string& p) {
    c.model.theta = number(v, p);
    if (!(c.model.theta > 0.0)) throw ConfigError(p, "must be positive");
  });
  optional_field(root, base, "c_poincare", [&](const json& v, const std::string& p) {
    if (v.is_null()) return;
    c.c_poincare = number(v, p);
    if (!(*c.c_poincare > 0.0)) throw ConfigError(p, "must be positive");
  });
  optional_field(root, base, "mode", [&](const json& v, const std::string& p) {
    const auto mode = string(v, p);
    if (mode == "original") c.model.mode = ProblemMode::original;
    else if (mode == "auxiliary") c.model.mode = ProblemMode::auxiliary;
    else throw ConfigError(p, "expected \"original\" or \"auxiliary\"");
  });
  optional_field(root, base, "delay_realization", [&](const json& v, const std::string& p) {
    const auto r = string(v, p);
    if (r == "ring_buffer") c.model.delay_realization = DelayRealization::ring_buffer;
    else if (r == "rho_grid") c.model.delay_realization = DelayRealization::rho_grid;
    else throw ConfigError(p, "expected \"ring_buffer\" or \"rho_grid\"");
  });
  optional_field(root, base, "init", [&](const json& v, const std::string& p) { c.init = parse_init(v, p); });
  optional_field(root, base, "T", [&](const json& v, const std::string& p) {
    c.horizon = number(v, p);
    if (c.horizon < 0.0) throw ConfigError(p, "must be non-negative");
  });
  optional_field(root, base, "sample_every", [&](const json& v, const std::string& p) {
    c.sample_every = integer(v, p);
    if (c.sample_every < 1) throw ConfigError(p, "must be at least 1");
  });
  optional_field(root, base, "snapshots", [&](const json& v, const std::string& p) {
    if (!v.is_boolean()) throw ConfigError(p, "expected true or false");
    c.snapshots = v.get<bool>();
  });
  optional_field(root, base, "output", [&](const json& v, const std::string& p) { c.output = string(v, p); });

  const bool has_list = root.contains("k_values");
  const bool has_range = root.contains("k_min") || root.contains("k_max") || root.contains("count");
  if (has_list && has_range) throw ConfigError("k_values", "give either k_values or k_min/k_max/count");
  if (has_list) c.k_values = number_list(root["k_values"], "k_values");
  if (has_range) {
    for (const char* key : {"k_min", "k_max", "count"})
      if (!root.contains(key)) throw ConfigError(key, "required with a k range");
    const double lo = number(root["k_min"], "k_min");
    const double hi = number(root["k_max"], "k_max");
    const int count = integer(root["count"], "count");
    if (count < 1) throw ConfigError("count", "must be at least 1");
    if (hi < lo) throw ConfigError("k_max", "must not be below k_min");
    for (int i = 0; i < count; ++i)
      c.k_values.push_back(count == 1 ? lo : lo + (hi - lo) * i / (count - 1));
  }
  optional_field(root, base, "theta_values", [&](const json& v, const std::string& p) {
    c.theta_values = number_list(v, p);
    for (std::size_t i = 0; i < c.theta_values.size(); ++i)
      if (!(c.theta_values[i] > 0.0))
        throw ConfigError(p + "[" + std::to_string(i) + "]", "must be positive");
  });

  // Kernel assumptions are checked up front so errors carry a field path.
  try {
    validate_kernel(c.model.kernel, c.grid.tail_tol);
  } catch (const KernelInvalid& e) {
    throw ConfigError("kernel", e.what());
  }
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("--config", "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

namespace detail {

ordered_json to_json(const RunConfig& c, const Discretization* disc) {
  ordered_json j;
  ordered_json terms = ordered_json::array();
  for (const auto& t : c.model.kernel.terms()) terms.push_back({{"a", t.amplitude}, {"b", t.rate}});
  j["kernel"] = {{"terms", terms}};
  j["L"] = c.model.length;
  j["nx"] = c.grid.nx;
  j["cfl"] = c.grid.cfl;
  j["ns"] = c.grid.ns;
  j["tail_tol"] = c.grid.tail_tol;
  j["n_rho"] = c.grid.n_rho;
  j["tau"] = c.model.tau;
  j["k"] = c.model.k;
  j["theta"] = c.model.theta;
  j["c_poincare"] = c.poincare();
  j["mode"] = std::string(to_string(c.model.mode));
  j["delay_realization"] = std::string(to_string(c.model.delay_realization));

  ordered_json init;
  if (const auto* sine = std::get_if<SineProfile>(&c.init.shape)) {
    init["shape"] = "sine";
    init["m"] = sine->mode;
  } else {
    const auto& g = std::get<GaussianProfile>(c.init.shape);
    init["shape"] = "gaussian";
    init["center"] = g.center;
    init["width"] = g.width;
  }
  init["amplitude"] = c.init.amplitude;
  if (const auto* m = std::get_if<ModulatedHistory>(&c.init.history)) {
    init["history"] = "modulated";
    init["omega"] = m->omega;
  } else {
    init["history"] = "frozen";
  }
  j["init"] = init;
  j["T"] = c.horizon;
  j["sample_every"] = c.sample_every;
  j["snapshots"] = c.snapshots;
  j["output"] = c.output.string();
  if (!c.k_values.empty()) j["k_values"] = c.k_values;
  if (!c.theta_values.empty()) j["theta_values"] = c.theta_values;
  if (disc) {
    j["resolved"] = {{"dx", disc->dx},
                     {"dt", disc->dt},
                     {"tau_snapped", disc->tau},
                     {"n_delay", disc->n_delay},
                     {"n_rho", disc->n_rho},
                     {"s_max", disc->kernel.s_max},
                     {"s_ratio", disc->s_ratio}};
  }
  return j;
}

}  // namespace detail

std::string config_json(const RunConfig& config, const Discretization* disc) {
  return detail::to_json(config, disc).dump();
}

}  // namespace viscodelay
