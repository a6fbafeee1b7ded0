#include "dads/config.hpp"

#include <fstream>
#include <sstream>

namespace dads {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

bool parse_double(const std::string& text, double& out) {
  try {
    std::size_t used = 0;
    out = std::stod(text, &used);
    return used == text.size();
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace

Config Config::parse(std::string_view text, const std::string& origin) {
  Config cfg;
  cfg.origin_ = origin;
  std::istringstream is{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected 'key = value'");
    }
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    if (key.empty()) throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
    if (cfg.values_.count(key)) {
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": duplicate key '" + key + "'");
    }
    cfg.values_[key] = value;
    cfg.lines_[key] = lineno;
  }
  return cfg;
}

Config Config::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path.string());
}

ConfigError Config::error(const std::string& key, const std::string& why) const {
  auto it = lines_.find(key);
  const std::string where = it == lines_.end() ? origin_ : origin_ + ":" + std::to_string(it->second);
  return ConfigError(where + ": " + key + ": " + why);
}

const std::string& Config::raw(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError(origin_ + ": missing required key '" + key + "'");
  used_.insert(key);
  return it->second;
}

std::string Config::str(const std::string& key) const { return raw(key); }

std::string Config::str(const std::string& key, const std::string& fallback) const {
  return has(key) ? raw(key) : fallback;
}

double Config::num(const std::string& key) const {
  double v = 0.0;
  if (!parse_double(raw(key), v)) throw error(key, "expected a number, got '" + raw(key) + "'");
  return v;
}

double Config::num(const std::string& key, double fallback) const { return has(key) ? num(key) : fallback; }

long long Config::integer(const std::string& key, long long fallback) const {
  if (!has(key)) return fallback;
  const double v = num(key);
  if (v != std::floor(v)) throw error(key, "expected an integer");
  return static_cast<long long>(v);
}

bool Config::flag(const std::string& key, bool fallback) const {
  if (!has(key)) return fallback;
  const auto& v = raw(key);
  if (v == "true" || v == "on" || v == "1") return true;
  if (v == "false" || v == "off" || v == "0") return false;
  throw error(key, "expected true/false");
}

Vec Config::list(const std::string& key) const {
  Vec out;
  std::string item;
  std::istringstream is(raw(key));
  while (std::getline(is, item, ',')) {
    const std::string t = trim(item);
    if (t.empty()) continue;
    double v = 0.0;
    if (!parse_double(t, v)) throw error(key, "bad list entry '" + t + "'");
    out.push_back(v);
  }
  return out;
}

Vec Config::list(const std::string& key, const Vec& fallback) const { return has(key) ? list(key) : fallback; }

void Config::reject_unused() const {
  std::string unknown;
  for (const auto& [key, _] : values_) {
    if (!used_.count(key)) unknown += (unknown.empty() ? "" : ", ") + key;
  }
  if (!unknown.empty()) throw ConfigError(origin_ + ": unknown keys: " + unknown);
}

SignalSpec signal_from_config(const Config& cfg, const std::string& prefix, int default_dim) {
  const int dim = static_cast<int>(cfg.integer(prefix + ".dim", default_dim));
  const SignalKind kind = parse_signal_kind(cfg.str(prefix + ".kind", "zero"));
  const auto seed = static_cast<std::uint64_t>(cfg.integer(prefix + ".seed", 0));
  if (cfg.has(prefix + ".bound")) {
    if (cfg.has(prefix + ".params")) throw ConfigError(prefix + ": give either params or bound, not both");
    return make_seeded_bounded(seed, dim, cfg.num(prefix + ".bound"), kind);
  }
  SignalSpec spec;
  spec.dim = dim;
  spec.kind = kind;
  spec.seed = seed;
  spec.params = cfg.list(prefix + ".params", {});
  validate(spec);
  return spec;
}

namespace {

PlantType parse_plant_type(const std::string& t) {
  for (auto p : {PlantType::worked_example, PlantType::polynomial, PlantType::finite_dim_analog, PlantType::pde}) {
    if (t == to_string(p)) return p;
  }
  throw ConfigError("unknown plant.type '" + t + "'");
}

InitialProfile parse_profile(const std::string& t) {
  for (auto p : {InitialProfile::zero, InitialProfile::sine, InitialProfile::parabola}) {
    if (t == to_string(p)) return p;
  }
  throw ConfigError("unknown plant.w0_profile '" + t + "'");
}

}  // namespace

Scenario scenario_from_config(const Config& cfg) {
  Scenario s;
  s.name = cfg.str("name", "scenario");
  s.seed = static_cast<std::uint64_t>(cfg.integer("seed", 0));

  auto& plant = s.plant;
  plant.type = parse_plant_type(cfg.str("plant.type"));
  const bool general = plant.type == PlantType::worked_example || plant.type == PlantType::polynomial;
  if (plant.type == PlantType::worked_example) {
    plant.bundle = worked_example_bundle();
  } else if (plant.type == PlantType::polynomial) {
    std::map<std::string, Polynomial> parts;
    for (const char* key : {"V", "k", "mu", "Q", "Phi", "R", "f", "g", "phi", "A", "h"}) {
      parts[key] = Polynomial::parse(cfg.str(std::string("bundle.") + key));
    }
    plant.bundle = polynomial_bundle(parts, ScalarClassFunction::parse(cfg.str("bundle.gamma")), cfg.num("bundle.r"),
                                     cfg.num("bundle.Lambda"));
  }
  plant.pde.p = cfg.num("plant.p", 1.0);
  if (plant.type == PlantType::pde) {
    plant.pde.n_interior = static_cast<int>(cfg.integer("plant.n_interior", 64));
    plant.pde.K_choice = parse_kernel_choice(cfg.str("plant.K_choice", "unstable-quadratic"));
    plant.pde.L_choice = parse_functional_choice(cfg.str("plant.L_choice", "negative-integral"));
    plant.pde.K_scale = cfg.num("plant.K_scale", 1.0);
    plant.w0_profile = parse_profile(cfg.str("plant.w0_profile", "zero"));
    plant.w0_scale = cfg.num("plant.w0_scale", 1.0);
  } else {
    const int l = general ? plant.bundle->l : 1;
    plant.w0 = cfg.list("plant.w0", Vec(static_cast<std::size_t>(l), 0.0));
  }
  const int n = general ? plant.bundle->n : 1;
  plant.y0 = cfg.list("plant.y0", Vec(static_cast<std::size_t>(n), 0.0));

  auto& ctl = s.controller;
  const std::string law = cfg.str("controller.law", general ? "general" : "pde");
  if (law == "general") {
    ctl.law = ControlLaw::general;
  } else if (law == "pde") {
    ctl.law = ControlLaw::pde;
  } else {
    throw ConfigError("unknown controller.law '" + law + "'");
  }
  ctl.params.epsilon = cfg.num("controller.epsilon");
  ctl.params.Gamma = cfg.num("controller.gamma_rate");
  ctl.params.a = cfg.num("controller.a");
  ctl.params.b = cfg.num("controller.b");
  // beta only enters the general law.
  ctl.params.beta = ctl.law == ControlLaw::general ? cfg.num("controller.beta") : cfg.num("controller.beta", 1.0);
  ctl.params.C = cfg.num("controller.C", 1.0);
  ctl.c = cfg.num("controller.c", 1.0);
  ctl.z0 = cfg.num("controller.z0", 0.0);
  ctl.z_max = cfg.num("controller.z_max", kDefaultZMax);
  if (plant.bundle) ctl.params.r = plant.bundle->r;

  const int m = general ? plant.bundle->m : 1;
  const int p_dim = general ? plant.bundle->p_dim : 2;
  const int q = general ? plant.bundle->q : 1;
  s.d = signal_from_config(cfg, "d", m);
  s.theta = signal_from_config(cfg, "theta", p_dim);
  s.delta = signal_from_config(cfg, "delta", q);

  auto& in = s.integrator;
  const std::string dt = cfg.str("integrator.dt", "0.001");
  if (dt == "auto") {
    in.dt_auto = true;
  } else {
    in.dt = cfg.num("integrator.dt");
  }
  in.t_end = cfg.num("integrator.t_end");
  in.sample_every = static_cast<int>(cfg.integer("integrator.sample_every", 1));
  in.cfl_safety = cfg.num("integrator.cfl_safety", 0.5);
  in.blowup_guard = cfg.num("integrator.blowup_guard", 1e12);
  in.stiffness_safety = cfg.num("integrator.stiffness_safety", 0.5);

  auto& v = s.verify;
  v.regulation = cfg.flag("verify.regulation", true);
  v.estimates = cfg.flag("verify.estimates", true);
  v.monitors = cfg.flag("verify.monitors", true);
  v.disc_tol = cfg.num("verify.disc_tol", v.disc_tol);
  v.abs_tol = cfg.num("verify.abs_tol", v.abs_tol);
  if (cfg.has("verify.tail_abs_tol")) v.tail_abs_tol = cfg.num("verify.tail_abs_tol");
  v.ln_slack = cfg.num("verify.ln_slack", v.ln_slack);
  v.settle_tol = cfg.num("verify.settle_tol", v.settle_tol);
  v.converge_tol = cfg.num("verify.converge_tol", v.converge_tol);
  v.tail_fraction = cfg.num("verify.tail_fraction", v.tail_fraction);
  v.monitor_factor = cfg.num("verify.monitor_factor", v.monitor_factor);
  v.max_sample_spacing = cfg.num("verify.max_sample_spacing", v.max_sample_spacing);
  if (!(v.tail_fraction > 0.0 && v.tail_fraction < 1.0)) throw ConfigError("verify.tail_fraction must be in (0,1)");

  cfg.reject_unused();
  validate_scenario(s);
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) { return scenario_from_config(Config::load(path)); }

}  // namespace dads
