#include "swt/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace swt {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

}  // namespace

Config Config::parse_string(const std::string& text, const std::string& origin) {
  Config cfg;
  cfg.origin_ = origin;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty())
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
    if (cfg.kv_.count(key))
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": duplicate key '" + key + "'");
    std::istringstream vs(line.substr(eq + 1));
    std::vector<std::string> toks;
    std::string t;
    while (vs >> t) toks.push_back(t);
    cfg.kv_[key] = std::move(toks);
  }
  return cfg;
}

Config Config::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_string(ss.str(), path);
}

bool Config::has(const std::string& key) const { return kv_.count(key) != 0; }

std::vector<std::string> Config::tokens(const std::string& key) const {
  auto it = kv_.find(key);
  if (it == kv_.end()) throw ConfigError("missing config key '" + key + "'");
  used_.insert(key);
  return it->second;
}

std::string Config::get_string(const std::string& key, const std::string& dflt) const {
  if (!has(key)) return dflt;
  const auto toks = tokens(key);
  if (toks.empty()) throw ConfigError(key + ": expected a value");
  std::string out = toks[0];
  for (std::size_t i = 1; i < toks.size(); ++i) out += " " + toks[i];
  return out;
}

double Config::get_double(const std::string& key, double dflt) const {
  if (!has(key)) return dflt;
  const auto toks = tokens(key);
  if (toks.size() != 1) throw ConfigError(key + ": expected one number");
  try {
    std::size_t used = 0;
    const double v = std::stod(toks[0], &used);
    if (used != toks[0].size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw ConfigError(key + ": '" + toks[0] + "' is not a number");
  }
}

std::int64_t Config::get_int(const std::string& key, std::int64_t dflt) const {
  if (!has(key)) return dflt;
  const auto toks = tokens(key);
  if (toks.size() != 1) throw ConfigError(key + ": expected one integer");
  try {
    std::size_t used = 0;
    const std::int64_t v = std::stoll(toks[0], &used);
    if (used != toks[0].size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw ConfigError(key + ": '" + toks[0] + "' is not an integer");
  }
}

bool Config::get_bool(const std::string& key, bool dflt) const {
  if (!has(key)) return dflt;
  const auto toks = tokens(key);
  if (toks.size() == 1) {
    if (toks[0] == "true" || toks[0] == "1" || toks[0] == "on") return true;
    if (toks[0] == "false" || toks[0] == "0" || toks[0] == "off") return false;
  }
  throw ConfigError(key + ": expected true/false");
}

std::vector<std::int64_t> Config::get_ints(const std::string& key, int count) const {
  const auto toks = tokens(key);
  if (count >= 0 && toks.size() != static_cast<std::size_t>(count))
    throw ConfigError(key + ": expected " + std::to_string(count) + " integers, got " +
                      std::to_string(toks.size()));
  std::vector<std::int64_t> out;
  for (const auto& t : toks) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(t, &used));
      if (used != t.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw ConfigError(key + ": '" + t + "' is not an integer");
    }
  }
  return out;
}

std::vector<double> Config::get_doubles(const std::string& key, int count) const {
  const auto toks = tokens(key);
  if (count >= 0 && toks.size() != static_cast<std::size_t>(count))
    throw ConfigError(key + ": expected " + std::to_string(count) + " numbers, got " +
                      std::to_string(toks.size()));
  std::vector<double> out;
  for (const auto& t : toks) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(t, &used));
      if (used != t.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw ConfigError(key + ": '" + t + "' is not a number");
    }
  }
  return out;
}

void Config::reject_unknown() const {
  for (const auto& [key, _] : kv_)
    if (!used_.count(key)) throw ConfigError("unknown config key '" + key + "'");
}

namespace {

KSpec parse_k(const Config& cfg) {
  KSpec k;
  if (!cfg.has("geometry.k")) return k;
  const auto toks = cfg.tokens("geometry.k");
  if (toks.empty()) throw ConfigError("geometry.k: expected 'constant V' or 'bump ...'");
  auto num = [&](std::size_t i) {
    try {
      return std::stod(toks.at(i));
    } catch (const std::exception&) {
      throw ConfigError("geometry.k: token " + std::to_string(i + 1) + " is not a number");
    }
  };
  if (toks[0] == "constant") {
    if (toks.size() != 2) throw ConfigError("geometry.k: constant takes one value");
    k.kind = KSpec::Kind::kConstant;
    k.constant = num(1);
    return k;
  }
  if (toks[0] == "bump") {
    if (toks.size() != 8)
      throw ConfigError("geometry.k: bump takes center(4) radius depth base");
    k.kind = KSpec::Kind::kBump;
    for (int i = 0; i < 4; ++i) k.center[i] = num(1 + i);
    k.radius = num(5);
    k.depth = num(6);
    k.base = num(7);
    if (!(k.radius > 0.0)) throw ConfigError("geometry.k: bump radius must be > 0");
    return k;
  }
  throw ConfigError("geometry.k: unknown kind '" + toks[0] + "'");
}

FieldInit parse_field(const Config& cfg, const std::string& key, bool spinor) {
  FieldInit f;
  if (!cfg.has(key)) {
    if (!spinor) f.kind = FieldInit::Kind::kZero;
    return f;
  }
  const auto toks = cfg.tokens(key);
  if (toks.empty()) throw ConfigError(key + ": expected an initializer");
  auto num = [&](std::size_t i) {
    try {
      return std::stod(toks.at(i));
    } catch (const std::exception&) {
      throw ConfigError(key + ": token " + std::to_string(i + 1) + " is not a number");
    }
  };
  const std::string& kind = toks[0];
  if (kind == "zero" || kind == "none") {
    if (toks.size() != 1) throw ConfigError(key + ": '" + kind + "' takes no arguments");
    f.kind = FieldInit::Kind::kZero;
  } else if (kind == "constant" && spinor) {
    if (toks.size() != 5) throw ConfigError(key + ": constant takes re1 im1 re2 im2");
    f.kind = FieldInit::Kind::kConstant;
    f.constant = Spinor{{num(1), num(2)}, {num(3), num(4)}};
  } else if (kind == "random") {
    if (toks.size() != 2) throw ConfigError(key + ": random takes an amplitude");
    f.kind = FieldInit::Kind::kRandom;
    f.amp = num(1);
  } else if (kind == "random_smooth") {
    if (toks.size() != 2 && toks.size() != 3)
      throw ConfigError(key + ": random_smooth takes amplitude [cutoff]");
    f.kind = FieldInit::Kind::kRandomSmooth;
    f.amp = num(1);
    if (toks.size() == 3) {
      f.cutoff = static_cast<int>(num(2));
      if (f.cutoff < 0 || f.cutoff > 6) throw ConfigError(key + ": cutoff must be in [0,6]");
    }
  } else {
    throw ConfigError(key + ": unknown initializer '" + kind + "'");
  }
  return f;
}

}  // namespace

ExperimentConfig experiment_from(const Config& cfg) {
  ExperimentConfig ec;
  if (cfg.has("geometry.dims")) {
    const auto d = cfg.get_ints("geometry.dims", 4);
    for (int i = 0; i < 4; ++i) {
      if (d[i] < 4 || d[i] > 256)
        throw ConfigError("geometry.dims: entries must be in [4,256]");
      ec.dims[i] = static_cast<int>(d[i]);
    }
  }
  if (cfg.has("geometry.spacing")) {
    const auto s = cfg.get_doubles("geometry.spacing", 4);
    for (int i = 0; i < 4; ++i) {
      if (!(s[i] > 0.0)) throw ConfigError("geometry.spacing: entries must be > 0");
      ec.spacing[i] = s[i];
    }
  } else {
    for (int i = 0; i < 4; ++i) ec.spacing[i] = 1.0 / ec.dims[i];
  }
  ec.k = parse_k(cfg);

  if (cfg.has("sector.flux")) {
    const auto fl = cfg.get_ints("sector.flux", 6);
    for (int p = 0; p < 6; ++p) {
      if (fl[p] % 2 != 0)
        throw ConfigError("sector.flux: entries must be even (characteristic class)");
      if (std::abs(fl[p]) > 64) throw ConfigError("sector.flux: entries must be in [-64,64]");
      ec.flux[p] = static_cast<int>(fl[p]);
    }
  }
  ec.fluctuation = parse_field(cfg, "sector.fluctuation", false);
  if (ec.fluctuation.kind == FieldInit::Kind::kConstant)
    throw ConfigError("sector.fluctuation: constant is not a valid initializer");
  ec.spinor = parse_field(cfg, "spinor.init", true);

  ec.flow.max_iters = static_cast<int>(cfg.get_int("flow.max_iters", ec.flow.max_iters));
  if (ec.flow.max_iters < 1 || ec.flow.max_iters > 2000000)
    throw ConfigError("flow.max_iters: must be in [1, 2e6]");
  ec.flow.grad_tol = cfg.get_double("flow.grad_tol", ec.flow.grad_tol);
  if (!(ec.flow.grad_tol > 0.0)) throw ConfigError("flow.grad_tol: must be > 0");
  ec.flow.eta0 = cfg.get_double("flow.eta0", ec.flow.eta0);
  if (!(ec.flow.eta0 > 0.0)) throw ConfigError("flow.eta0: must be > 0");
  ec.flow.gauge_fix = cfg.get_bool("flow.gauge_fix", ec.flow.gauge_fix);
  ec.flow.eps_monopole = cfg.get_double("flow.eps_monopole", ec.flow.eps_monopole);
  ec.flow.eps_phi = cfg.get_double("flow.eps_phi", ec.flow.eps_phi);
  if (!(ec.flow.eps_phi > 0.0)) throw ConfigError("flow.eps_phi: must be > 0");
  ec.flow.trace_every = static_cast<int>(cfg.get_int("flow.trace_every", ec.flow.trace_every));
  if (ec.flow.trace_every < 1) throw ConfigError("flow.trace_every: must be >= 1");

  ec.screen.form = cfg.get_string("screen.form", ec.screen.form);
  ec.screen.bound = static_cast<int>(cfg.get_int("screen.bound", ec.screen.bound));
  if (ec.screen.bound < 0) throw ConfigError("screen.bound: must be >= 0");
  ec.screen.volume = cfg.get_double("screen.volume", ec.screen.volume);
  ec.screen.k_minus = cfg.get_double("screen.k_minus", ec.screen.k_minus);

  const std::int64_t seed = cfg.get_int("seed", static_cast<std::int64_t>(ec.seed));
  if (seed < 0) throw ConfigError("seed: must be >= 0");
  ec.seed = static_cast<std::uint64_t>(seed);
  ec.parallel = cfg.get_bool("parallel", ec.parallel);
  ec.clifford_scale = cfg.get_double("debug.clifford_scale", 1.0);
  if (!(ec.clifford_scale > 0.0)) throw ConfigError("debug.clifford_scale: must be > 0");

  cfg.reject_unknown();
  return ec;
}

ExperimentConfig load_experiment(const std::string& path) {
  return experiment_from(Config::parse_file(path));
}

Geometry build_geometry(const ExperimentConfig& ec) {
  const Grid g = Grid::make(ec.dims, ec.spacing);
  ScalarField k(g.sites, 0.0);
  if (ec.k.kind == KSpec::Kind::kConstant) {
    for (auto& v : k) v = ec.k.constant;
  } else {
    for (std::int64_t i = 0; i < g.sites; ++i) {
      const auto x = g.coords(i);
      double r_sq = 0.0;
      for (int mu = 0; mu < 4; ++mu) {
        double d = std::fabs(x[mu] * g.h[mu] - ec.k.center[mu]);
        d = std::min(d, g.len[mu] - d);  // periodic distance
        r_sq += d * d;
      }
      const double t = r_sq / (ec.k.radius * ec.k.radius);
      const double moll = t < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - t)) : 0.0;
      k[i] = ec.k.base - ec.k.depth * moll;
    }
  }
  return make_geometry(ec.dims, ec.spacing, k);
}

Connection build_connection(const ExperimentConfig& ec, const Geometry& geom, Rng& rng) {
  Connection c = make_connection(geom.grid, ec.flux);
  switch (ec.fluctuation.kind) {
    case FieldInit::Kind::kZero:
      break;
    case FieldInit::Kind::kRandom:
      c.a = random_one_form(geom.grid, rng, ec.fluctuation.amp);
      break;
    case FieldInit::Kind::kRandomSmooth:
      c.a = smooth_one_form(geom.grid, rng, ec.fluctuation.amp, ec.fluctuation.cutoff);
      break;
    default:
      throw ConfigError("sector.fluctuation: unsupported initializer");
  }
  return c;
}

SpinorField build_spinor(const ExperimentConfig& ec, const Geometry& geom, Rng& rng) {
  switch (ec.spinor.kind) {
    case FieldInit::Kind::kZero:
      return SpinorField(geom.grid.sites);
    case FieldInit::Kind::kConstant:
      return SpinorField(geom.grid.sites, ec.spinor.constant);
    case FieldInit::Kind::kRandom:
      return random_spinor_field(geom.grid, rng, ec.spinor.amp);
    case FieldInit::Kind::kRandomSmooth:
      return smooth_spinor_field(geom.grid, rng, ec.spinor.amp, ec.spinor.cutoff);
  }
  throw ConfigError("spinor.init: unsupported initializer");
}

}  // namespace swt
