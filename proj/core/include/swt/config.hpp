#pragma once

#include "swt/flow.hpp"
#include "swt/gauge.hpp"
#include "swt/grid.hpp"
#include "swt/rng.hpp"

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace swt {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Flat dotted-key config format: one `key = value...` per line, '#' comments.
class Config {
 public:
  static Config parse_file(const std::string& path);
  static Config parse_string(const std::string& text, const std::string& origin = "<string>");

  bool has(const std::string& key) const;
  std::vector<std::string> tokens(const std::string& key) const;  // throws if missing

  std::string get_string(const std::string& key, const std::string& dflt) const;
  double get_double(const std::string& key, double dflt) const;
  std::int64_t get_int(const std::string& key, std::int64_t dflt) const;
  bool get_bool(const std::string& key, bool dflt) const;
  std::vector<std::int64_t> get_ints(const std::string& key, int count) const;
  std::vector<double> get_doubles(const std::string& key, int count) const;

  // Throws ConfigError if any key was never read (typo protection).
  void reject_unknown() const;

 private:
  std::map<std::string, std::vector<std::string>> kv_;
  mutable std::set<std::string> used_;
  std::string origin_;
};

struct KSpec {
  enum class Kind { kConstant, kBump } kind = Kind::kConstant;
  double constant = 0.0;
  // bump: k(x) = base - depth * mollifier(|x - center| / radius)
  std::array<double, 4> center{};
  double radius = 0.25;
  double depth = 0.0;
  double base = 0.0;
};

struct FieldInit {
  enum class Kind { kZero, kConstant, kRandom, kRandomSmooth } kind = Kind::kZero;
  Spinor constant{};  // spinor init only
  double amp = 0.0;
  int cutoff = 2;
};

struct ScreenSpec {
  std::string form = "torus";
  int bound = 3;
  double volume = -1.0;   // < 0: use the configured geometry's volume
  double k_minus = -1.0;  // < 0: use the configured geometry's k_minus
};

struct ExperimentConfig {
  std::array<int, 4> dims{8, 8, 8, 8};
  std::array<double, 4> spacing{};  // zeros: default 1/dims per axis
  KSpec k;
  FluxMatrix flux{};
  FieldInit fluctuation;  // kind zero|random|random_smooth; amp/cutoff
  FieldInit spinor;
  FlowOptions flow;
  ScreenSpec screen;
  std::uint64_t seed = 12345;
  bool parallel = false;
  double clifford_scale = 1.0;  // fault-injection hook for the identity battery
};

ExperimentConfig load_experiment(const std::string& path);
ExperimentConfig experiment_from(const Config& cfg);

Geometry build_geometry(const ExperimentConfig& ec);
Connection build_connection(const ExperimentConfig& ec, const Geometry& geom, Rng& rng);
SpinorField build_spinor(const ExperimentConfig& ec, const Geometry& geom, Rng& rng);

}  // namespace swt
