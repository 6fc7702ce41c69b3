#include "hypsig/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hypsig/errors.hpp"

namespace hypsig {

std::string to_string(Mode m) {
  switch (m) {
    case Mode::Simulate: return "simulate";
    case Mode::ChainExact: return "chain_exact";
    case Mode::Spectrum: return "spectrum";
    case Mode::WardCheck: return "ward_check";
    case Mode::CrossValidate: return "cross_validate";
  }
  return "?";
}

Mode mode_from_string(const std::string& s) {
  if (s == "simulate") return Mode::Simulate;
  if (s == "chain_exact") return Mode::ChainExact;
  if (s == "spectrum") return Mode::Spectrum;
  if (s == "ward_check") return Mode::WardCheck;
  if (s == "cross_validate") return Mode::CrossValidate;
  throw ConfigError("unknown mode: '" + s + "'");
}

namespace {

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(ch))) {
      cur.push_back(ch);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

long parse_long(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const long x = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': expected integer, got '" + v + "'");
  }
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size() || !std::isfinite(x)) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("key '" + key + "': expected number, got '" + v + "'");
  }
}

void apply_key(ExperimentConfig& c, const std::string& key,
               const std::string& value) {
  if (key == "mode") {
    c.mode = mode_from_string(value);
  } else if (key == "N") {
    c.target_dim = static_cast<int>(parse_long(key, value));
  } else if (key == "dims") {
    c.dims.clear();
    for (const auto& t : split_list(value))
      c.dims.push_back(static_cast<int>(parse_long(key, t)));
  } else if (key == "beta") {
    c.beta = parse_double(key, value);
  } else if (key == "alpha") {
    c.alpha_grid.clear();
    for (const auto& t : split_list(value))
      c.alpha_grid.push_back(parse_double(key, t));
  } else if (key == "gauge_fix") {
    c.gauge = gauge_fix_from_string(value);
  } else if (key == "epsilon") {
    c.epsilon = parse_double(key, value);
  } else if (key == "sweeps") {
    c.sweeps = parse_long(key, value);
  } else if (key == "therm") {
    c.thermalization = parse_long(key, value);
  } else if (key == "measure_every") {
    c.measure_every = parse_long(key, value);
  } else if (key == "seed") {
    c.seed = static_cast<std::uint64_t>(parse_long(key, value));
  } else if (key == "kernel") {
    if (value != "heat_bath" && value != "metropolis")
      throw ConfigError("key 'kernel': expected heat_bath or metropolis");
    c.kernel = value;
  } else if (key == "scale") {
    c.metropolis_scale = parse_double(key, value);
  } else if (key == "rho_max") {
    c.rho_max = parse_double(key, value);
  } else if (key == "nodes") {
    c.n_rho = static_cast<int>(parse_long(key, value));
  } else if (key == "modes") {
    c.n_modes = static_cast<int>(parse_long(key, value));
  } else if (key == "L") {
    c.chain_lengths.clear();
    for (const auto& t : split_list(value))
      c.chain_lengths.push_back(static_cast<int>(parse_long(key, t)));
  } else if (key == "out") {
    c.out_dir = value;
  } else {
    throw ConfigError("unknown key '" + key + "'");
  }
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

}  // namespace

void ExperimentConfig::validate() const {
  if (target_dim < kMinTargetDim || target_dim > kMaxTargetDim)
    throw ConfigError("key 'N': must be in 2..8");
  if (dims.empty() || dims.size() > 3)
    throw ConfigError("key 'dims': need 1 to 3 extents");
  std::int64_t total = 1;
  for (int e : dims) {
    if (e < 1) throw ConfigError("key 'dims': extents must be positive");
    total *= e;
  }
  if (total > LatticeSpec::kMaxSites)
    throw ConfigError("key 'dims': more than 2^26 sites");
  if (!(beta > 0.0)) throw ConfigError("key 'beta': must be > 0");
  if ((mode == Mode::Simulate || mode == Mode::WardCheck ||
       mode == Mode::CrossValidate) &&
      beta < 0.05)
    throw ConfigError("key 'beta': smallest supported value for Monte Carlo "
                      "modes is 0.05");
  if (alpha_grid.empty()) throw ConfigError("key 'alpha': need at least one value");
  if (epsilon < 0.0) throw ConfigError("key 'epsilon': must be >= 0");
  if (sweeps < 0) throw ConfigError("key 'sweeps': must be >= 0");
  if (measure_every < 1) throw ConfigError("key 'measure_every': must be >= 1");
  if (metropolis_scale <= 0.0) throw ConfigError("key 'scale': must be > 0");
  if (rho_max < 0.0) throw ConfigError("key 'rho_max': must be >= 0");
  if (n_rho < 8) throw ConfigError("key 'nodes': must be >= 8");
  if (n_modes < 1) throw ConfigError("key 'modes': must be >= 1");
  for (int L : chain_lengths)
    if (L < 0) throw ConfigError("key 'L': lengths must be >= 0");
  if ((mode == Mode::ChainExact || mode == Mode::CrossValidate) &&
      target_dim != 2)
    throw ConfigError("key 'N': chain modes are exact for N = 2 only");
  if (mode == Mode::CrossValidate && dims.size() != 1)
    throw ConfigError("key 'dims': cross_validate needs a one-dimensional lattice");
}

UpdateKernel ExperimentConfig::update_kernel() const {
  return kernel == "heat_bath" ? UpdateKernel::heat_bath()
                               : UpdateKernel::metropolis(metropolis_scale);
}

double ExperimentConfig::effective_rho_max() const {
  return rho_max > 0.0 ? rho_max : 30.0 + 10.0 / beta;
}

std::string ExperimentConfig::to_json() const {
  nlohmann::json j;
  j["mode"] = to_string(mode);
  j["N"] = target_dim;
  j["dims"] = dims;
  j["beta"] = beta;
  j["alpha"] = alpha_grid;
  j["gauge_fix"] = to_string(gauge);
  j["epsilon"] = epsilon;
  j["sweeps"] = sweeps;
  j["therm"] = thermalization;
  j["measure_every"] = measure_every;
  j["seed"] = seed;
  j["kernel"] = kernel;
  j["scale"] = metropolis_scale;
  j["rho_max"] = rho_max;
  j["nodes"] = n_rho;
  j["modes"] = n_modes;
  j["L"] = chain_lengths;
  j["out"] = out_dir;
  return j.dump(2);
}

ExperimentConfig ExperimentConfig::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config JSON parse error: ") + e.what());
  }
  ExperimentConfig c;
  bool mode_seen = false;
  for (const auto& [key, val] : j.items()) {
    if (key == "mode") mode_seen = true;
    if (key == "dims" || key == "alpha" || key == "L") {
      std::string list;
      for (const auto& v : val) {
        if (!list.empty()) list += ',';
        if (v.is_number_integer())
          list += std::to_string(v.get<long>());
        else {
          std::ostringstream os;
          os.precision(17);
          os << v.get<double>();
          list += os.str();
        }
      }
      apply_key(c, key, list);
    } else if (val.is_string()) {
      apply_key(c, key, val.get<std::string>());
    } else if (val.is_number_integer() || val.is_number_unsigned()) {
      apply_key(c, key, std::to_string(val.get<long long>()));
    } else {
      std::ostringstream os;
      os.precision(17);
      os << val.get<double>();
      apply_key(c, key, os.str());
    }
  }
  if (!mode_seen) throw ConfigError("key 'mode': required but missing");
  c.validate();
  return c;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  const std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{')
    return ExperimentConfig::from_json(text);

  ExperimentConfig c;
  bool mode_seen = false;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[' && line.back() == ']') continue;  // section header
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "mode") mode_seen = true;
    apply_key(c, key, value);
  }
  if (!mode_seen) throw ConfigError("key 'mode': required but missing");
  c.validate();
  return c;
}

ExperimentConfig apply_overrides(
    ExperimentConfig base, const std::map<std::string, std::string>& overrides) {
  for (const auto& [key, value] : overrides) apply_key(base, key, value);
  base.validate();
  return base;
}

std::uint64_t fnv1a_hash(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace hypsig
