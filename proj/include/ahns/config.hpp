#pragma once

#include <cctype>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ahns/run.hpp"

namespace ahns {

// Reads flat INI-style configs:
//
//   # comment
//   [grid]
//   n1 = 32
//   box_length = 6.283185307179586
//
// Sections: [grid] n1 n2 n3 box_length; [indices] alpha beta gamma;
// [time] dt t_end integrator; [initial] kind amplitude seed spectrum_slope;
// [diagnostics] every sobolev_order_s grad_sq_ceiling.
//
// Every key is optional (defaults come from RunConfig), but unknown sections,
// unknown keys, duplicates, and malformed values are hard errors: a config
// that silently ignores a typo is worse than one that refuses to load.

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

inline std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

inline double parse_double_value(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double x = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument("trailing characters");
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config: key '" + key + "' expects a number, got '" + value + "'");
  }
}

inline long long parse_int_value(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const long long x = std::stoll(value, &used);
    if (used != value.size()) throw std::invalid_argument("trailing characters");
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config: key '" + key + "' expects an integer, got '" + value + "'");
  }
}

inline std::uint64_t parse_u64_value(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const unsigned long long x = std::stoull(value, &used);
    if (used != value.size()) throw std::invalid_argument("trailing characters");
    return static_cast<std::uint64_t>(x);
  } catch (const std::exception&) {
    throw ConfigError("config: key '" + key + "' expects a non-negative integer, got '" +
                      value + "'");
  }
}

inline int parse_positive_int(const std::string& key, const std::string& value) {
  const long long x = parse_int_value(key, value);
  if (x < 1 || x > (1LL << 30))
    throw ConfigError("config: key '" + key + "' out of range: " + value);
  return static_cast<int>(x);
}

}  // namespace detail

inline RunConfig parse_config(std::string_view text) {
  RunConfig cfg;
  std::string section;
  std::istringstream lines{std::string(text)};
  std::string raw;
  int lineno = 0;
  std::vector<std::string> seen;

  auto mark_seen = [&](const std::string& full_key) {
    for (const std::string& s : seen)
      if (s == full_key)
        throw ConfigError("config: duplicate key '" + full_key + "' (line " +
                          std::to_string(lineno) + ")");
    seen.push_back(full_key);
  };

  while (std::getline(lines, raw)) {
    ++lineno;
    std::string line = raw;
    if (const std::size_t hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("config: malformed section header at line " +
                          std::to_string(lineno) + ": '" + raw + "'");
      section = detail::trim(std::string_view(line).substr(1, line.size() - 2));
      if (section != "grid" && section != "indices" && section != "time" &&
          section != "initial" && section != "diagnostics")
        throw ConfigError("config: unknown section '[" + section + "]' (line " +
                          std::to_string(lineno) + ")");
      continue;
    }

    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config: expected 'key = value' at line " + std::to_string(lineno) +
                        ": '" + raw + "'");
    const std::string key = detail::trim(std::string_view(line).substr(0, eq));
    const std::string value = detail::trim(std::string_view(line).substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError("config: empty key or value at line " + std::to_string(lineno));
    if (section.empty())
      throw ConfigError("config: key '" + key + "' appears before any [section] (line " +
                        std::to_string(lineno) + ")");
    if (key == "theorem_regime")
      throw ConfigError(
          "config: 'theorem_regime' is derived from alpha/beta/gamma and cannot be set");

    const std::string full_key = section + "." + key;
    mark_seen(full_key);

    bool known = true;
    if (section == "grid") {
      if (key == "n1")
        cfg.grid.n1 = detail::parse_positive_int(full_key, value);
      else if (key == "n2")
        cfg.grid.n2 = detail::parse_positive_int(full_key, value);
      else if (key == "n3")
        cfg.grid.n3 = detail::parse_positive_int(full_key, value);
      else if (key == "box_length")
        cfg.grid.box_length = detail::parse_double_value(full_key, value);
      else
        known = false;
    } else if (section == "indices") {
      if (key == "alpha")
        cfg.indices.alpha = detail::parse_double_value(full_key, value);
      else if (key == "beta")
        cfg.indices.beta = detail::parse_double_value(full_key, value);
      else if (key == "gamma")
        cfg.indices.gamma = detail::parse_double_value(full_key, value);
      else
        known = false;
    } else if (section == "time") {
      if (key == "dt")
        cfg.dt = detail::parse_double_value(full_key, value);
      else if (key == "t_end")
        cfg.t_end = detail::parse_double_value(full_key, value);
      else if (key == "integrator") {
        try {
          cfg.integrator = parse_integrator(value);
        } catch (const std::exception& e) {
          throw ConfigError(std::string("config: ") + e.what());
        }
      } else
        known = false;
    } else if (section == "initial") {
      if (key == "kind") {
        try {
          cfg.initial.kind = parse_initial_kind(value);
        } catch (const std::exception& e) {
          throw ConfigError(std::string("config: ") + e.what());
        }
      } else if (key == "amplitude")
        cfg.initial.amplitude = detail::parse_double_value(full_key, value);
      else if (key == "seed")
        cfg.initial.seed = detail::parse_u64_value(full_key, value);
      else if (key == "spectrum_slope")
        cfg.initial.spectrum_slope = detail::parse_double_value(full_key, value);
      else
        known = false;
    } else if (section == "diagnostics") {
      if (key == "every")
        cfg.diagnostics_every = detail::parse_positive_int(full_key, value);
      else if (key == "sobolev_order_s")
        cfg.sobolev_order_s = detail::parse_double_value(full_key, value);
      else if (key == "grad_sq_ceiling")
        cfg.grad_sq_ceiling = detail::parse_double_value(full_key, value);
      else
        known = false;
    }
    if (!known)
      throw ConfigError("config: unknown key '" + full_key + "' (line " +
                        std::to_string(lineno) + ")");
  }

  try {
    cfg.validate();
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return cfg;
}

struct LoadedConfig {
  std::string text;  // verbatim file contents, embedded in outputs
  RunConfig config;
};

inline LoadedConfig load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  LoadedConfig lc;
  lc.text = ss.str();
  lc.config = parse_config(lc.text);
  return lc;
}

// Round-trippable rendering of a config (used when a run is driven by
// programmatic settings rather than a file).
inline std::string render_config(const RunConfig& c) {
  std::ostringstream os;
  os.precision(17);
  os << "[grid]\n"
     << "n1 = " << c.grid.n1 << "\n"
     << "n2 = " << c.grid.n2 << "\n"
     << "n3 = " << c.grid.n3 << "\n"
     << "box_length = " << c.grid.box_length << "\n\n"
     << "[indices]\n"
     << "alpha = " << c.indices.alpha << "\n"
     << "beta = " << c.indices.beta << "\n"
     << "gamma = " << c.indices.gamma << "\n\n"
     << "[time]\n"
     << "dt = " << c.dt << "\n"
     << "t_end = " << c.t_end << "\n"
     << "integrator = " << integrator_name(c.integrator) << "\n\n"
     << "[initial]\n"
     << "kind = " << initial_kind_name(c.initial.kind) << "\n"
     << "amplitude = " << c.initial.amplitude << "\n"
     << "seed = " << c.initial.seed << "\n"
     << "spectrum_slope = " << c.initial.spectrum_slope << "\n\n"
     << "[diagnostics]\n"
     << "every = " << c.diagnostics_every << "\n"
     << "sobolev_order_s = " << c.sobolev_order_s << "\n"
     << "grad_sq_ceiling = " << c.grad_sq_ceiling << "\n";
  return os.str();
}

}  // namespace ahns
