#include "fleetplan/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fleetplan {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

Config Config::parse(const std::string& text, const std::string& name) {
  Config cfg;
  cfg.name_ = name;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error(name + ":" + std::to_string(lineno) +
                               ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw std::runtime_error(name + ":" + std::to_string(lineno) +
                               ": empty key");
    cfg.values_[key] = value;
  }
  return cfg;
}

Config Config::parse_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open config: " + path);
  std::ostringstream buf;
  buf << f.rdbuf();
  return parse(buf.str(), path);
}

bool Config::has(const std::string& key) const { return values_.count(key) > 0; }

std::string Config::get(const std::string& key,
                        const std::string& fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

double Config::get_double(const std::string& key, double fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  try {
    std::size_t pos = 0;
    const double v = std::stod(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument("junk");
    return v;
  } catch (const std::exception&) {
    throw std::runtime_error(name_ + ": bad numeric value for " + key + ": " +
                             it->second);
  }
}

int Config::get_int(const std::string& key, int fallback) const {
  const double v = get_double(key, fallback);
  const int i = static_cast<int>(v);
  if (v != i)
    throw std::runtime_error(name_ + ": expected integer for " + key);
  return i;
}

std::vector<double> Config::get_list(const std::string& key,
                                     std::vector<double> fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  std::vector<double> out;
  for (const auto& piece : split(it->second, ',')) {
    const std::string p = trim(piece);
    if (p.empty()) continue;
    try {
      out.push_back(std::stod(p));
    } catch (const std::exception&) {
      throw std::runtime_error(name_ + ": bad list entry for " + key + ": " + p);
    }
  }
  if (out.empty())
    throw std::runtime_error(name_ + ": empty list for " + key);
  return out;
}

std::vector<std::uint64_t> Config::get_seed_list(
    const std::string& key, std::vector<std::uint64_t> fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  const std::string v = trim(it->second);
  std::vector<std::uint64_t> out;
  const auto colon = v.find(':');
  try {
    if (colon != std::string::npos) {
      const std::uint64_t a = std::stoull(trim(v.substr(0, colon)));
      const std::uint64_t b = std::stoull(trim(v.substr(colon + 1)));
      if (b < a) throw std::invalid_argument("range");
      for (std::uint64_t s = a; s <= b; ++s) out.push_back(s);
    } else {
      for (const auto& piece : split(v, ',')) {
        const std::string p = trim(piece);
        if (!p.empty()) out.push_back(std::stoull(p));
      }
    }
  } catch (const std::exception&) {
    throw std::runtime_error(name_ + ": bad seed list for " + key + ": " + v);
  }
  if (out.empty()) throw std::runtime_error(name_ + ": empty seeds for " + key);
  return out;
}

CostParams costs_from_config(const Config& config, const CostParams& base) {
  CostParams c = base;
  if (config.has("beta")) c = beta_cost_params(config.get_double("beta", 0.5));
  c.run_cost_per_base_slot =
      config.get_double("run_cost_per_slot", c.run_cost_per_base_slot);
  c.switch_on_wear = config.get_double("switch_on_wear", c.switch_on_wear);
  c.switch_off_wear = config.get_double("switch_off_wear", c.switch_off_wear);
  c.switch_on_power = config.get_double("switch_on_power", c.switch_on_power);
  c.switch_off_power =
      config.get_double("switch_off_power", c.switch_off_power);
  c.consolidation_power =
      config.get_double("consolidation_power", c.consolidation_power);
  c.validate();
  return c;
}

}  // namespace fleetplan
