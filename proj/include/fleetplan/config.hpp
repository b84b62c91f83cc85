#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fleetplan/costs.hpp"

namespace fleetplan {

// Plain-text "key = value" configuration, '#' starts a comment. Values may be
// scalars, comma lists ("1,2,3") or inclusive ranges ("0:100").
class Config {
 public:
  static Config parse_file(const std::string& path);
  static Config parse(const std::string& text, const std::string& name = "config");

  bool has(const std::string& key) const;
  std::string get(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key, int fallback) const;
  std::vector<double> get_list(const std::string& key,
                               std::vector<double> fallback) const;
  std::vector<std::uint64_t> get_seed_list(
      const std::string& key, std::vector<std::uint64_t> fallback) const;

  const std::map<std::string, std::string>& entries() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
  std::string name_;
};

// Apply the cost override keys (run_cost_per_slot, switch_on_wear,
// switch_off_wear, switch_on_power, switch_off_power, consolidation_power) on
// top of a base parameter set; a "beta" key rebases onto beta_cost_params.
CostParams costs_from_config(const Config& config, const CostParams& base);

}  // namespace fleetplan
