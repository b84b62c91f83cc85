#pragma once

namespace fleetplan {

// All cost coefficients are in cents. Switching costs are charged per on/off
// event and never scale with slot size; the run cost is per server per base
// slot, so energy over an aggregated slot of L base slots costs L times it.
struct CostParams {
  double run_cost_per_base_slot = 0.0;  // cents per server per base slot
  double switch_on_wear = 0.0;          // wear-and-tear, turn on
  double switch_off_wear = 0.0;         // wear-and-tear, turn off
  double switch_on_power = 0.0;         // power draw of turning on
  double switch_off_power = 0.0;        // power draw of turning off
  double consolidation_power = 0.0;     // extra source-server run time on off

  double switch_on_total() const { return switch_on_wear + switch_on_power; }
  double switch_off_total() const {
    return switch_off_wear + switch_off_power + consolidation_power;
  }

  void validate() const;  // all fields >= 0

  bool operator==(const CostParams&) const = default;
};

// Benchmark defaults: a 100 W server at 7 cents/kWh profiled in 5-minute
// slots gives 7/120 cents per slot; wear 0.3/0.2, switch power 0.02/0.005,
// consolidation 0.015 => totals 0.32 on, 0.22 off.
CostParams default_cost_params();

// Sensitivity model weighting the utility price by beta and wear by 1-beta:
// run = beta*7/60 per slot, on total = 0.6 - 0.56*beta (wear (1-beta)*0.6,
// power 0.04*beta), off total = 0.4 - 0.36*beta (wear (1-beta)*0.4, power
// 0.01*beta, consolidation 0.03*beta). beta_cost_params(0.5) equals
// default_cost_params exactly.
CostParams beta_cost_params(double beta);

}  // namespace fleetplan
