#include "fleetplan/costs.hpp"

#include <stdexcept>

namespace fleetplan {

void CostParams::validate() const {
  const double fields[] = {run_cost_per_base_slot, switch_on_wear,
                           switch_off_wear,        switch_on_power,
                           switch_off_power,       consolidation_power};
  for (double f : fields)
    if (!(f >= 0)) throw std::invalid_argument("cost fields must be >= 0");
}

CostParams default_cost_params() {
  CostParams c;
  c.run_cost_per_base_slot = 7.0 / 120.0;
  c.switch_on_wear = 0.3;
  c.switch_off_wear = 0.2;
  c.switch_on_power = 0.02;
  c.switch_off_power = 0.005;
  c.consolidation_power = 0.015;
  return c;
}

CostParams beta_cost_params(double beta) {
  if (!(beta >= 0.0 && beta <= 1.0))
    throw std::invalid_argument("beta must be in [0, 1]");
  CostParams c;
  c.run_cost_per_base_slot = beta * (7.0 / 60.0);
  c.switch_on_wear = (1.0 - beta) * 0.6;
  c.switch_off_wear = (1.0 - beta) * 0.4;
  c.switch_on_power = beta * 0.04;
  c.switch_off_power = beta * 0.01;
  c.consolidation_power = beta * 0.03;
  return c;
}

}  // namespace fleetplan
