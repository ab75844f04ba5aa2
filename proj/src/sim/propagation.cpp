#include "stged/sim/propagation.hpp"

#include <cmath>
#include <numbers>

#include "stged/core/errors.hpp"

namespace stged::sim {

double crossover_distance(const TwoRayParams& p) {
  const double lambda = kWavelengthLightSpeed / p.frequency_hz;
  return 4.0 * std::numbers::pi * p.tx_height_m * p.rx_height_m / lambda;
}

double free_space_loss_db(double distance_m, double frequency_hz) {
  const double lambda = kWavelengthLightSpeed / frequency_hz;
  return 20.0 * std::log10(4.0 * std::numbers::pi * distance_m / lambda);
}

double two_ray_far_loss_db(double distance_m, double tx_height_m, double rx_height_m) {
  return 40.0 * std::log10(distance_m) - 20.0 * std::log10(tx_height_m * rx_height_m);
}

double path_loss_db(double distance_m, const TwoRayParams& p) {
  if (!(distance_m > 0.0)) throw DomainError("path_loss_db: distance must be positive");
  if (!(p.frequency_hz > 0.0 && p.tx_height_m > 0.0 && p.rx_height_m > 0.0))
    throw DomainError("path_loss_db: frequency and antenna heights must be positive");
  if (distance_m < crossover_distance(p)) return free_space_loss_db(distance_m, p.frequency_hz);
  return two_ray_far_loss_db(distance_m, p.tx_height_m, p.rx_height_m);
}

double propagation_delay_s(double distance_m) { return distance_m / kPropagationSpeed; }

}  // namespace stged::sim
