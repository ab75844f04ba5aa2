#pragma once

namespace stged::sim {

/// Speed of light used for the wavelength (lambda = c / f), following the
/// usual two-ray model convention of c = 3e8 m/s.
inline constexpr double kWavelengthLightSpeed = 3.0e8;
/// Signal speed used for propagation delay.
inline constexpr double kPropagationSpeed = 2.998e8;
/// Distances below this are treated as this when computing path loss.
inline constexpr double kMinLossDistance_m = 1.0;

struct TwoRayParams {
  double frequency_hz = 3.0e8;
  double tx_height_m = 1.5;
  double rx_height_m = 1.5;
};

/// d_c = 4 pi ht hr / lambda.
double crossover_distance(const TwoRayParams& p);
/// 20 log10(4 pi d / lambda).
double free_space_loss_db(double distance_m, double frequency_hz);
/// 40 log10(d) - 20 log10(ht hr).
double two_ray_far_loss_db(double distance_m, double tx_height_m, double rx_height_m);

/// Free space below the crossover distance, two-ray far field at and beyond
/// it; the two branches meet at d_c. Throws DomainError for distance <= 0.
double path_loss_db(double distance_m, const TwoRayParams& p);

double propagation_delay_s(double distance_m);

}  // namespace stged::sim
