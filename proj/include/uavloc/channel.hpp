// Air-to-ground propagation model and synthesis of noisy range measurements.
//
// Path loss follows the elevation-angle LoS-probability model with empirical
// parameters; ranging noise is modeled directly as distance-proportional
// Gaussian error, optionally biased by a per-spot rubble loss.

#pragma once

#include <cstdint>
#include <vector>

#include "uavloc/rng.hpp"

namespace uavloc {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

struct ChannelParams {
    double eta_los_db = 2.3;    // excess LoS loss
    double eta_nlos_db = 34.0;  // excess NLoS loss
    double a_env = 27.23;       // environment constants of P(h,r)
    double b_env = 0.08;
    double f_c_hz = 1.8e9;      // carrier frequency
    double sigma_sh_db = 4.0;   // shadowing standard deviation

    void validate() const;
};

enum class RangeNoiseKind { Gaussian, Rayleigh };

struct RangingNoiseModel {
    RangeNoiseKind kind = RangeNoiseKind::Gaussian;
    double sigma0_m = 2.0;             // error std at zero distance
    double k_dist = 0.05;              // std growth per meter of true range
    bool rubble_enabled = false;
    double rubble_loss_max_db = 60.0;  // uniform per-spot excess loss
    double beta_rubble_m_per_db = 0.5; // loss-to-range-bias mapping
    double rayleigh_alpha = 0.1;       // Var = alpha * gamma for the Rayleigh variant
    std::uint64_t seed = 0;

    void validate() const;
};

// LoS probability; theta = arctan(h/r) evaluated in degrees.
double p_los(double h_m, double r_m, const ChannelParams& p);

// 20log10(4 pi f_c / c) + 20log10(sqrt(h^2+r^2)) + P*eta_los + (1-P)*eta_nlos
// + shadowing ~ N(0, sigma_sh^2), all in dB.
double path_loss_db(double h_m, double r_m, const ChannelParams& p, Rng& rng);

// max(0, gamma + beta*rubble_loss + eps), eps ~ N(0, (sigma0 + k*gamma)^2)
// for the Gaussian kind; the Rayleigh variant adds a Rayleigh draw with
// Var = alpha*gamma instead.
double synth_range(double true_gamma_m, const RangingNoiseModel& model,
                   double spot_rubble_loss_db, Rng& rng);

// One i.i.d. Uniform[0, rubble_loss_max] value per spot; all measurements at
// a spot share its loss. All zeros when rubble is disabled.
std::vector<double> draw_rubble_losses(int n_spots, const RangingNoiseModel& model, Rng& rng);

}  // namespace uavloc
