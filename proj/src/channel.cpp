#include "uavloc/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace uavloc {

void ChannelParams::validate() const {
    if (!(f_c_hz > 0.0)) throw std::invalid_argument("channel: carrier frequency must be > 0");
    if (sigma_sh_db < 0.0) throw std::invalid_argument("channel: sigma_sh must be >= 0");
}

void RangingNoiseModel::validate() const {
    if (sigma0_m < 0.0) throw std::invalid_argument("noise: sigma0 must be >= 0");
    if (k_dist < 0.0) throw std::invalid_argument("noise: k_dist must be >= 0");
    if (rubble_loss_max_db < 0.0) throw std::invalid_argument("noise: rubble_loss_max must be >= 0");
}

double p_los(double h_m, double r_m, const ChannelParams& p) {
    if (!(h_m > 0.0)) throw std::invalid_argument("p_los: altitude must be > 0");
    if (r_m < 0.0) throw std::invalid_argument("p_los: distance must be >= 0");
    const double theta_deg = std::atan2(h_m, r_m) * 180.0 / M_PI;
    return 1.0 / (1.0 + p.a_env * std::exp(-p.b_env * (theta_deg - p.a_env)));
}

double path_loss_db(double h_m, double r_m, const ChannelParams& p, Rng& rng) {
    const double d3 = std::sqrt(h_m * h_m + r_m * r_m);
    if (d3 == 0.0) throw std::domain_error("path_loss_db: zero 3D distance");
    const double p_line = p_los(h_m, r_m, p);
    const double fspl = 20.0 * std::log10(4.0 * M_PI * p.f_c_hz / kSpeedOfLight) +
                        20.0 * std::log10(d3);
    const double shadowing = p.sigma_sh_db > 0.0 ? rng.normal(0.0, p.sigma_sh_db) : 0.0;
    return fspl + p_line * p.eta_los_db + (1.0 - p_line) * p.eta_nlos_db + shadowing;
}

double synth_range(double true_gamma_m, const RangingNoiseModel& model,
                   double spot_rubble_loss_db, Rng& rng) {
    if (true_gamma_m < 0.0) throw std::invalid_argument("synth_range: negative true range");
    const double bias =
        model.rubble_enabled ? model.beta_rubble_m_per_db * spot_rubble_loss_db : 0.0;
    double noise = 0.0;
    switch (model.kind) {
        case RangeNoiseKind::Gaussian: {
            const double sigma = model.sigma0_m + model.k_dist * true_gamma_m;
            if (sigma > 0.0) noise = rng.normal(0.0, sigma);
            break;
        }
        case RangeNoiseKind::Rayleigh: {
            // Additive Rayleigh with Var = alpha * gamma, so
            // sigma_r = sqrt(Var / (2 - pi/2)).
            const double var = model.rayleigh_alpha * true_gamma_m;
            if (var > 0.0) noise = rng.rayleigh(std::sqrt(var / (2.0 - M_PI / 2.0)));
            break;
        }
    }
    const double out = true_gamma_m + bias + noise;
    return out > 0.0 ? out : 0.0;
}

std::vector<double> draw_rubble_losses(int n_spots, const RangingNoiseModel& model, Rng& rng) {
    if (n_spots < 1) throw std::invalid_argument("draw_rubble_losses: n_spots must be >= 1");
    std::vector<double> losses(static_cast<std::size_t>(n_spots), 0.0);
    if (model.rubble_enabled)
        for (double& v : losses) v = rng.uniform(0.0, model.rubble_loss_max_db);
    return losses;
}

}  // namespace uavloc
