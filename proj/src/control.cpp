#include "uavloc/control.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace uavloc {

double pi_step(ControllerState& state, double error) {
    if (!std::isfinite(error)) throw std::invalid_argument("pi_step: non-finite error");
    state.integral_error += error;
    return state.kp * error + state.ki * state.integral_error;
}

double mean_predicted_speed(const std::vector<Vec2>& predicted, double sample_period_s) {
    if (predicted.size() < 2) return 0.0;
    if (!(sample_period_s > 0.0))
        throw std::invalid_argument("mean_predicted_speed: sample period must be > 0");
    double sum = 0.0;
    for (std::size_t f = 1; f < predicted.size(); ++f) sum += predicted[f].dist(predicted[f - 1]);
    return sum / (static_cast<double>(predicted.size() - 1) * sample_period_s);
}

namespace {

Vec2 centroid(const std::vector<Vec2>& pts) {
    Vec2 c;
    for (const Vec2& p : pts) c = c + p;
    return c * (1.0 / static_cast<double>(pts.size()));
}

double spread_term(const std::vector<Vec2>& predicted, const Vec2& mean, double v_t, double v_d) {
    double max_dist = 0.0;
    for (const Vec2& p : predicted) max_dist = std::max(max_dist, p.dist(mean));
    return (v_t / v_d) * max_dist;
}

}  // namespace

RelocationOffsets relocation_offsets(const TrajectoryParams& params,
                                     const std::vector<Vec2>& predicted,
                                     const SpeedEstimates& speeds) {
    if (predicted.empty()) throw std::invalid_argument("relocate: empty prediction");
    if (!(speeds.v_bar_d > 0.0)) throw std::invalid_argument("relocate: UAV speed must be > 0");
    const Vec2 mean = centroid(predicted);
    const double v_t = speeds.v_bar_t
                           ? *speeds.v_bar_t
                           : mean_predicted_speed(predicted, speeds.sample_period_s);
    RelocationOffsets off;
    off.delta_x = mean.x - params.x_c;
    off.delta_y = mean.y - params.y_c;
    off.delta_rho = spread_term(predicted, mean, v_t, speeds.v_bar_d);
    return off;
}

TrajectoryParams relocate(const TrajectoryParams& params, const std::vector<Vec2>& predicted,
                          const SpeedEstimates& speeds, const RadiusBounds& bounds) {
    const RelocationOffsets off = relocation_offsets(params, predicted, speeds);
    TrajectoryParams next = params;
    next.x_c = params.x_c + off.delta_x;
    next.y_c = params.y_c + off.delta_y;
    const double target_rho = std::max(bounds.rho_min, off.delta_rho);
    next.rho = std::clamp(target_rho, bounds.rho_min, bounds.rho_max);
    return next;
}

TrajectoryParams closed_loop_step(const TrajectoryParams& params,
                                  const std::vector<Vec2>& predicted,
                                  const SpeedEstimates& speeds, const RadiusBounds& bounds,
                                  ControllerState& state) {
    const RelocationOffsets off = relocation_offsets(params, predicted, speeds);
    const double target_rho =
        std::clamp(std::max(bounds.rho_min, off.delta_rho), bounds.rho_min, bounds.rho_max);

    const double radius_error = target_rho - params.rho;
    const double command = pi_step(state, radius_error);

    // Anti-windup: bound the integral so one commanded change cannot exceed
    // the full radius span.
    const double integral_cap = (bounds.rho_max - bounds.rho_min) / state.ki;
    state.integral_error = std::clamp(state.integral_error, -integral_cap, integral_cap);

    TrajectoryParams next = params;
    next.x_c = params.x_c + off.delta_x;
    next.y_c = params.y_c + off.delta_y;
    next.rho = std::clamp(params.rho + command, bounds.rho_min, bounds.rho_max);
    state.omega = 2.0 * M_PI;  // loop updates happen at end of revolution
    return next;
}

}  // namespace uavloc
