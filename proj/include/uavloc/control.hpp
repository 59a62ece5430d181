// Trajectory relocation from predicted target positions plus the discrete PI
// loop that adapts the orbit radius between revolutions.

#pragma once

#include <optional>
#include <vector>

#include "uavloc/geometry.hpp"

namespace uavloc {

struct RelocationOffsets {
    double delta_x = 0.0;    // center shift toward the prediction centroid
    double delta_y = 0.0;
    double delta_rho = 0.0;  // commanded radius (speed-scaled prediction spread)
};

struct ControllerState {
    double kp = 0.1;
    double ki = 0.11;
    double integral_error = 0.0;  // meters, accumulated radius error
    double omega = 0.0;           // orbit angle at the last loop update, radians
};

struct SpeedEstimates {
    // When unset, the mean predicted speed is estimated from consecutive
    // prediction displacements over sample_period_s.
    std::optional<double> v_bar_t;
    double v_bar_d = 5.0;          // UAV speed, m/s
    double sample_period_s = 1.0;  // time between predicted positions
};

struct RadiusBounds {
    double rho_min = 50.0;
    double rho_max = 250.0;
};

// integral += error; output = kp * error + ki * integral (unit sample step).
double pi_step(ControllerState& state, double error);

double mean_predicted_speed(const std::vector<Vec2>& predicted, double sample_period_s);

// Deadbeat relocation: center jumps to the prediction centroid, radius to the
// clamped speed-scaled spread max(rho_min, (v_t / v_d) * max_f ||x_f - mean||).
RelocationOffsets relocation_offsets(const TrajectoryParams& params,
                                     const std::vector<Vec2>& predicted,
                                     const SpeedEstimates& speeds);
TrajectoryParams relocate(const TrajectoryParams& params, const std::vector<Vec2>& predicted,
                          const SpeedEstimates& speeds, const RadiusBounds& bounds);

// One revolution-to-revolution update: deadbeat center move plus the radius
// error pushed through the PI law, with the integral clamped so a single
// commanded change never exceeds rho_max - rho_min.
TrajectoryParams closed_loop_step(const TrajectoryParams& params,
                                  const std::vector<Vec2>& predicted,
                                  const SpeedEstimates& speeds, const RadiusBounds& bounds,
                                  ControllerState& state);

}  // namespace uavloc
