// Scenario-matrix evaluation over the closed loop: mobility-waypoint sweep,
// rubble on/off, user-speed sweep and altitude sweep. Emits one raw CSV row
// per (scenario, episode, revolution).

#pragma once

#include <string>
#include <vector>

#include "uavloc/harness/episode.hpp"

namespace uavloc {

struct EvalOptions {
    std::vector<int> waypoint_sweep{100, 500, 1900};
    std::vector<double> speed_sweep{0.0, 1.0, 2.0, 4.0};
    std::vector<double> altitude_sweep{60.0, 100.0, 140.0};
    int episodes_per_scenario = 3;
    int revolutions = 3;
    std::string scenario = "all";  // all|waypoints|rubble|speed|altitude
};

// CSV columns: scenario,param,episode,revolution,mean_error,si,rho.
std::string evaluate(const EpisodeConfig& base, const EvalOptions& opts);

}  // namespace uavloc
