#include "uavloc/geometry.hpp"

#include <stdexcept>
#include <string>

namespace uavloc {

void TrajectoryParams::validate() const {
    if (!(h > 0.0)) throw std::invalid_argument("trajectory: altitude must be > 0");
    if (!(rho > 0.0)) throw std::invalid_argument("trajectory: radius must be > 0");
    if (a < 0.0 || a >= rho)
        throw std::invalid_argument("trajectory: perturbation must satisfy 0 <= a < rho");
    if (n_spots < 2) throw std::invalid_argument("trajectory: need at least 2 spots");
    if (!std::isfinite(x_c) || !std::isfinite(y_c))
        throw std::invalid_argument("trajectory: center must be finite");
}

UavPath gen_uav_trajectory(const TrajectoryParams& params) {
    params.validate();
    UavPath path;
    path.spots.reserve(static_cast<std::size_t>(params.n_spots));
    const int n_spots = params.n_spots;
    for (int n = 1; n <= n_spots; ++n) {
        const double phi = 2.0 * M_PI * n / n_spots;
        const double r = params.rho + params.a * std::sin(phi);
        path.spots.push_back({r * std::cos(phi) + params.x_c,
                              r * std::sin(phi) + params.y_c,
                              params.h});
    }
    return path;
}

std::vector<double> true_ranges(const UavPath& path, const std::vector<Vec3>& target_track) {
    if (path.spots.size() != target_track.size())
        throw std::invalid_argument("true_ranges: path has " + std::to_string(path.spots.size()) +
                                    " spots but track has " + std::to_string(target_track.size()) +
                                    " positions");
    std::vector<double> out(path.spots.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = path.spots[i].dist(target_track[i]);
    return out;
}

}  // namespace uavloc
