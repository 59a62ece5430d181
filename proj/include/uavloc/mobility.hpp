// Ground-target track generation: static, polygonal-chain, and a simplified
// self-similar least-action walk (fractal waypoint clusters visited in
// nearest-unvisited-neighbor order at constant speed, zero pause).

#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "uavloc/geometry.hpp"

namespace uavloc {

enum class MobilityModel { Static, Polyline, Slaw };

struct MobilityConfig {
    MobilityModel model = MobilityModel::Slaw;
    int num_waypoints = 100;
    double area_side = 1000.0;  // square side, meters
    double mean_speed = 1.0;    // m/s
    std::uint64_t seed = 0;
    Vec2 area_center;           // harness centers this on the orbit center

    void validate() const;
};

struct UserTrack {
    std::vector<Vec3> positions;  // z = 0 for all ground samples
    double sample_period = 1.0;   // seconds between consecutive positions
};

// Incremental walker so the closed loop can keep one continuous track across
// revolutions with a changing sample period.
class MobilityWalker {
public:
    explicit MobilityWalker(const MobilityConfig& cfg);

    Vec3 position() const { return {pos_.x, pos_.y, 0.0}; }
    void advance(double dt_seconds);

    const std::vector<Vec2>& waypoints() const { return waypoints_; }

private:
    double speed_;
    Vec2 pos_;
    std::vector<Vec2> waypoints_;  // in visiting order; cycled when exhausted
    std::size_t next_ = 0;
};

// positions[0] is the walker start; each later sample advances sample_period.
UserTrack gen_track(const MobilityConfig& cfg, int n_samples, double sample_period = 1.0);

// CSV columns: n,x,y with a header row.
void write_track_csv(const UserTrack& track, std::ostream& os);

}  // namespace uavloc
