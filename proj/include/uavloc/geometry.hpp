// Coordinate types, UAV orbit generation and true-range computation.

#pragma once

#include <cmath>
#include <vector>

namespace uavloc {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    double norm() const { return std::hypot(x, y); }
    double dist(const Vec2& o) const { return std::hypot(x - o.x, y - o.y); }
};

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    double norm() const { return std::sqrt(x * x + y * y + z * z); }
    double dist(const Vec3& o) const { return (*this - o).norm(); }
    Vec2 xy() const { return {x, y}; }
};

// Circular measurement orbit with a sinusoidal radius perturbation.
// Spot n (1-based) sits at angle 2*pi*n/N with radius rho + a*sin(2*pi*n/N).
struct TrajectoryParams {
    double x_c = 0.0;     // orbit center, meters
    double y_c = 0.0;
    double h = 100.0;     // flight altitude, meters
    double rho = 100.0;   // nominal radius, meters
    double a = 0.0;       // radius perturbation amplitude, 0 <= a < rho
    int n_spots = 100;    // measurement spots per revolution

    void validate() const;
};

struct UavPath {
    std::vector<Vec3> spots;
};

UavPath gen_uav_trajectory(const TrajectoryParams& params);

// Element n is the Euclidean distance between spot n and target position n.
std::vector<double> true_ranges(const UavPath& path, const std::vector<Vec3>& target_track);

}  // namespace uavloc
