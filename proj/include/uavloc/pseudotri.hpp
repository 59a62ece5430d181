// Single-anchor pseudo-trilateration: one range per measurement spot along a
// closed trajectory constrains the target to a circle per spot; a track is a
// minimum-total-displacement chain through those circles.
//
// The chained greedy solver handles production sizes; the discretized
// dynamic-programming oracle finds the exact optimum over an angular grid and
// exists to bound the greedy solution on desk-scale instances.

#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "uavloc/geometry.hpp"

namespace uavloc {

struct FeasibleCircle {
    Vec2 center;          // spot's horizontal position
    double radius = 0.0;  // sqrt(max(0, gamma^2 - dz^2))
};

struct PseudoTriInstance {
    UavPath spots;
    std::vector<double> ranges;   // measured gamma per spot
    double target_altitude = 0.0;

    void validate() const;
};

struct SolutionTrack {
    std::vector<Vec2> positions;
    double path_cost = 0.0;  // sum over n >= 2 of the step metric
};

struct GreedyOptions {
    bool squared_steps = false;  // step metric ||.||^2 instead of ||.||
};

enum class PathAmbiguity { Unique, Double, CircleOfSolutions };

class PseudoTriGeometryError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InstanceTooLargeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Sphere of radius gamma_hat about the spot intersected with the plane
// z = target_alt; radius clamps to zero when the sphere misses the plane.
FeasibleCircle feasible_circle(const Vec3& spot, double gamma_hat, double target_alt);

double path_cost(const std::vector<Vec2>& positions, bool squared_steps = false);

// Position 1 projects init onto circle 1; each later position projects its
// predecessor onto the next circle. Projection from a circle's exact center
// tie-breaks to local angle 0.
SolutionTrack solve_greedy(const PseudoTriInstance& inst, const Vec2& init,
                           const GreedyOptions& opts = {});

// Exact minimum-cost chain over circles discretized into angular_bins
// candidate points each. Intended for N <= 50, bins <= 720.
SolutionTrack solve_dp_oracle(const PseudoTriInstance& inst, int angular_bins,
                              const GreedyOptions& opts = {});

// Two-anchor intersection for anchors on the line y = r x + q (planar case).
// Returns the mirror-image solution pair; the points coincide when the
// target sits on the anchor line.
std::pair<Vec2, Vec2> lemma1_two_solutions(const Vec3& spot_a, const Vec3& spot_b, double gamma_a,
                                           double gamma_b, double line_r, double line_q);

// Collinear measurement spots admit a mirror solution (planar) or a whole
// circle of solutions when the target altitude is unknown; a closed
// (non-collinear) path pins the target uniquely.
PathAmbiguity ambiguity_check(const UavPath& path, bool target_altitude_known = true,
                              double collinear_tol = 1e-9);

}  // namespace uavloc
