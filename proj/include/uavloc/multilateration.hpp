// Multi-anchor baseline: linearized least-squares position fix refined by a
// damped Gauss-Newton iteration on the range residuals.

#pragma once

#include <array>
#include <stdexcept>
#include <vector>

#include "uavloc/geometry.hpp"

namespace uavloc {

struct AnchorSet {
    std::vector<Vec3> anchors;
    std::vector<double> ranges;  // measured distances, meters

    void validate(int min_anchors) const;
};

struct SolverConfig {
    int max_iter = 50;
    double tol = 1e-10;           // step-norm convergence threshold, meters
    double regularization = 0.0;  // Levenberg damping added when needed
};

struct RefineResult {
    Vec3 position;
    int iterations = 0;
    double residual_sum_sq = 0.0;  // F = sum f_i^2 at the returned iterate
    bool converged = false;
};

class DegenerateGeometryError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Pairwise-difference linear system: least-squares solution of S x = p built
// against the last anchor. Throws DegenerateGeometryError when the anchor
// geometry leaves the system rank-deficient.
Vec3 linear_solve(const AnchorSet& set);

// Planar variant with the target height fixed; needs >= 3 anchors.
Vec2 linear_solve_2d(const AnchorSet& set, double z_fixed);

// f_i(x) = ||x - anchor_i|| - range_i.
std::vector<double> residuals(const AnchorSet& set, const Vec3& point);
std::vector<std::array<double, 3>> residual_jacobian(const AnchorSet& set, const Vec3& point);

// Iterates x <- x - (J^T J + lambda I)^-1 J^T f with step-halving so the
// residual never increases between accepted iterates.
RefineResult gauss_newton_refine(const AnchorSet& set, const Vec3& init, const SolverConfig& cfg);
RefineResult gauss_newton_refine_2d(const AnchorSet& set, const Vec2& init, double z_fixed,
                                    const SolverConfig& cfg);

}  // namespace uavloc
