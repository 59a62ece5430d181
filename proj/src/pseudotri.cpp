#include "uavloc/pseudotri.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace uavloc {

void PseudoTriInstance::validate() const {
    if (spots.spots.size() != ranges.size())
        throw std::invalid_argument("pseudotri: spots/ranges length mismatch");
    if (spots.spots.empty()) throw std::invalid_argument("pseudotri: empty instance");
    for (double r : ranges)
        if (r < 0.0) throw std::invalid_argument("pseudotri: negative range");
}

FeasibleCircle feasible_circle(const Vec3& spot, double gamma_hat, double target_alt) {
    if (gamma_hat < 0.0) throw std::invalid_argument("feasible_circle: negative range");
    const double dz = spot.z - target_alt;
    const double r_sq = gamma_hat * gamma_hat - dz * dz;
    return {{spot.x, spot.y}, r_sq > 0.0 ? std::sqrt(r_sq) : 0.0};
}

double path_cost(const std::vector<Vec2>& positions, bool squared_steps) {
    double cost = 0.0;
    for (std::size_t i = 1; i < positions.size(); ++i) {
        const double d = positions[i].dist(positions[i - 1]);
        cost += squared_steps ? d * d : d;
    }
    return cost;
}

namespace {

constexpr double kCenterTieEps = 1e-12;

Vec2 project_onto_circle(const Vec2& from, const FeasibleCircle& c) {
    if (c.radius == 0.0) return c.center;
    const Vec2 dir = from - c.center;
    const double d = dir.norm();
    if (d < kCenterTieEps) return {c.center.x + c.radius, c.center.y};  // angle-0 tie-break
    return {c.center.x + c.radius * dir.x / d, c.center.y + c.radius * dir.y / d};
}

}  // namespace

SolutionTrack solve_greedy(const PseudoTriInstance& inst, const Vec2& init,
                           const GreedyOptions& opts) {
    inst.validate();
    if (!std::isfinite(init.x) || !std::isfinite(init.y))
        throw std::invalid_argument("solve_greedy: non-finite initial point");
    SolutionTrack track;
    track.positions.reserve(inst.ranges.size());
    Vec2 prev = init;
    for (std::size_t n = 0; n < inst.ranges.size(); ++n) {
        const FeasibleCircle c =
            feasible_circle(inst.spots.spots[n], inst.ranges[n], inst.target_altitude);
        prev = project_onto_circle(prev, c);
        track.positions.push_back(prev);
    }
    track.path_cost = path_cost(track.positions, opts.squared_steps);
    return track;
}

SolutionTrack solve_dp_oracle(const PseudoTriInstance& inst, int angular_bins,
                              const GreedyOptions& opts) {
    inst.validate();
    if (angular_bins < 8) throw std::invalid_argument("dp_oracle: need at least 8 angular bins");
    const std::size_t n = inst.ranges.size();
    const double budget = static_cast<double>(n) * angular_bins * angular_bins;
    if (budget > 1e9)
        throw InstanceTooLargeError("dp_oracle: N * bins^2 exceeds the desk-scale budget");

    const std::size_t bins = static_cast<std::size_t>(angular_bins);
    std::vector<Vec2> candidates(n * bins);
    for (std::size_t i = 0; i < n; ++i) {
        const FeasibleCircle c =
            feasible_circle(inst.spots.spots[i], inst.ranges[i], inst.target_altitude);
        for (std::size_t b = 0; b < bins; ++b) {
            const double ang = 2.0 * M_PI * static_cast<double>(b) / static_cast<double>(bins);
            candidates[i * bins + b] = {c.center.x + c.radius * std::cos(ang),
                                        c.center.y + c.radius * std::sin(ang)};
        }
    }

    std::vector<double> cost(n * bins, 0.0);
    std::vector<std::size_t> back(n * bins, 0);
    for (std::size_t i = 1; i < n; ++i) {
        for (std::size_t j = 0; j < bins; ++j) {
            double best = std::numeric_limits<double>::infinity();
            std::size_t best_prev = 0;
            const Vec2& cur = candidates[i * bins + j];
            for (std::size_t k = 0; k < bins; ++k) {
                const double d = cur.dist(candidates[(i - 1) * bins + k]);
                const double step = opts.squared_steps ? d * d : d;
                const double total = cost[(i - 1) * bins + k] + step;
                if (total < best) {
                    best = total;
                    best_prev = k;
                }
            }
            cost[i * bins + j] = best;
            back[i * bins + j] = best_prev;
        }
    }

    std::size_t end_bin = 0;
    for (std::size_t j = 1; j < bins; ++j)
        if (cost[(n - 1) * bins + j] < cost[(n - 1) * bins + end_bin]) end_bin = j;

    SolutionTrack track;
    track.positions.resize(n);
    std::size_t b = end_bin;
    for (std::size_t i = n; i-- > 0;) {
        track.positions[i] = candidates[i * bins + b];
        b = back[i * bins + b];
    }
    track.path_cost = cost[(n - 1) * bins + end_bin];
    return track;
}

std::pair<Vec2, Vec2> lemma1_two_solutions(const Vec3& spot_a, const Vec3& spot_b, double gamma_a,
                                           double gamma_b, double line_r, double line_q) {
    const auto on_line = [&](const Vec3& s) {
        return std::abs(s.y - (line_r * s.x + line_q)) <= 1e-6 * (1.0 + std::abs(s.y));
    };
    if (!on_line(spot_a) || !on_line(spot_b))
        throw std::invalid_argument("lemma1: anchor spots must lie on the given line");
    if (gamma_a < 0.0 || gamma_b < 0.0) throw std::invalid_argument("lemma1: negative range");

    const Vec2 c1 = spot_a.xy();
    const Vec2 c2 = spot_b.xy();
    const double d = c1.dist(c2);
    if (d < 1e-12) throw std::invalid_argument("lemma1: coincident anchor spots");
    if (d > gamma_a + gamma_b + 1e-9 || d < std::abs(gamma_a - gamma_b) - 1e-9)
        throw PseudoTriGeometryError("lemma1: range circles do not intersect");

    // Circle-circle intersection along the anchor axis; the two points are the
    // mirror pair across the anchor line and collapse when h = 0.
    const double along = (d * d + gamma_a * gamma_a - gamma_b * gamma_b) / (2.0 * d);
    const double h_sq = gamma_a * gamma_a - along * along;
    const double h = h_sq > 0.0 ? std::sqrt(h_sq) : 0.0;
    const Vec2 axis{(c2.x - c1.x) / d, (c2.y - c1.y) / d};
    const Vec2 base{c1.x + along * axis.x, c1.y + along * axis.y};
    const Vec2 perp{-axis.y, axis.x};
    return {{base.x + h * perp.x, base.y + h * perp.y},
            {base.x - h * perp.x, base.y - h * perp.y}};
}

PathAmbiguity ambiguity_check(const UavPath& path, bool target_altitude_known,
                              double collinear_tol) {
    const std::size_t n = path.spots.size();
    if (n < 3) throw std::invalid_argument("ambiguity_check: need at least 3 spots");

    // Total-least-squares line fit on the horizontal coordinates; the path is
    // collinear when every spot sits within tolerance of that line.
    double mx = 0.0, my = 0.0;
    for (const Vec3& s : path.spots) {
        mx += s.x;
        my += s.y;
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (const Vec3& s : path.spots) {
        const double dx = s.x - mx;
        const double dy = s.y - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    // Principal direction of the 2x2 scatter matrix.
    const double tr = sxx + syy;
    const double det = sxx * syy - sxy * sxy;
    const double disc = std::sqrt(std::max(0.0, tr * tr / 4.0 - det));
    const double lambda = tr / 2.0 + disc;
    Vec2 dir{1.0, 0.0};
    if (std::abs(sxy) > 0.0)
        dir = {lambda - syy, sxy};
    else if (syy > sxx)
        dir = {0.0, 1.0};
    const double dn = dir.norm();
    dir = {dir.x / dn, dir.y / dn};

    double max_off = 0.0;
    for (const Vec3& s : path.spots) {
        const double off = std::abs(-dir.y * (s.x - mx) + dir.x * (s.y - my));
        max_off = std::max(max_off, off);
    }
    if (max_off <= collinear_tol)
        return target_altitude_known ? PathAmbiguity::Double : PathAmbiguity::CircleOfSolutions;
    return PathAmbiguity::Unique;
}

}  // namespace uavloc
