#include "uavloc/mobility.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

#include "uavloc/rng.hpp"

namespace uavloc {

void MobilityConfig::validate() const {
    if (mean_speed < 0.0) throw std::invalid_argument("mobility: mean_speed must be >= 0");
    if (num_waypoints < 1) throw std::invalid_argument("mobility: need at least 1 waypoint");
    if (!(area_side > 0.0)) throw std::invalid_argument("mobility: area_side must be > 0");
}

namespace {

Vec2 clamp_to_area(Vec2 p, const MobilityConfig& cfg) {
    const double half = cfg.area_side / 2.0;
    p.x = std::clamp(p.x, cfg.area_center.x - half, cfg.area_center.x + half);
    p.y = std::clamp(p.y, cfg.area_center.y - half, cfg.area_center.y + half);
    return p;
}

// Cluster-of-clusters point process: three nested levels with 4 cluster
// centers each, cell extent halving per level. Each waypoint descends the
// hierarchy at random and is jittered inside its leaf cell.
std::vector<Vec2> slaw_waypoints(const MobilityConfig& cfg, Rng& rng) {
    constexpr int kLevels = 3;
    constexpr int kBranch = 4;

    struct Cell {
        Vec2 center;
        double half;
    };

    std::vector<std::vector<Cell>> levels;
    levels.push_back({{cfg.area_center, cfg.area_side / 2.0}});
    for (int lvl = 0; lvl < kLevels; ++lvl) {
        std::vector<Cell> next;
        next.reserve(levels.back().size() * kBranch);
        for (const Cell& parent : levels.back()) {
            const double child_half = parent.half / 2.0;
            for (int b = 0; b < kBranch; ++b) {
                Vec2 c{rng.uniform(parent.center.x - parent.half, parent.center.x + parent.half),
                       rng.uniform(parent.center.y - parent.half, parent.center.y + parent.half)};
                next.push_back({c, child_half});
            }
        }
        levels.push_back(std::move(next));
    }

    const auto& leaves = levels.back();
    std::vector<Vec2> pts;
    pts.reserve(static_cast<std::size_t>(cfg.num_waypoints));
    for (int i = 0; i < cfg.num_waypoints; ++i) {
        // Random descent keeps sibling cells unevenly populated across seeds.
        std::size_t idx = 0;
        for (int lvl = 0; lvl < kLevels; ++lvl)
            idx = idx * kBranch + static_cast<std::size_t>(rng.uniform_int(0, kBranch - 1));
        const Cell& leaf = leaves[idx];
        Vec2 p{rng.uniform(leaf.center.x - leaf.half, leaf.center.x + leaf.half),
               rng.uniform(leaf.center.y - leaf.half, leaf.center.y + leaf.half)};
        pts.push_back(clamp_to_area(p, cfg));
    }
    return pts;
}

std::vector<Vec2> nearest_neighbor_order(std::vector<Vec2> pts) {
    std::vector<Vec2> ordered;
    ordered.reserve(pts.size());
    std::size_t cur = 0;
    std::vector<bool> used(pts.size(), false);
    ordered.push_back(pts[0]);
    used[0] = true;
    for (std::size_t k = 1; k < pts.size(); ++k) {
        double best = 0.0;
        std::size_t best_i = pts.size();
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (used[i]) continue;
            const double d = pts[cur].dist(pts[i]);
            if (best_i == pts.size() || d < best) {
                best = d;
                best_i = i;
            }
        }
        used[best_i] = true;
        ordered.push_back(pts[best_i]);
        cur = best_i;
    }
    return ordered;
}

}  // namespace

MobilityWalker::MobilityWalker(const MobilityConfig& cfg) : speed_(cfg.mean_speed) {
    cfg.validate();
    Rng rng(cfg.seed);
    switch (cfg.model) {
        case MobilityModel::Static: {
            const double half = cfg.area_side / 2.0;
            waypoints_ = {{rng.uniform(cfg.area_center.x - half, cfg.area_center.x + half),
                           rng.uniform(cfg.area_center.y - half, cfg.area_center.y + half)}};
            break;
        }
        case MobilityModel::Polyline: {
            const double half = cfg.area_side / 2.0;
            waypoints_.reserve(static_cast<std::size_t>(cfg.num_waypoints));
            for (int i = 0; i < cfg.num_waypoints; ++i)
                waypoints_.push_back(
                    {rng.uniform(cfg.area_center.x - half, cfg.area_center.x + half),
                     rng.uniform(cfg.area_center.y - half, cfg.area_center.y + half)});
            break;
        }
        case MobilityModel::Slaw:
            waypoints_ = nearest_neighbor_order(slaw_waypoints(cfg, rng));
            break;
    }
    pos_ = waypoints_.front();
    next_ = waypoints_.size() > 1 ? 1 : 0;
}

void MobilityWalker::advance(double dt_seconds) {
    if (dt_seconds < 0.0) throw std::invalid_argument("mobility: negative time step");
    double step = speed_ * dt_seconds;
    if (step <= 0.0 || waypoints_.size() < 2) return;
    while (step > 0.0) {
        const Vec2& target = waypoints_[next_];
        const double d = pos_.dist(target);
        if (d <= step) {
            pos_ = target;
            step -= d;
            next_ = (next_ + 1) % waypoints_.size();
            if (d == 0.0 && step > 0.0) {
                // Coincident waypoints; hop through without progress and
                // stop once a full cycle yields no movement.
                bool any_distinct = false;
                for (const Vec2& w : waypoints_)
                    if (w.dist(pos_) > 0.0) any_distinct = true;
                if (!any_distinct) return;
            }
        } else {
            const double f = step / d;
            pos_ = {pos_.x + (target.x - pos_.x) * f, pos_.y + (target.y - pos_.y) * f};
            step = 0.0;
        }
    }
}

UserTrack gen_track(const MobilityConfig& cfg, int n_samples, double sample_period) {
    if (n_samples < 1) throw std::invalid_argument("mobility: n_samples must be >= 1");
    if (!(sample_period > 0.0)) throw std::invalid_argument("mobility: sample_period must be > 0");
    MobilityWalker walker(cfg);
    UserTrack track;
    track.sample_period = sample_period;
    track.positions.reserve(static_cast<std::size_t>(n_samples));
    track.positions.push_back(walker.position());
    for (int i = 1; i < n_samples; ++i) {
        walker.advance(sample_period);
        track.positions.push_back(walker.position());
    }
    return track;
}

void write_track_csv(const UserTrack& track, std::ostream& os) {
    os << "n,x,y\n";
    for (std::size_t i = 0; i < track.positions.size(); ++i)
        os << i << ',' << track.positions[i].x << ',' << track.positions[i].y << '\n';
}

}  // namespace uavloc
