#include "uavloc/harness/evaluate.hpp"

#include <sstream>

namespace uavloc {

namespace {

void run_scenario(std::ostream& os, const std::string& name, double param,
                  const EpisodeConfig& cfg, int episodes) {
    for (int ep = 0; ep < episodes; ++ep) {
        EpisodeConfig run = cfg;
        run.seed = Rng::derive_seed(cfg.seed, static_cast<std::uint64_t>(ep) + 17);
        const EpisodeLog log = run_episode(run);
        for (const RevolutionRecord& r : log.revolutions)
            os << name << ',' << param << ',' << ep << ',' << r.revolution << ',' << r.error.mean
               << ',' << r.error.si << ',' << r.params.rho << '\n';
    }
}

}  // namespace

std::string evaluate(const EpisodeConfig& base, const EvalOptions& opts) {
    base.validate();
    if (opts.episodes_per_scenario < 1 || opts.revolutions < 1)
        throw ConfigurationError("evaluate: need at least one episode and revolution");

    std::ostringstream os;
    os << "scenario,param,episode,revolution,mean_error,si,rho\n";

    const bool all = opts.scenario == "all";
    if (all || opts.scenario == "waypoints") {
        for (int wp : opts.waypoint_sweep) {
            EpisodeConfig cfg = base;
            cfg.revolutions = opts.revolutions;
            cfg.mobility.model = MobilityModel::Slaw;
            cfg.mobility.num_waypoints = wp;
            cfg.noise.rubble_enabled = false;
            run_scenario(os, "waypoints", wp, cfg, opts.episodes_per_scenario);
        }
    }
    if (all || opts.scenario == "rubble") {
        for (int on = 0; on <= 1; ++on) {
            EpisodeConfig cfg = base;
            cfg.revolutions = opts.revolutions;
            cfg.noise.rubble_enabled = on == 1;
            run_scenario(os, "rubble", on, cfg, opts.episodes_per_scenario);
        }
    }
    if (all || opts.scenario == "speed") {
        for (double v : opts.speed_sweep) {
            EpisodeConfig cfg = base;
            cfg.revolutions = opts.revolutions;
            cfg.mobility.mean_speed = v;
            run_scenario(os, "speed", v, cfg, opts.episodes_per_scenario);
        }
    }
    if (all || opts.scenario == "altitude") {
        for (double h : opts.altitude_sweep) {
            EpisodeConfig cfg = base;
            cfg.revolutions = opts.revolutions;
            cfg.trajectory.h = h;
            run_scenario(os, "altitude", h, cfg, opts.episodes_per_scenario);
        }
    }
    return os.str();
}

}  // namespace uavloc
