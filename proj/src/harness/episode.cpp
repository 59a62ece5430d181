#include "uavloc/harness/episode.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "uavloc/learning/phi.hpp"
#include "uavloc/multilateration.hpp"
#include "uavloc/pseudotri.hpp"

namespace uavloc {

const char* to_string(Estimator e) {
    switch (e) {
        case Estimator::Greedy: return "greedy";
        case Estimator::DpOracle: return "dp_oracle";
        case Estimator::Cnn: return "cnn";
        case Estimator::MultilatBaseline: return "multilat_baseline";
    }
    return "?";
}

const char* to_string(Predictor p) {
    switch (p) {
        case Predictor::Persistence: return "persistence";
        case Predictor::Lstm: return "lstm";
    }
    return "?";
}

const char* to_string(RangeSynthMode m) {
    return m == RangeSynthMode::Fast ? "fast" : "full";
}

const char* to_string(MobilityModel m) {
    switch (m) {
        case MobilityModel::Static: return "static";
        case MobilityModel::Polyline: return "polyline";
        case MobilityModel::Slaw: return "slaw";
    }
    return "?";
}

Estimator estimator_from_string(const std::string& s) {
    if (s == "greedy") return Estimator::Greedy;
    if (s == "dp_oracle") return Estimator::DpOracle;
    if (s == "cnn") return Estimator::Cnn;
    if (s == "multilat_baseline") return Estimator::MultilatBaseline;
    throw ConfigurationError("unknown estimator: " + s);
}

Predictor predictor_from_string(const std::string& s) {
    if (s == "persistence") return Predictor::Persistence;
    if (s == "lstm") return Predictor::Lstm;
    throw ConfigurationError("unknown predictor: " + s);
}

RangeSynthMode synth_mode_from_string(const std::string& s) {
    if (s == "fast") return RangeSynthMode::Fast;
    if (s == "full") return RangeSynthMode::Full;
    throw ConfigurationError("unknown range synthesis mode: " + s);
}

MobilityModel mobility_model_from_string(const std::string& s) {
    if (s == "static") return MobilityModel::Static;
    if (s == "polyline") return MobilityModel::Polyline;
    if (s == "slaw") return MobilityModel::Slaw;
    throw ConfigurationError("unknown mobility model: " + s);
}

void EpisodeConfig::validate() const {
    trajectory.validate();
    mobility.validate();
    channel.validate();
    noise.validate();
    ranging.validate();
    if (meas_per_spot < 1) throw ConfigurationError("config: meas_per_spot must be >= 1");
    if (revolutions < 1) throw ConfigurationError("config: revolutions must be >= 1");
    if (!(uav_speed_mps > 0.0)) throw ConfigurationError("config: uav speed must be > 0");
    if (!(scale_m > 0.0)) throw ConfigurationError("config: scale must be > 0");
    if (estimator == Estimator::Cnn && !cnn)
        throw ConfigurationError("config: cnn estimator selected but no model loaded");
    if (predictor == Predictor::Lstm && !lstm)
        throw ConfigurationError("config: lstm predictor selected but no model loaded");
    if (estimator == Estimator::Cnn &&
        (cnn->config().n != trajectory.n_spots || cnn->config().l != meas_per_spot))
        throw ConfigurationError("config: cnn model shape does not match N x L");
}

namespace {

double orbit_perimeter(const UavPath& path) {
    double len = 0.0;
    for (std::size_t i = 1; i < path.spots.size(); ++i)
        len += path.spots[i].dist(path.spots[i - 1]);
    len += path.spots.front().dist(path.spots.back());
    return len;
}

std::vector<Vec2> to_2d(const std::vector<Vec3>& track) {
    std::vector<Vec2> out(track.size());
    for (std::size_t i = 0; i < track.size(); ++i) out[i] = track[i].xy();
    return out;
}

struct RevolutionData {
    std::vector<std::vector<double>> ranges;  // N x L
    std::vector<double> per_spot_mean;        // N
};

RevolutionData synthesize_ranges(const EpisodeConfig& cfg, const std::vector<double>& gamma_true,
                                 const std::vector<double>& rubble, const ZcSequence& zc,
                                 Rng& rng) {
    const int n = static_cast<int>(gamma_true.size());
    const int l = cfg.meas_per_spot;
    RevolutionData data;
    data.ranges.assign(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(l)));
    data.per_spot_mean.assign(static_cast<std::size_t>(n), 0.0);

    const double base_step_m = kSpeedOfLight / cfg.ranging.sample_rate_hz;
    for (int s = 0; s < n; ++s) {
        double acc = 0.0;
        for (int m = 0; m < l; ++m) {
            double value = 0.0;
            if (cfg.synth_mode == RangeSynthMode::Fast) {
                value = synth_range(gamma_true[static_cast<std::size_t>(s)], cfg.noise,
                                    rubble[static_cast<std::size_t>(s)], rng);
            } else {
                // Signal-level path: delay the pilot by the true range (plus
                // the rubble-induced excess), add receiver noise, estimate.
                const double bias = cfg.noise.rubble_enabled
                                        ? cfg.noise.beta_rubble_m_per_db *
                                              rubble[static_cast<std::size_t>(s)]
                                        : 0.0;
                const double delay_samples =
                    (gamma_true[static_cast<std::size_t>(s)] + bias) / base_step_m;
                auto received = apply_fractional_delay(zc.samples, delay_samples);
                add_awgn(received, cfg.full_mode_snr_db, rng);
                value = estimate_tof(zc, received, cfg.ranging).range_meters;
            }
            data.ranges[static_cast<std::size_t>(s)][static_cast<std::size_t>(m)] = value;
            acc += value;
        }
        data.per_spot_mean[static_cast<std::size_t>(s)] = acc / l;
    }
    return data;
}

std::vector<Vec2> run_estimator(const EpisodeConfig& cfg, const TrajectoryParams& params,
                                const UavPath& path, const RevolutionData& data,
                                const std::vector<Vec3>& truth) {
    switch (cfg.estimator) {
        case Estimator::Greedy: {
            PseudoTriInstance inst{path, data.per_spot_mean, 0.0};
            const Vec2 init =
                cfg.greedy_true_init ? truth.front().xy() : path.spots.front().xy();
            return solve_greedy(inst, init).positions;
        }
        case Estimator::DpOracle: {
            PseudoTriInstance inst{path, data.per_spot_mean, 0.0};
            return solve_dp_oracle(inst, cfg.dp_bins).positions;
        }
        case Estimator::Cnn: {
            const PhiMatrix phi = build_phi(data.ranges, path);
            const Vec2 center{params.x_c, params.y_c};
            const PhiMatrix input = centered_normalized(phi, center, cfg.scale_m);
            std::vector<Vec2> rel = cfg.cnn->predict(input);
            for (Vec2& p : rel) p = {p.x * cfg.scale_m + center.x, p.y * cfg.scale_m + center.y};
            return rel;
        }
        case Estimator::MultilatBaseline: {
            // Static-fix baseline: all spots treated as simultaneous anchors.
            AnchorSet set{path.spots, data.per_spot_mean};
            const Vec2 linear = linear_solve_2d(set, 0.0);
            const auto refined = gauss_newton_refine_2d(set, linear, 0.0, SolverConfig{});
            return std::vector<Vec2>(path.spots.size(), refined.position.xy());
        }
    }
    throw EpisodeError("unreachable estimator");
}

std::vector<Vec2> run_predictor(const EpisodeConfig& cfg, const TrajectoryParams& params,
                                const std::vector<Vec2>& estimated) {
    switch (cfg.predictor) {
        case Predictor::Persistence:
            return estimated;
        case Predictor::Lstm: {
            const Vec2 center{params.x_c, params.y_c};
            std::vector<Vec2> rel(estimated.size());
            for (std::size_t i = 0; i < estimated.size(); ++i)
                rel[i] = {(estimated[i].x - center.x) / cfg.scale_m,
                          (estimated[i].y - center.y) / cfg.scale_m};
            std::vector<Vec2> fc = cfg.lstm->forecast(rel);
            for (Vec2& p : fc)
                p = {p.x * cfg.scale_m + center.x, p.y * cfg.scale_m + center.y};
            return fc;
        }
    }
    throw EpisodeError("unreachable predictor");
}

}  // namespace

EpisodeLog run_episode(const EpisodeConfig& cfg) {
    cfg.validate();
    EpisodeLog log;
    log.config_hash = config_hash(cfg);

    Rng rng(cfg.seed);
    TrajectoryParams params = cfg.trajectory;
    ControllerState ctl;

    MobilityConfig mob = cfg.mobility;
    mob.area_center = {cfg.trajectory.x_c, cfg.trajectory.y_c};
    if (mob.seed == 0) mob.seed = Rng::derive_seed(cfg.seed, 0xA11CE);
    MobilityWalker walker(mob);

    const ZcSequence zc = cfg.synth_mode == RangeSynthMode::Full
                              ? gen_zc(std::min(25, cfg.ranging.n_zc - 1), cfg.ranging.n_zc)
                              : ZcSequence{};

    double sim_time = 0.0;
    for (int rev = 1; rev <= cfg.revolutions; ++rev) {
        try {
            const UavPath path = gen_uav_trajectory(params);
            const double rev_time = orbit_perimeter(path) / cfg.uav_speed_mps;
            const double dt = rev_time / params.n_spots;

            std::vector<Vec3> track;
            track.reserve(path.spots.size());
            for (std::size_t s = 0; s < path.spots.size(); ++s) {
                walker.advance(dt);
                track.push_back(walker.position());
            }

            const std::vector<double> rubble = draw_rubble_losses(params.n_spots, cfg.noise, rng);
            const std::vector<double> gamma_true = true_ranges(path, track);
            const RevolutionData data = synthesize_ranges(cfg, gamma_true, rubble, zc, rng);

            RevolutionRecord rec;
            rec.revolution = rev;
            rec.params = params;
            rec.true_track = track;
            rec.estimated = run_estimator(cfg, params, path, data, track);
            rec.predicted = run_predictor(cfg, params, rec.estimated);
            rec.error = compute_track_error(to_2d(track), rec.estimated);

            double pl_acc = 0.0;
            for (std::size_t s = 0; s < path.spots.size(); ++s) {
                const double horiz = path.spots[s].xy().dist(track[s].xy());
                pl_acc += path_loss_db(params.h, horiz, cfg.channel, rng);
            }
            rec.mean_path_loss_db = pl_acc / static_cast<double>(path.spots.size());

            sim_time += rev_time;
            rec.sim_time_s = sim_time;

            if (rev < cfg.revolutions) {
                SpeedEstimates speeds;
                speeds.v_bar_d = cfg.uav_speed_mps;
                speeds.sample_period_s = dt;
                params = closed_loop_step(params, rec.predicted, speeds, cfg.bounds, ctl);
            }
            rec.controller = ctl;
            log.revolutions.push_back(std::move(rec));
        } catch (const std::exception& e) {
            throw EpisodeError("revolution " + std::to_string(rev) + ": " + e.what());
        }
    }
    return log;
}

std::string canonical_config_string(const EpisodeConfig& cfg) {
    std::ostringstream os;
    os.precision(17);
    os << "trajectory=" << cfg.trajectory.x_c << ',' << cfg.trajectory.y_c << ','
       << cfg.trajectory.h << ',' << cfg.trajectory.rho << ',' << cfg.trajectory.a << ','
       << cfg.trajectory.n_spots << '\n';
    os << "mobility=" << to_string(cfg.mobility.model) << ',' << cfg.mobility.num_waypoints << ','
       << cfg.mobility.area_side << ',' << cfg.mobility.mean_speed << ',' << cfg.mobility.seed
       << '\n';
    os << "channel=" << cfg.channel.eta_los_db << ',' << cfg.channel.eta_nlos_db << ','
       << cfg.channel.a_env << ',' << cfg.channel.b_env << ',' << cfg.channel.f_c_hz << ','
       << cfg.channel.sigma_sh_db << '\n';
    os << "noise=" << (cfg.noise.kind == RangeNoiseKind::Gaussian ? "gauss" : "rayleigh") << ','
       << cfg.noise.sigma0_m << ',' << cfg.noise.k_dist << ',' << cfg.noise.rubble_enabled << ','
       << cfg.noise.rubble_loss_max_db << ',' << cfg.noise.beta_rubble_m_per_db << ','
       << cfg.noise.rayleigh_alpha << '\n';
    os << "ranging=" << cfg.ranging.sample_rate_hz << ',' << cfg.ranging.upsample_k << ','
       << cfg.ranging.n_zc << ',' << cfg.full_mode_snr_db << '\n';
    os << "sim=" << cfg.meas_per_spot << ',' << cfg.revolutions << ','
       << to_string(cfg.estimator) << ',' << to_string(cfg.predictor) << ','
       << to_string(cfg.synth_mode) << ',' << cfg.bounds.rho_min << ',' << cfg.bounds.rho_max
       << ',' << cfg.uav_speed_mps << ',' << cfg.greedy_true_init << ',' << cfg.dp_bins << ','
       << cfg.scale_m << ',' << cfg.seed << '\n';
    return os.str();
}

std::uint64_t config_hash(const EpisodeConfig& cfg) {
    // FNV-1a 64
    const std::string s = canonical_config_string(cfg);
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string episode_summary_json(const EpisodeLog& log) {
    nlohmann::ordered_json j;
    j["schema_version"] = 1;
    {
        std::ostringstream hex;
        hex << std::hex << log.config_hash;
        j["config_hash"] = hex.str();
    }
    nlohmann::ordered_json revs = nlohmann::ordered_json::array();
    for (const RevolutionRecord& r : log.revolutions) {
        nlohmann::ordered_json rec;
        rec["revolution"] = r.revolution;
        rec["mean_error"] = r.error.mean;
        rec["si"] = r.error.si;
        rec["rho"] = r.params.rho;
        rec["center"] = {r.params.x_c, r.params.y_c};
        revs.push_back(std::move(rec));
    }
    j["revolutions"] = std::move(revs);
    return j.dump();
}

void write_controller_trace_csv(const EpisodeLog& log, std::ostream& os) {
    os << "revolution,x_c,y_c,rho,mean_error,integral_error\n";
    for (const RevolutionRecord& r : log.revolutions)
        os << r.revolution << ',' << r.params.x_c << ',' << r.params.y_c << ',' << r.params.rho
           << ',' << r.error.mean << ',' << r.controller.integral_error << '\n';
}

}  // namespace uavloc
