// Closed-loop episode orchestration: per revolution, fly the orbit, sample
// the moving target, synthesize noisy ranges, estimate the track, forecast,
// and relocate the orbit for the next revolution.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>

#include "uavloc/channel.hpp"
#include "uavloc/control.hpp"
#include "uavloc/geometry.hpp"
#include "uavloc/learning/cnn.hpp"
#include "uavloc/learning/lstm.hpp"
#include "uavloc/metrics.hpp"
#include "uavloc/mobility.hpp"
#include "uavloc/ranging.hpp"

namespace uavloc {

enum class Estimator { Greedy, DpOracle, Cnn, MultilatBaseline };
enum class Predictor { Persistence, Lstm };
enum class RangeSynthMode { Fast, Full };

const char* to_string(Estimator e);
const char* to_string(Predictor p);
const char* to_string(RangeSynthMode m);
const char* to_string(MobilityModel m);
Estimator estimator_from_string(const std::string& s);
Predictor predictor_from_string(const std::string& s);
RangeSynthMode synth_mode_from_string(const std::string& s);
MobilityModel mobility_model_from_string(const std::string& s);

struct EpisodeConfig {
    TrajectoryParams trajectory;  // initial orbit; n_spots is N
    MobilityConfig mobility;      // seed 0 derives the stream from the episode seed
    ChannelParams channel;
    RangingNoiseModel noise;
    RangingConfig ranging;        // signal-level mode parameters
    double full_mode_snr_db = 20.0;

    int meas_per_spot = 100;  // L
    int revolutions = 1;      // R
    Estimator estimator = Estimator::Greedy;
    Predictor predictor = Predictor::Persistence;
    RangeSynthMode synth_mode = RangeSynthMode::Fast;
    RadiusBounds bounds;
    double uav_speed_mps = 5.0;
    bool greedy_true_init = false;  // seed the greedy chain at the true position
    int dp_bins = 360;
    double scale_m = 1000.0;  // normalization scale for the learned estimator
    std::uint64_t seed = 42;

    std::shared_ptr<const CnnModel> cnn;       // required for Estimator::Cnn
    std::shared_ptr<const Seq2SeqModel> lstm;  // required for Predictor::Lstm

    void validate() const;
};

struct RevolutionRecord {
    int revolution = 0;  // 1-based
    TrajectoryParams params;
    ControllerState controller;  // state after this revolution's update
    std::vector<Vec3> true_track;
    std::vector<Vec2> estimated;
    std::vector<Vec2> predicted;
    TrackError error;
    double sim_time_s = 0.0;  // cumulative simulated flight time
    double mean_path_loss_db = 0.0;
};

struct EpisodeLog {
    std::vector<RevolutionRecord> revolutions;
    std::uint64_t config_hash = 0;
};

class EpisodeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConfigurationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

EpisodeLog run_episode(const EpisodeConfig& cfg);

std::string canonical_config_string(const EpisodeConfig& cfg);
std::uint64_t config_hash(const EpisodeConfig& cfg);

// Deterministic bytes for a fixed seed: {schema_version, config_hash,
// per-revolution mean_error / si / rho / center}.
std::string episode_summary_json(const EpisodeLog& log);

// CSV columns: revolution,x_c,y_c,rho,mean_error,integral_error.
void write_controller_trace_csv(const EpisodeLog& log, std::ostream& os);

}  // namespace uavloc
