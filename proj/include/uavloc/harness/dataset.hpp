// Synthetic training data: independent simulated revolutions with randomized
// orbit geometry and mobility, paired with current and future target tracks.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "uavloc/harness/episode.hpp"
#include "uavloc/learning/phi.hpp"
#include "uavloc/learning/train.hpp"

namespace uavloc {

struct DatasetSample {
    PhiMatrix phi;                // raw (unnormalized) measurement matrix
    std::vector<Vec2> labels_u;   // target positions per spot
    std::vector<Vec2> labels_f;   // future target positions (horizon steps)
    Vec2 center;                  // orbit center used for this revolution
};

struct Dataset {
    int n = 0;
    int l = 0;
    int horizon = 0;
    std::vector<DatasetSample> samples;
};

// Deterministic for a fixed seed regardless of worker count: each sample gets
// a stateless derived stream.
Dataset generate_dataset(int n_samples, const EpisodeConfig& tmpl, std::uint64_t seed);

void save_dataset(const Dataset& ds, const std::string& path);
Dataset load_dataset(const std::string& path);

// Center-relative, scale-normalized training pairs.
std::vector<LabeledSample> cnn_samples(const Dataset& ds, double scale_m);
std::vector<LabeledSample> lstm_samples(const Dataset& ds, double scale_m);

}  // namespace uavloc
