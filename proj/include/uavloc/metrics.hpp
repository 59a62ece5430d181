// Localization-quality metrics: per-revolution mean error and the
// similarity index (Jain-fairness-style uniformity of per-spot errors).

#pragma once

#include <vector>

#include "uavloc/geometry.hpp"

namespace uavloc {

struct TrackError {
    std::vector<double> per_spot_errors;  // meters
    double mean = 0.0;
    double si = 1.0;  // in [1/N, 1]
};

// SI = (sum e_n)^2 / (N * sum e_n^2). All-zero error vectors are defined
// as SI = 1 (perfectly uniform zero error).
double similarity_index(const std::vector<Vec2>& truth, const std::vector<Vec2>& estimate);
double similarity_index_from_errors(const std::vector<double>& errors);

double mean_localization_error(const std::vector<Vec2>& truth, const std::vector<Vec2>& estimate);

TrackError compute_track_error(const std::vector<Vec2>& truth, const std::vector<Vec2>& estimate);

}  // namespace uavloc
