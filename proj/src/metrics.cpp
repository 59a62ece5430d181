#include "uavloc/metrics.hpp"

#include <stdexcept>

namespace uavloc {

namespace {

std::vector<double> per_spot_errors(const std::vector<Vec2>& truth,
                                    const std::vector<Vec2>& estimate) {
    if (truth.size() != estimate.size() || truth.empty())
        throw std::invalid_argument("metrics: truth/estimate shape mismatch");
    std::vector<double> e(truth.size());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = truth[i].dist(estimate[i]);
    return e;
}

}  // namespace

double similarity_index_from_errors(const std::vector<double>& errors) {
    if (errors.empty()) throw std::invalid_argument("metrics: empty error vector");
    double sum = 0.0, sum_sq = 0.0;
    for (double e : errors) {
        sum += e;
        sum_sq += e * e;
    }
    if (sum_sq == 0.0) return 1.0;  // constant zero error is perfectly uniform
    return (sum * sum) / (static_cast<double>(errors.size()) * sum_sq);
}

double similarity_index(const std::vector<Vec2>& truth, const std::vector<Vec2>& estimate) {
    return similarity_index_from_errors(per_spot_errors(truth, estimate));
}

double mean_localization_error(const std::vector<Vec2>& truth, const std::vector<Vec2>& estimate) {
    const auto e = per_spot_errors(truth, estimate);
    double sum = 0.0;
    for (double v : e) sum += v;
    return sum / static_cast<double>(e.size());
}

TrackError compute_track_error(const std::vector<Vec2>& truth, const std::vector<Vec2>& estimate) {
    TrackError out;
    out.per_spot_errors = per_spot_errors(truth, estimate);
    double sum = 0.0;
    for (double v : out.per_spot_errors) sum += v;
    out.mean = sum / static_cast<double>(out.per_spot_errors.size());
    out.si = similarity_index_from_errors(out.per_spot_errors);
    return out;
}

}  // namespace uavloc
