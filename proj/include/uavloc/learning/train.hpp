// Training loop shared by the trajectory regressor and the forecaster:
// momentum SGD over per-sample reverse-mode gradients, best-validation
// checkpointing with early stopping, and a finite-difference gradient check.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "uavloc/learning/tensor.hpp"

namespace uavloc {

struct LabeledSample {
    std::vector<double> input;
    std::vector<double> target;
};

class TrainableModel {
public:
    virtual ~TrainableModel() = default;

    // Runs the forward pass, keeps the caches needed by backward(), and
    // returns the mean-squared error against the sample target.
    virtual double forward_loss(const LabeledSample& sample) = 0;

    // Accumulates parameter gradients for the last forward_loss call.
    virtual void backward() = 0;

    virtual std::vector<Tensor*> params() = 0;

    void zero_grads();
    int param_count();
    std::vector<std::vector<double>> snapshot();
    void restore(const std::vector<std::vector<double>>& snap);
};

// Index sets are disjoint and exhaustive; proportions 66.6% / 22.2% / 11.1%
// of the total within one sample.
struct DatasetSplit {
    std::vector<int> train;
    std::vector<int> test;
    std::vector<int> validation;
};

DatasetSplit make_split(int n_samples, std::uint64_t seed);

struct TrainConfig {
    int epochs = 200;
    int batch_size = 16;
    double lr = 1e-3;
    double momentum = 0.9;
    int patience = 20;  // epochs without validation improvement
    std::uint64_t shuffle_seed = 7;
    bool verbose = false;
};

struct CurvePoint {
    int epoch;
    double train_loss;
    double val_loss;
};

struct TrainResult {
    bool diverged = false;  // loss went non-finite; model holds the last finite checkpoint
    int best_epoch = 0;
    double best_val_loss = 0.0;
    std::vector<CurvePoint> curve;
};

TrainResult train_model(TrainableModel& model, const std::vector<LabeledSample>& samples,
                        const DatasetSplit& split, const TrainConfig& cfg);

double eval_loss(TrainableModel& model, const std::vector<LabeledSample>& samples,
                 const std::vector<int>& indices);

// Central-difference check of every parameter gradient (epsilon in
// [1e-7, 1e-3]); returns the maximum relative error.
double grad_check(TrainableModel& model, const LabeledSample& sample, double epsilon);

// CSV columns: epoch,train_loss,val_loss.
void write_curve_csv(const std::vector<CurvePoint>& curve, std::ostream& os);

}  // namespace uavloc
