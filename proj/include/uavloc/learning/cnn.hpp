// Trajectory regressor: two convolution + pool modules feeding three dense
// layers, mapping the normalized measurement matrix to N 2D positions.

#pragma once

#include <cstdint>

#include "uavloc/learning/layers.hpp"
#include "uavloc/learning/phi.hpp"
#include "uavloc/learning/train.hpp"

namespace uavloc {

struct CnnConfig {
    int n = 20;          // measurement spots (input rows, output pairs)
    int l = 20;          // measurements per spot (input has l + 3 columns)
    int conv1_ch = 8;
    int conv2_ch = 16;
    int kernel = 3;
    int fc1 = 256;
    int fc2 = 128;
    std::uint64_t init_seed = 1;
};

class CnnModel : public TrainableModel {
public:
    explicit CnnModel(const CnnConfig& cfg);

    const CnnConfig& config() const { return cfg_; }

    // Inference on a normalized (and typically center-shifted) input; purely
    // local state, safe to call concurrently on a shared const model.
    std::vector<Vec2> predict(const PhiMatrix& phi_normalized) const;

    double forward_loss(const LabeledSample& sample) override;
    void backward() override;
    std::vector<Tensor*> params() override;

private:
    struct Work {
        Conv2d::Cache conv1, conv2;
        MaxPool2::Cache pool1, pool2;
        Relu::Cache relu1, relu2, relu3, relu4;
        Dense::Cache fc1, fc2, fc3;
        std::vector<double> output;
        std::vector<double> target;
    };

    std::vector<double> run_forward(const std::vector<double>& input, Work& work) const;

    CnnConfig cfg_;
    Rng init_rng_;  // consumed during construction; layer order fixes the draw order
    Conv2d conv1_;
    Conv2d conv2_;
    MaxPool2 pool_;
    Relu relu_;
    int h1_, w1_, hp1_, wp1_, h2_, w2_, hp2_, wp2_, flat_;
    Dense fc1_;
    Dense fc2_;
    Dense fc3_;
    Work train_work_;
};

}  // namespace uavloc
