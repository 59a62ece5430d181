// Sequence-to-sequence forecaster. An encoder LSTM folds the observed track
// into its final (h, c) state; a decoder LSTM unrolls from that state for the
// forecast horizon, a shared dense head emitting one 2D position per step.
// Training uses teacher forcing; forecasting feeds predictions back in.

#pragma once

#include <cstdint>

#include "uavloc/geometry.hpp"
#include "uavloc/learning/layers.hpp"
#include "uavloc/learning/train.hpp"

namespace uavloc {

class LstmCell {
public:
    LstmCell(int input_dim, int hidden, Rng& rng);

    struct Cache {
        std::vector<double> x, h_prev, c_prev;
        std::vector<double> i, f, g, o;  // post-activation gates
        std::vector<double> c, h, tanh_c;
    };

    void forward(const std::vector<double>& x, const std::vector<double>& h_prev,
                 const std::vector<double>& c_prev, Cache& cache) const;

    // Accumulates parameter gradients; writes input/state gradients.
    void backward(const Cache& cache, const std::vector<double>& dh,
                  const std::vector<double>& dc, std::vector<double>& dx,
                  std::vector<double>& dh_prev, std::vector<double>& dc_prev);

    Tensor w_x;  // [4H, in]  gate order i, f, g, o
    Tensor w_h;  // [4H, H]
    Tensor b;    // [4H]
    int input_dim, hidden;
};

struct LstmConfig {
    int input_dim = 2;
    int hidden = 64;
    int output_dim = 2;
    int horizon = 20;  // forecast steps F
    std::uint64_t init_seed = 1;
};

class Seq2SeqModel : public TrainableModel {
public:
    explicit Seq2SeqModel(const LstmConfig& cfg);

    const LstmConfig& config() const { return cfg_; }

    // Autoregressive forecast of horizon steps past the observed track.
    std::vector<Vec2> forecast(const std::vector<Vec2>& observed) const;

    // sample.input is the observed track (T x 2 flattened), sample.target the
    // future track (horizon x 2 flattened).
    double forward_loss(const LabeledSample& sample) override;
    void backward() override;
    std::vector<Tensor*> params() override;

private:
    struct Work {
        std::vector<LstmCell::Cache> enc;
        std::vector<LstmCell::Cache> dec;
        std::vector<Dense::Cache> head;
        std::vector<std::vector<double>> outputs;
        std::vector<double> target;
    };

    void run_encoder(const std::vector<double>& flat_track, std::size_t steps,
                     std::vector<LstmCell::Cache>& caches, std::vector<double>& h,
                     std::vector<double>& c) const;

    LstmConfig cfg_;
    Rng init_rng_;
    LstmCell encoder_;
    LstmCell decoder_;
    Dense head_;
    Work work_;
};

}  // namespace uavloc
