#include "uavloc/learning/cnn.hpp"

#include <cmath>
#include <stdexcept>

namespace uavloc {

CnnModel::CnnModel(const CnnConfig& cfg)
    : cfg_(cfg),
      init_rng_(cfg.init_seed),
      conv1_(1, cfg.conv1_ch, cfg.kernel, init_rng_),
      conv2_(cfg.conv1_ch, cfg.conv2_ch, cfg.kernel, init_rng_),
      h1_(conv1_.out_dim(cfg.n)),
      w1_(conv1_.out_dim(cfg.l + 3)),
      hp1_(h1_ / 2),
      wp1_(w1_ / 2),
      h2_(conv2_.out_dim(hp1_)),
      w2_(conv2_.out_dim(wp1_)),
      hp2_(h2_ / 2),
      wp2_(w2_ / 2),
      flat_(cfg.conv2_ch * hp2_ * wp2_),
      fc1_(flat_, cfg.fc1, init_rng_),
      fc2_(cfg.fc1, cfg.fc2, init_rng_),
      fc3_(cfg.fc2, 2 * cfg.n, init_rng_) {
    if (hp2_ < 1 || wp2_ < 1)
        throw std::invalid_argument("cnn: input too small for two conv/pool modules");
}

std::vector<double> CnnModel::run_forward(const std::vector<double>& input, Work& work) const {
    if (static_cast<int>(input.size()) != cfg_.n * (cfg_.l + 3))
        throw std::invalid_argument("cnn: input must be N x (L+3)");
    auto x = conv1_.forward(input, cfg_.n, cfg_.l + 3, work.conv1);
    x = relu_.forward(x, work.relu1);
    x = pool_.forward(x, cfg_.conv1_ch, h1_, w1_, work.pool1);
    x = conv2_.forward(x, hp1_, wp1_, work.conv2);
    x = relu_.forward(x, work.relu2);
    x = pool_.forward(x, cfg_.conv2_ch, h2_, w2_, work.pool2);
    x = fc1_.forward(x, work.fc1);
    x = relu_.forward(x, work.relu3);
    x = fc2_.forward(x, work.fc2);
    x = relu_.forward(x, work.relu4);
    x = fc3_.forward(x, work.fc3);
    work.output = x;
    return x;
}

std::vector<Vec2> CnnModel::predict(const PhiMatrix& phi_normalized) const {
    if (phi_normalized.n != cfg_.n || phi_normalized.l != cfg_.l)
        throw std::invalid_argument("cnn: phi shape does not match the model");
    Work work;
    const auto out = run_forward(phi_normalized.flattened(), work);
    std::vector<Vec2> coords(static_cast<std::size_t>(cfg_.n));
    for (int i = 0; i < cfg_.n; ++i)
        coords[static_cast<std::size_t>(i)] = {out[static_cast<std::size_t>(2 * i)],
                                               out[static_cast<std::size_t>(2 * i + 1)]};
    return coords;
}

double CnnModel::forward_loss(const LabeledSample& sample) {
    if (static_cast<int>(sample.target.size()) != 2 * cfg_.n)
        throw std::invalid_argument("cnn: target must be N x 2");
    const auto out = run_forward(sample.input, train_work_);
    train_work_.target = sample.target;
    double loss = 0.0;
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double d = out[i] - sample.target[i];
        loss += d * d;
    }
    return loss / static_cast<double>(out.size());
}

void CnnModel::backward() {
    Work& w = train_work_;
    if (w.output.empty()) throw std::logic_error("cnn: backward before forward_loss");
    std::vector<double> grad(w.output.size());
    const double scale = 2.0 / static_cast<double>(w.output.size());
    for (std::size_t i = 0; i < grad.size(); ++i)
        grad[i] = scale * (w.output[i] - w.target[i]);

    auto g = fc3_.backward(w.fc3, grad);
    g = relu_.backward(w.relu4, g);
    g = fc2_.backward(w.fc2, g);
    g = relu_.backward(w.relu3, g);
    g = fc1_.backward(w.fc1, g);
    g = pool_.backward(w.pool2, g);
    g = relu_.backward(w.relu2, g);
    g = conv2_.backward(w.conv2, g);
    g = pool_.backward(w.pool1, g);
    g = relu_.backward(w.relu1, g);
    conv1_.backward(w.conv1, g);
}

std::vector<Tensor*> CnnModel::params() {
    return {&conv1_.weight, &conv1_.bias, &conv2_.weight, &conv2_.bias,
            &fc1_.weight,   &fc1_.bias,   &fc2_.weight,   &fc2_.bias,
            &fc3_.weight,   &fc3_.bias};
}

}  // namespace uavloc
