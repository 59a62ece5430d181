#include "uavloc/learning/lstm.hpp"

#include <cmath>
#include <stdexcept>

namespace uavloc {

namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

}  // namespace

LstmCell::LstmCell(int input_dim_in, int hidden_in, Rng& rng)
    : w_x({4 * hidden_in, input_dim_in}),
      w_h({4 * hidden_in, hidden_in}),
      b({4 * hidden_in}),
      input_dim(input_dim_in),
      hidden(hidden_in) {
    const double limit = std::sqrt(6.0 / (input_dim_in + hidden_in));
    for (double& v : w_x.data) v = rng.uniform(-limit, limit);
    for (double& v : w_h.data) v = rng.uniform(-limit, limit);
    // Forget-gate bias starts open so long-range state survives early training.
    for (int j = 0; j < hidden; ++j) b.data[static_cast<std::size_t>(hidden + j)] = 1.0;
}

void LstmCell::forward(const std::vector<double>& x, const std::vector<double>& h_prev,
                       const std::vector<double>& c_prev, Cache& cache) const {
    const int hn = hidden;
    std::vector<double> z(static_cast<std::size_t>(4 * hn));
    for (int r = 0; r < 4 * hn; ++r) {
        double acc = b.data[static_cast<std::size_t>(r)];
        const double* wx = &w_x.data[static_cast<std::size_t>(r) * input_dim];
        for (int i = 0; i < input_dim; ++i) acc += wx[i] * x[static_cast<std::size_t>(i)];
        const double* wh = &w_h.data[static_cast<std::size_t>(r) * hn];
        for (int i = 0; i < hn; ++i) acc += wh[i] * h_prev[static_cast<std::size_t>(i)];
        z[static_cast<std::size_t>(r)] = acc;
    }

    cache.x = x;
    cache.h_prev = h_prev;
    cache.c_prev = c_prev;
    cache.i.resize(static_cast<std::size_t>(hn));
    cache.f.resize(static_cast<std::size_t>(hn));
    cache.g.resize(static_cast<std::size_t>(hn));
    cache.o.resize(static_cast<std::size_t>(hn));
    cache.c.resize(static_cast<std::size_t>(hn));
    cache.h.resize(static_cast<std::size_t>(hn));
    cache.tanh_c.resize(static_cast<std::size_t>(hn));
    for (int j = 0; j < hn; ++j) {
        const std::size_t js = static_cast<std::size_t>(j);
        cache.i[js] = sigmoid(z[js]);
        cache.f[js] = sigmoid(z[static_cast<std::size_t>(hn + j)]);
        cache.g[js] = std::tanh(z[static_cast<std::size_t>(2 * hn + j)]);
        cache.o[js] = sigmoid(z[static_cast<std::size_t>(3 * hn + j)]);
        cache.c[js] = cache.f[js] * c_prev[js] + cache.i[js] * cache.g[js];
        cache.tanh_c[js] = std::tanh(cache.c[js]);
        cache.h[js] = cache.o[js] * cache.tanh_c[js];
    }
}

void LstmCell::backward(const Cache& cache, const std::vector<double>& dh,
                        const std::vector<double>& dc, std::vector<double>& dx,
                        std::vector<double>& dh_prev, std::vector<double>& dc_prev) {
    const int hn = hidden;
    std::vector<double> dz(static_cast<std::size_t>(4 * hn));
    dc_prev.assign(static_cast<std::size_t>(hn), 0.0);
    for (int j = 0; j < hn; ++j) {
        const std::size_t js = static_cast<std::size_t>(j);
        const double d_o = dh[js] * cache.tanh_c[js];
        const double d_c = dc[js] + dh[js] * cache.o[js] * (1.0 - cache.tanh_c[js] * cache.tanh_c[js]);
        const double d_i = d_c * cache.g[js];
        const double d_f = d_c * cache.c_prev[js];
        const double d_g = d_c * cache.i[js];
        dc_prev[js] = d_c * cache.f[js];
        dz[js] = d_i * cache.i[js] * (1.0 - cache.i[js]);
        dz[static_cast<std::size_t>(hn + j)] = d_f * cache.f[js] * (1.0 - cache.f[js]);
        dz[static_cast<std::size_t>(2 * hn + j)] = d_g * (1.0 - cache.g[js] * cache.g[js]);
        dz[static_cast<std::size_t>(3 * hn + j)] = d_o * cache.o[js] * (1.0 - cache.o[js]);
    }

    dx.assign(static_cast<std::size_t>(input_dim), 0.0);
    dh_prev.assign(static_cast<std::size_t>(hn), 0.0);
    for (int r = 0; r < 4 * hn; ++r) {
        const std::size_t rs = static_cast<std::size_t>(r);
        const double g = dz[rs];
        if (g == 0.0) continue;
        b.grad[rs] += g;
        double* wxg = &w_x.grad[rs * static_cast<std::size_t>(input_dim)];
        const double* wx = &w_x.data[rs * static_cast<std::size_t>(input_dim)];
        for (int i = 0; i < input_dim; ++i) {
            wxg[i] += g * cache.x[static_cast<std::size_t>(i)];
            dx[static_cast<std::size_t>(i)] += g * wx[i];
        }
        double* whg = &w_h.grad[rs * static_cast<std::size_t>(hn)];
        const double* wh = &w_h.data[rs * static_cast<std::size_t>(hn)];
        for (int i = 0; i < hn; ++i) {
            whg[i] += g * cache.h_prev[static_cast<std::size_t>(i)];
            dh_prev[static_cast<std::size_t>(i)] += g * wh[i];
        }
    }
}

Seq2SeqModel::Seq2SeqModel(const LstmConfig& cfg)
    : cfg_(cfg),
      init_rng_(cfg.init_seed),
      encoder_(cfg.input_dim, cfg.hidden, init_rng_),
      decoder_(cfg.input_dim, cfg.hidden, init_rng_),
      head_(cfg.hidden, cfg.output_dim, init_rng_) {
    if (cfg.horizon < 1) throw std::invalid_argument("lstm: horizon must be >= 1");
}

void Seq2SeqModel::run_encoder(const std::vector<double>& flat_track, std::size_t steps,
                               std::vector<LstmCell::Cache>& caches, std::vector<double>& h,
                               std::vector<double>& c) const {
    h.assign(static_cast<std::size_t>(cfg_.hidden), 0.0);
    c.assign(static_cast<std::size_t>(cfg_.hidden), 0.0);
    caches.resize(steps);
    for (std::size_t t = 0; t < steps; ++t) {
        const std::vector<double> x(flat_track.begin() + static_cast<long>(t * 2),
                                    flat_track.begin() + static_cast<long>(t * 2 + 2));
        encoder_.forward(x, h, c, caches[t]);
        h = caches[t].h;
        c = caches[t].c;
    }
}

std::vector<Vec2> Seq2SeqModel::forecast(const std::vector<Vec2>& observed) const {
    if (observed.empty()) throw std::invalid_argument("lstm: empty observed track");
    std::vector<double> flat;
    flat.reserve(observed.size() * 2);
    for (const Vec2& p : observed) {
        flat.push_back(p.x);
        flat.push_back(p.y);
    }
    std::vector<LstmCell::Cache> enc_caches;
    std::vector<double> h, c;
    run_encoder(flat, observed.size(), enc_caches, h, c);

    std::vector<Vec2> out;
    out.reserve(static_cast<std::size_t>(cfg_.horizon));
    std::vector<double> x{observed.back().x, observed.back().y};
    LstmCell::Cache cache;
    Dense::Cache head_cache;
    for (int f = 0; f < cfg_.horizon; ++f) {
        decoder_.forward(x, h, c, cache);
        h = cache.h;
        c = cache.c;
        const auto y = head_.forward(h, head_cache);
        out.push_back({y[0], y[1]});
        x = y;  // feed the prediction back in
    }
    return out;
}

double Seq2SeqModel::forward_loss(const LabeledSample& sample) {
    if (sample.input.size() % 2 != 0 || sample.input.empty())
        throw std::invalid_argument("lstm: input must be T x 2");
    if (static_cast<int>(sample.target.size()) != 2 * cfg_.horizon)
        throw std::invalid_argument("lstm: target must be horizon x 2");
    const std::size_t steps = sample.input.size() / 2;

    std::vector<double> h, c;
    run_encoder(sample.input, steps, work_.enc, h, c);

    work_.dec.resize(static_cast<std::size_t>(cfg_.horizon));
    work_.head.resize(static_cast<std::size_t>(cfg_.horizon));
    work_.outputs.assign(static_cast<std::size_t>(cfg_.horizon), {});
    work_.target = sample.target;

    // Teacher forcing: decoder input is the previous target position.
    std::vector<double> x{sample.input[sample.input.size() - 2],
                          sample.input[sample.input.size() - 1]};
    double loss = 0.0;
    for (int f = 0; f < cfg_.horizon; ++f) {
        const std::size_t fs = static_cast<std::size_t>(f);
        decoder_.forward(x, h, c, work_.dec[fs]);
        h = work_.dec[fs].h;
        c = work_.dec[fs].c;
        work_.outputs[fs] = head_.forward(h, work_.head[fs]);
        const double ex = work_.outputs[fs][0] - sample.target[fs * 2];
        const double ey = work_.outputs[fs][1] - sample.target[fs * 2 + 1];
        loss += ex * ex + ey * ey;
        x = {sample.target[fs * 2], sample.target[fs * 2 + 1]};
    }
    return loss / static_cast<double>(2 * cfg_.horizon);
}

void Seq2SeqModel::backward() {
    if (work_.outputs.empty()) throw std::logic_error("lstm: backward before forward_loss");
    const int hn = cfg_.hidden;
    const double scale = 2.0 / static_cast<double>(2 * cfg_.horizon);

    std::vector<double> dh(static_cast<std::size_t>(hn), 0.0);
    std::vector<double> dc(static_cast<std::size_t>(hn), 0.0);
    std::vector<double> dx, dh_prev, dc_prev;

    for (int f = cfg_.horizon - 1; f >= 0; --f) {
        const std::size_t fs = static_cast<std::size_t>(f);
        std::vector<double> dy{
            scale * (work_.outputs[fs][0] - work_.target[fs * 2]),
            scale * (work_.outputs[fs][1] - work_.target[fs * 2 + 1])};
        const auto dh_head = head_.backward(work_.head[fs], dy);
        for (int j = 0; j < hn; ++j) dh[static_cast<std::size_t>(j)] += dh_head[static_cast<std::size_t>(j)];
        decoder_.backward(work_.dec[fs], dh, dc, dx, dh_prev, dc_prev);
        dh = dh_prev;
        dc = dc_prev;
        // Teacher-forced inputs are constants; dx stops here.
    }

    for (int t = static_cast<int>(work_.enc.size()) - 1; t >= 0; --t) {
        encoder_.backward(work_.enc[static_cast<std::size_t>(t)], dh, dc, dx, dh_prev, dc_prev);
        dh = dh_prev;
        dc = dc_prev;
    }
}

std::vector<Tensor*> Seq2SeqModel::params() {
    return {&encoder_.w_x, &encoder_.w_h, &encoder_.b,
            &decoder_.w_x, &decoder_.w_h, &decoder_.b,
            &head_.weight, &head_.bias};
}

}  // namespace uavloc
