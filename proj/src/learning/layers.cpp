#include "uavloc/learning/layers.hpp"

#include <cmath>
#include <stdexcept>

namespace uavloc {

namespace {

double he_limit(int fan_in) { return std::sqrt(6.0 / fan_in); }

void fill_uniform(Tensor& t, double limit, Rng& rng) {
    for (double& v : t.data) v = rng.uniform(-limit, limit);
}

}  // namespace

Conv2d::Conv2d(int in_channels, int out_channels, int kernel, Rng& rng)
    : weight({out_channels, in_channels, kernel, kernel}),
      bias({out_channels}),
      in_ch(in_channels),
      out_ch(out_channels),
      k(kernel),
      pad((kernel - 1) / 2) {
    if (kernel < 1) throw std::invalid_argument("conv: kernel must be >= 1");
    fill_uniform(weight, he_limit(in_channels * kernel * kernel), rng);
}

std::vector<double> Conv2d::forward(const std::vector<double>& input, int h, int w,
                                    Cache& cache) const {
    if (static_cast<int>(input.size()) != in_ch * h * w)
        throw std::invalid_argument("conv: input size mismatch");
    const int ho = out_dim(h);
    const int wo = out_dim(w);
    if (ho < 1 || wo < 1) throw std::invalid_argument("conv: output would be empty");
    cache.input = input;
    cache.h = h;
    cache.w = w;

    std::vector<double> out(static_cast<std::size_t>(out_ch) * ho * wo);
    for (int oc = 0; oc < out_ch; ++oc) {
        for (int i = 0; i < ho; ++i) {
            for (int j = 0; j < wo; ++j) {
                double acc = bias.data[static_cast<std::size_t>(oc)];
                for (int ic = 0; ic < in_ch; ++ic) {
                    for (int u = 0; u < k; ++u) {
                        const int y = i + u - pad;
                        if (y < 0 || y >= h) continue;
                        for (int v = 0; v < k; ++v) {
                            const int x = j + v - pad;
                            if (x < 0 || x >= w) continue;
                            acc += weight.data[static_cast<std::size_t>(
                                       ((oc * in_ch + ic) * k + u) * k + v)] *
                                   input[static_cast<std::size_t>((ic * h + y) * w + x)];
                        }
                    }
                }
                out[static_cast<std::size_t>((oc * ho + i) * wo + j)] = acc;
            }
        }
    }
    return out;
}

std::vector<double> Conv2d::backward(const Cache& cache, const std::vector<double>& dout) {
    const int h = cache.h;
    const int w = cache.w;
    const int ho = out_dim(h);
    const int wo = out_dim(w);
    std::vector<double> dinput(cache.input.size(), 0.0);
    for (int oc = 0; oc < out_ch; ++oc) {
        for (int i = 0; i < ho; ++i) {
            for (int j = 0; j < wo; ++j) {
                const double g = dout[static_cast<std::size_t>((oc * ho + i) * wo + j)];
                if (g == 0.0) continue;
                bias.grad[static_cast<std::size_t>(oc)] += g;
                for (int ic = 0; ic < in_ch; ++ic) {
                    for (int u = 0; u < k; ++u) {
                        const int y = i + u - pad;
                        if (y < 0 || y >= h) continue;
                        for (int v = 0; v < k; ++v) {
                            const int x = j + v - pad;
                            if (x < 0 || x >= w) continue;
                            const std::size_t wi =
                                static_cast<std::size_t>(((oc * in_ch + ic) * k + u) * k + v);
                            const std::size_t xi = static_cast<std::size_t>((ic * h + y) * w + x);
                            weight.grad[wi] += g * cache.input[xi];
                            dinput[xi] += g * weight.data[wi];
                        }
                    }
                }
            }
        }
    }
    return dinput;
}

std::vector<double> MaxPool2::forward(const std::vector<double>& input, int c, int h, int w,
                                      Cache& cache) const {
    const int ho = h / 2;
    const int wo = w / 2;
    if (ho < 1 || wo < 1) throw std::invalid_argument("maxpool: input too small");
    cache.c = c;
    cache.h = h;
    cache.w = w;
    cache.argmax.assign(static_cast<std::size_t>(c) * ho * wo, 0);

    std::vector<double> out(cache.argmax.size());
    for (int ch = 0; ch < c; ++ch) {
        for (int i = 0; i < ho; ++i) {
            for (int j = 0; j < wo; ++j) {
                int best_idx = (ch * h + 2 * i) * w + 2 * j;
                double best = input[static_cast<std::size_t>(best_idx)];
                for (int u = 0; u < 2; ++u) {
                    for (int v = 0; v < 2; ++v) {
                        const int idx = (ch * h + 2 * i + u) * w + 2 * j + v;
                        if (input[static_cast<std::size_t>(idx)] > best) {
                            best = input[static_cast<std::size_t>(idx)];
                            best_idx = idx;
                        }
                    }
                }
                const std::size_t oi = static_cast<std::size_t>((ch * ho + i) * wo + j);
                out[oi] = best;
                cache.argmax[oi] = best_idx;
            }
        }
    }
    return out;
}

std::vector<double> MaxPool2::backward(const Cache& cache, const std::vector<double>& dout) const {
    std::vector<double> dinput(static_cast<std::size_t>(cache.c) * cache.h * cache.w, 0.0);
    for (std::size_t i = 0; i < dout.size(); ++i)
        dinput[static_cast<std::size_t>(cache.argmax[i])] += dout[i];
    return dinput;
}

std::vector<double> Relu::forward(const std::vector<double>& input, Cache& cache) const {
    cache.active.assign(input.size(), 0);
    std::vector<double> out(input.size());
    for (std::size_t i = 0; i < input.size(); ++i) {
        if (input[i] > 0.0) {
            out[i] = input[i];
            cache.active[i] = 1;
        } else {
            out[i] = 0.0;
        }
    }
    return out;
}

std::vector<double> Relu::backward(const Cache& cache, const std::vector<double>& dout) const {
    std::vector<double> dinput(dout.size());
    for (std::size_t i = 0; i < dout.size(); ++i) dinput[i] = cache.active[i] ? dout[i] : 0.0;
    return dinput;
}

Dense::Dense(int in, int out, Rng& rng)
    : weight({out, in}), bias({out}), in_dim(in), out_dim(out) {
    fill_uniform(weight, he_limit(in), rng);
}

std::vector<double> Dense::forward(const std::vector<double>& input, Cache& cache) const {
    if (static_cast<int>(input.size()) != in_dim)
        throw std::invalid_argument("dense: input size mismatch");
    cache.input = input;
    std::vector<double> out(static_cast<std::size_t>(out_dim));
    for (int o = 0; o < out_dim; ++o) {
        double acc = bias.data[static_cast<std::size_t>(o)];
        const double* row = &weight.data[static_cast<std::size_t>(o) * in_dim];
        for (int i = 0; i < in_dim; ++i) acc += row[i] * input[static_cast<std::size_t>(i)];
        out[static_cast<std::size_t>(o)] = acc;
    }
    return out;
}

std::vector<double> Dense::backward(const Cache& cache, const std::vector<double>& dout) {
    std::vector<double> dinput(static_cast<std::size_t>(in_dim), 0.0);
    for (int o = 0; o < out_dim; ++o) {
        const double g = dout[static_cast<std::size_t>(o)];
        bias.grad[static_cast<std::size_t>(o)] += g;
        double* wrow = &weight.grad[static_cast<std::size_t>(o) * in_dim];
        const double* row = &weight.data[static_cast<std::size_t>(o) * in_dim];
        for (int i = 0; i < in_dim; ++i) {
            wrow[i] += g * cache.input[static_cast<std::size_t>(i)];
            dinput[static_cast<std::size_t>(i)] += g * row[i];
        }
    }
    return dinput;
}

}  // namespace uavloc
