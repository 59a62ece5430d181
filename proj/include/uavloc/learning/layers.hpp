// Reverse-mode building blocks: 2D convolution, 2x2 max-pool, ReLU and dense
// layers. Forward passes write into caller-owned caches so inference stays
// reentrant; backward passes accumulate parameter gradients on the layer.

#pragma once

#include <vector>

#include "uavloc/learning/tensor.hpp"
#include "uavloc/rng.hpp"

namespace uavloc {

struct Conv2d {
    Tensor weight;  // [out_ch, in_ch, k, k]
    Tensor bias;    // [out_ch]
    int in_ch, out_ch, k, pad;

    Conv2d(int in_channels, int out_channels, int kernel, Rng& rng);

    int out_dim(int in_dim) const { return in_dim + 2 * pad - k + 1; }

    struct Cache {
        std::vector<double> input;
        int h = 0, w = 0;
    };

    // input is [in_ch, h, w]; returns [out_ch, out_dim(h), out_dim(w)].
    std::vector<double> forward(const std::vector<double>& input, int h, int w,
                                Cache& cache) const;
    std::vector<double> backward(const Cache& cache, const std::vector<double>& dout);
};

struct MaxPool2 {
    struct Cache {
        std::vector<int> argmax;  // flat input index per output element
        int c = 0, h = 0, w = 0;
    };

    // Floor semantics: trailing odd rows/columns are dropped.
    std::vector<double> forward(const std::vector<double>& input, int c, int h, int w,
                                Cache& cache) const;
    std::vector<double> backward(const Cache& cache, const std::vector<double>& dout) const;
};

struct Relu {
    struct Cache {
        std::vector<unsigned char> active;
    };

    std::vector<double> forward(const std::vector<double>& input, Cache& cache) const;
    std::vector<double> backward(const Cache& cache, const std::vector<double>& dout) const;
};

struct Dense {
    Tensor weight;  // [out, in]
    Tensor bias;    // [out]
    int in_dim, out_dim;

    Dense(int in, int out, Rng& rng);

    struct Cache {
        std::vector<double> input;
    };

    std::vector<double> forward(const std::vector<double>& input, Cache& cache) const;
    std::vector<double> backward(const Cache& cache, const std::vector<double>& dout);
};

}  // namespace uavloc
