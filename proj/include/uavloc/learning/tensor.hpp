// Dense row-major tensor with a gradient buffer. The training kernel works on
// one sample at a time, so everything here stays flat doubles.

#pragma once

#include <numeric>
#include <stdexcept>
#include <vector>

namespace uavloc {

struct Tensor {
    std::vector<int> shape;
    std::vector<double> data;
    std::vector<double> grad;

    Tensor() = default;

    explicit Tensor(std::vector<int> shape_in) : shape(std::move(shape_in)) {
        int total = 1;
        for (int d : shape) {
            if (d <= 0) throw std::invalid_argument("tensor: non-positive dimension");
            total *= d;
        }
        data.assign(static_cast<std::size_t>(total), 0.0);
        grad.assign(static_cast<std::size_t>(total), 0.0);
    }

    int size() const { return static_cast<int>(data.size()); }

    void zero_grad() { std::fill(grad.begin(), grad.end(), 0.0); }
};

}  // namespace uavloc
