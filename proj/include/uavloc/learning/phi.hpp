// Per-revolution measurement matrix: the N x L range block concatenated with
// the N x 3 block of measurement-spot coordinates, processed downstream as a
// single-channel image.

#pragma once

#include <vector>

#include "uavloc/geometry.hpp"

namespace uavloc {

struct PhiMatrix {
    int n = 0;  // measurement spots (rows)
    int l = 0;  // measurements per spot
    std::vector<double> gamma_block;  // n*l, row-major
    std::vector<double> spot_block;   // n*3, row = spot coordinates

    // Row n of the combined n x (l+3) matrix is [gamma row | x y z].
    std::vector<double> flattened() const;
};

PhiMatrix build_phi(const std::vector<std::vector<double>>& ranges, const UavPath& path);

// Plain scaling of every entry by 1/scale.
PhiMatrix normalized(const PhiMatrix& phi, double scale);

// Network-facing variant: spot coordinates are shifted by the orbit center
// before scaling, making the input (and labels built the same way)
// translation-invariant.
PhiMatrix centered_normalized(const PhiMatrix& phi, const Vec2& center, double scale);

}  // namespace uavloc
