#include "uavloc/learning/phi.hpp"

#include <stdexcept>

namespace uavloc {

std::vector<double> PhiMatrix::flattened() const {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n) * (l + 3));
    for (int row = 0; row < n; ++row) {
        for (int col = 0; col < l; ++col)
            out.push_back(gamma_block[static_cast<std::size_t>(row) * l + col]);
        for (int col = 0; col < 3; ++col)
            out.push_back(spot_block[static_cast<std::size_t>(row) * 3 + col]);
    }
    return out;
}

PhiMatrix build_phi(const std::vector<std::vector<double>>& ranges, const UavPath& path) {
    if (ranges.empty() || ranges.size() != path.spots.size())
        throw std::invalid_argument("build_phi: ranges rows must match path spots");
    PhiMatrix phi;
    phi.n = static_cast<int>(ranges.size());
    phi.l = static_cast<int>(ranges.front().size());
    if (phi.l < 1) throw std::invalid_argument("build_phi: need at least one measurement per spot");
    phi.gamma_block.reserve(static_cast<std::size_t>(phi.n) * phi.l);
    phi.spot_block.reserve(static_cast<std::size_t>(phi.n) * 3);
    for (int row = 0; row < phi.n; ++row) {
        const auto& r = ranges[static_cast<std::size_t>(row)];
        if (static_cast<int>(r.size()) != phi.l)
            throw std::invalid_argument("build_phi: ragged range matrix");
        for (double v : r) {
            if (v < 0.0) throw std::invalid_argument("build_phi: negative range entry");
            phi.gamma_block.push_back(v);
        }
        const Vec3& s = path.spots[static_cast<std::size_t>(row)];
        phi.spot_block.push_back(s.x);
        phi.spot_block.push_back(s.y);
        phi.spot_block.push_back(s.z);
    }
    return phi;
}

PhiMatrix normalized(const PhiMatrix& phi, double scale) {
    if (!(scale > 0.0)) throw std::invalid_argument("normalized: scale must be > 0");
    PhiMatrix out = phi;
    for (double& v : out.gamma_block) v /= scale;
    for (double& v : out.spot_block) v /= scale;
    return out;
}

PhiMatrix centered_normalized(const PhiMatrix& phi, const Vec2& center, double scale) {
    if (!(scale > 0.0)) throw std::invalid_argument("centered_normalized: scale must be > 0");
    PhiMatrix out = phi;
    for (double& v : out.gamma_block) v /= scale;
    for (int row = 0; row < out.n; ++row) {
        out.spot_block[static_cast<std::size_t>(row) * 3 + 0] =
            (phi.spot_block[static_cast<std::size_t>(row) * 3 + 0] - center.x) / scale;
        out.spot_block[static_cast<std::size_t>(row) * 3 + 1] =
            (phi.spot_block[static_cast<std::size_t>(row) * 3 + 1] - center.y) / scale;
        out.spot_block[static_cast<std::size_t>(row) * 3 + 2] =
            phi.spot_block[static_cast<std::size_t>(row) * 3 + 2] / scale;
    }
    return out;
}

}  // namespace uavloc
