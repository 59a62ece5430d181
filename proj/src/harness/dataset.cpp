#include "uavloc/harness/dataset.hpp"

#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <thread>

namespace uavloc {

namespace {

DatasetSample generate_sample(const EpisodeConfig& tmpl, std::uint64_t sample_seed) {
    Rng rng(sample_seed);

    TrajectoryParams params = tmpl.trajectory;
    params.x_c += rng.uniform(-500.0, 500.0);
    params.y_c += rng.uniform(-500.0, 500.0);
    params.rho = rng.uniform(tmpl.bounds.rho_min, tmpl.bounds.rho_max);
    params.a = rng.uniform(0.0, 0.2 * params.rho);

    MobilityConfig mob = tmpl.mobility;
    mob.seed = Rng::derive_seed(sample_seed, 1);
    mob.area_center = {params.x_c, params.y_c};
    MobilityWalker walker(mob);

    const UavPath path = gen_uav_trajectory(params);
    double perimeter = 0.0;
    for (std::size_t i = 1; i < path.spots.size(); ++i)
        perimeter += path.spots[i].dist(path.spots[i - 1]);
    perimeter += path.spots.front().dist(path.spots.back());
    const double dt = perimeter / tmpl.uav_speed_mps / params.n_spots;

    std::vector<Vec3> track;
    track.reserve(path.spots.size());
    for (std::size_t s = 0; s < path.spots.size(); ++s) {
        walker.advance(dt);
        track.push_back(walker.position());
    }

    const std::vector<double> rubble = draw_rubble_losses(params.n_spots, tmpl.noise, rng);
    const std::vector<double> gamma = true_ranges(path, track);
    std::vector<std::vector<double>> ranges(path.spots.size(),
                                            std::vector<double>(static_cast<std::size_t>(tmpl.meas_per_spot)));
    for (std::size_t s = 0; s < path.spots.size(); ++s)
        for (int m = 0; m < tmpl.meas_per_spot; ++m)
            ranges[s][static_cast<std::size_t>(m)] =
                synth_range(gamma[s], tmpl.noise, rubble[s], rng);

    DatasetSample sample;
    sample.phi = build_phi(ranges, path);
    sample.center = {params.x_c, params.y_c};
    sample.labels_u.reserve(track.size());
    for (const Vec3& p : track) sample.labels_u.push_back(p.xy());
    sample.labels_f.reserve(track.size());
    for (std::size_t f = 0; f < track.size(); ++f) {  // horizon = one revolution
        walker.advance(dt);
        sample.labels_f.push_back(walker.position().xy());
    }
    return sample;
}

}  // namespace

Dataset generate_dataset(int n_samples, const EpisodeConfig& tmpl, std::uint64_t seed) {
    if (n_samples < 1) throw std::invalid_argument("generate_dataset: n_samples must be >= 1");
    tmpl.trajectory.validate();
    tmpl.mobility.validate();
    tmpl.noise.validate();

    Dataset ds;
    ds.n = tmpl.trajectory.n_spots;
    ds.l = tmpl.meas_per_spot;
    ds.horizon = tmpl.trajectory.n_spots;
    ds.samples.resize(static_cast<std::size_t>(n_samples));

    const unsigned hw = std::thread::hardware_concurrency();
    const unsigned workers =
        std::min<unsigned>(std::max(1u, hw), static_cast<unsigned>(n_samples));
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            for (int i = static_cast<int>(w); i < n_samples; i += static_cast<int>(workers))
                ds.samples[static_cast<std::size_t>(i)] =
                    generate_sample(tmpl, Rng::derive_seed(seed, static_cast<std::uint64_t>(i)));
        });
    }
    for (std::thread& t : pool) t.join();
    return ds;
}

namespace {

constexpr char kMagic[4] = {'U', 'V', 'L', 'D'};
constexpr std::uint32_t kVersion = 1;

void write_u32(std::ostream& os, std::uint32_t v) {
    unsigned char buf[4];
    for (int i = 0; i < 4; ++i) buf[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xFF);
    os.write(reinterpret_cast<const char*>(buf), 4);
}

std::uint32_t read_u32(std::istream& is) {
    unsigned char buf[4];
    is.read(reinterpret_cast<char*>(buf), 4);
    if (!is) throw std::runtime_error("dataset: truncated file");
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(buf[i]) << (8 * i);
    return v;
}

void write_doubles(std::ostream& os, const std::vector<double>& v) {
    os.write(reinterpret_cast<const char*>(v.data()),
             static_cast<std::streamsize>(v.size() * sizeof(double)));
}

void read_doubles(std::istream& is, std::vector<double>& v) {
    is.read(reinterpret_cast<char*>(v.data()),
            static_cast<std::streamsize>(v.size() * sizeof(double)));
    if (!is) throw std::runtime_error("dataset: truncated block");
}

}  // namespace

void save_dataset(const Dataset& ds, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("dataset: cannot open " + path + " for writing");
    os.write(kMagic, 4);
    write_u32(os, kVersion);
    write_u32(os, static_cast<std::uint32_t>(ds.n));
    write_u32(os, static_cast<std::uint32_t>(ds.l));
    write_u32(os, static_cast<std::uint32_t>(ds.horizon));
    write_u32(os, static_cast<std::uint32_t>(ds.samples.size()));
    for (const DatasetSample& s : ds.samples) {
        write_doubles(os, s.phi.gamma_block);
        write_doubles(os, s.phi.spot_block);
        std::vector<double> flat;
        flat.reserve(s.labels_u.size() * 2 + s.labels_f.size() * 2 + 2);
        for (const Vec2& p : s.labels_u) {
            flat.push_back(p.x);
            flat.push_back(p.y);
        }
        for (const Vec2& p : s.labels_f) {
            flat.push_back(p.x);
            flat.push_back(p.y);
        }
        flat.push_back(s.center.x);
        flat.push_back(s.center.y);
        write_doubles(os, flat);
    }
    if (!os) throw std::runtime_error("dataset: write failed for " + path);
}

Dataset load_dataset(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("dataset: cannot open " + path);
    char magic[4];
    is.read(magic, 4);
    if (!is || std::string(magic, 4) != std::string(kMagic, 4))
        throw std::runtime_error("dataset: bad magic in " + path);
    if (read_u32(is) != kVersion) throw std::runtime_error("dataset: unsupported version");

    Dataset ds;
    ds.n = static_cast<int>(read_u32(is));
    ds.l = static_cast<int>(read_u32(is));
    ds.horizon = static_cast<int>(read_u32(is));
    const std::uint32_t count = read_u32(is);
    ds.samples.resize(count);
    for (DatasetSample& s : ds.samples) {
        s.phi.n = ds.n;
        s.phi.l = ds.l;
        s.phi.gamma_block.resize(static_cast<std::size_t>(ds.n) * ds.l);
        s.phi.spot_block.resize(static_cast<std::size_t>(ds.n) * 3);
        read_doubles(is, s.phi.gamma_block);
        read_doubles(is, s.phi.spot_block);
        std::vector<double> flat(static_cast<std::size_t>(ds.n) * 2 +
                                 static_cast<std::size_t>(ds.horizon) * 2 + 2);
        read_doubles(is, flat);
        std::size_t off = 0;
        s.labels_u.resize(static_cast<std::size_t>(ds.n));
        for (Vec2& p : s.labels_u) {
            p = {flat[off], flat[off + 1]};
            off += 2;
        }
        s.labels_f.resize(static_cast<std::size_t>(ds.horizon));
        for (Vec2& p : s.labels_f) {
            p = {flat[off], flat[off + 1]};
            off += 2;
        }
        s.center = {flat[off], flat[off + 1]};
    }
    return ds;
}

std::vector<LabeledSample> cnn_samples(const Dataset& ds, double scale_m) {
    std::vector<LabeledSample> out;
    out.reserve(ds.samples.size());
    for (const DatasetSample& s : ds.samples) {
        LabeledSample sample;
        sample.input = centered_normalized(s.phi, s.center, scale_m).flattened();
        sample.target.reserve(s.labels_u.size() * 2);
        for (const Vec2& p : s.labels_u) {
            sample.target.push_back((p.x - s.center.x) / scale_m);
            sample.target.push_back((p.y - s.center.y) / scale_m);
        }
        out.push_back(std::move(sample));
    }
    return out;
}

std::vector<LabeledSample> lstm_samples(const Dataset& ds, double scale_m) {
    std::vector<LabeledSample> out;
    out.reserve(ds.samples.size());
    for (const DatasetSample& s : ds.samples) {
        LabeledSample sample;
        sample.input.reserve(s.labels_u.size() * 2);
        for (const Vec2& p : s.labels_u) {
            sample.input.push_back((p.x - s.center.x) / scale_m);
            sample.input.push_back((p.y - s.center.y) / scale_m);
        }
        sample.target.reserve(s.labels_f.size() * 2);
        for (const Vec2& p : s.labels_f) {
            sample.target.push_back((p.x - s.center.x) / scale_m);
            sample.target.push_back((p.y - s.center.y) / scale_m);
        }
        out.push_back(std::move(sample));
    }
    return out;
}

}  // namespace uavloc
