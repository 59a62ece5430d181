#include "uavloc/learning/checkpoint.hpp"

#include <cstdint>
#include <fstream>
#include <stdexcept>

namespace uavloc {

namespace {

constexpr char kMagic[4] = {'U', 'V', 'L', 'C'};
constexpr std::uint32_t kVersion = 1;

void write_u32(std::ostream& os, std::uint32_t v) {
    unsigned char buf[4];
    for (int i = 0; i < 4; ++i) buf[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xFF);
    os.write(reinterpret_cast<const char*>(buf), 4);
}

std::uint32_t read_u32(std::istream& is) {
    unsigned char buf[4];
    is.read(reinterpret_cast<char*>(buf), 4);
    if (!is) throw std::runtime_error("checkpoint: truncated file");
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(buf[i]) << (8 * i);
    return v;
}

void write_string(std::ostream& os, const std::string& s) {
    write_u32(os, static_cast<std::uint32_t>(s.size()));
    os.write(s.data(), static_cast<std::streamsize>(s.size()));
}

std::string read_string(std::istream& is) {
    const std::uint32_t len = read_u32(is);
    std::string s(len, '\0');
    is.read(s.data(), static_cast<std::streamsize>(len));
    if (!is) throw std::runtime_error("checkpoint: truncated string");
    return s;
}

}  // namespace

void save_checkpoint(const std::string& path, const std::string& kind,
                     const std::vector<Tensor*>& params,
                     const std::vector<std::pair<std::string, std::string>>& meta) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("checkpoint: cannot open " + path + " for writing");
    os.write(kMagic, 4);
    write_u32(os, kVersion);
    write_string(os, kind);
    write_u32(os, static_cast<std::uint32_t>(meta.size()));
    for (const auto& [k, v] : meta) {
        write_string(os, k);
        write_string(os, v);
    }
    write_u32(os, static_cast<std::uint32_t>(params.size()));
    for (const Tensor* t : params) {
        write_u32(os, static_cast<std::uint32_t>(t->shape.size()));
        for (int d : t->shape) write_u32(os, static_cast<std::uint32_t>(d));
        os.write(reinterpret_cast<const char*>(t->data.data()),
                 static_cast<std::streamsize>(t->data.size() * sizeof(double)));
    }
    if (!os) throw std::runtime_error("checkpoint: write failed for " + path);

    std::ofstream sidecar(path + ".meta");
    if (!sidecar) throw std::runtime_error("checkpoint: cannot write sidecar for " + path);
    sidecar << "kind=" << kind << '\n';
    for (const auto& [k, v] : meta) sidecar << k << '=' << v << '\n';
}

CheckpointData load_checkpoint(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("checkpoint: cannot open " + path);
    char magic[4];
    is.read(magic, 4);
    if (!is || std::string(magic, 4) != std::string(kMagic, 4))
        throw std::runtime_error("checkpoint: bad magic in " + path);
    if (read_u32(is) != kVersion) throw std::runtime_error("checkpoint: unsupported version");

    CheckpointData data;
    data.kind = read_string(is);
    const std::uint32_t n_meta = read_u32(is);
    for (std::uint32_t i = 0; i < n_meta; ++i) {
        std::string k = read_string(is);
        std::string v = read_string(is);
        data.meta.emplace_back(std::move(k), std::move(v));
    }
    const std::uint32_t n_params = read_u32(is);
    for (std::uint32_t i = 0; i < n_params; ++i) {
        const std::uint32_t ndim = read_u32(is);
        std::vector<int> shape(ndim);
        for (std::uint32_t d = 0; d < ndim; ++d) shape[d] = static_cast<int>(read_u32(is));
        Tensor t(shape);
        is.read(reinterpret_cast<char*>(t.data.data()),
                static_cast<std::streamsize>(t.data.size() * sizeof(double)));
        if (!is) throw std::runtime_error("checkpoint: truncated parameter block");
        data.params.push_back(std::move(t));
    }
    return data;
}

void apply_checkpoint(const CheckpointData& data, const std::vector<Tensor*>& params) {
    if (data.params.size() != params.size())
        throw std::runtime_error("checkpoint: parameter arity mismatch");
    for (std::size_t i = 0; i < params.size(); ++i) {
        if (data.params[i].shape != params[i]->shape)
            throw std::runtime_error("checkpoint: parameter shape mismatch");
        params[i]->data = data.params[i].data;
    }
}

const std::string& meta_value(const CheckpointData& data, const std::string& key) {
    for (const auto& [k, v] : data.meta)
        if (k == key) return v;
    throw std::runtime_error("checkpoint: missing metadata key " + key);
}

}  // namespace uavloc
