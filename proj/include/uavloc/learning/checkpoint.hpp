// Versioned binary checkpoints: shape-tagged parameter blocks plus a
// plain-text metadata sidecar (<path>.meta) describing architecture, scale
// and seed.

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "uavloc/learning/tensor.hpp"

namespace uavloc {

struct CheckpointData {
    std::string kind;  // "cnn" or "lstm"
    std::vector<std::pair<std::string, std::string>> meta;
    std::vector<Tensor> params;
};

void save_checkpoint(const std::string& path, const std::string& kind,
                     const std::vector<Tensor*>& params,
                     const std::vector<std::pair<std::string, std::string>>& meta);

CheckpointData load_checkpoint(const std::string& path);

// Copies loaded blocks into live parameters; shapes must match exactly.
void apply_checkpoint(const CheckpointData& data, const std::vector<Tensor*>& params);

// Convenience lookup; throws when the key is missing.
const std::string& meta_value(const CheckpointData& data, const std::string& key);

}  // namespace uavloc
