// Checkpoint glue: persist and rebuild the trained models together with the
// architecture metadata needed to reconstruct them.

#pragma once

#include <memory>
#include <string>

#include "uavloc/learning/cnn.hpp"
#include "uavloc/learning/lstm.hpp"

namespace uavloc {

void save_cnn(const std::string& path, CnnModel& model, double scale_m);
std::shared_ptr<CnnModel> load_cnn(const std::string& path);

void save_lstm(const std::string& path, Seq2SeqModel& model, double scale_m);
std::shared_ptr<Seq2SeqModel> load_lstm(const std::string& path);

}  // namespace uavloc
