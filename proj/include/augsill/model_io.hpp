#pragma once

#include <string>

#include "augsill/solver.hpp"

namespace augsill {

/// Writes dictionary.ini, K.csv and model.ini into `dir` (created if needed).
void save_model(const std::string& dir, const KoopmanModel& model);
KoopmanModel load_model(const std::string& dir);

}  // namespace augsill
