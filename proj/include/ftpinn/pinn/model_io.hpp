#pragma once

// JSON model files. Weights are written with shortest round-trip formatting,
// so a saved model reloads bit-identically.

#include <filesystem>
#include <string>

#include "ftpinn/pinn/mlp.hpp"

namespace ftpinn::pinn {

inline constexpr int kModelSchemaVersion = 1;

std::string dump_model(const MlpModel& model);

/// Throws FormatError naming the offending field.
MlpModel parse_model(const std::string& json_text);

/// Writes to `path.tmp` first and renames, so a crash never leaves a partial
/// model behind.
void save_model(const MlpModel& model, const std::filesystem::path& path);
MlpModel load_model(const std::filesystem::path& path);

}  // namespace ftpinn::pinn
