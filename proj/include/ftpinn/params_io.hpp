#pragma once

#include <filesystem>
#include <string>

#include "ftpinn/kinetics.hpp"

namespace ftpinn::kinetics {

/// Parses the flat JSON parameter object (see docs/parameters.md). Unknown
/// keys, missing keys and non-numeric values raise FormatError; the result is
/// validated before it is returned.
KineticParameters parse_parameters(const std::string& json_text);
KineticParameters load_parameters(const std::filesystem::path& path);

std::string dump_parameters(const KineticParameters& params);

}  // namespace ftpinn::kinetics
