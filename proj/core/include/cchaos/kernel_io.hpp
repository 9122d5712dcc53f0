#pragma once

#include <filesystem>

#include <nlohmann/json.hpp>

#include "cchaos/kernel.hpp"

namespace cchaos {

/// {"n","p","q","weights","grid"|null,"re","im"}; doubles are written with
/// round-trip precision so reading back reproduces every bit.
nlohmann::json kernel_to_json(const Kernel& f);

/// Throws std::invalid_argument on malformed input. The symmetric flag is
/// recomputed exactly from the coefficients.
Kernel kernel_from_json(const nlohmann::json& j);

/// Builds a Space from the "n", "weights" and "grid" fields.
SpacePtr space_from_json(const nlohmann::json& j);

nlohmann::json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const nlohmann::json& j);

}  // namespace cchaos
