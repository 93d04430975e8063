#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "simps/tensor_file.hpp"

namespace simps {

/// SIMPS_FIXTURE_DIR from the environment when set, else the directory baked
/// in at build time.
std::filesystem::path fixture_dir();

/// Ids of every *.json file in the fixture directory, sorted.
std::vector<std::string> fixture_ids(const std::filesystem::path& dir = fixture_dir());

/// Throws NotFound for an unknown id.
TensorFile load_fixture_file(std::string_view id, const std::filesystem::path& dir = fixture_dir());
Tensor load_fixture(std::string_view id, const std::filesystem::path& dir = fixture_dir());

/// Typed access; throws InvalidInput when the fixture has the other kind.
Mps load_mps_fixture(std::string_view id, const std::filesystem::path& dir = fixture_dir());
Simps load_simps_fixture(std::string_view id, const std::filesystem::path& dir = fixture_dir());

}  // namespace simps
