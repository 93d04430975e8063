#include "simps/fixtures.hpp"

#include <algorithm>
#include <cstdlib>

#include <fmt/format.h>

#include "simps/error.hpp"

namespace simps {

std::filesystem::path fixture_dir() {
  if (const char* env = std::getenv("SIMPS_FIXTURE_DIR"); env != nullptr && *env != '\0') return env;
  return SIMPS_FIXTURE_DIR;
}

std::vector<std::string> fixture_ids(const std::filesystem::path& dir) {
  std::vector<std::string> ids;
  std::error_code ec;
  for (const auto& entry : std::filesystem::directory_iterator(dir, ec)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") ids.push_back(entry.path().stem().string());
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

TensorFile load_fixture_file(std::string_view id, const std::filesystem::path& dir) {
  const bool plain = !id.empty() && std::all_of(id.begin(), id.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '-';
  });
  const auto path = dir / (std::string(id) + ".json");
  if (!plain || !std::filesystem::is_regular_file(path)) {
    throw Error(ErrorKind::NotFound, fmt::format("unknown fixture \"{}\"", id));
  }
  return read_tensor_file(path);
}

Tensor load_fixture(std::string_view id, const std::filesystem::path& dir) {
  return load_fixture_file(id, dir).tensor;
}

Mps load_mps_fixture(std::string_view id, const std::filesystem::path& dir) {
  Tensor t = load_fixture(id, dir);
  if (auto* m = std::get_if<Mps>(&t)) return std::move(*m);
  throw Error(ErrorKind::InvalidInput, fmt::format("fixture \"{}\" is not an MPS", id));
}

Simps load_simps_fixture(std::string_view id, const std::filesystem::path& dir) {
  Tensor t = load_fixture(id, dir);
  if (auto* s = std::get_if<Simps>(&t)) return std::move(*s);
  throw Error(ErrorKind::InvalidInput, fmt::format("fixture \"{}\" is not a SIMPS", id));
}

}  // namespace simps
