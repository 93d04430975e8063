#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include <json.hpp>

#include "simps/mps.hpp"
#include "simps/simps.hpp"

namespace simps {

using Tensor = std::variant<Mps, Simps>;

/// JSON-compatible tensor file:
///   format "simps-tensor-file", version 1, kind "mps" | "simps", d,
///   bond (D, or the chi list), tensors (complex entries as [re, im]),
///   metadata (string map) and an optional verification object.
struct TensorFile {
  Tensor tensor;
  std::map<std::string, std::string> metadata;
  std::optional<nlohmann::ordered_json> verification;
};

/// Throws ParseError with a line:column position for malformed JSON and a key
/// path for schema violations.
TensorFile parse_tensor_file(std::string_view text);

/// Canonical text: fixed key order, one matrix per line, shortest round-trip
/// floats. parse(serialize(f)) reproduces f bit-exactly.
std::string serialize_tensor_file(const TensorFile& file);

/// Throws NotFound when the file cannot be opened.
TensorFile read_tensor_file(const std::filesystem::path& path);
void write_tensor_file(const std::filesystem::path& path, const TensorFile& file);

}  // namespace simps
