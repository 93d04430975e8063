#include "simps/tensor_file.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "simps/error.hpp"

namespace simps {

using nlohmann::json;

namespace {

constexpr std::string_view kFormat = "simps-tensor-file";

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
  throw Error(ErrorKind::ParseError, fmt::format("{}: {}", path, what));
}

const json& field(const json& obj, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end()) schema_error("$", fmt::format("missing key \"{}\"", key));
  return *it;
}

std::size_t positive_count(const json& v, const std::string& path) {
  if (!v.is_number_unsigned() || v.get<std::size_t>() == 0) schema_error(path, "expected a positive integer");
  return v.get<std::size_t>();
}

Complex parse_complex(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    schema_error(path, "expected [re, im]");
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

CMatrix parse_matrix(const json& v, std::size_t rows, std::size_t cols, const std::string& path) {
  if (!v.is_array() || v.size() != rows) schema_error(path, fmt::format("expected {} rows", rows));
  CMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string row_path = fmt::format("{}[{}]", path, r);
    if (!v[r].is_array() || v[r].size() != cols) schema_error(row_path, fmt::format("expected {} columns", cols));
    for (std::size_t c = 0; c < cols; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          parse_complex(v[r][c], fmt::format("{}[{}]", row_path, c));
    }
  }
  return m;
}

json matrix_json(const CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace

TensorFile parse_tensor_file(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_column(text, e.byte);
    throw Error(ErrorKind::ParseError, fmt::format("line {}, column {}: {}", line, col, e.what()));
  }
  if (!doc.is_object()) schema_error("$", "top level must be an object");
  static const std::set<std::string> known{"format", "version", "kind", "d", "bond", "tensors", "metadata",
                                           "verification"};
  for (const auto& [key, _] : doc.items()) {
    if (!known.count(key)) schema_error("$", fmt::format("unknown key \"{}\"", key));
  }
  if (field(doc, "format") != std::string(kFormat)) schema_error("$.format", "expected \"simps-tensor-file\"");
  if (field(doc, "version") != 1) schema_error("$.version", "unsupported version");
  const json& kind = field(doc, "kind");
  const std::size_t d = positive_count(field(doc, "d"), "$.d");
  const json& bond = field(doc, "bond");
  const json& tensors = field(doc, "tensors");
  if (!tensors.is_array() || tensors.size() != d) schema_error("$.tensors", fmt::format("expected {} entries", d));

  TensorFile out{Mps({CMatrix::Zero(1, 1)}), {}, std::nullopt};
  try {
    if (kind == "mps") {
      const std::size_t dim = positive_count(bond, "$.bond");
      std::vector<CMatrix> a;
      for (std::size_t i = 0; i < d; ++i) a.push_back(parse_matrix(tensors[i], dim, dim, fmt::format("$.tensors[{}]", i)));
      out.tensor = Mps(std::move(a));
    } else if (kind == "simps") {
      if (!bond.is_array() || bond.size() != d) schema_error("$.bond", fmt::format("expected {} bond dimensions", d));
      std::vector<std::size_t> chi;
      for (std::size_t i = 0; i < d; ++i) chi.push_back(positive_count(bond[i], fmt::format("$.bond[{}]", i)));
      std::vector<std::vector<CMatrix>> b(d);
      for (std::size_t i = 0; i < d; ++i) {
        const std::string row_path = fmt::format("$.tensors[{}]", i);
        if (!tensors[i].is_array() || tensors[i].size() != d) schema_error(row_path, fmt::format("expected {} entries", d));
        for (std::size_t j = 0; j < d; ++j) {
          b[i].push_back(parse_matrix(tensors[i][j], chi[i], chi[j], fmt::format("{}[{}]", row_path, j)));
        }
      }
      out.tensor = Simps(std::move(b));
    } else {
      schema_error("$.kind", "expected \"mps\" or \"simps\"");
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ParseError) throw;
    throw Error(ErrorKind::ParseError, fmt::format("$.tensors: {}", e.what()));
  }

  if (const auto it = doc.find("metadata"); it != doc.end()) {
    if (!it->is_object()) schema_error("$.metadata", "expected an object");
    for (const auto& [key, value] : it->items()) {
      if (!value.is_string()) schema_error(fmt::format("$.metadata.{}", key), "expected a string");
      out.metadata[key] = value.get<std::string>();
    }
  }
  if (const auto it = doc.find("verification"); it != doc.end()) {
    if (!it->is_object()) schema_error("$.verification", "expected an object");
    // reparse to keep the key order of the file
    const auto obj = nlohmann::ordered_json::parse(text.begin(), text.end());
    out.verification = obj.at("verification");
  }
  return out;
}

std::string serialize_tensor_file(const TensorFile& file) {
  std::ostringstream os;
  os << "{\n";
  os << "  \"format\": " << json(std::string(kFormat)).dump() << ",\n";
  os << "  \"version\": 1,\n";
  if (const auto* m = std::get_if<Mps>(&file.tensor)) {
    os << "  \"kind\": \"mps\",\n";
    os << "  \"d\": " << m->d() << ",\n";
    os << "  \"bond\": " << m->bond_dim() << ",\n";
    os << "  \"tensors\": [\n";
    for (std::size_t i = 0; i < m->d(); ++i) {
      os << "    " << matrix_json((*m)[i]).dump() << (i + 1 < m->d() ? ",\n" : "\n");
    }
    os << "  ],\n";
  } else {
    const auto& s = std::get<Simps>(file.tensor);
    os << "  \"kind\": \"simps\",\n";
    os << "  \"d\": " << s.d() << ",\n";
    os << "  \"bond\": " << json(s.chi()).dump() << ",\n";
    os << "  \"tensors\": [\n";
    for (std::size_t i = 0; i < s.d(); ++i) {
      os << "    [\n";
      for (std::size_t j = 0; j < s.d(); ++j) {
        os << "      " << matrix_json(s(i, j)).dump() << (j + 1 < s.d() ? ",\n" : "\n");
      }
      os << "    ]" << (i + 1 < s.d() ? ",\n" : "\n");
    }
    os << "  ],\n";
  }
  os << "  \"metadata\": {";
  std::size_t k = 0;
  for (const auto& [key, value] : file.metadata) {
    os << (k++ == 0 ? "\n" : ",\n") << "    " << json(key).dump() << ": " << json(value).dump();
  }
  os << (file.metadata.empty() ? "}" : "\n  }");
  if (file.verification) {
    os << ",\n  \"verification\": {";
    std::size_t v = 0;
    for (const auto& [key, value] : file.verification->items()) {
      os << (v++ == 0 ? "\n" : ",\n") << "    " << json(key).dump() << ": " << value.dump();
    }
    os << (file.verification->empty() ? "}" : "\n  }");
  }
  os << "\n}\n";
  return os.str();
}

TensorFile read_tensor_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::NotFound, fmt::format("cannot open {}", path.string()));
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_tensor_file(buf.str());
}

void write_tensor_file(const std::filesystem::path& path, const TensorFile& file) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::InvalidInput, fmt::format("cannot write {}", path.string()));
  out << serialize_tensor_file(file);
}

}  // namespace simps
