#include "simps/pauli.hpp"

#include <cmath>

#include "simps/error.hpp"

namespace simps {

PauliString pauli_mul(const PauliString& p, const PauliString& q) {
  // X^a Z^b X^c Z^d = (-1)^{bc} X^{a+c} Z^{b+d}
  PauliString out;
  out.x = static_cast<std::uint8_t>((p.x ^ q.x) & 1);
  out.z = static_cast<std::uint8_t>((p.z ^ q.z) & 1);
  out.phase = static_cast<std::uint8_t>((p.phase + q.phase + 2 * (p.z & q.x)) % 4);
  return out;
}

CMatrix to_matrix(const PauliString& p) {
  CMatrix x = CMatrix::Identity(2, 2);
  if (p.x & 1) x << 0, 1, 1, 0;
  CMatrix z = CMatrix::Identity(2, 2);
  if (p.z & 1) z << 1, 0, 0, -1;
  static const Complex kPhases[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return kPhases[p.phase % 4] * (x * z);
}

std::optional<PauliString> pauli_from_matrix(const CMatrix& m, double tol) {
  if (m.rows() != 2 || m.cols() != 2) return std::nullopt;
  const double scale = max_abs(m);
  if (scale == 0.0) return std::nullopt;
  for (std::uint8_t x = 0; x < 2; ++x) {
    for (std::uint8_t z = 0; z < 2; ++z) {
      const CMatrix base = to_matrix({x, z, 0});
      // for a Pauli P, tr(P^dag m)/2 is the coefficient of P
      const Complex c = (base.adjoint() * m).trace() / 2.0;
      if (max_abs(m - c * base) > tol * scale) continue;
      PauliString out{x, z, 0};
      const double arg = std::arg(c);
      const double quarter = arg / (M_PI / 2.0);
      const double k = std::round(quarter);
      if (std::abs(quarter - k) * std::abs(c) <= tol * scale) {
        out.phase = static_cast<std::uint8_t>(((static_cast<int>(k) % 4) + 4) % 4);
      }
      return out;
    }
  }
  return std::nullopt;
}

bool equal_up_to_phase(const PauliString& p, const PauliString& q) {
  return (p.x & 1) == (q.x & 1) && (p.z & 1) == (q.z & 1);
}

std::string pauli_label(const PauliString& p, bool y_alias) {
  if (p.x && p.z) return y_alias ? "Y" : "XZ";
  if (p.x) return "X";
  if (p.z) return "Z";
  return "I";
}

std::string to_string(const PauliString& p) {
  static const char* kPrefix[4] = {"", "i", "-", "-i"};
  return std::string(kPrefix[p.phase % 4]) + pauli_label(p);
}

void BinarySymmetryData::validate() const {
  auto check = [&](const BitMatrix& m, const char* name) {
    if (m.size() != d) throw Error(ErrorKind::InvalidInput, std::string(name) + " must have d rows");
    for (const auto& row : m) {
      if (row.size() != d) throw Error(ErrorKind::InvalidInput, std::string(name) + " must have d columns");
      for (auto v : row) {
        if (v > 1) throw Error(ErrorKind::InvalidInput, std::string(name) + " entries must be bits");
      }
    }
  };
  if (d == 0) throw Error(ErrorKind::InvalidInput, "d must be positive");
  check(a, "a");
  check(b, "b");
}

bool is_factorizable(const BitMatrix& m) {
  const std::size_t d = m.size();
  if (d > 16) throw Error(ErrorKind::TooLarge, "factorizability search limited to d <= 16");
  for (const auto& row : m) {
    if (row.size() != d) throw Error(ErrorKind::InvalidInput, "bit matrix must be square");
  }
  const std::uint64_t n = std::uint64_t{1} << d;
  for (std::uint64_t c = 0; c < n; ++c) {
    for (std::uint64_t e = 0; e < n; ++e) {
      bool ok = true;
      for (std::size_t i = 0; i < d && ok; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
          const unsigned bit = static_cast<unsigned>(((c >> i) ^ (e >> j)) & 1u);
          if (bit != (m[i][j] & 1u)) {
            ok = false;
            break;
          }
        }
      }
      if (ok) return true;
    }
  }
  return false;
}

bool is_factorizable(const BinarySymmetryData& data, BitMatrixChoice which) {
  data.validate();
  return is_factorizable(which == BitMatrixChoice::A ? data.a : data.b);
}

}  // namespace simps
