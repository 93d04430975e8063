#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "simps/linalg.hpp"

namespace simps {

/// Single-qubit Pauli group element i^phase X^x Z^z (X to the left of Z).
struct PauliString {
  std::uint8_t x = 0;
  std::uint8_t z = 0;
  std::uint8_t phase = 0;  // mod 4

  static PauliString identity() { return {}; }
  static PauliString pauli_x() { return {1, 0, 0}; }
  static PauliString pauli_z() { return {0, 1, 0}; }
  /// Y = i X Z.
  static PauliString pauli_y() { return {1, 1, 1}; }

  friend bool operator==(const PauliString&, const PauliString&) = default;
};

PauliString pauli_mul(const PauliString& p, const PauliString& q);
inline PauliString operator*(const PauliString& p, const PauliString& q) { return pauli_mul(p, q); }

CMatrix to_matrix(const PauliString& p);

/// Recognises a matrix proportional to X^x Z^z. The phase exponent is set when
/// the proportionality constant is a unit fourth root of unity times a positive
/// real, else it is 0.
std::optional<PauliString> pauli_from_matrix(const CMatrix& m, double tol = 1e-10);

bool equal_up_to_phase(const PauliString& p, const PauliString& q);

/// "I", "X", "Z", "XZ" with a leading "-", "i" or "-i" for the phase.
std::string to_string(const PauliString& p);

/// Pauli label ignoring phase, with XZ written as "Y" when `y_alias` is set.
std::string pauli_label(const PauliString& p, bool y_alias = false);

using BitMatrix = std::vector<std::vector<std::uint8_t>>;

/// Bit matrices a, b of the Pauli-tensor family B^{ij} = X^{a_ij} Z^{b_ij}.
struct BinarySymmetryData {
  std::size_t d = 0;
  BitMatrix a;
  BitMatrix b;

  /// Throws InvalidInput when shapes or entries are off.
  void validate() const;
};

enum class BitMatrixChoice { A, B };

/// True iff m_ij = c_i XOR d_j for some bit vectors c, d. Exhaustive over all
/// 2^(2d) candidate pairs.
bool is_factorizable(const BinarySymmetryData& data, BitMatrixChoice which);
bool is_factorizable(const BitMatrix& m);

}  // namespace simps
