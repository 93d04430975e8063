#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "simps/linalg.hpp"
#include "simps/pauli.hpp"
#include "simps/simps.hpp"
#include "simps/state.hpp"

namespace simps {

/// Computational-basis outcomes s_1..s_N of the bulk sites.
struct MeasurementRecord {
  std::vector<std::size_t> outcomes;
};

struct WireResult {
  /// Two chi-dimensional boundary sites, amplitude (alpha, beta) = M_{alpha beta} / ||M||
  /// with M = B^{s1 s2} ... B^{s_{N-1} s_N}. All zeros when M = 0.
  StateVector boundary_state{{1, 1}, CVector::Zero(1)};
  bool boundary_defined = false;
  /// M rescaled by sqrt(chi) / ||M||_F, so it is unitary whenever M is
  /// proportional to one.
  CMatrix byproduct_matrix;
  std::optional<PauliString> byproduct;
  double probability = 0.0;
  /// (x parity, z parity) of the byproduct when it is a Pauli.
  std::optional<std::pair<std::uint8_t, std::uint8_t>> decoded_bits;
};

/// Measures every bulk site of the open chain (chi-dimensional boundary sites
/// at both ends). Throws UnsupportedBoundary for non-uniform chi and
/// InvalidInput for outcomes out of range or fewer than one site.
WireResult measure_bulk(const Simps& s, const MeasurementRecord& rec);

/// Classical byproduct X^{sum a} Z^{sum b} over neighbouring outcome pairs,
/// reported with phase 0.
PauliString decode_byproduct(const BinarySymmetryData& data, const MeasurementRecord& rec);

struct TeleportResult {
  StateVector output{{1}, CVector::Zero(1)};
  double fidelity = 0.0;
  /// False when some tensor is not proportional to a unitary. The protocol is
  /// still run and its fidelity reported.
  bool wire_ok = true;
  double probability = 0.0;
};

/// Plants `input` by projecting the left boundary on its complex conjugate,
/// measures the bulk with `rec` and undoes the byproduct on the right boundary.
TeleportResult teleport(const Simps& s, const StateVector& input, const MeasurementRecord& rec);

/// Born-rule samples of full outcome strings from the normalized open-chain
/// state, drawn with a seeded mt19937_64.
std::vector<MeasurementRecord> sample_outcomes(const Simps& s, std::size_t n_sites, std::uint64_t seed,
                                               std::size_t count);

/// Sum of Born weights over every outcome string (1 up to rounding).
double total_probability(const Simps& s, std::size_t n_sites);

struct EntanglementProfile {
  double min_bits = 0.0;
  double mean_bits = 0.0;
};

/// Boundary entanglement over all d^N outcome strings (budget 2^20): minimum
/// over strings of non-zero weight and the Born-weighted mean.
EntanglementProfile localizable_entanglement_profile(const Simps& s, std::size_t n_sites);

/// Site-dependent MPS left on the unmeasured sites after measuring every other
/// site of a periodic chain of 2n sites. Site k carries
/// A^i = B^{o_k i} B^{i o_{k+1}} with o the odd-site outcomes (cyclic).
struct ReducedMps {
  std::vector<std::vector<CMatrix>> site_tensors;  // [site][i]
  /// Per site, the Pauli matching each A^i up to phase (nullopt if none).
  std::vector<std::vector<std::optional<PauliString>>> labels;
  /// Every site's tensor set is {1, X, Z, XZ} up to phases and relabeling.
  bool pauli_certified = false;
};

/// Throws NotInjective unless L1 = 1 and InvalidInput on empty or
/// out-of-range outcomes.
ReducedMps reduce_odd_measurements(const Simps& s, const std::vector<std::size_t>& odd_outcomes);

/// Periodic state of a site-dependent MPS.
StateVector evaluate_reduced_pbc(const ReducedMps& r);

/// Degree of the algebraic normal form over GF(2) of a Boolean function given
/// by its truth table of length 2^n (index bit k = variable k). -1 for the
/// zero function.
int anf_degree(const std::vector<std::uint8_t>& truth_table);

inline bool is_affine(const std::vector<std::uint8_t>& truth_table) { return anf_degree(truth_table) <= 1; }

}  // namespace simps
