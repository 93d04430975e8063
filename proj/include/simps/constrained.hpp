#pragma once

#include <cstddef>
#include <cstdint>
#include <set>
#include <utility>

#include "simps/linalg.hpp"
#include "simps/mps.hpp"
#include "simps/simps.hpp"
#include "simps/state.hpp"

namespace simps {

/// Nearest-neighbour constraint: the listed (i, j) pairs may not appear on
/// neighbouring sites.
struct LocalConstraint {
  std::size_t d = 0;
  std::set<std::pair<std::size_t, std::size_t>> forbidden_pairs;

  void validate() const;
};

/// Forbids two neighbouring excitations |11>.
LocalConstraint rydberg_constraint();
/// Forbids up-up and down-down neighbours for the spin-1 indices (0, up, down).
LocalConstraint aklt_constraint();

struct ConstraintCheck {
  bool ok = true;
  double max_violation = 0.0;
};

/// Every amplitude containing a forbidden neighbouring pair must be at most
/// 1e-12 in magnitude. Pairs wrap around the chain when `periodic`.
ConstraintCheck check_state_constraint(const StateVector& psi, const LocalConstraint& c, bool periodic = true);

/// True iff B^{ij} is exactly zero for every forbidden pair.
bool check_simps_constraint(const Simps& s, const LocalConstraint& c);

/// chi = 1 table B^{00} = a, B^{01} = b, B^{10} = a, B^{11} = 0. Throws
/// RankZero when a = b = 0.
Simps build_rydberg_family(Complex a, Complex b);

/// D = 2 MPS A^0 = [[a, 0], [a, 0]], A^1 = [[0, b], [0, 0]].
Mps rydberg_mps(Complex a, Complex b);

/// Entries with real and imaginary parts uniform on [-1, 1] from a seeded
/// mt19937_64, forbidden blocks set to zero.
Simps random_constrained_simps(std::size_t d, std::size_t chi, const LocalConstraint& c, std::uint64_t seed);

struct AkltPair {
  Mps mps;
  Simps simps;
};

/// Spin-1 chain with indices (0, up, down) in both representations.
AkltPair build_aklt();

}  // namespace simps
