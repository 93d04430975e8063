#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "simps/linalg.hpp"
#include "simps/pauli.hpp"
#include "simps/simps.hpp"
#include "simps/state.hpp"

namespace simps {

/// Product over bonds of diagonal two-site phases, optionally followed by an
/// onsite permutation. On states:
///   (U psi)(i_1..i_N) = prod_k phases[i_k][i_{k+1}] * psi(perm(i_1)..perm(i_N)),
/// and on SIMPS tensors B^{ij} -> phases[i][j] B^{perm(i) perm(j)}.
struct DiagonalTwoSiteSymmetry {
  std::size_t d = 0;
  std::vector<std::vector<Complex>> phases;
  std::optional<std::vector<std::size_t>> perm;

  /// Throws InvalidInput unless phases are unit modulus and perm is a bijection.
  void validate() const;
  std::size_t mapped(std::size_t i) const { return perm ? (*perm)[i] : i; }

  static DiagonalTwoSiteSymmetry identity(std::size_t d);
  /// Phases (-1)^{bits[i][j]}.
  static DiagonalTwoSiteSymmetry from_bits(const BitMatrix& bits);
};

/// Finite group with a 3-cocycle table omega[a][b][c].
struct CocycleData {
  std::size_t group_order = 0;
  std::vector<std::vector<std::size_t>> mult_table;
  std::vector<std::vector<std::vector<Complex>>> omega;

  /// Throws InvalidInput when the table is not a group or omega has the wrong
  /// shape or non-unit entries.
  void validate() const;
  std::size_t identity() const;
  std::size_t inverse(std::size_t g) const;
};

/// B^{ij} = X^{a_ij} Z^{b_ij}.
Simps build_psi_ab(const BinarySymmetryData& data);

Simps apply_diagonal_symmetry(const Simps& s, const DiagonalTwoSiteSymmetry& u);

/// Applies the global periodic operator to a uniform-dimension state.
StateVector apply_global_symmetry(const StateVector& psi, const DiagonalTwoSiteSymmetry& u);

/// Applies the phases of bonds first_bond .. last_bond - 1 (open string, no
/// wrap-around beyond the listed bonds). Bond k couples sites k and k+1 mod N.
StateVector apply_string(const StateVector& psi, const DiagonalTwoSiteSymmetry& u, std::size_t first_site,
                         std::size_t last_site);

struct SymmetryCheck {
  bool symmetric = false;
  /// Present when both the state check passed and the tensor is normal.
  std::optional<GaugeSolution> gauge;
  bool gauge_attempted = false;
};

/// State-level check for N = 3..max_n, cross-checked with solve_gauge when the
/// SIMPS is normal and the permutation preserves the bond dimensions.
SymmetryCheck check_symmetry(const Simps& s, const DiagonalTwoSiteSymmetry& u, std::size_t max_n);

/// Every +-1 phase pattern (bit i*d+j set means phase -1 on |ij>) that fixes
/// the state for N = 3..max_n. Throws TooLarge for d > 4.
std::vector<BitMatrix> discover_z2_symmetries(const Simps& s, std::size_t max_n);

/// True when the sign pattern multiplies every cyclic index string of length
/// min_n..max_n by the same sign for each length, i.e. acts as a scalar.
bool acts_as_scalar(const BitMatrix& pattern, std::size_t min_n, std::size_t max_n);

/// One representative per non-trivial class of discovered sign patterns,
/// modulo patterns that act as scalars. Representatives related to the SIMPS
/// by a gauge transformation are preferred.
std::vector<BitMatrix> symmetry_classes(const Simps& s, std::size_t max_n);

/// Physical operator on window + 2 sites that inserts p[i_c] at the virtual
/// bond of middle site c (1-based, 1 <= c <= window). With `removal` set it
/// instead undoes such an insertion. Throws NotInvertible when the relevant
/// block map is not injective.
CMatrix virtual_insertion_operator(const Simps& s, const std::vector<CMatrix>& p, std::size_t window,
                                   std::size_t c, bool removal = false);

/// Centre insertion of a single matrix p, for uniform-chi SIMPS.
CMatrix virtual_insertion_operator(const Simps& s, const CMatrix& p, std::size_t window);

struct Endpoint {
  CMatrix op;
  std::size_t first_site = 0;
  std::size_t n_sites = 0;
};

/// O_l (prod of bulk phases over bonds l..r-1) O_r on a periodic chain.
struct StringObservable {
  std::size_t left_site = 0;
  std::size_t right_site = 0;
  DiagonalTwoSiteSymmetry bulk;
  Endpoint left;
  Endpoint right;
};

/// Builds the string observable with endpoints that cancel the virtual
/// insertions of u exactly. The right endpoint inserts V at bond r through a
/// window starting at r - 1; the left endpoint removes V at bond l through a
/// window ending at l + 1. Needs a normal SIMPS.
StringObservable make_string_order(const Simps& s, const DiagonalTwoSiteSymmetry& u, std::size_t left_site,
                                   std::size_t right_site, std::size_t n_sites);

/// <psi| O_l string O_r |psi> on the normalized periodic state.
Complex string_order_expectation(const Simps& s, const StringObservable& obs, std::size_t n_sites);

/// Twisted periodic states Tr(V B^{i1 i2} ... B^{iN i1}).
class FluxInsertion {
 public:
  FluxInsertion(Simps s, CMatrix v);
  StateVector operator()(std::size_t n_sites) const;
  const CMatrix& flux() const noexcept { return v_; }

 private:
  Simps s_;
  CMatrix v_;
};

FluxInsertion insert_flux(const Simps& s, const CMatrix& v);

struct Charge {
  Complex value;
  Complex snapped;  // nearest fourth root of unity
  double snap_distance = 0.0;
};

/// Eigenvalue of psi under the global operator. Throws NotEigenstate when
/// ||U psi - lambda psi|| > 1e-8 ||psi||.
Charge symmetry_charge(const StateVector& psi, const DiagonalTwoSiteSymmetry& u);

/// pi(h) = g h and phases[h][k] = omega(g, k, k^-1 h).
DiagonalTwoSiteSymmetry cocycle_symmetry(const CocycleData& c, std::size_t g);

/// Z2 with omega(a, b, c) = (-1)^{abc}.
CocycleData z2_cocycle();

/// True iff none of U^a, U^b, U^a U^b acts as a scalar on the periodic chain of
/// n_sites, by enumeration of all index strings.
bool check_faithful(const BinarySymmetryData& data, std::size_t n_sites);

/// True iff for every boundary pair (s1, s2) the parities (alpha, beta) of the
/// strings s1 i1 .. iL s2 hit all four values.
bool gamma_surjective(const BinarySymmetryData& data, std::size_t length);

/// Schmidt spectrum of the open-boundary state with bulk site `site`
/// (0-based among the n_sites bulk sites) projected on |value>, cut across the
/// removed site.
std::vector<double> projected_schmidt_spectrum(const Simps& s, std::size_t n_sites, std::size_t site,
                                               std::size_t value);

/// True when the non-zero values (> 1e-12) pair up within tol after sorting.
bool is_twofold_degenerate(const std::vector<double>& spectrum, double tol);

}  // namespace simps
