#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "simps/linalg.hpp"
#include "simps/mps.hpp"
#include "simps/state.hpp"

namespace simps {

/// Split-index MPS: a d x d table of matrices B^{ij} of shape chi^i x chi^j.
class Simps {
 public:
  /// tensors[i][j] = B^{ij}. Throws InvalidInput on inconsistent shapes,
  /// empty bonds or non-finite entries.
  explicit Simps(std::vector<std::vector<CMatrix>> tensors);

  std::size_t d() const noexcept { return chi_.size(); }
  const std::vector<std::size_t>& chi() const noexcept { return chi_; }
  std::size_t chi(std::size_t i) const { return chi_.at(i); }
  std::size_t max_chi() const;
  /// Common bond dimension when every chi^i agrees.
  std::optional<std::size_t> uniform_chi() const;

  const CMatrix& operator()(std::size_t i, std::size_t j) const { return tensors_.at(i).at(j); }
  const std::vector<std::vector<CMatrix>>& tensors() const noexcept { return tensors_; }

 private:
  std::vector<std::vector<CMatrix>> tensors_;
  std::vector<std::size_t> chi_;
};

/// amplitude(i1..iN) = Tr(B^{i1 i2} B^{i2 i3} ... B^{iN i1}).
StateVector simps_evaluate_pbc(const Simps& s, std::size_t n_sites);

/// Same trace with insertion[i1] placed in front of B^{i1 i2}. Each
/// insertion[i] must be chi^i x chi^i.
StateVector simps_evaluate_pbc_with_insertion(const Simps& s, const std::vector<CMatrix>& insertion,
                                              std::size_t n_sites);

/// Open chain with chi-dimensional boundary sites:
/// amplitude(alpha, i1..iN, beta) = <alpha| B^{i1 i2} ... B^{i_{N-1} iN} |beta>.
/// Throws UnsupportedBoundary unless chi is uniform.
StateVector simps_evaluate_obc(const Simps& s, std::size_t n_sites);

/// span_dims report the summed span dimension over all boundary pairs; the
/// target is sum over pairs of chi^{s1} chi^{s2}. Default cap 2 max(chi)^2.
NormalityReport simps_normality(const Simps& s, std::optional<std::size_t> search_cap = std::nullopt);

/// Product B^{s1 i1} B^{i1 i2} ... B^{iL s2} for the index string (s1, i1..iL, s2).
CMatrix split_product(const Simps& s, const std::vector<std::size_t>& indices);

Mps simps_to_mps(const Simps& s);
Simps simps_from_mps(const Mps& m);

/// Block matrix whose (i, j) block is B^{ij}.
CMatrix stacked_matrix(const Simps& s);

struct GaugeSolution {
  std::vector<CMatrix> gauges;  // V_i with A^{ij} V_j = V_i B^{ij}
  double residual = 0.0;
  double max_condition = 0.0;
  std::size_t null_dim = 0;
};

/// Gauge solver between two normal SIMPS with matching bond
/// dimensions. The largest entry of V_0 is pinned to 1.
GaugeSolution solve_gauge(const Simps& a, const Simps& b);

/// B'^{ij} = J^i (x) B^{ij}.
Simps fingerprint_compose(const std::vector<CMatrix>& j_tensors, const Simps& s);

struct Prop1Bounds {
  std::size_t l1 = 0;
  std::size_t l0 = 0;
  std::size_t l1_round_trip = 0;
  bool ok = false;
};

/// Checks L0(to_mps(s)) <= L1(s) + 2 and L1(from_mps(to_mps(s))) <= L0.
/// Throws NotNormal when any of the three searches is inconclusive.
Prop1Bounds prop1_bounds(const Simps& s);

/// Max-norm distance between two SIMPS of identical shape.
double tensor_distance(const Simps& a, const Simps& b);

}  // namespace simps
