#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "simps/linalg.hpp"
#include "simps/state.hpp"

namespace simps {

/// Translation-invariant MPS: d square D x D matrices A^0..A^{d-1}.
class Mps {
 public:
  /// Throws InvalidInput on empty input, non-square or mismatched shapes, or
  /// non-finite entries.
  explicit Mps(std::vector<CMatrix> tensors);

  std::size_t d() const noexcept { return tensors_.size(); }
  std::size_t bond_dim() const noexcept { return static_cast<std::size_t>(tensors_.front().rows()); }
  const std::vector<CMatrix>& tensors() const noexcept { return tensors_; }
  const CMatrix& operator[](std::size_t i) const { return tensors_.at(i); }

 private:
  std::vector<CMatrix> tensors_;
};

/// amplitude(i1..iN) = Tr(A^{i1} ... A^{iN}). Not normalized.
StateVector mps_evaluate_pbc(const Mps& m, std::size_t n_sites);

/// Open chain with D-dimensional boundary sites first and last:
/// amplitude(a, i1..iN, b) = <a| A^{i1} ... A^{iN} |b>.
StateVector mps_evaluate_obc(const Mps& m, std::size_t n_sites);

struct NormalityReport {
  bool is_normal = false;
  std::optional<std::size_t> injectivity_length;
  /// (L, span dimension) for every L searched.
  std::vector<std::pair<std::size_t, std::size_t>> span_dims;
  std::size_t search_cap = 0;
  /// Dimension a full span must reach.
  std::size_t target = 0;
};

/// Default search cap 2 D^2.
NormalityReport mps_normality(const Mps& m, std::optional<std::size_t> search_cap = std::nullopt);

/// Half-infinite-chain entanglement spectrum from the transfer-map fixed points.
/// Throws NonUnique when the leading transfer eigenvalue is degenerate.
std::vector<double> transfer_spectrum(const Mps& m);

struct OnsiteSymmetryResult {
  bool symmetric = false;
  /// Virtual operator with sum_j u_ij A^j = V A^i V^dagger, when one exists.
  std::optional<CMatrix> v;
  double residual = 0.0;
};

/// Checks u^{(x)N}|psi> = |psi> up to phase for N = 2..max_n and solves for V.
OnsiteSymmetryResult check_onsite_symmetry(const Mps& m, const CMatrix& u, std::size_t max_n);

/// Omega with v w = Omega w v. Throws NotProjectivePair if v w v^-1 w^-1 is
/// not proportional to the identity.
Complex commutator_phase(const CMatrix& v, const CMatrix& w);

/// Physical-index action sum_j u_ij A^j.
Mps apply_onsite(const Mps& m, const CMatrix& u);

}  // namespace simps
