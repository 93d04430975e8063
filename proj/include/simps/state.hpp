#pragma once

#include <cstddef>
#include <vector>

#include "simps/linalg.hpp"

namespace simps {

/// Dense many-body state. The leftmost site is the most significant digit of
/// the flat amplitude index.
class StateVector {
 public:
  StateVector(std::vector<std::size_t> site_dims, CVector amplitudes);

  const std::vector<std::size_t>& site_dims() const noexcept { return site_dims_; }
  const CVector& amplitudes() const noexcept { return amplitudes_; }
  std::size_t n_sites() const noexcept { return site_dims_.size(); }
  std::size_t size() const noexcept { return static_cast<std::size_t>(amplitudes_.size()); }

  double norm() const { return amplitudes_.norm(); }
  bool is_zero(double tol = 1e-14) const;

  /// Throws InvalidInput on the zero vector.
  StateVector normalized() const;

  std::size_t flat_index(const std::vector<std::size_t>& digits) const;
  std::vector<std::size_t> digits(std::size_t flat) const;

 private:
  std::vector<std::size_t> site_dims_;
  CVector amplitudes_;
};

/// Amplitude budget shared by the dense evaluators. Reads
/// SIMPS_AMPLITUDE_BUDGET when set, else 4^14.
std::size_t amplitude_budget();

/// Throws TooLarge when base^exponent exceeds the budget.
std::size_t checked_power(std::size_t base, std::size_t exponent, std::size_t budget);

Complex inner(const StateVector& a, const StateVector& b);

/// |<a|b>|^2 / (<a|a><b|b>); 0 when either vector is zero.
double fidelity(const StateVector& a, const StateVector& b);

/// Global-phase-insensitive equality: fidelity >= 1 - tol.
bool same_state(const StateVector& a, const StateVector& b, double tol = 1e-9);

/// Non-zero eigenvalues of the reduced density matrix of sites [0, cut) on the
/// normalized state, descending.
std::vector<double> schmidt_spectrum(const StateVector& psi, std::size_t cut);

/// Von Neumann entropy in bits of a probability vector.
double entropy_bits(const std::vector<double>& spectrum);

/// Applies an operator on n_sites consecutive sites starting at first_site,
/// wrapping around the end of the chain. The operator's row/column index uses
/// the same most-significant-first convention over the covered sites.
StateVector apply_local_operator(const StateVector& psi, const CMatrix& op, std::size_t first_site,
                                 std::size_t n_sites);

/// Contracts `site` with basis vector |value> and removes it from the state.
StateVector project_site(const StateVector& psi, std::size_t site, std::size_t value);

/// Uniform-dimension convenience: n sites of dimension d.
std::vector<std::size_t> uniform_dims(std::size_t n, std::size_t d);

}  // namespace simps
