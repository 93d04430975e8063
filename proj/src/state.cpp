#include "simps/state.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <string>

#include "simps/error.hpp"

namespace simps {

namespace {

std::size_t dim_product(const std::vector<std::size_t>& dims) {
  std::size_t total = 1;
  for (std::size_t d : dims) {
    if (d == 0) throw Error(ErrorKind::InvalidInput, "site dimension 0");
    if (total > std::numeric_limits<std::size_t>::max() / d) {
      throw Error(ErrorKind::TooLarge, "state dimension overflows");
    }
    total *= d;
  }
  return total;
}

}  // namespace

StateVector::StateVector(std::vector<std::size_t> site_dims, CVector amplitudes)
    : site_dims_(std::move(site_dims)), amplitudes_(std::move(amplitudes)) {
  if (dim_product(site_dims_) != static_cast<std::size_t>(amplitudes_.size())) {
    throw Error(ErrorKind::InvalidInput, "amplitude count does not match site dimensions");
  }
  if (!std::isfinite(amplitudes_.squaredNorm())) {
    throw Error(ErrorKind::InvalidInput, "state has non-finite norm");
  }
}

bool StateVector::is_zero(double tol) const { return amplitudes_.size() == 0 || amplitudes_.norm() <= tol; }

StateVector StateVector::normalized() const {
  const double n = norm();
  if (n == 0.0) throw Error(ErrorKind::InvalidInput, "cannot normalize the zero vector");
  return StateVector(site_dims_, amplitudes_ / n);
}

std::size_t StateVector::flat_index(const std::vector<std::size_t>& digits) const {
  if (digits.size() != site_dims_.size()) throw Error(ErrorKind::InvalidInput, "digit count mismatch");
  std::size_t idx = 0;
  for (std::size_t k = 0; k < digits.size(); ++k) {
    if (digits[k] >= site_dims_[k]) throw Error(ErrorKind::InvalidInput, "digit out of range");
    idx = idx * site_dims_[k] + digits[k];
  }
  return idx;
}

std::vector<std::size_t> StateVector::digits(std::size_t flat) const {
  std::vector<std::size_t> out(site_dims_.size());
  for (std::size_t k = site_dims_.size(); k-- > 0;) {
    out[k] = flat % site_dims_[k];
    flat /= site_dims_[k];
  }
  return out;
}

std::size_t amplitude_budget() {
  constexpr std::size_t kDefault = std::size_t{1} << 28;  // 4^14
  const char* env = std::getenv("SIMPS_AMPLITUDE_BUDGET");
  if (env == nullptr || *env == '\0') return kDefault;
  try {
    const unsigned long long v = std::stoull(env);
    return v == 0 ? kDefault : static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    return kDefault;
  }
}

std::size_t checked_power(std::size_t base, std::size_t exponent, std::size_t budget) {
  std::size_t total = 1;
  for (std::size_t k = 0; k < exponent; ++k) {
    if (base != 0 && total > budget / base) {
      throw Error(ErrorKind::TooLarge, "requested " + std::to_string(base) + "^" + std::to_string(exponent) +
                                           " amplitudes exceeds budget " + std::to_string(budget));
    }
    total *= base;
  }
  if (total > budget) throw Error(ErrorKind::TooLarge, "amplitude budget exceeded");
  return total;
}

Complex inner(const StateVector& a, const StateVector& b) {
  if (a.site_dims() != b.site_dims()) throw Error(ErrorKind::InvalidInput, "site dimensions differ");
  return a.amplitudes().dot(b.amplitudes());
}

double fidelity(const StateVector& a, const StateVector& b) {
  const double na = a.amplitudes().squaredNorm();
  const double nb = b.amplitudes().squaredNorm();
  if (na == 0.0 || nb == 0.0) {
    if (a.site_dims() != b.site_dims()) throw Error(ErrorKind::InvalidInput, "site dimensions differ");
    return 0.0;
  }
  return std::norm(inner(a, b)) / (na * nb);
}

bool same_state(const StateVector& a, const StateVector& b, double tol) { return fidelity(a, b) >= 1.0 - tol; }

std::vector<double> schmidt_spectrum(const StateVector& psi, std::size_t cut) {
  if (cut == 0 || cut >= psi.n_sites()) throw Error(ErrorKind::InvalidInput, "cut must split the chain");
  if (psi.is_zero(0.0)) throw Error(ErrorKind::InvalidInput, "zero state has no Schmidt spectrum");
  const auto& dims = psi.site_dims();
  const std::size_t rows = std::accumulate(dims.begin(), dims.begin() + static_cast<long>(cut), std::size_t{1},
                                           std::multiplies<>());
  const std::size_t cols = psi.size() / rows;
  using RowMajor = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  const CMatrix m = Eigen::Map<const RowMajor>(psi.amplitudes().data(), static_cast<Eigen::Index>(rows),
                                               static_cast<Eigen::Index>(cols));
  Eigen::BDCSVD<CMatrix> solver(m);
  const auto& s = solver.singularValues();
  const double total = s.squaredNorm();
  std::vector<double> out;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    const double p = s(i) * s(i) / total;
    if (p > 1e-14) out.push_back(p);
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

double entropy_bits(const std::vector<double>& spectrum) {
  double h = 0.0;
  for (double p : spectrum) {
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h;
}

StateVector apply_local_operator(const StateVector& psi, const CMatrix& op, std::size_t first_site,
                                 std::size_t n_sites) {
  const std::size_t n = psi.n_sites();
  if (n_sites == 0 || n_sites > n || first_site >= n) {
    throw Error(ErrorKind::InvalidInput, "operator support does not fit the chain");
  }
  const auto& dims = psi.site_dims();
  std::vector<std::size_t> sites(n_sites);
  std::size_t block = 1;
  for (std::size_t k = 0; k < n_sites; ++k) {
    sites[k] = (first_site + k) % n;
    block *= dims[sites[k]];
  }
  if (static_cast<std::size_t>(op.rows()) != block || static_cast<std::size_t>(op.cols()) != block) {
    throw Error(ErrorKind::InvalidInput, "operator shape does not match its support");
  }

  // stride of every site in the flat index
  std::vector<std::size_t> stride(n);
  std::size_t acc = 1;
  for (std::size_t k = n; k-- > 0;) {
    stride[k] = acc;
    acc *= dims[k];
  }
  std::vector<bool> covered(n, false);
  for (std::size_t s : sites) covered[s] = true;

  // offsets of each local configuration relative to an "environment" base index
  std::vector<std::size_t> local_offset(block, 0);
  for (std::size_t c = 0; c < block; ++c) {
    std::size_t rem = c;
    std::size_t off = 0;
    for (std::size_t k = n_sites; k-- > 0;) {
      off += (rem % dims[sites[k]]) * stride[sites[k]];
      rem /= dims[sites[k]];
    }
    local_offset[c] = off;
  }

  CVector out = CVector::Zero(psi.amplitudes().size());
  CVector local(static_cast<Eigen::Index>(block));
  const auto& amps = psi.amplitudes();
  for (std::size_t base = 0; base < psi.size(); ++base) {
    // environment bases are the indices whose covered digits are all zero
    bool is_base = true;
    for (std::size_t s : sites) {
      if ((base / stride[s]) % dims[s] != 0) {
        is_base = false;
        break;
      }
    }
    if (!is_base) continue;
    for (std::size_t c = 0; c < block; ++c) local(static_cast<Eigen::Index>(c)) = amps(static_cast<Eigen::Index>(base + local_offset[c]));
    const CVector res = op * local;
    for (std::size_t c = 0; c < block; ++c) out(static_cast<Eigen::Index>(base + local_offset[c])) = res(static_cast<Eigen::Index>(c));
  }
  return StateVector(dims, std::move(out));
}

StateVector project_site(const StateVector& psi, std::size_t site, std::size_t value) {
  const auto& dims = psi.site_dims();
  if (site >= dims.size() || value >= dims[site]) throw Error(ErrorKind::InvalidInput, "projection out of range");
  if (dims.size() < 2) throw Error(ErrorKind::InvalidInput, "cannot remove the only site");
  std::vector<std::size_t> new_dims = dims;
  new_dims.erase(new_dims.begin() + static_cast<long>(site));
  std::size_t inner_block = 1;
  for (std::size_t k = site + 1; k < dims.size(); ++k) inner_block *= dims[k];
  const std::size_t outer = psi.size() / (inner_block * dims[site]);
  CVector out(static_cast<Eigen::Index>(outer * inner_block));
  for (std::size_t o = 0; o < outer; ++o) {
    for (std::size_t r = 0; r < inner_block; ++r) {
      const std::size_t src = (o * dims[site] + value) * inner_block + r;
      out(static_cast<Eigen::Index>(o * inner_block + r)) = psi.amplitudes()(static_cast<Eigen::Index>(src));
    }
  }
  return StateVector(std::move(new_dims), std::move(out));
}

std::vector<std::size_t> uniform_dims(std::size_t n, std::size_t d) { return std::vector<std::size_t>(n, d); }

}  // namespace simps
