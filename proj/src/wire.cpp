#include "simps/wire.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <set>

#include "simps/error.hpp"

namespace simps {

namespace {

std::size_t require_uniform(const Simps& s) {
  const auto chi = s.uniform_chi();
  if (!chi) throw Error(ErrorKind::UnsupportedBoundary, "wire simulation needs uniform chi");
  return *chi;
}

void check_record(const Simps& s, const MeasurementRecord& rec) {
  if (rec.outcomes.empty()) throw Error(ErrorKind::InvalidInput, "need at least one outcome");
  for (std::size_t o : rec.outcomes) {
    if (o >= s.d()) throw Error(ErrorKind::InvalidInput, "outcome out of range");
  }
}

CMatrix chain_product(const Simps& s, const std::vector<std::size_t>& outcomes, std::size_t chi) {
  const auto n = static_cast<Eigen::Index>(chi);
  CMatrix m = CMatrix::Identity(n, n);
  for (std::size_t k = 0; k + 1 < outcomes.size(); ++k) m = m * s(outcomes[k], outcomes[k + 1]);
  return m;
}

// Sum over all open-chain outcome strings of ||M||_F^2.
double partition_sum(const Simps& s, std::size_t n_sites, std::size_t chi) {
  const auto n = static_cast<Eigen::Index>(chi);
  std::vector<CMatrix> g(s.d(), CMatrix::Identity(n, n));
  for (std::size_t k = 1; k < n_sites; ++k) {
    std::vector<CMatrix> next(s.d(), CMatrix::Zero(n, n));
    for (std::size_t j = 0; j < s.d(); ++j) {
      for (std::size_t jp = 0; jp < s.d(); ++jp) next[jp] += s(j, jp).adjoint() * g[j] * s(j, jp);
    }
    g = std::move(next);
  }
  double z = 0.0;
  for (const auto& m : g) z += m.trace().real();
  return z;
}

bool proportional_to_unitary(const CMatrix& m) {
  const double f = m.norm();
  if (f == 0.0) return false;
  return is_unitary(m * std::sqrt(static_cast<double>(m.rows())) / f, 1e-10);
}

}  // namespace

WireResult measure_bulk(const Simps& s, const MeasurementRecord& rec) {
  const std::size_t chi = require_uniform(s);
  check_record(s, rec);
  const CMatrix m = chain_product(s, rec.outcomes, chi);
  const double z = partition_sum(s, rec.outcomes.size(), chi);

  WireResult out;
  const double norm = m.norm();
  out.probability = z > 0.0 ? norm * norm / z : 0.0;
  if (norm <= 1e-14) {
    out.boundary_state = StateVector({chi, chi}, CVector::Zero(static_cast<Eigen::Index>(chi * chi)));
    out.byproduct_matrix = CMatrix::Zero(m.rows(), m.cols());
    return out;
  }
  CVector amps(static_cast<Eigen::Index>(chi * chi));
  for (Eigen::Index a = 0; a < m.rows(); ++a) {
    for (Eigen::Index b = 0; b < m.cols(); ++b) amps(a * m.cols() + b) = m(a, b) / norm;
  }
  out.boundary_state = StateVector({chi, chi}, std::move(amps));
  out.boundary_defined = true;
  out.byproduct_matrix = m * std::sqrt(static_cast<double>(chi)) / norm;
  if (chi == 2) {
    out.byproduct = pauli_from_matrix(m);
    if (out.byproduct) out.decoded_bits = std::make_pair(out.byproduct->x, out.byproduct->z);
  }
  return out;
}

PauliString decode_byproduct(const BinarySymmetryData& data, const MeasurementRecord& rec) {
  data.validate();
  std::uint8_t x = 0;
  std::uint8_t z = 0;
  for (std::size_t o : rec.outcomes) {
    if (o >= data.d) throw Error(ErrorKind::InvalidInput, "outcome out of range");
  }
  for (std::size_t k = 0; k + 1 < rec.outcomes.size(); ++k) {
    x ^= data.a[rec.outcomes[k]][rec.outcomes[k + 1]];
    z ^= data.b[rec.outcomes[k]][rec.outcomes[k + 1]];
  }
  return PauliString{x, z, 0};
}

TeleportResult teleport(const Simps& s, const StateVector& input, const MeasurementRecord& rec) {
  const std::size_t chi = require_uniform(s);
  check_record(s, rec);
  if (input.site_dims() != std::vector<std::size_t>{chi}) {
    throw Error(ErrorKind::InvalidInput, "input must be a single chi-dimensional site");
  }
  TeleportResult out;
  for (const auto& row : s.tensors()) {
    for (const auto& b : row) out.wire_ok = out.wire_ok && proportional_to_unitary(b);
  }
  const WireResult w = measure_bulk(s, rec);
  out.probability = w.probability;
  out.output = StateVector({chi}, CVector::Zero(static_cast<Eigen::Index>(chi)));
  if (!w.boundary_defined) return out;

  const CVector phi = input.normalized().amplitudes();
  const CMatrix& m = w.byproduct_matrix;
  const CVector received = m.transpose() * phi;  // right boundary after planting
  CMatrix correction;
  if (w.byproduct) {
    correction = to_matrix(*w.byproduct).conjugate();
  } else if (is_unitary(m, 1e-10)) {
    correction = m.conjugate();
  } else {
    correction = pseudo_inverse(CMatrix(m.transpose()));
  }
  const CVector recovered = correction * received;
  if (recovered.norm() <= 1e-14) return out;
  out.output = StateVector({chi}, recovered / recovered.norm());
  out.fidelity = fidelity(out.output, input);
  return out;
}

std::vector<MeasurementRecord> sample_outcomes(const Simps& s, std::size_t n_sites, std::uint64_t seed,
                                               std::size_t count) {
  const std::size_t chi = require_uniform(s);
  if (n_sites < 1) throw Error(ErrorKind::InvalidInput, "need at least one site");
  const std::size_t d = s.d();
  const auto n = static_cast<Eigen::Index>(chi);

  // right[k][j]: sum over s_{k+1}..s_N of the tail product times its adjoint,
  // given s_k = j (0-based k)
  std::vector<std::vector<CMatrix>> right(n_sites, std::vector<CMatrix>(d, CMatrix::Identity(n, n)));
  for (std::size_t k = n_sites - 1; k-- > 0;) {
    for (std::size_t j = 0; j < d; ++j) {
      CMatrix acc = CMatrix::Zero(n, n);
      for (std::size_t jp = 0; jp < d; ++jp) acc += s(j, jp) * right[k + 1][jp] * s(j, jp).adjoint();
      right[k][j] = std::move(acc);
    }
  }

  std::mt19937_64 rng(seed);
  auto uniform = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  std::vector<MeasurementRecord> out;
  out.reserve(count);
  std::vector<double> weights(d);
  for (std::size_t c = 0; c < count; ++c) {
    MeasurementRecord rec;
    CMatrix prefix = CMatrix::Identity(n, n);
    for (std::size_t k = 0; k < n_sites; ++k) {
      double total = 0.0;
      for (std::size_t j = 0; j < d; ++j) {
        const CMatrix p = k == 0 ? prefix : CMatrix(prefix * s(rec.outcomes.back(), j));
        weights[j] = std::max(0.0, (p * right[k][j] * p.adjoint()).trace().real());
        total += weights[j];
      }
      if (total <= 0.0) throw Error(ErrorKind::RankZero, "open-chain state vanishes");
      double r = uniform() * total;
      std::size_t pick = d - 1;
      for (std::size_t j = 0; j < d; ++j) {
        if (weights[j] > 0.0 && r < weights[j]) {
          pick = j;
          break;
        }
        r -= weights[j];
      }
      while (weights[pick] <= 0.0 && pick > 0) --pick;
      if (k > 0) prefix = prefix * s(rec.outcomes.back(), pick);
      // rescale to keep the prefix well conditioned; weights are relative
      const double pn = prefix.norm();
      if (pn > 0.0) prefix /= pn;
      rec.outcomes.push_back(pick);
    }
    out.push_back(std::move(rec));
  }
  return out;
}

double total_probability(const Simps& s, std::size_t n_sites) {
  const std::size_t chi = require_uniform(s);
  const std::size_t total = checked_power(s.d(), n_sites, std::size_t{1} << 20);
  const double z = partition_sum(s, n_sites, chi);
  if (z <= 0.0) return 0.0;
  double sum = 0.0;
  MeasurementRecord rec;
  rec.outcomes.resize(n_sites);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rem = flat;
    for (std::size_t k = n_sites; k-- > 0;) {
      rec.outcomes[k] = rem % s.d();
      rem /= s.d();
    }
    const double f = chain_product(s, rec.outcomes, chi).norm();
    sum += f * f;
  }
  return sum / z;
}

EntanglementProfile localizable_entanglement_profile(const Simps& s, std::size_t n_sites) {
  const std::size_t chi = require_uniform(s);
  if (n_sites < 1) throw Error(ErrorKind::InvalidInput, "need at least one site");
  (void)checked_power(s.d(), n_sites, std::size_t{1} << 20);
  const std::size_t d = s.d();
  const auto n = static_cast<Eigen::Index>(chi);

  EntanglementProfile out;
  out.min_bits = std::numeric_limits<double>::infinity();
  double weighted = 0.0;
  double total = 0.0;
  std::vector<CMatrix> prefix(n_sites);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t depth, std::size_t last) {
    if (depth == n_sites) {
      const CMatrix& m = prefix[n_sites - 1];
      const double w = m.squaredNorm();
      if (w <= 1e-28) return;
      std::vector<double> spec;
      for (double v : svd(m).singular_values) spec.push_back(v * v / w);
      const double e = entropy_bits(spec);
      out.min_bits = std::min(out.min_bits, e);
      weighted += w * e;
      total += w;
      return;
    }
    for (std::size_t j = 0; j < d; ++j) {
      prefix[depth] = depth == 0 ? CMatrix(CMatrix::Identity(n, n)) : CMatrix(prefix[depth - 1] * s(last, j));
      rec(depth + 1, j);
    }
  };
  rec(0, 0);
  if (total <= 0.0) throw Error(ErrorKind::RankZero, "every outcome string has zero weight");
  out.mean_bits = weighted / total;
  return out;
}

ReducedMps reduce_odd_measurements(const Simps& s, const std::vector<std::size_t>& odd_outcomes) {
  if (odd_outcomes.empty()) throw Error(ErrorKind::InvalidInput, "need at least one measured site");
  for (std::size_t o : odd_outcomes) {
    if (o >= s.d()) throw Error(ErrorKind::InvalidInput, "outcome out of range");
  }
  const NormalityReport report = simps_normality(s, std::size_t{1});
  if (!report.is_normal) throw Error(ErrorKind::NotInjective, "tensor is not injective at length 1");

  ReducedMps out;
  const std::size_t n = odd_outcomes.size();
  bool certified = s.uniform_chi() == std::optional<std::size_t>(2) && s.d() == 4;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t left = odd_outcomes[k];
    const std::size_t right = odd_outcomes[(k + 1) % n];
    std::vector<CMatrix> tensors;
    std::vector<std::optional<PauliString>> labels;
    std::set<std::pair<int, int>> seen;
    for (std::size_t i = 0; i < s.d(); ++i) {
      tensors.push_back(s(left, i) * s(i, right));
      labels.push_back(tensors.back().rows() == 2 && tensors.back().cols() == 2 ? pauli_from_matrix(tensors.back())
                                                                                 : std::nullopt);
      if (labels.back()) seen.emplace(labels.back()->x, labels.back()->z);
    }
    certified = certified && seen.size() == 4;
    out.site_tensors.push_back(std::move(tensors));
    out.labels.push_back(std::move(labels));
  }
  out.pauli_certified = certified;
  return out;
}

StateVector evaluate_reduced_pbc(const ReducedMps& r) {
  const std::size_t n = r.site_tensors.size();
  if (n == 0) throw Error(ErrorKind::InvalidInput, "empty reduced MPS");
  const std::size_t d = r.site_tensors.front().size();
  const std::size_t total = checked_power(d, n, amplitude_budget());
  const Eigen::Index dim = r.site_tensors.front().front().rows();
  CVector amps(static_cast<Eigen::Index>(total));
  std::vector<CMatrix> prefix(n + 1);
  prefix[0] = CMatrix::Identity(dim, dim);
  std::size_t flat = 0;
  std::function<void(std::size_t)> rec = [&](std::size_t depth) {
    if (depth == n) {
      amps(static_cast<Eigen::Index>(flat++)) = prefix[n].trace();
      return;
    }
    for (std::size_t i = 0; i < d; ++i) {
      prefix[depth + 1] = prefix[depth] * r.site_tensors[depth][i];
      rec(depth + 1);
    }
  };
  rec(0);
  return StateVector(uniform_dims(n, d), std::move(amps));
}

int anf_degree(const std::vector<std::uint8_t>& truth_table) {
  const std::size_t size = truth_table.size();
  if (size == 0 || (size & (size - 1)) != 0) {
    throw Error(ErrorKind::InvalidInput, "truth table length must be a power of two");
  }
  std::vector<std::uint8_t> coeff(truth_table);
  for (auto& c : coeff) c &= 1;
  for (std::size_t step = 1; step < size; step <<= 1) {
    for (std::size_t i = 0; i < size; ++i) {
      if (i & step) coeff[i] ^= coeff[i ^ step];
    }
  }
  int degree = -1;
  for (std::size_t i = 0; i < size; ++i) {
    if (coeff[i]) degree = std::max(degree, __builtin_popcountll(static_cast<unsigned long long>(i)));
  }
  return degree;
}

}  // namespace simps
