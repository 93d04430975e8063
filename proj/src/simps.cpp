#include "simps/simps.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "simps/error.hpp"

namespace simps {

Simps::Simps(std::vector<std::vector<CMatrix>> tensors) : tensors_(std::move(tensors)) {
  const std::size_t d = tensors_.size();
  if (d == 0) throw Error(ErrorKind::InvalidInput, "SIMPS needs d >= 1");
  chi_.resize(d);
  for (std::size_t i = 0; i < d; ++i) {
    if (tensors_[i].size() != d) throw Error(ErrorKind::InvalidInput, "SIMPS tensor table must be d x d");
    chi_[i] = static_cast<std::size_t>(tensors_[i][0].rows());
    if (chi_[i] == 0) throw Error(ErrorKind::InvalidInput, "SIMPS bond dimensions must be positive");
  }
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      const auto& b = tensors_[i][j];
      if (static_cast<std::size_t>(b.rows()) != chi_[i] || static_cast<std::size_t>(b.cols()) != chi_[j]) {
        throw Error(ErrorKind::InvalidInput, "B^{ij} must have shape chi^i x chi^j");
      }
      if (!all_finite(b)) throw Error(ErrorKind::InvalidInput, "SIMPS tensor has non-finite entries");
    }
  }
}

std::size_t Simps::max_chi() const { return *std::max_element(chi_.begin(), chi_.end()); }

std::optional<std::size_t> Simps::uniform_chi() const {
  if (std::all_of(chi_.begin(), chi_.end(), [&](std::size_t c) { return c == chi_.front(); })) return chi_.front();
  return std::nullopt;
}

StateVector simps_evaluate_pbc_with_insertion(const Simps& s, const std::vector<CMatrix>& insertion,
                                              std::size_t n_sites) {
  if (n_sites < 2) throw Error(ErrorKind::InvalidInput, "periodic SIMPS needs at least two sites");
  const std::size_t d = s.d();
  if (!insertion.empty()) {
    if (insertion.size() != d) throw Error(ErrorKind::InvalidInput, "need one insertion matrix per index");
    for (std::size_t i = 0; i < d; ++i) {
      const auto c = static_cast<Eigen::Index>(s.chi(i));
      if (insertion[i].rows() != c || insertion[i].cols() != c) {
        throw Error(ErrorKind::InvalidInput, "insertion matrix shape does not match chi^i");
      }
    }
  }
  const std::size_t total = checked_power(d, n_sites, amplitude_budget());
  CVector amps(static_cast<Eigen::Index>(total));
  std::vector<std::size_t> idx(n_sites);
  std::vector<CMatrix> prefix(n_sites);
  std::size_t flat = 0;
  std::function<void(std::size_t)> rec = [&](std::size_t depth) {
    if (depth == n_sites) {
      amps(static_cast<Eigen::Index>(flat++)) = (prefix[n_sites - 1] * s(idx[n_sites - 1], idx[0])).trace();
      return;
    }
    for (std::size_t i = 0; i < d; ++i) {
      idx[depth] = i;
      if (depth == 0) {
        const auto c = static_cast<Eigen::Index>(s.chi(i));
        prefix[0] = insertion.empty() ? CMatrix(CMatrix::Identity(c, c)) : insertion[i];
      } else {
        prefix[depth].noalias() = prefix[depth - 1] * s(idx[depth - 1], i);
      }
      rec(depth + 1);
    }
  };
  rec(0);
  return StateVector(uniform_dims(n_sites, d), std::move(amps));
}

StateVector simps_evaluate_pbc(const Simps& s, std::size_t n_sites) {
  return simps_evaluate_pbc_with_insertion(s, {}, n_sites);
}

StateVector simps_evaluate_obc(const Simps& s, std::size_t n_sites) {
  const auto chi = s.uniform_chi();
  if (!chi) throw Error(ErrorKind::UnsupportedBoundary, "open boundaries need a uniform bond dimension");
  if (n_sites < 1) throw Error(ErrorKind::InvalidInput, "need at least one site");
  const std::size_t d = s.d();
  const std::size_t c = *chi;
  const std::size_t bulk = checked_power(d, n_sites, amplitude_budget());
  if (bulk > amplitude_budget() / (c * c)) throw Error(ErrorKind::TooLarge, "amplitude budget exceeded");
  CVector amps(static_cast<Eigen::Index>(bulk * c * c));
  std::vector<std::size_t> idx(n_sites);
  std::vector<CMatrix> prefix(n_sites);
  std::size_t flat = 0;
  std::function<void(std::size_t)> rec = [&](std::size_t depth) {
    if (depth == n_sites) {
      const CMatrix& p = prefix[n_sites - 1];
      for (std::size_t a = 0; a < c; ++a) {
        for (std::size_t b = 0; b < c; ++b) {
          amps(static_cast<Eigen::Index>((a * bulk + flat) * c + b)) =
              p(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
        }
      }
      ++flat;
      return;
    }
    for (std::size_t i = 0; i < d; ++i) {
      idx[depth] = i;
      if (depth == 0) {
        prefix[0] = CMatrix::Identity(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(c));
      } else {
        prefix[depth].noalias() = prefix[depth - 1] * s(idx[depth - 1], i);
      }
      rec(depth + 1);
    }
  };
  rec(0);
  std::vector<std::size_t> dims = uniform_dims(n_sites + 2, d);
  dims.front() = c;
  dims.back() = c;
  return StateVector(std::move(dims), std::move(amps));
}

NormalityReport simps_normality(const Simps& s, std::optional<std::size_t> search_cap) {
  const std::size_t d = s.d();
  NormalityReport report;
  const std::size_t mc = s.max_chi();
  report.search_cap = search_cap.value_or(2 * mc * mc);
  if (report.search_cap < 1) throw Error(ErrorKind::InvalidInput, "search cap must be at least 1");
  for (std::size_t s1 = 0; s1 < d; ++s1) {
    for (std::size_t s2 = 0; s2 < d; ++s2) report.target += s.chi(s1) * s.chi(s2);
  }

  // right-multiplication maps vec(X B^{i j}) = (B^T (x) 1_{chi^{s1}}) vec(X), cached per (s1, i, j)
  std::vector<CMatrix> identities(d);
  for (std::size_t i = 0; i < d; ++i) {
    const auto c = static_cast<Eigen::Index>(s.chi(i));
    identities[i] = CMatrix::Identity(c, c);
  }
  auto right_mult = [&](std::size_t s1, std::size_t i, std::size_t j) { return kron(s(i, j).transpose(), identities[s1]); };

  // basis[s1][s2]: orthonormal columns spanning the current products
  std::vector<std::vector<CMatrix>> basis(d, std::vector<CMatrix>(d));
  for (std::size_t s1 = 0; s1 < d; ++s1) {
    for (std::size_t s2 = 0; s2 < d; ++s2) {
      const auto rows = static_cast<Eigen::Index>(s.chi(s1) * s.chi(s2));
      CMatrix gens(rows, static_cast<Eigen::Index>(d));
      for (std::size_t i = 0; i < d; ++i) gens.col(static_cast<Eigen::Index>(i)) = vectorize(s(s1, i) * s(i, s2));
      basis[s1][s2] = column_basis(gens);
    }
  }
  for (std::size_t len = 1; len <= report.search_cap; ++len) {
    if (len > 1) {
      std::vector<std::vector<CMatrix>> next(d, std::vector<CMatrix>(d));
      for (std::size_t s1 = 0; s1 < d; ++s1) {
        for (std::size_t s2 = 0; s2 < d; ++s2) {
          const auto rows = static_cast<Eigen::Index>(s.chi(s1) * s.chi(s2));
          Eigen::Index cols = 0;
          for (std::size_t i = 0; i < d; ++i) cols += basis[s1][i].cols();
          CMatrix gens(rows, cols);
          Eigen::Index at = 0;
          for (std::size_t i = 0; i < d; ++i) {
            const auto k = basis[s1][i].cols();
            if (k == 0) continue;
            gens.middleCols(at, k) = right_mult(s1, i, s2) * basis[s1][i];
            at += k;
          }
          next[s1][s2] = column_basis(gens);
        }
      }
      basis = std::move(next);
    }
    std::size_t span = 0;
    bool full = true;
    for (std::size_t s1 = 0; s1 < d; ++s1) {
      for (std::size_t s2 = 0; s2 < d; ++s2) {
        const auto k = static_cast<std::size_t>(basis[s1][s2].cols());
        span += k;
        if (k != s.chi(s1) * s.chi(s2)) full = false;
      }
    }
    report.span_dims.emplace_back(len, span);
    if (full) {
      report.is_normal = true;
      report.injectivity_length = len;
      break;
    }
    if (span == 0) break;
  }
  return report;
}

CMatrix split_product(const Simps& s, const std::vector<std::size_t>& indices) {
  if (indices.size() < 2) throw Error(ErrorKind::InvalidInput, "split product needs at least two indices");
  CMatrix out = s(indices[0], indices[1]);
  for (std::size_t k = 1; k + 1 < indices.size(); ++k) out = out * s(indices[k], indices[k + 1]);
  return out;
}

CMatrix stacked_matrix(const Simps& s) {
  const std::size_t d = s.d();
  std::vector<Eigen::Index> offset(d + 1, 0);
  for (std::size_t i = 0; i < d; ++i) offset[i + 1] = offset[i] + static_cast<Eigen::Index>(s.chi(i));
  CMatrix big = CMatrix::Zero(offset[d], offset[d]);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) big.block(offset[i], offset[j], s(i, j).rows(), s(i, j).cols()) = s(i, j);
  }
  return big;
}

Mps simps_to_mps(const Simps& s) {
  const std::size_t d = s.d();
  std::vector<Eigen::Index> offset(d + 1, 0);
  for (std::size_t i = 0; i < d; ++i) offset[i + 1] = offset[i] + static_cast<Eigen::Index>(s.chi(i));
  const CMatrix big = stacked_matrix(s);
  const SvdResult res = svd(big);
  if (res.numerical_rank == 0) throw Error(ErrorKind::RankZero, "stacked SIMPS matrix is zero");
  const auto rank = static_cast<Eigen::Index>(res.numerical_rank);
  const CMatrix u = res.u.leftCols(rank);
  Eigen::VectorXd sv(rank);
  for (Eigen::Index k = 0; k < rank; ++k) sv(k) = res.singular_values[static_cast<std::size_t>(k)];
  const CMatrix w_dag = sv.cast<Complex>().asDiagonal() * res.v.leftCols(rank).adjoint();
  std::vector<CMatrix> a;
  for (std::size_t i = 0; i < d; ++i) {
    const Eigen::Index c = offset[i + 1] - offset[i];
    a.push_back(w_dag.middleCols(offset[i], c) * u.middleRows(offset[i], c));
  }
  return Mps(std::move(a));
}

Simps simps_from_mps(const Mps& m) {
  const std::size_t d = m.d();
  std::vector<CMatrix> p;
  for (std::size_t i = 0; i < d; ++i) {
    if (numerical_rank(m[i]) == 0) {
      throw Error(ErrorKind::RankZero, "A^" + std::to_string(i) + " is zero");
    }
    p.push_back(range_isometry(m[i]));
  }
  std::vector<std::vector<CMatrix>> b(d, std::vector<CMatrix>(d));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) b[i][j] = p[i].adjoint() * m[j] * p[j];
  }
  return Simps(std::move(b));
}

GaugeSolution solve_gauge(const Simps& a, const Simps& b) {
  if (a.d() != b.d()) throw Error(ErrorKind::InvalidInput, "gauge solver needs equal local dimensions");
  if (a.chi() != b.chi()) throw Error(ErrorKind::InvalidInput, "gauge solver needs equal bond dimensions per index");
  if (!simps_normality(a).is_normal || !simps_normality(b).is_normal) {
    throw Error(ErrorKind::NotNormal, "gauge solver needs two normal SIMPS");
  }
  const std::size_t d = a.d();
  std::vector<Eigen::Index> col_off(d + 1, 0);
  for (std::size_t i = 0; i < d; ++i) col_off[i + 1] = col_off[i] + static_cast<Eigen::Index>(a.chi(i) * a.chi(i));
  Eigen::Index rows = 0;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) rows += static_cast<Eigen::Index>(a.chi(i) * a.chi(j));
  }
  // A^{ij} V_j - V_i B^{ij} = 0 in column-major vec form
  CMatrix system = CMatrix::Zero(rows, col_off[d]);
  Eigen::Index row = 0;
  for (std::size_t i = 0; i < d; ++i) {
    const auto ci = static_cast<Eigen::Index>(a.chi(i));
    for (std::size_t j = 0; j < d; ++j) {
      const auto cj = static_cast<Eigen::Index>(a.chi(j));
      const Eigen::Index r = ci * cj;
      system.block(row, col_off[j], r, cj * cj) += kron(CMatrix::Identity(cj, cj), a(i, j));
      system.block(row, col_off[i], r, ci * ci) -= kron(b(i, j).transpose(), CMatrix::Identity(ci, ci));
      row += r;
    }
  }
  const CMatrix null = null_space(system, 1e-9);
  GaugeSolution out;
  out.null_dim = static_cast<std::size_t>(null.cols());
  if (null.cols() == 0) throw Error(ErrorKind::NoGauge, "no gauge transformation relates the tensors");
  const CVector sol = null.col(null.cols() - 1);
  for (std::size_t i = 0; i < d; ++i) {
    const auto ci = static_cast<Eigen::Index>(a.chi(i));
    out.gauges.push_back(unvectorize(sol.segment(col_off[i], ci * ci), ci, ci));
  }
  const auto [r0, c0] = largest_entry(out.gauges[0]);
  const Complex anchor = out.gauges[0](r0, c0);
  if (std::abs(anchor) == 0.0) throw Error(ErrorKind::DegenerateGauge, "V_0 vanishes");
  for (auto& v : out.gauges) v /= anchor;
  out.gauges[0](r0, c0) = 1.0;

  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      out.residual = std::max(out.residual, (a(i, j) * out.gauges[j] - out.gauges[i] * b(i, j)).norm());
    }
  }
  if (out.residual > 1e-8) throw Error(ErrorKind::NoGauge, "gauge residual " + std::to_string(out.residual));
  for (const auto& v : out.gauges) out.max_condition = std::max(out.max_condition, condition_number(v));
  if (!(out.max_condition <= 1e8)) throw Error(ErrorKind::DegenerateGauge, "gauge matrix is singular");
  return out;
}

Simps fingerprint_compose(const std::vector<CMatrix>& j_tensors, const Simps& s) {
  if (j_tensors.size() != s.d()) throw Error(ErrorKind::InvalidInput, "need one J matrix per physical index");
  const Eigen::Index dim = j_tensors.front().rows();
  for (const auto& j : j_tensors) {
    if (j.rows() != dim || j.cols() != dim || dim == 0) {
      throw Error(ErrorKind::InvalidInput, "J matrices must be square with a common dimension");
    }
  }
  std::vector<std::vector<CMatrix>> out(s.d(), std::vector<CMatrix>(s.d()));
  for (std::size_t i = 0; i < s.d(); ++i) {
    for (std::size_t k = 0; k < s.d(); ++k) out[i][k] = kron(j_tensors[i], s(i, k));
  }
  return Simps(std::move(out));
}

Prop1Bounds prop1_bounds(const Simps& s) {
  const NormalityReport rs = simps_normality(s);
  if (!rs.is_normal) throw Error(ErrorKind::NotNormal, "SIMPS is not normal within the search cap");
  const Mps m = simps_to_mps(s);
  const NormalityReport rm = mps_normality(m);
  if (!rm.is_normal) throw Error(ErrorKind::NotNormal, "converted MPS is not normal within the search cap");
  const NormalityReport rt = simps_normality(simps_from_mps(m));
  if (!rt.is_normal) throw Error(ErrorKind::NotNormal, "round-trip SIMPS is not normal within the search cap");
  Prop1Bounds out;
  out.l1 = *rs.injectivity_length;
  out.l0 = *rm.injectivity_length;
  out.l1_round_trip = *rt.injectivity_length;
  out.ok = out.l0 <= out.l1 + 2 && out.l1_round_trip <= out.l0;
  return out;
}

double tensor_distance(const Simps& a, const Simps& b) {
  if (a.d() != b.d() || a.chi() != b.chi()) throw Error(ErrorKind::InvalidInput, "SIMPS shapes differ");
  double out = 0.0;
  for (std::size_t i = 0; i < a.d(); ++i) {
    for (std::size_t j = 0; j < a.d(); ++j) out = std::max(out, max_abs(a(i, j) - b(i, j)));
  }
  return out;
}

}  // namespace simps
