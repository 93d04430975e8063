#include "simps/mps.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include <Eigen/Eigenvalues>

#include "simps/error.hpp"

namespace simps {

Mps::Mps(std::vector<CMatrix> tensors) : tensors_(std::move(tensors)) {
  if (tensors_.empty()) throw Error(ErrorKind::InvalidInput, "MPS needs at least one tensor");
  const Eigen::Index dim = tensors_.front().rows();
  if (dim < 1) throw Error(ErrorKind::InvalidInput, "MPS bond dimension must be positive");
  for (const auto& a : tensors_) {
    if (a.rows() != dim || a.cols() != dim) throw Error(ErrorKind::InvalidInput, "MPS tensors must all be D x D");
    if (!all_finite(a)) throw Error(ErrorKind::InvalidInput, "MPS tensor has non-finite entries");
  }
}

namespace {

// Visits every index string of length n in lexicographic order together with
// the running product A^{i1}...A^{in}.
void for_each_product(const std::vector<CMatrix>& a, std::size_t n,
                      const std::function<void(std::size_t, const CMatrix&)>& visit) {
  const std::size_t d = a.size();
  const Eigen::Index dim = a.front().rows();
  std::vector<CMatrix> prefix(n + 1);
  prefix[0] = CMatrix::Identity(dim, dim);
  std::size_t flat = 0;
  std::function<void(std::size_t)> rec = [&](std::size_t depth) {
    if (depth == n) {
      visit(flat++, prefix[n]);
      return;
    }
    for (std::size_t i = 0; i < d; ++i) {
      prefix[depth + 1].noalias() = prefix[depth] * a[i];
      rec(depth + 1);
    }
  };
  rec(0);
}

}  // namespace

StateVector mps_evaluate_pbc(const Mps& m, std::size_t n_sites) {
  if (n_sites < 1) throw Error(ErrorKind::InvalidInput, "need at least one site");
  const std::size_t total = checked_power(m.d(), n_sites, amplitude_budget());
  CVector amps(static_cast<Eigen::Index>(total));
  for_each_product(m.tensors(), n_sites,
                   [&](std::size_t idx, const CMatrix& p) { amps(static_cast<Eigen::Index>(idx)) = p.trace(); });
  return StateVector(uniform_dims(n_sites, m.d()), std::move(amps));
}

StateVector mps_evaluate_obc(const Mps& m, std::size_t n_sites) {
  if (n_sites < 1) throw Error(ErrorKind::InvalidInput, "need at least one site");
  const std::size_t dim = m.bond_dim();
  const std::size_t bulk = checked_power(m.d(), n_sites, amplitude_budget());
  if (bulk > amplitude_budget() / (dim * dim)) throw Error(ErrorKind::TooLarge, "amplitude budget exceeded");
  CVector amps(static_cast<Eigen::Index>(bulk * dim * dim));
  for_each_product(m.tensors(), n_sites, [&](std::size_t idx, const CMatrix& p) {
    for (std::size_t a = 0; a < dim; ++a) {
      for (std::size_t b = 0; b < dim; ++b) {
        amps(static_cast<Eigen::Index>((a * bulk + idx) * dim + b)) =
            p(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
      }
    }
  });
  std::vector<std::size_t> dims = uniform_dims(n_sites + 2, m.d());
  dims.front() = dim;
  dims.back() = dim;
  return StateVector(std::move(dims), std::move(amps));
}

NormalityReport mps_normality(const Mps& m, std::optional<std::size_t> search_cap) {
  const std::size_t dim = m.bond_dim();
  NormalityReport report;
  report.target = dim * dim;
  report.search_cap = search_cap.value_or(2 * dim * dim);
  if (report.search_cap < 1) throw Error(ErrorKind::InvalidInput, "search cap must be at least 1");

  const auto sq = static_cast<Eigen::Index>(dim * dim);
  const CMatrix id = CMatrix::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  std::vector<CMatrix> right_mult;  // vec(X A) = (A^T (x) 1) vec(X)
  for (const auto& a : m.tensors()) right_mult.push_back(kron(a.transpose(), id));

  // span of length-1 products, then grow by right multiplication
  CMatrix gens(sq, static_cast<Eigen::Index>(m.d()));
  for (std::size_t i = 0; i < m.d(); ++i) gens.col(static_cast<Eigen::Index>(i)) = vectorize(m[i]);
  CMatrix basis = column_basis(gens);
  for (std::size_t len = 1; len <= report.search_cap; ++len) {
    if (len > 1) {
      CMatrix next(sq, basis.cols() * static_cast<Eigen::Index>(m.d()));
      for (std::size_t i = 0; i < m.d(); ++i) {
        next.middleCols(static_cast<Eigen::Index>(i) * basis.cols(), basis.cols()) = right_mult[i] * basis;
      }
      basis = column_basis(next);
    }
    const auto span = static_cast<std::size_t>(basis.cols());
    report.span_dims.emplace_back(len, span);
    if (span == report.target) {
      report.is_normal = true;
      report.injectivity_length = len;
      break;
    }
    if (span == 0) break;  // nilpotent: every longer product vanishes
  }
  return report;
}

std::vector<double> transfer_spectrum(const Mps& m) {
  const auto dim = static_cast<Eigen::Index>(m.bond_dim());
  CMatrix t = CMatrix::Zero(dim * dim, dim * dim);
  for (const auto& a : m.tensors()) t += kron(a.conjugate(), a);  // vec(A X A^dag)

  auto leading = [&](const CMatrix& op) {
    Eigen::ComplexEigenSolver<CMatrix> solver(op);
    if (solver.info() != Eigen::Success) throw Error(ErrorKind::NonUnique, "transfer eigendecomposition failed");
    const auto& w = solver.eigenvalues();
    std::vector<Eigen::Index> order(static_cast<std::size_t>(w.size()));
    for (Eigen::Index k = 0; k < w.size(); ++k) order[static_cast<std::size_t>(k)] = k;
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index x, Eigen::Index y) { return std::abs(w(x)) > std::abs(w(y)); });
    const double top = std::abs(w(order[0]));
    if (top == 0.0) throw Error(ErrorKind::NonUnique, "transfer map is nilpotent");
    if (order.size() > 1 && (top - std::abs(w(order[1]))) <= 1e-8 * top) {
      throw Error(ErrorKind::NonUnique, "leading transfer eigenvalue is degenerate");
    }
    CMatrix x = unvectorize(solver.eigenvectors().col(order[0]), dim, dim);
    const Complex tr = x.trace();
    x = std::abs(tr) > 1e-12 * x.norm() ? CMatrix(x / tr) : fix_phase(x);
    x = 0.5 * (x + x.adjoint());
    if (x.trace().real() < 0.0) x = -x;
    return x;
  };

  const CMatrix right = leading(t);
  const CMatrix left = leading(t.adjoint());
  const CMatrix root = psd_sqrt(left);
  std::vector<double> spec = hermitian_eigenvalues(root * right * root);
  double total = 0.0;
  for (double& v : spec) {
    v = std::max(v, 0.0);
    total += v;
  }
  if (total <= 0.0) throw Error(ErrorKind::NonUnique, "degenerate transfer fixed points");
  for (double& v : spec) v /= total;
  return spec;
}

Mps apply_onsite(const Mps& m, const CMatrix& u) {
  const auto d = static_cast<Eigen::Index>(m.d());
  if (u.rows() != d || u.cols() != d) throw Error(ErrorKind::InvalidInput, "u must be d x d");
  std::vector<CMatrix> out;
  for (Eigen::Index i = 0; i < d; ++i) {
    CMatrix acc = CMatrix::Zero(m[0].rows(), m[0].cols());
    for (Eigen::Index j = 0; j < d; ++j) acc += u(i, j) * m[static_cast<std::size_t>(j)];
    out.push_back(std::move(acc));
  }
  return Mps(std::move(out));
}

OnsiteSymmetryResult check_onsite_symmetry(const Mps& m, const CMatrix& u, std::size_t max_n) {
  if (!is_unitary(u, 1e-10)) throw Error(ErrorKind::InvalidInput, "u must be unitary");
  const Mps rotated = apply_onsite(m, u);
  OnsiteSymmetryResult out;
  out.symmetric = true;
  for (std::size_t n = 2; n <= std::max<std::size_t>(max_n, 2); ++n) {
    if (!same_state(mps_evaluate_pbc(rotated, n), mps_evaluate_pbc(m, n))) {
      out.symmetric = false;
      break;
    }
  }
  if (!out.symmetric) return out;

  // rotated^i V = V A^i for all i, stacked in vec form
  const auto dim = static_cast<Eigen::Index>(m.bond_dim());
  const CMatrix id = CMatrix::Identity(dim, dim);
  CMatrix system(static_cast<Eigen::Index>(m.d()) * dim * dim, dim * dim);
  for (std::size_t i = 0; i < m.d(); ++i) {
    system.middleRows(static_cast<Eigen::Index>(i) * dim * dim, dim * dim) =
        kron(id, rotated[i]) - kron(m[i].transpose(), id);
  }
  const CMatrix null = null_space(system, 1e-9);
  for (Eigen::Index k = 0; k < null.cols(); ++k) {
    CMatrix v = unvectorize(null.col(k), dim, dim);
    const CMatrix gram = v.adjoint() * v;
    const double scale = gram.trace().real() / static_cast<double>(dim);
    if (scale <= 0.0) continue;
    v /= std::sqrt(scale);
    if (!is_unitary(v, 1e-8)) continue;
    v = fix_phase(v);
    double res = 0.0;
    for (std::size_t i = 0; i < m.d(); ++i) res = std::max(res, max_abs(rotated[i] - v * m[i] * v.adjoint()));
    out.v = v;
    out.residual = res;
    break;
  }
  return out;
}

Complex commutator_phase(const CMatrix& v, const CMatrix& w) {
  if (v.rows() != v.cols() || w.rows() != w.cols() || v.rows() != w.rows()) {
    throw Error(ErrorKind::InvalidInput, "commutator needs square matrices of equal size");
  }
  if (!std::isfinite(condition_number(v)) || !std::isfinite(condition_number(w)) || condition_number(v) > 1e12 ||
      condition_number(w) > 1e12) {
    throw Error(ErrorKind::InvalidInput, "commutator needs invertible matrices");
  }
  const CMatrix c = v * w * v.inverse() * w.inverse();
  const Complex lambda = c.trace() / static_cast<double>(c.rows());
  const CMatrix id = CMatrix::Identity(c.rows(), c.cols());
  if (max_abs(c - lambda * id) > 1e-9 * std::max(1.0, std::abs(lambda))) {
    throw Error(ErrorKind::NotProjectivePair, "group commutator is not a scalar");
  }
  return lambda;
}

}  // namespace simps
