#include "simps/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "simps/error.hpp"

namespace simps {

SvdResult svd(const CMatrix& m) {
  if (m.size() == 0) throw Error(ErrorKind::InvalidInput, "svd of an empty matrix");
  if (!all_finite(m)) throw Error(ErrorKind::InvalidInput, "svd of a matrix with non-finite entries");

  Eigen::JacobiSVD<CMatrix> solver(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  SvdResult out;
  out.u = solver.matrixU();
  out.v = solver.matrixV();
  const auto& s = solver.singularValues();
  out.singular_values.assign(s.data(), s.data() + s.size());
  const double top = out.singular_values.empty() ? 0.0 : out.singular_values.front();
  if (top > 0.0) {
    out.numerical_rank = static_cast<std::size_t>(
        std::count_if(out.singular_values.begin(), out.singular_values.end(),
                      [&](double x) { return x > kRankEps * top; }));
  }
  return out;
}

std::size_t numerical_rank(const CMatrix& m, double eps) {
  if (m.size() == 0) return 0;
  if (!all_finite(m)) throw Error(ErrorKind::InvalidInput, "rank of a matrix with non-finite entries");
  Eigen::JacobiSVD<CMatrix> solver(m);
  const auto& s = solver.singularValues();
  if (s.size() == 0 || s(0) <= 0.0) return 0;
  std::size_t r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > eps * s(0)) ++r;
  }
  return r;
}

CMatrix range_isometry(const CMatrix& m) {
  const SvdResult res = svd(m);
  if (res.numerical_rank == 0) throw Error(ErrorKind::RankZero, "range_isometry of the zero matrix");
  return res.v.leftCols(static_cast<Eigen::Index>(res.numerical_rank));
}

CMatrix null_space(const CMatrix& m, double eps) {
  const Eigen::Index cols = m.cols();
  if (m.rows() == 0) return CMatrix::Identity(cols, cols);
  Eigen::JacobiSVD<CMatrix> solver(m, Eigen::ComputeFullV);
  const auto& s = solver.singularValues();
  Eigen::Index r = 0;
  if (s.size() > 0 && s(0) > 0.0) {
    for (Eigen::Index i = 0; i < s.size(); ++i) {
      if (s(i) > eps * s(0)) ++r;
    }
  }
  return solver.matrixV().rightCols(cols - r);
}

CMatrix column_basis(const CMatrix& m, double eps) {
  if (m.cols() == 0) return CMatrix(m.rows(), 0);
  Eigen::JacobiSVD<CMatrix> solver(m, Eigen::ComputeThinU);
  const auto& s = solver.singularValues();
  Eigen::Index r = 0;
  if (s.size() > 0 && s(0) > 0.0) {
    for (Eigen::Index i = 0; i < s.size(); ++i) {
      if (s(i) > eps * s(0)) ++r;
    }
  }
  return solver.matrixU().leftCols(r);
}

CMatrix pseudo_inverse(const CMatrix& m, double eps) {
  Eigen::JacobiSVD<CMatrix> solver(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& s = solver.singularValues();
  CMatrix out = CMatrix::Zero(m.cols(), m.rows());
  if (s.size() == 0 || s(0) <= 0.0) return out;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) <= eps * s(0)) break;
    out += (solver.matrixV().col(i) / s(i)) * solver.matrixU().col(i).adjoint();
  }
  return out;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

double max_abs(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

bool all_finite(const CMatrix& m) {
  for (Eigen::Index k = 0; k < m.size(); ++k) {
    const Complex z = m.data()[k];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

bool is_unitary(const CMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  const CMatrix id = CMatrix::Identity(m.rows(), m.cols());
  return max_abs(m.adjoint() * m - id) <= tol && max_abs(m * m.adjoint() - id) <= tol;
}

double condition_number(const CMatrix& m) {
  Eigen::JacobiSVD<CMatrix> solver(m);
  const auto& s = solver.singularValues();
  if (s.size() == 0) return std::numeric_limits<double>::infinity();
  const double smallest = s(s.size() - 1);
  if (smallest <= 0.0 || m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  return s(0) / smallest;
}

std::pair<Eigen::Index, Eigen::Index> largest_entry(const CMatrix& m) {
  const double top = max_abs(m);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (std::abs(m(i, j)) >= top * (1.0 - 1e-12)) return {i, j};
    }
  }
  return {0, 0};
}

CMatrix fix_phase(const CMatrix& m, bool unit) {
  if (m.size() == 0) return m;
  const auto [i, j] = largest_entry(m);
  const Complex anchor = m(i, j);
  if (std::abs(anchor) == 0.0) return m;
  const Complex scale = unit ? 1.0 / anchor : std::abs(anchor) / anchor;
  return m * scale;
}

CMatrix psd_sqrt(const CMatrix& m) {
  const CMatrix herm = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(herm);
  Eigen::VectorXd w = solver.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return solver.eigenvectors() * w.cast<Complex>().asDiagonal() * solver.eigenvectors().adjoint();
}

std::vector<double> hermitian_eigenvalues(const CMatrix& m) {
  const CMatrix herm = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(herm, Eigen::EigenvaluesOnly);
  std::vector<double> out(solver.eigenvalues().data(),
                          solver.eigenvalues().data() + solver.eigenvalues().size());
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

CVector vectorize(const CMatrix& m) {
  return Eigen::Map<const CVector>(m.data(), m.size());
}

CMatrix unvectorize(const CVector& v, Eigen::Index rows, Eigen::Index cols) {
  return Eigen::Map<const CMatrix>(v.data(), rows, cols);
}

}  // namespace simps
