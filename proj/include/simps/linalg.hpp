#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace simps {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Relative singular-value cutoff used for every rank decision.
inline constexpr double kRankEps = 1e-10;

struct SvdResult {
  CMatrix u;                            // rows x k isometry
  std::vector<double> singular_values;  // non-increasing, length k = min(rows, cols)
  CMatrix v;                            // cols x k isometry
  std::size_t numerical_rank = 0;
};

/// Thin SVD m = u * diag(s) * v^dagger. Throws InvalidInput on an empty
/// matrix or non-finite entries.
SvdResult svd(const CMatrix& m);

/// Number of singular values above eps times the largest one; 0 for the zero
/// matrix.
std::size_t numerical_rank(const CMatrix& m, double eps = kRankEps);

/// Isometry P (cols x rank) spanning the support of m^dagger, so that
/// m * P * P^dagger == m. Throws RankZero for the zero matrix.
CMatrix range_isometry(const CMatrix& m);

/// Orthonormal basis (as columns) for the null space of m.
CMatrix null_space(const CMatrix& m, double eps = kRankEps);

/// Orthonormal basis (columns) for the column span of m.
CMatrix column_basis(const CMatrix& m, double eps = kRankEps);

CMatrix pseudo_inverse(const CMatrix& m, double eps = kRankEps);

/// Kronecker product a (x) b.
CMatrix kron(const CMatrix& a, const CMatrix& b);

double max_abs(const CMatrix& m);
bool all_finite(const CMatrix& m);
bool is_unitary(const CMatrix& m, double tol = 1e-10);

/// Ratio of the largest to smallest singular value; infinity when singular.
double condition_number(const CMatrix& m);

/// Row-major position of the first entry whose magnitude is within a relative
/// 1e-12 of the maximum. Gives a deterministic anchor for fixing scale.
std::pair<Eigen::Index, Eigen::Index> largest_entry(const CMatrix& m);

/// Rescale m so that its largest-magnitude entry (see largest_entry) is real
/// and positive, with the magnitude preserved unless `unit` is set.
CMatrix fix_phase(const CMatrix& m, bool unit = false);

/// Principal square root of a Hermitian positive semi-definite matrix.
/// Small negative eigenvalues from round-off are clamped to zero.
CMatrix psd_sqrt(const CMatrix& m);

/// Hermitian eigenvalues, sorted descending.
std::vector<double> hermitian_eigenvalues(const CMatrix& m);

/// Column-major vectorisation, matching Eigen's storage order.
CVector vectorize(const CMatrix& m);
CMatrix unvectorize(const CVector& v, Eigen::Index rows, Eigen::Index cols);

}  // namespace simps
