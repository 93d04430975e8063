#include "simps/constrained.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "simps/error.hpp"

namespace simps {

void LocalConstraint::validate() const {
  if (d == 0) throw Error(ErrorKind::InvalidInput, "constraint needs d >= 1");
  for (const auto& [i, j] : forbidden_pairs) {
    if (i >= d || j >= d) throw Error(ErrorKind::InvalidInput, "forbidden pair out of range");
  }
}

LocalConstraint rydberg_constraint() { return {2, {{1, 1}}}; }

LocalConstraint aklt_constraint() { return {3, {{1, 1}, {2, 2}}}; }

ConstraintCheck check_state_constraint(const StateVector& psi, const LocalConstraint& c, bool periodic) {
  c.validate();
  for (std::size_t dim : psi.site_dims()) {
    if (dim != c.d) throw Error(ErrorKind::InvalidInput, "state site dimensions do not match the constraint");
  }
  const std::size_t n = psi.n_sites();
  const std::size_t bonds = periodic ? n : (n == 0 ? 0 : n - 1);
  ConstraintCheck out;
  for (std::size_t flat = 0; flat < psi.size(); ++flat) {
    const auto idx = psi.digits(flat);
    bool hit = false;
    for (std::size_t k = 0; k < bonds && !hit; ++k) hit = c.forbidden_pairs.count({idx[k], idx[(k + 1) % n]}) > 0;
    if (!hit) continue;
    const double mag = std::abs(psi.amplitudes()(static_cast<Eigen::Index>(flat)));
    out.max_violation = std::max(out.max_violation, mag);
  }
  out.ok = out.max_violation <= 1e-12;
  return out;
}

bool check_simps_constraint(const Simps& s, const LocalConstraint& c) {
  c.validate();
  if (c.d != s.d()) throw Error(ErrorKind::InvalidInput, "constraint and SIMPS dimensions differ");
  for (const auto& [i, j] : c.forbidden_pairs) {
    if (!s(i, j).isZero(0.0)) return false;
  }
  return true;
}

Simps build_rydberg_family(Complex a, Complex b) {
  if (a == Complex(0.0) && b == Complex(0.0)) throw Error(ErrorKind::RankZero, "a and b both vanish");
  auto scalar = [](Complex v) { return CMatrix::Constant(1, 1, v); };
  return Simps({{scalar(a), scalar(b)}, {scalar(a), scalar(0.0)}});
}

Mps rydberg_mps(Complex a, Complex b) {
  CMatrix a0(2, 2), a1(2, 2);
  a0 << a, 0.0, a, 0.0;
  a1 << 0.0, b, 0.0, 0.0;
  return Mps({a0, a1});
}

Simps random_constrained_simps(std::size_t d, std::size_t chi, const LocalConstraint& c, std::uint64_t seed) {
  if (chi < 1) throw Error(ErrorKind::InvalidInput, "chi must be at least 1");
  c.validate();
  if (c.d != d) throw Error(ErrorKind::InvalidInput, "constraint and SIMPS dimensions differ");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  const auto n = static_cast<Eigen::Index>(chi);
  std::vector<std::vector<CMatrix>> t(d, std::vector<CMatrix>(d));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      CMatrix m(n, n);
      for (Eigen::Index r = 0; r < n; ++r) {
        for (Eigen::Index k = 0; k < n; ++k) {
          const double re = dist(rng);
          m(r, k) = Complex(re, dist(rng));
        }
      }
      if (c.forbidden_pairs.count({i, j})) m.setZero();
      t[i][j] = std::move(m);
    }
  }
  return Simps(std::move(t));
}

AkltPair build_aklt() {
  CMatrix z(2, 2), up(2, 2), down(2, 2);
  z << 1.0, 0.0, 0.0, -1.0;
  up << 0.0, 1.0, 0.0, 0.0;
  down << 0.0, 0.0, 1.0, 0.0;
  Mps mps({z, up, down});

  CMatrix ket0(2, 1), ket1(2, 1);
  ket0 << 1.0, 0.0;
  ket1 << 0.0, 1.0;
  auto scalar = [](double v) { return CMatrix::Constant(1, 1, Complex(v)); };
  std::vector<std::vector<CMatrix>> t(3, std::vector<CMatrix>(3));
  t[0][0] = z;
  t[0][1] = ket0;
  t[0][2] = ket1;
  t[1][0] = -ket1.transpose();
  t[1][1] = scalar(0.0);
  t[1][2] = scalar(1.0);
  t[2][0] = ket0.transpose();
  t[2][1] = scalar(1.0);
  t[2][2] = scalar(0.0);
  return {std::move(mps), Simps(std::move(t))};
}

}  // namespace simps
