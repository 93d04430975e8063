#include "simps/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "simps/error.hpp"

namespace simps {

void DiagonalTwoSiteSymmetry::validate() const {
  if (d == 0) throw Error(ErrorKind::InvalidInput, "symmetry needs d >= 1");
  if (phases.size() != d) throw Error(ErrorKind::InvalidInput, "phase table must be d x d");
  for (const auto& row : phases) {
    if (row.size() != d) throw Error(ErrorKind::InvalidInput, "phase table must be d x d");
    for (const auto& p : row) {
      if (std::abs(std::abs(p) - 1.0) > 1e-12) throw Error(ErrorKind::InvalidInput, "phases must have unit modulus");
    }
  }
  if (perm) {
    if (perm->size() != d) throw Error(ErrorKind::InvalidInput, "permutation must have d entries");
    std::vector<bool> seen(d, false);
    for (std::size_t v : *perm) {
      if (v >= d || seen[v]) throw Error(ErrorKind::InvalidInput, "onsite permutation is not a bijection");
      seen[v] = true;
    }
  }
}

DiagonalTwoSiteSymmetry DiagonalTwoSiteSymmetry::identity(std::size_t d) {
  return {d, std::vector<std::vector<Complex>>(d, std::vector<Complex>(d, 1.0)), std::nullopt};
}

DiagonalTwoSiteSymmetry DiagonalTwoSiteSymmetry::from_bits(const BitMatrix& bits) {
  DiagonalTwoSiteSymmetry u = identity(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i].size() != bits.size()) throw Error(ErrorKind::InvalidInput, "bit matrix must be square");
    for (std::size_t j = 0; j < bits.size(); ++j) u.phases[i][j] = (bits[i][j] & 1) ? -1.0 : 1.0;
  }
  return u;
}

void CocycleData::validate() const {
  const std::size_t n = group_order;
  if (n == 0 || mult_table.size() != n) throw Error(ErrorKind::InvalidInput, "multiplication table must be n x n");
  for (const auto& row : mult_table) {
    if (row.size() != n) throw Error(ErrorKind::InvalidInput, "multiplication table must be n x n");
    std::vector<bool> seen(n, false);
    for (std::size_t v : row) {
      if (v >= n || seen[v]) throw Error(ErrorKind::InvalidInput, "multiplication table rows must be permutations");
      seen[v] = true;
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t c = 0; c < n; ++c) {
        if (mult_table[mult_table[a][b]][c] != mult_table[a][mult_table[b][c]]) {
          throw Error(ErrorKind::InvalidInput, "multiplication is not associative");
        }
      }
    }
  }
  (void)identity();
  if (omega.size() != n) throw Error(ErrorKind::InvalidInput, "omega must be n x n x n");
  for (const auto& plane : omega) {
    if (plane.size() != n) throw Error(ErrorKind::InvalidInput, "omega must be n x n x n");
    for (const auto& row : plane) {
      if (row.size() != n) throw Error(ErrorKind::InvalidInput, "omega must be n x n x n");
      for (const auto& w : row) {
        if (std::abs(std::abs(w) - 1.0) > 1e-12) throw Error(ErrorKind::InvalidInput, "omega must have unit modulus");
      }
    }
  }
}

std::size_t CocycleData::identity() const {
  for (std::size_t e = 0; e < group_order; ++e) {
    bool ok = true;
    for (std::size_t g = 0; g < group_order && ok; ++g) ok = mult_table[e][g] == g && mult_table[g][e] == g;
    if (ok) return e;
  }
  throw Error(ErrorKind::InvalidInput, "group has no identity element");
}

std::size_t CocycleData::inverse(std::size_t g) const {
  const std::size_t e = identity();
  for (std::size_t h = 0; h < group_order; ++h) {
    if (mult_table[g][h] == e) return h;
  }
  throw Error(ErrorKind::InvalidInput, "group element has no inverse");
}

Simps build_psi_ab(const BinarySymmetryData& data) {
  data.validate();
  std::vector<std::vector<CMatrix>> t(data.d, std::vector<CMatrix>(data.d));
  for (std::size_t i = 0; i < data.d; ++i) {
    for (std::size_t j = 0; j < data.d; ++j) t[i][j] = to_matrix(PauliString{data.a[i][j], data.b[i][j], 0});
  }
  return Simps(std::move(t));
}

Simps apply_diagonal_symmetry(const Simps& s, const DiagonalTwoSiteSymmetry& u) {
  u.validate();
  if (u.d != s.d()) throw Error(ErrorKind::InvalidInput, "symmetry and SIMPS dimensions differ");
  std::vector<std::vector<CMatrix>> t(s.d(), std::vector<CMatrix>(s.d()));
  for (std::size_t i = 0; i < s.d(); ++i) {
    for (std::size_t j = 0; j < s.d(); ++j) t[i][j] = u.phases[i][j] * s(u.mapped(i), u.mapped(j));
  }
  return Simps(std::move(t));
}

namespace {

void require_uniform(const StateVector& psi, std::size_t d) {
  for (std::size_t dim : psi.site_dims()) {
    if (dim != d) throw Error(ErrorKind::InvalidInput, "state site dimensions do not match the symmetry");
  }
}

}  // namespace

StateVector apply_global_symmetry(const StateVector& psi, const DiagonalTwoSiteSymmetry& u) {
  u.validate();
  require_uniform(psi, u.d);
  const std::size_t n = psi.n_sites();
  CVector out(psi.amplitudes().size());
  for (std::size_t flat = 0; flat < psi.size(); ++flat) {
    const auto idx = psi.digits(flat);
    Complex phase = 1.0;
    for (std::size_t k = 0; k < n; ++k) phase *= u.phases[idx[k]][idx[(k + 1) % n]];
    std::vector<std::size_t> src(n);
    for (std::size_t k = 0; k < n; ++k) src[k] = u.mapped(idx[k]);
    out(static_cast<Eigen::Index>(flat)) = phase * psi.amplitudes()(static_cast<Eigen::Index>(psi.flat_index(src)));
  }
  return StateVector(psi.site_dims(), std::move(out));
}

StateVector apply_string(const StateVector& psi, const DiagonalTwoSiteSymmetry& u, std::size_t first_site,
                         std::size_t last_site) {
  u.validate();
  if (u.perm) throw Error(ErrorKind::InvalidInput, "string operators take phase-only symmetries");
  require_uniform(psi, u.d);
  const std::size_t n = psi.n_sites();
  if (last_site <= first_site || last_site - first_site > n) {
    throw Error(ErrorKind::InvalidGeometry, "string must cover between 1 and N bonds");
  }
  CVector out = psi.amplitudes();
  for (std::size_t flat = 0; flat < psi.size(); ++flat) {
    const auto idx = psi.digits(flat);
    Complex phase = 1.0;
    for (std::size_t k = first_site; k < last_site; ++k) phase *= u.phases[idx[k % n]][idx[(k + 1) % n]];
    out(static_cast<Eigen::Index>(flat)) *= phase;
  }
  return StateVector(psi.site_dims(), std::move(out));
}

SymmetryCheck check_symmetry(const Simps& s, const DiagonalTwoSiteSymmetry& u, std::size_t max_n) {
  u.validate();
  if (u.d != s.d()) throw Error(ErrorKind::InvalidInput, "symmetry and SIMPS dimensions differ");
  SymmetryCheck out;
  out.symmetric = true;
  for (std::size_t n = 3; n <= std::max<std::size_t>(max_n, 3); ++n) {
    const StateVector psi = simps_evaluate_pbc(s, n);
    if (psi.is_zero()) continue;
    if (!same_state(apply_global_symmetry(psi, u), psi)) {
      out.symmetric = false;
      return out;
    }
  }
  const Simps moved = apply_diagonal_symmetry(s, u);
  if (moved.chi() == s.chi() && simps_normality(s).is_normal) {
    out.gauge_attempted = true;
    try {
      out.gauge = solve_gauge(moved, s);
    } catch (const Error&) {
      out.gauge.reset();
    }
  }
  return out;
}

std::vector<BitMatrix> discover_z2_symmetries(const Simps& s, std::size_t max_n) {
  const std::size_t d = s.d();
  if (d > 4) throw Error(ErrorKind::TooLarge, "sign-pattern search limited to d <= 4");
  const std::size_t bits = d * d;
  // Aggregate |psi|^2 by the parity vector of bond-pair occurrences, so each
  // pattern's expectation is a short sum.
  std::vector<std::map<std::uint32_t, double>> weights;
  for (std::size_t n = 3; n <= std::max<std::size_t>(max_n, 3); ++n) {
    const StateVector psi = simps_evaluate_pbc(s, n);
    std::map<std::uint32_t, double> w;
    for (std::size_t flat = 0; flat < psi.size(); ++flat) {
      const double p = std::norm(psi.amplitudes()(static_cast<Eigen::Index>(flat)));
      if (p == 0.0) continue;
      const auto idx = psi.digits(flat);
      std::uint32_t parity = 0;
      for (std::size_t k = 0; k < n; ++k) parity ^= std::uint32_t{1} << (idx[k] * d + idx[(k + 1) % n]);
      w[parity] += p;
    }
    weights.push_back(std::move(w));
  }
  std::vector<BitMatrix> out;
  for (std::uint32_t pattern = 0; pattern < (std::uint32_t{1} << bits); ++pattern) {
    bool ok = true;
    for (const auto& w : weights) {
      double total = 0.0;
      double signed_sum = 0.0;
      for (const auto& [parity, p] : w) {
        total += p;
        signed_sum += (__builtin_popcount(parity & pattern) & 1) ? -p : p;
      }
      if (total == 0.0) continue;
      const double ratio = signed_sum / total;
      if (ratio * ratio < 1.0 - 1e-9) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    BitMatrix m(d, std::vector<std::uint8_t>(d, 0));
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) m[i][j] = static_cast<std::uint8_t>((pattern >> (i * d + j)) & 1);
    }
    out.push_back(std::move(m));
  }
  return out;
}

bool acts_as_scalar(const BitMatrix& pattern, std::size_t min_n, std::size_t max_n) {
  const std::size_t d = pattern.size();
  for (std::size_t n = std::max<std::size_t>(min_n, 1); n <= max_n; ++n) {
    const std::size_t total = checked_power(d, n, amplitude_budget());
    std::vector<std::size_t> idx(n, 0);
    int first = -1;
    for (std::size_t flat = 0; flat < total; ++flat) {
      std::size_t rem = flat;
      for (std::size_t k = n; k-- > 0;) {
        idx[k] = rem % d;
        rem /= d;
      }
      int parity = 0;
      for (std::size_t k = 0; k < n; ++k) parity ^= pattern[idx[k]][idx[(k + 1) % n]];
      if (first < 0) first = parity;
      if (parity != first) return false;
    }
  }
  return true;
}

std::vector<BitMatrix> symmetry_classes(const Simps& s, std::size_t max_n) {
  const std::size_t d = s.d();
  const std::vector<BitMatrix> found = discover_z2_symmetries(s, max_n);
  auto xor_of = [d](const BitMatrix& a, const BitMatrix& b) {
    BitMatrix m(d, std::vector<std::uint8_t>(d));
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) m[i][j] = a[i][j] ^ b[i][j];
    }
    return m;
  };
  std::vector<BitMatrix> scalars;
  for (const auto& p : found) {
    if (acts_as_scalar(p, 3, std::max<std::size_t>(max_n, 3))) scalars.push_back(p);
  }
  const bool normal = simps_normality(s).is_normal;
  auto has_gauge = [&](const BitMatrix& p) {
    if (!normal) return false;
    try {
      (void)solve_gauge(apply_diagonal_symmetry(s, DiagonalTwoSiteSymmetry::from_bits(p)), s);
      return true;
    } catch (const Error&) {
      return false;
    }
  };
  std::vector<BitMatrix> reps;
  std::vector<BitMatrix> covered = scalars;
  for (const auto& p : found) {
    if (std::find(covered.begin(), covered.end(), p) != covered.end()) continue;
    std::vector<BitMatrix> coset;
    for (const auto& t : scalars) coset.push_back(xor_of(p, t));
    auto best = std::find_if(coset.begin(), coset.end(), has_gauge);
    reps.push_back(best != coset.end() ? *best : p);
    covered.insert(covered.end(), coset.begin(), coset.end());
  }
  return reps;
}

namespace {

// Block map of the window (s1, i1..iL, s2): rows are window configurations,
// columns the entries of the chi^{s1} x chi^{s2} product for each boundary
// pair. With `p` non-empty, p[i_c] is inserted at the bond of middle site c.
CMatrix window_map(const Simps& s, std::size_t window, std::size_t c, const std::vector<CMatrix>* p) {
  const std::size_t d = s.d();
  const std::size_t sites = window + 2;
  const std::size_t rows = checked_power(d, sites, std::size_t{1} << 16);
  std::vector<std::vector<Eigen::Index>> col_off(d, std::vector<Eigen::Index>(d, 0));
  Eigen::Index cols = 0;
  for (std::size_t s1 = 0; s1 < d; ++s1) {
    for (std::size_t s2 = 0; s2 < d; ++s2) {
      col_off[s1][s2] = cols;
      cols += static_cast<Eigen::Index>(s.chi(s1) * s.chi(s2));
    }
  }
  CMatrix out = CMatrix::Zero(static_cast<Eigen::Index>(rows), cols);
  std::vector<std::size_t> seq(sites);
  for (std::size_t flat = 0; flat < rows; ++flat) {
    std::size_t rem = flat;
    for (std::size_t k = sites; k-- > 0;) {
      seq[k] = rem % d;
      rem /= d;
    }
    CMatrix prod = s(seq[0], seq[1]);
    for (std::size_t k = 1; k + 1 < sites; ++k) {
      if (p != nullptr && k == c) prod = prod * (*p)[seq[k]];
      prod = prod * s(seq[k], seq[k + 1]);
    }
    out.block(static_cast<Eigen::Index>(flat), col_off[seq[0]][seq[sites - 1]], 1, prod.size()) =
        vectorize(prod).transpose();
  }
  return out;
}

}  // namespace

CMatrix virtual_insertion_operator(const Simps& s, const std::vector<CMatrix>& p, std::size_t window, std::size_t c,
                                   bool removal) {
  if (window < 1) throw Error(ErrorKind::InvalidInput, "window must contain at least one middle site");
  if (c < 1 || c > window) throw Error(ErrorKind::InvalidInput, "insertion site must be a middle site of the window");
  if (p.size() != s.d()) throw Error(ErrorKind::InvalidInput, "need one insertion matrix per index");
  for (std::size_t i = 0; i < s.d(); ++i) {
    const auto chi = static_cast<Eigen::Index>(s.chi(i));
    if (p[i].rows() != chi || p[i].cols() != chi) throw Error(ErrorKind::InvalidInput, "insertion shape mismatch");
  }
  const CMatrix plain = window_map(s, window, c, nullptr);
  const CMatrix inserted = window_map(s, window, c, &p);
  const CMatrix& source = removal ? inserted : plain;
  const CMatrix& target = removal ? plain : inserted;
  if (numerical_rank(source) != static_cast<std::size_t>(source.cols())) {
    throw Error(ErrorKind::NotInvertible, "window block map is not injective");
  }
  return target * pseudo_inverse(source);
}

CMatrix virtual_insertion_operator(const Simps& s, const CMatrix& p, std::size_t window) {
  if (!s.uniform_chi()) throw Error(ErrorKind::InvalidInput, "single insertion matrix needs uniform chi");
  return virtual_insertion_operator(s, std::vector<CMatrix>(s.d(), p), window, (window + 1) / 2, false);
}

StringObservable make_string_order(const Simps& s, const DiagonalTwoSiteSymmetry& u, std::size_t left_site,
                                   std::size_t right_site, std::size_t n_sites) {
  u.validate();
  if (u.perm) throw Error(ErrorKind::InvalidInput, "string operators take phase-only symmetries");
  if (right_site <= left_site || right_site >= n_sites) {
    throw Error(ErrorKind::InvalidGeometry, "need 0 <= left < right < N");
  }
  const NormalityReport report = simps_normality(s);
  if (!report.is_normal) throw Error(ErrorKind::NotInvertible, "SIMPS is not normal within the search cap");
  const std::size_t window = *report.injectivity_length;
  if (window + 2 > n_sites) throw Error(ErrorKind::InvalidGeometry, "endpoint window exceeds the chain");
  const GaugeSolution g = solve_gauge(apply_diagonal_symmetry(s, u), s);

  StringObservable obs;
  obs.left_site = left_site;
  obs.right_site = right_site;
  obs.bulk = u;
  obs.right = {virtual_insertion_operator(s, g.gauges, window, 1, false), (right_site + n_sites - 1) % n_sites,
               window + 2};
  obs.left = {virtual_insertion_operator(s, g.gauges, window, window, true),
              (left_site + n_sites - window) % n_sites, window + 2};
  return obs;
}

Complex string_order_expectation(const Simps& s, const StringObservable& obs, std::size_t n_sites) {
  if (obs.right_site <= obs.left_site || obs.right_site >= n_sites) {
    throw Error(ErrorKind::InvalidGeometry, "need 0 <= left < right < N");
  }
  for (const Endpoint* e : {&obs.left, &obs.right}) {
    if (e->n_sites > n_sites || e->first_site >= n_sites) {
      throw Error(ErrorKind::InvalidGeometry, "endpoint support does not fit the chain");
    }
  }
  const StateVector psi = simps_evaluate_pbc(s, n_sites).normalized();
  StateVector phi = apply_local_operator(psi, obs.right.op, obs.right.first_site, obs.right.n_sites);
  phi = apply_string(phi, obs.bulk, obs.left_site, obs.right_site);
  phi = apply_local_operator(phi, obs.left.op, obs.left.first_site, obs.left.n_sites);
  return inner(psi, phi);
}

FluxInsertion::FluxInsertion(Simps s, CMatrix v) : s_(std::move(s)), v_(std::move(v)) {
  const auto chi = s_.uniform_chi();
  if (!chi) throw Error(ErrorKind::InvalidInput, "flux insertion needs uniform chi");
  if (v_.rows() != static_cast<Eigen::Index>(*chi) || v_.cols() != static_cast<Eigen::Index>(*chi)) {
    throw Error(ErrorKind::InvalidInput, "flux matrix must be chi x chi");
  }
}

StateVector FluxInsertion::operator()(std::size_t n_sites) const {
  return simps_evaluate_pbc_with_insertion(s_, std::vector<CMatrix>(s_.d(), v_), n_sites);
}

FluxInsertion insert_flux(const Simps& s, const CMatrix& v) { return FluxInsertion(s, v); }

Charge symmetry_charge(const StateVector& psi, const DiagonalTwoSiteSymmetry& u) {
  if (psi.is_zero()) throw Error(ErrorKind::InvalidInput, "zero state carries no charge");
  const StateVector moved = apply_global_symmetry(psi, u);
  const Complex lambda = inner(psi, moved) / psi.amplitudes().squaredNorm();
  const double miss = (moved.amplitudes() - lambda * psi.amplitudes()).norm();
  if (miss > 1e-8 * psi.norm()) throw Error(ErrorKind::NotEigenstate, "state is not an eigenvector");
  Charge out;
  out.value = lambda;
  static const Complex kRoots[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  out.snapped = kRoots[0];
  out.snap_distance = std::abs(lambda - kRoots[0]);
  for (const auto& r : kRoots) {
    if (std::abs(lambda - r) < out.snap_distance) {
      out.snapped = r;
      out.snap_distance = std::abs(lambda - r);
    }
  }
  return out;
}

DiagonalTwoSiteSymmetry cocycle_symmetry(const CocycleData& c, std::size_t g) {
  c.validate();
  if (g >= c.group_order) throw Error(ErrorKind::InvalidInput, "group element out of range");
  DiagonalTwoSiteSymmetry u = DiagonalTwoSiteSymmetry::identity(c.group_order);
  std::vector<std::size_t> perm(c.group_order);
  for (std::size_t h = 0; h < c.group_order; ++h) {
    perm[h] = c.mult_table[g][h];
    for (std::size_t k = 0; k < c.group_order; ++k) u.phases[h][k] = c.omega[g][k][c.mult_table[c.inverse(k)][h]];
  }
  const bool trivial_perm = std::all_of(perm.begin(), perm.end(), [i = std::size_t{0}](std::size_t v) mutable { return v == i++; });
  if (!trivial_perm) u.perm = std::move(perm);
  return u;
}

CocycleData z2_cocycle() {
  CocycleData c;
  c.group_order = 2;
  c.mult_table = {{0, 1}, {1, 0}};
  c.omega.assign(2, std::vector<std::vector<Complex>>(2, std::vector<Complex>(2, 1.0)));
  c.omega[1][1][1] = -1.0;
  return c;
}

bool check_faithful(const BinarySymmetryData& data, std::size_t n_sites) {
  data.validate();
  if (n_sites < 1) throw Error(ErrorKind::InvalidInput, "need at least one site");
  const std::size_t d = data.d;
  const std::size_t total = checked_power(d, n_sites, amplitude_budget());
  bool seen[2][2] = {{false, false}, {false, false}};
  std::vector<std::size_t> idx(n_sites);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rem = flat;
    for (std::size_t k = n_sites; k-- > 0;) {
      idx[k] = rem % d;
      rem /= d;
    }
    unsigned alpha = 0, beta = 0;
    for (std::size_t k = 0; k < n_sites; ++k) {
      alpha ^= data.a[idx[k]][idx[(k + 1) % n_sites]];
      beta ^= data.b[idx[k]][idx[(k + 1) % n_sites]];
    }
    seen[alpha][beta] = true;
  }
  const bool alpha_varies = (seen[0][0] || seen[0][1]) && (seen[1][0] || seen[1][1]);
  const bool beta_varies = (seen[0][0] || seen[1][0]) && (seen[0][1] || seen[1][1]);
  const bool sum_varies = (seen[0][0] || seen[1][1]) && (seen[0][1] || seen[1][0]);
  return alpha_varies && beta_varies && sum_varies;
}

bool gamma_surjective(const BinarySymmetryData& data, std::size_t length) {
  data.validate();
  const std::size_t d = data.d;
  const std::size_t total = checked_power(d, length, amplitude_budget());
  std::vector<std::size_t> mid(length);
  for (std::size_t s1 = 0; s1 < d; ++s1) {
    for (std::size_t s2 = 0; s2 < d; ++s2) {
      bool seen[2][2] = {{false, false}, {false, false}};
      for (std::size_t flat = 0; flat < total; ++flat) {
        std::size_t rem = flat;
        for (std::size_t k = length; k-- > 0;) {
          mid[k] = rem % d;
          rem /= d;
        }
        unsigned alpha = 0, beta = 0;
        std::size_t prev = s1;
        for (std::size_t k = 0; k <= length; ++k) {
          const std::size_t next = k < length ? mid[k] : s2;
          alpha ^= data.a[prev][next];
          beta ^= data.b[prev][next];
          prev = next;
        }
        seen[alpha][beta] = true;
      }
      if (!(seen[0][0] && seen[0][1] && seen[1][0] && seen[1][1])) return false;
    }
  }
  return true;
}

std::vector<double> projected_schmidt_spectrum(const Simps& s, std::size_t n_sites, std::size_t site,
                                               std::size_t value) {
  if (site >= n_sites) throw Error(ErrorKind::InvalidInput, "projected site out of range");
  if (value >= s.d()) throw Error(ErrorKind::InvalidInput, "projection value out of range");
  const StateVector obc = simps_evaluate_obc(s, n_sites);
  const StateVector projected = project_site(obc, site + 1, value);
  return schmidt_spectrum(projected, site + 1);
}

bool is_twofold_degenerate(const std::vector<double>& spectrum, double tol) {
  std::vector<double> v;
  for (double x : spectrum) {
    if (x > 1e-12) v.push_back(x);
  }
  if (v.empty() || v.size() % 2 != 0) return false;
  std::sort(v.begin(), v.end(), std::greater<>());
  for (std::size_t k = 0; k < v.size(); k += 2) {
    if (std::abs(v[k] - v[k + 1]) > tol) return false;
  }
  return true;
}

}  // namespace simps
