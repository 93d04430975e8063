#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "simps/error.hpp"
#include "simps/simps.hpp"

using namespace simps;
using simps::test::mat;

namespace {

const std::vector<std::pair<const char*, const char*>> kPairs = {
    {"cluster-z-mps", "cluster-z-simps"}, {"nice-mps", "nice-simps"},         {"ghz-mps", "ghz-simps"},
    {"anomalous-mps", "anomalous-simps"}, {"rydberg-mps", "rydberg-simps"}, {"aklt-mps", "aklt-simps"},
    {"wahl-mps", "wahl-simps"},
};

CMatrix random_matrix(Eigen::Index r, Eigen::Index c, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  CMatrix m(r, c);
  for (Eigen::Index i = 0; i < r; ++i) {
    for (Eigen::Index j = 0; j < c; ++j) m(i, j) = Complex(u(rng), u(rng));
  }
  return m;
}

}  // namespace

TEST_CASE("paired fixtures generate the same state for N = 3..8") {
  for (const auto& [m, s] : kPairs) {
    const Mps mps = load_mps_fixture(m);
    const Simps simps = load_simps_fixture(s);
    for (std::size_t n = 3; n <= 8; ++n) {
      INFO(m, " N = ", n);
      CHECK(same_state(mps_evaluate_pbc(mps, n), simps_evaluate_pbc(simps, n)));
    }
  }
}

TEST_CASE("cluster SIMPS amplitude is (-1)^{sum i_k i_{k+1}}") {
  const Simps s = load_simps_fixture("cluster-z-simps");
  const StateVector psi = simps_evaluate_pbc(s, 5);
  for (std::size_t flat = 0; flat < psi.size(); ++flat) {
    const auto i = psi.digits(flat);
    int parity = 0;
    for (std::size_t k = 0; k < 5; ++k) parity ^= static_cast<int>(i[k] * i[(k + 1) % 5]);
    CHECK(psi.amplitudes()(static_cast<Eigen::Index>(flat)) == Complex(parity ? -1.0 : 1.0));
  }
}

TEST_CASE("normality of the example SIMPS") {
  const auto nice = simps_normality(load_simps_fixture("nice-simps"));
  CHECK(nice.is_normal);
  CHECK(nice.injectivity_length == 4);
  CHECK(nice.target == 16);
  const auto mbqc = simps_normality(load_simps_fixture("mbqc-simps"));
  CHECK(mbqc.injectivity_length == 1);
  CHECK(simps_normality(load_simps_fixture("wahl-simps")).injectivity_length == 3);
  const auto ghz = simps_normality(load_simps_fixture("ghz-simps"));
  CHECK_FALSE(ghz.is_normal);
  CHECK(ghz.span_dims.back().second == 2);
  CHECK(ghz.target == 4);
  CHECK_FALSE(simps_normality(load_simps_fixture("anomalous-simps")).is_normal);
  CHECK(simps_normality(load_simps_fixture("aklt-simps")).is_normal);
}

TEST_CASE("split product") {
  const Simps s = load_simps_fixture("nice-simps");
  CHECK(max_abs(split_product(s, {0, 1, 1, 0}) - s(0, 1) * s(1, 1) * s(1, 0)) == 0.0);
  CHECK(max_abs(split_product(s, {1, 0}) - s(1, 0)) == 0.0);
}

TEST_CASE("conversions reproduce the paired fixtures' bond dimensions") {
  for (const auto& [m, s] : kPairs) {
    INFO(m);
    const Mps mps = load_mps_fixture(m);
    const Simps simps = load_simps_fixture(s);
    const Mps to = simps_to_mps(simps);
    const Simps from = simps_from_mps(mps);
    CHECK(to.bond_dim() == mps.bond_dim());
    CHECK(from.chi() == simps.chi());
    for (std::size_t n = 3; n <= 7; ++n) {
      CHECK(same_state(mps_evaluate_pbc(to, n), simps_evaluate_pbc(simps, n)));
      CHECK(same_state(simps_evaluate_pbc(from, n), mps_evaluate_pbc(mps, n)));
    }
  }
}

TEST_CASE("MPS to SIMPS uses A P P^dagger = A") {
  const Mps m = load_mps_fixture("nice-mps");
  const Simps s = simps_from_mps(m);
  // B^{ij} B^{jk} = P^i^dagger A^j A^k P^k
  for (std::size_t i = 0; i < 2; ++i) {
    const CMatrix p = range_isometry(m[i]);
    CHECK(max_abs(m[i] * p * p.adjoint() - m[i]) < 1e-12);
  }
  CHECK(s.chi() == std::vector<std::size_t>{2, 2});
}

TEST_CASE("stacked matrix layout") {
  const Simps s = load_simps_fixture("aklt-simps");
  const CMatrix st = stacked_matrix(s);
  CHECK(st.rows() == 4);
  CHECK(st.cols() == 4);
  CHECK(max_abs(st.block(0, 2, 2, 1) - s(0, 1)) == 0.0);
  CHECK(max_abs(st.block(2, 0, 1, 2) - s(1, 0)) == 0.0);
}

TEST_CASE("open boundary SIMPS") {
  const Simps s = load_simps_fixture("nice-simps");
  const StateVector obc = simps_evaluate_obc(s, 3);
  CHECK(obc.site_dims() == std::vector<std::size_t>{2, 2, 2, 2, 2});
  const CMatrix p = s(1, 1) * s(1, 0);
  CHECK(obc.amplitudes()(obc.flat_index({0, 1, 1, 0, 1})) == p(0, 1));
  CHECK_THROWS_AS(simps_evaluate_obc(load_simps_fixture("aklt-simps"), 3), Error);
  const auto spec = schmidt_spectrum(simps_evaluate_obc(s, 8), 5);
  REQUIRE(spec.size() == 3);
  CHECK(spec[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(spec[1] == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("identity insertion leaves the periodic state unchanged") {
  const Simps s = load_simps_fixture("wahl-simps");
  const StateVector plain = simps_evaluate_pbc(s, 5);
  const StateVector ins = simps_evaluate_pbc_with_insertion(s, std::vector<CMatrix>(3, CMatrix::Identity(2, 2)), 5);
  CHECK((plain.amplitudes() - ins.amplitudes()).norm() == 0.0);
  CHECK_THROWS_AS(simps_evaluate_pbc(s, 1), Error);
}

TEST_CASE("solve_gauge recovers planted gauges up to scale") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t d = 2 + trial % 2;
    const Eigen::Index chi = 2;
    std::vector<std::vector<CMatrix>> b(d, std::vector<CMatrix>(d));
    for (auto& row : b) {
      for (auto& m : row) m = random_matrix(chi, chi, rng);
    }
    std::vector<CMatrix> v(d);
    for (auto& m : v) m = random_matrix(chi, chi, rng) + 2.0 * CMatrix::Identity(chi, chi);
    std::vector<std::vector<CMatrix>> a(d, std::vector<CMatrix>(d));
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) a[i][j] = v[i] * b[i][j] * v[j].inverse();
    }
    const Simps sa(a), sb(b);
    const GaugeSolution g = solve_gauge(sa, sb);
    CHECK(g.null_dim == 1);
    CHECK(g.residual <= 1e-8);
    const auto [r, c] = largest_entry(g.gauges[0]);
    const Complex scale = v[0](r, c);
    for (std::size_t i = 0; i < d; ++i) CHECK(max_abs(g.gauges[i] * scale - v[i]) < 1e-8);
  }
}

TEST_CASE("solve_gauge failures") {
  const Simps nice = load_simps_fixture("nice-simps");
  CHECK_THROWS_AS(solve_gauge(nice, load_simps_fixture("mbqc-simps")), Error);
  try {
    (void)solve_gauge(load_simps_fixture("ghz-simps"), load_simps_fixture("ghz-simps"));
    FAIL("expected NotNormal");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotNormal);
  }
  std::vector<std::vector<CMatrix>> flipped = nice.tensors();
  flipped[0][0] = -flipped[0][0];
  try {
    (void)solve_gauge(Simps(flipped), nice);
    FAIL("expected NoGauge");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NoGauge);
  }
}

TEST_CASE("converted Wahl MPS is gauge-equivalent to the printed SIMPS") {
  const Simps converted = simps_from_mps(load_mps_fixture("wahl-mps"));
  const GaugeSolution g = solve_gauge(converted, load_simps_fixture("wahl-simps"));
  CHECK(g.residual <= 1e-8);
}

TEST_CASE("fingerprint composition multiplies the amplitudes") {
  const Simps s = load_simps_fixture("nice-simps");
  const std::vector<CMatrix> j = {mat({{1, 0.5}, {0, 1}}), mat({{0, 1}, {2, 0}})};
  const Simps f = fingerprint_compose(j, s);
  CHECK(f.chi() == std::vector<std::size_t>{4, 4});
  const Mps jm(j);
  for (std::size_t n = 3; n <= 6; ++n) {
    const StateVector a = simps_evaluate_pbc(f, n);
    const StateVector base = simps_evaluate_pbc(s, n);
    const StateVector junk = mps_evaluate_pbc(jm, n);
    const CVector expected = base.amplitudes().cwiseProduct(junk.amplitudes());
    CHECK((a.amplitudes() - expected).norm() < 1e-12);
  }
}

TEST_CASE("injectivity length bounds under conversion") {
  for (const char* id : {"nice-simps", "mbqc-simps", "wahl-simps", "cluster-z-simps", "aklt-simps", "rydberg-simps"}) {
    INFO(id);
    const Prop1Bounds b = prop1_bounds(load_simps_fixture(id));
    CHECK(b.ok);
    CHECK(b.l0 <= b.l1 + 2);
  }
  const Prop1Bounds nice = prop1_bounds(load_simps_fixture("nice-simps"));
  CHECK(nice.l1 == 4);
  CHECK(nice.l0 == 4);
  const Prop1Bounds mbqc = prop1_bounds(load_simps_fixture("mbqc-simps"));
  CHECK(mbqc.l1 == 1);
  CHECK(mbqc.l0 == 2);
  CHECK_THROWS_AS(prop1_bounds(load_simps_fixture("ghz-simps")), Error);
}

TEST_CASE("constructor validation and distance") {
  CHECK_THROWS_AS(Simps({{CMatrix::Identity(2, 2), CMatrix::Identity(2, 3)}, {CMatrix::Identity(2, 2), CMatrix::Identity(2, 2)}}),
                  Error);
  const Simps s = load_simps_fixture("nice-simps");
  CHECK(tensor_distance(s, s) == 0.0);
  CHECK_THROWS_AS(tensor_distance(s, load_simps_fixture("cluster-z-simps")), Error);
}
