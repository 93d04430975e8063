#include <doctest.h>

#include "helpers.hpp"
#include "simps/error.hpp"
#include "simps/symmetry.hpp"

using namespace simps;
using simps::test::mat;

namespace {

// Explicit operators built from single-qubit and CZ gates.
StateVector apply_prod_z(const StateVector& psi) {
  StateVector out = psi;
  for (std::size_t k = 0; k < psi.n_sites(); ++k) out = apply_local_operator(out, simps::test::pz(), k, 1);
  return out;
}

StateVector apply_prod_cz(const StateVector& psi) {
  CMatrix cz = CMatrix::Identity(4, 4);
  cz(3, 3) = -1.0;
  StateVector out = psi;
  for (std::size_t k = 0; k < psi.n_sites(); ++k) out = apply_local_operator(out, cz, k, 2);
  return out;
}

StateVector apply_czx(const StateVector& psi) {
  StateVector out = apply_prod_cz(apply_prod_z(psi));
  for (std::size_t k = 0; k < psi.n_sites(); ++k) out = apply_local_operator(out, simps::test::px(), k, 1);
  return out;
}

DiagonalTwoSiteSymmetry z_pattern() { return DiagonalTwoSiteSymmetry::from_bits({{0, 0}, {1, 1}}); }
DiagonalTwoSiteSymmetry cz_pattern() { return DiagonalTwoSiteSymmetry::from_bits({{0, 0}, {0, 1}}); }

StateVector normalized_pbc(const Simps& s, std::size_t n) { return simps_evaluate_pbc(s, n).normalized(); }

}  // namespace

TEST_CASE("psi_ab builder reproduces the Pauli fixtures") {
  CHECK(tensor_distance(build_psi_ab(simps::test::nice_data()), load_simps_fixture("nice-simps")) < 1e-15);
  // the fixture writes Y where the builder gives XZ
  const Simps built = build_psi_ab(simps::test::mbqc_data());
  const Simps table = load_simps_fixture("mbqc-simps");
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      const auto p = pauli_from_matrix(built(i, j));
      const auto q = pauli_from_matrix(table(i, j));
      REQUIRE(p.has_value());
      REQUIRE(q.has_value());
      CHECK(equal_up_to_phase(*p, *q));
    }
  }
  const BinarySymmetryData zero{3, BitMatrix(3, std::vector<std::uint8_t>(3, 0)), BitMatrix(3, std::vector<std::uint8_t>(3, 0))};
  const Simps product = build_psi_ab(zero);
  for (const auto& row : product.tensors()) {
    for (const auto& m : row) CHECK(max_abs(m - simps::test::id2()) == 0.0);
  }
}

TEST_CASE("global diagonal action matches explicit gate products") {
  const StateVector psi = simps_evaluate_pbc(load_simps_fixture("nice-simps"), 6);
  CHECK((apply_global_symmetry(psi, z_pattern()).amplitudes() - apply_prod_z(psi).amplitudes()).norm() < 1e-12);
  CHECK((apply_global_symmetry(psi, cz_pattern()).amplitudes() - apply_prod_cz(psi).amplitudes()).norm() < 1e-12);
}

TEST_CASE("nice SIMPS is symmetric under prod Z and prod CZ") {
  const Simps s = load_simps_fixture("nice-simps");
  for (const auto& u : {z_pattern(), cz_pattern()}) {
    const SymmetryCheck c = check_symmetry(s, u, 7);
    CHECK(c.symmetric);
    CHECK(c.gauge_attempted);
    REQUIRE(c.gauge.has_value());
    CHECK(c.gauge->residual < 1e-10);
  }
  // both V's are Pauli and anticommute
  const auto va = check_symmetry(s, z_pattern(), 5).gauge->gauges[0];
  const auto vb = check_symmetry(s, cz_pattern(), 5).gauge->gauges[0];
  CHECK(pauli_from_matrix(va).has_value());
  CHECK(pauli_from_matrix(vb).has_value());
  CHECK(std::abs(commutator_phase(va, vb) + 1.0) < 1e-12);
}

TEST_CASE("(-1)^{ij} acts on the nice SIMPS through V = X") {
  const Simps s = load_simps_fixture("nice-simps");
  const Simps moved = apply_diagonal_symmetry(s, cz_pattern());
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      CHECK(max_abs(moved(i, j) - simps::test::px() * s(i, j) * simps::test::px()) < 1e-15);
    }
  }
}

TEST_CASE("sign patterns square to the identity on tensors") {
  const Simps s = load_simps_fixture("mbqc-simps");
  const auto u = DiagonalTwoSiteSymmetry::from_bits(simps::test::mbqc_data().a);
  CHECK(tensor_distance(apply_diagonal_symmetry(apply_diagonal_symmetry(s, u), u), s) == 0.0);
}

TEST_CASE("X-basis cluster state has no CZ-pattern symmetry") {
  const Simps s = simps_from_mps(load_mps_fixture("cluster-x-mps"));
  CHECK_FALSE(check_symmetry(s, cz_pattern(), 6).symmetric);
}

TEST_CASE("discovered patterns include both generators and are closed under products") {
  const Simps s = load_simps_fixture("nice-simps");
  const auto found = discover_z2_symmetries(s, 6);
  auto has = [&](const BitMatrix& m) { return std::find(found.begin(), found.end(), m) != found.end(); };
  CHECK(has({{0, 0}, {0, 0}}));
  CHECK(has({{0, 0}, {1, 1}}));
  CHECK(has({{0, 0}, {0, 1}}));
  CHECK(has({{0, 0}, {1, 0}}));
  for (const auto& p : found) {
    for (const auto& q : found) {
      BitMatrix r(2, std::vector<std::uint8_t>(2));
      for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) r[i][j] = p[i][j] ^ q[i][j];
      }
      CHECK(has(r));
    }
  }
  // every discovered pattern passes the direct state check
  for (const auto& p : found) CHECK(check_symmetry(s, DiagonalTwoSiteSymmetry::from_bits(p), 6).symmetric);
}

TEST_CASE("symmetry classes of the Pauli SIMPS fixtures") {
  CHECK(symmetry_classes(load_simps_fixture("nice-simps"), 6).size() == 3);
  CHECK(symmetry_classes(load_simps_fixture("mbqc-simps"), 6).size() == 3);
  CHECK(symmetry_classes(load_simps_fixture("cluster-z-simps"), 6).empty());
  CHECK(acts_as_scalar({{0, 1}, {1, 0}}, 3, 7));
  CHECK_FALSE(acts_as_scalar({{0, 0}, {0, 1}}, 3, 5));
}

TEST_CASE("product state stabilizers are factorizable") {
  const BinarySymmetryData zero{2, {{0, 0}, {0, 0}}, {{0, 0}, {0, 0}}};
  for (const auto& p : discover_z2_symmetries(build_psi_ab(zero), 6)) CHECK(is_factorizable(p));
}

TEST_CASE("discovery refuses d > 4") {
  std::vector<std::vector<CMatrix>> t(5, std::vector<CMatrix>(5, CMatrix::Identity(1, 1)));
  CHECK_THROWS_AS(discover_z2_symmetries(Simps(t), 3), Error);
}

TEST_CASE("identity insertion operator acts as the identity on the state") {
  const Simps s = load_simps_fixture("nice-simps");
  const CMatrix op = virtual_insertion_operator(s, simps::test::id2(), 4);
  const StateVector psi = normalized_pbc(s, 8);
  const StateVector out = apply_local_operator(psi, op, 2, 6);
  CHECK((out.amplitudes() - psi.amplitudes()).norm() < 1e-9);
}

TEST_CASE("insertion operator realises the virtual insertion exactly") {
  const Simps s = load_simps_fixture("nice-simps");
  const CMatrix op = virtual_insertion_operator(s, simps::test::pz(), 4);
  // window starts at site 0, centre bond at middle site c = 2 (site 2)
  const StateVector psi = simps_evaluate_pbc(s, 8);
  const StateVector out = apply_local_operator(psi, op, 0, 6);
  // oracle: insertion in front of B^{i2 i3}, i.e. rotate so site 2 leads
  const StateVector twisted = simps_evaluate_pbc_with_insertion(s, {simps::test::pz(), simps::test::pz()}, 8);
  for (std::size_t flat = 0; flat < psi.size(); ++flat) {
    auto idx = psi.digits(flat);
    std::rotate(idx.begin(), idx.begin() + 2, idx.end());
    CHECK(std::abs(out.amplitudes()(static_cast<Eigen::Index>(flat)) - twisted.amplitudes()(twisted.flat_index(idx))) <
          1e-9);
  }
  // the Z insertion carries charge -1 under prod CZ
  CHECK(std::abs(symmetry_charge(out, cz_pattern()).value + 1.0) < 1e-9);
}

TEST_CASE("insertion needs an injective window") {
  CHECK_THROWS_AS(virtual_insertion_operator(load_simps_fixture("nice-simps"), simps::test::pz(), 2), Error);
}

TEST_CASE("perfect string order for every separation") {
  const Simps s = load_simps_fixture("nice-simps");
  for (const auto& u : {z_pattern(), cz_pattern()}) {
    for (std::size_t sep = 2; sep <= 4; ++sep) {
      const StringObservable obs = make_string_order(s, u, 1, 1 + sep, 8);
      const Complex v = string_order_expectation(s, obs, 8);
      CHECK(std::abs(v - 1.0) < 1e-9);
    }
  }
}

TEST_CASE("bare string without endpoints is below one") {
  const Simps s = load_simps_fixture("nice-simps");
  const StateVector psi = normalized_pbc(s, 8);
  for (const auto& u : {z_pattern(), cz_pattern()}) {
    const Complex v = inner(psi, apply_string(psi, u, 1, 5));
    CHECK(std::abs(v) < 1.0 - 1e-3);
  }
}

TEST_CASE("string order geometry errors") {
  const Simps s = load_simps_fixture("nice-simps");
  CHECK_THROWS_AS(make_string_order(s, z_pattern(), 3, 3, 8), Error);
  CHECK_THROWS_AS(make_string_order(s, z_pattern(), 1, 9, 8), Error);
  CHECK_THROWS_AS(make_string_order(s, z_pattern(), 1, 3, 5), Error);
  CHECK_THROWS_AS(make_string_order(load_simps_fixture("ghz-simps"), z_pattern(), 1, 3, 8), Error);
}

TEST_CASE("flux insertion charges") {
  const Simps s = load_simps_fixture("nice-simps");
  const StateVector x_twist = insert_flux(s, simps::test::px())(6);
  const StateVector z_twist = insert_flux(s, simps::test::pz())(6);
  const StateVector plain = insert_flux(s, simps::test::id2())(6);
  CHECK(same_state(plain, simps_evaluate_pbc(s, 6)));
  const Charge cx = symmetry_charge(x_twist, z_pattern());
  const Charge cz = symmetry_charge(z_twist, cz_pattern());
  CHECK(std::abs(cx.value + 1.0) < 1e-9);
  CHECK(std::abs(cz.value + 1.0) < 1e-9);
  CHECK(cx.snapped == Complex(-1.0));
  CHECK(std::abs(symmetry_charge(plain, z_pattern()).value - 1.0) < 1e-9);
  CHECK_THROWS_AS(insert_flux(s, CMatrix::Identity(3, 3)), Error);
}

TEST_CASE("flux charge equals the commutator phase of the virtual representations") {
  const Simps s = load_simps_fixture("nice-simps");
  const std::vector<DiagonalTwoSiteSymmetry> group = {
      DiagonalTwoSiteSymmetry::identity(2), z_pattern(), cz_pattern(),
      DiagonalTwoSiteSymmetry::from_bits({{0, 0}, {1, 0}})};
  for (const auto& g : group) {
    const CMatrix vg = solve_gauge(apply_diagonal_symmetry(s, g), s).gauges[0];
    const StateVector twisted = insert_flux(s, vg)(6);
    for (const auto& h : group) {
      const CMatrix vh = solve_gauge(apply_diagonal_symmetry(s, h), s).gauges[0];
      CHECK(std::abs(symmetry_charge(twisted, h).value - commutator_phase(vg, vh)) < 1e-9);
    }
  }
}

TEST_CASE("charge of a non-eigenstate") {
  const Simps s = load_simps_fixture("nice-simps");
  const StateVector psi = simps_evaluate_pbc(s, 6);
  CVector v = psi.amplitudes();
  v(1) += 0.3;
  try {
    (void)symmetry_charge(StateVector(psi.site_dims(), v), z_pattern());
    FAIL("expected NotEigenstate");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotEigenstate);
  }
}

TEST_CASE("Z2 cocycle symmetry is U_CZX") {
  const auto u = cocycle_symmetry(z2_cocycle(), 1);
  REQUIRE(u.perm.has_value());
  CHECK(*u.perm == std::vector<std::size_t>{1, 0});
  for (std::size_t n = 4; n <= 6; ++n) {
    const StateVector psi = simps::test::state_from(n, 2, [](const std::vector<std::size_t>& i) {
      Complex a = 0.0;
      for (std::size_t k = 0; k < i.size(); ++k) a += Complex(static_cast<double>(k * 3 + i[k]), 0.5 * i[k]);
      return a;
    });
    CHECK((apply_global_symmetry(psi, u).amplitudes() - apply_czx(psi).amplitudes()).norm() < 1e-10);
    CHECK((apply_global_symmetry(apply_global_symmetry(psi, u), u).amplitudes() - psi.amplitudes()).norm() < 1e-10);
  }
  const auto e = cocycle_symmetry(z2_cocycle(), 0);
  CHECK_FALSE(e.perm.has_value());
}

TEST_CASE("anomalous SIMPS: tensor identity and state symmetry") {
  const Simps s = load_simps_fixture("anomalous-simps");
  const CMatrix x = simps::test::px(), z = simps::test::pz();
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      const CMatrix vi = (i ? z : simps::test::id2()) * x;
      const CMatrix vj = (j ? z : simps::test::id2()) * x;
      const double sign = ((i + i * j) % 2) ? -1.0 : 1.0;
      CHECK(max_abs(sign * s(1 - i, 1 - j) - vi * s(i, j) * vj.inverse()) == 0.0);
    }
  }
  const auto u = cocycle_symmetry(z2_cocycle(), 1);
  for (std::size_t n : {4, 6}) CHECK(same_state(apply_czx(simps_evaluate_pbc(s, n)), simps_evaluate_pbc(s, n)));
  const SymmetryCheck c = check_symmetry(s, u, 6);
  CHECK(c.symmetric);
  CHECK_FALSE(c.gauge_attempted);
}

TEST_CASE("cocycle validation") {
  CocycleData bad = z2_cocycle();
  bad.mult_table[0][0] = 1;
  CHECK_THROWS_AS(bad.validate(), Error);
  CocycleData shape = z2_cocycle();
  shape.omega.pop_back();
  CHECK_THROWS_AS(cocycle_symmetry(shape, 1), Error);
}

TEST_CASE("faithfulness and surjectivity") {
  CHECK(check_faithful(simps::test::nice_data(), 4));
  CHECK(check_faithful(simps::test::mbqc_data(), 4));
  const BinarySymmetryData zero{2, {{0, 0}, {0, 0}}, {{0, 0}, {0, 0}}};
  CHECK_FALSE(check_faithful(zero, 4));
  CHECK(gamma_surjective(simps::test::nice_data(), 4));
  CHECK_FALSE(gamma_surjective(simps::test::nice_data(), 1));
  CHECK(gamma_surjective(simps::test::mbqc_data(), 1));
}

TEST_CASE("hidden twofold degeneracy after projecting one site") {
  const Simps s = load_simps_fixture("nice-simps");
  for (std::size_t site = 1; site + 1 < 8; ++site) {
    for (std::size_t v = 0; v < 2; ++v) {
      const auto spec = projected_schmidt_spectrum(s, 8, site, v);
      CHECK(is_twofold_degenerate(spec, 1e-9));
    }
  }
  const auto plain = schmidt_spectrum(simps_evaluate_obc(s, 8), 5);
  CHECK_FALSE(is_twofold_degenerate(plain, 1e-9));
  CHECK(is_twofold_degenerate({0.25, 0.25, 0.25, 0.25}, 1e-12));
  CHECK_FALSE(is_twofold_degenerate({0.5, 0.25, 0.25}, 1e-12));
}
