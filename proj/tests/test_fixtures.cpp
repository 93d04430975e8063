#include <doctest.h>

#include <cstdlib>

#include "helpers.hpp"
#include "simps/error.hpp"

using namespace simps;
using simps::test::mat;

TEST_CASE("catalog lists every fixture") {
  const auto ids = fixture_ids();
  const std::vector<std::string> expected = {
      "aklt-mps",      "aklt-simps",    "anomalous-mps", "anomalous-simps", "cluster-x-mps", "cluster-x2-mps",
      "cluster-z-mps", "cluster-z-simps", "ghz-mps",     "ghz-simps",       "mbqc-simps",    "nice-mps",
      "nice-simps",    "rydberg-mps",   "rydberg-simps", "wahl-mps",        "wahl-simps"};
  CHECK(ids == expected);
  for (const auto& id : ids) {
    const TensorFile f = load_fixture_file(id);
    CHECK(f.metadata.at("id") == id);
    CHECK_FALSE(f.metadata.at("description").empty());
    const bool is_mps = id.size() > 4 && id.substr(id.size() - 4) == "-mps";
    CHECK(std::holds_alternative<Mps>(f.tensor) == is_mps);
    if (const auto it = f.metadata.find("partner"); it != f.metadata.end()) {
      CHECK(load_fixture_file(it->second).metadata.at("partner") == id);
    }
  }
}

TEST_CASE("partner fixtures describe the same state") {
  for (const auto& id : fixture_ids()) {
    const TensorFile f = load_fixture_file(id);
    const auto it = f.metadata.find("partner");
    if (it == f.metadata.end() || !std::holds_alternative<Mps>(f.tensor)) continue;
    const Mps m = std::get<Mps>(f.tensor);
    const Simps s = load_simps_fixture(it->second);
    for (std::size_t n = 3; n <= 7; ++n) {
      CHECK_MESSAGE(same_state(mps_evaluate_pbc(m, n), simps_evaluate_pbc(s, n)), id << " N=" << n);
    }
  }
}

TEST_CASE("fixture tensors equal their literal definitions") {
  const CMatrix i2 = simps::test::id2(), x = simps::test::px(), z = simps::test::pz();
  const Simps nice = load_simps_fixture("nice-simps");
  CHECK(max_abs(nice(0, 0) - i2) == 0.0);
  CHECK(max_abs(nice(0, 1) - i2) == 0.0);
  CHECK(max_abs(nice(1, 0) - x) == 0.0);
  CHECK(max_abs(nice(1, 1) - x * z) == 0.0);

  const Simps anomalous = load_simps_fixture("anomalous-simps");
  CHECK(max_abs(anomalous(1, 0) - z) == 0.0);
  CHECK(max_abs(anomalous(1, 1) - i2) == 0.0);

  const Simps mbqc = load_simps_fixture("mbqc-simps");
  CHECK(max_abs(mbqc(2, 1) - simps::test::py()) == 0.0);
  CHECK(max_abs(mbqc(3, 3) - z) == 0.0);
  CHECK(max_abs(mbqc(0, 3) - x) == 0.0);

  const Simps wahl = load_simps_fixture("wahl-simps");
  CHECK(max_abs(wahl(1, 1) - z) == 0.0);
  CHECK(max_abs(wahl(1, 2) - x) == 0.0);

  const Mps ghz = load_mps_fixture("ghz-mps");
  CHECK(max_abs(ghz[0] - mat({{1, 0}, {0, 0}})) == 0.0);

  const Mps cz = load_mps_fixture("cluster-z-mps");
  const double h = 1.0 / std::sqrt(2.0);
  CHECK(max_abs(cz[1] - mat({{0, 0}, {h, -h}})) == 0.0);
}

TEST_CASE("unknown ids and wrong kinds") {
  try {
    (void)load_fixture("no-such-fixture");
    FAIL("expected NotFound");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotFound);
  }
  try {
    (void)load_simps_fixture("ghz-mps");
    FAIL("expected InvalidInput");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidInput);
  }
  CHECK_THROWS_AS(load_mps_fixture("ghz-simps"), Error);
}

TEST_CASE("explicit directory argument") {
  CHECK(load_fixture_file("ghz-simps", fixture_dir()).metadata.at("id") == "ghz-simps");
  CHECK_THROWS_AS(load_fixture_file("ghz-simps", "/nonexistent"), Error);
}
