#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "simps/cli.hpp"

using namespace simps;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "simps_cli");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << text;
  return path;
}

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("analyze prints the nice SIMPS spectrum") {
  const Run r = run({"analyze", "--fixture", "nice-simps", "--spectrum"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "0.500000000000, 0.250000000000, 0.250000000000"));
}

TEST_CASE("analyze spectrum of the MBQC table") {
  const Run r = run({"analyze", "--fixture", "mbqc-simps", "--spectrum"});
  CHECK(r.code == 0);
  const auto line = r.out.substr(r.out.find("[spectrum]\n") + 11);
  std::istringstream in(line);
  std::vector<double> values;
  std::string tok;
  while (std::getline(in, tok, ',') && values.size() < 4) values.push_back(std::stod(tok));
  const std::vector<double> expected = {0.43, 0.25, 0.25, 0.07};
  REQUIRE(values.size() == 4);
  for (std::size_t k = 0; k < 4; ++k) CHECK(std::abs(values[k] - expected[k]) < 5e-3);
}

TEST_CASE("analyze reports GHZ as not normal and skips the spectrum") {
  const Run r = run({"analyze", "--fixture", "ghz-simps", "--normality", "--spectrum"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "not normal (span 2 < 4 at cap)"));
  CHECK(contains(r.out, "SKIPPED"));
}

TEST_CASE("analyze output is byte-identical across runs") {
  const std::vector<std::string> args = {"analyze", "--fixture", "nice-simps", "--normality", "--spectrum",
                                         "--symmetries", "--string-order"};
  const Run a = run(args);
  const Run b = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(contains(a.out, "[string-order]"));
}

TEST_CASE("wire subcommand") {
  const Run r = run({"wire", "--fixture", "nice-simps", "--n", "4", "--outcomes", "0110"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "byproduct: Z\n"));
  CHECK(contains(r.out, "decoded bits: x=0 z=1"));

  const Run zero = run({"wire", "--fixture", "nice-simps", "--outcomes", "0,0,0,0"});
  CHECK(contains(zero.out, "byproduct: I\n"));
  CHECK(contains(zero.out, "teleportation fidelity: 1.000000000000"));

  const Run sampled = run({"wire", "--fixture", "mbqc-simps", "--sample", "7", "--n", "9"});
  CHECK(sampled.code == 0);
  CHECK(contains(sampled.out, "teleportation fidelity: 1.000000000000"));
  CHECK(run({"wire", "--fixture", "mbqc-simps", "--sample", "7", "--n", "9"}).out == sampled.out);
}

TEST_CASE("convert writes a verified SIMPS") {
  const Run r = run({"convert", "--fixture", "cluster-z-mps", "--to", "simps"});
  CHECK(r.code == 0);
  const TensorFile f = parse_tensor_file(r.out);
  CHECK(std::get<Simps>(f.tensor).chi() == std::vector<std::size_t>{1, 1});
  REQUIRE(f.verification.has_value());
  CHECK((*f.verification)["fidelity"]["6"].get<double>() == doctest::Approx(1.0));

  const Run w = run({"convert", "--fixture", "wahl-mps", "--to", "simps", "--compare",
                     (fixture_dir() / "wahl-simps.json").string()});
  CHECK(w.code == 0);
  CHECK(contains(w.err, "solve_gauge residual"));
  const TensorFile g = parse_tensor_file(w.out);
  CHECK((*g.verification)["gauge_residual"].get<double>() < 1e-10);
}

TEST_CASE("convert to a file") {
  const auto path = std::filesystem::temp_directory_path() / "simps_cli_convert.json";
  const Run r = run({"convert", "--fixture", "nice-simps", "--to", "mps", "-o", path.string()});
  CHECK(r.code == 0);
  const TensorFile f = read_tensor_file(path);
  CHECK(std::get<Mps>(f.tensor).bond_dim() == 3);
  std::filesystem::remove(path);
}

TEST_CASE("exit codes") {
  const auto empty = temp_file("simps_cli_empty.json", "");
  const Run parse = run({"analyze", empty.string(), "--normality"});
  CHECK(parse.code == 2);
  CHECK(contains(parse.err, "line 1, column 1"));

  const auto zero = temp_file("simps_cli_zero.json",
                              R"({"format": "simps-tensor-file", "version": 1, "kind": "mps", "d": 2, "bond": 1,
 "tensors": [[[[1, 0]]], [[[0, 0]]]]})");
  CHECK(run({"convert", zero.string(), "--to", "simps"}).code == 3);

  CHECK(run({"wire", "--fixture", "aklt-simps", "--n", "4", "--sample", "1"}).code == 4);
  CHECK(run({"wire", "--fixture", "nice-simps", "--outcomes", "0x"}).code == 2);
  CHECK(run({"analyze", "--fixture", "no-such-fixture"}).code == 2);
  CHECK(run({"bogus"}).code == 2);
  std::filesystem::remove(empty);
  std::filesystem::remove(zero);
}
