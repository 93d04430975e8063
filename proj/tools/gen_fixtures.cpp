// Writes the fixture catalog as tensor files into the given directory.
#include <cmath>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "simps/pauli.hpp"
#include "simps/tensor_file.hpp"

using namespace simps;

namespace {

CMatrix mat(std::initializer_list<std::initializer_list<Complex>> rows) {
  CMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index r = 0;
  for (const auto& row : rows) {
    Eigen::Index c = 0;
    for (const auto& v : row) m(r, c++) = v;
    ++r;
  }
  return m;
}

CMatrix scalar(double v) { return CMatrix::Constant(1, 1, Complex(v)); }

const CMatrix kI = to_matrix(PauliString::identity());
const CMatrix kX = to_matrix(PauliString::pauli_x());
const CMatrix kZ = to_matrix(PauliString::pauli_z());
const CMatrix kXZ = kX * kZ;
const CMatrix kY = to_matrix(PauliString::pauli_y());

struct Entry {
  std::string id;
  Tensor tensor;
  std::string description;
  std::string partner;
};

std::vector<Entry> catalog() {
  const double h = 1.0 / std::sqrt(2.0);
  const CMatrix had = mat({{h, h}, {h, -h}});
  std::vector<Entry> out;

  out.push_back({"cluster-z-mps", Mps({mat({{h, h}, {0, 0}}), mat({{0, 0}, {h, -h}})}),
                 "cluster state, C^0 = |0><+|, C^1 = |1><-|", "cluster-z-simps"});
  out.push_back({"cluster-z-simps", Simps({{scalar(1), scalar(1)}, {scalar(1), scalar(-1)}}),
                 "cluster state, chi = 1, B^{ij} = (-1)^{ij}", "cluster-z-mps"});
  out.push_back({"cluster-x-mps", Mps({had, CMatrix(had * kZ)}), "cluster state in the X basis, C^+ = H, C^- = HZ",
                 ""});
  out.push_back({"cluster-x2-mps", Mps({kI, kZ, kX, kXZ}),
                 "cluster state, two-site unit cell in the X basis, indices ++, +-, -+, --", ""});

  out.push_back({"nice-mps", Mps({mat({{1, 0, 0}, {0, 0, 0}, {0, 1, 1}}), mat({{0, 1, -1}, {-1, 0, 0}, {0, 0, 0}})}),
                 "D = 3 MPS of the nice SIMPS state, both matrices rank deficient", "nice-simps"});
  out.push_back({"nice-simps", Simps({{kI, kI}, {kX, kXZ}}), "nice SIMPS, B^{00} = B^{01} = 1, B^{10} = X, B^{11} = XZ",
                 "nice-mps"});

  out.push_back({"ghz-mps", Mps({mat({{1, 0}, {0, 0}}), mat({{0, 0}, {0, 1}})}), "GHZ state, A^i = |i><i|",
                 "ghz-simps"});
  out.push_back({"ghz-simps", Simps({{scalar(1), scalar(0)}, {scalar(0), scalar(1)}}), "GHZ state, B^{ij} = delta_ij",
                 "ghz-mps"});

  out.push_back({"anomalous-mps",
                 Mps({mat({{1, 0, 0}, {0, 1, 1}, {0, 0, 0}}), mat({{1, 0, 0}, {0, 0, 0}, {0, -1, 1}})}),
                 "D = 3 MPS of the CZX-symmetric SIMPS state", "anomalous-simps"});
  out.push_back({"anomalous-simps", Simps({{kI, kI}, {kZ, kI}}),
                 "SIMPS invariant under the anomalous Z2 symmetry U_CZX", "anomalous-mps"});

  out.push_back({"mbqc-simps",
                 Simps({{kI, kX, kI, kX}, {kI, kX, kI, kX}, {kZ, kY, kY, kZ}, {kZ, kY, kY, kZ}}),
                 "d = 4 Pauli SIMPS with a non-factorizable symmetry pattern, used for the odd-site reduction", ""});

  out.push_back({"rydberg-mps", Mps({mat({{1, 0}, {1, 0}}), mat({{0, 1}, {0, 0}})}),
                 "Rydberg-blockaded MPS family at a = b = 1", "rydberg-simps"});
  out.push_back({"rydberg-simps", Simps({{scalar(1), scalar(1)}, {scalar(1), scalar(0)}}),
                 "Rydberg family SIMPS at a = b = 1, B^{11} = 0", "rydberg-mps"});

  const CMatrix ket0 = mat({{1}, {0}});
  const CMatrix ket1 = mat({{0}, {1}});
  out.push_back({"aklt-mps", Mps({kZ, mat({{0, 1}, {0, 0}}), mat({{0, 0}, {1, 0}})}),
                 "AKLT state, indices (0, up, down), A^0 = Z, A^up = |0><1|, A^down = |1><0|", "aklt-simps"});
  out.push_back({"aklt-simps",
                 Simps({{kZ, ket0, ket1},
                        {CMatrix(-ket1.transpose()), scalar(0), scalar(1)},
                        {CMatrix(ket0.transpose()), scalar(1), scalar(0)}}),
                 "AKLT state, mixed bond dimension chi = (2, 1, 1)", "aklt-mps"});

  out.push_back({"wahl-mps",
                 Mps({mat({{1, 0, 0}, {0, 1, 0}, {1, 0, 0}}), mat({{0, 0, 1}, {0, 1, 0}, {0, 0, -1}}),
                      mat({{0, 1, 0}, {1, 0, 0}, {0, 1, 0}})}),
                 "d = D = 3 wire MPS with non-unitary tensors", "wahl-simps"});
  out.push_back({"wahl-simps", Simps({{kI, kX, kI}, {kX, kZ, kX}, {kX, kI, kX}}),
                 "chi = 2 Pauli SIMPS of the same state, B^{11} = Z, B^{12} = X", "wahl-mps"});
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: gen_fixtures <output-dir>\n";
    return 2;
  }
  const std::filesystem::path dir = argv[1];
  std::filesystem::create_directories(dir);
  for (const auto& e : catalog()) {
    TensorFile f{e.tensor, {{"id", e.id}, {"description", e.description}}, std::nullopt};
    if (!e.partner.empty()) f.metadata["partner"] = e.partner;
    write_tensor_file(dir / (e.id + ".json"), f);
  }
  return 0;
}
