#pragma once

#include <cmath>
#include <initializer_list>

#include "simps/fixtures.hpp"
#include "simps/linalg.hpp"
#include "simps/pauli.hpp"
#include "simps/state.hpp"

namespace simps::test {

inline CMatrix mat(std::initializer_list<std::initializer_list<Complex>> rows) {
  CMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index r = 0;
  for (const auto& row : rows) {
    Eigen::Index c = 0;
    for (const auto& v : row) m(r, c++) = v;
    ++r;
  }
  return m;
}

inline CMatrix scalar(Complex v) { return CMatrix::Constant(1, 1, v); }

inline CMatrix id2() { return CMatrix::Identity(2, 2); }
inline CMatrix px() { return mat({{0, 1}, {1, 0}}); }
inline CMatrix pz() { return mat({{1, 0}, {0, -1}}); }
inline CMatrix py() { return mat({{0, Complex(0, -1)}, {Complex(0, 1), 0}}); }

/// a = [[0,0],[1,1]], b = [[0,0],[0,1]]: the nice SIMPS data.
inline BinarySymmetryData nice_data() { return {2, {{0, 0}, {1, 1}}, {{0, 0}, {0, 1}}}; }

/// Bit data of the d = 4 MBQC table.
inline BinarySymmetryData mbqc_data() {
  return {4,
          {{0, 1, 0, 1}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 1, 1, 0}},
          {{0, 0, 0, 0}, {0, 0, 0, 0}, {1, 1, 1, 1}, {1, 1, 1, 1}}};
}

/// State built directly from a function of the index string.
template <class F>
StateVector state_from(std::size_t n, std::size_t d, F amplitude) {
  StateVector shape(uniform_dims(n, d), CVector::Zero(static_cast<Eigen::Index>(std::pow(d, n))));
  CVector amps(static_cast<Eigen::Index>(shape.size()));
  for (std::size_t flat = 0; flat < shape.size(); ++flat) amps(static_cast<Eigen::Index>(flat)) = amplitude(shape.digits(flat));
  return StateVector(uniform_dims(n, d), amps);
}

}  // namespace simps::test
