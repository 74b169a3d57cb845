#pragma once

// Reference values produced by oracles.hpp and frozen here;
// test_oracles.cpp re-derives them.

#include <cmath>
#include <cstdint>
#include <vector>

#include "coxinv/coxeter_matrix.hpp"

namespace frozen {

using Counts = std::vector<std::uint64_t>;

// word-length sphere sizes, lengths 0..12
inline const Counts kDihedralInf{1, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2};
inline const Counts kA2{1, 2, 2, 1};
inline const Counts kTriangle333{1, 3, 6, 9, 12, 15, 18, 21, 24, 27, 30, 33, 36};
inline const Counts kPentagon{1, 5, 15, 40, 105, 275, 720, 1885, 4935, 12920, 33825, 88555, 231840};
inline const Counts kSquare{1, 4, 8, 12, 16, 20, 24, 28, 32, 36, 40, 44, 48};
inline const Counts kTriangle237{1, 3, 5, 7, 9, 12, 16, 20, 24, 28, 33, 40, 48};
inline const Counts kH3{1, 3, 5, 7, 9, 11, 12, 12, 12, 12, 11, 9, 7, 5, 3, 1};
inline const Counts kPath{1, 3, 4, 4, 4, 4, 4, 4, 4, 4, 4, 4, 4};

// vcd from relative homology of the order complex
inline constexpr int kVcdDihedralInf = 1;
inline constexpr int kVcdTriangle333 = 2;
inline constexpr int kVcdPentagon = 2;
inline constexpr int kVcdSquare = 2;
inline constexpr int kVcdA2 = 0;
inline constexpr int kVcdPath = 1;

// rational Betti numbers of the six-vertex projective plane
inline const std::vector<std::size_t> kBettiRP2{1, 0, 0};

// growth rate of the right-angled pentagon: log of the largest root of
// x^2 - 3x + 1, the denominator of its growth series
inline double pentagon_rate() { return std::log((3 + std::sqrt(5.0)) / 2); }
// constant thickness q: e_q = e / log q
inline double pentagon_rate_q2() { return pentagon_rate() / std::log(2.0); }

inline coxinv::CoxeterMatrix path() { return coxinv::systems::right_angled(3, {{0, 1}, {1, 2}}); }
inline coxinv::CoxeterMatrix h3() { return coxinv::systems::triangle(5, 3, 2); }
inline coxinv::CoxeterMatrix triangle_237() { return coxinv::systems::triangle(2, 3, 7); }
/// (3,3,3) with a fourth generator commuting with the others.
inline coxinv::CoxeterMatrix cone_333() {
  return coxinv::CoxeterMatrix({"a", "b", "c", "d"}, {{1, 3, 3, 2}, {3, 1, 3, 2}, {3, 3, 1, 2}, {2, 2, 2, 1}});
}
/// Two infinite dihedral groups commuting with each other.
inline coxinv::CoxeterMatrix commuting_dihedrals() {
  using coxinv::kInf;
  return coxinv::CoxeterMatrix({"a", "b", "c", "d"},
                               {{1, kInf, 2, 2}, {kInf, 1, 2, 2}, {2, 2, 1, kInf}, {2, 2, kInf, 1}});
}

}  // namespace frozen
