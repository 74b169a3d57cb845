#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace coxinv {

/// Subset of the generating set, bit i = generator i. Rank is capped at 32.
using Subset = std::uint32_t;

inline constexpr int kMaxRank = 32;

/// Entry value used for m_st = infinity.
inline constexpr int kInf = 0;

inline int popcount(Subset T) { return std::popcount(T); }
inline bool contains(Subset T, int s) { return (T >> s) & 1u; }
inline Subset singleton(int s) { return Subset{1} << s; }
inline Subset full_set(int rank) {
  return rank >= 32 ? ~Subset{0} : (Subset{1} << rank) - 1;
}
std::vector<int> members(Subset T);

/// Symmetric presentation data (m_st) of a Coxeter system (W, S).
class CoxeterMatrix {
 public:
  CoxeterMatrix() = default;

  /// Validates and builds. `entries[s][t]` uses kInf for infinity.
  /// Throws SchemaError, AsymmetryError, DiagonalError or BadEntry.
  CoxeterMatrix(std::vector<std::string> generators, std::vector<std::vector<int>> entries);

  int rank() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& generators() const { return names_; }
  const std::string& name(int s) const { return names_.at(s); }
  int index_of(std::string_view generator) const;

  int m(int s, int t) const { return entries_[s * rank() + t]; }
  bool infinite(int s, int t) const { return m(s, t) == kInf; }
  bool commute(int s, int t) const { return s != t && m(s, t) == 2; }

  /// All off-diagonal entries are 2 or infinity.
  bool right_angled() const;

  /// The parabolic subsystem (W_T, T), generators kept in order.
  CoxeterMatrix restrict_to(Subset T) const;

  std::string canonical_text() const;
  /// 16 hex digits, stable across runs and platforms.
  std::string digest() const;

  std::string format_subset(Subset T) const;

  friend bool operator==(const CoxeterMatrix&, const CoxeterMatrix&) = default;

 private:
  std::vector<std::string> names_;
  std::vector<int> entries_;
};

/// Parses the JSON input document (`generators`, `coxeter_matrix`; the short
/// keys `gens` and `m` are accepted too).
CoxeterMatrix parse_coxeter_matrix(std::string_view text);

std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t value);

namespace systems {
CoxeterMatrix infinite_dihedral();
CoxeterMatrix dihedral(int m);
CoxeterMatrix triangle(int mab, int mbc, int mac);
/// Right-angled system whose commutation graph is the n-cycle (n >= 4),
/// i.e. the reflection group of a right-angled hyperbolic n-gon when n >= 5.
CoxeterMatrix right_angled_polygon(int n);
CoxeterMatrix right_angled(int rank, const std::vector<std::pair<int, int>>& commuting);
}  // namespace systems

}  // namespace coxinv
