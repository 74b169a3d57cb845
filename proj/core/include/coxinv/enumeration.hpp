#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "coxinv/group_element.hpp"

namespace coxinv {

struct EnumerationLimits {
  std::size_t max_elements = 2'000'000;
  /// Expand each layer on worker threads; the merged result is identical to
  /// the sequential run.
  bool parallel = false;
  unsigned threads = 0;  // 0 = hardware concurrency

  /// Defaults overridden by COXINV_MAX_ELEMENTS when set.
  static EnumerationLimits from_environment();
};

struct BallElement {
  std::vector<std::uint8_t> word;  // lex-least reduced word
  Subset descents = 0;
  std::vector<int> class_type;  // letters per conjugacy class

  friend bool operator==(const BallElement&, const BallElement&) = default;
};

/// Breadth-first layers of the Cayley graph ball. Layer k holds the elements
/// of length k ordered by canonical matrix key.
struct BallEnumeration {
  int radius = 0;
  int num_classes = 0;
  std::vector<std::vector<BallElement>> layers;
  /// The group was exhausted (W finite) within the radius.
  bool exhausted = false;

  std::vector<std::uint64_t> layer_sizes() const;
  std::uint64_t size() const;

  friend bool operator==(const BallEnumeration&, const BallEnumeration&) = default;
};

/// Throws ResourceExceeded when the element cap is hit; no partial result.
BallEnumeration ball_enumerate(const ReflectionRepresentation& rep, int radius,
                               const EnumerationLimits& limits = {});

/// Enumerates a finite group completely (radius unbounded).
BallEnumeration enumerate_finite(const ReflectionRepresentation& rep,
                                 const EnumerationLimits& limits = {});

/// Per-length counts of elements by class-type vector.
struct SphereCounts {
  int radius = 0;
  int num_classes = 0;
  std::vector<std::map<std::vector<int>, std::uint64_t>> by_length;
  bool exhausted = false;
  std::string source;  // "ball-enumeration" or "descent-transfer"

  std::vector<std::uint64_t> totals() const;
  friend bool operator==(const SphereCounts&, const SphereCounts&) = default;
};

SphereCounts sphere_counts(const BallEnumeration& ball);

/// Exact counts for right-angled systems by a transfer recursion on right
/// descent sets: each element u ≠ 1 has the unique parent u·max(D(u)), and
/// D(ws) = {s} ∪ {d ∈ D(w) : m_ds = 2} depends only on D(w) and s.
SphereCounts right_angled_sphere_counts(const CoxeterMatrix& M, int radius);

}  // namespace coxinv
