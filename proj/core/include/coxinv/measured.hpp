#pragma once

#include <limits>
#include <string>

namespace coxinv {

/// A reported real: either exact, or a value with a bracket half-width and
/// the method that produced it. `infinite` stands for +∞.
struct Measured {
  double value = 0;
  double uncertainty = 0;
  bool infinite = false;
  bool exact = false;
  std::string method;

  static Measured exact_value(double v, std::string method = "Exact") { return {v, 0, false, true, std::move(method)}; }
  static Measured infinity(std::string method = "Exact") { return {0, 0, true, true, std::move(method)}; }

  double lower() const { return infinite ? std::numeric_limits<double>::infinity() : value - uncertainty; }
  double upper() const { return infinite ? std::numeric_limits<double>::infinity() : value + uncertainty; }

  friend bool operator==(const Measured&, const Measured&) = default;
};

}  // namespace coxinv
