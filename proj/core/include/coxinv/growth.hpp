#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "coxinv/coxeter_matrix.hpp"
#include "coxinv/enumeration.hpp"
#include "coxinv/polynomial.hpp"

namespace coxinv {

/// One rational weight t_i >= 1 per generator conjugacy class.
struct WeightVector {
  std::vector<Rational> values;

  static WeightVector uniform(const CoxeterMatrix& M, const Rational& t);
  /// Per-generator values; throws ThicknessClassError unless they are constant
  /// on conjugacy classes, BadEntry when some value is below 1.
  static WeightVector from_generators(const CoxeterMatrix& M, const std::vector<Rational>& per_generator);

  bool all_equal() const;
  bool any_unit() const;
  bool all_unit() const;
  /// log t_i in double precision.
  std::vector<double> logs() const;

  friend bool operator==(const WeightVector&, const WeightVector&) = default;
};

/// t_w from the class-type vector of w (letters per class in a reduced word).
Rational weight_of(std::span<const int> class_type, const WeightVector& t);
/// t_w from any reduced word of w.
Rational weight_of(const CoxeterMatrix& M, std::span<const int> word, const WeightVector& t);

/// Counts for the ball of radius R: right-angled systems use the descent
/// transfer, everything else breadth-first enumeration.
SphereCounts sphere_counts_for(const CoxeterMatrix& M, int radius, const EnumerationLimits& limits = {});

struct GrowthTable {
  int radius = 0;
  WeightVector weights;
  SphereCounts counts;
  /// Some t_i = 1: lengths are not bounded by weight and Q_n is only a lower
  /// bound. With every t_i = 1, Q_n is the ball size for n = 0..R.
  bool degenerate = false;
  /// Q_n for n = 0..Q.size()-1; every entry is complete: an element with
  /// t_w <= e^n has length at most n / min log t_i <= R.
  std::vector<std::uint64_t> Q;
};

GrowthTable growth_table(const SphereCounts& counts, const WeightVector& t);
GrowthTable growth_table(const CoxeterMatrix& M, const WeightVector& t, int radius,
                         const EnumerationLimits& limits = {});

struct RationalGrowthSeries {
  bool per_class = false;
  int rank = 0;
  std::vector<std::string> variables;
  Polynomial numerator;
  Polynomial denominator;  // constant term 1
  bool finite = false;
  /// Depth through which the expansion was checked against enumeration.
  int validated_depth = 0;

  /// Homogeneous parts of the Taylor expansion, degree 0..depth.
  std::vector<Polynomial> expansion(int depth) const;
  std::string to_string() const;
};

struct SeriesOptions {
  int validation_depth = 12;
  EnumerationLimits limits;
};

/// W(t) = D/P from the alternating sum over spherical subsets; the expansion
/// is compared exactly with enumeration (ValidationMismatch on disagreement).
RationalGrowthSeries rational_growth_series(const CoxeterMatrix& M, bool per_class,
                                            const SeriesOptions& opts = {});

enum class GrowthMethod { SeriesSingularity, EnumerationFit };
std::string_view to_string(GrowthMethod method);

struct GrowthRateEstimate {
  double value = 0;
  GrowthMethod method = GrowthMethod::SeriesSingularity;
  /// Half-width of the reported bracket.
  double uncertainty = 0;
  /// The value 0 is certified exactly (finite W, or P(1) = 0 without an
  /// earlier root).
  bool exact_zero = false;
  /// EnumerationFit only: depth used and fitted window in weight units.
  int depth = 0;
  double window_lo = 0, window_hi = 0;

  double lower() const { return std::max(0.0, value - uncertainty); }
  double upper() const { return value + uncertainty; }
};

struct GrowthOptions {
  std::optional<GrowthMethod> method;  // default: series, fit when degenerate
  double scan_step = 1e-2;
  double tolerance = 1e-9;
  /// Enumeration depth for EnumerationFit.
  int depth = 20;
  SeriesOptions series;
};

/// e_t(W): the exponential growth rate of Q_n(t).
GrowthRateEstimate growth_rate(const CoxeterMatrix& M, const WeightVector& t, const GrowthOptions& opts = {});
/// e(W): growth rate of the word length (all log t_i = 1).
GrowthRateEstimate length_growth_rate(const CoxeterMatrix& M, const GrowthOptions& opts = {});

/// Series singularity along x ↦ exp(-x·log_weights) for an already computed
/// series.
GrowthRateEstimate series_growth_rate(const RationalGrowthSeries& series, std::span<const double> log_weights,
                                      double scan_step = 1e-2, double tolerance = 1e-9);

/// Least-squares fit of log Q(x) = a + e·x + c·log x over the jump points
/// x = log t_w in the deepest complete window [X/2, X].
GrowthRateEstimate enumeration_fit(const SphereCounts& counts, std::span<const double> log_weights);
GrowthRateEstimate enumeration_fit(const CoxeterMatrix& M, const WeightVector& t, int depth,
                                   const EnumerationLimits& limits = {});

enum class Convergence { Converges, Diverges, Indeterminate };
std::string_view to_string(Convergence c);

Convergence classify_convergence(const GrowthRateEstimate& rate, double x);
Convergence classify_convergence(const CoxeterMatrix& M, const WeightVector& t, double x,
                                 const GrowthOptions& opts = {});

struct RateBounds {
  double lower = 0;
  double upper = 0;
  /// Propagated from the uncertainty of e(W).
  double uncertainty = 0;
};

/// e(W)/log t_max <= e_t(W) <= e(W)/log t_min.
RateBounds rate_comparison_bounds(const CoxeterMatrix& M, const WeightVector& t, const GrowthOptions& opts = {});

}  // namespace coxinv
