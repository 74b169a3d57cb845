#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "coxinv/coxeter_matrix.hpp"
#include "coxinv/growth.hpp"
#include "coxinv/measured.hpp"

namespace coxinv {

/// q_s per generator: panels of type s have q_s + 1 chambers.
struct ThicknessVector {
  std::vector<std::int64_t> values;

  static ThicknessVector uniform(const CoxeterMatrix& M, std::int64_t q);
  /// Throws BadEntry for q_s < 1, ThicknessClassError when q is not constant
  /// on a conjugacy class of generators.
  void validate(const CoxeterMatrix& M) const;
  bool thin() const;  // some q_s = 1
  WeightVector weights(const CoxeterMatrix& M) const;

  friend bool operator==(const ThicknessVector&, const ThicknessVector&) = default;
};

struct RegularBuildingSpec {
  CoxeterMatrix matrix;
  ThicknessVector thickness;

  RegularBuildingSpec(CoxeterMatrix M, ThicknessVector q);
  WeightVector weights() const { return thickness.weights(matrix); }
};

/// |S(c, w)| = q_w for the element with the given reduced word.
Integer sphere_cardinality(const RegularBuildingSpec& spec, std::span<const int> word);
Integer sphere_cardinality(const RegularBuildingSpec& spec, const GroupElement& w);

struct LpPullbackNorm {
  Rational p;
  int depth = 0;
  /// Σ_{l(w) <= N} q_w^{1-p} for N = 0..depth; exact when p is an integer.
  std::vector<Rational> exact_partial_sums;
  std::vector<double> partial_sums;
  /// Certified bound on |partial_sums - true value|.
  std::vector<double> partial_sum_error;
  GrowthRateEstimate e_q;
  Convergence verdict = Convergence::Indeterminate;
};

/// Partial sums of ||ρ*τ||_p^p = Σ q_w^{1-p} and the verdict of
/// classify_convergence at x = p - 1. Requires p > 1.
LpPullbackNorm lp_pullback_norm(const RegularBuildingSpec& spec, const Rational& p, int depth,
                                const GrowthOptions& opts = {});
/// Same, with a precomputed e_q(W).
LpPullbackNorm lp_pullback_norm(const RegularBuildingSpec& spec, const Rational& p, int depth,
                                const GrowthRateEstimate& e_q, const EnumerationLimits& limits = {});

struct CriticalExponents {
  Measured e_q;
  /// 1 + e_q(W)
  Measured p_homology;
  /// 1 + 1/e_q(W), Infinity when e_q = 0
  Measured p_cohomology;
  /// The nerve is an orientable gallery-connected pseudomanifold: both values
  /// are exact thresholds, otherwise p_homology only bounds the onset.
  bool pm_grade = false;
  bool affine = false;
  bool finite = false;
  /// Some q_s = 1: values are computed but assume q >= 2.
  bool thin = false;
};

/// e_q(W) as a reported value; Infinity when weight-1 generators generate an
/// infinite subgroup.
Measured measure(const GrowthRateEstimate& e);

CriticalExponents critical_exponents(const RegularBuildingSpec& spec, const GrowthOptions& opts = {});
CriticalExponents critical_exponents(const RegularBuildingSpec& spec, const Measured& e_q);

}  // namespace coxinv
