#include "coxinv/building.hpp"

#include <cmath>
#include <optional>

#include <boost/multiprecision/mpfr.hpp>

#include "coxinv/classification.hpp"
#include "coxinv/davis.hpp"
#include "coxinv/error.hpp"

namespace coxinv {

namespace {
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<80>>;
}

ThicknessVector ThicknessVector::uniform(const CoxeterMatrix& M, std::int64_t q) {
  return ThicknessVector{std::vector<std::int64_t>(M.rank(), q)};
}

void ThicknessVector::validate(const CoxeterMatrix& M) const {
  if (static_cast<int>(values.size()) != M.rank())
    fail(ErrorKind::SchemaError, "thickness needs one value per generator");
  for (int s = 0; s < M.rank(); ++s)
    if (values[s] < 1) fail(ErrorKind::BadEntry, "thickness q of " + M.name(s) + " must be at least 1");
  (void)weights(M);
}

bool ThicknessVector::thin() const {
  return std::any_of(values.begin(), values.end(), [](std::int64_t q) { return q == 1; });
}

WeightVector ThicknessVector::weights(const CoxeterMatrix& M) const {
  std::vector<Rational> r;
  for (auto q : values) r.emplace_back(static_cast<long>(q));
  return WeightVector::from_generators(M, r);
}

RegularBuildingSpec::RegularBuildingSpec(CoxeterMatrix M, ThicknessVector q)
    : matrix(std::move(M)), thickness(std::move(q)) {
  thickness.validate(matrix);
}

Integer sphere_cardinality(const RegularBuildingSpec& spec, std::span<const int> word) {
  Integer n = 1;
  for (int s : word) {
    if (s < 0 || s >= spec.matrix.rank()) fail(ErrorKind::UnknownGenerator, "letter out of range");
    n *= static_cast<long>(spec.thickness.values[s]);
  }
  return n;
}

Integer sphere_cardinality(const RegularBuildingSpec& spec, const GroupElement& w) {
  return sphere_cardinality(spec, w.witness_word);
}

Measured measure(const GrowthRateEstimate& e) {
  Measured m;
  m.value = e.value;
  m.uncertainty = e.uncertainty;
  m.exact = e.exact_zero;
  m.method = std::string(to_string(e.method));
  return m;
}

namespace {

/// e_q(W), or nullopt when weight-1 generators generate an infinite subgroup
/// (the rate is then infinite).
std::optional<GrowthRateEstimate> weighted_estimate(const RegularBuildingSpec& spec, const GrowthOptions& opts) {
  try {
    return growth_rate(spec.matrix, spec.weights(), opts);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::DegenerateWeights) throw;
    return std::nullopt;
  }
}

Measured weighted_rate(const RegularBuildingSpec& spec, const GrowthOptions& opts) {
  const auto e = weighted_estimate(spec, opts);
  return e ? measure(*e) : Measured::infinity("DegenerateWeights");
}

}  // namespace

LpPullbackNorm lp_pullback_norm(const RegularBuildingSpec& spec, const Rational& p, int depth,
                                const GrowthRateEstimate& e_q, const EnumerationLimits& limits) {
  if (p <= 1) fail(ErrorKind::BadEntry, "p must exceed 1");
  if (depth < 0) fail(ErrorKind::SchemaError, "depth must be non-negative");
  LpPullbackNorm out;
  out.p = p;
  out.depth = depth;
  out.e_q = e_q;
  out.verdict = classify_convergence(e_q, static_cast<double>(mpq_class(p - 1).get_d()));

  const auto t = spec.weights();
  const auto counts = sphere_counts_for(spec.matrix, depth, limits);
  const bool integral = p.get_den() == 1;
  const Real exponent = Real(mpq_class(1 - p).get_num().get_str()) / Real(mpq_class(1 - p).get_den().get_str());
  std::vector<Real> log_q;
  for (const auto& v : t.values) log_q.push_back(log(Real(v.get_num().get_str())));

  Rational exact = 0;
  Real approx = 0;
  std::size_t ops = 0;
  for (int k = 0; k <= depth; ++k) {
    for (const auto& [type, c] : counts.by_length[k]) {
      const Rational count(static_cast<unsigned long>(c));
      if (integral) {
        const Rational qw = weight_of(type, t);
        Rational term = 1;
        const long e = mpz_class(p.get_num() - 1).get_si();
        for (long i = 0; i < e; ++i) term /= qw;
        exact += count * term;
      }
      Real x = 0;
      for (std::size_t i = 0; i < type.size(); ++i) x += log_q[i] * type[i];
      approx += Real(c) * exp(exponent * x);
      ops += type.size() + 3;
    }
    if (integral) {
      out.exact_partial_sums.push_back(exact);
      out.partial_sums.push_back(exact.get_d());
      out.partial_sum_error.push_back(0);
    } else {
      out.partial_sums.push_back(static_cast<double>(approx));
      // working precision error plus rounding to double
      const Real err = approx * Real(ops + 4) * std::numeric_limits<Real>::epsilon();
      out.partial_sum_error.push_back(static_cast<double>(err) +
                                      std::abs(static_cast<double>(approx)) * std::numeric_limits<double>::epsilon());
    }
  }
  return out;
}

LpPullbackNorm lp_pullback_norm(const RegularBuildingSpec& spec, const Rational& p, int depth,
                                const GrowthOptions& opts) {
  auto est = weighted_estimate(spec, opts);
  if (!est) {
    est.emplace();
    est->value = std::numeric_limits<double>::infinity();
  }
  return lp_pullback_norm(spec, p, depth, *est, opts.series.limits);
}

CriticalExponents critical_exponents(const RegularBuildingSpec& spec, const Measured& e) {
  CriticalExponents c;
  const auto& M = spec.matrix;
  c.e_q = e;
  c.pm_grade = is_type_PM(M).type_pm();
  c.affine = is_affine_system(M);
  c.finite = is_finite_parabolic(M, full_set(M.rank()));
  c.thin = spec.thickness.thin();
  if (e.infinite) {
    c.p_homology = Measured::infinity(e.method);
    c.p_cohomology = Measured::exact_value(1, e.method);
    return c;
  }
  c.p_homology = Measured{1 + e.value, e.uncertainty, false, e.exact, e.method};
  if (e.value == 0) {
    c.p_cohomology = Measured{0, 0, true, e.exact, e.method};
  } else {
    const double lo = e.value - e.uncertainty;
    const double spread = lo > 0 ? 1 / lo - 1 / e.value : std::numeric_limits<double>::infinity();
    c.p_cohomology = Measured{1 + 1 / e.value, spread, false, e.exact, e.method};
  }
  return c;
}

CriticalExponents critical_exponents(const RegularBuildingSpec& spec, const GrowthOptions& opts) {
  return critical_exponents(spec, weighted_rate(spec, opts));
}

}  // namespace coxinv
