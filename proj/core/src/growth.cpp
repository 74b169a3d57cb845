#include "coxinv/growth.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include <boost/multiprecision/mpfr.hpp>

#include "coxinv/classification.hpp"
#include "coxinv/error.hpp"
#include "coxinv/group_element.hpp"

namespace coxinv {

namespace {

using Real = boost::multiprecision::mpfr_float_50;

Real to_real(const Rational& q) { return Real(q.get_num().get_str()) / Real(q.get_den().get_str()); }

int class_count(const CoxeterMatrix& M) {
  const auto cls = class_index(M);
  return cls.empty() ? 0 : *std::max_element(cls.begin(), cls.end()) + 1;
}

}  // namespace

// ---------------------------------------------------------------- weights

WeightVector WeightVector::uniform(const CoxeterMatrix& M, const Rational& t) {
  if (t < 1) fail(ErrorKind::BadEntry, "weights must be at least 1");
  return WeightVector{std::vector<Rational>(class_count(M), t)};
}

WeightVector WeightVector::from_generators(const CoxeterMatrix& M, const std::vector<Rational>& per_generator) {
  if (static_cast<int>(per_generator.size()) != M.rank())
    fail(ErrorKind::SchemaError, "one weight per generator expected");
  const auto cls = class_index(M);
  WeightVector w;
  w.values.assign(class_count(M), Rational(0));
  std::vector<bool> seen(w.values.size(), false);
  for (int s = 0; s < M.rank(); ++s) {
    const Rational& v = per_generator[s];
    if (v < 1) fail(ErrorKind::BadEntry, "weight of " + M.name(s) + " is below 1");
    const int c = cls[s];
    if (!seen[c]) {
      seen[c] = true;
      w.values[c] = v;
    } else if (w.values[c] != v) {
      fail(ErrorKind::ThicknessClassError,
           "values must be constant on conjugacy classes: " + M.name(s) + " has " + v.get_str() +
               " but its class " + M.format_subset(generator_conjugacy_classes(M)[c]) + " has " +
               w.values[c].get_str());
    }
  }
  return w;
}

bool WeightVector::all_equal() const {
  return std::adjacent_find(values.begin(), values.end(), std::not_equal_to<>()) == values.end();
}

bool WeightVector::any_unit() const {
  return std::any_of(values.begin(), values.end(), [](const Rational& v) { return v == 1; });
}

bool WeightVector::all_unit() const {
  return std::all_of(values.begin(), values.end(), [](const Rational& v) { return v == 1; });
}

std::vector<double> WeightVector::logs() const {
  std::vector<double> out;
  for (const auto& v : values) out.push_back(static_cast<double>(log(to_real(v))));
  return out;
}

Rational weight_of(std::span<const int> class_type, const WeightVector& t) {
  if (class_type.size() != t.values.size()) fail(ErrorKind::Internal, "class type arity mismatch");
  Rational w = 1;
  for (std::size_t i = 0; i < class_type.size(); ++i)
    for (int e = 0; e < class_type[i]; ++e) w *= t.values[i];
  return w;
}

Rational weight_of(const CoxeterMatrix& M, std::span<const int> word, const WeightVector& t) {
  const auto cls = class_index(M);
  std::vector<int> type(t.values.size(), 0);
  for (int s : word) {
    if (s < 0 || s >= M.rank()) fail(ErrorKind::UnknownGenerator, "letter out of range");
    ++type.at(cls[s]);
  }
  return weight_of(type, t);
}

SphereCounts sphere_counts_for(const CoxeterMatrix& M, int radius, const EnumerationLimits& limits) {
  if (M.right_angled()) return right_angled_sphere_counts(M, radius);
  return sphere_counts(ball_enumerate(ReflectionRepresentation(M), radius, limits));
}

// ---------------------------------------------------------------- Q_n

namespace {

/// Generators of weight 1 generate W_U; when W_U is finite every element with
/// k heavy letters has length at most k + (k+1)·l(w0_U).
struct UnitData {
  Subset unit = 0;
  bool infinite = false;
  int longest = 0;
};

UnitData unit_data(const CoxeterMatrix& M, const WeightVector& t) {
  UnitData u;
  const auto cls = class_index(M);
  for (int s = 0; s < M.rank(); ++s)
    if (t.values.at(cls[s]) == 1) u.unit |= singleton(s);
  if (u.unit == 0) return u;
  if (!is_finite_parabolic(M, u.unit)) {
    u.infinite = true;
    return u;
  }
  const auto ball = enumerate_finite(ReflectionRepresentation(M.restrict_to(u.unit)));
  for (std::size_t k = 0; k < ball.layers.size(); ++k)
    if (!ball.layers[k].empty()) u.longest = static_cast<int>(k);
  return u;
}

/// Number of heavy letters guaranteed complete at radius R.
int complete_heavy_letters(int radius, const UnitData& u) {
  if (u.unit == 0) return radius;
  return std::max(-1, (radius - u.longest) / (1 + u.longest));
}

Real log_weight(const std::vector<int>& type, const std::vector<Real>& logs) {
  Real x = 0;
  for (std::size_t i = 0; i < type.size(); ++i) x += logs[i] * type[i];
  return x;
}

std::vector<Real> real_logs(const WeightVector& t) {
  std::vector<Real> out;
  for (const auto& v : t.values) out.push_back(log(to_real(v)));
  return out;
}

GrowthTable table_from(const SphereCounts& counts, const WeightVector& t, const UnitData& u) {
  GrowthTable table;
  table.radius = counts.radius;
  table.weights = t;
  table.counts = counts;
  table.degenerate = t.any_unit();
  const auto logs = real_logs(t);

  if (u.infinite || t.all_unit()) {
    std::uint64_t size = 0;
    for (auto c : counts.totals()) size += c;
    table.Q.assign(counts.radius + 1, size);
    return table;
  }
  Real lmin = -1;
  for (std::size_t i = 0; i < logs.size(); ++i)
    if (t.values[i] != 1 && (lmin < 0 || logs[i] < lmin)) lmin = logs[i];
  const int heavy = complete_heavy_letters(counts.radius, u);
  int nmax = heavy < 0 ? -1 : static_cast<int>(floor(lmin * heavy));
  if (counts.exhausted) nmax = std::max(nmax, static_cast<int>(ceil(lmin * counts.radius)));
  if (nmax < 0) return table;

  table.Q.assign(nmax + 1, 0);
  for (const auto& layer : counts.by_length)
    for (const auto& [type, c] : layer) {
      const Real x = log_weight(type, logs);
      const Real first = ceil(x);
      for (int n = std::max(0, static_cast<int>(first)); n <= nmax; ++n) table.Q[n] += c;
    }
  return table;
}

}  // namespace

GrowthTable growth_table(const SphereCounts& counts, const WeightVector& t) {
  if (static_cast<int>(t.values.size()) != counts.num_classes) fail(ErrorKind::SchemaError, "weight arity mismatch");
  UnitData u;
  if (t.any_unit()) u.infinite = !counts.exhausted;  // no matrix: be conservative
  return table_from(counts, t, u);
}

GrowthTable growth_table(const CoxeterMatrix& M, const WeightVector& t, int radius, const EnumerationLimits& limits) {
  if (static_cast<int>(t.values.size()) != class_count(M)) fail(ErrorKind::SchemaError, "weight arity mismatch");
  return table_from(sphere_counts_for(M, radius, limits), t, unit_data(M, t));
}

// ---------------------------------------------------------------- series

namespace {

struct ParabolicData {
  Subset set = 0;
  Polynomial polynomial;  // W_M(t)
  // element monomials with their global descent sets
  std::vector<std::pair<Monomial, Subset>> elements;
  std::vector<Subset> supports;
};

Monomial monomial_of(const std::vector<int>& type, int length, bool per_class) {
  return per_class ? Monomial(type) : Monomial{length};
}

ParabolicData enumerate_parabolic(const CoxeterMatrix& M, Subset T, bool per_class, int nvars,
                                  const EnumerationLimits& limits) {
  const auto cls = class_index(M);
  const auto global = members(T);
  const auto ball = enumerate_finite(ReflectionRepresentation(M.restrict_to(T)), limits);
  ParabolicData d;
  d.set = T;
  d.polynomial = Polynomial(nvars);
  const int ncls = class_count(M);
  for (std::size_t k = 0; k < ball.layers.size(); ++k)
    for (const auto& e : ball.layers[k]) {
      std::vector<int> type(ncls, 0);
      Subset support = 0;
      for (auto letter : e.word) {
        ++type[cls[global[letter]]];
        support |= singleton(global[letter]);
      }
      Subset desc = 0;
      for (int s : members(e.descents)) desc |= singleton(global[s]);
      Monomial mono = monomial_of(type, static_cast<int>(k), per_class);
      d.polynomial.add_term(mono, 1);
      d.elements.emplace_back(std::move(mono), desc);
      d.supports.push_back(support);
    }
  return d;
}

std::vector<std::string> variable_names(const CoxeterMatrix& M, bool per_class) {
  if (!per_class) return {"t"};
  std::vector<std::string> names;
  for (std::size_t i = 0; i < generator_conjugacy_classes(M).size(); ++i) names.push_back("t" + std::to_string(i + 1));
  return names;
}

void validate(const CoxeterMatrix& M, RationalGrowthSeries& series, const SeriesOptions& opts) {
  const ReflectionRepresentation rep(M);
  int depth = opts.validation_depth;
  std::optional<SphereCounts> counts;
  while (!counts) {
    try {
      counts = sphere_counts(ball_enumerate(rep, depth, opts.limits));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::ResourceExceeded || depth <= 2) throw;
      depth = std::max(2, depth * 2 / 3);
    }
  }
  const auto parts = series.expansion(depth);
  for (int k = 0; k <= depth; ++k) {
    Polynomial expected(series.per_class ? counts->num_classes : 1);
    for (const auto& [type, c] : counts->by_length[k])
      expected.add_term(monomial_of(type, k, series.per_class), Rational(static_cast<unsigned long>(c)));
    if (!(expected == parts[k]))
      fail(ErrorKind::ValidationMismatch, "growth series disagrees with enumeration at length " + std::to_string(k) +
                                              ": series " + parts[k].to_string(series.variables) + ", enumeration " +
                                              expected.to_string(series.variables));
  }
  series.validated_depth = depth;
}

}  // namespace

std::vector<Polynomial> RationalGrowthSeries::expansion(int depth) const {
  return expand_series(numerator, denominator, depth);
}

std::string RationalGrowthSeries::to_string() const {
  if (finite) return numerator.to_string(variables);
  return "(" + numerator.to_string(variables) + ") / (" + denominator.to_string(variables) + ")";
}

RationalGrowthSeries rational_growth_series(const CoxeterMatrix& M, bool per_class, const SeriesOptions& opts) {
  RationalGrowthSeries series;
  series.per_class = per_class;
  series.rank = M.rank();
  series.variables = variable_names(M, per_class);
  const int nvars = static_cast<int>(series.variables.size());
  const Polynomial one = Polynomial::constant(nvars, 1);
  const Subset S = full_set(M.rank());

  if (is_finite_parabolic(M, S)) {
    series.finite = true;
    series.numerator = enumerate_parabolic(M, S, per_class, nvars, opts.limits).polynomial;
    series.denominator = one;
    validate(M, series, opts);
    return series;
  }

  const auto maximal = maximal_spherical_subsets(M);
  std::vector<ParabolicData> data;
  for (Subset T : maximal) data.push_back(enumerate_parabolic(M, T, per_class, nvars, opts.limits));

  // Per maximal M0, the alternating sum of t_{w0_T}·W_{M0}/W_T over the T
  // assigned to it; W_{M0}/W_T sums the elements of W_{M0} without right
  // descents in T.
  std::vector<Polynomial> partial(maximal.size(), Polynomial(nvars));
  for (Subset T : spherical_subsets(M)) {
    std::size_t host = 0;
    while ((maximal[host] & T) != T) ++host;
    const auto& d = data[host];
    Monomial top(nvars, 0);
    int top_len = -1;
    Polynomial quotient(nvars);
    for (std::size_t i = 0; i < d.elements.size(); ++i) {
      const auto& [mono, desc] = d.elements[i];
      if ((desc & T) == 0) quotient.add_term(mono, 1);
      if ((d.supports[i] & ~T) == 0) {
        const int len = std::accumulate(mono.begin(), mono.end(), 0);
        if (len > top_len) {
          top_len = len;
          top = mono;
        }
      }
    }
    const Rational sign = popcount(T) % 2 == 0 ? 1 : -1;
    partial[host] += Polynomial::monomial(top, sign) * quotient;
  }

  Polynomial numerator = one, denominator(nvars);
  for (const auto& d : data) numerator = numerator * d.polynomial;
  for (std::size_t i = 0; i < maximal.size(); ++i) {
    Polynomial term = partial[i];
    for (std::size_t j = 0; j < maximal.size(); ++j)
      if (j != i) term = term * data[j].polynomial;
    denominator += term;
  }

  if (!per_class) {
    auto num = numerator.univariate_coefficients();
    auto den = denominator.univariate_coefficients();
    auto g = univariate_gcd(num, den);
    const Rational g0 = g[0];
    for (auto& c : g) c /= g0;
    num = univariate_divide_exact(num, g);
    den = univariate_divide_exact(den, g);
    numerator = Polynomial::from_univariate(num);
    denominator = Polynomial::from_univariate(den);
  }
  const Rational d0 = denominator.constant_term();
  if (d0 == 0) fail(ErrorKind::Internal, "growth series denominator vanishes at 0");
  series.numerator = numerator * (1 / d0);
  series.denominator = denominator * (1 / d0);
  validate(M, series, opts);
  return series;
}

// ---------------------------------------------------------------- rates

std::string_view to_string(GrowthMethod method) {
  return method == GrowthMethod::SeriesSingularity ? "SeriesSingularity" : "EnumerationFit";
}

std::string_view to_string(Convergence c) {
  switch (c) {
    case Convergence::Converges: return "Converges";
    case Convergence::Diverges: return "Diverges";
    case Convergence::Indeterminate: return "Indeterminate";
  }
  return "?";
}

namespace {

/// Σ c_j exp(-x a_j) with a certified bound on the evaluation error.
class CurvePolynomial {
 public:
  CurvePolynomial(const Polynomial& p, std::span<const double> log_weights) {
    std::map<Real, Real> grouped;
    for (const auto& [m, c] : p.terms()) {
      Real a = 0;
      for (std::size_t i = 0; i < m.size(); ++i) a += Real(log_weights[i]) * m[i];
      grouped[a] += to_real(c);
    }
    for (const auto& [a, c] : grouped) {
      if (c == 0) continue;
      rates_.push_back(a);
      coefs_.push_back(c);
    }
  }

  struct Value {
    Real value;
    Real error;
    int sign() const { return abs(value) <= error ? 0 : (value > 0 ? 1 : -1); }
  };

  Value operator()(const Real& x) const {
    Value v{0, 0};
    Real scale = 0;
    for (std::size_t j = 0; j < coefs_.size(); ++j) {
      const Real term = coefs_[j] * exp(-x * rates_[j]);
      v.value += term;
      scale += abs(term);
    }
    // each term carries a few ulps from exp and the product, the sum one more
    v.error = scale * (coefs_.size() + 8) * std::numeric_limits<Real>::epsilon();
    return v;
  }

 private:
  std::vector<Real> rates_, coefs_;
};

Real golden_minimum(const CurvePolynomial& P, Real lo, Real hi, double tol) {
  const Real r = (sqrt(Real(5)) - 1) / 2;
  Real a = lo, b = hi;
  Real c = b - r * (b - a), d = a + r * (b - a);
  Real fc = P(c).value, fd = P(d).value;
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = P(c).value;
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = P(d).value;
    }
  }
  return (a + b) / 2;
}

}  // namespace

GrowthRateEstimate series_growth_rate(const RationalGrowthSeries& series, std::span<const double> log_weights,
                                      double scan_step, double tolerance) {
  GrowthRateEstimate est;
  est.method = GrowthMethod::SeriesSingularity;
  if (series.finite) {
    est.exact_zero = true;
    return est;
  }
  if (static_cast<int>(log_weights.size()) != series.denominator.num_vars())
    fail(ErrorKind::Internal, "log weight arity mismatch");
  double lmin = *std::min_element(log_weights.begin(), log_weights.end());
  if (!(lmin > 0)) fail(ErrorKind::DegenerateWeights, "the series method needs every weight above 1");

  const CurvePolynomial P(series.denominator, log_weights);
  const CurvePolynomial L(series.numerator, log_weights);

  const int nvars = series.denominator.num_vars();
  // c_k <= rank^k, so e_t <= log(rank) / min log t_i
  Real hi = log(Real(std::max(series.rank, 2))) / lmin + 1;
  while (P(hi).sign() <= 0) hi *= 2;

  Real x = hi;
  Real prev_f = L(x).value / P(x).value;
  const Real step = scan_step;
  for (;;) {
    Real next = x - step;
    if (next <= 0) {
      // z = 1: decide exactly
      const Rational p1 = series.denominator.evaluate_exact(std::vector<Rational>(nvars, Rational(1)));
      if (p1 == 0) {
        // P(1) = 0 and no earlier root: polynomial growth
        est.exact_zero = true;
        return est;
      }
      next = 0;
    }
    const auto pv = P(next);
    if (pv.sign() <= 0) {
      Real a = next, b = x;
      if (pv.sign() == 0) {
        est.value = static_cast<double>(next);
        est.uncertainty = tolerance;
        return est;
      }
      while (b - a > tolerance) {
        const Real mid = (a + b) / 2;
        const auto mv = P(mid);
        if (mv.sign() == 0) {
          a = b = mid;
          break;
        }
        (mv.sign() > 0 ? b : a) = mid;
      }
      est.value = static_cast<double>((a + b) / 2);
      est.uncertainty = std::max(static_cast<double>((b - a) / 2), 0.0);
      if (est.uncertainty == 0) est.uncertainty = tolerance / 2;
      return est;
    }
    const Real f = L(next).value / pv.value;
    if (f < prev_f) {
      // a root of even multiplicity lies between
      const Real root = golden_minimum(P, next, std::min(hi, Real(x + step)), tolerance / 4);
      est.value = static_cast<double>(root);
      est.uncertainty = tolerance;
      return est;
    }
    if (next == 0) fail(ErrorKind::Internal, "no singularity found for an infinite group");
    prev_f = f;
    x = next;
  }
}

namespace {

struct FitResult {
  double slope = 0;
  double slope_se = 0;
  bool ok = false;
};

FitResult least_squares(const std::vector<double>& xs, const std::vector<double>& ys, bool log_term) {
  const int k = log_term ? 3 : 2;
  const std::size_t n = xs.size();
  FitResult r;
  if (n < static_cast<std::size_t>(k + 1)) return r;
  auto feature = [&](std::size_t i, int j) -> long double {
    if (j == 0) return 1;
    if (j == 1) return xs[i];
    return std::log(static_cast<long double>(xs[i]));
  };
  long double A[3][3] = {}, b[3] = {};
  for (std::size_t i = 0; i < n; ++i)
    for (int p = 0; p < k; ++p) {
      b[p] += feature(i, p) * ys[i];
      for (int q = 0; q < k; ++q) A[p][q] += feature(i, p) * feature(i, q);
    }
  // inverse by Gauss-Jordan
  long double inv[3][3] = {};
  for (int p = 0; p < k; ++p) inv[p][p] = 1;
  for (int col = 0; col < k; ++col) {
    int piv = col;
    for (int row = col + 1; row < k; ++row)
      if (std::fabs(A[row][col]) > std::fabs(A[piv][col])) piv = row;
    if (std::fabs(A[piv][col]) < 1e-300L) return r;
    std::swap(A[piv], A[col]);
    std::swap(inv[piv], inv[col]);
    const long double d = A[col][col];
    for (int q = 0; q < k; ++q) {
      A[col][q] /= d;
      inv[col][q] /= d;
    }
    for (int row = 0; row < k; ++row) {
      if (row == col) continue;
      const long double f = A[row][col];
      for (int q = 0; q < k; ++q) {
        A[row][q] -= f * A[col][q];
        inv[row][q] -= f * inv[col][q];
      }
    }
  }
  long double beta[3] = {};
  for (int p = 0; p < k; ++p)
    for (int q = 0; q < k; ++q) beta[p] += inv[p][q] * b[q];
  long double rss = 0;
  for (std::size_t i = 0; i < n; ++i) {
    long double fit = 0;
    for (int p = 0; p < k; ++p) fit += beta[p] * feature(i, p);
    rss += (ys[i] - fit) * (ys[i] - fit);
  }
  const long double sigma2 = rss / static_cast<long double>(n - k);
  r.slope = static_cast<double>(beta[1]);
  r.slope_se = static_cast<double>(std::sqrt(std::max(0.0L, sigma2 * inv[1][1])));
  r.ok = true;
  return r;
}

}  // namespace

namespace {

GrowthRateEstimate fit_jumps(const SphereCounts& counts, std::span<const double> log_weights, double X) {
  GrowthRateEstimate est;
  est.method = GrowthMethod::EnumerationFit;
  est.depth = counts.radius;
  if (counts.exhausted) {
    est.exact_zero = true;
    return est;
  }
  if (static_cast<int>(log_weights.size()) != counts.num_classes) fail(ErrorKind::Internal, "log weight arity mismatch");

  // jump points of Q(x) = #{w : log t_w <= x}
  std::vector<std::pair<double, double>> jumps;  // (x, count)
  for (const auto& layer : counts.by_length)
    for (const auto& [type, c] : layer) {
      double x = 0;
      for (std::size_t i = 0; i < type.size(); ++i) x += type[i] * log_weights[i];
      jumps.emplace_back(x, static_cast<double>(c));
    }
  std::sort(jumps.begin(), jumps.end());
  std::vector<double> xs, ys;
  double cumulative = 0;
  for (std::size_t i = 0; i < jumps.size(); ++i) {
    cumulative += jumps[i].second;
    const bool last_at_x = i + 1 == jumps.size() || jumps[i + 1].first > jumps[i].first * (1 + 1e-12) + 1e-12;
    if (!last_at_x) continue;
    if (jumps[i].first > X * (1 + 1e-12)) break;
    if (jumps[i].first >= X / 2 && jumps[i].first > 0) {
      xs.push_back(jumps[i].first);
      ys.push_back(std::log(cumulative));
    }
  }
  est.window_lo = X / 2;
  est.window_hi = X;
  FitResult fit = least_squares(xs, ys, true);
  if (!fit.ok) fit = least_squares(xs, ys, false);
  if (!fit.ok) fail(ErrorKind::RadiusExceeded, "enumeration depth too small for a growth fit");

  // model uncertainty: disagreement with the pure exponential model and with
  // the fit on the lower part of the window
  const FitResult plain = least_squares(xs, ys, false);
  std::vector<double> xl, yl;
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (xs[i] <= 0.75 * X) {
      xl.push_back(xs[i]);
      yl.push_back(ys[i]);
    }
  const FitResult low = least_squares(xl, yl, true);
  double spread = 3 * fit.slope_se;
  if (plain.ok) spread = std::max(spread, std::fabs(plain.slope - fit.slope));
  if (low.ok) spread = std::max(spread, std::fabs(low.slope - fit.slope));
  est.value = std::max(0.0, fit.slope);
  est.uncertainty = spread + (fit.slope < 0 ? -fit.slope : 0.0);
  return est;
}

}  // namespace

GrowthRateEstimate enumeration_fit(const SphereCounts& counts, std::span<const double> log_weights) {
  if (counts.exhausted) return fit_jumps(counts, log_weights, 0);
  const double lmin = *std::min_element(log_weights.begin(), log_weights.end());
  if (!(lmin > 0)) fail(ErrorKind::DegenerateWeights, "weights of 1 leave no complete range");
  return fit_jumps(counts, log_weights, counts.radius * lmin);
}

GrowthRateEstimate enumeration_fit(const CoxeterMatrix& M, const WeightVector& t, int depth,
                                   const EnumerationLimits& limits) {
  if (t.any_unit()) fail(ErrorKind::DegenerateWeights, "weights of 1 leave no complete range for the fit");
  const auto logs = t.logs();
  return enumeration_fit(sphere_counts_for(M, depth, limits), logs);
}

GrowthRateEstimate growth_rate(const CoxeterMatrix& M, const WeightVector& t, const GrowthOptions& opts) {
  if (static_cast<int>(t.values.size()) != class_count(M)) fail(ErrorKind::SchemaError, "weight arity mismatch");
  if (is_finite_parabolic(M, full_set(M.rank()))) {
    GrowthRateEstimate est;
    est.method = opts.method.value_or(GrowthMethod::SeriesSingularity);
    est.exact_zero = true;
    return est;
  }
  if (t.any_unit()) {
    const auto u = unit_data(M, t);
    if (u.infinite)
      fail(ErrorKind::DegenerateWeights, "generators of weight 1 generate an infinite subgroup: Q_0 is infinite");
    if (opts.method == GrowthMethod::SeriesSingularity)
      fail(ErrorKind::DegenerateWeights, "the series method needs every weight above 1");
    // only the heavy letters bound the length
    const auto counts = sphere_counts_for(M, opts.depth, opts.series.limits);
    const auto logs = t.logs();
    double lmin = 0;
    for (double l : logs)
      if (l > 0 && (lmin == 0 || l < lmin)) lmin = l;
    auto est = fit_jumps(counts, logs, complete_heavy_letters(opts.depth, u) * lmin);
    est.depth = opts.depth;
    return est;
  }
  if (opts.method == GrowthMethod::EnumerationFit) return enumeration_fit(M, t, opts.depth, opts.series.limits);
  const bool per_class = !t.all_equal();
  const auto series = rational_growth_series(M, per_class, opts.series);
  auto logs = t.logs();
  if (!per_class) logs.resize(1);
  return series_growth_rate(series, logs, opts.scan_step, opts.tolerance);
}

GrowthRateEstimate length_growth_rate(const CoxeterMatrix& M, const GrowthOptions& opts) {
  if (is_finite_parabolic(M, full_set(M.rank()))) {
    GrowthRateEstimate est;
    est.method = opts.method.value_or(GrowthMethod::SeriesSingularity);
    est.exact_zero = true;
    return est;
  }
  if (opts.method == GrowthMethod::EnumerationFit) {
    const auto counts = sphere_counts_for(M, opts.depth, opts.series.limits);
    return enumeration_fit(counts, std::vector<double>(counts.num_classes, 1.0));
  }
  const auto series = rational_growth_series(M, false, opts.series);
  const std::vector<double> one{1.0};
  return series_growth_rate(series, one, opts.scan_step, opts.tolerance);
}

Convergence classify_convergence(const GrowthRateEstimate& rate, double x) {
  if (x > rate.value + rate.uncertainty) return Convergence::Converges;
  if (x < rate.value - rate.uncertainty) return Convergence::Diverges;
  return Convergence::Indeterminate;
}

Convergence classify_convergence(const CoxeterMatrix& M, const WeightVector& t, double x, const GrowthOptions& opts) {
  return classify_convergence(growth_rate(M, t, opts), x);
}

RateBounds rate_comparison_bounds(const CoxeterMatrix& M, const WeightVector& t, const GrowthOptions& opts) {
  if (t.any_unit()) fail(ErrorKind::DegenerateWeights, "comparison bounds need every weight above 1");
  const auto e = length_growth_rate(M, opts);
  const auto logs = t.logs();
  const double lmax = *std::max_element(logs.begin(), logs.end());
  const double lmin = *std::min_element(logs.begin(), logs.end());
  RateBounds b;
  b.lower = e.value / lmax;
  b.upper = e.value / lmin;
  b.uncertainty = e.uncertainty / lmin;
  return b;
}

}  // namespace coxinv
