#include "coxinv/hyperbolic.hpp"

#include <algorithm>
#include <cmath>

#include "coxinv/classification.hpp"
#include "coxinv/davis.hpp"
#include "coxinv/error.hpp"

namespace coxinv {

namespace {

bool commuting(const CoxeterMatrix& M, Subset A, Subset B) {
  for (int a : members(A))
    for (int b : members(B))
      if (!M.commute(a, b)) return false;
  return true;
}

bool irreducible_affine(const CoxeterMatrix& M, Subset T) {
  if (popcount(T) < 3) return false;
  const auto type = classify_parabolic(M, T);
  return type.components.size() == 1 && type.components.front().family == ComponentFamily::Affine;
}

/// Half-width of 1/x over [e - u, e + u].
double reciprocal_spread(const Measured& e) {
  const double lo = e.value - e.uncertainty;
  return lo > 0 ? 1 / lo - 1 / e.value : std::numeric_limits<double>::infinity();
}

Measured reciprocal_plus_one(const Measured& e) {
  return Measured{1 + 1 / e.value, e.exact ? 0 : reciprocal_spread(e), false, e.exact, e.method};
}

void require_hyperbolic(const CoxeterMatrix& M) {
  const auto v = moussong_hyperbolic(M);
  if (!v.hyperbolic) fail(ErrorKind::NotHyperbolic, "W is not hyperbolic: " + v.describe(M));
}

void require_positive(const Measured& e_q) {
  if (e_q.infinite) fail(ErrorKind::DegenerateWeights, "e_q(W) is infinite");
  if (e_q.value <= 0 || e_q.lower() <= 0)
    fail(ErrorKind::AffineDegenerate, "e_q(W) is 0 within its uncertainty: the boundary dimension is undefined");
}

void require_thick(const RegularBuildingSpec& spec) {
  if (spec.thickness.thin()) fail(ErrorKind::ThinBuilding, "some q_s = 1; the bounds need q >= 2");
}

Measured rate_of(const RegularBuildingSpec& spec, const GrowthOptions& opts) {
  return critical_exponents(spec, opts).e_q;
}

}  // namespace

std::string_view to_string(ObstructionKind k) {
  return k == ObstructionKind::AffineRank3 ? "AffineRank3" : "CommutingInfinitePair";
}

std::string HyperbolicityVerdict::describe(const CoxeterMatrix& M) const {
  if (!obstruction) return "hyperbolic";
  const auto& o = *obstruction;
  if (o.kind == ObstructionKind::AffineRank3) return "AffineRank3(" + M.format_subset(o.T1) + ")";
  return "CommutingInfinitePair(" + M.format_subset(o.T1) + ", " + M.format_subset(o.T2) + ")";
}

HyperbolicityVerdict moussong_hyperbolic(const CoxeterMatrix& M) {
  const int n = M.rank();
  if (n > 24) fail(ErrorKind::ResourceExceeded, "hyperbolicity search is limited to rank 24");
  const Subset count = Subset{1} << n;

  std::vector<Subset> affine;
  std::vector<Subset> minimal_infinite;
  for (Subset T = 1; T < count; ++T) {
    if (popcount(T) >= 3 && diagram_components(M, T).size() == 1 && irreducible_affine(M, T)) affine.push_back(T);
    if (is_finite_parabolic(M, T)) continue;
    bool minimal = true;
    for (int s : members(T))
      if (!is_finite_parabolic(M, T & ~singleton(s))) {
        minimal = false;
        break;
      }
    if (minimal) minimal_infinite.push_back(T);
  }

  HyperbolicityVerdict v;
  if (!affine.empty()) {
    v.hyperbolic = false;
    v.obstruction = HyperbolicityObstruction{ObstructionKind::AffineRank3,
                                             *std::min_element(affine.begin(), affine.end(), subset_less), 0};
    return v;
  }
  // an infinite parabolic contains a minimal one, so pairs of minimal
  // infinite subsets decide clause (b)
  std::sort(minimal_infinite.begin(), minimal_infinite.end(), subset_less);
  for (std::size_t i = 0; i < minimal_infinite.size(); ++i)
    for (std::size_t j = i + 1; j < minimal_infinite.size(); ++j) {
      const Subset A = minimal_infinite[i], B = minimal_infinite[j];
      if ((A & B) == 0 && commuting(M, A, B)) {
        v.hyperbolic = false;
        v.obstruction = HyperbolicityObstruction{ObstructionKind::CommutingInfinitePair, A, B};
        return v;
      }
    }
  return v;
}

bool verify_obstruction(const CoxeterMatrix& M, const HyperbolicityObstruction& o) {
  if (o.kind == ObstructionKind::AffineRank3) return o.T2 == 0 && irreducible_affine(M, o.T1);
  return o.T1 != 0 && o.T2 != 0 && (o.T1 & o.T2) == 0 && commuting(M, o.T1, o.T2) &&
         !is_finite_parabolic(M, o.T1) && !is_finite_parabolic(M, o.T2);
}

VisualParameter VisualParameter::of(double lambda) {
  if (!(lambda > 1) || !std::isfinite(lambda)) fail(ErrorKind::BadEntry, "lambda must be a finite number > 1");
  return VisualParameter{lambda, false};
}

VisualParameter VisualParameter::bourdon_preset() { return VisualParameter{std::nullopt, true}; }

Measured VisualParameter::log_lambda(const Measured& e_q) const {
  if (bourdon) return e_q;
  return Measured::exact_value(std::log(*value), "UserSupplied");
}

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::UserSupplied: return "UserSupplied";
    case Provenance::VcdFloor: return "VcdFloor";
    case Provenance::FuchsianExact: return "FuchsianExact";
    case Provenance::BourdonPreset: return "BourdonPreset";
  }
  return "?";
}

Measured coornaert_hausdim(const CoxeterMatrix& M, const Measured& e_q, const VisualParameter& lambda) {
  require_hyperbolic(M);
  require_positive(e_q);
  // λ = exp(e_q) cancels exactly
  if (lambda.bourdon) return Measured::exact_value(1, "BourdonPreset");
  const double L = std::log(*lambda.value);
  return Measured{e_q.value / L, e_q.uncertainty / L, false, e_q.exact, e_q.method};
}

Measured coornaert_hausdim(const RegularBuildingSpec& spec, const VisualParameter& lambda, const GrowthOptions& opts) {
  require_hyperbolic(spec.matrix);
  return coornaert_hausdim(spec.matrix, rate_of(spec, opts), lambda);
}

Measured building_hausdim_upper(const CoxeterMatrix& M, const Measured& e_q, const VisualParameter& lambda) {
  require_hyperbolic(M);
  require_positive(e_q);
  if (lambda.bourdon) return reciprocal_plus_one(e_q);
  const double L = std::log(*lambda.value);
  return Measured{(1 + e_q.value) / L, e_q.uncertainty / L, false, e_q.exact, e_q.method};
}

Measured building_hausdim_upper(const RegularBuildingSpec& spec, const VisualParameter& lambda,
                                const GrowthOptions& opts) {
  require_hyperbolic(spec.matrix);
  return building_hausdim_upper(spec.matrix, rate_of(spec, opts), lambda);
}

ConfdimBoundsReport confdim_bounds(const RegularBuildingSpec& spec, const Measured& e_q, int vcd,
                                   const ConfdimOptions& opts) {
  const auto& M = spec.matrix;
  require_hyperbolic(M);
  require_thick(spec);
  require_positive(e_q);

  ConfdimBoundsReport r;
  r.e_q = e_q;
  r.vcd = vcd;
  r.factor = reciprocal_plus_one(e_q);
  const double floor = std::max(vcd - 1, 0);
  r.vcd_floor = Measured{floor * r.factor.value, floor * r.factor.uncertainty, false, r.factor.exact, "VcdFloor"};
  if (opts.apartment_confdim) {
    if (!(*opts.apartment_confdim >= 0)) fail(ErrorKind::BadEntry, "apartment_confdim must be non-negative");
    r.apartment_confdim = *opts.apartment_confdim;
    r.apartment_provenance = Provenance::UserSupplied;
    r.lower = Measured{r.apartment_confdim * r.factor.value, r.apartment_confdim * r.factor.uncertainty, false,
                       r.factor.exact, "UserSupplied"};
    r.lower_provenance = Provenance::UserSupplied;
  } else {
    r.apartment_confdim = floor;
    r.lower = r.vcd_floor;
  }
  r.upper_numerator = Measured{1 + e_q.value, e_q.uncertainty, false, e_q.exact, e_q.method};
  if (opts.lambda) {
    r.upper = building_hausdim_upper(M, e_q, *opts.lambda);
    r.upper->method = opts.lambda->bourdon ? "BourdonPreset" : "UserSupplied";
    r.upper_provenance = opts.lambda->bourdon ? Provenance::BourdonPreset : Provenance::UserSupplied;
  }
  if (auto f = fuchsian_report(spec, e_q)) r.fuchsian = f->confdim;
  return r;
}

ConfdimBoundsReport confdim_bounds(const RegularBuildingSpec& spec, const ConfdimOptions& opts) {
  require_hyperbolic(spec.matrix);
  require_thick(spec);
  return confdim_bounds(spec, rate_of(spec, opts.growth), vcd_real(spec.matrix).d, opts);
}

bool fuchsian_detected(const CoxeterMatrix& M) {
  const auto v = is_type_PM(M);
  return v.top_dimension == 1 && v.pseudomanifold && v.gallery_connected && moussong_hyperbolic(M).hyperbolic;
}

std::optional<FuchsianReport> fuchsian_report(const RegularBuildingSpec& spec, const Measured& e_q) {
  if (!fuchsian_detected(spec.matrix)) return std::nullopt;
  require_thick(spec);
  require_positive(e_q);
  FuchsianReport r;
  r.confdim = reciprocal_plus_one(e_q);
  r.confdim.method = "FuchsianExact";
  r.table = {
      {1, "p < Confdim", "= 0"},
      {2, "p < Confdim", "reduced != 0"},
      {1, "p > Confdim", "!= 0"},
      {2, "p > Confdim", "= 0"},
  };
  return r;
}

std::optional<FuchsianReport> fuchsian_report(const RegularBuildingSpec& spec, const GrowthOptions& opts) {
  if (!fuchsian_detected(spec.matrix)) return std::nullopt;
  return fuchsian_report(spec, rate_of(spec, opts));
}

}  // namespace coxinv
