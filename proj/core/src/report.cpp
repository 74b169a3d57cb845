#include "coxinv/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "json.hpp"

#include "coxinv/classification.hpp"
#include "coxinv/davis.hpp"
#include "coxinv/enumeration_cache.hpp"
#include "coxinv/error.hpp"
#include "coxinv/graph_product_building.hpp"

#ifndef COXINV_VERSION_STRING
#define COXINV_VERSION_STRING "0.0.0"
#endif

namespace coxinv {

using json = nlohmann::ordered_json;

std::string_view version() { return COXINV_VERSION_STRING; }

// ---------------------------------------------------------------- input

Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  auto bad = [&]() -> Rational { fail(ErrorKind::BadEntry, "not a rational number: '" + s + "'"); };
  if (s.empty()) return bad();
  Rational r;
  try {
    if (const auto dot = s.find('.'); dot != std::string::npos) {
      std::string digits = s.substr(0, dot) + s.substr(dot + 1);
      const std::size_t decimals = s.size() - dot - 1;
      if (decimals == 0 || digits.find_first_not_of("+-0123456789") != std::string::npos) return bad();
      mpz_class den = 1;
      for (std::size_t i = 0; i < decimals; ++i) den *= 10;
      r = Rational(mpz_class(digits), den);
    } else {
      if (s.find_first_not_of("+-0123456789/") != std::string::npos) return bad();
      r = Rational(s);
    }
  } catch (const std::invalid_argument&) {
    return bad();
  }
  if (r.get_den() == 0) return bad();
  r.canonicalize();
  return r;
}

std::vector<Rational> parse_p_grid(std::string_view text) {
  std::vector<Rational> out;
  std::string item;
  std::istringstream in{std::string(text)};
  while (std::getline(in, item, ',')) {
    const Rational p = parse_rational(item);
    if (p <= 1) fail(ErrorKind::BadEntry, "p-grid values must exceed 1");
    out.push_back(p);
  }
  if (out.empty()) fail(ErrorKind::BadEntry, "empty p-grid");
  return out;
}

VisualParameter parse_lambda(std::string_view text) {
  if (text == "bourdon") return VisualParameter::bourdon_preset();
  double v = 0;
  try {
    std::size_t used = 0;
    v = std::stod(std::string(text), &used);
    if (used != text.size()) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    fail(ErrorKind::BadEntry, "lambda must be a number > 1 or \"bourdon\"");
  }
  return VisualParameter::of(v);
}

InputDocument parse_input(std::string_view text) {
  InputDocument in{parse_coxeter_matrix(text), std::nullopt, std::nullopt, std::nullopt};
  const auto doc = nlohmann::json::parse(text);
  const auto& M = in.matrix;
  if (auto it = doc.find("thickness"); it != doc.end()) {
    ThicknessVector q;
    if (it->is_number_integer()) {
      q = ThicknessVector::uniform(M, it->get<std::int64_t>());
    } else if (it->is_object()) {
      q.values.assign(M.rank(), 0);
      for (const auto& [name, v] : it->items()) {
        const int s = M.index_of(name);
        if (s < 0) fail(ErrorKind::UnknownGenerator, "thickness names unknown generator '" + name + "'");
        if (!v.is_number_integer()) fail(ErrorKind::SchemaError, "thickness values must be integers");
        q.values[s] = v.get<std::int64_t>();
      }
      for (int s = 0; s < M.rank(); ++s)
        if (q.values[s] == 0 && !it->contains(M.name(s)))
          fail(ErrorKind::SchemaError, "thickness is missing generator '" + M.name(s) + "'");
    } else {
      fail(ErrorKind::SchemaError, "'thickness' must map generators to integers");
    }
    q.validate(M);
    in.thickness = std::move(q);
  }
  if (auto it = doc.find("lambda"); it != doc.end()) {
    if (it->is_string())
      in.lambda = parse_lambda(it->get<std::string>());
    else if (it->is_number())
      in.lambda = VisualParameter::of(it->get<double>());
    else
      fail(ErrorKind::SchemaError, "'lambda' must be a number or \"bourdon\"");
  }
  if (auto it = doc.find("apartment_confdim"); it != doc.end()) {
    if (!it->is_number()) fail(ErrorKind::SchemaError, "'apartment_confdim' must be a number");
    in.apartment_confdim = it->get<double>();
    if (*in.apartment_confdim < 0) fail(ErrorKind::BadEntry, "apartment_confdim must be non-negative");
  }
  return in;
}

InputDocument load_input(const std::filesystem::path& file) {
  std::ifstream f(file);
  if (!f) fail(ErrorKind::SchemaError, "cannot read input file " + file.string());
  std::stringstream buf;
  buf << f.rdbuf();
  return parse_input(buf.str());
}

// ---------------------------------------------------------------- values

ReportValue ReportValue::boolean(bool b) {
  ReportValue v;
  v.kind = Kind::Bool;
  v.flag = b;
  return v;
}

ReportValue ReportValue::integral(std::int64_t i) {
  ReportValue v;
  v.kind = Kind::Integer;
  v.integer = i;
  return v;
}

ReportValue ReportValue::string(std::string s) {
  ReportValue v;
  v.kind = Kind::Text;
  v.text = std::move(s);
  return v;
}

ReportValue ReportValue::real(Measured m) {
  ReportValue v;
  v.kind = Kind::Number;
  v.number = std::move(m);
  return v;
}

ReportValue ReportValue::list(std::vector<ReportValue> items) {
  ReportValue v;
  v.kind = Kind::List;
  v.items = std::move(items);
  return v;
}

ReportValue ReportValue::record() {
  ReportValue v;
  v.kind = Kind::Record;
  return v;
}

ReportValue& ReportValue::add(std::string key, ReportValue v) {
  if (kind != Kind::Record) fail(ErrorKind::Internal, "add on a non-record report value");
  fields.emplace_back(std::move(key), std::move(v));
  return *this;
}

const ReportValue* ReportValue::find(std::string_view key) const {
  for (const auto& [k, v] : fields)
    if (k == key) return &v;
  return nullptr;
}

namespace {

std::string format_double(double x) {
  if (std::isinf(x)) return x > 0 ? "Infinity" : "-Infinity";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

std::string format_measured(const Measured& m) {
  if (m.infinite) return "Infinity (" + m.method + ")";
  if (m.exact) return format_double(m.value) + " (Exact)";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2g", m.uncertainty);
  return format_double(m.value) + " ± " + (std::isinf(m.uncertainty) ? "Infinity" : buf) + " (" + m.method + ")";
}

bool scalar(const ReportValue& v) { return v.kind != ReportValue::Kind::List && v.kind != ReportValue::Kind::Record; }

std::string scalar_text(const ReportValue& v) {
  switch (v.kind) {
    case ReportValue::Kind::Null: return "none";
    case ReportValue::Kind::Bool: return v.flag ? "true" : "false";
    case ReportValue::Kind::Integer: return std::to_string(v.integer);
    case ReportValue::Kind::Text: return v.text;
    case ReportValue::Kind::Number: return format_measured(v.number);
    default: return "";
  }
}

void emit_text(std::ostringstream& out, const ReportValue& v, int indent) {
  const std::string pad(indent, ' ');
  if (v.kind == ReportValue::Kind::Record) {
    for (const auto& [k, f] : v.fields) {
      if (scalar(f)) {
        out << pad << k << ": " << scalar_text(f) << '\n';
      } else if (f.kind == ReportValue::Kind::List &&
                 std::all_of(f.items.begin(), f.items.end(), [](const ReportValue& x) { return scalar(x); })) {
        out << pad << k << ": [";
        for (std::size_t i = 0; i < f.items.size(); ++i) out << (i ? ", " : "") << scalar_text(f.items[i]);
        out << "]\n";
      } else {
        out << pad << k << ":\n";
        emit_text(out, f, indent + 2);
      }
    }
  } else if (v.kind == ReportValue::Kind::List) {
    for (const auto& item : v.items) {
      if (scalar(item)) {
        out << pad << "- " << scalar_text(item) << '\n';
      } else {
        out << pad << "-\n";
        emit_text(out, item, indent + 2);
      }
    }
  } else {
    out << pad << scalar_text(v) << '\n';
  }
}

json real_to_json(double x) {
  if (std::isinf(x)) return x > 0 ? "Infinity" : "-Infinity";
  return x;
}

double real_from_json(const json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "Infinity") return std::numeric_limits<double>::infinity();
    if (s == "-Infinity") return -std::numeric_limits<double>::infinity();
    fail(ErrorKind::SchemaError, "bad number '" + s + "' in machine report");
  }
  if (!j.is_number()) fail(ErrorKind::SchemaError, "expected a number in machine report");
  return j.get<double>();
}

json to_json(const ReportValue& v) {
  switch (v.kind) {
    case ReportValue::Kind::Null: return nullptr;
    case ReportValue::Kind::Bool: return v.flag;
    case ReportValue::Kind::Integer: return v.integer;
    case ReportValue::Kind::Text: return v.text;
    case ReportValue::Kind::Number: {
      json j = json::object();
      j["value"] = v.number.infinite ? json("Infinity") : real_to_json(v.number.value);
      j["uncertainty"] = real_to_json(v.number.uncertainty);
      j["exact"] = v.number.exact;
      j["method"] = v.number.method;
      return j;
    }
    case ReportValue::Kind::List: {
      json j = json::array();
      for (const auto& x : v.items) j.push_back(to_json(x));
      return j;
    }
    case ReportValue::Kind::Record: {
      json j = json::object();
      for (const auto& [k, x] : v.fields) j[k] = to_json(x);
      return j;
    }
  }
  return nullptr;
}

bool measured_shape(const json& j) {
  return j.is_object() && j.size() == 4 && j.contains("value") && j.contains("uncertainty") && j.contains("exact") &&
         j.contains("method");
}

ReportValue from_json(const json& j) {
  if (j.is_null()) return ReportValue{};
  if (j.is_boolean()) return ReportValue::boolean(j.get<bool>());
  if (j.is_number_integer()) return ReportValue::integral(j.get<std::int64_t>());
  if (j.is_string()) return ReportValue::string(j.get<std::string>());
  if (measured_shape(j)) {
    Measured m;
    const auto& value = j["value"];
    m.infinite = value.is_string() && value.get<std::string>() == "Infinity";
    m.value = m.infinite ? 0 : real_from_json(value);
    m.uncertainty = real_from_json(j["uncertainty"]);
    m.exact = j["exact"].get<bool>();
    m.method = j["method"].get<std::string>();
    return ReportValue::real(std::move(m));
  }
  if (j.is_array()) {
    auto v = ReportValue::list();
    for (const auto& x : j) v.items.push_back(from_json(x));
    return v;
  }
  if (j.is_object()) {
    auto v = ReportValue::record();
    for (const auto& [k, x] : j.items()) v.add(k, from_json(x));
    return v;
  }
  fail(ErrorKind::SchemaError, "bare floating-point value in machine report");
}

}  // namespace

std::string InvariantReport::to_text() const {
  std::ostringstream out;
  emit_text(out, root, 0);
  return out.str();
}

std::string InvariantReport::to_machine() const { return to_json(root).dump(2) + "\n"; }

InvariantReport parse_machine(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::SchemaError, std::string("malformed machine report: ") + e.what());
  }
  if (!j.is_object()) fail(ErrorKind::SchemaError, "machine report must be an object");
  InvariantReport r;
  r.root = from_json(j);
  return r;
}

// ---------------------------------------------------------------- sections

namespace {

using V = ReportValue;

V text(std::string s) { return V::string(std::move(s)); }
V boolean(bool b) { return V::boolean(b); }
V integer(std::int64_t i) { return V::integral(i); }
V real(Measured m) { return V::real(std::move(m)); }

V subset_list(const CoxeterMatrix& M, const std::vector<Subset>& sets) {
  auto l = V::list();
  for (Subset T : sets) l.items.push_back(text(M.format_subset(T)));
  return l;
}

V integer_list(const std::vector<std::uint64_t>& xs) {
  auto l = V::list();
  for (auto x : xs) l.items.push_back(integer(static_cast<std::int64_t>(x)));
  return l;
}

V skipped(const Error& e) {
  auto r = V::record();
  r.add("skipped", text(std::string(to_string(e.kind())) + ": " + e.what()));
  return r;
}

/// Section-level preconditions that make a report section inapplicable
/// rather than the whole run invalid.
bool section_precondition(ErrorKind k) {
  switch (k) {
    case ErrorKind::NotHyperbolic:
    case ErrorKind::AffineDegenerate:
    case ErrorKind::NotRightAngled:
    case ErrorKind::ThinBuilding:
    case ErrorKind::NoWitness:
    case ErrorKind::DegenerateWeights:
      return true;
    default:
      return false;
  }
}

GrowthOptions growth_options(const ReportOptions& opts) {
  GrowthOptions g;
  g.depth = opts.depth;
  g.series.limits = opts.limits;
  return g;
}

/// Shared lazily computed values, so that cmd_report computes every
/// expensive invariant once.
class Context {
 public:
  Context(const InputDocument& in, const ReportOptions& opts) : in_(in), opts_(opts), gopts_(growth_options(opts)) {
    if (in.thickness) spec_.emplace(in.matrix, *in.thickness);
  }

  const CoxeterMatrix& M() const { return in_.matrix; }
  const InputDocument& input() const { return in_; }
  const ReportOptions& options() const { return opts_; }
  const GrowthOptions& growth() const { return gopts_; }

  const RegularBuildingSpec& spec() const {
    if (!spec_) fail(ErrorKind::SchemaError, "this section needs a 'thickness' map in the input");
    return *spec_;
  }
  bool has_thickness() const { return spec_.has_value(); }
  bool finite() const { return is_finite_parabolic(M(), full_set(M().rank())); }

  const RationalGrowthSeries& series() {
    if (!series_) series_ = rational_growth_series(M(), false, gopts_.series);
    return *series_;
  }

  const GrowthRateEstimate& e_series() {
    if (!e_series_) {
      const std::vector<double> ones(1, 1.0);
      e_series_ = series_growth_rate(series(), ones, gopts_.scan_step, gopts_.tolerance);
    }
    return *e_series_;
  }

  /// Sphere counts at the fit depth, through the cache when configured;
  /// the depth shrinks when the element cap is hit.
  const SphereCounts& counts() {
    if (counts_) return *counts_;
    std::optional<EnumerationCache> cache;
    if (opts_.cache_dir) cache.emplace(*opts_.cache_dir);
    const std::string source = M().right_angled() ? "descent-transfer" : "ball-enumeration";
    for (int depth = opts_.depth;; depth -= 2) {
      if (cache)
        if (auto hit = cache->lookup(M().digest(), depth, source)) {
          counts_ = std::move(*hit);
          return *counts_;
        }
      try {
        counts_ = sphere_counts_for(M(), depth, opts_.limits);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::ResourceExceeded || depth - 2 < 6) throw;
        continue;
      }
      if (cache) cache->store(M().digest(), *counts_);
      return *counts_;
    }
  }

  const GrowthRateEstimate& e_fit() {
    if (!e_fit_) {
      const auto& c = counts();
      const std::vector<double> ones(static_cast<std::size_t>(std::max(c.num_classes, 1)), 1.0);
      if (finite() || c.exhausted) {
        e_fit_.emplace();
        e_fit_->method = GrowthMethod::EnumerationFit;
        e_fit_->exact_zero = true;
        e_fit_->depth = c.radius;
      } else {
        e_fit_ = enumeration_fit(c, ones);
      }
    }
    return *e_fit_;
  }

  /// e_q(W); nullopt when it is infinite.
  const std::optional<GrowthRateEstimate>& e_q() {
    if (!e_q_computed_) {
      e_q_computed_ = true;
      try {
        e_q_ = growth_rate(M(), spec().weights(), gopts_);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::DegenerateWeights) throw;
      }
    }
    return e_q_;
  }

  Measured e_q_measured() {
    const auto& e = e_q();
    return e ? measure(*e) : Measured::infinity("DegenerateWeights");
  }

  const VcdResult& vcd() {
    if (!vcd_) vcd_ = vcd_real(M());
    return *vcd_;
  }

  std::optional<VisualParameter> lambda() const { return opts_.lambda ? opts_.lambda : in_.lambda; }
  std::optional<double> apartment_confdim() const {
    return opts_.apartment_confdim ? opts_.apartment_confdim : in_.apartment_confdim;
  }

 private:
  const InputDocument& in_;
  const ReportOptions& opts_;
  GrowthOptions gopts_;
  std::optional<RegularBuildingSpec> spec_;
  std::optional<RationalGrowthSeries> series_;
  std::optional<GrowthRateEstimate> e_series_;
  std::optional<SphereCounts> counts_;
  std::optional<GrowthRateEstimate> e_fit_;
  std::optional<GrowthRateEstimate> e_q_;
  bool e_q_computed_ = false;
  std::optional<VcdResult> vcd_;
};

V input_section(const InputDocument& in) {
  auto r = V::record();
  r.add("digest", text(in.matrix.digest()));
  r.add("rank", integer(in.matrix.rank()));
  auto gens = V::list();
  for (const auto& g : in.matrix.generators()) gens.items.push_back(text(g));
  r.add("generators", std::move(gens));
  if (in.thickness) {
    auto q = V::record();
    for (int s = 0; s < in.matrix.rank(); ++s) q.add(in.matrix.name(s), integer(in.thickness->values[s]));
    r.add("thickness", std::move(q));
  } else {
    r.add("thickness", V{});
  }
  return r;
}

V classify_section(Context& cx) {
  const auto& M = cx.M();
  const auto type = classify_system(M);
  const bool finite = type.finite();
  const bool affine = is_affine_system(M);
  const auto hyp = moussong_hyperbolic(M);
  auto r = V::record();
  r.add("type", text(type.label()));
  r.add("kind", text(finite ? "finite" : affine ? "affine" : "other"));
  auto comps = V::list();
  for (const auto& c : type.components) comps.items.push_back(text(c.label));
  r.add("components", std::move(comps));
  r.add("finite", boolean(finite));
  r.add("affine", boolean(affine));
  r.add("right_angled", boolean(M.right_angled()));
  r.add("hyperbolic", boolean(hyp.hyperbolic));
  if (hyp.obstruction) {
    auto o = V::record();
    o.add("kind", text(std::string(to_string(hyp.obstruction->kind))));
    o.add("T1", text(M.format_subset(hyp.obstruction->T1)));
    if (hyp.obstruction->kind == ObstructionKind::CommutingInfinitePair)
      o.add("T2", text(M.format_subset(hyp.obstruction->T2)));
    o.add("verified", boolean(verify_obstruction(M, *hyp.obstruction)));
    r.add("obstruction", std::move(o));
  }
  const std::string hyperbolic = hyp.hyperbolic ? "hyperbolic" : "not hyperbolic";
  std::string summary;
  if (finite)
    summary = "finite (" + type.label() + ")";
  else if (affine)
    summary = "affine (" + type.label() + "), " + hyperbolic;
  else
    summary = "infinite, non-affine, " + hyperbolic;
  r.add("summary", text(summary));
  r.add("conjugacy_classes", subset_list(M, generator_conjugacy_classes(M)));
  return r;
}

V nerve_section(Context& cx) {
  const auto& M = cx.M();
  const auto N = nerve(M);
  auto r = V::record();
  r.add("dimension", integer(N.complex.dimension()));
  r.add("f_vector", integer_list([&] {
          std::vector<std::uint64_t> f;
          for (auto x : N.complex.f_vector()) f.push_back(x);
          return f;
        }()));
  r.add("maximal_simplices", subset_list(M, N.maximal));

  const auto pm = pm_verdict(N.complex);
  auto p = V::record();
  p.add("purely_dimensional", boolean(pm.purely_dimensional));
  p.add("pseudomanifold", boolean(pm.pseudomanifold));
  p.add("gallery_connected", boolean(pm.gallery_connected));
  p.add("orientable", boolean(pm.orientable));
  p.add("type_pm", boolean(pm.type_pm()));
  r.add("pm", std::move(p));

  const auto& v = cx.vcd();
  auto d = V::record();
  d.add("vcd", integer(v.d));
  d.add("vcd_spherical", integer(v.d_spherical));
  d.add("vcd_cospherical", integer(v.d_cospherical));
  auto ws = V::list();
  for (const auto& w : v.witnesses) {
    auto x = V::record();
    x.add("T", text(M.format_subset(w.T)));
    x.add("rank", integer(static_cast<std::int64_t>(w.rank)));
    x.add("spherical", boolean(w.spherical));
    x.add("cospherical", boolean(w.cospherical));
    ws.items.push_back(std::move(x));
  }
  d.add("witnesses", std::move(ws));
  r.add("vcd", std::move(d));
  if (pm.type_pm()) r.add("vcd_equals_nerve_dimension_plus_one", boolean(v.d == N.complex.dimension() + 1));

  if (cx.has_thickness()) {
    try {
      const auto& full = cx.e_q();
      const auto b = bestvina_support(M, cx.spec().thickness, v, cx.growth(), full ? &*full : nullptr);
      auto x = V::record();
      x.add("F0", text(M.format_subset(b.F0)));
      x.add("S0", text(M.format_subset(b.S0)));
      x.add("refined_rate", real(measure(b.refined_rate)));
      r.add("bestvina", std::move(x));
    } catch (const Error& e) {
      if (!section_precondition(e.kind())) throw;
      r.add("bestvina", skipped(e));
    }
  }
  return r;
}

V growth_section(Context& cx) {
  const auto& M = cx.M();
  auto r = V::record();
  const auto& s = cx.series();
  auto sr = V::record();
  sr.add("numerator", text(s.numerator.to_string(s.variables)));
  sr.add("denominator", text(s.denominator.to_string(s.variables)));
  sr.add("validated_depth", integer(s.validated_depth));
  r.add("series", std::move(sr));

  const auto& counts = cx.counts();
  r.add("sphere_totals", integer_list(counts.totals()));
  r.add("counts_source", text(counts.source));

  const auto es = measure(cx.e_series());
  const auto ef = measure(cx.e_fit());
  auto e = V::record();
  e.add("series", real(es));
  e.add("fit", real(ef));
  e.add("fit_depth", integer(cx.e_fit().depth ? cx.e_fit().depth : counts.radius));
  e.add("methods_agree", boolean(std::abs(es.value - ef.value) <= es.uncertainty + ef.uncertainty));
  r.add("e_W", std::move(e));

  if (cx.has_thickness()) {
    r.add("e_q", real(cx.e_q_measured()));
    const auto t = cx.spec().weights();
    if (!t.any_unit() && !cx.finite()) {
      const auto b = rate_comparison_bounds(M, t, cx.growth());
      auto x = V::record();
      x.add("lower", real(Measured{b.lower, b.uncertainty, false, false, "Comparison"}));
      x.add("upper", real(Measured{b.upper, b.uncertainty, false, false, "Comparison"}));
      r.add("e_q_bounds", std::move(x));
    }
  }
  return r;
}

V exponents_section(Context& cx) {
  const auto& spec = cx.spec();
  const Measured eq = cx.e_q_measured();
  const auto c = critical_exponents(spec, eq);
  auto r = V::record();
  r.add("e_q", real(c.e_q));
  r.add("p_homology", real(c.p_homology));
  r.add("p_cohomology", real(c.p_cohomology));
  r.add("pm_grade", boolean(c.pm_grade));
  r.add("affine", boolean(c.affine));
  r.add("finite", boolean(c.finite));
  r.add("thin", boolean(c.thin));
  if (c.thin) r.add("warning", text("ThinBuilding: some q_s = 1; the exponents assume q >= 2"));

  GrowthRateEstimate est;
  if (cx.e_q())
    est = *cx.e_q();
  else
    est.value = std::numeric_limits<double>::infinity();
  const int depth = cx.counts().radius;
  auto grid = V::list();
  for (const auto& p : cx.options().p_grid) {
    const auto n = lp_pullback_norm(spec, p, depth, est, cx.options().limits);
    auto row = V::record();
    row.add("p", text(p.get_str()));
    row.add("verdict", text(std::string(to_string(n.verdict))));
    const bool exact = !n.exact_partial_sums.empty();
    row.add("partial_sum", real(Measured{n.partial_sums.back(), n.partial_sum_error.back(), false, exact,
                                         exact ? "Exact" : "MPFR"}));
    row.add("depth", integer(depth));
    grid.items.push_back(std::move(row));
  }
  r.add("p_grid", std::move(grid));
  return r;
}

V confdim_section(Context& cx) {
  ConfdimOptions co;
  co.lambda = cx.lambda();
  co.apartment_confdim = cx.apartment_confdim();
  co.growth = cx.growth();
  const auto b = confdim_bounds(cx.spec(), cx.e_q_measured(), cx.vcd().d, co);
  auto r = V::record();
  r.add("e_q", real(b.e_q));
  r.add("factor", real(b.factor));
  r.add("vcd", integer(b.vcd));
  r.add("apartment_confdim", real(Measured::exact_value(b.apartment_confdim, std::string(to_string(b.apartment_provenance)))));
  r.add("apartment_provenance", text(std::string(to_string(b.apartment_provenance))));
  r.add("lower", real(b.lower));
  r.add("lower_provenance", text(std::string(to_string(b.lower_provenance))));
  r.add("vcd_floor", real(b.vcd_floor));
  if (b.upper) {
    r.add("upper", real(*b.upper));
    r.add("upper_provenance", text(std::string(to_string(*b.upper_provenance))));
    r.add("lambda", co.lambda->bourdon ? text("bourdon") : real(Measured::exact_value(*co.lambda->value, "UserSupplied")));
  } else {
    r.add("upper", text("(1 + e_q)/log(lambda)"));
  }
  r.add("upper_numerator", real(b.upper_numerator));
  if (auto f = fuchsian_report(cx.spec(), b.e_q)) {
    auto x = V::record();
    x.add("confdim", real(f->confdim));
    x.add("detection", text(f->detection));
    auto rows = V::list();
    for (const auto& row : f->table) {
      auto t = V::record();
      t.add("degree", integer(row.degree));
      t.add("range", text(row.range));
      t.add("status", text(row.status));
      rows.items.push_back(std::move(t));
    }
    x.add("table", std::move(rows));
    r.add("fuchsian", std::move(x));
  } else {
    r.add("fuchsian", V{});
  }
  return r;
}

V oracle_section(Context& cx, int radius) {
  const auto B = build_graph_product(cx.spec(), radius, cx.options().limits);
  OracleOptions o;
  o.trials = cx.options().oracle_trials;
  const auto v = verify_oracle(B, o);
  auto r = V::record();
  r.add("radius", integer(v.radius));
  r.add("chambers", integer(static_cast<std::int64_t>(v.chambers)));
  r.add("sphere_totals", integer_list(v.sphere_totals));
  r.add("elements_checked", integer(static_cast<std::int64_t>(v.elements_checked)));
  r.add("sphere_counts", boolean(v.sphere_counts_ok));
  r.add("panels", boolean(v.definition.panels_ok));
  r.add("w_distance", boolean(v.definition.distance_ok));
  r.add("boundary_squared_zero", boolean(v.boundary_squared_ok));
  r.add("pullback_commutes", boolean(v.pullback_commutes_ok));
  r.add("pushforward_commutes", boolean(v.pushforward_commutes_ok));
  r.add("pushforward_pullback_identity", boolean(v.identity_ok));
  r.add("projection_idempotent", boolean(v.idempotent_ok));
  auto j = V::record();
  for (const auto& [p, n] : v.jensen_passes) j.add(p, integer(static_cast<std::int64_t>(n)));
  r.add("jensen_trials", integer(static_cast<std::int64_t>(v.jensen_trials)));
  r.add("jensen_passes", std::move(j));
  r.add("all_ok", boolean(v.all_ok()));
  return r;
}

int oracle_radius(const ReportOptions& opts) { return opts.radius.value_or(4); }

}  // namespace

ReportValue cmd_classify(const InputDocument& in, const ReportOptions& opts) {
  Context cx(in, opts);
  return classify_section(cx);
}

ReportValue cmd_nerve(const InputDocument& in, const ReportOptions& opts) {
  Context cx(in, opts);
  return nerve_section(cx);
}

ReportValue cmd_growth(const InputDocument& in, const ReportOptions& opts) {
  Context cx(in, opts);
  return growth_section(cx);
}

ReportValue cmd_exponents(const InputDocument& in, const ReportOptions& opts) {
  Context cx(in, opts);
  return exponents_section(cx);
}

ReportValue cmd_confdim(const InputDocument& in, const ReportOptions& opts) {
  Context cx(in, opts);
  return confdim_section(cx);
}

ReportValue cmd_verify_oracle(const InputDocument& in, const ReportOptions& opts) {
  Context cx(in, opts);
  return oracle_section(cx, oracle_radius(opts));
}

InvariantReport single_section(const InputDocument& in, std::string name, ReportValue section) {
  InvariantReport r;
  r.root.add("tool", text("coxinv " + std::string(version())));
  r.root.add("input", input_section(in));
  r.root.add(std::move(name), std::move(section));
  return r;
}

InvariantReport cmd_report(const InputDocument& in, const ReportOptions& opts) {
  Context cx(in, opts);
  InvariantReport r;
  r.root.add("tool", text("coxinv " + std::string(version())));
  r.root.add("input", input_section(in));

  auto timings = V::record();
  auto stage = [&](const std::string& name, const std::function<V()>& run) {
    const auto t0 = std::chrono::steady_clock::now();
    V section;
    try {
      section = run();
    } catch (const Error& e) {
      if (!section_precondition(e.kind())) throw;
      section = skipped(e);
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    timings.add(name, real(Measured{secs, 0, false, false, "WallClock"}));
    r.root.add(name, std::move(section));
  };

  auto notes = V::list();
  if (cx.finite()) notes.items.push_back(text("finite Weyl group: all higher invariants trivial"));
  if (in.thickness && in.thickness->thin())
    notes.items.push_back(text("ThinBuilding: some q_s = 1; the exponents assume q >= 2"));

  stage("classification", [&] { return classify_section(cx); });
  stage("nerve", [&] { return nerve_section(cx); });
  stage("growth", [&] { return growth_section(cx); });
  if (in.thickness) {
    stage("exponents", [&] { return exponents_section(cx); });
    stage("confdim", [&] { return confdim_section(cx); });
    if (opts.radius) {
      stage("oracle", [&] { return oracle_section(cx, *opts.radius); });
    } else {
      r.root.add("oracle", V{});
    }
  } else {
    notes.items.push_back(text("no thickness given: building sections omitted"));
  }
  r.root.add("notes", std::move(notes));
  if (opts.timings) r.root.add("timings", std::move(timings));
  return r;
}

}  // namespace coxinv
