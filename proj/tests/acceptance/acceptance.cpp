// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "coxinv/building.hpp"
#include "coxinv/davis.hpp"
#include "coxinv/enumeration.hpp"
#include "coxinv/error.hpp"
#include "coxinv/graph_product_building.hpp"
#include "coxinv/growth.hpp"
#include "coxinv/homology.hpp"
#include "coxinv/hyperbolic.hpp"
#include "coxinv/report.hpp"
#include "oracles/frozen.hpp"
#include "oracles/oracles.hpp"

using namespace coxinv;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

int failures = 0;

void criterion(int n, const std::string& title, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail << " [exception: " << e.what() << "]";
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!o.pass) ++failures;
  std::printf("criterion %2d %s: %s%s (%.1f s)\n", n, o.pass ? "PASS" : "FAIL", title.c_str(), o.detail.str().c_str(),
              secs);
  std::fflush(stdout);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

RegularBuildingSpec uniform(const CoxeterMatrix& M, std::int64_t q) {
  return RegularBuildingSpec(M, ThicknessVector::uniform(M, q));
}

oracle::Matrix plain(const CoxeterMatrix& M) {
  oracle::Matrix m(M.rank(), std::vector<int>(M.rank()));
  for (int s = 0; s < M.rank(); ++s)
    for (int t = 0; t < M.rank(); ++t) m[s][t] = M.m(s, t);
  return m;
}

std::vector<Rational> grid() {
  return {Rational(3, 2), Rational(2), Rational(9, 4), Rational(5, 2), Rational(11, 4), Rational(3), Rational(4)};
}

}  // namespace

int main() {
  criterion(1, "growth series expansion equals breadth-first counts through length 12", [](Outcome& o) {
    const std::vector<std::pair<std::string, CoxeterMatrix>> systems_{
        {"D_inf", systems::infinite_dihedral()},
        {"A2", systems::dihedral(3)},
        {"(3,3,3)", systems::triangle(3, 3, 3)},
        {"pentagon", systems::right_angled_polygon(5)},
        {"square", systems::right_angled_polygon(4)},
        {"D_inf x D_inf", frozen::commuting_dihedrals()},
    };
    for (const auto& [name, M] : systems_) {
      const auto t0 = std::chrono::steady_clock::now();
      SeriesOptions so;
      so.validation_depth = 0;  // the comparison below is the validation
      const auto series = rational_growth_series(M, false, so);
      const auto parts = series.expansion(12);
      const auto ball = ball_enumerate(ReflectionRepresentation(M), 12);
      auto sizes = ball.layer_sizes();
      sizes.resize(13, 0);
      bool equal = true;
      for (int k = 0; k <= 12; ++k) equal = equal && parts[k].coefficient({k}) == Rational(sizes[k]);
      const double secs = seconds_since(t0);
      o.check(equal, name + " coefficients");
      o.check(secs < 60, name + " time");
      o.detail << ' ' << name << "=" << (equal ? "ok" : "mismatch");
    }
  });

  criterion(2, "pentagon growth rate by series singularity and by enumeration fit", [](Outcome& o) {
    const auto M = systems::right_angled_polygon(5);
    const double target = std::log((3 + std::sqrt(5.0)) / 2);
    const auto s = length_growth_rate(M);
    GrowthOptions fo;
    fo.method = GrowthMethod::EnumerationFit;
    fo.depth = 20;
    const auto f = length_growth_rate(M, fo);
    o.detail << " series=" << s.value << " fit=" << f.value << "+-" << f.uncertainty;
    o.check(s.method == GrowthMethod::SeriesSingularity && std::abs(s.value - target) < 1e-3, "series");
    o.check(f.method == GrowthMethod::EnumerationFit && std::abs(f.value - target) < 5e-2, "fit");
    o.check(std::abs(s.value - f.value) < 5e-2, "methods agree");
  });

  criterion(3, "pentagon q = 2 critical exponents and p-grid verdicts", [](Outcome& o) {
    const auto M = systems::right_angled_polygon(5);
    const auto spec = uniform(M, 2);
    const auto c = critical_exponents(spec);
    const double e = std::log((3 + std::sqrt(5.0)) / 2);
    o.detail << " p_homology=" << c.p_homology.value << " p_cohomology=" << c.p_cohomology.value;
    o.check(std::abs(c.p_homology.value - (1 + e / std::log(2.0))) < 1e-3, "p_homology");
    o.check(std::abs(c.p_cohomology.value - 1.7202) < 1e-3, "p_cohomology");
    const double lo = c.p_homology.lower(), hi = c.p_homology.upper();
    GrowthRateEstimate rate;
    rate.value = c.e_q.value;
    rate.uncertainty = c.e_q.uncertainty;
    bool seen_converge = false;
    o.detail << " grid:";
    for (const auto& p : grid()) {
      const auto n = lp_pullback_norm(spec, p, 20, rate);
      const double pd = p.get_d();
      const auto& s = n.partial_sums;
      // growth of the last increments, independent of the rate estimate
      const double ratio = (s[20] - s[19]) / (s[19] - s[18]);
      o.detail << ' ' << p.get_str() << ':' << to_string(n.verdict);
      if (pd < lo) o.check(n.verdict == Convergence::Diverges && ratio > 1, "p=" + p.get_str() + " diverges");
      if (pd > hi) o.check(n.verdict == Convergence::Converges && ratio < 1, "p=" + p.get_str() + " converges");
      if (n.verdict == Convergence::Converges) seen_converge = true;
      if (seen_converge) o.check(n.verdict != Convergence::Diverges, "inversion at p=" + p.get_str());
    }
    o.check(seen_converge, "a convergent grid point");
  });

  criterion(4, "affine degeneracy of (3,3,3) with q = 2", [](Outcome& o) {
    const auto M = systems::triangle(3, 3, 3);
    const auto fit = enumeration_fit(M, WeightVector::uniform(M, 2), 30);
    const auto c = critical_exponents(uniform(M, 2));
    o.detail << " fit=" << fit.value << "+-" << fit.uncertainty << " e_q=" << c.e_q.value
             << " exponents=(" << c.p_homology.value << ", " << (c.p_cohomology.infinite ? "Infinity" : "finite") << ")";
    o.check(std::abs(fit.value) < 1e-2, "fit slope");
    o.check(fit.lower() <= 0 && c.e_q.lower() <= 0 && c.e_q.upper() >= 0, "bracket contains 0");
    o.check(c.p_homology.value == 1 && !c.p_homology.infinite, "p_homology = 1");
    o.check(c.p_cohomology.infinite, "p_cohomology = Infinity");
  });

  criterion(5, "pseudomanifold verdicts", [](Outcome& o) {
    const bool t333 = is_type_PM(systems::triangle(3, 3, 3)).type_pm();
    const bool pent = is_type_PM(systems::right_angled_polygon(5)).type_pm();
    const bool path = is_type_PM(frozen::path()).type_pm();
    const std::vector<Simplex> rp2{{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 1, 5},
                                   {1, 2, 4}, {1, 3, 4}, {1, 3, 5}, {2, 3, 5}, {2, 4, 5}};
    const auto K = SimplicialComplex::from_facets({"0", "1", "2", "3", "4", "5"}, rp2);
    const auto v = pm_verdict(K);
    o.detail << " (3,3,3)=" << t333 << " pentagon=" << pent << " path=" << path << " RP2 pm=" << v.pseudomanifold
             << " orientable=" << v.orientable;
    o.check(t333 && pent && !path, "nerve verdicts");
    o.check(v.pseudomanifold && !v.orientable, "projective plane");
  });

  criterion(6, "vcd against brute-force relative homology", [](Outcome& o) {
    const std::vector<std::pair<std::string, CoxeterMatrix>> cases{
        {"D_inf", systems::infinite_dihedral()},
        {"(3,3,3)", systems::triangle(3, 3, 3)},
        {"pentagon", systems::right_angled_polygon(5)},
    };
    const std::vector<int> expected{1, 2, 2};
    for (std::size_t i = 0; i < cases.size(); ++i) {
      const auto& [name, M] = cases[i];
      const int d = vcd_real(M).d;
      const int brute = oracle::vcd(plain(M));
      o.detail << ' ' << name << '=' << d;
      o.check(d == expected[i] && d == brute, name);
      if (is_type_PM(M).type_pm()) o.check(d == 1 + nerve(M).complex.dimension(), name + " 1 + dim nerve");
    }
  });

  criterion(7, "oracle battery on explicit buildings", [](Outcome& o) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto pent = verify_oracle(build_graph_product(uniform(systems::right_angled_polygon(5), 2), 4));
    const auto tree = verify_oracle(build_graph_product(uniform(systems::infinite_dihedral(), 2), 6));
    for (const auto* r : {&pent, &tree}) {
      o.detail << " R=" << r->radius << " chambers=" << r->chambers << " jensen";
      for (const auto& [p, n] : r->jensen_passes) o.detail << ' ' << p << ':' << n << '/' << r->jensen_trials;
      o.check(r->all_ok(), "battery at radius " + std::to_string(r->radius));
      o.check(r->jensen_trials == 1000, "1000 trials");
      for (const auto& [p, n] : r->jensen_passes) o.check(n == r->jensen_trials, "Jensen at p=" + p);
    }
    o.check(seconds_since(t0) < 300, "runtime");
  });

  criterion(8, "conformal dimension bounds for the pentagon building", [](Outcome& o) {
    const auto M = systems::right_angled_polygon(5);
    ConfdimOptions opts;
    opts.apartment_confdim = 1;
    opts.lambda = VisualParameter::bourdon_preset();
    const auto b = confdim_bounds(uniform(M, 2), opts);
    const auto f = fuchsian_report(uniform(M, 2));
    const double e = std::log((3 + std::sqrt(5.0)) / 2);
    const double target = 1 + std::log(2.0) / e;
    o.detail << " lower=" << b.lower.value << " upper=" << (b.upper ? b.upper->value : 0.0);
    o.check(b.upper.has_value(), "upper present");
    if (!b.upper) return;
    const double lo = std::min(b.lower.lower(), b.upper->lower());
    const double hi = std::max(b.lower.upper(), b.upper->upper());
    o.detail << " width=" << (hi - lo) / target;
    o.check(std::abs(b.lower.value - target) < 1e-6 * target && std::abs(b.upper->value - target) < 1e-6 * target,
            "value");
    o.check((hi - lo) / target < 1e-6, "relative width");
    o.check(f.has_value() && std::abs(f->confdim.value - b.lower.value) < 1e-3, "Fuchsian value");
  });

  criterion(9, "Moussong hyperbolicity with verified witnesses", [](Outcome& o) {
    o.check(moussong_hyperbolic(systems::right_angled_polygon(5)).hyperbolic, "pentagon hyperbolic");
    const std::vector<std::pair<std::string, CoxeterMatrix>> bad{
        {"(3,3,3)", systems::triangle(3, 3, 3)},
        {"(3,3,3)+cone", frozen::cone_333()},
        {"D_inf x D_inf", frozen::commuting_dihedrals()},
    };
    for (const auto& [name, M] : bad) {
      const auto v = moussong_hyperbolic(M);
      o.detail << ' ' << name << ':' << v.describe(M);
      o.check(!v.hyperbolic && v.obstruction && verify_obstruction(M, *v.obstruction), name);
    }
  });

  criterion(10, "report is bit-identical across runs and enumeration modes", [](Outcome& o) {
    const auto in = load_input(std::filesystem::path(COXINV_TEST_DATA) / "pentagon_fuchsian.json");
    ReportOptions opts;
    opts.limits = EnumerationLimits{};
    const auto a = cmd_report(in, opts).to_machine();
    const auto b = cmd_report(in, opts).to_machine();
    opts.limits.parallel = true;
    opts.limits.threads = 4;
    const auto c = cmd_report(in, opts).to_machine();
    o.detail << " bytes=" << a.size();
    o.check(a == b, "two sequential runs");
    o.check(a == c, "parallel run");
  });

  return failures == 0 ? 0 : 1;
}
