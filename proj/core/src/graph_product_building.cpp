#include "coxinv/graph_product_building.hpp"

#include <algorithm>
#include <deque>
#include <future>
#include <sstream>
#include <thread>

#include <boost/multiprecision/mpfr.hpp>

#include "coxinv/classification.hpp"
#include "coxinv/error.hpp"

namespace coxinv {

namespace {

using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<60>>;

/// Right multiplication by s^e in the graph product with factor orders `order`.
NormalForm multiply_raw(const CoxeterMatrix& M, NormalForm f, int s, int e, const std::vector<int>& order) {
  e %= order[s];
  if (e == 0) return f;
  for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i) {
    const int letter = f[i].letter;
    if (letter == s) {
      const int x = (f[i].exponent + e) % order[s];
      if (x == 0)
        f.erase(f.begin() + i);
      else
        f[i].exponent = static_cast<std::uint8_t>(x);
      return f;
    }
    if (!M.commute(letter, s)) break;
  }
  f.push_back(Syllable{static_cast<std::uint8_t>(s), static_cast<std::uint8_t>(e)});
  return f;
}

/// Lexicographically least shuffle: repeatedly take the smallest letter whose
/// non-commuting predecessors are all taken.
NormalForm canonical_raw(const CoxeterMatrix& M, const NormalForm& f) {
  const std::size_t n = f.size();
  std::vector<bool> taken(n, false);
  NormalForm out;
  out.reserve(n);
  for (std::size_t step = 0; step < n; ++step) {
    int best = -1;
    for (std::size_t i = 0; i < n; ++i) {
      if (taken[i]) continue;
      bool free = true;
      for (std::size_t j = 0; j < i && free; ++j)
        if (!taken[j] && !M.commute(f[j].letter, f[i].letter)) free = false;
      if (free && (best < 0 || f[i].letter < f[best].letter)) best = static_cast<int>(i);
    }
    taken[best] = true;
    out.push_back(f[best]);
  }
  return out;
}

std::vector<int> letters(const NormalForm& f) {
  std::vector<int> w;
  w.reserve(f.size());
  for (auto x : f) w.push_back(x.letter);
  return w;
}

std::string format_form(const CoxeterMatrix& M, const NormalForm& f) {
  if (f.empty()) return "1";
  std::string s;
  for (auto x : f) s += M.name(x.letter) + "^" + std::to_string(x.exponent);
  return s;
}

std::string format_word(const CoxeterMatrix& M, const std::vector<int>& w) {
  if (w.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "." : "") + M.name(w[i]);
  return s;
}

Subset lowest_set(const GraphProductBuilding& B, int degree, int simplex) {
  const auto& sigma = B.davis().complex.simplices(degree).at(simplex);
  return B.davis().poset[sigma.front()];
}

}  // namespace

std::size_t NormalFormHash::operator()(const NormalForm& f) const noexcept {
  std::size_t h = 0x9e3779b97f4a7c15ULL ^ f.size();
  for (auto x : f) h = (h ^ (std::size_t{x.letter} << 8 | x.exponent)) * 0xff51afd7ed558ccdULL;
  return h ^ (h >> 32);
}

GraphProductBuilding::GraphProductBuilding(RegularBuildingSpec spec, int radius)
    : spec_(std::move(spec)), radius_(radius) {}

int GraphProductBuilding::find(const NormalForm& f) const {
  auto it = index_.find(f);
  return it == index_.end() ? -1 : it->second;
}

std::vector<int> GraphProductBuilding::projection(int id) const { return letters(chambers_.at(id)); }

int GraphProductBuilding::retract(int id) const {
  NormalForm f = chambers_.at(id);
  for (auto& x : f) x.exponent = 1;
  return find(f);
}

bool GraphProductBuilding::in_apartment(int id) const {
  const auto& f = chambers_.at(id);
  return std::all_of(f.begin(), f.end(), [](Syllable x) { return x.exponent == 1; });
}

const std::vector<int>& GraphProductBuilding::fiber(const std::vector<int>& w) const {
  if (static_cast<int>(w.size()) > radius_) fail(ErrorKind::RadiusExceeded, "element longer than the building radius");
  static const std::vector<int> none;
  auto it = fibers_.find(w);
  return it == fibers_.end() ? none : it->second;
}

NormalForm GraphProductBuilding::multiply(const NormalForm& f, int s, int e) const {
  std::vector<int> order;
  for (auto q : spec_.thickness.values) order.push_back(static_cast<int>(q) + 1);
  return canonical_raw(spec_.matrix, multiply_raw(spec_.matrix, f, s, e, order));
}

NormalForm GraphProductBuilding::canonical(NormalForm f) const { return canonical_raw(spec_.matrix, f); }

int GraphProductBuilding::residue_representative(int id, Subset T) const {
  if (T == 0) return id;
  NormalForm f = chambers_.at(id);
  const auto& M = spec_.matrix;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i) {
      if (!contains(T, f[i].letter)) continue;
      bool last = true;
      for (std::size_t j = i + 1; j < f.size() && last; ++j) last = M.commute(f[j].letter, f[i].letter);
      if (last) {
        f.erase(f.begin() + i);
        changed = true;
        break;
      }
    }
  }
  const int r = find(f);
  if (r < 0) fail(ErrorKind::Internal, "residue representative outside the building");
  return r;
}

GraphProductBuilding build_graph_product(const RegularBuildingSpec& spec, int radius, const EnumerationLimits& limits) {
  const auto& M = spec.matrix;
  if (!M.right_angled()) fail(ErrorKind::NotRightAngled, "explicit buildings need every m_st in {2, inf}");
  if (radius < 0) fail(ErrorKind::SchemaError, "radius must be non-negative");
  for (auto q : spec.thickness.values)
    if (q > 254) fail(ErrorKind::ResourceExceeded, "thickness above 254 is not supported by the explicit model");

  GraphProductBuilding B(spec, radius);
  B.davis_ = davis_chamber(M);
  std::vector<int> order;
  for (auto q : spec.thickness.values) order.push_back(static_cast<int>(q) + 1);

  std::vector<NormalForm> layer{NormalForm{}};
  auto admit = [&](std::vector<NormalForm>& forms) {
    for (auto& f : forms) {
      if (B.chambers_.size() >= limits.max_elements)
        fail(ErrorKind::ResourceExceeded, "building exceeds " + std::to_string(limits.max_elements) +
                                              " chambers; lower --radius or raise --max-elements");
      const int id = static_cast<int>(B.chambers_.size());
      B.index_.emplace(f, id);
      B.fibers_[letters(f)].push_back(id);
      B.chambers_.push_back(f);
    }
  };
  admit(layer);

  auto expand = [&](std::size_t lo, std::size_t hi) {
    std::vector<NormalForm> out;
    for (std::size_t i = lo; i < hi; ++i)
      for (int s = 0; s < M.rank(); ++s)
        for (int e = 1; e < order[s]; ++e) {
          NormalForm g = multiply_raw(M, layer[i], s, e, order);
          if (g.size() == layer[i].size() + 1) out.push_back(canonical_raw(M, g));
        }
    return out;
  };

  for (int k = 1; k <= radius; ++k) {
    std::vector<NormalForm> next;
    const unsigned threads =
        limits.parallel ? std::max(1u, limits.threads ? limits.threads : std::thread::hardware_concurrency()) : 1u;
    if (threads > 1 && layer.size() > 64) {
      std::vector<std::future<std::vector<NormalForm>>> parts;
      const std::size_t chunk = (layer.size() + threads - 1) / threads;
      for (std::size_t lo = 0; lo < layer.size(); lo += chunk)
        parts.push_back(std::async(std::launch::async, expand, lo, std::min(layer.size(), lo + chunk)));
      for (auto& p : parts) {
        auto v = p.get();
        next.insert(next.end(), std::make_move_iterator(v.begin()), std::make_move_iterator(v.end()));
      }
    } else {
      next = expand(0, layer.size());
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    admit(next);
    layer = std::move(next);
  }

  for (int id = 0; id < static_cast<int>(B.chambers_.size()); ++id)
    if (B.in_apartment(id)) B.apartment_.push_back(id);
  return B;
}

std::uint64_t oracle_sphere_count(const GraphProductBuilding& B, const std::vector<int>& w) {
  return B.fiber(w).size();
}

DefinitionCheck verify_definition(const GraphProductBuilding& B) {
  DefinitionCheck r;
  const auto& M = B.spec().matrix;
  const auto& q = B.spec().thickness.values;
  const int n = static_cast<int>(B.size());
  auto failure = [&](const std::string& what) {
    if (r.first_failure.empty()) r.first_failure = what;
  };

  // clause (i): panels
  for (int id = 0; id < n; ++id) {
    if (B.length(id) >= B.radius()) continue;
    for (int s = 0; s < M.rank(); ++s) {
      std::vector<int> panel;
      for (int e = 0; e <= q[s]; ++e) panel.push_back(B.find(B.multiply(B.chamber(id), s, e)));
      std::sort(panel.begin(), panel.end());
      const bool ok = panel.front() >= 0 && std::adjacent_find(panel.begin(), panel.end()) == panel.end() &&
                      static_cast<std::int64_t>(panel.size()) == q[s] + 1;
      ++r.panels_checked;
      if (!ok) {
        r.panels_ok = false;
        failure("panel of type " + M.name(s) + " at chamber " + std::to_string(id));
      }
    }
  }

  // clause (ii): gallery distance and W-distance of adjacent chambers
  std::vector<int> dist(n, -1);
  std::deque<int> queue{0};
  dist[0] = 0;
  const std::vector<int> order_two(M.rank(), 2);
  while (!queue.empty()) {
    const int id = queue.front();
    queue.pop_front();
    ++r.chambers_checked;
    NormalForm w;
    for (int s : B.projection(id)) w.push_back(Syllable{static_cast<std::uint8_t>(s), 1});
    for (int s = 0; s < M.rank(); ++s) {
      const NormalForm ws = canonical_raw(M, multiply_raw(M, w, s, 1, order_two));
      for (int e = 1; e <= q[s]; ++e) {
        const int nb = B.find(B.multiply(B.chamber(id), s, e));
        if (nb < 0) continue;
        const auto p = B.projection(nb);
        if (p != letters(w) && p != letters(ws)) {
          r.distance_ok = false;
          failure("adjacent chambers " + std::to_string(id) + ", " + std::to_string(nb) + " with bad W-distance");
        }
        if (dist[nb] < 0) {
          dist[nb] = dist[id] + 1;
          queue.push_back(nb);
        }
      }
    }
  }
  for (int id = 0; id < n; ++id)
    if (dist[id] != B.length(id)) {
      r.distance_ok = false;
      failure("gallery distance of chamber " + std::to_string(id) + " differs from its W-length");
    }
  return r;
}

SimplexKey canonical_key(const GraphProductBuilding& B, int chamber, int degree, int simplex) {
  return SimplexKey{B.residue_representative(chamber, lowest_set(B, degree, simplex)), simplex};
}

void add_term(const GraphProductBuilding& B, BuildingChain& chain, int chamber, int simplex, const Rational& c) {
  if (c == 0) return;
  const SimplexKey key = canonical_key(B, chamber, chain.degree, simplex);
  auto [it, fresh] = chain.coefficients.emplace(key, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) chain.coefficients.erase(it);
  }
}

void check_margin(const GraphProductBuilding& B, const BuildingChain& chain) {
  for (const auto& [key, c] : chain.coefficients)
    if (B.length(key.chamber) > B.radius() - kChainMargin)
      fail(ErrorKind::MarginViolation, "chain support reaches chamber length " + std::to_string(B.length(key.chamber)) +
                                           " at radius " + std::to_string(B.radius()));
}

BuildingChain boundary(const GraphProductBuilding& B, const BuildingChain& chain) {
  check_margin(B, chain);
  BuildingChain out;
  out.degree = chain.degree - 1;
  if (chain.degree == 0) return out;
  const auto& K = B.davis().complex;
  for (const auto& [key, c] : chain.coefficients) {
    const Simplex& sigma = K.simplices(chain.degree)[key.simplex];
    for (std::size_t i = 0; i < sigma.size(); ++i) {
      Simplex face = sigma;
      face.erase(face.begin() + i);
      const int f = *K.index_of(face);
      add_term(B, out, key.chamber, f, i % 2 ? -c : c);
    }
  }
  return out;
}

BuildingChain retraction_pushforward(const GraphProductBuilding& B, const BuildingChain& chain) {
  check_margin(B, chain);
  BuildingChain out;
  out.degree = chain.degree;
  for (const auto& [key, c] : chain.coefficients) add_term(B, out, B.retract(key.chamber), key.simplex, c);
  return out;
}

BuildingChain retraction_pullback(const GraphProductBuilding& B, const BuildingChain& apartment_chain) {
  check_margin(B, apartment_chain);
  BuildingChain out;
  out.degree = apartment_chain.degree;
  for (const auto& [key, c] : apartment_chain.coefficients) {
    if (!B.in_apartment(key.chamber)) fail(ErrorKind::SchemaError, "pullback needs a chain on the apartment");
    const auto& fib = B.fiber(B.projection(key.chamber));
    const Rational share = c / Rational(static_cast<long>(fib.size()));
    for (int cp : fib) add_term(B, out, cp, key.simplex, share);
  }
  return out;
}

std::string_view to_string(JensenVerdict v) {
  switch (v) {
    case JensenVerdict::Pass: return "Pass";
    case JensenVerdict::Fail: return "Fail";
    case JensenVerdict::Indeterminate: return "Indeterminate";
  }
  return "?";
}

JensenResult jensen_check(const GraphProductBuilding& B, const BuildingChain& eta, const Rational& p) {
  if (p <= 1) fail(ErrorKind::BadEntry, "p must exceed 1");
  check_margin(B, eta);

  // group coefficients by (fiber, simplex): ρ*ρ_* replaces them by their mean
  std::map<std::pair<std::vector<int>, int>, std::vector<Rational>> fibers;
  for (const auto& [key, c] : eta.coefficients) fibers[{B.projection(key.chamber), key.simplex}].push_back(c);

  JensenResult r;
  const bool integral = p.get_den() == 1;
  const long pi = integral ? p.get_num().get_si() : 0;
  const Real pr = Real(p.get_num().get_str()) / Real(p.get_den().get_str());
  auto real_of = [](const Rational& x) { return Real(x.get_num().get_str()) / Real(x.get_den().get_str()); };
  auto power = [&](const Rational& x) {
    Rational a = abs(x), y = 1;
    for (long i = 0; i < pi; ++i) y *= a;
    return y;
  };

  Rational lhs_exact = 0, rhs_exact = 0;
  Real lhs = 0, rhs = 0, slack_total = 0;
  bool decided_fail = false, undecided = false;
  const Real eps = std::numeric_limits<Real>::epsilon();
  for (const auto& [k, values] : fibers) {
    ++r.fibers;
    const std::size_t size = B.fiber(k.first).size();
    Rational mean = 0;
    for (const auto& v : values) mean += v;
    mean /= Rational(static_cast<long>(size));
    const bool constant = values.size() == size && std::all_of(values.begin(), values.end(),
                                                               [&](const Rational& v) { return v == values.front(); });
    if (constant) ++r.equal_fibers;
    if (integral) {
      const Rational l = Rational(static_cast<long>(size)) * power(mean);
      Rational rr = 0;
      for (const auto& v : values) rr += power(v);
      lhs_exact += l;
      rhs_exact += rr;
      continue;
    }
    const Real l = Real(size) * pow(abs(real_of(mean)), pr);
    Real rr = 0;
    for (const auto& v : values) rr += pow(abs(real_of(v)), pr);
    lhs += l;
    rhs += rr;
    if (constant) continue;
    // a few ulps per pow and per addition
    const Real err = (l + rr) * eps * Real(8 * (values.size() + 2));
    slack_total += err;
    if (l - rr > err)
      decided_fail = true;
    else if (rr - l <= err)
      undecided = true;
  }

  if (integral) {
    r.lhs = std::pow(lhs_exact.get_d(), 1.0 / static_cast<double>(pi));
    r.rhs = std::pow(rhs_exact.get_d(), 1.0 / static_cast<double>(pi));
    r.verdict = lhs_exact <= rhs_exact ? JensenVerdict::Pass : JensenVerdict::Fail;
    return r;
  }
  r.lhs = static_cast<double>(pow(lhs, 1 / pr));
  r.rhs = static_cast<double>(pow(rhs, 1 / pr));
  r.verdict = decided_fail ? JensenVerdict::Fail : undecided ? JensenVerdict::Indeterminate : JensenVerdict::Pass;
  return r;
}

BuildingChain random_chain(const GraphProductBuilding& B, int degree, int terms, std::mt19937_64& rng,
                           bool apartment_only) {
  const auto& K = B.davis().complex;
  if (degree < 0 || degree > K.dimension()) fail(ErrorKind::SchemaError, "no simplices in that degree");
  std::vector<int> pool;
  const auto& candidates = apartment_only ? B.apartment() : std::vector<int>{};
  if (apartment_only) {
    for (int id : candidates)
      if (B.length(id) <= B.radius() - kChainMargin) pool.push_back(id);
  } else {
    for (int id = 0; id < static_cast<int>(B.size()); ++id)
      if (B.length(id) <= B.radius() - kChainMargin) pool.push_back(id);
  }
  if (pool.empty()) fail(ErrorKind::MarginViolation, "radius leaves no room for chains");

  std::uniform_int_distribution<std::size_t> pick_chamber(0, pool.size() - 1);
  std::uniform_int_distribution<std::size_t> pick_simplex(0, K.simplices(degree).size() - 1);
  std::uniform_int_distribution<int> num(-6, 6), den(1, 4), coin(0, 2);
  auto coefficient = [&] {
    int a = num(rng);
    if (a == 0) a = 1;
    Rational c(a, den(rng));
    c.canonicalize();
    return c;
  };

  BuildingChain chain;
  chain.degree = degree;
  for (int i = 0; i < terms; ++i) {
    const int c = pool[pick_chamber(rng)];
    const int sigma = static_cast<int>(pick_simplex(rng));
    if (!apartment_only && coin(rng) == 0) {
      // fill a whole fiber so that averaging has something to do
      for (int cp : B.fiber(B.projection(c))) add_term(B, chain, cp, sigma, coefficient());
    } else {
      add_term(B, chain, c, sigma, coefficient());
    }
  }
  return chain;
}

bool OracleReport::all_ok() const {
  return sphere_counts_ok && definition.panels_ok && definition.distance_ok && boundary_squared_ok &&
         pullback_commutes_ok && pushforward_commutes_ok && identity_ok && idempotent_ok && jensen_ok;
}

OracleReport verify_oracle(const GraphProductBuilding& B, const OracleOptions& opts) {
  OracleReport r;
  r.radius = B.radius();
  r.chambers = B.size();
  r.sphere_totals.assign(B.radius() + 1, 0);
  for (int id = 0; id < static_cast<int>(B.size()); ++id) ++r.sphere_totals[B.length(id)];
  for (int w : B.apartment()) {
    const auto word = B.projection(w);
    ++r.elements_checked;
    if (Integer(static_cast<unsigned long>(oracle_sphere_count(B, word))) != sphere_cardinality(B.spec(), word))
      r.sphere_counts_ok = false;
  }
  r.definition = verify_definition(B);

  std::mt19937_64 rng(opts.seed);
  const int top = B.davis().complex.dimension();
  std::uniform_int_distribution<int> pick_terms(1, 12);
  std::uniform_int_distribution<int> pick_degree(0, top);

  for (int t = 0; t < opts.trials; ++t) {
    const int k = pick_degree(rng);
    const BuildingChain eta = random_chain(B, k, pick_terms(rng), rng);
    const BuildingChain theta = random_chain(B, k, pick_terms(rng), rng, true);

    const BuildingChain pushed = retraction_pushforward(B, eta);
    const BuildingChain pulled = retraction_pullback(B, theta);
    if (retraction_pushforward(B, pulled) != theta) r.identity_ok = false;
    const BuildingChain projected = retraction_pullback(B, pushed);
    if (retraction_pullback(B, retraction_pushforward(B, projected)) != projected) r.idempotent_ok = false;
    if (k >= 1) {
      const BuildingChain d = boundary(B, eta);
      if (k >= 2 && !boundary(B, d).coefficients.empty()) r.boundary_squared_ok = false;
      if (boundary(B, pulled) != retraction_pullback(B, boundary(B, theta))) r.pullback_commutes_ok = false;
      if (boundary(B, pushed) != retraction_pushforward(B, d)) r.pushforward_commutes_ok = false;
    }
  }

  for (const auto& p : opts.exponents) {
    std::size_t passes = 0;
    for (int t = 0; t < opts.trials; ++t) {
      const BuildingChain eta = random_chain(B, pick_degree(rng), pick_terms(rng), rng);
      if (jensen_check(B, eta, p).verdict == JensenVerdict::Pass) ++passes;
    }
    r.jensen_passes.emplace_back(p.get_str(), passes);
    if (passes != static_cast<std::size_t>(opts.trials)) r.jensen_ok = false;
  }
  r.jensen_trials = static_cast<std::size_t>(opts.trials);
  return r;
}

std::string oracle_dump(const GraphProductBuilding& B) {
  const auto& M = B.spec().matrix;
  std::ostringstream out;
  out << "coxinv-oracle-dump 1\n";
  std::string thickness;
  for (auto q : B.spec().thickness.values) thickness += (thickness.empty() ? "" : ",") + std::to_string(q);
  const std::string head = "building|" + M.digest() + '|' + thickness + '|' + std::to_string(B.radius()) + '|' +
                           std::to_string(B.size());
  out << head << '|' << hex64(fnv1a64(head)) << '\n';
  for (int id = 0; id < static_cast<int>(B.size()); ++id) {
    const std::string body = "chamber|" + std::to_string(id) + '|' + format_form(M, B.chamber(id)) + '|' +
                             std::to_string(B.length(id)) + '|' + format_word(M, B.projection(id));
    out << body << '|' << hex64(fnv1a64(body)) << '\n';
  }
  return out.str();
}

}  // namespace coxinv
