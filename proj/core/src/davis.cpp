#include "coxinv/davis.hpp"

#include <algorithm>

#include "coxinv/classification.hpp"
#include "coxinv/error.hpp"

namespace coxinv {

Nerve nerve(const CoxeterMatrix& M) {
  Nerve N;
  std::vector<Simplex> facets;
  for (Subset T : maximal_spherical_subsets(M)) {
    if (T == 0) continue;
    N.maximal.push_back(T);
    facets.push_back(members(T));
  }
  N.complex = SimplicialComplex::from_facets(M.generators(), std::move(facets));
  return N;
}

PMVerdict is_type_PM(const CoxeterMatrix& M) { return pm_verdict(nerve(M).complex); }

Subcomplex DavisChamber::mirror(int s) const {
  return Subcomplex::full(complex, [&](int v) { return contains(poset[v], s); });
}

Subcomplex DavisChamber::mirror_union(Subset T) const {
  return Subcomplex::full(complex, [&](int v) { return (poset[v] & T) != 0; });
}

DavisChamber davis_chamber(const CoxeterMatrix& M, std::size_t max_simplices) {
  DavisChamber D;
  D.poset = spherical_subsets(M);
  const std::size_t n = D.poset.size();
  auto less = [&](int i, int j) { return D.poset[i] != D.poset[j] && (D.poset[i] & D.poset[j]) == D.poset[i]; };

  // chains ending at each element, to refuse oversized chambers early
  std::vector<double> ending(n, 1);
  double total = 0;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i)
      if (less(static_cast<int>(i), static_cast<int>(j))) ending[j] += ending[i];
    total += ending[j];
  }
  if (total > static_cast<double>(max_simplices))
    fail(ErrorKind::ResourceExceeded, "Davis chamber has about " + std::to_string(static_cast<long long>(total)) +
                                          " simplices, above the cap of " + std::to_string(max_simplices));

  std::vector<std::string> labels;
  for (Subset T : D.poset) labels.push_back(M.format_subset(T));
  D.complex = order_complex(std::move(labels), less);

  auto b = betti(D.complex, nullptr, BettiOptions{false, max_simplices});
  b.resize(std::max<std::size_t>(b.size(), 1));
  if (b[0] != 1 || std::any_of(b.begin() + 1, b.end(), [](std::size_t x) { return x != 0; }))
    fail(ErrorKind::Internal, "Davis chamber is not acyclic");
  return D;
}

VcdResult vcd_real(const CoxeterMatrix& M, std::size_t max_simplices) {
  const int n = M.rank();
  if (n > 20) fail(ErrorKind::ResourceExceeded, "vcd search over all subsets is limited to rank 20");
  const DavisChamber D = davis_chamber(M, max_simplices);
  const ChainComplex C(D.complex);
  const Subset S = full_set(n);

  VcdResult r;
  r.top_degree.assign(std::size_t{1} << n, -1);
  std::vector<std::vector<std::size_t>> ranks(std::size_t{1} << n);
  const Subset count = Subset{1} << n;
  for (Subset T = 0; T < count; ++T) {
    const Subcomplex L = D.mirror_union(T);
    ranks[T] = betti(D.complex, C, &L, false);
    for (int k = static_cast<int>(ranks[T].size()) - 1; k >= 0; --k)
      if (ranks[T][k] != 0) {
        r.top_degree[T] = k;
        break;
      }
  }
  for (Subset T = 0; T < count; ++T) {
    const int top = r.top_degree[T];
    r.d = std::max(r.d, top);
    if (is_finite_parabolic(M, T)) r.d_spherical = std::max(r.d_spherical, top);
    if (is_finite_parabolic(M, S & ~T)) r.d_cospherical = std::max(r.d_cospherical, top);
  }
  std::vector<Subset> order;
  for (Subset T = 0; T < count; ++T)
    if (r.top_degree[T] == r.d) order.push_back(T);
  std::sort(order.begin(), order.end(), subset_less);
  for (Subset T : order)
    r.witnesses.push_back(
        VcdWitness{T, ranks[T][r.d], is_finite_parabolic(M, T), is_finite_parabolic(M, S & ~T)});
  return r;
}

BestvinaSupport bestvina_support(const CoxeterMatrix& M, const ThicknessVector& q, const VcdResult& vcd,
                                 const GrowthOptions& opts, const GrowthRateEstimate* full_rate) {
  if (vcd.d_cospherical == 0) fail(ErrorKind::NoWitness, "vcd is 0: no relative cycle to spread");
  const Subset S = full_set(M.rank());
  std::vector<Subset> candidates;
  for (Subset T = 0; T < vcd.top_degree.size(); ++T)
    if (vcd.top_degree[T] == vcd.d_cospherical && is_finite_parabolic(M, S & ~T)) candidates.push_back(S & ~T);
  std::vector<Subset> maximal;
  for (Subset F : candidates) {
    const bool dominated = std::any_of(candidates.begin(), candidates.end(),
                                       [&](Subset G) { return G != F && (G & F) == F; });
    if (!dominated) maximal.push_back(F);
  }
  std::sort(maximal.begin(), maximal.end(), subset_less);

  BestvinaSupport b;
  b.F0 = maximal.front();
  b.witness = S & ~b.F0;
  for (Subset F : spherical_subsets(M))
    if (F != b.F0 && (F & b.F0) == b.F0) b.S0 |= F & ~b.F0;

  if (b.S0 == 0 || is_finite_parabolic(M, b.S0)) {
    b.refined_rate.exact_zero = true;
  } else if (b.S0 == S && full_rate) {
    b.refined_rate = *full_rate;
  } else {
    const CoxeterMatrix sub = M.restrict_to(b.S0);
    std::vector<Rational> values;
    for (int s : members(b.S0)) values.emplace_back(q.values.at(s));
    b.refined_rate = growth_rate(sub, WeightVector::from_generators(sub, values), opts);
  }
  return b;
}

BestvinaSupport bestvina_support(const CoxeterMatrix& M, const ThicknessVector& q, const GrowthOptions& opts) {
  return bestvina_support(M, q, vcd_real(M), opts);
}

}  // namespace coxinv
