#pragma once

#include <cstddef>
#include <vector>

#include "coxinv/building.hpp"
#include "coxinv/coxeter_matrix.hpp"
#include "coxinv/growth.hpp"
#include "coxinv/homology.hpp"

namespace coxinv {

/// Simplicial complex on S whose simplices are the nonempty spherical
/// subsets.
struct Nerve {
  SimplicialComplex complex;
  std::vector<Subset> maximal;
};

Nerve nerve(const CoxeterMatrix& M);

/// pm_verdict of the nerve; type PM iff verdict.type_pm().
PMVerdict is_type_PM(const CoxeterMatrix& M);

/// Order complex of the poset of spherical subsets, ∅ included (the cone
/// apex). Vertex i is the spherical subset poset[i].
struct DavisChamber {
  SimplicialComplex complex;
  std::vector<Subset> poset;

  /// D_s: chains of spherical subsets containing s.
  Subcomplex mirror(int s) const;
  /// D^T = ∪_{t∈T} D_t; the full subcomplex on spherical subsets meeting T.
  Subcomplex mirror_union(Subset T) const;
};

/// Throws ResourceExceeded when the chamber would exceed `max_simplices`;
/// Internal when the cone is not acyclic.
DavisChamber davis_chamber(const CoxeterMatrix& M, std::size_t max_simplices = default_simplex_cap());

struct VcdWitness {
  Subset T = 0;
  std::size_t rank = 0;  // dim H_d(D, D^T)
  bool spherical = false;
  /// S ∖ T is spherical.
  bool cospherical = false;
};

struct VcdResult {
  /// max{n : H_n(D, D^T) ≠ 0 for some T ⊆ S}
  int d = 0;
  /// The same maximum with T restricted to spherical subsets.
  int d_spherical = 0;
  /// The same maximum with S ∖ T spherical.
  int d_cospherical = 0;
  /// Every T with H_d(D, D^T) ≠ 0, in subset order.
  std::vector<VcdWitness> witnesses;
  /// Top nonzero degree per T (index = T), -1 when everything vanishes.
  std::vector<int> top_degree;
};

/// Relative homology over every T ⊆ S (rank at most 20).
VcdResult vcd_real(const CoxeterMatrix& M, std::size_t max_simplices = default_simplex_cap());

struct BestvinaSupport {
  Subset F0 = 0;
  Subset S0 = 0;
  /// The witness T = S ∖ F0 the choice came from.
  Subset witness = 0;
  GrowthRateEstimate refined_rate;
};

/// F0 = S ∖ T for the co-spherical witnesses T in the top degree, maximal
/// under inclusion, ties to the least subset; S0 = ∪_{F ⊋ F0} F ∖ F0 over
/// spherical F; refined_rate = e_q(W_{S0}). NoWitness when d = 0.
/// `full_rate`, when given, is used as e_q(W) if S0 = S.
BestvinaSupport bestvina_support(const CoxeterMatrix& M, const ThicknessVector& q, const VcdResult& vcd,
                                 const GrowthOptions& opts = {}, const GrowthRateEstimate* full_rate = nullptr);
BestvinaSupport bestvina_support(const CoxeterMatrix& M, const ThicknessVector& q, const GrowthOptions& opts = {});

}  // namespace coxinv
