#pragma once

#include <optional>
#include <string>
#include <vector>

#include "coxinv/building.hpp"
#include "coxinv/coxeter_matrix.hpp"
#include "coxinv/measured.hpp"

namespace coxinv {

enum class ObstructionKind { AffineRank3, CommutingInfinitePair };
std::string_view to_string(ObstructionKind k);

struct HyperbolicityObstruction {
  ObstructionKind kind = ObstructionKind::AffineRank3;
  /// AffineRank3: T1 is the irreducible affine subsystem, T2 = 0.
  Subset T1 = 0;
  Subset T2 = 0;
  friend bool operator==(const HyperbolicityObstruction&, const HyperbolicityObstruction&) = default;
};

struct HyperbolicityVerdict {
  bool hyperbolic = true;
  std::optional<HyperbolicityObstruction> obstruction;
  std::string describe(const CoxeterMatrix& M) const;
};

/// Moussong's criterion: no irreducible affine T with |T| >= 3 and no two
/// disjoint commuting T1, T2 with W_T1, W_T2 infinite. The reported witness is
/// the least one (affine subsets first, then pairs of minimal infinite
/// subsets). ResourceExceeded above rank 24.
HyperbolicityVerdict moussong_hyperbolic(const CoxeterMatrix& M);

/// Re-checks the defining property of an obstruction.
bool verify_obstruction(const CoxeterMatrix& M, const HyperbolicityObstruction& o);

/// Visual parameter: a number > 1 or the preset λ = exp(e_q(W)).
struct VisualParameter {
  std::optional<double> value;
  bool bourdon = false;

  static VisualParameter of(double lambda);
  static VisualParameter bourdon_preset();
  /// log λ given e_q; for the preset this is e_q itself.
  Measured log_lambda(const Measured& e_q) const;
};

enum class Provenance { UserSupplied, VcdFloor, FuchsianExact, BourdonPreset };
std::string_view to_string(Provenance p);

/// e_q(W)/log λ. NotHyperbolic, AffineDegenerate when e_q = 0.
Measured coornaert_hausdim(const CoxeterMatrix& M, const Measured& e_q, const VisualParameter& lambda);
Measured coornaert_hausdim(const RegularBuildingSpec& spec, const VisualParameter& lambda,
                           const GrowthOptions& opts = {});
/// (1 + e_q(W))/log λ, the Coornaert dimension times 1 + e_q^{-1}.
Measured building_hausdim_upper(const CoxeterMatrix& M, const Measured& e_q, const VisualParameter& lambda);
Measured building_hausdim_upper(const RegularBuildingSpec& spec, const VisualParameter& lambda,
                                const GrowthOptions& opts = {});

struct ConfdimOptions {
  std::optional<VisualParameter> lambda;
  std::optional<double> apartment_confdim;
  GrowthOptions growth;
};

struct ConfdimBoundsReport {
  Measured e_q;
  /// 1 + e_q^{-1}
  Measured factor;
  /// The apartment value used for the lower bound: user value, or the floor
  /// max(vcd - 1, 0) when none was supplied.
  double apartment_confdim = 0;
  Provenance apartment_provenance = Provenance::VcdFloor;
  int vcd = 0;
  Measured lower;
  Provenance lower_provenance = Provenance::VcdFloor;
  /// (vcd - 1)(1 + e_q^{-1}), reported whatever the apartment value.
  Measured vcd_floor;
  /// Present when λ is given.
  std::optional<Measured> upper;
  std::optional<Provenance> upper_provenance;
  /// Numerator of the upper bound: upper = upper_numerator / log λ.
  Measured upper_numerator;
  std::optional<Measured> fuchsian;
};

/// NotHyperbolic, ThinBuilding, AffineDegenerate.
ConfdimBoundsReport confdim_bounds(const RegularBuildingSpec& spec, const ConfdimOptions& opts = {});
ConfdimBoundsReport confdim_bounds(const RegularBuildingSpec& spec, const Measured& e_q, int vcd,
                                   const ConfdimOptions& opts = {});

struct VanishingRow {
  int degree = 0;
  /// "p < c" or "p > c"
  std::string range;
  /// "= 0", "!= 0" and the reduced variant
  std::string status;
};

struct FuchsianReport {
  Measured confdim;
  std::vector<VanishingRow> table;
  std::string detection = "detected: combinatorial criterion";
};

/// The nerve is a cycle and W is hyperbolic.
bool fuchsian_detected(const CoxeterMatrix& M);
/// Absent when detection fails; ThinBuilding when some q_s = 1.
std::optional<FuchsianReport> fuchsian_report(const RegularBuildingSpec& spec, const Measured& e_q);
std::optional<FuchsianReport> fuchsian_report(const RegularBuildingSpec& spec, const GrowthOptions& opts = {});

}  // namespace coxinv
