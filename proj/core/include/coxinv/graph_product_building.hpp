#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "coxinv/building.hpp"
#include "coxinv/davis.hpp"

namespace coxinv {

/// Syllable (generator, exponent) with 1 <= exponent <= q_s.
struct Syllable {
  std::uint8_t letter = 0;
  std::uint8_t exponent = 1;
  friend auto operator<=>(const Syllable&, const Syllable&) = default;
};

/// Normal form of a graph-product element: no two syllables of the same
/// letter can be shuffled next to each other; the stored order is the
/// lexicographically least shuffle.
using NormalForm = std::vector<Syllable>;

struct NormalFormHash {
  std::size_t operator()(const NormalForm& f) const noexcept;
};

/// The right-angled building of thickness q + 1: chambers are the elements of
/// the graph product of cyclic groups Z/(q_s + 1) over the commutation graph,
/// s-adjacent when they differ on the right by a power of the s generator.
/// The W-distance from the base chamber erases exponents.
class GraphProductBuilding {
 public:
  const RegularBuildingSpec& spec() const { return spec_; }
  int radius() const { return radius_; }
  std::size_t size() const { return chambers_.size(); }

  const NormalForm& chamber(int id) const { return chambers_.at(id); }
  int length(int id) const { return static_cast<int>(chambers_.at(id).size()); }
  /// Chamber id of a normal form within the radius, -1 otherwise.
  int find(const NormalForm& f) const;
  /// W-distance from the base chamber, as the lexicographically least reduced
  /// word.
  std::vector<int> projection(int id) const;
  /// ρ: the apartment chamber (all exponents 1) at the same W-distance.
  int retract(int id) const;
  bool in_apartment(int id) const;
  /// Chambers at W-distance w from the base chamber (w as a projection word).
  const std::vector<int>& fiber(const std::vector<int>& w) const;
  /// Apartment chamber ids ordered by id.
  const std::vector<int>& apartment() const { return apartment_; }

  /// The shortest chamber in the T-residue of `id`; T must be spherical.
  int residue_representative(int id, Subset T) const;

  /// Right multiplication by the s generator to the power e, in normal form.
  NormalForm multiply(const NormalForm& f, int s, int e) const;
  NormalForm canonical(NormalForm f) const;

  const DavisChamber& davis() const { return davis_; }

  friend GraphProductBuilding build_graph_product(const RegularBuildingSpec& spec, int radius,
                                                  const EnumerationLimits& limits);

 private:
  GraphProductBuilding(RegularBuildingSpec spec, int radius);

  RegularBuildingSpec spec_;
  int radius_ = 0;
  DavisChamber davis_;
  std::vector<NormalForm> chambers_;
  std::unordered_map<NormalForm, int, NormalFormHash> index_;
  std::map<std::vector<int>, std::vector<int>> fibers_;
  std::vector<int> apartment_;
};

/// Enumerates chambers with W-length at most R (NotRightAngled,
/// ResourceExceeded).
GraphProductBuilding build_graph_product(const RegularBuildingSpec& spec, int radius,
                                         const EnumerationLimits& limits = EnumerationLimits::from_environment());

/// Number of chambers at W-distance w from the base chamber (RadiusExceeded
/// beyond the radius).
std::uint64_t oracle_sphere_count(const GraphProductBuilding& B, const std::vector<int>& w);

/// The two building axioms checked exhaustively within the radius.
struct DefinitionCheck {
  /// every s-panel of a chamber of length < R has q_s + 1 chambers
  bool panels_ok = true;
  std::size_t panels_checked = 0;
  /// gallery distance from the base chamber equals W-length, and adjacent
  /// chambers have W-distances w and ws
  bool distance_ok = true;
  std::size_t chambers_checked = 0;
  std::string first_failure;
};

DefinitionCheck verify_definition(const GraphProductBuilding& B);

/// Simplex of the realization: (residue representative chamber, Davis
/// chamber simplex). Simplex ids index the Davis complex in dimension k.
struct SimplexKey {
  int chamber = 0;
  int simplex = 0;
  friend auto operator<=>(const SimplexKey&, const SimplexKey&) = default;
};

/// Finitely supported rational k-chain; coefficients are aggregated on
/// canonical keys at insertion and zero entries are dropped.
struct BuildingChain {
  int degree = 0;
  std::map<SimplexKey, Rational> coefficients;

  friend bool operator==(const BuildingChain&, const BuildingChain&) = default;
};

/// Canonical key of (c, σ): c replaced by its T0-residue representative,
/// T0 the smallest spherical set of σ.
SimplexKey canonical_key(const GraphProductBuilding& B, int chamber, int degree, int simplex);
void add_term(const GraphProductBuilding& B, BuildingChain& chain, int chamber, int simplex, const Rational& c);

/// Supports must lie within radius - 2 (MarginViolation otherwise).
inline constexpr int kChainMargin = 2;
void check_margin(const GraphProductBuilding& B, const BuildingChain& chain);

BuildingChain boundary(const GraphProductBuilding& B, const BuildingChain& chain);
/// ρ_*: (c, σ) ↦ (ρ(c), σ).
BuildingChain retraction_pushforward(const GraphProductBuilding& B, const BuildingChain& chain);
/// ρ*: apartment chain ↦ each (w, σ) spread as (1/q_w)(c', σ) over c' ∈ ρ⁻¹(w).
BuildingChain retraction_pullback(const GraphProductBuilding& B, const BuildingChain& apartment_chain);

enum class JensenVerdict { Pass, Fail, Indeterminate };
std::string_view to_string(JensenVerdict v);

struct JensenResult {
  /// ||ρ*ρ_*η||_p and ||η||_p
  double lhs = 0;
  double rhs = 0;
  JensenVerdict verdict = JensenVerdict::Indeterminate;
  /// Every fiber satisfied the inequality on its own; fibers where η is
  /// constant satisfy it with exact equality.
  std::size_t fibers = 0;
  std::size_t equal_fibers = 0;
};

/// p rational > 1: exact comparison for integer p, certified high-precision
/// comparison otherwise.
JensenResult jensen_check(const GraphProductBuilding& B, const BuildingChain& eta, const Rational& p);

/// Random chain for property tests: `terms` random simplices in the given
/// degree within the margin, random small rationals.
BuildingChain random_chain(const GraphProductBuilding& B, int degree, int terms, std::mt19937_64& rng,
                           bool apartment_only = false);

struct OracleReport {
  int radius = 0;
  std::size_t chambers = 0;
  std::vector<std::uint64_t> sphere_totals;  // chambers per W-length
  /// every w with l(w) <= R has |S(c,w)| = q_w
  bool sphere_counts_ok = true;
  std::size_t elements_checked = 0;
  DefinitionCheck definition;
  bool boundary_squared_ok = true;
  bool pullback_commutes_ok = true;
  bool pushforward_commutes_ok = true;
  bool identity_ok = true;     // ρ_*ρ* = Id
  bool idempotent_ok = true;   // ρ*ρ_* idempotent
  std::vector<std::pair<std::string, std::size_t>> jensen_passes;  // p -> passes
  std::size_t jensen_trials = 0;
  bool jensen_ok = true;
  bool all_ok() const;
};

struct OracleOptions {
  int trials = 1000;
  std::vector<Rational> exponents{Rational(3, 2), Rational(2), Rational(3)};
  std::uint64_t seed = 20240611;
};

/// The full battery on an explicit building.
OracleReport verify_oracle(const GraphProductBuilding& B, const OracleOptions& opts = {});

/// One line per chamber: normal form, length and W-projection, each line with
/// a checksum, after the header "coxinv-oracle-dump 1".
std::string oracle_dump(const GraphProductBuilding& B);

}  // namespace coxinv
