#pragma once

#include <string>
#include <vector>

#include "coxinv/coxeter_matrix.hpp"

namespace coxinv {

enum class ComponentFamily {
  Finite,
  /// Irreducible affine of rank >= 3 (the affine diagram tables).
  Affine,
  /// Ã1: the infinite dihedral group. Counted as affine by is_affine_system, kept apart
  /// by classify_parabolic.
  InfiniteDihedral,
  Other,
};

struct DiagramComponent {
  std::string label;  // e.g. "A3", "I2(5)", "Ã2", "?" when unmatched
  Subset vertices = 0;
  ComponentFamily family = ComponentFamily::Finite;
  friend bool operator==(const DiagramComponent&, const DiagramComponent&) = default;
};

enum class ParabolicKind { Finite, AffineIrreducibleProduct, OtherInfinite };

struct ParabolicType {
  ParabolicKind kind = ParabolicKind::Finite;
  std::vector<DiagramComponent> components;

  bool finite() const { return kind == ParabolicKind::Finite; }
  /// e.g. "A1×A1", "Ã2", "∅"
  std::string label() const;
};

std::string_view to_string(ParabolicKind kind);

/// Component-wise diagram matching against the finite and irreducible affine
/// tables. T = ∅ is Finite.
ParabolicType classify_parabolic(const CoxeterMatrix& M, Subset T);
ParabolicType classify_system(const CoxeterMatrix& M);

bool is_finite_parabolic(const CoxeterMatrix& M, Subset T);

/// Product of finite systems and at least one irreducible affine system,
/// Ã1 included.
bool is_affine_system(const CoxeterMatrix& M);

/// Connected components of the Coxeter diagram restricted to T.
std::vector<Subset> diagram_components(const CoxeterMatrix& M, Subset T);

/// All T with W_T finite, ∅ first, ordered by (size, lexicographic members).
std::vector<Subset> spherical_subsets(const CoxeterMatrix& M);
std::vector<Subset> maximal_spherical_subsets(const CoxeterMatrix& M);

/// Components of the graph on S with an edge {s,t} when m_st is finite and
/// odd. Ordered by smallest member.
std::vector<Subset> generator_conjugacy_classes(const CoxeterMatrix& M);
/// class index of every generator, parallel to generator_conjugacy_classes.
std::vector<int> class_index(const CoxeterMatrix& M);

/// Order used for "lexicographically least" subset choices.
bool subset_less(Subset a, Subset b);

}  // namespace coxinv
