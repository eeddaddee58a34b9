#pragma once

// Local theory of A_r singularities k[[x,y]]/(y^2 - x^(r+1)): numerical
// invariants, the involutions up to conjugation and their invariant rings.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hyperstack/error.hpp"

namespace hyperstack {

struct SingularityType {
  int r = 0;

  constexpr bool unibranch() const noexcept { return r % 2 == 0; }
  constexpr int branch_count() const noexcept { return unibranch() ? 1 : 2; }
  // Genus drop under normalization.
  constexpr int delta() const noexcept { return (r + 1) / 2; }
  // Colength of the conductor on a single branch of the normalization.
  constexpr int conductor_degree() const noexcept {
    return unibranch() ? r : (r + 1) / 2;
  }
  // Length of the scheme-theoretic intersection of the two branches of an
  // A_{2h-1} point, i.e. h. Zero for unibranch points.
  constexpr int intersection_length() const noexcept {
    return unibranch() ? 0 : (r + 1) / 2;
  }

  friend constexpr bool operator==(SingularityType, SingularityType) = default;
};

enum class InvolutionClass { a, b1, b2, b3, c1, c2, c3 };

inline constexpr InvolutionClass kAllClasses[] = {
    InvolutionClass::a,  InvolutionClass::b1, InvolutionClass::b2,
    InvolutionClass::b3, InvolutionClass::c1, InvolutionClass::c2,
    InvolutionClass::c3};

inline std::string_view to_string(InvolutionClass c) {
  switch (c) {
    case InvolutionClass::a: return "a";
    case InvolutionClass::b1: return "b1";
    case InvolutionClass::b2: return "b2";
    case InvolutionClass::b3: return "b3";
    case InvolutionClass::c1: return "c1";
    case InvolutionClass::c2: return "c2";
    case InvolutionClass::c3: return "c3";
  }
  return "?";
}

inline std::optional<InvolutionClass> parse_involution_class(std::string_view s) {
  for (InvolutionClass c : kAllClasses)
    if (to_string(c) == s) return c;
  return std::nullopt;
}

// How the lift of the involution to the normalization treats the branches.
enum class BranchAction {
  unibranch,  // single branch, mapped to itself by t -> -t
  fixed,      // both branches mapped to themselves
  swapped,    // the two branches are exchanged
};

struct LocalQuotient {
  SingularityType quotient_type;
  bool flat = true;
  // Empty when the fixed locus is a whole branch (class c3).
  std::optional<int> fixed_length;
  bool fixed_is_cartier = true;

  bool infinite_component() const noexcept { return !fixed_length.has_value(); }
};

inline void require_nonnegative_r(int r) {
  if (r < 0) throw Error("invalid-singularity", "A_r needs r >= 0, got " + std::to_string(r));
}

// Involution classes of A_r up to conjugation. A_0 reports {a} with trivial
// quotient data so smooth points need no special casing.
inline std::vector<InvolutionClass> classify_involutions(int r) {
  require_nonnegative_r(r);
  using C = InvolutionClass;
  if (r % 2 == 0) return {C::a};
  if (r == 1) return {C::c1, C::c2, C::c3};
  return {C::b1, C::b2, C::b3};
}

inline bool class_applies(int r, InvolutionClass c) {
  for (InvolutionClass x : classify_involutions(r))
    if (x == c) return true;
  return false;
}

inline void require_applicable(int r, InvolutionClass c) {
  if (!class_applies(r, c))
    throw Error("class-not-applicable", "involution class " + std::string(to_string(c)) +
                                            " does not act on A_" + std::to_string(r));
}

// Invariant subalgebra of A_r under the class, with flatness of the inclusion
// and the fixed locus. For r = 2k - 1 the b-rows use k = (r + 1) / 2.
inline LocalQuotient quotient_local(int r, InvolutionClass c) {
  require_nonnegative_r(r);
  require_applicable(r, c);
  const int k = (r + 1) / 2;
  using C = InvolutionClass;
  switch (c) {
    case C::a: return {{0}, true, r + 1, true};
    case C::b1: return {{0}, true, r + 1, true};
    case C::b2: return {{k - 1}, true, 2, true};
    case C::b3: return {{k}, false, 1, false};
    case C::c1: return {{0}, true, 2, true};
    case C::c2: return {{1}, false, 1, false};
    case C::c3: return {{1}, true, std::nullopt, false};
  }
  throw Error("class-not-applicable", "unknown involution class");
}

// Branch behaviour of the class. On A_{2k-1} an involution fixing both
// branches acts as x -> xi x, y -> xi^k y and one swapping them as
// x -> xi x, y -> -xi^k y, which fixes the b2/b3 behaviour by the parity of k.
inline BranchAction branch_action(int r, InvolutionClass c) {
  require_applicable(r, c);
  if (r % 2 == 0) return BranchAction::unibranch;
  const int k = (r + 1) / 2;
  using C = InvolutionClass;
  switch (c) {
    case C::b1:
    case C::c1: return BranchAction::swapped;
    case C::b2: return k % 2 == 0 ? BranchAction::fixed : BranchAction::swapped;
    case C::b3: return k % 2 == 1 ? BranchAction::fixed : BranchAction::swapped;
    case C::c2:
    case C::c3: return BranchAction::fixed;
    case C::a: break;
  }
  return BranchAction::unibranch;
}

// Genus drop when normalizing a single A_r point (r = 2h or 2h + 1).
inline int genus_drop(int r, bool separating) {
  require_nonnegative_r(r);
  const int h = r / 2;
  if (r % 2 == 0) {
    if (separating)
      throw Error("invalid-combination", "a unibranch A_" + std::to_string(r) +
                                             " point cannot be separating");
    return h;
  }
  return separating ? h : h + 1;
}

}  // namespace hyperstack
