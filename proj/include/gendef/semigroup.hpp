#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "gendef/transformation.hpp"

namespace gendef {

inline constexpr std::size_t kDefaultClosureCap = 1'000'000;

/// A finite set of transformations of common degree. `elements` are kept in
/// canonical order: discovery order when produced by a closure, lexicographic
/// when the set is constructed directly. `truncated` records that a closure
/// hit its cap, in which case `elements` is only a partial set.
struct TransformationSemigroup {
  int degree = 0;
  std::vector<Transformation> elements;
  std::vector<Transformation> generators;
  bool truncated = false;

  std::size_t size() const { return elements.size(); }
};

/// Breadth-first closure under right-composition with the generators.
/// Throws std::invalid_argument on an empty generator list or mixed degrees.
TransformationSemigroup closure(std::vector<Transformation> generators,
                              std::size_t cap = kDefaultClosureCap);

struct ClosureCheck {
  bool closed = false;
  /// First violating pair (f, g) in element order, with compose(f, g)
  /// outside the set.
  std::optional<std::pair<Transformation, Transformation>> violation;
};

ClosureCheck is_closed(const TransformationSemigroup& s);

/// Elements grouped by their unique fixed point; permutational elements,
/// which have no such point, land in `residue`.
struct FixedPointDecomposition {
  std::map<State, std::vector<Transformation>> classes;
  std::vector<Transformation> residue;
};

FixedPointDecomposition fixed_point_decomposition(
    const TransformationSemigroup& s);

/// The candidate semigroup on [n]: the union over i of all transformations
/// that move every point below i strictly upwards and send every point from
/// i on to i. Elements come back lexicographically sorted; the result is
/// verified closed, all-nonpermutational, and of size floor_e_factorial(n)
/// before returning. Throws std::invalid_argument if n < 2 or n > guard.
TransformationSemigroup candidate_b(int n, int guard = 8);

/// floor(e * (n-1)!) computed as the exact integer sum over j < n of
/// (n-1)!/j!. Exact 128-bit arithmetic internally; requires 1 <= n <= 20.
std::uint64_t floor_e_factorial(int n);

/// n * ((n-1)! - (n-3)!); requires 3 <= n <= 20.
std::uint64_t theorem_bound(int n);

struct IdentityCheck {
  bool holds = false;
  /// First counterexample (x, y) in element order when the identity fails.
  std::optional<std::pair<Transformation, Transformation>> counterexample;
};

/// Checks y.x^w == x^w for all x, y. Throws std::invalid_argument on a
/// truncated semigroup.
IdentityCheck satisfies_definite_identity(const TransformationSemigroup& s);

/// Checks x^w.y.x^w == x^w for all x, y. Throws std::invalid_argument on a
/// truncated semigroup.
IdentityCheck satisfies_gendef_identity(const TransformationSemigroup& s);

/// File format: a "degree: n" header, one transformation per line in vector
/// notation; '#' starts a comment, blank lines are skipped.
TransformationSemigroup parse_semigroup_file(std::istream& in);
std::string format_semigroup_file(const TransformationSemigroup& s);

}  // namespace gendef
