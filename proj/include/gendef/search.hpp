#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "gendef/semigroup.hpp"
#include "gendef/transformation.hpp"

namespace gendef {

struct SearchBudget {
  std::uint64_t maxNodes = 10'000'000;
  double maxSeconds = 0.0;  ///< 0 disables the time limit
  int threads = 1;          ///< 1 keeps the search fully deterministic
};

struct SearchResult {
  std::uint64_t bestSize = 0;
  TransformationSemigroup witness;
  bool exhaustive = false;
  std::uint64_t exploredNodes = 0;
  std::uint64_t incumbentsCertified = 0;
  SearchBudget budget;
};

/// Largest closed set of nonpermutational transformations of [n], by
/// checking every subset; 2 <= n <= 3.
SearchResult max_np_subsemigroup_exact(int n);

/// Branch and bound over the nonpermutational transformations in
/// lexicographic order, with include/exclude decisions, closure
/// propagation, and the candidate semigroup as the seeded incumbent.
/// Every incumbent improvement is re-certified before being accepted.
/// Requires 2 <= n <= 6 (the universe above degree 6 is too large).
SearchResult max_np_subsemigroup_bnb(int n, const SearchBudget& budget = {});

struct Certificate {
  bool valid = false;
  std::uint64_t size = 0;
  /// First pair whose product leaves the set, if any.
  std::optional<std::pair<Transformation, Transformation>> badPair;
  /// First permutational element, if any.
  std::optional<Transformation> badElement;
};

/// Independent check that the set is closed and all-nonpermutational;
/// shares nothing with the search pruning logic.
Certificate certify(std::span<const Transformation> elements);

struct DefSycResult {
  std::uint64_t bestSize = 0;            ///< largest realizable |S|
  TransformationSemigroup witness;       ///< the realized set
  State start = 0;
  std::vector<bool> finals;
  bool exhaustive = false;
  std::uint64_t exploredNodes = 0;
  SearchBudget budget;
};

/// Over closed all-nonpermutational subsets S of the transformations of
/// [n], finds the largest one realizable as the letter set of a reduced
/// n-state automaton (delta(q, f) = f(q)) for some start state and final
/// set; all 2^n * n choices are tested per subset. Requires 2 <= n <= 4.
DefSycResult max_definite_syc(int n, const SearchBudget& budget = {});

}  // namespace gendef
