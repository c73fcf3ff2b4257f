#pragma once

#include <cstdint>
#include <vector>

#include "gendef/dfa.hpp"

namespace gendef {

/// Strongly connected components of the state graph, with the condensation
/// edges. Component ids are numbered by first occurrence scanning states in
/// order, so they are stable across runs.
struct ComponentGraph {
  std::vector<int> componentOf;
  std::vector<std::vector<State>> components;  ///< members ascending
  std::vector<bool> isTrivial;  ///< singleton without a self-loop
  std::vector<bool> isSink;     ///< closed under every letter

  struct Edge {
    int from = 0;
    int to = 0;
    int symbol = 0;
    auto operator<=>(const Edge&) const = default;
  };
  /// Distinct cross-component edges, sorted.
  std::vector<Edge> dagEdges;
};

/// Assumes the automaton is its own reachable part (callers pass
/// reachable_part or minimize output).
ComponentGraph component_graph(const Dfa& a);

/// The pair automaton on stateCount^2 states; pair (p, q) sits at index
/// p * stateCount + q and moves to (p.a, q.a) under letter a. Transitions
/// are computed on the fly, nothing quadratic is materialized here.
struct ProductSquare {
  Dfa base;

  std::int64_t pairCount() const {
    return static_cast<std::int64_t>(base.stateCount) * base.stateCount;
  }
  std::int64_t pairIndex(State p, State q) const {
    return static_cast<std::int64_t>(p) * base.stateCount + q;
  }
  State first(std::int64_t pair) const {
    return static_cast<State>(pair / base.stateCount);
  }
  State second(std::int64_t pair) const {
    return static_cast<State>(pair % base.stateCount);
  }
  std::int64_t target(std::int64_t pair, int letter) const {
    return pairIndex(base.next(first(pair), letter),
                     base.next(second(pair), letter));
  }
};

ProductSquare product_square(const Dfa& a);

/// Components of the pair automaton, flagged trivial or not. Kept lean on
/// purpose: at n states it touches n^2 pairs.
struct ProductSccs {
  std::vector<std::int32_t> componentOf;
  int componentCount = 0;
  std::vector<bool> nontrivial;
};

ProductSccs product_sccs(const ProductSquare& ps);

}  // namespace gendef
