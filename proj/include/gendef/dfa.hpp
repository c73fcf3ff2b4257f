#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gendef/semigroup.hpp"
#include "gendef/transformation.hpp"

namespace gendef {

/// A complete deterministic finite automaton. Transitions are total:
/// delta has stateCount * alphabet.size() entries, state-major.
struct Dfa {
  int stateCount = 0;
  std::vector<std::string> alphabet;
  std::vector<State> delta;
  State start = 0;
  std::vector<bool> finals;

  int letterCount() const { return static_cast<int>(alphabet.size()); }
  State next(State q, int letter) const {
    return delta[static_cast<std::size_t>(q) * alphabet.size() + letter];
  }
  State& next_ref(State q, int letter) {
    return delta[static_cast<std::size_t>(q) * alphabet.size() + letter];
  }

  bool operator==(const Dfa&) const = default;
};

/// Throws std::invalid_argument if the structure is inconsistent.
void validate_dfa(const Dfa& a);

State apply_word(const Dfa& a, State q, std::span<const int> word);
bool accepts(const Dfa& a, std::span<const int> word);

struct ReachablePart {
  Dfa dfa;
  /// old state -> new state, -1 for states that were dropped.
  std::vector<State> stateMap;
};

/// Restriction to the states reachable from the start; BFS order with
/// letters scanned in alphabet order fixes the new numbering.
ReachablePart reachable_part(const Dfa& a);

struct MinimizeResult {
  Dfa dfa;
  /// old state -> minimized state, -1 for unreachable states.
  std::vector<State> stateMap;
};

/// Moore partition refinement from the {final, nonfinal} split, restricted
/// to the reachable part first. States of the result are numbered by BFS
/// from the start with letters in alphabet order, so equal languages yield
/// identical automata.
MinimizeResult minimize(const Dfa& a);

/// Connected and with all state pairs distinguishable (by any word,
/// including the empty one).
bool is_reduced(const Dfa& a);

/// The action of a word on the whole state set; the empty word gives the
/// identity.
Transformation word_transformation(const Dfa& a, std::span<const int> word);

/// Closure of the letter actions under composition: the actions of all
/// nonempty words. Letter actions are seeded in alphabet order.
TransformationSemigroup transition_semigroup(
    const Dfa& a, std::size_t cap = kDefaultClosureCap);

struct SycResult {
  std::optional<std::uint64_t> value;  ///< empty when capped
  bool capped = false;
};

/// Size of the transition semigroup of the minimal automaton.
SycResult syntactic_complexity(const Dfa& a,
                               std::size_t cap = kDefaultClosureCap);

/// Text format, 1-based states:
///
///   states: 4
///   alphabet: a b
///   start: 1
///   final: 3
///   1 a 2
///   ...
///
/// '#' starts a comment. Every (state, symbol) pair must appear exactly
/// once unless `completePartial` is set, in which case missing transitions
/// are routed to a fresh dead state. Throws ParseError on bad input.
struct ParsedDfa {
  Dfa dfa;
  bool completed = false;  ///< a dead state was added
};
ParsedDfa parse_dfa(std::istream& in, bool completePartial = false);
std::string format_dfa(const Dfa& a);

/// JSON mirror of the same fields:
/// {"states":4,"alphabet":["a","b"],"start":1,"final":[3],
///  "transitions":[[1,"a",2],...]}
ParsedDfa parse_dfa_json(std::istream& in, bool completePartial = false);
std::string format_dfa_json(const Dfa& a);

}  // namespace gendef
