#pragma once

// Hand-checked automata shared by several test files. All of them use
// 1-based state numbers in the builder calls, matching the file formats.

#include <initializer_list>
#include <string>
#include <vector>

#include "gendef/dfa.hpp"

namespace fixtures {

inline gendef::Dfa build(int states, std::vector<std::string> alphabet,
                         std::vector<int> rows1, int start1,
                         std::initializer_list<int> finals1) {
  gendef::Dfa d;
  d.stateCount = states;
  d.alphabet = std::move(alphabet);
  d.start = start1 - 1;
  d.finals.assign(states, false);
  for (int f : finals1) d.finals[f - 1] = true;
  d.delta.reserve(rows1.size());
  for (int to1 : rows1) d.delta.push_back(to1 - 1);
  validate_dfa(d);
  return d;
}

/// Words ending in a, over {a, b}. Reduced; definite; semigroup {(2,2),(1,1)}.
inline gendef::Dfa ends_with_a() {
  return build(2, {"a", "b"},
               {2, 1,   // state 1
                2, 1},  // state 2
               1, {2});
}

/// Words starting with a and ending with b. Reduced and BFS-numbered;
/// generalized definite but not definite; state 3 is the dead sink, {2,4}
/// the live sink.
inline gendef::Dfa a_sigma_star_b() {
  return build(4, {"a", "b"},
               {2, 3,   // 1: start
                2, 4,   // 2: saw a, last letter a
                3, 3,   // 3: dead
                2, 4},  // 4: saw a, last letter b (accepting)
               1, {4});
}

/// Even number of a's, single-letter alphabet. Reduced; not generalized
/// definite (the letter action is a transposition).
inline gendef::Dfa parity() {
  return build(2, {"a"}, {2, 1}, 1, {1});
}

inline gendef::Dfa single_state() {
  return build(1, {"a", "b"}, {1, 1}, 1, {1});
}

/// Same language as ends_with_a(): state 3 duplicates 1, state 4 duplicates
/// 2, and state 5 is unreachable. Minimizing must collapse it to the
/// two-state automaton.
inline gendef::Dfa ends_with_a_redundant() {
  return build(5, {"a", "b"},
               {2, 3,   // 1: rejecting
                4, 1,   // 2: accepting
                4, 3,   // 3: rejecting
                2, 1,   // 4: accepting
                5, 1},  // 5: unreachable
               1, {2, 4});
}

}  // namespace fixtures
