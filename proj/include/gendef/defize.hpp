#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "gendef/dfa.hpp"

namespace gendef {

/// Block structure of a reduced, generalized definite automaton: the states
/// in trivial components form the initial block, every other component is a
/// sink. The relabeling renumbers states so that the initial block comes
/// first in topological order (every letter moves its states strictly
/// upwards) followed by the sinks in nondecreasing size.
struct SinkPartition {
  std::vector<State> initialBlock;          ///< original ids, topological
  std::vector<std::vector<State>> sinks;    ///< original ids, by size
  std::vector<State> relabeling;            ///< old -> new
};

/// Throws std::invalid_argument unless the input is reduced and
/// generalized definite.
SinkPartition sink_partition(const Dfa& a);

/// The transition semigroup restricted to a sink: every closure element cut
/// down to the sink's states (renumbered 0..|sink|-1 in ascending order of
/// the underlying states), deduplicated and sorted. A sink is closed under
/// every letter, so the restrictions again form a semigroup.
/// Throws std::invalid_argument if the closure hits the cap.
std::vector<Transformation> sink_restriction_semigroup(
    const Dfa& a, std::span<const State> sink,
    std::size_t cap = kDefaultClosureCap);

struct DefizeResult {
  Dfa output;
  /// Partition of the input in its original numbering; applying its
  /// relabeling to the input yields relabeledInput.
  SinkPartition partition;
  Dfa relabeledInput;
  std::size_t alphabetSize = 0;
  SycResult inputSyc;
  SycResult outputSyc;
  bool verifiedReduced = false;
  bool verifiedAvoidsPd = false;
  /// Empty when either closure was capped; the comparison is then skipped.
  std::optional<bool> sycMonotone;
};

/// Builds, over the same states as the relabeled input, an automaton whose
/// language is definite and whose transition semigroup is at least as large
/// as the input's. Each output letter is the tupling of an elevating map on
/// the initial block, arbitrary maps from the middle sinks into the largest
/// sink, and an element of the largest sink's restriction semigroup; the
/// letter acts as that combined transformation.
///
/// Preconditions: input reduced and generalized definite with a largest
/// sink of at least two states (the singleton-sink case is rejected as
/// unsupported). Refuses to build alphabets larger than maxAlphabet.
/// Postconditions (verified before returning, recorded in the result):
/// output reduced, no loop-pair pattern, syntactic complexity monotone.
DefizeResult defize(const Dfa& input, std::size_t maxAlphabet = 10'000,
                    std::size_t cap = kDefaultClosureCap);

}  // namespace gendef
