#include "gendef/defize.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <stdexcept>
#include <utility>

#include "detail.hpp"
#include "gendef/classify.hpp"
#include "gendef/components.hpp"

namespace gendef {

namespace {

void require(bool cond, const std::string& message) {
  if (!cond) throw std::invalid_argument(message);
}

using u128 = unsigned __int128;

}  // namespace

SinkPartition sink_partition(const Dfa& a) {
  require(is_reduced(a), "sink_partition requires a reduced automaton");
  require(is_generalized_definite(a).holds,
          "sink_partition requires a generalized definite automaton");

  ComponentGraph cg = component_graph(a);
  SinkPartition out;

  // Kahn's algorithm over the trivial states, smallest state first. Sinks
  // never feed back into trivial states, so counting in-edges among the
  // trivial states alone is enough.
  std::vector<int> inDegree(a.stateCount, 0);
  std::vector<bool> trivial(a.stateCount, false);
  for (State q = 0; q < a.stateCount; ++q) {
    trivial[q] = cg.isTrivial[cg.componentOf[q]];
  }
  for (State q = 0; q < a.stateCount; ++q) {
    if (!trivial[q]) continue;
    for (int letter = 0; letter < a.letterCount(); ++letter) {
      State t = a.next(q, letter);
      if (trivial[t]) ++inDegree[t];
    }
  }
  std::priority_queue<State, std::vector<State>, std::greater<>> ready;
  for (State q = 0; q < a.stateCount; ++q) {
    if (trivial[q] && inDegree[q] == 0) ready.push(q);
  }
  while (!ready.empty()) {
    State q = ready.top();
    ready.pop();
    out.initialBlock.push_back(q);
    for (int letter = 0; letter < a.letterCount(); ++letter) {
      State t = a.next(q, letter);
      if (trivial[t] && --inDegree[t] == 0) ready.push(t);
    }
  }

  for (int c = 0; c < static_cast<int>(cg.components.size()); ++c) {
    if (!cg.isTrivial[c]) out.sinks.push_back(cg.components[c]);
  }
  std::sort(out.sinks.begin(), out.sinks.end(),
            [](const std::vector<State>& x, const std::vector<State>& y) {
              if (x.size() != y.size()) return x.size() < y.size();
              return x.front() < y.front();
            });

  out.relabeling.assign(a.stateCount, -1);
  State next = 0;
  for (State q : out.initialBlock) out.relabeling[q] = next++;
  for (const auto& sink : out.sinks) {
    for (State q : sink) out.relabeling[q] = next++;
  }
  if (next != a.stateCount) {
    throw std::logic_error("partition does not cover the state set");
  }
  for (State q : out.initialBlock) {
    for (int letter = 0; letter < a.letterCount(); ++letter) {
      if (out.relabeling[a.next(q, letter)] <= out.relabeling[q]) {
        throw std::logic_error("initial block is not strictly increasing");
      }
    }
  }
  return out;
}

std::vector<Transformation> sink_restriction_semigroup(
    const Dfa& a, std::span<const State> sink, std::size_t cap) {
  require(!sink.empty(), "sink must be nonempty");
  std::vector<State> members(sink.begin(), sink.end());
  std::sort(members.begin(), members.end());
  require(std::unique(members.begin(), members.end()) == members.end(),
          "sink states must be distinct");
  std::vector<int> local(a.stateCount, -1);
  for (std::size_t i = 0; i < members.size(); ++i) {
    require(members[i] >= 0 && members[i] < a.stateCount,
            "sink state out of range");
    local[members[i]] = static_cast<int>(i);
  }
  for (State q : members) {
    for (int letter = 0; letter < a.letterCount(); ++letter) {
      require(local[a.next(q, letter)] >= 0,
              "the given states are not closed under the alphabet");
    }
  }

  TransformationSemigroup ts = transition_semigroup(a, cap);
  require(!ts.truncated, "closure hit the cap; raise it to restrict a sink");

  std::set<Transformation> restricted;
  std::vector<State> image(members.size());
  for (const auto& f : ts.elements) {
    for (std::size_t i = 0; i < members.size(); ++i) {
      image[i] = local[f(members[i])];
    }
    restricted.insert(Transformation(image));
  }
  return {restricted.begin(), restricted.end()};
}

namespace {

Dfa relabel(const Dfa& a, const std::vector<State>& map) {
  Dfa d;
  d.stateCount = a.stateCount;
  d.alphabet = a.alphabet;
  d.start = map[a.start];
  d.finals.assign(a.stateCount, false);
  d.delta.resize(a.delta.size());
  for (State q = 0; q < a.stateCount; ++q) {
    d.finals[map[q]] = a.finals[q];
    for (int letter = 0; letter < a.letterCount(); ++letter) {
      d.next_ref(map[q], letter) = map[a.next(q, letter)];
    }
  }
  return d;
}

}  // namespace

DefizeResult defize(const Dfa& input, std::size_t maxAlphabet,
                    std::size_t cap) {
  DefizeResult out;
  out.partition = sink_partition(input);  // checks reduced + gen. definite

  const int n = input.stateCount;
  const int k = static_cast<int>(out.partition.initialBlock.size());
  const auto& sinks = out.partition.sinks;
  const int c = static_cast<int>(sinks.size());
  require(!sinks.empty(), "no sink found");  // cannot happen on valid input
  const int largest = static_cast<int>(sinks.back().size());
  require(largest > 1,
          "the largest sink has a single state; this construction needs at "
          "least two");

  out.relabeledInput = relabel(input, out.partition.relabeling);
  const Dfa& a = out.relabeledInput;

  // Block layout under the relabeling: [0, k) initial, then each sink
  // contiguously, the largest one last.
  std::vector<std::pair<int, int>> sinkRange;  // [begin, end)
  int base = k;
  for (const auto& s : sinks) {
    sinkRange.emplace_back(base, base + static_cast<int>(s.size()));
    base += static_cast<int>(s.size());
  }
  const auto [qcBegin, qcEnd] = sinkRange.back();

  std::vector<State> qcStates;
  for (int q = qcBegin; q < qcEnd; ++q) qcStates.push_back(q);
  std::vector<Transformation> tc = sink_restriction_semigroup(a, qcStates, cap);

  // Alphabet size: elevating choices on the initial block, arbitrary maps
  // from the middle sinks into the largest sink, one factor per element of
  // the largest sink's semigroup.
  u128 total = tc.size();
  for (int i = 0; i < k; ++i) total *= static_cast<unsigned>(n - 1 - i);
  for (int j = 0; j + 1 < c; ++j) {
    for (std::size_t m = 0; m < sinks[j].size(); ++m) {
      total *= static_cast<unsigned>(largest);
    }
  }
  require(total <= maxAlphabet,
          "output alphabet would have " +
              (total > 1'000'000'000 ? std::string("over a billion")
                                     : std::to_string(static_cast<std::uint64_t>(
                                           total))) +
              " symbols, above the limit of " + std::to_string(maxAlphabet));
  out.alphabetSize = static_cast<std::size_t>(total);

  // Mixed-radix enumeration, rightmost digit fastest. Digits, left to
  // right: the image of each initial-block state (strictly above itself),
  // the image of each middle-sink state (anywhere in the largest sink),
  // then one digit selecting an element of the largest sink's semigroup.
  // Since that semigroup is sorted and occupies the trailing positions of
  // the image vector, symbols come out in lexicographic order.
  struct Digit {
    State first;  // value base
    int radix;
  };
  std::vector<Digit> digits;
  for (int i = 0; i < k; ++i) {
    digits.push_back({static_cast<State>(i + 1), n - 1 - i});
  }
  for (int j = 0; j + 1 < c; ++j) {
    auto [b, e] = sinkRange[j];
    for (int q = b; q < e; ++q) {
      digits.push_back({static_cast<State>(qcBegin), largest});
    }
  }
  digits.push_back({0, static_cast<int>(tc.size())});

  Dfa b;
  b.stateCount = n;
  b.start = a.start;
  b.finals = a.finals;

  std::vector<int> counter(digits.size(), 0);
  std::vector<Transformation> letters;
  letters.reserve(out.alphabetSize);
  std::vector<State> image(n);
  while (true) {
    std::size_t d = 0;
    for (int i = 0; i < k; ++i) {
      image[i] = digits[d].first + counter[d];
      ++d;
    }
    for (int j = 0; j + 1 < c; ++j) {
      auto [bg, e] = sinkRange[j];
      for (int q = bg; q < e; ++q) {
        image[q] = digits[d].first + counter[d];
        ++d;
      }
    }
    const Transformation& f = tc[counter[d]];
    for (int q = qcBegin; q < qcEnd; ++q) {
      image[q] = qcBegin + f(q - qcBegin);
    }
    letters.emplace_back(image);

    int pos = static_cast<int>(digits.size()) - 1;
    while (pos >= 0 && counter[pos] == digits[pos].radix - 1) {
      counter[pos--] = 0;
    }
    if (pos < 0) break;
    ++counter[pos];
  }
  if (letters.size() != out.alphabetSize) {
    throw std::logic_error("alphabet enumeration lost symbols");
  }

  b.alphabet.reserve(letters.size());
  b.delta.resize(static_cast<std::size_t>(n) * letters.size());
  for (std::size_t s = 0; s < letters.size(); ++s) {
    b.alphabet.push_back(format_transformation(letters[s]));
  }
  for (State q = 0; q < n; ++q) {
    for (std::size_t s = 0; s < letters.size(); ++s) {
      b.delta[static_cast<std::size_t>(q) * letters.size() + s] =
          letters[s](q);
    }
  }
  validate_dfa(b);
  out.output = b;

  out.verifiedReduced = is_reduced(b);
  out.verifiedAvoidsPd = out.verifiedReduced && !admits_pd(b).has_value();
  out.inputSyc = syntactic_complexity(a, cap);
  out.outputSyc = syntactic_complexity(b, cap);
  if (!out.inputSyc.capped && !out.outputSyc.capped) {
    out.sycMonotone = *out.outputSyc.value >= *out.inputSyc.value;
  }
  return out;
}

}  // namespace gendef
