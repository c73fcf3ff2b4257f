#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gendef/dfa.hpp"

namespace gendef {

/// A forbidden-pattern witness on a reduced automaton: a pair of distinct
/// states p, q with a common nonempty loop word x (p.x == p, q.x == q), and
/// for the generalized pattern additionally a nonempty word y with p.y == q.
/// Words are letter indices into the automaton's alphabet.
struct PatternWitness {
  State p = 0;
  State q = 0;
  std::vector<int> x;
  std::optional<std::vector<int>> y;
};

/// Checks whether distinct states p, q share a nonempty loop word; that is
/// the same as an off-diagonal pair lying in a nontrivial component of the
/// pair automaton. Returns the lexicographically least such (p, q) with a
/// shortest (then lexicographically least) loop word, or nothing.
/// Throws std::invalid_argument unless the input is reduced.
std::optional<PatternWitness> admits_pd(const Dfa& a);

/// Same search restricted to pairs where q is additionally reachable from p
/// by a nonempty word; the witness carries a shortest such word as y.
/// Throws std::invalid_argument unless the input is reduced.
std::optional<PatternWitness> admits_pg(const Dfa& a);

/// Verdict plus the minimal automaton the verdict was computed on; a false
/// verdict carries a pattern witness stated on that minimal automaton.
struct ClassVerdict {
  bool holds = false;
  std::optional<PatternWitness> witness;
  Dfa minimal;
};

/// Definite languages: membership depends only on a bounded suffix.
/// Decided by minimizing and searching for the loop-pair pattern.
ClassVerdict is_definite(const Dfa& a);

/// Generalized definite languages, decided in five steps: minimize, build
/// the component graph, reject on a nontrivial non-sink component, build
/// the pair automaton and its components, reject on an off-diagonal
/// same-sink pair in a nontrivial pair component. O(n^2) overall.
ClassVerdict is_generalized_definite(const Dfa& a);

enum class OracleRun { NotRequested, Ran, SkippedCapped };

struct ClassificationReport {
  int minimizedSize = 0;
  bool definite = false;
  bool generalizedDefinite = false;
  std::optional<PatternWitness> pdWitness;
  std::optional<PatternWitness> pgWitness;
  SycResult syntacticComplexity;
  OracleRun oracle = OracleRun::NotRequested;
  std::optional<bool> definiteIdentity;
  std::optional<bool> gendefIdentity;
  Dfa minimal;
};

struct ClassifyOptions {
  bool runOracle = false;
  std::size_t cap = kDefaultClosureCap;
};

/// One-stop classification; with runOracle set, the two semigroup
/// identities are evaluated on the transition semigroup of the minimal
/// automaton and reported alongside the pattern-based verdicts (skipped
/// when the closure hits the cap).
ClassificationReport classify_report(const Dfa& a,
                                     const ClassifyOptions& options = {});

/// Renders a word as the concatenation of its symbols; a separating space
/// is inserted only when some alphabet symbol is longer than one character.
std::string format_word(const Dfa& a, std::span<const int> word);

/// JSON object with fields minimized_size, definite, generalized_definite,
/// pd_witness {p,q,x}, pg_witness {p,q,x,y}, syntactic_complexity and
/// oracle {definite_identity, gendef_identity}. States are 1-based, words
/// are arrays of symbols.
std::string report_to_json(const ClassificationReport& report);

}  // namespace gendef
