#include "gendef/classify.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include <json.hpp>

#include "gendef/components.hpp"
#include "gendef/semigroup.hpp"

namespace gendef {

namespace {

void require_reduced(const Dfa& a, const char* who) {
  if (!is_reduced(a)) {
    throw std::invalid_argument(std::string(who) +
                                " requires a reduced automaton");
  }
}

// Lexicographically least shortest nonempty word leading from `from` back
// to `to` in an implicit deterministic graph. BFS with seeds and expansions
// in letter order visits every node along its least shortest path first.
template <class Succ>
std::optional<std::vector<int>> least_word(std::int64_t nodeCount, int letters,
                                           Succ succ, std::int64_t from,
                                           std::int64_t to) {
  std::vector<std::int32_t> parent(nodeCount, -1);
  std::vector<std::int8_t> via(nodeCount, -1);
  std::vector<std::int32_t> queue;
  for (int letter = 0; letter < letters; ++letter) {
    std::int64_t w = succ(from, letter);
    if (w == to) return std::vector<int>{letter};
    if (w != from && via[w] < 0) {
      parent[w] = static_cast<std::int32_t>(from);
      via[w] = static_cast<std::int8_t>(letter);
      queue.push_back(static_cast<std::int32_t>(w));
    }
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    std::int64_t v = queue[head];
    for (int letter = 0; letter < letters; ++letter) {
      std::int64_t w = succ(v, letter);
      if (w == to) {
        std::vector<int> word;
        std::int64_t cur = v;
        word.push_back(letter);
        while (cur != from) {
          word.push_back(via[cur]);
          cur = parent[cur];
        }
        std::reverse(word.begin(), word.end());
        return word;
      }
      if (w != from && via[w] < 0) {
        parent[w] = static_cast<std::int32_t>(v);
        via[w] = static_cast<std::int8_t>(letter);
        queue.push_back(static_cast<std::int32_t>(w));
      }
    }
  }
  return std::nullopt;
}

std::vector<int> loop_word_through_pair(const ProductSquare& ps,
                                        std::int64_t pair) {
  auto word = least_word(
      ps.pairCount(), ps.base.letterCount(),
      [&ps](std::int64_t v, int letter) { return ps.target(v, letter); },
      pair, pair);
  if (!word) throw std::logic_error("pair lost its loop word");
  return *word;
}

std::vector<int> path_word(const Dfa& a, State p, State q) {
  auto word = least_word(
      a.stateCount, a.letterCount(),
      [&a](std::int64_t v, int letter) {
        return a.next(static_cast<State>(v), letter);
      },
      p, q);
  if (!word) throw std::logic_error("expected a path between the states");
  return *word;
}

std::optional<PatternWitness> admits_pd_reduced(const Dfa& a) {
  ProductSquare ps = product_square(a);
  ProductSccs sccs = product_sccs(ps);
  for (State p = 0; p < a.stateCount; ++p) {
    for (State q = 0; q < a.stateCount; ++q) {
      if (p == q) continue;
      std::int64_t pair = ps.pairIndex(p, q);
      if (sccs.nontrivial[sccs.componentOf[pair]]) {
        return PatternWitness{p, q, loop_word_through_pair(ps, pair),
                              std::nullopt};
      }
    }
  }
  return std::nullopt;
}

// Nonempty-word reachability from p, one BFS per source state.
std::vector<std::vector<bool>> forward_reach(const Dfa& a) {
  std::vector<std::vector<bool>> reach(a.stateCount);
  for (State p = 0; p < a.stateCount; ++p) {
    auto& row = reach[p];
    row.assign(a.stateCount, false);
    std::vector<State> queue;
    for (int letter = 0; letter < a.letterCount(); ++letter) {
      State w = a.next(p, letter);
      if (!row[w]) {
        row[w] = true;
        queue.push_back(w);
      }
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (int letter = 0; letter < a.letterCount(); ++letter) {
        State w = a.next(queue[head], letter);
        if (!row[w]) {
          row[w] = true;
          queue.push_back(w);
        }
      }
    }
  }
  return reach;
}

std::optional<PatternWitness> admits_pg_reduced(const Dfa& a) {
  ProductSquare ps = product_square(a);
  ProductSccs sccs = product_sccs(ps);
  auto reach = forward_reach(a);
  for (State p = 0; p < a.stateCount; ++p) {
    for (State q = 0; q < a.stateCount; ++q) {
      if (p == q || !reach[p][q]) continue;
      std::int64_t pair = ps.pairIndex(p, q);
      if (sccs.nontrivial[sccs.componentOf[pair]]) {
        return PatternWitness{p, q, loop_word_through_pair(ps, pair),
                              path_word(a, p, q)};
      }
    }
  }
  return std::nullopt;
}

std::vector<int> repeat_word(const std::vector<int>& w, int times) {
  std::vector<int> out;
  out.reserve(w.size() * times);
  for (int i = 0; i < times; ++i) out.insert(out.end(), w.begin(), w.end());
  return out;
}

// The five-step decision on an already reduced automaton. A false verdict
// carries a witness assembled from whichever structure caused the
// rejection.
std::optional<PatternWitness> gendef_reject_reduced(const Dfa& a) {
  ComponentGraph cg = component_graph(a);

  for (int c = 0; c < static_cast<int>(cg.components.size()); ++c) {
    if (cg.isTrivial[c] || cg.isSink[c]) continue;
    // A nontrivial component that is not closed: its least state p has a
    // loop word; some sink below holds a state q* that a power of that
    // loop word fixes.
    State p = cg.components[c].front();
    std::vector<int> x0 = path_word(a, p, p);

    std::vector<bool> seen(a.stateCount, false);
    std::vector<State> queue{p};
    seen[p] = true;
    int sinkComp = -1;
    for (std::size_t head = 0; head < queue.size() && sinkComp < 0; ++head) {
      for (int letter = 0; letter < a.letterCount(); ++letter) {
        State w = a.next(queue[head], letter);
        if (seen[w]) continue;
        seen[w] = true;
        int d = cg.componentOf[w];
        if (d != c && cg.isSink[d]) {
          sinkComp = d;
          break;
        }
        queue.push_back(w);
      }
    }
    if (sinkComp < 0) throw std::logic_error("no sink below a component");

    // Follow the x0 action inside the sink until it revisits a state; the
    // cycle length j makes x0^j fix that state (and p fixes x0 already).
    std::vector<int> visitStep(a.stateCount, -1);
    State s = cg.components[sinkComp].front();
    int step = 0;
    while (visitStep[s] < 0) {
      visitStep[s] = step++;
      s = apply_word(a, s, x0);
    }
    int j = step - visitStep[s];
    PatternWitness w;
    w.p = p;
    w.q = s;
    w.x = repeat_word(x0, j);
    w.y = path_word(a, p, s);
    return w;
  }

  ProductSquare ps = product_square(a);
  ProductSccs sccs = product_sccs(ps);
  for (State p = 0; p < a.stateCount; ++p) {
    for (State q = 0; q < a.stateCount; ++q) {
      if (p == q || cg.componentOf[p] != cg.componentOf[q]) continue;
      // Same component and distinct: after the check above this component
      // is necessarily a sink.
      std::int64_t pair = ps.pairIndex(p, q);
      if (sccs.nontrivial[sccs.componentOf[pair]]) {
        return PatternWitness{p, q, loop_word_through_pair(ps, pair),
                              path_word(a, p, q)};
      }
    }
  }
  return std::nullopt;
}

void check_witness(const Dfa& a, const PatternWitness& w, bool needY) {
  bool ok = w.p != w.q && !w.x.empty() &&
            apply_word(a, w.p, w.x) == w.p && apply_word(a, w.q, w.x) == w.q;
  if (needY) {
    ok = ok && w.y.has_value() && !w.y->empty() &&
         apply_word(a, w.p, *w.y) == w.q;
  }
  if (!ok) throw std::logic_error("pattern witness failed to replay");
}

}  // namespace

std::optional<PatternWitness> admits_pd(const Dfa& a) {
  require_reduced(a, "admits_pd");
  return admits_pd_reduced(a);
}

std::optional<PatternWitness> admits_pg(const Dfa& a) {
  require_reduced(a, "admits_pg");
  return admits_pg_reduced(a);
}

ClassVerdict is_definite(const Dfa& a) {
  MinimizeResult m = minimize(a);
  std::optional<PatternWitness> w = admits_pd_reduced(m.dfa);
  if (w) check_witness(m.dfa, *w, false);
  return {!w.has_value(), std::move(w), std::move(m.dfa)};
}

ClassVerdict is_generalized_definite(const Dfa& a) {
  MinimizeResult m = minimize(a);
  std::optional<PatternWitness> w = gendef_reject_reduced(m.dfa);
  if (w) check_witness(m.dfa, *w, true);
  return {!w.has_value(), std::move(w), std::move(m.dfa)};
}

ClassificationReport classify_report(const Dfa& a,
                                     const ClassifyOptions& options) {
  ClassificationReport rep;
  MinimizeResult m = minimize(a);
  rep.minimal = m.dfa;
  rep.minimizedSize = m.dfa.stateCount;

  rep.pdWitness = admits_pd_reduced(m.dfa);
  rep.definite = !rep.pdWitness.has_value();
  rep.pgWitness = gendef_reject_reduced(m.dfa);
  rep.generalizedDefinite = !rep.pgWitness.has_value();

  TransformationSemigroup ts = transition_semigroup(m.dfa, options.cap);
  if (ts.truncated) {
    rep.syntacticComplexity = {std::nullopt, true};
  } else {
    rep.syntacticComplexity = {static_cast<std::uint64_t>(ts.size()), false};
  }

  if (options.runOracle) {
    if (ts.truncated) {
      rep.oracle = OracleRun::SkippedCapped;
    } else {
      rep.oracle = OracleRun::Ran;
      rep.definiteIdentity = satisfies_definite_identity(ts).holds;
      rep.gendefIdentity = satisfies_gendef_identity(ts).holds;
    }
  }
  return rep;
}

std::string format_word(const Dfa& a, std::span<const int> word) {
  bool wide = std::any_of(a.alphabet.begin(), a.alphabet.end(),
                          [](const std::string& s) { return s.size() > 1; });
  std::string out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (wide && i > 0) out += ' ';
    out += a.alphabet[word[i]];
  }
  return out;
}

namespace {

nlohmann::ordered_json witness_json(const Dfa& a, const PatternWitness& w) {
  nlohmann::ordered_json j;
  j["p"] = w.p + 1;
  j["q"] = w.q + 1;
  auto render = [&a](const std::vector<int>& word) {
    std::vector<std::string> syms;
    syms.reserve(word.size());
    for (int letter : word) syms.push_back(a.alphabet[letter]);
    return syms;
  };
  j["x"] = render(w.x);
  if (w.y) j["y"] = render(*w.y);
  return j;
}

}  // namespace

std::string report_to_json(const ClassificationReport& report) {
  nlohmann::ordered_json j;
  j["minimized_size"] = report.minimizedSize;
  j["definite"] = report.definite;
  j["generalized_definite"] = report.generalizedDefinite;
  j["pd_witness"] = report.pdWitness
                        ? witness_json(report.minimal, *report.pdWitness)
                        : nlohmann::ordered_json(nullptr);
  j["pg_witness"] = report.pgWitness
                        ? witness_json(report.minimal, *report.pgWitness)
                        : nlohmann::ordered_json(nullptr);
  if (report.syntacticComplexity.capped) {
    j["syntactic_complexity"] = "exceeds cap";
  } else {
    j["syntactic_complexity"] = *report.syntacticComplexity.value;
  }
  if (report.oracle != OracleRun::NotRequested) {
    if (report.oracle == OracleRun::SkippedCapped) {
      j["oracle"]["definite_identity"] = "skipped (capped)";
      j["oracle"]["gendef_identity"] = "skipped (capped)";
    } else {
      j["oracle"]["definite_identity"] = *report.definiteIdentity;
      j["oracle"]["gendef_identity"] = *report.gendefIdentity;
    }
  }
  return j.dump(2) + "\n";
}

}  // namespace gendef
