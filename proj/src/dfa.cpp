#include "gendef/dfa.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <utility>

#include <json.hpp>

#include "gendef/error.hpp"

namespace gendef {

void validate_dfa(const Dfa& a) {
  if (a.stateCount < 1) {
    throw std::invalid_argument("automaton needs at least one state");
  }
  if (a.alphabet.empty()) {
    throw std::invalid_argument("automaton needs a nonempty alphabet");
  }
  std::unordered_map<std::string, int> seen;
  for (int i = 0; i < a.letterCount(); ++i) {
    const std::string& s = a.alphabet[i];
    if (s.empty()) throw std::invalid_argument("empty alphabet symbol");
    for (char c : s) {
      if (std::isspace(static_cast<unsigned char>(c)) || c == '#') {
        throw std::invalid_argument("symbol '" + s +
                                    "' contains whitespace or '#'");
      }
    }
    if (!seen.emplace(s, i).second) {
      throw std::invalid_argument("duplicate alphabet symbol '" + s + "'");
    }
  }
  if (a.delta.size() !=
      static_cast<std::size_t>(a.stateCount) * a.alphabet.size()) {
    throw std::invalid_argument("transition table has wrong size");
  }
  for (State t : a.delta) {
    if (t < 0 || t >= a.stateCount) {
      throw std::invalid_argument("transition target out of range");
    }
  }
  if (a.start < 0 || a.start >= a.stateCount) {
    throw std::invalid_argument("start state out of range");
  }
  if (a.finals.size() != static_cast<std::size_t>(a.stateCount)) {
    throw std::invalid_argument("final-state vector has wrong size");
  }
}

State apply_word(const Dfa& a, State q, std::span<const int> word) {
  for (int letter : word) q = a.next(q, letter);
  return q;
}

bool accepts(const Dfa& a, std::span<const int> word) {
  return a.finals[apply_word(a, a.start, word)];
}

ReachablePart reachable_part(const Dfa& a) {
  ReachablePart out;
  out.stateMap.assign(a.stateCount, -1);
  std::vector<State> order;
  order.reserve(a.stateCount);
  out.stateMap[a.start] = 0;
  order.push_back(a.start);
  for (std::size_t head = 0; head < order.size(); ++head) {
    for (int letter = 0; letter < a.letterCount(); ++letter) {
      State t = a.next(order[head], letter);
      if (out.stateMap[t] < 0) {
        out.stateMap[t] = static_cast<State>(order.size());
        order.push_back(t);
      }
    }
  }
  Dfa& d = out.dfa;
  d.stateCount = static_cast<int>(order.size());
  d.alphabet = a.alphabet;
  d.start = 0;
  d.delta.resize(static_cast<std::size_t>(d.stateCount) * a.alphabet.size());
  d.finals.resize(d.stateCount);
  for (State q = 0; q < d.stateCount; ++q) {
    State old = order[q];
    d.finals[q] = a.finals[old];
    for (int letter = 0; letter < a.letterCount(); ++letter) {
      d.next_ref(q, letter) = out.stateMap[a.next(old, letter)];
    }
  }
  return out;
}

namespace {

// One Moore refinement pass after another until the class count stops
// growing. Class ids are assigned by first occurrence in state order, which
// keeps the whole procedure deterministic.
std::pair<std::vector<int>, int> moore_classes(const Dfa& a) {
  const int n = a.stateCount;
  const int k = a.letterCount();
  std::vector<int> cls(n);
  std::map<bool, int> finalityId;
  for (State q = 0; q < n; ++q) {
    auto [it, fresh] = finalityId.emplace(static_cast<bool>(a.finals[q]),
                                          static_cast<int>(finalityId.size()));
    cls[q] = it->second;
  }
  int count = static_cast<int>(finalityId.size());
  while (true) {
    std::map<std::vector<int>, int> signatureId;
    std::vector<int> fresh(n);
    std::vector<int> sig(k + 1);
    for (State q = 0; q < n; ++q) {
      sig[0] = cls[q];
      for (int letter = 0; letter < k; ++letter) {
        sig[letter + 1] = cls[a.next(q, letter)];
      }
      auto [it, inserted] =
          signatureId.emplace(sig, static_cast<int>(signatureId.size()));
      fresh[q] = it->second;
    }
    int freshCount = static_cast<int>(signatureId.size());
    cls.swap(fresh);
    if (freshCount == count) break;
    count = freshCount;
  }
  return {std::move(cls), count};
}

}  // namespace

MinimizeResult minimize(const Dfa& a) {
  ReachablePart reach = reachable_part(a);
  const Dfa& r = reach.dfa;
  auto [cls, count] = moore_classes(r);

  // Quotient automaton over the classes, then BFS renumbering from the
  // start class so equal languages produce identical outputs.
  const int k = r.letterCount();
  std::vector<State> classDelta(static_cast<std::size_t>(count) * k, -1);
  std::vector<bool> classFinal(count, false);
  for (State q = 0; q < r.stateCount; ++q) {
    classFinal[cls[q]] = r.finals[q];
    for (int letter = 0; letter < k; ++letter) {
      classDelta[static_cast<std::size_t>(cls[q]) * k + letter] =
          cls[r.next(q, letter)];
    }
  }

  std::vector<State> bfsId(count, -1);
  std::vector<State> order;
  bfsId[cls[r.start]] = 0;
  order.push_back(cls[r.start]);
  for (std::size_t head = 0; head < order.size(); ++head) {
    for (int letter = 0; letter < k; ++letter) {
      State t = classDelta[static_cast<std::size_t>(order[head]) * k + letter];
      if (bfsId[t] < 0) {
        bfsId[t] = static_cast<State>(order.size());
        order.push_back(t);
      }
    }
  }

  MinimizeResult out;
  Dfa& d = out.dfa;
  d.stateCount = count;
  d.alphabet = r.alphabet;
  d.start = 0;
  d.delta.resize(static_cast<std::size_t>(count) * k);
  d.finals.resize(count);
  for (int c = 0; c < count; ++c) {
    State q = bfsId[c];
    d.finals[q] = classFinal[c];
    for (int letter = 0; letter < k; ++letter) {
      d.next_ref(q, letter) =
          bfsId[classDelta[static_cast<std::size_t>(c) * k + letter]];
    }
  }
  out.stateMap.assign(a.stateCount, -1);
  for (State old = 0; old < a.stateCount; ++old) {
    if (reach.stateMap[old] >= 0) {
      out.stateMap[old] = bfsId[cls[reach.stateMap[old]]];
    }
  }
  return out;
}

bool is_reduced(const Dfa& a) {
  return minimize(a).dfa.stateCount == a.stateCount;
}

Transformation word_transformation(const Dfa& a, std::span<const int> word) {
  std::vector<State> v(a.stateCount);
  for (State q = 0; q < a.stateCount; ++q) v[q] = apply_word(a, q, word);
  return Transformation(std::move(v));
}

TransformationSemigroup transition_semigroup(const Dfa& a, std::size_t cap) {
  std::vector<Transformation> actions;
  actions.reserve(a.alphabet.size());
  std::vector<int> one(1);
  for (int letter = 0; letter < a.letterCount(); ++letter) {
    one[0] = letter;
    actions.push_back(word_transformation(a, one));
  }
  return closure(std::move(actions), cap);
}

SycResult syntactic_complexity(const Dfa& a, std::size_t cap) {
  TransformationSemigroup t = transition_semigroup(minimize(a).dfa, cap);
  if (t.truncated) return {std::nullopt, true};
  return {static_cast<std::uint64_t>(t.size()), false};
}

namespace {

struct Token {
  std::string text;
  int column = 0;  // 1-based
};

std::vector<Token> tokenize(const std::string& rawLine) {
  std::string line = rawLine;
  if (auto hash = line.find('#'); hash != std::string::npos) {
    line.resize(hash);
  }
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < line.size() &&
           !std::isspace(static_cast<unsigned char>(line[j]))) {
      ++j;
    }
    out.push_back({line.substr(i, j - i), static_cast<int>(i) + 1});
    i = j;
  }
  return out;
}

long parse_int(const Token& t, int line, const char* what) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(t.text, &used);
  } catch (const std::exception&) {
    throw ParseError(std::string("expected ") + what + ", got '" + t.text +
                         "'",
                     line, t.column);
  }
  if (used != t.text.size()) {
    throw ParseError(std::string("expected ") + what + ", got '" + t.text +
                         "'",
                     line, t.column);
  }
  return v;
}

struct LineReader {
  std::istream& in;
  int lineNo = 0;
  std::vector<Token> tokens;

  bool advance() {
    std::string raw;
    while (std::getline(in, raw)) {
      ++lineNo;
      tokens = tokenize(raw);
      if (!tokens.empty()) return true;
    }
    tokens.clear();
    return false;
  }
};

std::vector<Token> expect_header(LineReader& r, const std::string& keyword) {
  if (!r.advance()) {
    throw ParseError("missing '" + keyword + "' line", r.lineNo + 1, 1);
  }
  if (r.tokens[0].text != keyword) {
    throw ParseError("expected '" + keyword + "', got '" + r.tokens[0].text +
                         "'",
                     r.lineNo, r.tokens[0].column);
  }
  return {r.tokens.begin() + 1, r.tokens.end()};
}

Dfa complete_with_dead_state(Dfa a,
                             const std::vector<std::pair<State, int>>& missing) {
  State dead = a.stateCount;
  Dfa d;
  d.stateCount = a.stateCount + 1;
  d.alphabet = a.alphabet;
  d.start = a.start;
  d.finals = a.finals;
  d.finals.push_back(false);
  d.delta.resize(static_cast<std::size_t>(d.stateCount) * d.alphabet.size());
  for (State q = 0; q < a.stateCount; ++q) {
    for (int letter = 0; letter < a.letterCount(); ++letter) {
      d.next_ref(q, letter) = a.next(q, letter);
    }
  }
  for (auto [q, letter] : missing) d.next_ref(q, letter) = dead;
  for (int letter = 0; letter < d.letterCount(); ++letter) {
    d.next_ref(dead, letter) = dead;
  }
  return d;
}

ParsedDfa assemble(int states, std::vector<std::string> alphabet, long start1,
                   const std::vector<long>& finals1,
                   std::vector<std::optional<State>> table,
                   const std::vector<std::pair<State, int>>& missing,
                   bool completePartial, int errLine) {
  Dfa a;
  a.stateCount = states;
  a.alphabet = std::move(alphabet);
  a.start = static_cast<State>(start1 - 1);
  a.finals.assign(states, false);
  for (long f : finals1) a.finals[f - 1] = true;
  a.delta.resize(table.size());
  for (std::size_t i = 0; i < table.size(); ++i) {
    a.delta[i] = table[i].value_or(0);
  }
  ParsedDfa out;
  if (!missing.empty()) {
    if (!completePartial) {
      State q = missing.front().first;
      throw ParseError("missing transition for state " +
                           std::to_string(q + 1) + " on symbol '" +
                           a.alphabet[missing.front().second] + "'",
                       errLine, 1);
    }
    a = complete_with_dead_state(std::move(a), missing);
    out.completed = true;
  }
  validate_dfa(a);
  out.dfa = std::move(a);
  return out;
}

}  // namespace

ParsedDfa parse_dfa(std::istream& in, bool completePartial) {
  LineReader r{in, 0, {}};

  auto statesTokens = expect_header(r, "states:");
  if (statesTokens.size() != 1) {
    throw ParseError("'states:' takes exactly one number", r.lineNo, 1);
  }
  long states = parse_int(statesTokens[0], r.lineNo, "state count");
  if (states < 1 || states > 10'000'000) {
    throw ParseError("state count " + std::to_string(states) + " out of range",
                     r.lineNo, statesTokens[0].column);
  }

  auto alphaTokens = expect_header(r, "alphabet:");
  if (alphaTokens.empty()) {
    throw ParseError("alphabet must contain at least one symbol", r.lineNo, 1);
  }
  std::vector<std::string> alphabet;
  std::unordered_map<std::string, int> symbolId;
  for (const Token& t : alphaTokens) {
    if (!symbolId.emplace(t.text, static_cast<int>(alphabet.size())).second) {
      throw ParseError("duplicate alphabet symbol '" + t.text + "'", r.lineNo,
                       t.column);
    }
    alphabet.push_back(t.text);
  }

  auto startTokens = expect_header(r, "start:");
  if (startTokens.size() != 1) {
    throw ParseError("'start:' takes exactly one state", r.lineNo, 1);
  }
  long start = parse_int(startTokens[0], r.lineNo, "start state");
  if (start < 1 || start > states) {
    throw ParseError("start state " + std::to_string(start) + " out of range",
                     r.lineNo, startTokens[0].column);
  }

  auto finalTokens = expect_header(r, "final:");
  std::vector<long> finals;
  std::vector<bool> finalSeen(states + 1, false);
  for (const Token& t : finalTokens) {
    long f = parse_int(t, r.lineNo, "final state");
    if (f < 1 || f > states) {
      throw ParseError("final state " + std::to_string(f) + " out of range",
                       r.lineNo, t.column);
    }
    if (finalSeen[f]) {
      throw ParseError("final state " + std::to_string(f) + " listed twice",
                       r.lineNo, t.column);
    }
    finalSeen[f] = true;
    finals.push_back(f);
  }

  const int k = static_cast<int>(alphabet.size());
  std::vector<std::optional<State>> table(
      static_cast<std::size_t>(states) * k);
  while (r.advance()) {
    if (r.tokens.size() != 3) {
      throw ParseError("transition lines have the form 'state symbol state'",
                       r.lineNo, r.tokens[0].column);
    }
    long from = parse_int(r.tokens[0], r.lineNo, "source state");
    if (from < 1 || from > states) {
      throw ParseError("state " + std::to_string(from) + " out of range",
                       r.lineNo, r.tokens[0].column);
    }
    auto sym = symbolId.find(r.tokens[1].text);
    if (sym == symbolId.end()) {
      throw ParseError("unknown symbol '" + r.tokens[1].text + "'", r.lineNo,
                       r.tokens[1].column);
    }
    long to = parse_int(r.tokens[2], r.lineNo, "target state");
    if (to < 1 || to > states) {
      throw ParseError("state " + std::to_string(to) + " out of range",
                       r.lineNo, r.tokens[2].column);
    }
    auto& cell = table[(from - 1) * static_cast<std::size_t>(k) + sym->second];
    if (cell.has_value()) {
      throw ParseError("transition for state " + std::to_string(from) +
                           " on symbol '" + r.tokens[1].text +
                           "' given twice",
                       r.lineNo, r.tokens[0].column);
    }
    cell = static_cast<State>(to - 1);
  }

  std::vector<std::pair<State, int>> missing;
  for (long q = 0; q < states; ++q) {
    for (int letter = 0; letter < k; ++letter) {
      if (!table[q * static_cast<std::size_t>(k) + letter].has_value()) {
        missing.emplace_back(static_cast<State>(q), letter);
      }
    }
  }
  return assemble(static_cast<int>(states), std::move(alphabet), start, finals,
                  std::move(table), missing, completePartial, r.lineNo + 1);
}

std::string format_dfa(const Dfa& a) {
  std::string out = "states: " + std::to_string(a.stateCount) + "\n";
  out += "alphabet:";
  for (const auto& s : a.alphabet) {
    out += ' ';
    out += s;
  }
  out += "\nstart: " + std::to_string(a.start + 1) + "\nfinal:";
  for (State q = 0; q < a.stateCount; ++q) {
    if (a.finals[q]) out += ' ' + std::to_string(q + 1);
  }
  out += '\n';
  for (State q = 0; q < a.stateCount; ++q) {
    for (int letter = 0; letter < a.letterCount(); ++letter) {
      out += std::to_string(q + 1) + ' ' + a.alphabet[letter] + ' ' +
             std::to_string(a.next(q, letter) + 1) + '\n';
    }
  }
  return out;
}

ParsedDfa parse_dfa_json(std::istream& in, bool completePartial) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(e.what(), 0, static_cast<int>(e.byte));
  }
  try {
    long states = j.at("states").get<long>();
    if (states < 1 || states > 10'000'000) {
      throw ParseError("state count out of range", 0, 1);
    }
    std::vector<std::string> alphabet =
        j.at("alphabet").get<std::vector<std::string>>();
    if (alphabet.empty()) {
      throw ParseError("alphabet must contain at least one symbol", 0, 1);
    }
    std::unordered_map<std::string, int> symbolId;
    for (int i = 0; i < static_cast<int>(alphabet.size()); ++i) {
      if (!symbolId.emplace(alphabet[i], i).second) {
        throw ParseError("duplicate alphabet symbol '" + alphabet[i] + "'", 0,
                         1);
      }
    }
    long start = j.at("start").get<long>();
    if (start < 1 || start > states) {
      throw ParseError("start state out of range", 0, 1);
    }
    std::vector<long> finals = j.at("final").get<std::vector<long>>();
    std::vector<bool> finalSeen(states + 1, false);
    for (long f : finals) {
      if (f < 1 || f > states) {
        throw ParseError("final state " + std::to_string(f) + " out of range",
                         0, 1);
      }
      if (finalSeen[f]) {
        throw ParseError("final state " + std::to_string(f) + " listed twice",
                         0, 1);
      }
      finalSeen[f] = true;
    }
    const int k = static_cast<int>(alphabet.size());
    std::vector<std::optional<State>> table(
        static_cast<std::size_t>(states) * k);
    for (const auto& t : j.at("transitions")) {
      if (!t.is_array() || t.size() != 3) {
        throw ParseError("transitions are triples [state, symbol, state]", 0,
                         1);
      }
      long from = t.at(0).get<long>();
      std::string sym = t.at(1).get<std::string>();
      long to = t.at(2).get<long>();
      if (from < 1 || from > states || to < 1 || to > states) {
        throw ParseError("transition state out of range", 0, 1);
      }
      auto it = symbolId.find(sym);
      if (it == symbolId.end()) {
        throw ParseError("unknown symbol '" + sym + "'", 0, 1);
      }
      auto& cell =
          table[(from - 1) * static_cast<std::size_t>(k) + it->second];
      if (cell.has_value()) {
        throw ParseError("transition for state " + std::to_string(from) +
                             " on symbol '" + sym + "' given twice",
                         0, 1);
      }
      cell = static_cast<State>(to - 1);
    }
    std::vector<std::pair<State, int>> missing;
    for (long q = 0; q < states; ++q) {
      for (int letter = 0; letter < k; ++letter) {
        if (!table[q * static_cast<std::size_t>(k) + letter].has_value()) {
          missing.emplace_back(static_cast<State>(q), letter);
        }
      }
    }
    return assemble(static_cast<int>(states), std::move(alphabet), start,
                    finals, std::move(table), missing, completePartial, 0);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(e.what(), 0, 1);
  }
}

std::string format_dfa_json(const Dfa& a) {
  nlohmann::ordered_json j;
  j["states"] = a.stateCount;
  j["alphabet"] = a.alphabet;
  j["start"] = a.start + 1;
  std::vector<int> finals;
  for (State q = 0; q < a.stateCount; ++q) {
    if (a.finals[q]) finals.push_back(q + 1);
  }
  j["final"] = finals;
  auto& transitions = j["transitions"] = nlohmann::ordered_json::array();
  for (State q = 0; q < a.stateCount; ++q) {
    for (int letter = 0; letter < a.letterCount(); ++letter) {
      transitions.push_back({q + 1, a.alphabet[letter], a.next(q, letter) + 1});
    }
  }
  return j.dump(2) + "\n";
}

}  // namespace gendef
