// Command-line front end: every subcommand reads the formats described in
// the README, prints text by default and JSON with --json, and exits 0 on
// success, 1 on a property violation, 2 on bad input.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gendef/classify.hpp"
#include "gendef/defize.hpp"
#include "gendef/dfa.hpp"
#include "gendef/error.hpp"
#include "gendef/randgen.hpp"
#include "gendef/search.hpp"
#include "gendef/semigroup.hpp"
#include "gendef/transformation.hpp"

namespace {

using nlohmann::ordered_json;

std::string read_all(const std::string& path) {
  if (path == "-") {
    std::ostringstream buffer;
    buffer << std::cin.rdbuf();
    return buffer.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Text and JSON automata are told apart by the first meaningful byte; a
// text file can never start with '{'.
gendef::ParsedDfa read_dfa(const std::string& path, bool completePartial) {
  std::string content = read_all(path);
  std::size_t at = content.find_first_not_of(" \t\r\n");
  std::istringstream in(content);
  if (at != std::string::npos && content[at] == '{') {
    return gendef::parse_dfa_json(in, completePartial);
  }
  return gendef::parse_dfa(in, completePartial);
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string witness_text(const gendef::Dfa& a,
                         const gendef::PatternWitness& w) {
  std::string out = "p=" + std::to_string(w.p + 1) +
                    " q=" + std::to_string(w.q + 1) +
                    " x=" + gendef::format_word(a, w.x);
  if (w.y) out += " y=" + gendef::format_word(a, *w.y);
  return out;
}

ordered_json semigroup_json(const gendef::TransformationSemigroup& s) {
  ordered_json j;
  j["degree"] = s.degree;
  j["size"] = s.size();
  j["truncated"] = s.truncated;
  ordered_json elems = ordered_json::array();
  for (const auto& f : s.elements) {
    elems.push_back(gendef::format_transformation(f));
  }
  j["elements"] = std::move(elems);
  return j;
}

void emit(const ordered_json& j) { std::cout << j.dump(2) << "\n"; }

int cmd_classify(const std::string& path, bool complete, bool oracle,
                 std::size_t cap, bool json) {
  gendef::Dfa a = read_dfa(path, complete).dfa;
  gendef::ClassifyOptions options;
  options.runOracle = oracle;
  options.cap = cap;
  gendef::ClassificationReport r = gendef::classify_report(a, options);
  if (json) {
    std::cout << gendef::report_to_json(r);
    return 0;
  }
  std::cout << "minimized size: " << r.minimizedSize << "\n";
  std::cout << "definite: " << yes_no(r.definite);
  if (r.pdWitness) std::cout << "  (" << witness_text(r.minimal, *r.pdWitness) << ")";
  std::cout << "\n";
  std::cout << "generalized definite: " << yes_no(r.generalizedDefinite);
  if (r.pgWitness) std::cout << "  (" << witness_text(r.minimal, *r.pgWitness) << ")";
  std::cout << "\n";
  std::cout << "syntactic complexity: ";
  if (r.syntacticComplexity.capped) {
    std::cout << "exceeds cap\n";
  } else {
    std::cout << *r.syntacticComplexity.value << "\n";
  }
  if (r.oracle == gendef::OracleRun::Ran) {
    std::cout << "oracle definite identity: " << yes_no(*r.definiteIdentity)
              << "\n";
    std::cout << "oracle gendef identity: " << yes_no(*r.gendefIdentity)
              << "\n";
  } else if (r.oracle == gendef::OracleRun::SkippedCapped) {
    std::cout << "oracle: skipped (closure capped)\n";
  }
  return 0;
}

int cmd_minimize(const std::string& path, bool complete, bool json) {
  gendef::Dfa a = read_dfa(path, complete).dfa;
  gendef::Dfa m = gendef::minimize(a).dfa;
  std::cout << (json ? gendef::format_dfa_json(m) : gendef::format_dfa(m));
  return 0;
}

int cmd_semigroup(const std::string& path, bool complete, std::size_t cap,
                  bool json) {
  gendef::Dfa a = read_dfa(path, complete).dfa;
  gendef::TransformationSemigroup s = gendef::transition_semigroup(a, cap);
  if (json) {
    emit(semigroup_json(s));
  } else {
    if (s.truncated) {
      std::cout << "# truncated: closure stopped at " << s.size()
                << " elements\n";
    }
    std::cout << gendef::format_semigroup_file(s);
  }
  if (s.truncated) {
    std::cerr << "warning: closure hit the cap of " << cap << "\n";
  }
  return 0;
}

int cmd_syc(const std::string& path, bool complete, std::size_t cap,
            bool json) {
  gendef::Dfa a = read_dfa(path, complete).dfa;
  gendef::SycResult r = gendef::syntactic_complexity(a, cap);
  if (json) {
    ordered_json j;
    if (r.capped) {
      j["syntactic_complexity"] = "exceeds cap";
    } else {
      j["syntactic_complexity"] = *r.value;
    }
    emit(j);
  } else if (r.capped) {
    std::cout << "syntactic complexity: exceeds cap\n";
  } else {
    std::cout << "syntactic complexity: " << *r.value << "\n";
  }
  return 0;
}

int cmd_np_check(const std::string& vector, bool json) {
  gendef::Transformation f = gendef::parse_transformation(vector);
  bool byCycles = gendef::is_nonpermutational_cycles(f);
  bool byPower = gendef::is_nonpermutational_idempotent(f);
  if (byCycles != byPower) {
    std::cerr << "property violation: the two decision procedures disagree on "
              << gendef::format_transformation(f) << "\n";
    return 1;
  }
  std::vector<gendef::State> fixed = gendef::fixed_points(f);
  if (json) {
    ordered_json j;
    j["transformation"] = gendef::format_transformation(f);
    j["nonpermutational"] = byCycles;
    ordered_json fp = ordered_json::array();
    for (gendef::State q : fixed) fp.push_back(q + 1);
    j["fixed_points"] = std::move(fp);
    if (byCycles) {
      gendef::IlaStructure ila = gendef::ila_structure(f);
      j["root"] = ila.root + 1;
      ordered_json depth = ordered_json::array();
      for (int d : ila.depth) depth.push_back(d);
      j["depth"] = std::move(depth);
    }
    emit(j);
  } else {
    std::cout << gendef::format_transformation(f) << ": "
              << (byCycles ? "nonpermutational" : "permutational") << "\n";
    std::cout << "fixed points:";
    for (gendef::State q : fixed) std::cout << " " << q + 1;
    if (fixed.empty()) std::cout << " none";
    std::cout << "\n";
    if (byCycles) {
      gendef::IlaStructure ila = gendef::ila_structure(f);
      std::cout << "root: " << ila.root + 1 << "\n";
    }
  }
  return 0;
}

int cmd_bounds(int n, bool json) {
  std::uint64_t candidate = gendef::floor_e_factorial(n);
  std::optional<std::uint64_t> bound;
  if (n >= 3) bound = gendef::theorem_bound(n);
  bool anomalous = bound && candidate > *bound;
  if (json) {
    ordered_json j;
    j["n"] = n;
    j["candidate_size"] = candidate;
    if (bound) {
      j["upper_bound"] = *bound;
    } else {
      j["upper_bound"] = nullptr;
    }
    j["anomalous"] = anomalous;
    emit(j);
  } else {
    std::cout << "candidate size: " << candidate << "\n";
    if (bound) {
      std::cout << "upper bound: " << *bound << "\n";
    } else {
      std::cout << "upper bound: undefined below n=3\n";
    }
    if (anomalous) {
      std::cout << "note: candidate exceeds the bound at n=" << n
                << "; the bound does not apply here\n";
    }
  }
  return 0;
}

int cmd_candidate_b(int n, int guard, bool json) {
  gendef::TransformationSemigroup b = gendef::candidate_b(n, guard);
  gendef::ClosureCheck closure = gendef::is_closed(b);
  bool allNp = true;
  for (const auto& f : b.elements) allNp = allNp && gendef::is_nonpermutational(f);
  if (json) {
    ordered_json j = semigroup_json(b);
    j["closed"] = closure.closed;
    j["all_nonpermutational"] = allNp;
    emit(j);
  } else {
    std::cout << "# size: " << b.size() << ", closed: " << yes_no(closure.closed)
              << ", all nonpermutational: " << yes_no(allNp) << "\n";
    std::cout << gendef::format_semigroup_file(b);
  }
  return closure.closed && allNp ? 0 : 1;
}

void write_witness(const gendef::TransformationSemigroup& s,
                   const std::string& outPath) {
  std::ofstream out(outPath, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write '" + outPath + "'");
  out << gendef::format_semigroup_file(s);
}

int cmd_search_max(int n, std::uint64_t maxNodes, double maxSeconds,
                   int threads, const std::string& outPath, bool json) {
  gendef::SearchBudget budget;
  budget.maxNodes = maxNodes;
  budget.maxSeconds = maxSeconds;
  budget.threads = threads;
  gendef::SearchResult r = n <= 3 ? gendef::max_np_subsemigroup_exact(n)
                                  : gendef::max_np_subsemigroup_bnb(n, budget);
  if (json) {
    ordered_json j;
    j["n"] = n;
    j["best_size"] = r.bestSize;
    j["exhaustive"] = r.exhaustive;
    j["explored_nodes"] = r.exploredNodes;
    j["incumbents_certified"] = r.incumbentsCertified;
    j["witness"] = semigroup_json(r.witness);
    emit(j);
  } else {
    std::cout << "# best size: " << r.bestSize << "\n";
    std::cout << "# exhaustive: " << yes_no(r.exhaustive) << "\n";
    std::cout << "# explored nodes: " << r.exploredNodes << "\n";
    std::cout << "# incumbents certified: " << r.incumbentsCertified << "\n";
    std::cout << gendef::format_semigroup_file(r.witness);
  }
  if (!outPath.empty()) write_witness(r.witness, outPath);
  return 0;
}

int cmd_search_defsyc(int n, std::uint64_t maxNodes, double maxSeconds,
                      const std::string& outPath, bool json) {
  gendef::SearchBudget budget;
  budget.maxNodes = maxNodes;
  budget.maxSeconds = maxSeconds;
  gendef::DefSycResult r = gendef::max_definite_syc(n, budget);
  std::string finals;
  for (std::size_t q = 0; q < r.finals.size(); ++q) {
    if (r.finals[q]) finals += (finals.empty() ? "" : " ") + std::to_string(q + 1);
  }
  if (json) {
    ordered_json j;
    j["n"] = n;
    j["best_size"] = r.bestSize;
    j["exhaustive"] = r.exhaustive;
    j["explored_nodes"] = r.exploredNodes;
    j["start"] = r.start + 1;
    ordered_json f = ordered_json::array();
    for (std::size_t q = 0; q < r.finals.size(); ++q) {
      if (r.finals[q]) f.push_back(q + 1);
    }
    j["final"] = std::move(f);
    j["witness"] = semigroup_json(r.witness);
    emit(j);
  } else {
    std::cout << "# best size: " << r.bestSize << "\n";
    std::cout << "# exhaustive: " << yes_no(r.exhaustive) << "\n";
    std::cout << "# explored nodes: " << r.exploredNodes << "\n";
    std::cout << "# start: " << r.start + 1 << ", final: "
              << (finals.empty() ? "(none)" : finals) << "\n";
    std::cout << gendef::format_semigroup_file(r.witness);
  }
  if (!outPath.empty()) write_witness(r.witness, outPath);
  return 0;
}

ordered_json sidecar_json(const gendef::DefizeResult& r) {
  ordered_json j;
  j["alphabet_size"] = r.alphabetSize;
  if (r.inputSyc.capped) {
    j["input_syc"] = "exceeds cap";
  } else {
    j["input_syc"] = *r.inputSyc.value;
  }
  if (r.outputSyc.capped) {
    j["output_syc"] = "exceeds cap";
  } else {
    j["output_syc"] = *r.outputSyc.value;
  }
  ordered_json v;
  v["reduced"] = r.verifiedReduced;
  v["avoids_loop_pair"] = r.verifiedAvoidsPd;
  if (r.sycMonotone) {
    v["syc_monotone"] = *r.sycMonotone;
  } else {
    v["syc_monotone"] = nullptr;
  }
  j["verified"] = std::move(v);
  return j;
}

int cmd_defize(const std::string& path, bool complete, std::size_t maxAlphabet,
               std::size_t cap, const std::string& outPath, bool json) {
  gendef::Dfa a = read_dfa(path, complete).dfa;
  gendef::DefizeResult r = gendef::defize(a, maxAlphabet, cap);
  ordered_json sidecar = sidecar_json(r);
  if (json) {
    ordered_json j;
    std::istringstream dfaJson(gendef::format_dfa_json(r.output));
    j["automaton"] = ordered_json::parse(dfaJson);
    for (auto& [key, value] : sidecar.items()) j[key] = value;
    emit(j);
  } else if (!outPath.empty()) {
    std::ofstream out(outPath, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot write '" + outPath + "'");
    out << gendef::format_dfa(r.output);
    std::ofstream side(outPath + ".json", std::ios::binary);
    if (!side) throw std::invalid_argument("cannot write '" + outPath + ".json'");
    side << sidecar.dump(2) << "\n";
  } else {
    std::cout << gendef::format_dfa(r.output);
    std::cerr << sidecar.dump() << "\n";
  }
  bool ok = r.verifiedReduced && r.verifiedAvoidsPd &&
            r.sycMonotone.value_or(true);
  if (!ok) std::cerr << "property violation: a verified postcondition failed\n";
  return ok ? 0 : 1;
}

int cmd_randgen(std::uint64_t seed, int states, int alphabetSize,
                const std::string& mode, double density, bool json) {
  gendef::GeneratorConfig cfg;
  cfg.seed = seed;
  cfg.stateCount = states;
  cfg.alphabetSize = alphabetSize;
  cfg.finalDensity = density;
  if (mode == "uniform") {
    cfg.mode = gendef::GeneratorMode::Uniform;
  } else if (mode == "gendef-positive") {
    cfg.mode = gendef::GeneratorMode::GendefPositive;
  } else {
    throw std::invalid_argument("unknown mode '" + mode +
                                "' (expected uniform or gendef-positive)");
  }
  gendef::Dfa d = gendef::generate_random_dfa(cfg);
  std::cout << (json ? gendef::format_dfa_json(d) : gendef::format_dfa(d));
  return 0;
}

int cmd_bench(const std::vector<int>& sizes, std::uint64_t seed,
              int alphabetSize, bool json) {
  gendef::GeneratorConfig base;
  base.seed = seed;
  base.alphabetSize = alphabetSize;
  base.mode = gendef::GeneratorMode::GendefPositive;
  std::vector<gendef::BenchRow> rows = gendef::bench_gendef(sizes, base);
  if (json) {
    ordered_json j = ordered_json::array();
    for (const auto& row : rows) {
      ordered_json item;
      item["states"] = row.stateCount;
      item["millis"] = row.millis;
      item["generalized_definite"] = row.verdict;
      j.push_back(std::move(item));
    }
    emit(j);
  } else {
    std::cout << "states  millis  generalized definite\n";
    for (const auto& row : rows) {
      std::cout << row.stateCount << "  " << row.millis << "  "
                << yes_no(row.verdict) << "\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"transformation semigroups and generalized definite automata"};
  app.require_subcommand(1);
  int code = 0;

  std::string input = "-";
  std::string vector;
  std::string outPath;
  std::string mode = "uniform";
  bool json = false;
  bool complete = false;
  bool oracle = false;
  std::size_t cap = gendef::kDefaultClosureCap;
  std::size_t maxAlphabet = 10'000;
  int n = 3;
  int guard = 8;
  int states = 4;
  int alphabetSize = 2;
  int threads = 1;
  double density = 0.5;
  double maxSeconds = 0.0;
  std::uint64_t seed = 1;
  std::uint64_t maxNodes = 10'000'000;
  std::vector<int> sizes = {500, 1000, 2000, 4000};

  auto add_input = [&](CLI::App* cmd) {
    cmd->add_option("input", input, "automaton file, or '-' for stdin")
        ->required();
    cmd->add_flag("--complete", complete,
                  "route missing transitions to a fresh dead state");
  };
  auto add_json = [&](CLI::App* cmd) {
    cmd->add_flag("--json", json, "JSON output");
  };
  auto add_cap = [&](CLI::App* cmd) {
    cmd->add_option("--cap", cap, "closure size cap");
  };

  CLI::App* classify = app.add_subcommand(
      "classify", "definite / generalized definite classification");
  add_input(classify);
  add_json(classify);
  add_cap(classify);
  classify->add_flag("--oracle", oracle,
                     "also evaluate the two semigroup identities");
  classify->callback(
      [&] { code = cmd_classify(input, complete, oracle, cap, json); });

  CLI::App* minimizeCmd =
      app.add_subcommand("minimize", "canonical minimal automaton");
  add_input(minimizeCmd);
  add_json(minimizeCmd);
  minimizeCmd->callback([&] { code = cmd_minimize(input, complete, json); });

  CLI::App* semigroupCmd = app.add_subcommand(
      "semigroup", "transition semigroup of the automaton as given");
  add_input(semigroupCmd);
  add_json(semigroupCmd);
  add_cap(semigroupCmd);
  semigroupCmd->callback(
      [&] { code = cmd_semigroup(input, complete, cap, json); });

  CLI::App* sycCmd = app.add_subcommand(
      "syc", "syntactic complexity (semigroup of the minimal automaton)");
  add_input(sycCmd);
  add_json(sycCmd);
  add_cap(sycCmd);
  sycCmd->callback([&] { code = cmd_syc(input, complete, cap, json); });

  CLI::App* npCheck = app.add_subcommand(
      "np-check", "decide nonpermutationality of one transformation");
  npCheck->add_option("vector", vector, "vector notation, e.g. \"(2,3,3)\"")
      ->required();
  add_json(npCheck);
  npCheck->callback([&] { code = cmd_np_check(vector, json); });

  CLI::App* bounds =
      app.add_subcommand("bounds", "candidate size and the upper bound");
  bounds->add_option("n", n, "degree")->required()->check(CLI::Range(1, 20));
  add_json(bounds);
  bounds->callback([&] { code = cmd_bounds(n, json); });

  CLI::App* candidate =
      app.add_subcommand("candidate-b", "the candidate semigroup, verified");
  candidate->add_option("n", n, "degree")->required();
  candidate->add_option("--guard", guard, "largest degree to allow");
  add_json(candidate);
  candidate->callback([&] { code = cmd_candidate_b(n, guard, json); });

  CLI::App* searchMax = app.add_subcommand(
      "search-max",
      "largest closed set of nonpermutational transformations");
  searchMax->add_option("n", n, "degree")->required();
  searchMax->add_option("--budget-nodes", maxNodes, "node budget");
  searchMax->add_option("--budget-secs", maxSeconds, "time budget, seconds");
  searchMax->add_option("--threads", threads, "worker threads (1 = serial)");
  searchMax->add_option("-o,--out", outPath, "also write the witness here");
  add_json(searchMax);
  searchMax->callback([&] {
    code = cmd_search_max(n, maxNodes, maxSeconds, threads, outPath, json);
  });

  CLI::App* searchDef = app.add_subcommand(
      "search-defsyc",
      "largest such set realizable as the letters of a reduced automaton");
  searchDef->add_option("n", n, "degree")->required();
  searchDef->add_option("--budget-nodes", maxNodes, "node budget");
  searchDef->add_option("--budget-secs", maxSeconds, "time budget, seconds");
  searchDef->add_option("-o,--out", outPath, "also write the witness here");
  add_json(searchDef);
  searchDef->callback([&] {
    code = cmd_search_defsyc(n, maxNodes, maxSeconds, outPath, json);
  });

  CLI::App* defizeCmd = app.add_subcommand(
      "defize", "definite automaton with no smaller transition semigroup");
  add_input(defizeCmd);
  add_json(defizeCmd);
  add_cap(defizeCmd);
  defizeCmd->add_option("--max-alphabet", maxAlphabet,
                        "refuse to build a larger output alphabet");
  defizeCmd->add_option("-o,--out", outPath,
                        "write the automaton here and the sidecar next to it");
  defizeCmd->callback([&] {
    code = cmd_defize(input, complete, maxAlphabet, cap, outPath, json);
  });

  CLI::App* randgen =
      app.add_subcommand("randgen", "seeded random automaton");
  randgen->add_option("--seed", seed, "PRNG seed");
  randgen->add_option("--states", states, "state count");
  randgen->add_option("--alphabet-size", alphabetSize, "symbol count");
  randgen->add_option("--mode", mode, "uniform or gendef-positive");
  randgen->add_option("--final-density", density, "P(state is final)");
  add_json(randgen);
  randgen->callback([&] {
    code = cmd_randgen(seed, states, alphabetSize, mode, density, json);
  });

  CLI::App* bench = app.add_subcommand(
      "bench-gendef", "time the classifier on generated instances");
  bench->add_option("--sizes", sizes, "state counts to measure");
  bench->add_option("--seed", seed, "PRNG seed");
  bench->add_option("--alphabet-size", alphabetSize, "symbol count");
  add_json(bench);
  bench->callback([&] { code = cmd_bench(sizes, seed, alphabetSize, json); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int r = app.exit(e);
    return r == 0 ? 0 : 2;
  } catch (const gendef::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::logic_error& e) {
    std::cerr << "property violation: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return code;
}
