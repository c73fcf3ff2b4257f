#include "gendef/randgen.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

#include "gendef/classify.hpp"

namespace gendef {

namespace {

std::string symbol_name(int i) {
  if (i < 26) return std::string(1, static_cast<char>('a' + i));
  return "s" + std::to_string(i);
}

bool draw_final(SplitMix64& rng, double density) {
  // Top 53 bits against density * 2^53: an exact dyadic threshold, so the
  // same seed gives the same final set on every platform.
  auto threshold = static_cast<std::uint64_t>(density * 9007199254740992.0);
  return (rng.next() >> 11) < threshold;
}

}  // namespace

Dfa generate_random_dfa(const GeneratorConfig& cfg) {
  if (cfg.stateCount < 1) throw std::invalid_argument("need at least one state");
  if (cfg.alphabetSize < 1) throw std::invalid_argument("need at least one symbol");
  if (!(cfg.finalDensity >= 0.0 && cfg.finalDensity <= 1.0)) {
    throw std::invalid_argument("final density must lie in [0, 1]");
  }

  const int n = cfg.stateCount;
  const int k = cfg.alphabetSize;
  SplitMix64 rng(cfg.seed);

  Dfa d;
  d.stateCount = n;
  d.start = 0;
  for (int i = 0; i < k; ++i) d.alphabet.push_back(symbol_name(i));
  d.delta.assign(static_cast<std::size_t>(n) * k, 0);

  if (cfg.mode == GeneratorMode::Uniform) {
    // Draw order: transitions state-major in symbol order, then one draw
    // per state for finality.
    for (State q = 0; q < n; ++q) {
      for (int letter = 0; letter < k; ++letter) {
        d.next_ref(q, letter) = static_cast<State>(rng.below(n));
      }
    }
    d.finals.resize(n);
    for (State q = 0; q < n; ++q) d.finals[q] = draw_final(rng, cfg.finalDensity);
    validate_dfa(d);
    return d;
  }

  // Positive mode: a strictly forward prefix feeding one to three sink
  // blocks in which every symbol acts as a constant. Draw order: sink
  // count, sink sizes, per-sink per-symbol constants, prefix transitions
  // state-major in symbol order, finality per state.
  if (n == 1) {
    for (int letter = 0; letter < k; ++letter) d.next_ref(0, letter) = 0;
    d.finals = {draw_final(rng, cfg.finalDensity)};
    validate_dfa(d);
    return d;
  }

  int sinkCount = 1 + static_cast<int>(rng.below(3));
  int budget = n - 1;  // keep at least one prefix state
  std::vector<int> sizes;
  for (int t = 0; t < sinkCount && budget > 0; ++t) {
    int size = 1 + static_cast<int>(rng.below(std::min(3, budget)));
    sizes.push_back(size);
    budget -= size;
  }
  int prefix = n;
  for (int size : sizes) prefix -= size;

  int base = prefix;
  for (int size : sizes) {
    for (int letter = 0; letter < k; ++letter) {
      State constant = base + static_cast<State>(rng.below(size));
      for (State q = base; q < base + size; ++q) d.next_ref(q, letter) = constant;
    }
    base += size;
  }
  for (State q = 0; q < prefix; ++q) {
    for (int letter = 0; letter < k; ++letter) {
      d.next_ref(q, letter) = q + 1 + static_cast<State>(rng.below(n - q - 1));
    }
  }
  d.finals.resize(n);
  for (State q = 0; q < n; ++q) d.finals[q] = draw_final(rng, cfg.finalDensity);
  validate_dfa(d);
  return d;
}

std::vector<BenchRow> bench_gendef(std::span<const int> sizes,
                                   const GeneratorConfig& base) {
  std::vector<BenchRow> rows;
  for (int n : sizes) {
    GeneratorConfig cfg = base;
    cfg.stateCount = n;
    cfg.seed = base.seed + static_cast<std::uint64_t>(n);
    Dfa d = generate_random_dfa(cfg);

    std::vector<double> millis;
    bool verdict = false;
    for (int run = 0; run < 5; ++run) {
      auto before = std::chrono::steady_clock::now();
      verdict = is_generalized_definite(d).holds;
      auto after = std::chrono::steady_clock::now();
      millis.push_back(
          std::chrono::duration<double, std::milli>(after - before).count());
    }
    std::sort(millis.begin(), millis.end());
    rows.push_back({n, millis[2], verdict});
  }
  return rows;
}

}  // namespace gendef
