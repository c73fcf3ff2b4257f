#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gendef/dfa.hpp"

namespace gendef {

/// splitmix64: bit-stable across platforms, constants fixed.
/// Sequence: z = (state += 0x9E3779B97F4A7C15); z = (z ^ z>>30) *
/// 0xBF58476D1CE4E5B9; z = (z ^ z>>27) * 0x94D049BB133111EB; z ^ z>>31.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// next() % bound; the modulo bias is irrelevant for test-instance
  /// generation and keeps the sequence easy to reproduce.
  std::uint64_t below(std::uint64_t bound) { return next() % bound; }

 private:
  std::uint64_t state_;
};

enum class GeneratorMode {
  Uniform,          ///< independent uniform transitions and finals
  GendefPositive,   ///< forward DAG prefix feeding constant-acting sinks
};

struct GeneratorConfig {
  std::uint64_t seed = 1;
  int stateCount = 4;
  int alphabetSize = 2;
  GeneratorMode mode = GeneratorMode::Uniform;
  double finalDensity = 0.5;
};

/// Deterministic: equal configs give bit-identical automata. Draw order is
/// documented in the README. Alphabet symbols are "a", "b", ..., "z", then
/// "s26", "s27", ... past 26 letters.
Dfa generate_random_dfa(const GeneratorConfig& cfg);

struct BenchRow {
  int stateCount = 0;
  double millis = 0.0;   ///< median of five runs
  bool verdict = false;  ///< the classification result, as a sanity anchor
};

/// Times is_generalized_definite on one generated instance per size;
/// median of five runs each, steady_clock.
std::vector<BenchRow> bench_gendef(std::span<const int> sizes,
                                   const GeneratorConfig& base);

}  // namespace gendef
