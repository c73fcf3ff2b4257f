#include "gendef/defize.hpp"

#include <algorithm>
#include <stdexcept>

#include <catch2/catch_amalgamated.hpp>

#include "fixtures.hpp"
#include "gendef/classify.hpp"
#include "gendef/semigroup.hpp"

using namespace gendef;

namespace {

// Smallest reduced generalized definite automaton whose only sink is a
// single state: nonempty words. Below the supported shape.
Dfa nonempty_words() {
  return fixtures::build(2, {"a", "b"}, {2, 2, 2, 2}, 1, {2});
}

// Three trivial states feeding a two-state sink; state 3 comes before
// state 2 in topological order, so the relabeling is not the identity.
Dfa three_step_funnel() {
  return fixtures::build(5, {"a", "b"},
                         {3, 4,   // 1
                          5, 4,   // 2
                          2, 4,   // 3
                          4, 5,   // 4: accepting half of the sink
                          4, 5},  // 5
                         1, {4});
}

Transformation letter_action(const Dfa& d, int letter) {
  std::vector<State> image(d.stateCount);
  for (State q = 0; q < d.stateCount; ++q) image[q] = d.next(q, letter);
  return Transformation(image);
}

}  // namespace

TEST_CASE("sink partition of the two-sink fixture") {
  SinkPartition p = sink_partition(fixtures::a_sigma_star_b());
  CHECK(p.initialBlock == std::vector<State>{0});
  REQUIRE(p.sinks.size() == 2);
  CHECK(p.sinks[0] == std::vector<State>{2});
  CHECK(p.sinks[1] == std::vector<State>{1, 3});
  CHECK(p.relabeling == std::vector<State>{0, 2, 1, 3});
}

TEST_CASE("sink partition without an initial block") {
  SinkPartition ends = sink_partition(fixtures::ends_with_a());
  CHECK(ends.initialBlock.empty());
  REQUIRE(ends.sinks.size() == 1);
  CHECK(ends.sinks[0] == std::vector<State>{0, 1});
  CHECK(ends.relabeling == std::vector<State>{0, 1});

  SinkPartition one = sink_partition(fixtures::single_state());
  CHECK(one.initialBlock.empty());
  CHECK(one.sinks == std::vector<std::vector<State>>{{0}});
}

TEST_CASE("initial block comes out in topological order") {
  Dfa a = three_step_funnel();
  REQUIRE(is_reduced(a));
  SinkPartition p = sink_partition(a);
  // 1 -a-> 3 -a-> 2, so the block order is 1, 3, 2.
  CHECK(p.initialBlock == std::vector<State>{0, 2, 1});
  CHECK(p.sinks == std::vector<std::vector<State>>{{3, 4}});
  CHECK(p.relabeling == std::vector<State>{0, 2, 1, 3, 4});
}

TEST_CASE("sink partition rejects unsuitable automata") {
  CHECK_THROWS_AS(sink_partition(fixtures::ends_with_a_redundant()),
                  std::invalid_argument);
  CHECK_THROWS_AS(sink_partition(fixtures::parity()), std::invalid_argument);
}

TEST_CASE("restricting the transition semigroup to a sink") {
  Dfa a = fixtures::a_sigma_star_b();

  // Every word acts as a constant on the live sink {2,4}.
  std::vector<State> live{1, 3};
  auto tc = sink_restriction_semigroup(a, live);
  REQUIRE(tc.size() == 2);
  CHECK(tc[0] == parse_transformation("(1,1)"));
  CHECK(tc[1] == parse_transformation("(2,2)"));

  // Member order does not matter.
  std::vector<State> swapped{3, 1};
  CHECK(sink_restriction_semigroup(a, swapped) == tc);

  // The dead state alone only carries the one-point identity.
  std::vector<State> dead{2};
  auto dc = sink_restriction_semigroup(a, dead);
  REQUIRE(dc.size() == 1);
  CHECK(dc[0] == parse_transformation("(1)"));

  // The full state set restricts to the semigroup itself, sorted.
  std::vector<State> all{0, 1, 2, 3};
  auto whole = sink_restriction_semigroup(a, all);
  REQUIRE(whole.size() == 4);
  CHECK(std::is_sorted(whole.begin(), whole.end()));
  CHECK(whole[0] == parse_transformation("(2,2,3,2)"));
  CHECK(whole[3] == parse_transformation("(4,4,3,4)"));
}

TEST_CASE("sink restriction input checks") {
  Dfa a = fixtures::a_sigma_star_b();
  std::vector<State> open{0, 1};  // leaks to the dead state under b
  CHECK_THROWS_AS(sink_restriction_semigroup(a, open), std::invalid_argument);
  std::vector<State> dup{1, 1};
  CHECK_THROWS_AS(sink_restriction_semigroup(a, dup), std::invalid_argument);
  std::vector<State> range{7};
  CHECK_THROWS_AS(sink_restriction_semigroup(a, range),
                  std::invalid_argument);
  std::vector<State> live{1, 3};
  CHECK_THROWS_AS(sink_restriction_semigroup(a, live, 2),
                  std::invalid_argument);
}

TEST_CASE("definite cover of the two-sink fixture") {
  DefizeResult r = defize(fixtures::a_sigma_star_b());

  CHECK(r.partition.relabeling == std::vector<State>{0, 2, 1, 3});
  CHECK(r.relabeledInput ==
        fixtures::build(4, {"a", "b"},
                        {3, 2,   // 1: start
                         2, 2,   // 2: dead, now the small sink
                         3, 4,   // 3
                         3, 4},  // 4: accepting
                        1, {4}));

  // One elevating choice times one middle-sink map times one sink element.
  CHECK(r.alphabetSize == 3 * 2 * 2);
  CHECK(r.output.stateCount == 4);
  CHECK(r.output.start == 0);
  CHECK(r.output.finals == std::vector<bool>{false, false, false, true});
  CHECK(r.output.alphabet ==
        std::vector<std::string>{"(2,3,3,3)", "(2,3,4,4)", "(2,4,3,3)",
                                 "(2,4,4,4)", "(3,3,3,3)", "(3,3,4,4)",
                                 "(3,4,3,3)", "(3,4,4,4)", "(4,3,3,3)",
                                 "(4,3,4,4)", "(4,4,3,3)", "(4,4,4,4)"});
  CHECK(std::is_sorted(r.output.alphabet.begin(), r.output.alphabet.end()));

  // Each symbol name spells out the transformation the letter performs.
  for (int letter = 0; letter < r.output.letterCount(); ++letter) {
    CHECK(parse_transformation(r.output.alphabet[letter]) ==
          letter_action(r.output, letter));
  }

  CHECK(r.verifiedReduced);
  CHECK(r.verifiedAvoidsPd);
  REQUIRE_FALSE(r.inputSyc.capped);
  CHECK(*r.inputSyc.value == 4);
  REQUIRE_FALSE(r.outputSyc.capped);
  CHECK(*r.outputSyc.value == 12);
  CHECK(r.sycMonotone == true);

  CHECK(is_definite(r.output).holds);

  // Same inputs, same outputs.
  DefizeResult again = defize(fixtures::a_sigma_star_b());
  CHECK(again.output == r.output);
}

TEST_CASE("definite cover with a three-state initial block") {
  Dfa a = three_step_funnel();
  DefizeResult r = defize(a);

  // Elevating radices 4, 3, 2 over the block, no middle sinks, two sink
  // elements.
  CHECK(r.alphabetSize == 4 * 3 * 2 * 2);
  CHECK(r.verifiedReduced);
  CHECK(r.verifiedAvoidsPd);
  REQUIRE_FALSE(r.inputSyc.capped);
  CHECK(*r.inputSyc.value == 8);
  REQUIRE_FALSE(r.outputSyc.capped);
  CHECK(*r.outputSyc.value == 48);
  CHECK(r.sycMonotone == true);
  CHECK(is_definite(r.output).holds);

  // Every letter leaves the initial block strictly upwards and the sink
  // inside itself.
  for (int letter = 0; letter < r.output.letterCount(); ++letter) {
    for (State q = 0; q < 3; ++q) CHECK(r.output.next(q, letter) > q);
    for (State q = 3; q < 5; ++q) CHECK(r.output.next(q, letter) >= 3);
  }
}

TEST_CASE("definite cover rejections") {
  CHECK_THROWS_AS(defize(fixtures::ends_with_a_redundant()),
                  std::invalid_argument);
  CHECK_THROWS_AS(defize(fixtures::parity()), std::invalid_argument);
  CHECK_THROWS_WITH(defize(nonempty_words()),
                    Catch::Matchers::ContainsSubstring("single state"));
  CHECK_THROWS_WITH(defize(fixtures::a_sigma_star_b(), 11),
                    Catch::Matchers::ContainsSubstring("12 symbols"));
  CHECK_THROWS_AS(defize(fixtures::a_sigma_star_b(), 10'000, 2),
                  std::invalid_argument);
}
