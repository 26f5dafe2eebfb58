#include <catch2/catch_amalgamated.hpp>

#include <dsc/decomposition.hpp>
#include <dsc/hardness.hpp>
#include <dsc/observation.hpp>

#include <random>

#include "helpers.hpp"

using namespace dsc;
using helpers::events;
using helpers::marked;
using helpers::random_generator;
using helpers::word;

TEST_CASE("disjoint acceptors reduce to a separable instance") {
  Generator g1 = marked("ab", {"a"});
  Generator g2 = marked("ab", {"b"});
  ReductionInstance inst = build_separability_instance({g1, g2});

  // padded to three inputs over Sigma cup {e1,e2,e3,c}
  CHECK(inst.padded_inputs == 1);
  REQUIRE(inst.marker_events.size() == 3);
  CHECK(inst.alphabets.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK_FALSE(inst.alphabets[i].count(inst.marker_events[i]));
    CHECK(inst.alphabets[i].count(inst.final_event) == 1);
  }

  CHECK_FALSE(intersection_nonempty_oracle({g1, g2}).nonempty);
  CHECK(is_separable(inst.h, inst.alphabets).separable);
}

TEST_CASE("a common word makes the instance inseparable") {
  Generator g = marked("ab", {"a"});
  ReductionInstance inst = build_separability_instance({g, g, g});

  IntersectionResult common = intersection_nonempty_oracle({g, g, g});
  REQUIRE(common.nonempty);
  CHECK(*common.witness == word("a"));

  SeparabilityResult sep = is_separable(inst.h, inst.alphabets);
  REQUIRE_FALSE(sep.separable);
  REQUIRE(sep.witness.has_value());
  // the witness is the common word followed by the completion event: it
  // projects into every P_i(L(H)) yet is not itself a word of L(H)
  CHECK(*sep.witness == Word{"a", inst.final_event});
  CHECK_FALSE(inst.h.contains_marked(*sep.witness));
  for (const Alphabet& a : inst.alphabets) {
    Generator pi = project(inst.h, a);
    CHECK(pi.contains_marked(project_word(*sep.witness, a)));
  }
}

TEST_CASE("empty acceptors reduce to a separable instance") {
  Generator none = Generator::empty(events("ab"));
  ReductionInstance inst = build_separability_instance({none, none, none});
  CHECK_FALSE(intersection_nonempty_oracle({none, none, none}).nonempty);
  CHECK(is_separable(inst.h, inst.alphabets).separable);
}

TEST_CASE("instance structure embeds the input acceptors") {
  Generator g1 = marked("ab", {"ab"});
  Generator g2 = marked("ab", {"b"});
  ReductionInstance inst = build_separability_instance({g1, g2});
  const Event e1 = inst.marker_events[0];
  const Event e2 = inst.marker_events[1];
  const Event c = inst.final_event;

  // e_i, then an accepted word of G_i, then c, is always a word of H
  CHECK(inst.h.contains_marked(Word{e1, "a", "b", c}));
  CHECK(inst.h.contains_marked(Word{e2, "b", c}));
  // non-accepted continuations do not reach the completion event
  CHECK_FALSE(inst.h.contains_marked(Word{e1, "a", c}));
  CHECK_FALSE(inst.h.contains_marked(Word{e2, "b", "b", c}));
  // a marker event right after e_i switches to the marker loop
  CHECK(inst.h.contains_marked(Word{e1, e2, e1, e2}));
  CHECK_FALSE(inst.h.contains_marked(Word{e1, "a", e2}));
  // plain alphabet words bypass the acceptors entirely
  CHECK(inst.h.contains_marked(word("abba")));
  CHECK_FALSE(inst.h.contains_marked(Word{"a", c}));

  CHECK_THROWS_AS(build_separability_instance({}), domain_error);
  CHECK_THROWS_AS(
      build_separability_instance({g1, marked("abc", {"c"})}), domain_error);
}

TEST_CASE("reduction equivalence holds on random acceptors") {
  std::mt19937 rng(71);
  int nonempty_seen = 0;
  for (int round = 0; round < 40; ++round) {
    std::vector<Generator> dfas;
    std::uniform_int_distribution<int> count(1, 3);
    int n = count(rng);
    for (int i = 0; i < n; ++i) dfas.push_back(random_generator(rng, "abc", 4));

    IntersectionResult oracle = intersection_nonempty_oracle(dfas);
    if (oracle.nonempty) {
      ++nonempty_seen;
      // the reported witness really is a common accepted word
      for (const Generator& g : dfas) CHECK(g.contains_marked(*oracle.witness));
    }

    ReductionInstance inst = build_separability_instance(dfas);
    SeparabilityResult sep = is_separable(inst.h, inst.alphabets);
    CHECK(sep.separable == !oracle.nonempty);
  }
  CHECK(nonempty_seen >= 5);
}
