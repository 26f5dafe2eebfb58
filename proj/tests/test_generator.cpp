#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <set>

#include "dsc/generator.hpp"
#include "helpers.hpp"

using namespace dsc;
using namespace helpers;

TEST_CASE("word formatting uses '-' for the empty word") {
  CHECK(word_to_string({}) == "-");
  CHECK(word_to_string(word("abc")) == "a b c");
}

TEST_CASE("trim keeps exactly the accessible and coaccessible part") {
  RawGenerator raw;
  raw.alphabet = events("ab");
  raw.states = {"q0", "q1", "dead", "unreachable"};
  raw.initial = "q0";
  raw.marked = {"q1"};
  raw.transitions = {{"q0", "a", "q1"},
                     {"q0", "b", "dead"},
                     {"unreachable", "a", "q1"}};
  Generator g = build_and_trim(raw);
  CHECK(g.num_states() == 2);
  CHECK(g.contains_marked(word("a")));
  CHECK_FALSE(g.contains_generated(word("b")));
}

TEST_CASE("build_and_trim rejects malformed inputs") {
  RawGenerator raw;
  raw.alphabet = events("ab");
  raw.states = {"q0"};
  raw.initial = "q0";
  raw.marked = {"q0"};
  raw.transitions = {{"q0", "a", "q0"}, {"q0", "a", "q0"}};
  CHECK_THROWS_AS(build_and_trim(raw), format_error);  // duplicate transition
  raw.transitions = {{"q0", "c", "q0"}};
  CHECK_THROWS_AS(build_and_trim(raw), format_error);  // undeclared event
  raw.transitions = {{"q0", "a", "q9"}};
  CHECK_THROWS_AS(build_and_trim(raw), format_error);  // undeclared state
}

TEST_CASE("empty language generator") {
  Generator g = Generator::empty(events("ab"));
  CHECK(g.is_empty_language());
  CHECK(language(g, 3).empty());
  CHECK(trim(g).is_empty_language());
  Generator no_marked = from_marked_words(events("ab"), {});
  CHECK(no_marked.is_empty_language());
}

TEST_CASE("marked and closed word constructions enumerate back") {
  Generator g = marked("ab", {"ab", "b"});
  CHECK(language(g, 4) == to_set({"ab", "b"}));
  // generated language is the closure of the marked one (trie is trim)
  CHECK(language(g, 4, false) == to_set({"", "a", "ab", "b"}));

  Generator c = closed("ab", {"ab", "b"});
  CHECK(language(c, 4) == to_set({"", "a", "ab", "b"}));
  CHECK(is_prefix_closed(c));
}

TEST_CASE("enumerate_words is length-lexicographic in declared order") {
  Generator g = closed("ba", {"ba", "ab"});  // declared order: b before a
  std::vector<Word> ws = enumerate_words(g, 2, true);
  REQUIRE(ws.size() == 5);
  CHECK(ws[0] == Word{});
  CHECK(ws[1] == word("b"));
  CHECK(ws[2] == word("a"));
  CHECK(ws[3] == word("ba"));
  CHECK(ws[4] == word("ab"));
}

TEST_CASE("synchronous product synchronizes shared and interleaves private") {
  Generator g1 = marked("ab", {"ab"});
  Generator g2 = marked("bc", {"cb"});
  Generator p = sync_product({g1, g2});
  CHECK(p.alphabet_set() == alphabet("abc"));
  // b is shared; a and c are private
  CHECK(language(p, 4) == to_set({"acb", "cab"}));
}

TEST_CASE("product over a common alphabet is language intersection") {
  Generator g1 = marked("ab", {"a", "ab", "bb"});
  Generator g2 = marked("ab", {"ab", "bb", "ba"});
  Generator p = trim(sync_product({g1, g2}));
  CHECK(language(p, 4) == to_set({"ab", "bb"}));
}

TEST_CASE("product is not trimmed so blocking is observable") {
  // g1 marks ab, g2 marks a: after the shared a, g1 still wants b but the
  // product state is not coaccessible
  Generator g1 = marked("ab", {"ab"});
  Generator g2 = marked("ab", {"a"});
  Generator p = sync_product({g1, g2});
  CHECK(p.contains_generated(word("a")));
  CHECK(language(p, 4).empty());
  NonconflictResult nc = is_nonconflicting({g1, g2});
  REQUIRE_FALSE(nc.nonconflicting);
  CHECK(*nc.blocking_word == word("a"));
}

TEST_CASE("nonconflicting pair passes") {
  Generator g1 = closed("ab", {"ab"});
  Generator g2 = closed("ab", {"ab"});
  CHECK(is_nonconflicting({g1, g2}).nonconflicting);
}

TEST_CASE("prefix closure marks every generated prefix") {
  Generator g = marked("ab", {"ab"});
  CHECK_FALSE(is_prefix_closed(g));
  Generator c = prefix_closure(g);
  CHECK(is_prefix_closed(c));
  CHECK(language(c, 3) == to_set({"", "a", "ab"}));
  // idempotent
  CHECK(language_equal(prefix_closure(c), c, true));
}

TEST_CASE("compare_languages orders and witnesses") {
  Generator small = marked("ab", {"a"});
  Generator big = marked("ab", {"a", "ab"});
  CompareResult r = compare_languages(small, big, true);
  CHECK(r.order == LanguageOrder::proper_subset);
  REQUIRE(r.only_in_second.has_value());
  CHECK(*r.only_in_second == word("ab"));

  CHECK(compare_languages(big, small, true).order ==
        LanguageOrder::proper_superset);
  CHECK(compare_languages(big, big, true).order == LanguageOrder::equal);

  Generator other = marked("ab", {"b", "a"});
  CompareResult inc = compare_languages(big, other, true);
  CHECK(inc.order == LanguageOrder::incomparable);
  REQUIRE(inc.only_in_first.has_value());
  REQUIRE(inc.only_in_second.has_value());
  CHECK(big.contains_marked(*inc.only_in_first));
  CHECK(other.contains_marked(*inc.only_in_second));
}

TEST_CASE("comparison requires identical alphabets") {
  Generator g1 = marked("ab", {"a"});
  Generator g2 = marked("abc", {"a"});
  CHECK_THROWS_AS(compare_languages(g1, g2, true), domain_error);
}

TEST_CASE("language_subset returns a shortest counterexample") {
  Generator g1 = marked("ab", {"a", "bb"});
  Generator g2 = marked("ab", {"a"});
  Word w;
  CHECK_FALSE(language_subset(g1, g2, true, &w));
  CHECK(w == word("bb"));
  CHECK(language_subset(g2, g1, true, &w));
}

TEST_CASE("product properties on random instances") {
  std::mt19937 rng(7);
  for (int round = 0; round < 40; ++round) {
    Generator g1 = random_generator(rng, "ab");
    Generator g2 = random_generator(rng, "bc");
    Generator g3 = random_generator(rng, "cd");
    // commutativity
    CHECK(language(trim(sync_product({g1, g2})), 5) ==
          language(trim(sync_product({g2, g1})), 5));
    // associativity against the n-ary form
    Generator left = trim(sync_product({trim(sync_product({g1, g2})), g3}));
    Generator nary = trim(sync_product({g1, g2, g3}));
    CHECK(language(left, 5) == language(nary, 5));
    // trim soundness: marked language untouched
    Generator p = sync_product({g1, g2});
    CHECK(language(p, 5) == language(trim(p), 5));
  }
}

TEST_CASE("membership oracle agrees with enumeration on random instances") {
  std::mt19937 rng(11);
  for (int round = 0; round < 30; ++round) {
    Generator g = random_generator(rng, "abc");
    std::set<Word> lang = language(g, 4);
    std::set<Word> gen = language(g, 4, false);
    // every enumerated word is a member, every member of length <= 4 is
    // enumerated — cross-check on all words up to length 3
    std::vector<Word> all{{}};
    for (int len = 0; len < 3; ++len) {
      std::vector<Word> next;
      for (const Word& w : all)
        for (const Event& e : g.alphabet()) {
          Word x = w;
          x.push_back(e);
          next.push_back(x);
        }
      for (const Word& w : next) {
        CHECK(g.contains_marked(w) == (lang.count(w) > 0));
        CHECK(g.contains_generated(w) == (gen.count(w) > 0));
      }
      all = std::move(next);
    }
  }
}
