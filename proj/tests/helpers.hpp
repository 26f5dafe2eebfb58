// Shared fixtures and brute-force oracles for the test suite.
#ifndef DSC_TESTS_HELPERS_HPP
#define DSC_TESTS_HELPERS_HPP

#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dsc/generator.hpp"

namespace helpers {

using dsc::Alphabet;
using dsc::Event;
using dsc::Generator;
using dsc::Word;

// Single-character events: "abc" -> {"a","b","c"}.
inline Word word(const std::string& s) {
  Word w;
  for (char c : s) w.push_back(std::string(1, c));
  return w;
}

inline std::vector<Word> words(const std::vector<std::string>& ss) {
  std::vector<Word> out;
  for (const auto& s : ss) out.push_back(word(s));
  return out;
}

inline std::vector<Event> events(const std::string& s) {
  std::vector<Event> out;
  for (char c : s) out.push_back(std::string(1, c));
  return out;
}

inline Alphabet alphabet(const std::string& s) {
  Alphabet out;
  for (char c : s) out.insert(std::string(1, c));
  return out;
}

// Trim generator marking exactly the given words.
inline Generator marked(const std::string& alpha,
                        const std::vector<std::string>& ws) {
  return dsc::from_marked_words(events(alpha), words(ws));
}

// Trim generator for the prefix closure of the given words (all states
// marked).
inline Generator closed(const std::string& alpha,
                        const std::vector<std::string>& ws) {
  return dsc::from_closed_words(events(alpha), words(ws));
}

// Finite snapshot of a language up to the given length.
inline std::set<Word> language(const Generator& g, int max_len,
                               bool marked_language = true) {
  std::vector<Word> ws = dsc::enumerate_words(g, max_len, marked_language);
  return std::set<Word>(ws.begin(), ws.end());
}

inline std::set<Word> to_set(const std::vector<std::string>& ws) {
  std::set<Word> out;
  for (const auto& s : ws) out.insert(word(s));
  return out;
}

// ---- worked fixtures ----------------------------------------------------

// K = closure{aa, ba, bbd, abc} over {a,b,c,d}; agent alphabets
// A_{o,1} = A_{c,1} = {a,c}, A_{o,2} = A_{c,2} = {b,d}.
inline Generator two_agent_spec() {
  return closed("abcd", {"aa", "ba", "bbd", "abc"});
}
// L = closure{aac, abc, bac, bbd} over the same alphabet.
inline Generator two_agent_plant() {
  return closed("abcd", {"aac", "abc", "bac", "bbd"});
}

// K = closure{ab, ba, bd, db}, L = closure{ab, ba, bdau, dbau} over
// {a,b,d,u}; A_{o,1} = {a,u}, A_{c,1} = {a,d}, A_{o,2} = {b,u},
// A_{c,2} = {b}; u uncontrollable.
inline Generator comm_spec() { return closed("abdu", {"ab", "ba", "bd", "db"}); }
inline Generator comm_plant() {
  return closed("abdu", {"ab", "ba", "bdau", "dbau"});
}

// The 16-state prefix-closed specification used by the refinement
// procedure example; agent alphabets {a,e}, {b,e}, {c,f}, {d,f}.
inline Generator four_agent_spec() {
  dsc::RawGenerator raw;
  raw.alphabet = events("abcdef");
  for (int i = 1; i <= 16; ++i) raw.states.push_back("s" + std::to_string(i));
  raw.initial = "s1";
  raw.marked = raw.states;
  const char* trans[] = {"1 a 2",   "1 c 3",   "2 b 15",  "2 c 4",
                         "3 a 4",   "3 d 5",   "4 b 13",  "4 d 6",
                         "5 a 6",   "5 f 7",   "6 b 11",  "6 f 8",
                         "7 a 8",   "8 b 9",   "11 e 12", "12 f 10",
                         "13 e 14", "13 d 11", "14 d 12", "15 e 16",
                         "15 c 13", "16 c 14"};
  for (const char* t : trans) {
    std::istringstream iss(t);
    std::string src, ev, tgt;
    iss >> src >> ev >> tgt;
    raw.transitions.push_back({"s" + src, ev, "s" + tgt});
  }
  return dsc::build_and_trim(raw);
}

// ---- randomized instances -------------------------------------------------

// Random trim generator over the given alphabet.
inline Generator random_generator(std::mt19937& rng, const std::string& alpha,
                                  int max_states = 5, double density = 0.35) {
  std::vector<Event> ev = events(alpha);
  std::uniform_int_distribution<int> nstates(1, max_states);
  int n = nstates(rng);
  std::bernoulli_distribution edge(density), mark(0.5);
  dsc::Generator::Pieces p;
  p.alphabet = ev;
  p.initial = 0;
  std::uniform_int_distribution<int> target(0, n - 1);
  for (int q = 0; q < n; ++q) {
    p.state_names.push_back("q" + std::to_string(q));
    p.marked.push_back(mark(rng) ? 1 : 0);
    std::vector<int> row(ev.size(), -1);
    for (std::size_t e = 0; e < ev.size(); ++e)
      if (edge(rng)) row[e] = target(rng);
    p.trans.push_back(std::move(row));
  }
  Generator g = dsc::trim(dsc::Generator::from_pieces(std::move(p)));
  if (g.is_empty_language()) {
    // keep instances nonempty: fall back to the {epsilon} language
    return dsc::from_marked_words(ev, {Word{}});
  }
  return g;
}

// Random subset of the alphabet (possibly empty).
inline Alphabet random_subset(std::mt19937& rng, const std::string& alpha,
                              double keep = 0.5) {
  std::bernoulli_distribution take(keep);
  Alphabet out;
  for (char c : alpha)
    if (take(rng)) out.insert(std::string(1, c));
  return out;
}

}  // namespace helpers

#endif  // DSC_TESTS_HELPERS_HPP
