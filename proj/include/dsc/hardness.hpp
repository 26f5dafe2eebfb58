// Reduction from DFA-intersection emptiness to separability; doubles as
// a hard-instance generator and a randomized oracle for the separability
// checker.
#ifndef DSC_HARDNESS_HPP
#define DSC_HARDNESS_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dsc/generator.hpp"

namespace dsc {

struct ReductionInstance {
  Generator h;                     // every state marked; L(H) prefix-closed
  std::vector<Alphabet> alphabets; // E_i = E \ {e_i}
  std::vector<Event> marker_events;  // e_1..e_n (after any renaming)
  Event final_event;                 // c (after any renaming)
  std::size_t padded_inputs = 0;     // number of Sigma*-acceptors appended
};

namespace detail {

inline Event fresh_event(std::string base, const Alphabet& taken) {
  while (taken.count(base)) base += "'";
  return base;
}

}  // namespace detail

// Builds the separability instance H over Sigma cup {e_1..e_n, c}: from
// the new initial state, e_i enters a copy of G_i and any Sigma event
// enters a Sigma-loop; each G_i initial state reaches an e-loop state;
// every final state of G_i has a c-transition to a sink. Inputs are
// padded with Sigma*-acceptors up to n = 3.
inline ReductionInstance build_separability_instance(
    std::vector<Generator> dfas) {
  if (dfas.empty()) throw domain_error("reduction needs at least one DFA");
  Alphabet sigma = dfas[0].alphabet_set();
  for (const Generator& g : dfas)
    if (g.alphabet_set() != sigma)
      throw domain_error("reduction inputs must share one alphabet");
  ReductionInstance inst;
  std::vector<Event> sigma_order = dfas[0].alphabet();
  // pad with Sigma*-acceptors so the proof's n >= 3 assumption holds
  while (dfas.size() < 3) {
    Generator::Pieces p;
    p.alphabet = sigma_order;
    p.state_names = {"univ"};
    p.marked = {1};
    p.trans = {std::vector<int>(sigma_order.size(), 0)};
    p.initial = 0;
    dfas.push_back(Generator::from_pieces(std::move(p)));
    ++inst.padded_inputs;
  }
  const std::size_t n = dfas.size();
  Alphabet taken = sigma;
  for (std::size_t i = 0; i < n; ++i) {
    Event e = detail::fresh_event("e" + std::to_string(i + 1), taken);
    inst.marker_events.push_back(e);
    taken.insert(e);
  }
  inst.final_event = detail::fresh_event("c", taken);

  std::vector<Event> alphabet = sigma_order;
  alphabet.insert(alphabet.end(), inst.marker_events.begin(),
                  inst.marker_events.end());
  alphabet.push_back(inst.final_event);
  const int m = static_cast<int>(alphabet.size());
  const int ms = static_cast<int>(sigma_order.size());

  Generator::Pieces p;
  p.alphabet = alphabet;
  auto add_state = [&](std::string name) {
    p.state_names.push_back(std::move(name));
    p.marked.push_back(1);  // L(H) prefix-closed with Lm(H) = L(H)
    p.trans.emplace_back(m, -1);
    return static_cast<int>(p.state_names.size()) - 1;
  };
  int q0 = add_state("q0");
  int q1 = add_state("q1");
  int q2 = add_state("q2");
  int q3 = add_state("q3");
  p.initial = q0;
  for (int e = 0; e < ms; ++e) {
    p.trans[q0][e] = q3;
    p.trans[q3][e] = q3;
  }
  for (std::size_t i = 0; i < n; ++i)
    p.trans[q1][ms + static_cast<int>(i)] = q1;
  // embed each G_i (states renamed g<i>.<name>)
  for (std::size_t i = 0; i < n; ++i) {
    const Generator& g = dfas[i];
    if (g.is_empty_language() || g.initial() < 0) {
      // empty-language input: a lone entry state with the e-loop exit
      int entry = add_state("g" + std::to_string(i + 1) + ".void");
      p.trans[q0][ms + static_cast<int>(i)] = entry;
      for (std::size_t j = 0; j < n; ++j)
        p.trans[entry][ms + static_cast<int>(j)] = q1;
      continue;
    }
    std::vector<int> renum(g.num_states());
    for (int q = 0; q < g.num_states(); ++q)
      renum[q] =
          add_state("g" + std::to_string(i + 1) + "." + g.state_name(q));
    for (int q = 0; q < g.num_states(); ++q) {
      for (int e = 0; e < ms; ++e) {
        int ge = g.event_index(sigma_order[e]);
        int t = g.step(q, ge);
        if (t >= 0) p.trans[renum[q]][e] = renum[t];
      }
      if (g.is_marked(q)) p.trans[renum[q]][m - 1] = q2;
    }
    // the marker exits to q1 must only be available right after e_i; a
    // non-reentrant copy of the initial state guarantees that even when
    // the original initial state is revisitable
    int entry = add_state("g" + std::to_string(i + 1) + ".in");
    for (int e = 0; e < m; ++e)
      p.trans[entry][e] = p.trans[renum[g.initial()]][e];
    p.trans[q0][ms + static_cast<int>(i)] = entry;
    for (std::size_t j = 0; j < n; ++j)
      p.trans[entry][ms + static_cast<int>(j)] = q1;
  }
  inst.h = trim(Generator::from_pieces(std::move(p)));
  Alphabet full(alphabet.begin(), alphabet.end());
  for (std::size_t i = 0; i < n; ++i) {
    Alphabet ei = full;
    ei.erase(inst.marker_events[i]);
    inst.alphabets.push_back(std::move(ei));
  }
  return inst;
}

struct IntersectionResult {
  bool nonempty = false;
  std::optional<Word> witness;  // a shortest common member
};

// Direct product construction; the independent side of the reduction
// equivalence test.
inline IntersectionResult intersection_nonempty_oracle(
    const std::vector<Generator>& dfas) {
  IntersectionResult res;
  if (dfas.empty()) return res;
  const std::vector<Event>& alphabet = dfas[0].alphabet();
  for (const Generator& g : dfas) {
    if (g.alphabet_set() != dfas[0].alphabet_set())
      throw domain_error("intersection inputs must share one alphabet");
    if (g.is_empty_language()) return res;
  }
  const std::size_t n = dfas.size();
  std::vector<std::vector<int>> eidx(n, std::vector<int>(alphabet.size()));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t e = 0; e < alphabet.size(); ++e)
      eidx[i][e] = dfas[i].event_index(alphabet[e]);
  struct Node {
    std::vector<int> st;
    int parent, event;
  };
  std::vector<int> init(n);
  for (std::size_t i = 0; i < n; ++i) init[i] = dfas[i].initial();
  std::vector<Node> nodes{{init, -1, -1}};
  std::set<std::vector<int>> seen{init};
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const std::vector<int> cur = nodes[i].st;
    bool all_marked = true;
    for (std::size_t j = 0; j < n; ++j)
      all_marked = all_marked && dfas[j].is_marked(cur[j]);
    if (all_marked) {
      res.nonempty = true;
      Word w;
      for (int j = static_cast<int>(i); nodes[j].parent >= 0;
           j = nodes[j].parent)
        w.push_back(alphabet[nodes[j].event]);
      std::reverse(w.begin(), w.end());
      res.witness = w;
      return res;
    }
    for (std::size_t e = 0; e < alphabet.size(); ++e) {
      std::vector<int> nxt(n);
      bool ok = true;
      for (std::size_t j = 0; j < n && ok; ++j) {
        nxt[j] = dfas[j].step(cur[j], eidx[j][e]);
        ok = nxt[j] >= 0;
      }
      if (ok && seen.insert(nxt).second)
        nodes.push_back({nxt, static_cast<int>(i), static_cast<int>(e)});
    }
  }
  return res;
}

}  // namespace dsc

#endif  // DSC_HARDNESS_HPP
