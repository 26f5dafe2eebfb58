// Natural projections, inverse projections, and the structural conditions
// on projections (observer property, local control consistency).
#ifndef DSC_OBSERVATION_HPP
#define DSC_OBSERVATION_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dsc/generator.hpp"

namespace dsc {

namespace detail {

inline void check_subalphabet(const Generator& g, const Alphabet& b,
                              const char* op) {
  Alphabet a = g.alphabet_set();
  for (const Event& e : b)
    if (!a.count(e))
      throw domain_error(std::string(op) + ": event '" + e +
                         "' not in source alphabet");
}

// Subset construction of the projection to target, starting from the
// unobservable-reach of the given source state. Subset names are the
// sorted member names joined by commas.
inline Generator project_from(const Generator& g, const Alphabet& target,
                              int start) {
  std::vector<Event> alphabet;
  for (const Event& a : g.alphabet())
    if (target.count(a)) alphabet.push_back(a);
  if (g.is_empty_language() || start < 0) return Generator::empty(alphabet);
  const int m = static_cast<int>(alphabet.size());
  std::vector<int> eidx(m);
  for (int e = 0; e < m; ++e) eidx[e] = g.event_index(alphabet[e]);
  std::vector<char> observable(g.num_events(), 0);
  for (int e = 0; e < g.num_events(); ++e)
    observable[e] = target.count(g.alphabet()[e]) ? 1 : 0;
  auto uclose = [&](std::set<int> s) {
    std::vector<int> stack(s.begin(), s.end());
    while (!stack.empty()) {
      int q = stack.back();
      stack.pop_back();
      for (int e = 0; e < g.num_events(); ++e) {
        if (observable[e]) continue;
        int t = g.step(q, e);
        if (t >= 0 && s.insert(t).second) stack.push_back(t);
      }
    }
    return s;
  };
  auto subset_name = [&](const std::set<int>& s) {
    std::vector<std::string> names;
    for (int q : s) names.push_back(g.state_name(q));
    std::sort(names.begin(), names.end());
    std::string out;
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (i) out += ",";
      out += names[i];
    }
    return out;
  };
  std::map<std::set<int>, int> index;
  std::vector<std::set<int>> subsets{uclose({start})};
  index[subsets[0]] = 0;
  Generator::Pieces p;
  p.alphabet = alphabet;
  p.initial = 0;
  for (std::size_t qi = 0; qi < subsets.size(); ++qi) {
    std::set<int> cur = subsets[qi];
    if (p.state_names.size() <= qi) {
      p.state_names.push_back(subset_name(cur));
      bool mk = false;
      for (int q : cur) mk = mk || g.is_marked(q);
      p.marked.push_back(mk ? 1 : 0);
      p.trans.emplace_back(m, -1);
    }
    for (int e = 0; e < m; ++e) {
      std::set<int> nxt;
      for (int q : cur) {
        int t = g.step(q, eidx[e]);
        if (t >= 0) nxt.insert(t);
      }
      if (nxt.empty()) continue;
      nxt = uclose(std::move(nxt));
      auto [it, fresh] = index.emplace(nxt, static_cast<int>(subsets.size()));
      if (fresh) {
        subsets.push_back(nxt);
        p.state_names.push_back(subset_name(nxt));
        bool mk = false;
        for (int q : nxt) mk = mk || g.is_marked(q);
        p.marked.push_back(mk ? 1 : 0);
        p.trans.emplace_back(m, -1);
      }
      p.trans[qi][e] = it->second;
    }
  }
  return detail::trim(Generator::from_pieces(std::move(p)));
}

}  // namespace detail

// Projection of a single word: erase the events outside the target set.
inline Word project_word(const Word& w, const Alphabet& target) {
  Word out;
  for (const Event& e : w)
    if (target.count(e)) out.push_back(e);
  return out;
}

// Natural projection onto the sub-alphabet: erase events outside it,
// determinize, trim. Applies to generated and marked language alike.
inline Generator project(const Generator& g, const Alphabet& target) {
  detail::check_subalphabet(g, target, "project");
  return detail::project_from(g, target, g.initial());
}

// Inverse projection to the superalphabet: self-loop every state on the
// new events. New events keep their order as given.
inline Generator inverse_project(const Generator& g,
                                 const std::vector<Event>& superalphabet) {
  Alphabet sup(superalphabet.begin(), superalphabet.end());
  for (const Event& a : g.alphabet())
    if (!sup.count(a))
      throw domain_error("inverse_project: '" + a +
                         "' missing from target alphabet");
  std::vector<Event> alphabet = g.alphabet();
  for (const Event& a : superalphabet)
    if (g.event_index(a) < 0) alphabet.push_back(a);
  if (g.is_empty_language()) return Generator::empty(alphabet);
  const int m = static_cast<int>(alphabet.size());
  Generator::Pieces p;
  p.alphabet = alphabet;
  p.initial = g.initial();
  for (int q = 0; q < g.num_states(); ++q) {
    p.state_names.push_back(g.state_name(q));
    p.marked.push_back(g.is_marked(q) ? 1 : 0);
    std::vector<int> row(m, -1);
    for (int e = 0; e < m; ++e) {
      int ge = g.event_index(alphabet[e]);
      row[e] = ge >= 0 ? g.step(q, ge) : q;  // self-loop on new events
    }
    p.trans.push_back(std::move(row));
  }
  return Generator::from_pieces(std::move(p));
}

inline Generator inverse_project(const Generator& g,
                                 const Alphabet& superalphabet) {
  return inverse_project(
      g, std::vector<Event>(superalphabet.begin(), superalphabet.end()));
}

struct ObserverResult {
  bool is_observer = true;
  // On failure: s in closure(L) and t with P(s)t in P(L) such that no
  // continuation u of s satisfies su in L and P(u) = t.
  std::optional<Word> s;
  std::optional<Word> t;
  // A word s'u in L with P(s') = P(s) and P(u) = t (exists whenever the
  // check fails); drives the extension heuristic.
  std::optional<Word> realizing_prefix;  // s'
  std::optional<Word> realizing_suffix;  // u
};

namespace detail {

// Shortest word from `from` in g whose projection onto `target` equals t
// and which ends in a state satisfying `accept`. Returns nullopt if none.
template <typename Accept>
inline std::optional<Word> match_projection(const Generator& g,
                                            const Alphabet& target, int from,
                                            const Word& t, Accept accept) {
  struct Node {
    int q;
    std::size_t pos;
    int parent, event;
  };
  std::vector<Node> nodes{{from, 0, -1, -1}};
  std::set<std::pair<int, std::size_t>> seen{{from, 0}};
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    Node nd = nodes[i];
    if (nd.pos == t.size() && accept(nd.q)) {
      Word w;
      for (int j = static_cast<int>(i); nodes[j].parent >= 0;
           j = nodes[j].parent)
        w.push_back(g.alphabet()[nodes[j].event]);
      std::reverse(w.begin(), w.end());
      return w;
    }
    for (int e = 0; e < g.num_events(); ++e) {
      int q2 = g.step(nd.q, e);
      if (q2 < 0) continue;
      bool obs = target.count(g.alphabet()[e]) != 0;
      std::size_t pos2 = nd.pos;
      if (obs) {
        if (nd.pos >= t.size() || g.alphabet()[e] != t[nd.pos]) continue;
        pos2 = nd.pos + 1;
      }
      if (seen.emplace(q2, pos2).second)
        nodes.push_back({q2, pos2, static_cast<int>(i), e});
    }
  }
  return std::nullopt;
}

}  // namespace detail

// Checks whether the projection onto B is an Lm(G)-observer: for every
// s in closure(Lm) and t with P(s)t in P(Lm), some u with su in Lm and
// P(u) = t exists. Exact on the (G x subset-image) pair automaton.
inline ObserverResult is_observer(const Generator& g, const Alphabet& b) {
  detail::check_subalphabet(g, b, "is_observer");
  ObserverResult res;
  Generator t = trim(g);
  if (t.is_empty_language()) return res;
  Generator det = project(t, b);
  // per-state projected futures: P(Lm(G[q])), cached lazily
  std::vector<Generator> proj_from(t.num_states());
  std::vector<char> have(t.num_states(), 0);
  auto futures = [&](int q) -> const Generator& {
    if (!have[q]) {
      proj_from[q] = detail::project_from(t, b, q);
      have[q] = 1;
    }
    return proj_from[q];
  };
  // reachable pairs (q, X): q after s, X the det state of P(s)
  std::vector<int> det_e(t.num_events());
  for (int e = 0; e < t.num_events(); ++e)
    det_e[e] = det.event_index(t.alphabet()[e]);
  struct Node {
    int q, x, parent, event;
  };
  std::vector<Node> nodes{{t.initial(), det.initial(), -1, -1}};
  std::set<std::pair<int, int>> seen{{nodes[0].q, nodes[0].x}};
  auto word_of = [&](int idx) {
    Word w;
    for (int j = idx; nodes[j].parent >= 0; j = nodes[j].parent)
      w.push_back(t.alphabet()[nodes[j].event]);
    std::reverse(w.begin(), w.end());
    return w;
  };
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    Node nd = nodes[i];
    // find t' marked-reachable from X in det but absent from q's futures
    Generator detx = detail::project_from(det, Alphabet(b.begin(), b.end()),
                                          nd.x);  // identity reroot
    Word missing;
    if (!language_subset(detx, futures(nd.q), true, &missing)) {
      res.is_observer = false;
      res.s = word_of(static_cast<int>(i));
      res.t = missing;
      // realize P(s') = P(s), P(u) = t from some member of X: search the
      // whole generator for s'u in Lm with P(s'u) = P(s)t
      Word target = *res.s;
      Word proj_s;
      for (const Event& a : target)
        if (b.count(a)) proj_s.push_back(a);
      Word full = proj_s;
      full.insert(full.end(), missing.begin(), missing.end());
      auto w = detail::match_projection(
          t, b, t.initial(), full, [&](int q) { return t.is_marked(q); });
      if (w) {
        // split s'u at the point where the projection reaches |P(s)|
        std::size_t cnt = 0, split = 0;
        for (std::size_t k = 0; k < w->size() && cnt < proj_s.size(); ++k) {
          if (b.count((*w)[k])) ++cnt;
          split = k + 1;
        }
        if (proj_s.empty()) split = 0;
        res.realizing_prefix = Word(w->begin(), w->begin() + split);
        res.realizing_suffix = Word(w->begin() + split, w->end());
      }
      return res;
    }
    for (int e = 0; e < t.num_events(); ++e) {
      int q2 = t.step(nd.q, e);
      if (q2 < 0) continue;
      int x2 = det_e[e] >= 0 ? det.step(nd.x, det_e[e]) : nd.x;
      if (seen.emplace(q2, x2).second)
        nodes.push_back({q2, x2, static_cast<int>(i), e});
    }
  }
  return res;
}

struct LccResult {
  bool is_lcc = true;
  std::optional<Word> s;         // word reaching the offending state
  std::optional<Event> event;    // the uncontrollable event a_u
};

// Local control consistency of the projection onto B with respect to the
// generated language of g, evaluated per reachable (state, det-state) pair.
inline LccResult is_lcc(const Generator& g, const Alphabet& b,
                        const Alphabet& uncontrollable) {
  detail::check_subalphabet(g, b, "is_lcc");
  LccResult res;
  Generator t = trim(g);
  if (t.is_empty_language()) return res;
  Generator closed = prefix_closure(t);
  Generator det = project(closed, b);
  std::vector<int> det_e(closed.num_events());
  for (int e = 0; e < closed.num_events(); ++e)
    det_e[e] = det.event_index(closed.alphabet()[e]);
  // states reachable from q via events outside B (any / uncontrollable-only)
  auto reach = [&](int q, bool unc_only) {
    std::set<int> s{q};
    std::vector<int> stack{q};
    while (!stack.empty()) {
      int cur = stack.back();
      stack.pop_back();
      for (int e = 0; e < closed.num_events(); ++e) {
        const Event& a = closed.alphabet()[e];
        if (b.count(a)) continue;
        if (unc_only && !uncontrollable.count(a)) continue;
        int nx = closed.step(cur, e);
        if (nx >= 0 && s.insert(nx).second) stack.push_back(nx);
      }
    }
    return s;
  };
  struct Node {
    int q, x, parent, event;
  };
  std::vector<Node> nodes{{closed.initial(), det.initial(), -1, -1}};
  std::set<std::pair<int, int>> seen{{nodes[0].q, nodes[0].x}};
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    Node nd = nodes[i];
    for (int e = 0; e < closed.num_events(); ++e) {
      const Event& a = closed.alphabet()[e];
      if (!b.count(a) || !uncontrollable.count(a)) continue;
      int de = det_e[e];
      if (de < 0 || det.step(nd.x, de) < 0) continue;  // P(s)a not in P(L)
      bool any = false, unc = false;
      for (int q : reach(nd.q, false))
        if (closed.step(q, e) >= 0) {
          any = true;
          break;
        }
      if (!any) continue;
      for (int q : reach(nd.q, true))
        if (closed.step(q, e) >= 0) {
          unc = true;
          break;
        }
      if (!unc) {
        res.is_lcc = false;
        Word w;
        for (int j = static_cast<int>(i); nodes[j].parent >= 0;
             j = nodes[j].parent)
          w.push_back(closed.alphabet()[nodes[j].event]);
        std::reverse(w.begin(), w.end());
        res.s = w;
        res.event = a;
        return res;
      }
    }
    for (int e = 0; e < closed.num_events(); ++e) {
      int q2 = closed.step(nd.q, e);
      if (q2 < 0) continue;
      int x2 = det_e[e] >= 0 ? det.step(nd.x, det_e[e]) : nd.x;
      if (seen.emplace(q2, x2).second)
        nodes.push_back({q2, x2, static_cast<int>(i), e});
    }
  }
  return res;
}

// Grows B until the projection is an Lm(G)-observer. On each failure the
// witness words are scanned for the first event (in declared order)
// outside the current alphabet; that event is added and the check reruns.
inline Alphabet extend_for_observer(const Generator& g, Alphabet b) {
  detail::check_subalphabet(g, b, "extend_for_observer");
  while (true) {
    ObserverResult r = is_observer(g, b);
    if (r.is_observer) return b;
    std::set<Event> involved;
    auto collect = [&](const std::optional<Word>& w) {
      if (!w) return;
      for (const Event& a : *w)
        if (!b.count(a)) involved.insert(a);
    };
    collect(r.realizing_suffix);
    collect(r.realizing_prefix);
    collect(r.s);
    bool added = false;
    for (const Event& a : g.alphabet())
      if (involved.count(a)) {
        b.insert(a);
        added = true;
        break;
      }
    if (!added) {
      // fall back to the first missing event; guarantees termination
      for (const Event& a : g.alphabet())
        if (!b.count(a)) {
          b.insert(a);
          added = true;
          break;
        }
    }
    if (!added) return b;  // b == alphabet(g): always an observer
  }
}

}  // namespace dsc

#endif  // DSC_OBSERVATION_HPP
