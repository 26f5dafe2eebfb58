// Centralized supervisory-control predicates and synthesis primitives:
// controllability, observability, normality, coobservability, supremal
// sublanguages and the prefix-closed infimal controllable superlanguage.
#ifndef DSC_CONTROL_HPP
#define DSC_CONTROL_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dsc/generator.hpp"
#include "dsc/observation.hpp"

namespace dsc {

// Plant language (prefix-closed for the checks) with the global event
// status. The plant generator's generated language is what L refers to.
struct ControlContext {
  Generator plant;            // L = L(plant); trim, all states marked
  Alphabet uncontrollable;    // A_uc
  Alphabet observable;        // A_o
};

struct ControllabilityResult {
  bool controllable = true;
  std::optional<Word> s;       // s in closure(K) with sa in L \ closure(K)
  std::optional<Event> event;  // the uncontrollable a
};

struct PreconditionViolation : domain_error {
  Word witness;
  PreconditionViolation(const std::string& what, Word w)
      : domain_error(what + " (witness: " + word_to_string(w) + ")"),
        witness(std::move(w)) {}
};

namespace detail {

inline void require_subset_of_plant(const Generator& k,
                                    const ControlContext& ctx) {
  Word w;
  if (!language_subset(prefix_closure(k), ctx.plant, false, &w))
    throw PreconditionViolation("specification not included in plant", w);
}

}  // namespace detail

// closure(K) A_uc cap L subseteq closure(K). Witness is shortest by BFS.
inline ControllabilityResult is_controllable(const Generator& k,
                                             const ControlContext& ctx) {
  detail::require_subset_of_plant(k, ctx);
  ControllabilityResult res;
  Generator kc = prefix_closure(k);
  const Generator& l = ctx.plant;
  if (kc.is_empty_language()) {
    // closure(K) empty: nothing to extend
    return res;
  }
  std::vector<int> le(kc.num_events());
  for (int e = 0; e < kc.num_events(); ++e)
    le[e] = l.event_index(kc.alphabet()[e]);
  struct Node {
    int qk, ql, parent, event;
  };
  std::vector<Node> nodes{{kc.initial(), l.initial(), -1, -1}};
  std::set<std::pair<int, int>> seen{{nodes[0].qk, nodes[0].ql}};
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    Node nd = nodes[i];
    for (int e = 0; e < kc.num_events(); ++e) {
      const Event& a = kc.alphabet()[e];
      int tk = kc.step(nd.qk, e);
      int tl = le[e] >= 0 ? l.step(nd.ql, le[e]) : -1;
      if (tl >= 0 && tk < 0 && ctx.uncontrollable.count(a)) {
        res.controllable = false;
        Word w;
        for (int j = static_cast<int>(i); nodes[j].parent >= 0;
             j = nodes[j].parent)
          w.push_back(kc.alphabet()[nodes[j].event]);
        std::reverse(w.begin(), w.end());
        res.s = w;
        res.event = a;
        return res;
      }
      if (tk < 0 || tl < 0) continue;  // walk stays inside closure(K) cap L
      if (seen.emplace(tk, tl).second)
        nodes.push_back({tk, tl, static_cast<int>(i), e});
    }
  }
  return res;
}

struct ObservabilityResult {
  bool observable = true;
  std::optional<Word> s;        // sa in L \ closure(K)
  std::optional<Word> s_alt;    // observation-equivalent s' with s'a in closure(K)
  std::optional<Event> event;
};

// Word-level observability decided on the synchronized pair-tracking
// product: two plant threads with equal projections, one of which leaves
// closure(K) on a controllable event the other may still take.
inline ObservabilityResult is_observable(const Generator& k,
                                         const ControlContext& ctx) {
  detail::require_subset_of_plant(k, ctx);
  ObservabilityResult res;
  Generator kc = prefix_closure(k);
  if (kc.is_empty_language()) return res;
  const Generator& l = ctx.plant;
  std::vector<int> le(kc.num_events());
  for (int e = 0; e < kc.num_events(); ++e)
    le[e] = l.event_index(kc.alphabet()[e]);
  // node: (k-state of s, l-state of s, k-state of s'); moves keep
  // P_o(s) = P_o(s')
  struct Node {
    int qk, ql, qk2;
    int parent;
    int event;  // encoded: e for shared, e + m for s-solo, e + 2m for s'-solo
  };
  const int m = kc.num_events();
  std::vector<Node> nodes{{kc.initial(), l.initial(), kc.initial(), -1, -1}};
  std::set<std::array<int, 3>> seen{{nodes[0].qk, nodes[0].ql, nodes[0].qk2}};
  auto words_of = [&](int idx) {
    Word s, s2;
    for (int j = idx; nodes[j].parent >= 0; j = nodes[j].parent) {
      int code = nodes[j].event;
      int e = code % m;
      if (code < m) {
        s.push_back(kc.alphabet()[e]);
        s2.push_back(kc.alphabet()[e]);
      } else if (code < 2 * m) {
        s.push_back(kc.alphabet()[e]);
      } else {
        s2.push_back(kc.alphabet()[e]);
      }
    }
    std::reverse(s.begin(), s.end());
    std::reverse(s2.begin(), s2.end());
    return std::make_pair(s, s2);
  };
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    Node nd = nodes[i];
    for (int e = 0; e < m; ++e) {
      const Event& a = kc.alphabet()[e];
      if (ctx.uncontrollable.count(a)) continue;
      int tk = kc.step(nd.qk, e);
      int tl = le[e] >= 0 ? l.step(nd.ql, le[e]) : -1;
      int tk2 = kc.step(nd.qk2, e);
      if (tl >= 0 && tk < 0 && tk2 >= 0) {
        res.observable = false;
        auto [s, s2] = words_of(static_cast<int>(i));
        res.s = s;
        res.s_alt = s2;
        res.event = a;
        return res;
      }
    }
    for (int e = 0; e < m; ++e) {
      const Event& a = kc.alphabet()[e];
      bool obs = ctx.observable.count(a) != 0;
      int tk = kc.step(nd.qk, e);
      int tl = le[e] >= 0 ? l.step(nd.ql, le[e]) : -1;
      int tk2 = kc.step(nd.qk2, e);
      if (obs) {
        if (tk >= 0 && tl >= 0 && tk2 >= 0 &&
            seen.insert({tk, tl, tk2}).second)
          nodes.push_back({tk, tl, tk2, static_cast<int>(i), e});
      } else {
        if (tk >= 0 && tl >= 0 && seen.insert({tk, tl, nd.qk2}).second)
          nodes.push_back({tk, tl, nd.qk2, static_cast<int>(i), e + m});
        if (tk2 >= 0 && seen.insert({nd.qk, nd.ql, tk2}).second)
          nodes.push_back({nd.qk, nd.ql, tk2, static_cast<int>(i), e + 2 * m});
      }
    }
  }
  return res;
}

struct NormalityResult {
  bool normal = true;
  std::optional<Word> witness;  // word in P^-1 P(closure(K)) cap L \ closure(K)
};

// closure(K) = P_o^-1 P_o(closure(K)) cap L.
inline NormalityResult is_normal(const Generator& k,
                                 const ControlContext& ctx) {
  detail::require_subset_of_plant(k, ctx);
  NormalityResult res;
  Generator kc = prefix_closure(k);
  if (kc.is_empty_language()) return res;
  Generator lifted =
      inverse_project(project(kc, ctx.observable), ctx.plant.alphabet());
  Generator rhs = trim(sync_product({lifted, ctx.plant}));
  Word w;
  if (!language_subset(rhs, kc, false, &w)) {
    res.normal = false;
    res.witness = w;
  }
  return res;
}

// One supervisor's view for the coobservability check.
struct CoAgent {
  Alphabet observable;
  Alphabet controllable;
};

struct CoobservabilityViolation {
  Word s;
  Event event;
  // confusing word per agent index controlling the event
  std::map<int, Word> confusions;
};

struct CoobservabilityResult {
  bool coobservable = true;
  bool verified = true;  // false when the state budget was exhausted
  std::optional<CoobservabilityViolation> violation;
};

// C&P coobservability via the (n+1)-fold synchronized product: one L /
// closure(K) thread for s plus one closure(K) thread per agent holding an
// observation-equivalent s_i. Worst-case exponential in n; bounded by
// the product-state budget.
inline CoobservabilityResult is_coobservable(const Generator& k,
                                             const Generator& plant,
                                             const std::vector<CoAgent>& agents,
                                             const Alphabet& uncontrollable,
                                             std::size_t budget = 1000000) {
  Word pre;
  if (!language_subset(prefix_closure(k), plant, false, &pre))
    throw PreconditionViolation("specification not included in plant", pre);
  CoobservabilityResult res;
  Generator kc = prefix_closure(k);
  if (kc.is_empty_language()) return res;
  const Generator& l = plant;
  const int n = static_cast<int>(agents.size());
  const int m = kc.num_events();
  std::vector<int> le(m);
  for (int e = 0; e < m; ++e) le[e] = l.event_index(kc.alphabet()[e]);
  // state: [qk, ql, a1..an]; move codes: e -> main step (agents observing
  // the event follow), m + i*m + e -> solo step of agent i on an event it
  // does not observe
  using State = std::vector<int>;
  struct Node {
    State st;
    int parent, code;
  };
  State init(n + 2, kc.initial());
  init[1] = l.initial();
  std::vector<Node> nodes{{init, -1, -1}};
  std::set<State> seen{init};
  auto thread_words = [&](int idx) {
    Word s;
    std::vector<Word> agent_words(n);
    std::vector<int> path;
    for (int j = idx; nodes[j].parent >= 0; j = nodes[j].parent)
      path.push_back(nodes[j].code);
    std::reverse(path.begin(), path.end());
    for (int code : path) {
      if (code < m) {
        const Event& a = kc.alphabet()[code];
        s.push_back(a);
        for (int i = 0; i < n; ++i)
          if (agents[i].observable.count(a)) agent_words[i].push_back(a);
      } else {
        int i = (code - m) / m;
        int e = (code - m) % m;
        agent_words[i].push_back(kc.alphabet()[e]);
      }
    }
    return std::make_pair(s, agent_words);
  };
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes.size() > budget) {
      res.verified = false;
      throw budget_error("coobservability check exceeded state budget");
    }
    State nd = nodes[i].st;
    // violation: controllable a with sa in L \ closure(K) and every agent
    // controlling a confused
    for (int e = 0; e < m; ++e) {
      const Event& a = kc.alphabet()[e];
      if (uncontrollable.count(a)) continue;
      bool globally_controllable = false;
      for (const CoAgent& ag : agents)
        globally_controllable = globally_controllable || ag.controllable.count(a);
      if (!globally_controllable) continue;
      if (kc.step(nd[0], e) >= 0) continue;
      if (le[e] < 0 || l.step(nd[1], le[e]) < 0) continue;
      bool all_confused = true;
      for (int ai = 0; ai < n && all_confused; ++ai) {
        if (!agents[ai].controllable.count(a)) continue;
        if (kc.step(nd[2 + ai], e) < 0) all_confused = false;
      }
      if (all_confused) {
        res.coobservable = false;
        auto [s, agent_words] = thread_words(static_cast<int>(i));
        CoobservabilityViolation v;
        v.s = s;
        v.event = a;
        for (int ai = 0; ai < n; ++ai)
          if (agents[ai].controllable.count(a)) v.confusions[ai] = agent_words[ai];
        res.violation = v;
        return res;
      }
    }
    // main moves (s stays in closure(K) cap L; agents follow observed events)
    for (int e = 0; e < m; ++e) {
      const Event& a = kc.alphabet()[e];
      int tk = kc.step(nd[0], e);
      int tl = le[e] >= 0 ? l.step(nd[1], le[e]) : -1;
      if (tk >= 0 && tl >= 0) {
        State nx = nd;
        nx[0] = tk;
        nx[1] = tl;
        bool ok = true;
        for (int ai = 0; ai < n && ok; ++ai) {
          if (!agents[ai].observable.count(a)) continue;
          int ta = kc.step(nd[2 + ai], e);
          if (ta < 0)
            ok = false;
          else
            nx[2 + ai] = ta;
        }
        if (ok && seen.insert(nx).second)
          nodes.push_back({nx, static_cast<int>(i), e});
      }
      // agent solo moves on events they do not observe
      for (int ai = 0; ai < n; ++ai) {
        if (agents[ai].observable.count(a)) continue;
        int ta = kc.step(nd[2 + ai], e);
        if (ta < 0) continue;
        State nx = nd;
        nx[2 + ai] = ta;
        if (seen.insert(nx).second)
          nodes.push_back({nx, static_cast<int>(i), m + ai * m + e});
      }
    }
  }
  return res;
}

// Supremal controllable sublanguage of K w.r.t. L(plant) and A_uc:
// iterated pruning of uncontrollable product states plus re-trim.
inline Generator supcon(const Generator& k, const ControlContext& ctx) {
  detail::require_subset_of_plant(k, ctx);
  Generator kk = trim(k);
  if (kk.is_empty_language()) return kk;
  const Generator& l = ctx.plant;
  Generator prod = trim(sync_product({kk, l}));
  std::vector<char> unc(prod.num_events(), 0);
  for (int e = 0; e < prod.num_events(); ++e)
    unc[e] = ctx.uncontrollable.count(prod.alphabet()[e]) ? 1 : 0;
  std::vector<int> le(prod.num_events());
  for (int e = 0; e < prod.num_events(); ++e)
    le[e] = l.event_index(prod.alphabet()[e]);
  while (true) {
    if (prod.is_empty_language()) return prod;
    // track the l-state alongside each product state
    std::vector<int> lstate(prod.num_states(), -1);
    lstate[prod.initial()] = l.initial();
    std::vector<int> order{prod.initial()};
    for (std::size_t i = 0; i < order.size(); ++i) {
      int q = order[i];
      for (int e = 0; e < prod.num_events(); ++e) {
        int t = prod.step(q, e);
        if (t < 0 || lstate[t] >= 0) continue;
        lstate[t] = le[e] >= 0 ? l.step(lstate[q], le[e]) : -1;
        order.push_back(t);
      }
    }
    std::vector<char> bad(prod.num_states(), 0);
    bool changed = false;
    for (int q : order) {
      for (int e = 0; e < prod.num_events(); ++e) {
        if (!unc[e] || le[e] < 0) continue;
        if (l.step(lstate[q], le[e]) >= 0 && prod.step(q, e) < 0) {
          bad[q] = 1;
          changed = true;
          break;
        }
      }
    }
    if (!changed) return prod;
    // delete bad states
    Generator::Pieces p;
    p.alphabet = prod.alphabet();
    std::vector<int> renum(prod.num_states(), -1);
    int cnt = 0;
    for (int q = 0; q < prod.num_states(); ++q)
      if (!bad[q]) renum[q] = cnt++;
    if (bad[prod.initial()]) return Generator::empty(prod.alphabet());
    p.initial = renum[prod.initial()];
    for (int q = 0; q < prod.num_states(); ++q) {
      if (bad[q]) continue;
      p.state_names.push_back(prod.state_name(q));
      p.marked.push_back(prod.is_marked(q) ? 1 : 0);
      std::vector<int> row(prod.num_events(), -1);
      for (int e = 0; e < prod.num_events(); ++e) {
        int t = prod.step(q, e);
        if (t >= 0 && !bad[t]) row[e] = renum[t];
      }
      p.trans.push_back(std::move(row));
    }
    prod = trim(Generator::from_pieces(std::move(p)));
  }
}

namespace detail {

// Supremal prefix-closed normal sublanguage of closure(K) w.r.t. L and
// A_o: words all of whose prefixes p satisfy P^-1 P(p) cap L <= closure(K).
inline Generator sup_normal_closed(const Generator& kc,
                                   const ControlContext& ctx) {
  if (kc.is_empty_language()) return kc;
  const Generator& l = ctx.plant;
  // bad projections: P(L \ closure(K)); tracked by a monitor automaton
  // built from the (L, closure(K)-with-dead) pair
  Generator::Pieces pb;
  pb.alphabet = l.alphabet();
  pb.initial = 0;
  std::vector<int> ke(l.num_events());
  for (int e = 0; e < l.num_events(); ++e)
    ke[e] = kc.event_index(l.alphabet()[e]);
  std::map<std::pair<int, int>, int> index;
  std::vector<std::pair<int, int>> pairs{{l.initial(), kc.initial()}};
  index[pairs[0]] = 0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    auto [ql, qk] = pairs[i];
    if (pb.state_names.size() <= i) {
      pb.state_names.push_back(std::to_string(i));
      pb.marked.push_back(qk < 0 ? 1 : 0);
      pb.trans.emplace_back(l.num_events(), -1);
    }
    for (int e = 0; e < l.num_events(); ++e) {
      int tl = l.step(ql, e);
      if (tl < 0) continue;  // outside L: irrelevant
      int tk = (qk >= 0 && ke[e] >= 0) ? kc.step(qk, ke[e]) : -1;
      auto [it, fresh] =
          index.emplace(std::make_pair(tl, tk), static_cast<int>(pairs.size()));
      if (fresh) {
        pairs.emplace_back(tl, tk);
        pb.state_names.push_back(std::to_string(it->second));
        pb.marked.push_back(tk < 0 ? 1 : 0);
        pb.trans.emplace_back(l.num_events(), -1);
      }
      pb.trans[i][e] = it->second;
    }
  }
  Generator escaped = Generator::from_pieces(std::move(pb));
  Generator bad_proj = project(escaped, ctx.observable);
  if (bad_proj.is_empty_language()) return kc;
  // remove from closure(K) every word with a prefix projecting into the
  // bad set: product with the bad-projection monitor, pruning states
  // whose monitor component is marked
  std::vector<int> be(kc.num_events());
  for (int e = 0; e < kc.num_events(); ++e)
    be[e] = bad_proj.event_index(kc.alphabet()[e]);
  Generator::Pieces pr;
  pr.alphabet = kc.alphabet();
  std::map<std::pair<int, int>, int> idx2;
  // monitor state -1 means the projection left P(L \ closure(K))'s
  // automaton: no extension can become bad through this prefix
  std::vector<std::pair<int, int>> st{{kc.initial(), bad_proj.initial()}};
  if (bad_proj.is_marked(bad_proj.initial()))
    return Generator::empty(kc.alphabet());
  idx2[st[0]] = 0;
  for (std::size_t i = 0; i < st.size(); ++i) {
    auto [qk, qb] = st[i];
    if (pr.state_names.size() <= i) {
      pr.state_names.push_back(kc.state_name(qk) + "#" +
                               (qb >= 0 ? bad_proj.state_name(qb) : "-"));
      pr.marked.push_back(1);
      pr.trans.emplace_back(kc.num_events(), -1);
    }
    for (int e = 0; e < kc.num_events(); ++e) {
      int tk = kc.step(qk, e);
      if (tk < 0) continue;
      int tb = qb;
      bool obs = ctx.observable.count(kc.alphabet()[e]) != 0;
      if (obs) tb = (qb >= 0 && be[e] >= 0) ? bad_proj.step(qb, be[e]) : -1;
      if (tb >= 0 && bad_proj.is_marked(tb)) continue;  // pruned
      auto [it, fresh] =
          idx2.emplace(std::make_pair(tk, tb), static_cast<int>(st.size()));
      if (fresh) {
        st.emplace_back(tk, tb);
        pr.state_names.push_back(kc.state_name(tk) + "#" +
                                 (tb >= 0 ? bad_proj.state_name(tb) : "-"));
        pr.marked.push_back(1);
        pr.trans.emplace_back(kc.num_events(), -1);
      }
      pr.trans[i][e] = it->second;
    }
  }
  pr.initial = 0;
  return detail::trim(Generator::from_pieces(std::move(pr)));
}

}  // namespace detail

// Supremal controllable and normal sublanguage: alternate a
// controllability pass and a normality pass until the language is stable.
inline Generator supcn(const Generator& k, const ControlContext& ctx) {
  detail::require_subset_of_plant(k, ctx);
  Generator cur = trim(k);
  while (true) {
    Generator next = supcon(cur, ctx);
    Generator n = detail::sup_normal_closed(prefix_closure(next), ctx);
    // restrict the marked language to words staying inside n
    if (n.is_empty_language()) {
      next = Generator::empty(cur.alphabet());
    } else {
      Generator restricted = sync_product({next, n});
      // marking of n (all marked) must not add marked words: product
      // marks where both mark, and next's marked words are what we keep
      next = trim(restricted);
    }
    if (cur.is_empty_language() && next.is_empty_language()) return next;
    if (!cur.is_empty_language() && !next.is_empty_language() &&
        language_equal(cur, next, true))
      return next;
    cur = next;
  }
}

// Smallest prefix-closed controllable superlanguage T of closure(K)
// w.r.t. L and A_uc: forward closure of closure(K) under uncontrollable
// L-continuations.
inline Generator inf_prefix_closed_controllable(const Generator& k,
                                                const ControlContext& ctx) {
  detail::require_subset_of_plant(k, ctx);
  Generator kc = prefix_closure(k);
  if (kc.is_empty_language()) return kc;
  const Generator& l = ctx.plant;
  std::vector<int> ke(l.num_events());
  for (int e = 0; e < l.num_events(); ++e)
    ke[e] = kc.event_index(l.alphabet()[e]);
  // states (l-state, kc-state or -1); from a dead kc component only
  // uncontrollable events may extend
  Generator::Pieces p;
  p.alphabet = l.alphabet();
  std::map<std::pair<int, int>, int> index;
  std::vector<std::pair<int, int>> st{{l.initial(), kc.initial()}};
  index[st[0]] = 0;
  p.initial = 0;
  for (std::size_t i = 0; i < st.size(); ++i) {
    auto [ql, qk] = st[i];
    if (p.state_names.size() <= i) {
      p.state_names.push_back(
          l.state_name(ql) + "#" + (qk >= 0 ? kc.state_name(qk) : "-"));
      p.marked.push_back(1);
      p.trans.emplace_back(l.num_events(), -1);
    }
    for (int e = 0; e < l.num_events(); ++e) {
      int tl = l.step(ql, e);
      if (tl < 0) continue;
      int tk = (qk >= 0 && ke[e] >= 0) ? kc.step(qk, ke[e]) : -1;
      bool unc = ctx.uncontrollable.count(l.alphabet()[e]) != 0;
      if (tk < 0 && !unc) continue;  // controllable escape: not in T
      auto [it, fresh] =
          index.emplace(std::make_pair(tl, tk), static_cast<int>(st.size()));
      if (fresh) {
        st.emplace_back(tl, tk);
        p.state_names.push_back(
            l.state_name(tl) + "#" + (tk >= 0 ? kc.state_name(tk) : "-"));
        p.marked.push_back(1);
        p.trans.emplace_back(l.num_events(), -1);
      }
      p.trans[i][e] = it->second;
    }
  }
  return trim(Generator::from_pieces(std::move(p)));
}

// R = K cup (T \ closure(K)); closure(R) = T, so R inherits the
// controllability of T while keeping K's marked words.
inline Generator lift_infimal(const Generator& k, const Generator& t) {
  Generator kk = trim(k);
  if (kk.is_empty_language()) return trim(t);
  Generator kc = prefix_closure(kk);
  Generator tt = trim(t);
  std::vector<int> ke(tt.num_events()), kme(tt.num_events());
  for (int e = 0; e < tt.num_events(); ++e) {
    ke[e] = kc.event_index(tt.alphabet()[e]);
    kme[e] = kk.event_index(tt.alphabet()[e]);
  }
  Generator::Pieces p;
  p.alphabet = tt.alphabet();
  std::map<std::array<int, 3>, int> index;
  std::vector<std::array<int, 3>> st{{tt.initial(), kc.initial(), kk.initial()}};
  index[st[0]] = 0;
  p.initial = 0;
  for (std::size_t i = 0; i < st.size(); ++i) {
    auto [qt, qc, qm] = st[i];
    if (p.state_names.size() <= i) {
      p.state_names.push_back(tt.state_name(qt) + "#" +
                              (qc >= 0 ? kc.state_name(qc) : "-"));
      bool in_k = qm >= 0 && kk.is_marked(qm);
      bool outside_closure = qc < 0;
      p.marked.push_back(in_k || outside_closure ? 1 : 0);
      p.trans.emplace_back(tt.num_events(), -1);
    }
    for (int e = 0; e < tt.num_events(); ++e) {
      int t2 = tt.step(qt, e);
      if (t2 < 0) continue;
      int c2 = (qc >= 0 && ke[e] >= 0) ? kc.step(qc, ke[e]) : -1;
      int m2 = (qm >= 0 && kme[e] >= 0) ? kk.step(qm, kme[e]) : -1;
      std::array<int, 3> nx{t2, c2, m2};
      auto [it, fresh] = index.emplace(nx, static_cast<int>(st.size()));
      if (fresh) {
        st.push_back(nx);
        p.state_names.push_back(tt.state_name(t2) + "#" +
                                (c2 >= 0 ? kc.state_name(c2) : "-"));
        bool in_k = m2 >= 0 && kk.is_marked(m2);
        p.marked.push_back(in_k || c2 < 0 ? 1 : 0);
        p.trans.emplace_back(tt.num_events(), -1);
      }
      p.trans[i][e] = it->second;
    }
  }
  return trim(Generator::from_pieces(std::move(p)));
}

struct MutualControllabilityResult {
  bool mutually_controllable = true;
  int agent = -1;  // index j of the violated component
  std::optional<Word> s;
  std::optional<Event> event;
};

// L_j (A_{i,uc} cap A_j) cap P_j P_i^-1(L_i) <= L_j for all ordered pairs.
// Each L_i is a prefix-closed generated language over its own alphabet.
inline MutualControllabilityResult is_mutually_controllable(
    const std::vector<Generator>& ls, const Alphabet& uncontrollable) {
  MutualControllabilityResult res;
  const int n = static_cast<int>(ls.size());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const Generator& li = ls[i];
      const Generator& lj = ls[j];
      std::vector<Event> united = li.alphabet();
      for (const Event& a : lj.alphabet())
        if (li.event_index(a) < 0) united.push_back(a);
      Generator lifted_i = inverse_project(li, united);
      Generator m = project(prefix_closure(lifted_i), lj.alphabet_set());
      if (m.is_empty_language() || lj.is_empty_language()) continue;
      // walk lj (with dead) against m; violation: s in L_j, a shared
      // uncontrollable, sa in M \ L_j
      Alphabet shared_unc;
      for (const Event& a : lj.alphabet())
        if (uncontrollable.count(a) && li.event_index(a) >= 0)
          shared_unc.insert(a);
      if (shared_unc.empty()) continue;
      std::vector<int> je(m.num_events());
      for (int e = 0; e < m.num_events(); ++e)
        je[e] = lj.event_index(m.alphabet()[e]);
      struct Node {
        int qm, qj, parent, event;
      };
      std::vector<Node> nodes{{m.initial(), lj.initial(), -1, -1}};
      std::set<std::pair<int, int>> seen{{nodes[0].qm, nodes[0].qj}};
      for (std::size_t x = 0; x < nodes.size(); ++x) {
        Node nd = nodes[x];
        for (int e = 0; e < m.num_events(); ++e) {
          const Event& a = m.alphabet()[e];
          int tm = m.step(nd.qm, e);
          int tj = (nd.qj >= 0 && je[e] >= 0) ? lj.step(nd.qj, je[e]) : -1;
          if (nd.qj >= 0 && shared_unc.count(a) && tm >= 0 && tj < 0) {
            res.mutually_controllable = false;
            res.agent = j;
            Word w;
            for (int y = static_cast<int>(x); nodes[y].parent >= 0;
                 y = nodes[y].parent)
              w.push_back(m.alphabet()[nodes[y].event]);
            std::reverse(w.begin(), w.end());
            res.s = w;
            res.event = a;
            return res;
          }
          if (tm < 0) continue;
          if (seen.emplace(tm, tj).second)
            nodes.push_back({tm, tj, static_cast<int>(x), e});
        }
      }
    }
  }
  return res;
}

}  // namespace dsc

#endif  // DSC_CONTROL_HPP
