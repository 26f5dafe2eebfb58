// Deterministic finite generators and the core language algebra used by
// the decentralized supervisory-control pipeline.
#ifndef DSC_GENERATOR_HPP
#define DSC_GENERATOR_HPP

#include <algorithm>
#include <array>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dsc {

using Event = std::string;
using Word = std::vector<Event>;
using Alphabet = std::set<Event>;

inline std::string word_to_string(const Word& w) {
  if (w.empty()) return "-";
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ' ';
    s += w[i];
  }
  return s;
}

struct format_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct domain_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
// Thrown when a product-state budget is exhausted.
struct budget_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raw, unchecked description of a generator; build_and_trim validates it.
struct RawGenerator {
  std::vector<Event> alphabet;
  std::vector<std::string> states;
  std::string initial;
  std::vector<std::string> marked;
  // (source state, event, target state)
  std::vector<std::array<std::string, 3>> transitions;
};

// Deterministic generator. Immutable after construction. A generator with
// no states (initial() < 0) represents the empty language.
class Generator {
 public:
  Generator() = default;

  static Generator empty(std::vector<Event> alphabet) {
    Generator g;
    g.alphabet_ = std::move(alphabet);
    return g;
  }

  const std::vector<Event>& alphabet() const { return alphabet_; }
  Alphabet alphabet_set() const {
    return Alphabet(alphabet_.begin(), alphabet_.end());
  }
  int event_index(const Event& e) const {
    for (std::size_t i = 0; i < alphabet_.size(); ++i)
      if (alphabet_[i] == e) return static_cast<int>(i);
    return -1;
  }
  int num_states() const { return static_cast<int>(states_.size()); }
  int num_events() const { return static_cast<int>(alphabet_.size()); }
  int initial() const { return initial_; }
  bool is_empty_language() const { return initial_ < 0; }
  const std::string& state_name(int q) const { return states_[q]; }
  bool is_marked(int q) const { return marked_[q] != 0; }
  // Successor of q under event index e, or -1.
  int step(int q, int e) const { return trans_[q][e]; }

  // Follows w from the initial state; returns the reached state or -1.
  int run(const Word& w) const {
    int q = initial_;
    for (const Event& a : w) {
      if (q < 0) return -1;
      int e = event_index(a);
      if (e < 0) throw domain_error("event '" + a + "' not in alphabet");
      q = trans_[q][e];
    }
    return q;
  }

  bool contains_generated(const Word& w) const { return run(w) >= 0; }
  bool contains_marked(const Word& w) const {
    int q = run(w);
    return q >= 0 && is_marked(q);
  }

  // Used by the construction helpers below; not part of the public API.
  struct Pieces {
    std::vector<Event> alphabet;
    std::vector<std::string> state_names;
    std::vector<char> marked;
    std::vector<std::vector<int>> trans;
    int initial = -1;
  };
  static Generator from_pieces(Pieces p) {
    Generator g;
    g.alphabet_ = std::move(p.alphabet);
    g.states_ = std::move(p.state_names);
    g.marked_ = std::move(p.marked);
    g.trans_ = std::move(p.trans);
    g.initial_ = p.initial;
    return g;
  }

 private:
  std::vector<Event> alphabet_;
  std::vector<std::string> states_;
  std::vector<char> marked_;
  std::vector<std::vector<int>> trans_;  // trans_[state][event] or -1
  int initial_ = -1;
};

namespace detail {

// Keeps states reachable from the initial state that can reach a marked
// state; renumbers in BFS discovery order (events in declared order).
inline Generator trim(const Generator& g) {
  if (g.is_empty_language()) return Generator::empty(g.alphabet());
  int n = g.num_states(), m = g.num_events();
  // coaccessible: backward closure from marked states
  std::vector<char> coacc(n, 0);
  std::vector<std::vector<int>> preds(n);
  std::deque<int> queue;
  for (int q = 0; q < n; ++q) {
    for (int e = 0; e < m; ++e) {
      int t = g.step(q, e);
      if (t >= 0) preds[t].push_back(q);
    }
    if (g.is_marked(q)) {
      coacc[q] = 1;
      queue.push_back(q);
    }
  }
  while (!queue.empty()) {
    int q = queue.front();
    queue.pop_front();
    for (int p : preds[q])
      if (!coacc[p]) {
        coacc[p] = 1;
        queue.push_back(p);
      }
  }
  if (!coacc[g.initial()]) return Generator::empty(g.alphabet());
  // forward BFS through coaccessible states
  std::vector<int> renum(n, -1);
  std::vector<int> order;
  renum[g.initial()] = 0;
  order.push_back(g.initial());
  for (std::size_t i = 0; i < order.size(); ++i) {
    int q = order[i];
    for (int e = 0; e < m; ++e) {
      int t = g.step(q, e);
      if (t >= 0 && coacc[t] && renum[t] < 0) {
        renum[t] = static_cast<int>(order.size());
        order.push_back(t);
      }
    }
  }
  Generator::Pieces p;
  p.alphabet = g.alphabet();
  p.initial = 0;
  p.state_names.reserve(order.size());
  for (int q : order) {
    p.state_names.push_back(g.state_name(q));
    p.marked.push_back(g.is_marked(q) ? 1 : 0);
    std::vector<int> row(m, -1);
    for (int e = 0; e < m; ++e) {
      int t = g.step(q, e);
      if (t >= 0 && coacc[t]) row[e] = renum[t];
    }
    p.trans.push_back(std::move(row));
  }
  return Generator::from_pieces(std::move(p));
}

}  // namespace detail

// Validates a raw description and returns the trim generator.
inline Generator build_and_trim(const RawGenerator& raw) {
  Generator::Pieces p;
  p.alphabet = raw.alphabet;
  std::map<Event, int> eidx;
  for (std::size_t i = 0; i < raw.alphabet.size(); ++i) {
    if (!eidx.emplace(raw.alphabet[i], static_cast<int>(i)).second)
      throw format_error("duplicate event '" + raw.alphabet[i] + "'");
  }
  std::map<std::string, int> sidx;
  for (std::size_t i = 0; i < raw.states.size(); ++i) {
    if (!sidx.emplace(raw.states[i], static_cast<int>(i)).second)
      throw format_error("duplicate state '" + raw.states[i] + "'");
  }
  p.state_names = raw.states;
  p.marked.assign(raw.states.size(), 0);
  auto state_of = [&](const std::string& s) {
    auto it = sidx.find(s);
    if (it == sidx.end()) throw format_error("undeclared state '" + s + "'");
    return it->second;
  };
  if (raw.states.empty()) throw format_error("no states declared");
  p.initial = state_of(raw.initial);
  for (const auto& s : raw.marked) p.marked[state_of(s)] = 1;
  p.trans.assign(raw.states.size(), std::vector<int>(raw.alphabet.size(), -1));
  for (const auto& t : raw.transitions) {
    int src = state_of(t[0]);
    auto it = eidx.find(t[1]);
    if (it == eidx.end()) throw format_error("undeclared event '" + t[1] + "'");
    int tgt = state_of(t[2]);
    if (p.trans[src][it->second] >= 0)
      throw format_error("duplicate transition (" + t[0] + ", " + t[1] + ")");
    p.trans[src][it->second] = tgt;
  }
  return detail::trim(Generator::from_pieces(std::move(p)));
}

// Trie over the given marked words; every prefix becomes a state. The
// result is trim; with mark_prefixes the marked language is prefix-closed.
inline Generator from_marked_words(const std::vector<Event>& alphabet,
                                   const std::vector<Word>& words,
                                   bool mark_prefixes = false) {
  Generator::Pieces p;
  p.alphabet = alphabet;
  p.state_names.push_back("r");
  p.marked.push_back(0);
  p.trans.emplace_back(alphabet.size(), -1);
  p.initial = 0;
  auto eidx = [&](const Event& a) {
    for (std::size_t i = 0; i < alphabet.size(); ++i)
      if (alphabet[i] == a) return static_cast<int>(i);
    throw domain_error("event '" + a + "' not in alphabet");
  };
  for (const Word& w : words) {
    int q = 0;
    for (const Event& a : w) {
      int e = eidx(a);
      if (mark_prefixes) p.marked[q] = 1;
      if (p.trans[q][e] < 0) {
        p.trans[q][e] = static_cast<int>(p.state_names.size());
        p.state_names.push_back(p.state_names[q] + "." + a);
        p.marked.push_back(0);
        p.trans.emplace_back(alphabet.size(), -1);
      }
      q = p.trans[q][e];
    }
    p.marked[q] = 1;
  }
  return detail::trim(Generator::from_pieces(std::move(p)));
}

inline Generator from_closed_words(const std::vector<Event>& alphabet,
                                   const std::vector<Word>& words) {
  return from_marked_words(alphabet, words, true);
}

// Word set {w in language : |w| <= max_len} in length-lexicographic order
// of the declared event order.
inline std::vector<Word> enumerate_words(const Generator& g, int max_len,
                                         bool marked_language = true) {
  std::vector<Word> out;
  if (g.is_empty_language()) return out;
  std::vector<std::pair<int, Word>> layer{{g.initial(), {}}};
  for (int len = 0; len <= max_len; ++len) {
    for (const auto& [q, w] : layer)
      if (!marked_language || g.is_marked(q)) out.push_back(w);
    if (len == max_len) break;
    std::vector<std::pair<int, Word>> next;
    for (const auto& [q, w] : layer) {
      for (int e = 0; e < g.num_events(); ++e) {
        int t = g.step(q, e);
        if (t < 0) continue;
        Word w2 = w;
        w2.push_back(g.alphabet()[e]);
        next.emplace_back(t, std::move(w2));
      }
    }
    layer = std::move(next);
  }
  return out;
}

// Synchronous product over the union alphabet: shared events synchronize,
// private events interleave. The result is NOT trimmed (blocking states
// are what the nonconflictingness check looks for).
inline Generator sync_product(const std::vector<Generator>& gs) {
  if (gs.empty()) throw domain_error("sync_product of no generators");
  std::vector<Event> alphabet;
  for (const Generator& g : gs)
    for (const Event& a : g.alphabet())
      if (std::find(alphabet.begin(), alphabet.end(), a) == alphabet.end())
        alphabet.push_back(a);
  const int n = static_cast<int>(gs.size());
  const int m = static_cast<int>(alphabet.size());
  // per-component event index for each product event (-1: private elsewhere)
  std::vector<std::vector<int>> comp_event(n, std::vector<int>(m, -1));
  for (int i = 0; i < n; ++i)
    for (int e = 0; e < m; ++e) comp_event[i][e] = gs[i].event_index(alphabet[e]);
  std::vector<int> init(n);
  for (int i = 0; i < n; ++i) {
    if (gs[i].is_empty_language()) return Generator::empty(alphabet);
    init[i] = gs[i].initial();
  }
  std::map<std::vector<int>, int> index;
  std::vector<std::vector<int>> tuples{init};
  index[init] = 0;
  Generator::Pieces p;
  p.alphabet = alphabet;
  p.initial = 0;
  auto tuple_name = [&](const std::vector<int>& t) {
    if (n == 1) return gs[0].state_name(t[0]);
    std::string s;
    for (int i = 0; i < n; ++i) {
      if (i) s += "|";
      s += gs[i].state_name(t[i]);
    }
    return s;
  };
  for (std::size_t qi = 0; qi < tuples.size(); ++qi) {
    std::vector<int> cur = tuples[qi];
    if (p.state_names.size() <= qi) {
      p.state_names.push_back(tuple_name(cur));
      bool mk = true;
      for (int i = 0; i < n; ++i) mk = mk && gs[i].is_marked(cur[i]);
      p.marked.push_back(mk ? 1 : 0);
      p.trans.emplace_back(m, -1);
    }
    for (int e = 0; e < m; ++e) {
      std::vector<int> nxt = cur;
      bool ok = true;
      for (int i = 0; i < n && ok; ++i) {
        int ce = comp_event[i][e];
        if (ce < 0) continue;  // private elsewhere: component stays
        int t = gs[i].step(cur[i], ce);
        if (t < 0)
          ok = false;
        else
          nxt[i] = t;
      }
      if (!ok) continue;
      auto [it, fresh] = index.emplace(nxt, static_cast<int>(tuples.size()));
      if (fresh) {
        tuples.push_back(nxt);
        p.state_names.push_back(tuple_name(nxt));
        bool mk = true;
        for (int i = 0; i < n; ++i) mk = mk && gs[i].is_marked(nxt[i]);
        p.marked.push_back(mk ? 1 : 0);
        p.trans.emplace_back(m, -1);
      }
      p.trans[qi][e] = it->second;
    }
  }
  return Generator::from_pieces(std::move(p));
}

// Marks every state that lies on a path to a marked state, then trims.
inline Generator prefix_closure(const Generator& g) {
  Generator t = detail::trim(g);
  if (t.is_empty_language()) return t;
  Generator::Pieces p;
  p.alphabet = t.alphabet();
  p.initial = t.initial();
  for (int q = 0; q < t.num_states(); ++q) {
    p.state_names.push_back(t.state_name(q));
    p.marked.push_back(1);  // trim: every state reaches a marked state
    std::vector<int> row(t.num_events());
    for (int e = 0; e < t.num_events(); ++e) row[e] = t.step(q, e);
    p.trans.push_back(std::move(row));
  }
  return Generator::from_pieces(std::move(p));
}

inline bool is_prefix_closed(const Generator& g) {
  Generator t = detail::trim(g);
  for (int q = 0; q < t.num_states(); ++q)
    if (!t.is_marked(q)) return false;
  return true;
}

enum class LanguageOrder { equal, proper_subset, proper_superset, incomparable };

struct CompareResult {
  LanguageOrder order = LanguageOrder::equal;
  // shortest word in L1 \ L2, resp. L2 \ L1, when nonempty
  std::optional<Word> only_in_first;
  std::optional<Word> only_in_second;
};

namespace detail {

// BFS over the synchronized pair walk of g1 and g2 (identical alphabets),
// with -1 as the dead component. Finds the shortest word in each side of
// the symmetric difference.
inline CompareResult compare_impl(const Generator& g1, const Generator& g2,
                                  bool marked_language) {
  const auto& alphabet = g1.alphabet();
  const int m = static_cast<int>(alphabet.size());
  std::vector<int> e2(m);
  for (int e = 0; e < m; ++e) e2[e] = g2.event_index(alphabet[e]);
  CompareResult res;
  struct Node {
    int q1, q2, parent, event;
  };
  std::vector<Node> nodes{{g1.initial(), g2.initial(), -1, -1}};
  std::set<std::pair<int, int>> seen{{nodes[0].q1, nodes[0].q2}};
  auto word_of = [&](int idx) {
    Word w;
    for (int i = idx; nodes[i].parent >= 0; i = nodes[i].parent)
      w.push_back(alphabet[nodes[i].event]);
    std::reverse(w.begin(), w.end());
    return w;
  };
  auto in1 = [&](const Node& nd) {
    return nd.q1 >= 0 && (!marked_language || g1.is_marked(nd.q1));
  };
  auto in2 = [&](const Node& nd) {
    return nd.q2 >= 0 && (!marked_language || g2.is_marked(nd.q2));
  };
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    Node nd = nodes[i];
    if (in1(nd) && !in2(nd) && !res.only_in_first)
      res.only_in_first = word_of(static_cast<int>(i));
    if (in2(nd) && !in1(nd) && !res.only_in_second)
      res.only_in_second = word_of(static_cast<int>(i));
    if (res.only_in_first && res.only_in_second) break;
    for (int e = 0; e < m; ++e) {
      int t1 = nd.q1 >= 0 ? g1.step(nd.q1, e) : -1;
      int t2 = (nd.q2 >= 0 && e2[e] >= 0) ? g2.step(nd.q2, e2[e]) : -1;
      if (t1 < 0 && t2 < 0) continue;
      if (seen.emplace(t1, t2).second)
        nodes.push_back({t1, t2, static_cast<int>(i), e});
    }
  }
  if (res.only_in_first && res.only_in_second)
    res.order = LanguageOrder::incomparable;
  else if (res.only_in_first)
    res.order = LanguageOrder::proper_superset;
  else if (res.only_in_second)
    res.order = LanguageOrder::proper_subset;
  else
    res.order = LanguageOrder::equal;
  return res;
}

}  // namespace detail

// Exact comparison of two regular languages over identical alphabets.
inline CompareResult compare_languages(const Generator& g1, const Generator& g2,
                                       bool marked_language = true) {
  if (g1.alphabet_set() != g2.alphabet_set())
    throw domain_error("compare_languages: alphabets differ");
  return detail::compare_impl(g1, g2, marked_language);
}

inline bool language_equal(const Generator& g1, const Generator& g2,
                           bool marked_language = true) {
  return compare_languages(g1, g2, marked_language).order ==
         LanguageOrder::equal;
}

// True iff L1 <= L2 (no alphabet check; callers guarantee comparability).
inline bool language_subset(const Generator& g1, const Generator& g2,
                            bool marked_language = true,
                            Word* witness = nullptr) {
  auto res = detail::compare_impl(g1, g2, marked_language);
  if (res.only_in_first) {
    if (witness) *witness = *res.only_in_first;
    return false;
  }
  return true;
}

struct NonconflictResult {
  bool nonconflicting = true;
  // a reachable word of the composed closures after which marking is
  // unreachable in the composition
  std::optional<Word> blocking_word;
};

// closure(|| Lm(G_i)) = || closure(Lm(G_i)): the product of trim
// generators must itself be trim.
inline NonconflictResult is_nonconflicting(const std::vector<Generator>& gs) {
  std::vector<Generator> trims;
  trims.reserve(gs.size());
  for (const Generator& g : gs) trims.push_back(detail::trim(g));
  Generator prod = sync_product(trims);
  NonconflictResult res;
  if (prod.is_empty_language()) return res;
  int n = prod.num_states(), m = prod.num_events();
  std::vector<char> coacc(n, 0);
  std::vector<std::vector<int>> preds(n);
  std::deque<int> queue;
  for (int q = 0; q < n; ++q) {
    for (int e = 0; e < m; ++e) {
      int t = prod.step(q, e);
      if (t >= 0) preds[t].push_back(q);
    }
    if (prod.is_marked(q)) {
      coacc[q] = 1;
      queue.push_back(q);
    }
  }
  while (!queue.empty()) {
    int q = queue.front();
    queue.pop_front();
    for (int p : preds[q])
      if (!coacc[p]) {
        coacc[p] = 1;
        queue.push_back(p);
      }
  }
  // BFS for a blocking witness; prefer the shortest word that actually
  // deadlocks over the shortest word merely entering the blocked region
  struct Node {
    int q, parent, event;
  };
  std::vector<Node> nodes{{prod.initial(), -1, -1}};
  std::vector<char> seen(n, 0);
  seen[prod.initial()] = 1;
  auto word_to = [&](std::size_t i) {
    Word w;
    for (int j = static_cast<int>(i); nodes[j].parent >= 0; j = nodes[j].parent)
      w.push_back(prod.alphabet()[nodes[j].event]);
    std::reverse(w.begin(), w.end());
    return w;
  };
  std::optional<std::size_t> first_blocked;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    Node nd = nodes[i];
    bool deadend = true;
    for (int e = 0; e < m; ++e) {
      int t = prod.step(nd.q, e);
      if (t >= 0) {
        deadend = false;
        if (!seen[t]) {
          seen[t] = 1;
          nodes.push_back({t, static_cast<int>(i), e});
        }
      }
    }
    if (!coacc[nd.q]) {
      if (!first_blocked) first_blocked = i;
      if (deadend) {
        res.nonconflicting = false;
        res.blocking_word = word_to(i);
        return res;
      }
    }
  }
  if (first_blocked) {
    res.nonconflicting = false;
    res.blocking_word = word_to(*first_blocked);
  }
  return res;
}

inline Generator trim(const Generator& g) { return detail::trim(g); }

}  // namespace dsc

#endif  // DSC_GENERATOR_HPP
