// Separability, conditional decomposability, extension search, and the
// refined procedure producing per-agent communication alphabets.
#ifndef DSC_DECOMPOSITION_HPP
#define DSC_DECOMPOSITION_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dsc/generator.hpp"
#include "dsc/observation.hpp"

namespace dsc {

struct SeparabilityResult {
  bool separable = true;
  std::optional<Word> witness;  // word in ||_i P_i(K) \ K
};

// K = ||_i P_i(K), checked by projecting, composing, comparing. The
// alphabets must cover alphabet(K).
inline SeparabilityResult is_separable(const Generator& k,
                                       const std::vector<Alphabet>& alphabets) {
  Alphabet covered;
  for (const Alphabet& a : alphabets) covered.insert(a.begin(), a.end());
  if (covered != k.alphabet_set())
    throw domain_error("is_separable: alphabets do not cover the alphabet");
  SeparabilityResult res;
  std::vector<Generator> projections;
  projections.reserve(alphabets.size());
  for (const Alphabet& a : alphabets) projections.push_back(project(k, a));
  Generator composed = trim(sync_product(projections));
  Word w;
  if (!language_subset(composed, k, true, &w)) {
    res.separable = false;
    res.witness = w;
  }
  return res;
}

struct CdResult {
  bool conditionally_decomposable = true;
  std::optional<Event> missing_shared_event;  // shared event not in Sigma
  std::optional<Word> witness;                // separability witness
};

inline Alphabet shared_events(const std::vector<Alphabet>& alphabets) {
  Alphabet shared;
  for (std::size_t i = 0; i < alphabets.size(); ++i)
    for (std::size_t j = i + 1; j < alphabets.size(); ++j)
      for (const Event& a : alphabets[i])
        if (alphabets[j].count(a)) shared.insert(a);
  return shared;
}

// Sigma must contain all pairwise-shared events; then K must be separable
// with respect to (A_i cup Sigma).
inline CdResult is_conditionally_decomposable(
    const Generator& k, const std::vector<Alphabet>& alphabets,
    const Alphabet& sigma) {
  CdResult res;
  for (const Event& a : shared_events(alphabets))
    if (!sigma.count(a)) {
      res.conditionally_decomposable = false;
      res.missing_shared_event = a;
      return res;
    }
  std::vector<Alphabet> extended;
  extended.reserve(alphabets.size());
  for (const Alphabet& a : alphabets) {
    Alphabet b = a;
    b.insert(sigma.begin(), sigma.end());
    extended.push_back(std::move(b));
  }
  SeparabilityResult sep = is_separable(k, extended);
  if (!sep.separable) {
    res.conditionally_decomposable = false;
    res.witness = sep.witness;
  }
  return res;
}

// Smallest event set that, together with the required shared events,
// makes K conditionally decomposable. With minimize, exhaustive search in
// cardinality order (alphabets up to ~12 events); otherwise greedy: grow
// Sigma with the first witness event not yet in it.
inline Alphabet find_extension(const Generator& k,
                               const std::vector<Alphabet>& alphabets,
                               bool minimize = false) {
  Alphabet required = shared_events(alphabets);
  const std::vector<Event>& order = k.alphabet();
  {
    // events of K outside every input alphabet must be in any valid Sigma
    Alphabet covered;
    for (const Alphabet& a : alphabets) covered.insert(a.begin(), a.end());
    for (const Event& a : order)
      if (!covered.count(a)) required.insert(a);
  }
  std::vector<Event> candidates;
  for (const Event& a : order)
    if (!required.count(a)) candidates.push_back(a);
  if (minimize && candidates.size() <= 20) {
    // subsets in cardinality order, ties broken by declared event order
    const std::size_t n = candidates.size();
    for (std::size_t card = 0; card <= n; ++card) {
      // enumerate combinations of `card` indices in lexicographic order
      std::vector<std::size_t> pick(card);
      std::iota(pick.begin(), pick.end(), 0);
      while (true) {
        Alphabet sigma = required;
        for (std::size_t idx : pick) sigma.insert(candidates[idx]);
        if (is_conditionally_decomposable(k, alphabets, sigma)
                .conditionally_decomposable)
          return sigma;
        // advance combination
        if (card == 0) break;
        std::size_t i = card;
        while (i > 0 && pick[i - 1] == n - card + (i - 1)) --i;
        if (i == 0) break;
        ++pick[i - 1];
        for (std::size_t j = i; j < card; ++j) pick[j] = pick[j - 1] + 1;
      }
    }
    return Alphabet(order.begin(), order.end());
  }
  Alphabet sigma = required;
  while (true) {
    CdResult cd = is_conditionally_decomposable(k, alphabets, sigma);
    if (cd.conditionally_decomposable) return sigma;
    bool added = false;
    if (cd.witness) {
      for (const Event& a : *cd.witness)
        if (!sigma.count(a)) {
          sigma.insert(a);
          added = true;
          break;
        }
    }
    if (!added) {
      for (const Event& a : order)
        if (!sigma.count(a)) {
          sigma.insert(a);
          added = true;
          break;
        }
    }
    if (!added) return sigma;  // full alphabet: always decomposable
  }
}

// Output of the refined conditional-decomposability procedure.
struct ExtensionPlan {
  Alphabet sigma_all;
  std::vector<Alphabet> sigma;       // per input alphabet
  std::vector<Alphabet> extended;    // B_i = A_i cup Sigma_i
  // partition of input indices into overlap-equivalence classes
  std::vector<std::vector<std::size_t>> classes;
};

// Procedure: group the alphabets by the transitive closure of overlap,
// compute a global extension over the class unions, then refine each
// class locally. Duplicate input alphabets are collapsed first and the
// plan re-expanded afterwards.
inline ExtensionPlan rcd(const Generator& k,
                         const std::vector<Alphabet>& alphabets,
                         bool minimize = true) {
  const std::size_t n = alphabets.size();
  // collapse duplicates
  std::vector<Alphabet> unique_alpha;
  std::vector<std::size_t> rep(n);  // input index -> unique index
  for (std::size_t i = 0; i < n; ++i) {
    auto it = std::find(unique_alpha.begin(), unique_alpha.end(), alphabets[i]);
    if (it == unique_alpha.end()) {
      rep[i] = unique_alpha.size();
      unique_alpha.push_back(alphabets[i]);
    } else {
      rep[i] = static_cast<std::size_t>(it - unique_alpha.begin());
    }
  }
  const std::size_t u = unique_alpha.size();
  // overlap equivalence classes (union-find)
  std::vector<std::size_t> parent(u);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < u; ++i)
    for (std::size_t j = i + 1; j < u; ++j) {
      bool overlap = false;
      for (const Event& a : unique_alpha[i])
        if (unique_alpha[j].count(a)) {
          overlap = true;
          break;
        }
      if (overlap) parent[find(i)] = find(j);
    }
  std::map<std::size_t, std::vector<std::size_t>> class_members;
  for (std::size_t i = 0; i < u; ++i) class_members[find(i)].push_back(i);
  std::vector<std::vector<std::size_t>> classes;  // ordered by least member
  {
    std::vector<std::pair<std::size_t, std::vector<std::size_t>>> tmp;
    for (auto& [root, members] : class_members) {
      std::sort(members.begin(), members.end());
      tmp.emplace_back(members.front(), members);
    }
    std::sort(tmp.begin(), tmp.end());
    for (auto& [least, members] : tmp) classes.push_back(members);
  }
  // class unions C_k (pairwise disjoint)
  std::vector<Alphabet> class_union;
  for (const auto& members : classes) {
    Alphabet c;
    for (std::size_t i : members)
      c.insert(unique_alpha[i].begin(), unique_alpha[i].end());
    class_union.push_back(std::move(c));
  }
  ExtensionPlan plan;
  // global extension over the class unions (also covers any events of K
  // that appear in no input alphabet)
  plan.sigma_all = find_extension(k, class_union, minimize);
  // step-2 identity: K = ||_k P_{C_k cup Sigma_all}(K)
  {
    std::vector<Alphabet> check;
    for (const Alphabet& c : class_union) {
      Alphabet b = c;
      b.insert(plan.sigma_all.begin(), plan.sigma_all.end());
      check.push_back(std::move(b));
    }
    SeparabilityResult sep = is_separable(k, check);
    if (!sep.separable)
      throw domain_error("rcd: step-2 decomposition identity failed");
  }
  // per-class refinement
  std::vector<Alphabet> sigma_unique(u);
  for (std::size_t ci = 0; ci < classes.size(); ++ci) {
    const auto& members = classes[ci];
    Alphabet proj_alpha = class_union[ci];
    proj_alpha.insert(plan.sigma_all.begin(), plan.sigma_all.end());
    std::vector<Alphabet> local;  // D_k, duplicates eliminated
    for (std::size_t i : members) {
      Alphabet b = unique_alpha[i];
      b.insert(plan.sigma_all.begin(), plan.sigma_all.end());
      if (std::find(local.begin(), local.end(), b) == local.end())
        local.push_back(std::move(b));
    }
    Alphabet sigma_k;
    if (local.size() <= 1) {
      sigma_k = plan.sigma_all;
    } else {
      Generator local_k = project(k, proj_alpha);
      sigma_k = find_extension(local_k, local, minimize);
      sigma_k.insert(plan.sigma_all.begin(), plan.sigma_all.end());
    }
    for (std::size_t i : members) sigma_unique[i] = sigma_k;
  }
  // re-expand to the original index set
  plan.sigma.resize(n);
  plan.extended.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    plan.sigma[i] = sigma_unique[rep[i]];
    Alphabet b = alphabets[i];
    b.insert(plan.sigma[i].begin(), plan.sigma[i].end());
    plan.extended[i] = std::move(b);
  }
  for (const auto& members : classes) {
    std::vector<std::size_t> original;
    for (std::size_t i = 0; i < n; ++i)
      if (std::find(members.begin(), members.end(), rep[i]) != members.end())
        original.push_back(i);
    plan.classes.push_back(std::move(original));
  }
  // correctness post-condition: K separable w.r.t. (A_i cup Sigma_i)
  SeparabilityResult post = is_separable(k, plan.extended);
  if (!post.separable)
    throw domain_error("rcd: output failed the separability post-condition");
  return plan;
}

}  // namespace dsc

#endif  // DSC_DECOMPOSITION_HPP
