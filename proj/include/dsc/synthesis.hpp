// End-to-end decentralized pipeline: problem normalization against an
// extension plan, fully decentralized supervisor computation, certificate
// checking, optimality certification, and conflict resolution through a
// coordinator.
#ifndef DSC_SYNTHESIS_HPP
#define DSC_SYNTHESIS_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dsc/control.hpp"
#include "dsc/decomposition.hpp"
#include "dsc/generator.hpp"
#include "dsc/observation.hpp"

namespace dsc {

// One supervisor's local alphabets. The extension and its
// observable/unobservable split are filled in by normalize_problem.
struct AgentProfile {
  Alphabet observable;    // A_{o,i}
  Alphabet controllable;  // A_{c,i}
  Alphabet sigma;         // Sigma_i
  Alphabet sigma_o;       // Sigma_i cap A_o
  Alphabet sigma_uo;      // Sigma_i \ Sigma_{o,i}
  Alphabet full;          // B_i, covering any assigned unobservable events
  // effective observation after communication: A_{o,i} cup Sigma_{o,i},
  // plus Sigma_{uo,i} when communicated observability is on
  Alphabet effective_observable;
  // effective control after status adaptation
  Alphabet effective_controllable;
};

struct DecentralizedProblem {
  Generator plant;  // generated language is the plant language L
  Generator spec;   // marked language is the specification K
  std::vector<AgentProfile> agents;
  bool communicate_observability = true;
  bool normalized = false;

  Alphabet global_controllable() const {
    Alphabet c;
    for (const AgentProfile& a : agents)
      c.insert(a.controllable.begin(), a.controllable.end());
    return c;
  }
  Alphabet global_observable() const {
    Alphabet o;
    for (const AgentProfile& a : agents)
      o.insert(a.observable.begin(), a.observable.end());
    return o;
  }
  Alphabet global_uncontrollable() const {
    Alphabet uc = plant.alphabet_set();
    for (const Event& a : global_controllable()) uc.erase(a);
    return uc;
  }
  Alphabet global_unobservable() const {
    Alphabet uo = plant.alphabet_set();
    for (const Event& a : global_observable()) uo.erase(a);
    return uo;
  }
};

enum class Verdict { pass, fail, unverified };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    default: return "unverified";
  }
}

struct Certificate {
  Verdict verdict = Verdict::unverified;
  std::string witness;  // empty when passing
};

enum class LocalMode { supcon, supcn, infimal };

inline const char* mode_name(LocalMode m) {
  switch (m) {
    case LocalMode::supcon: return "supcon";
    case LocalMode::supcn: return "supcn";
    default: return "infimal";
  }
}

struct SynthesisResult {
  std::vector<Generator> locals;          // R_i over B_i
  std::vector<Generator> local_plants;    // P_{i+Sigma_i}(L)
  Generator composed;                     // trim(|| R_i)
  std::vector<LocalMode> modes;
  std::size_t budget = 1000000;
  std::map<std::string, Certificate> certificates;
};

// Applies an extension plan to the problem: fills the Sigma splits,
// promotes communicated events to observed when requested, adapts the
// controllable status so observed controllable events are controlled,
// and covers the unobservable events by the local alphabets.
inline DecentralizedProblem normalize_problem(DecentralizedProblem p,
                                              const ExtensionPlan& plan,
                                              bool communicate_observability = true) {
  if (plan.sigma.size() != p.agents.size())
    throw domain_error("normalize_problem: plan size mismatch");
  Word w;
  if (!language_subset(prefix_closure(p.spec), p.plant, false, &w))
    throw PreconditionViolation("specification not included in plant", w);
  p.communicate_observability = communicate_observability;
  Alphabet a_o = p.global_observable();
  Alphabet a_c = p.global_controllable();
  Alphabet a_uo = p.global_unobservable();
  for (std::size_t i = 0; i < p.agents.size(); ++i) {
    AgentProfile& ag = p.agents[i];
    ag.sigma = plan.sigma[i];
    ag.sigma_o.clear();
    ag.sigma_uo.clear();
    for (const Event& e : ag.sigma)
      (a_o.count(e) ? ag.sigma_o : ag.sigma_uo).insert(e);
    ag.full = ag.observable;
    ag.full.insert(ag.sigma.begin(), ag.sigma.end());
    ag.effective_observable = ag.observable;
    ag.effective_observable.insert(ag.sigma_o.begin(), ag.sigma_o.end());
    if (communicate_observability)
      ag.effective_observable.insert(ag.sigma_uo.begin(), ag.sigma_uo.end());
    // status adaptation: observed controllable events become controlled
    ag.effective_controllable = ag.controllable;
    for (const Event& e : ag.effective_observable)
      if (a_c.count(e)) ag.effective_controllable.insert(e);
  }
  // cover A_uo: events in no Sigma_i and no A_{o,i} go to every agent
  for (const Event& e : a_uo) {
    bool housed = false;
    for (const AgentProfile& ag : p.agents) housed = housed || ag.full.count(e);
    if (!housed)
      for (AgentProfile& ag : p.agents) ag.full.insert(e);
  }
  p.normalized = true;
  return p;
}

namespace detail {

inline std::vector<CoAgent> co_agents(const DecentralizedProblem& p) {
  std::vector<CoAgent> agents;
  for (const AgentProfile& ag : p.agents)
    agents.push_back({ag.effective_observable, ag.effective_controllable});
  return agents;
}

}  // namespace detail

// Computes the local supervisors over the extended alphabets in the
// requested per-agent modes, composes them, and fills the certificates
// by running the definitional checkers on the results.
inline SynthesisResult synthesize(const DecentralizedProblem& p,
                                  const std::vector<LocalMode>& modes,
                                  std::size_t budget = 1000000) {
  if (!p.normalized)
    throw domain_error("synthesize: problem must be normalized first");
  if (modes.size() != p.agents.size())
    throw domain_error("synthesize: one mode per agent required");
  SynthesisResult res;
  res.modes = modes;
  res.budget = budget;
  Alphabet a_uc = p.global_uncontrollable();
  // separability of the specification w.r.t. (B_i) is what makes the
  // composition land inside K for sublanguage modes; verify, don't assume
  std::vector<Alphabet> bs;
  for (const AgentProfile& ag : p.agents) bs.push_back(ag.full);
  SeparabilityResult sep = is_separable(p.spec, bs);
  if (!sep.separable)
    throw PreconditionViolation("specification not separable w.r.t. plan",
                                *sep.witness);
  Generator plant_closed = prefix_closure(p.plant);
  for (std::size_t i = 0; i < p.agents.size(); ++i) {
    const AgentProfile& ag = p.agents[i];
    Generator k_i = project(p.spec, ag.full);
    Generator l_i = project(plant_closed, ag.full);
    ControlContext ctx;
    ctx.plant = l_i;
    for (const Event& e : ag.full) {
      if (a_uc.count(e)) ctx.uncontrollable.insert(e);
      if (ag.effective_observable.count(e)) ctx.observable.insert(e);
    }
    Generator r_i;
    switch (modes[i]) {
      case LocalMode::supcon:
        r_i = supcon(k_i, ctx);
        break;
      case LocalMode::supcn:
        r_i = supcn(k_i, ctx);
        break;
      case LocalMode::infimal:
        r_i = lift_infimal(k_i, inf_prefix_closed_controllable(k_i, ctx));
        break;
    }
    res.locals.push_back(std::move(r_i));
    res.local_plants.push_back(std::move(l_i));
  }
  res.composed = trim(sync_product(res.locals));

  // certificates
  auto& certs = res.certificates;
  {
    Word w;
    bool ok = res.composed.is_empty_language() ||
              language_subset(res.composed, p.spec, true, &w);
    certs["subset-of-spec"] = {ok ? Verdict::pass : Verdict::fail,
                               ok ? "" : word_to_string(w)};
  }
  {
    ControlContext ctx{plant_closed, a_uc, p.global_observable()};
    ControllabilityResult c = is_controllable(res.composed, ctx);
    certs["controllable"] = {
        c.controllable ? Verdict::pass : Verdict::fail,
        c.controllable ? ""
                       : "s=" + word_to_string(*c.s) + " a=" + *c.event};
  }
  try {
    CoobservabilityResult c = is_coobservable(
        res.composed, plant_closed, detail::co_agents(p), a_uc, budget);
    std::string w;
    if (!c.coobservable) {
      w = "s=" + word_to_string(c.violation->s) + " a=" + c.violation->event;
      for (const auto& [ai, word] : c.violation->confusions)
        w += " agent" + std::to_string(ai + 1) + "=" + word_to_string(word);
    }
    certs["coobservable"] = {c.coobservable ? Verdict::pass : Verdict::fail, w};
  } catch (const budget_error&) {
    certs["coobservable"] = {Verdict::unverified, "state budget exceeded"};
  }
  {
    NonconflictResult nc = is_nonconflicting(res.locals);
    certs["nonconflicting"] = {
        nc.nonconflicting ? Verdict::pass : Verdict::fail,
        nc.nonconflicting ? "" : word_to_string(*nc.blocking_word)};
  }
  certs["optimal"] = {Verdict::unverified, "not checked"};
  return res;
}

struct ConditionReport {
  struct Line {
    std::string name;
    Verdict verdict;
    std::string witness;
  };
  std::vector<Line> lines;
  bool all_pass() const {
    for (const Line& l : lines)
      if (l.verdict != Verdict::pass) return false;
    return true;
  }
};

// Checks, per agent, the alphabet condition B_{o,i} cap B_c <= B_{c,i},
// then normality of R_i (or observability plus globally observable
// controllable events), plus nonconflictingness of the locals. A full
// pass entails coobservability of the composition.
inline ConditionReport verify_sufficient_conditions(
    const DecentralizedProblem& p, const SynthesisResult& result) {
  ConditionReport rep;
  Alphabet a_c = p.global_controllable();
  Alphabet a_uc = p.global_uncontrollable();
  Alphabet eff_o;
  for (const AgentProfile& ag : p.agents)
    eff_o.insert(ag.effective_observable.begin(),
                 ag.effective_observable.end());
  bool all_controllable_observable = true;
  for (const Event& e : a_c)
    if (!eff_o.count(e)) all_controllable_observable = false;
  for (std::size_t i = 0; i < p.agents.size(); ++i) {
    const AgentProfile& ag = p.agents[i];
    std::string tag = "agent" + std::to_string(i + 1);
    // (a) alphabet condition
    std::optional<Event> bad;
    for (const Event& e : ag.effective_observable)
      if (a_c.count(e) && !ag.effective_controllable.count(e)) bad = e;
    rep.lines.push_back({tag + "-alphabet-condition",
                         bad ? Verdict::fail : Verdict::pass,
                         bad ? *bad : ""});
    // (b) normality of R_i w.r.t. the local plant, or (c) observability
    ControlContext ctx;
    ctx.plant = result.local_plants[i];
    for (const Event& e : ag.full) {
      if (a_uc.count(e)) ctx.uncontrollable.insert(e);
      if (ag.effective_observable.count(e)) ctx.observable.insert(e);
    }
    NormalityResult nm = is_normal(result.locals[i], ctx);
    if (nm.normal) {
      rep.lines.push_back({tag + "-normal", Verdict::pass, ""});
    } else if (all_controllable_observable) {
      ObservabilityResult ob = is_observable(result.locals[i], ctx);
      rep.lines.push_back(
          {tag + "-observable", ob.observable ? Verdict::pass : Verdict::fail,
           ob.observable ? ""
                         : "s=" + word_to_string(*ob.s) + " s'=" +
                               word_to_string(*ob.s_alt) + " a=" + *ob.event});
    } else {
      rep.lines.push_back(
          {tag + "-normal", Verdict::fail,
           "not normal: " + word_to_string(*nm.witness) +
               " (and some controllable event is unobservable)"});
    }
  }
  NonconflictResult nc = is_nonconflicting(result.locals);
  rep.lines.push_back({"nonconflicting",
                       nc.nonconflicting ? Verdict::pass : Verdict::fail,
                       nc.nonconflicting ? ""
                                         : word_to_string(*nc.blocking_word)});
  return rep;
}

enum class OptimalityMethod { mutual, observer_lcc };

struct OptimalityResult {
  enum class Status { pass, fail, inapplicable } status = Status::inapplicable;
  std::string detail;
  Certificate centralized_comparison;  // composed == supcon(K, L, A_uc)
};

// Certifies that the decentralized composition equals the centralized
// supremal controllable sublanguage, via mutual controllability of the
// local plants or via observer + LCC of the extended projections. A pass
// is always confirmed against the directly computed centralized supcon.
inline OptimalityResult check_optimality(const DecentralizedProblem& p,
                                         const SynthesisResult& result,
                                         OptimalityMethod method) {
  OptimalityResult res;
  Alphabet a_uc = p.global_uncontrollable();
  Generator plant_closed = prefix_closure(p.plant);
  for (LocalMode m : result.modes)
    if (m != LocalMode::supcon) {
      res.detail = "optimality certificates require all-supcon mode";
      return res;
    }
  if (method == OptimalityMethod::mutual) {
    if (!is_prefix_closed(p.spec)) {
      res.detail = "mutual-controllability route needs a prefix-closed specification";
      return res;
    }
    std::vector<Alphabet> bs;
    for (const AgentProfile& ag : p.agents) bs.push_back(ag.full);
    SeparabilityResult lsep = is_separable(plant_closed, bs);
    if (!lsep.separable) {
      res.detail = "plant not separable w.r.t. the extended alphabets (witness " +
                   word_to_string(*lsep.witness) + ")";
      return res;
    }
    MutualControllabilityResult mc =
        is_mutually_controllable(result.local_plants, a_uc);
    if (!mc.mutually_controllable) {
      res.status = OptimalityResult::Status::fail;
      res.detail = "local plants not mutually controllable: agent " +
                   std::to_string(mc.agent + 1) + ", s=" +
                   word_to_string(*mc.s) + " a=" + *mc.event;
      return res;
    }
  } else {
    for (std::size_t i = 0; i < p.agents.size(); ++i) {
      const AgentProfile& ag = p.agents[i];
      if (ag.effective_observable != ag.full) {
        res.detail = "observer-lcc route needs full observation on B_i";
        return res;
      }
      ObserverResult ob = is_observer(plant_closed, ag.full);
      if (!ob.is_observer) {
        res.status = OptimalityResult::Status::fail;
        res.detail = "P_{B_" + std::to_string(i + 1) +
                     "} is not an L-observer (s=" + word_to_string(*ob.s) +
                     " t=" + word_to_string(*ob.t) + ")";
        return res;
      }
      LccResult lcc = is_lcc(plant_closed, ag.full, a_uc);
      if (!lcc.is_lcc) {
        res.status = OptimalityResult::Status::fail;
        res.detail = "P_{B_" + std::to_string(i + 1) + "} is not LCC (s=" +
                     word_to_string(*lcc.s) + " a=" + *lcc.event + ")";
        return res;
      }
    }
    NonconflictResult nc = is_nonconflicting(result.locals);
    if (!nc.nonconflicting) {
      res.status = OptimalityResult::Status::fail;
      res.detail = "local supervisors conflict: " +
                   word_to_string(*nc.blocking_word);
      return res;
    }
  }
  // premises hold: confirm against the centralized supremal directly
  ControlContext ctx{plant_closed, a_uc, p.global_observable()};
  Generator centralized = supcon(p.spec, ctx);
  bool equal;
  if (centralized.is_empty_language() || result.composed.is_empty_language())
    equal = centralized.is_empty_language() &&
            result.composed.is_empty_language();
  else
    equal = language_equal(result.composed, centralized, true);
  res.status =
      equal ? OptimalityResult::Status::pass : OptimalityResult::Status::fail;
  res.centralized_comparison = {equal ? Verdict::pass : Verdict::fail,
                                equal ? "" : "composition differs from centralized supcon"};
  if (!equal) res.detail = "composition differs from the centralized supremal";
  return res;
}

struct ConflictResolution {
  SynthesisResult result;        // coordinated locals R_i || L_C
  Generator coordinator;         // L_C over Sigma'
  Alphabet coordination_alphabet;  // Sigma'
  bool coordinator_is_centralized = false;  // Sigma' grew to the full alphabet
};

// Restores nonconflictingness with a coordinator over a shared-event
// alphabet Sigma', grown until the projection is an R_i-observer for
// every i. With `optimal`, the coordinator is the supremal sublanguage of
// || P(R_i) controllable w.r.t. || closure(P(R_i)); the observer + LCC
// premises are checked and the result compared against the centralized
// supremal.
inline ConflictResolution resolve_conflicts(const DecentralizedProblem& p,
                                            const SynthesisResult& input,
                                            Alphabet sigma_prime = {},
                                            bool optimal = false,
                                            std::size_t budget = 1000000) {
  ConflictResolution out;
  Alphabet a_uc = p.global_uncontrollable();
  Alphabet a_c = p.global_controllable();
  Generator plant_closed = prefix_closure(p.plant);
  // seed: user events plus all pairwise-shared events of the R_i alphabets
  std::vector<Alphabet> bs;
  for (const Generator& r : input.locals) bs.push_back(r.alphabet_set());
  Alphabet shared = shared_events(bs);
  sigma_prime.insert(shared.begin(), shared.end());
  // grow until P_{Sigma'} is an R_i-observer for every i
  bool grew = true;
  while (grew) {
    grew = false;
    for (std::size_t i = 0; i < input.locals.size(); ++i) {
      Alphabet local;
      for (const Event& e : sigma_prime)
        if (input.locals[i].event_index(e) >= 0) local.insert(e);
      Alphabet extended = extend_for_observer(input.locals[i], local);
      for (const Event& e : extended)
        if (sigma_prime.insert(e).second) grew = true;
    }
  }
  out.coordination_alphabet = sigma_prime;
  out.coordinator_is_centralized =
      sigma_prime == p.plant.alphabet_set();
  // coordinator candidates: || P_{Sigma'}(R_i)
  std::vector<Generator> projected;
  for (const Generator& r : input.locals) {
    Alphabet local;
    for (const Event& e : sigma_prime)
      if (r.event_index(e) >= 0) local.insert(e);
    projected.push_back(project(r, local));
  }
  Generator candidates = trim(sync_product(projected));
  Alphabet sp_uc, sp_o;
  Alphabet eff_sigma = candidates.alphabet_set();
  for (const Event& e : eff_sigma) {
    if (a_uc.count(e)) sp_uc.insert(e);
  }
  Generator coordinator;
  if (optimal) {
    // supremal sublanguage of || P(R_i) controllable w.r.t. the
    // composition of the projected closures
    std::vector<Generator> closures;
    for (const Generator& g : projected) closures.push_back(prefix_closure(g));
    ControlContext cctx;
    cctx.plant = prefix_closure(trim(sync_product(closures)));
    cctx.uncontrollable = sp_uc;
    cctx.observable = eff_sigma;
    coordinator = supcon(candidates, cctx);
  } else {
    // controllable and normal (observable) w.r.t. P_{Sigma'}(L)
    Generator lp = project(plant_closed, eff_sigma);
    Generator inside = trim(sync_product({candidates, lp}));
    ControlContext cctx;
    cctx.plant = lp;
    cctx.uncontrollable = sp_uc;
    for (const Event& e : eff_sigma)
      if (!p.global_unobservable().count(e) || p.communicate_observability)
        cctx.observable.insert(e);
    coordinator = supcn(inside, cctx);
  }
  out.coordinator = coordinator;

  SynthesisResult res;
  res.modes = input.modes;
  res.budget = budget;
  for (const Generator& r : input.locals) {
    if (coordinator.is_empty_language())
      res.locals.push_back(Generator::empty(r.alphabet()));
    else
      res.locals.push_back(trim(sync_product({r, coordinator})));
  }
  res.local_plants = input.local_plants;
  bool any_empty = false;
  for (const Generator& r : res.locals)
    any_empty = any_empty || r.is_empty_language();
  res.composed = any_empty ? Generator::empty(p.plant.alphabet())
                           : trim(sync_product(res.locals));

  // re-verify everything on the coordinated system
  auto& certs = res.certificates;
  {
    NonconflictResult nc = is_nonconflicting(res.locals);
    certs["nonconflicting"] = {
        nc.nonconflicting ? Verdict::pass : Verdict::fail,
        nc.nonconflicting ? "" : word_to_string(*nc.blocking_word)};
  }
  {
    Word w;
    bool ok = res.composed.is_empty_language() ||
              language_subset(res.composed, p.spec, true, &w);
    certs["subset-of-spec"] = {ok ? Verdict::pass : Verdict::fail,
                               ok ? "" : word_to_string(w)};
  }
  {
    ControlContext ctx{plant_closed, a_uc, p.global_observable()};
    if (res.composed.is_empty_language()) {
      certs["controllable"] = {Verdict::pass, ""};
    } else {
      ControllabilityResult c = is_controllable(res.composed, ctx);
      certs["controllable"] = {
          c.controllable ? Verdict::pass : Verdict::fail,
          c.controllable ? "" : "s=" + word_to_string(*c.s) + " a=" + *c.event};
    }
  }
  try {
    // coobservability w.r.t. the observations extended by Sigma'
    std::vector<CoAgent> agents;
    for (const AgentProfile& ag : p.agents) {
      CoAgent ca{ag.effective_observable, ag.effective_controllable};
      for (const Event& e : sigma_prime) {
        bool observable_event =
            !p.global_unobservable().count(e) || p.communicate_observability;
        if (observable_event) {
          ca.observable.insert(e);
          if (a_c.count(e)) ca.controllable.insert(e);
        }
      }
      agents.push_back(std::move(ca));
    }
    if (res.composed.is_empty_language()) {
      certs["coobservable"] = {Verdict::pass, ""};
    } else {
      CoobservabilityResult c = is_coobservable(res.composed, plant_closed,
                                                agents, a_uc, budget);
      std::string w;
      if (!c.coobservable)
        w = "s=" + word_to_string(c.violation->s) + " a=" + c.violation->event;
      certs["coobservable"] = {c.coobservable ? Verdict::pass : Verdict::fail,
                               w};
    }
  } catch (const budget_error&) {
    certs["coobservable"] = {Verdict::unverified, "state budget exceeded"};
  }
  if (optimal) {
    ControlContext ctx{plant_closed, a_uc, p.global_observable()};
    Generator centralized = supcon(p.spec, ctx);
    bool equal;
    if (centralized.is_empty_language() || res.composed.is_empty_language())
      equal = centralized.is_empty_language() &&
              res.composed.is_empty_language();
    else
      equal = language_equal(res.composed, centralized, true);
    certs["optimal"] = {equal ? Verdict::pass : Verdict::fail,
                        equal ? "" : "differs from centralized supcon"};
  } else {
    certs["optimal"] = {Verdict::unverified, "not checked"};
  }
  out.result = std::move(res);
  return out;
}

}  // namespace dsc

#endif  // DSC_SYNTHESIS_HPP
