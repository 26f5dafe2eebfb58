#include <catch2/catch_amalgamated.hpp>

#include <dsc/synthesis.hpp>

#include "helpers.hpp"

using namespace dsc;
using helpers::alphabet;
using helpers::closed;
using helpers::marked;
using helpers::word;

namespace {

// the two-agent worked example: agents observing/controlling {a,c} and {b,d}
DecentralizedProblem two_agent_problem() {
  DecentralizedProblem p;
  p.plant = helpers::two_agent_plant();
  p.spec = helpers::two_agent_spec();
  AgentProfile a1, a2;
  a1.observable = a1.controllable = alphabet("ac");
  a2.observable = a2.controllable = alphabet("bd");
  p.agents = {a1, a2};
  return p;
}

// the communication example: agents over {a,u}/{a,d} and {b,u}/{b}
DecentralizedProblem comm_problem() {
  DecentralizedProblem p;
  p.plant = helpers::comm_plant();
  p.spec = helpers::comm_spec();
  AgentProfile a1, a2;
  a1.observable = alphabet("au");
  a1.controllable = alphabet("ad");
  a2.observable = alphabet("bu");
  a2.controllable = alphabet("b");
  p.agents = {a1, a2};
  return p;
}

DecentralizedProblem normalized(DecentralizedProblem p) {
  std::vector<Alphabet> obs;
  for (const AgentProfile& a : p.agents) obs.push_back(a.observable);
  ExtensionPlan plan = rcd(p.spec, obs, true);
  return normalize_problem(std::move(p), plan);
}

}  // namespace

TEST_CASE("problem normalization fills extensions and adapts status") {
  DecentralizedProblem p = normalized(two_agent_problem());
  REQUIRE(p.normalized);
  REQUIRE(p.agents.size() == 2);

  // the minimal extension communicates b to the first agent
  CHECK(p.agents[0].sigma == alphabet("b"));
  CHECK(p.agents[1].sigma == alphabet("b"));
  CHECK(p.agents[0].full == alphabet("abc"));
  CHECK(p.agents[1].full == alphabet("bd"));

  // b is globally observable, so it lands in the observed split and the
  // communicated copy becomes controlled by the first agent too
  CHECK(p.agents[0].sigma_o == alphabet("b"));
  CHECK(p.agents[0].sigma_uo.empty());
  CHECK(p.agents[0].effective_observable == alphabet("abc"));
  CHECK(p.agents[0].effective_controllable == alphabet("abc"));
  CHECK(p.agents[1].effective_observable == alphabet("bd"));
  CHECK(p.agents[1].effective_controllable == alphabet("bd"));
}

TEST_CASE("normalization with an empty plan changes no alphabets") {
  DecentralizedProblem p = two_agent_problem();
  ExtensionPlan plan;
  plan.sigma = {Alphabet{}, Alphabet{}};
  plan.extended = {alphabet("ac"), alphabet("bd")};
  DecentralizedProblem q = normalize_problem(p, plan);
  CHECK(q.agents[0].full == alphabet("ac"));
  CHECK(q.agents[1].full == alphabet("bd"));
  CHECK(q.agents[0].effective_observable == alphabet("ac"));
  CHECK(q.agents[0].effective_controllable == alphabet("ac"));
}

TEST_CASE("normalization rejects a specification outside the plant") {
  DecentralizedProblem p = two_agent_problem();
  p.spec = closed("abcd", {"dd"});
  ExtensionPlan plan;
  plan.sigma = {Alphabet{}, Alphabet{}};
  try {
    normalize_problem(p, plan);
    FAIL("expected a precondition violation");
  } catch (const PreconditionViolation& e) {
    CHECK(e.witness == word("d"));
  }
}

TEST_CASE("decentralized synthesis reproduces the two-agent example") {
  DecentralizedProblem p = normalized(two_agent_problem());
  SynthesisResult res = synthesize(p, {LocalMode::supcon, LocalMode::supcon});

  REQUIRE(res.locals.size() == 2);
  CHECK(language_equal(res.locals[0],
                       closed("abc", {"aa", "abc", "ba", "bb"}), true));
  CHECK(language_equal(res.locals[1], closed("bd", {"bbd"}), true));
  CHECK(language_equal(res.composed, p.spec, true));

  CHECK(res.certificates.at("subset-of-spec").verdict == Verdict::pass);
  CHECK(res.certificates.at("controllable").verdict == Verdict::pass);
  CHECK(res.certificates.at("coobservable").verdict == Verdict::pass);
  CHECK(res.certificates.at("nonconflicting").verdict == Verdict::pass);
}

TEST_CASE("communication example: all-supcon is strictly suboptimal") {
  DecentralizedProblem p = normalized(comm_problem());
  // the extension communicates d and u to both agents
  CHECK(p.agents[0].sigma == alphabet("du"));
  CHECK(p.agents[1].sigma == alphabet("du"));
  CHECK(p.agents[0].full == alphabet("adu"));
  CHECK(p.agents[1].full == alphabet("bdu"));

  SynthesisResult res = synthesize(p, {LocalMode::supcon, LocalMode::supcon});
  Generator expected = marked("abdu", {"", "a", "b", "d", "ab", "ba"});
  CHECK(language_equal(res.composed, expected, true));
  CHECK(res.certificates.at("subset-of-spec").verdict == Verdict::pass);
  CHECK(res.certificates.at("controllable").verdict == Verdict::pass);
}

TEST_CASE("communication example: an infimal local recovers the spec") {
  DecentralizedProblem p = normalized(comm_problem());
  SynthesisResult res = synthesize(p, {LocalMode::supcon, LocalMode::infimal});
  CHECK(language_equal(res.composed, p.spec, true));
  CHECK(res.certificates.at("subset-of-spec").verdict == Verdict::pass);
  CHECK(res.certificates.at("controllable").verdict == Verdict::pass);
}

TEST_CASE("tiny budget leaves the coobservability certificate unverified") {
  DecentralizedProblem p = normalized(two_agent_problem());
  SynthesisResult res =
      synthesize(p, {LocalMode::supcon, LocalMode::supcon}, 2);
  CHECK(res.certificates.at("coobservable").verdict == Verdict::unverified);
}

TEST_CASE("sufficient conditions hold on the two-agent example") {
  DecentralizedProblem p = normalized(two_agent_problem());
  SynthesisResult res = synthesize(p, {LocalMode::supcon, LocalMode::supcon});
  ConditionReport rep = verify_sufficient_conditions(p, res);
  for (const ConditionReport::Line& l : rep.lines) {
    INFO(l.name << " " << l.witness);
    CHECK(l.verdict == Verdict::pass);
  }
  CHECK(rep.all_pass());
}

TEST_CASE("conflicting locals are reported by the condition checks") {
  DecentralizedProblem p = normalized(two_agent_problem());
  SynthesisResult res = synthesize(p, {LocalMode::supcon, LocalMode::supcon});
  // replace the locals with a conflicting pair: they agree on the shared
  // event b only up to one occurrence versus two, so no composed word marks
  res.locals = {marked("abc", {"ab"}), marked("bd", {"bb"})};
  REQUIRE_FALSE(is_nonconflicting(res.locals).nonconflicting);
  ConditionReport rep = verify_sufficient_conditions(p, res);
  bool found = false;
  for (const ConditionReport::Line& l : rep.lines)
    if (l.name == "nonconflicting") {
      found = true;
      CHECK(l.verdict == Verdict::fail);
      CHECK_FALSE(l.witness.empty());
    }
  CHECK(found);
  CHECK_FALSE(rep.all_pass());
}

TEST_CASE("optimality via mutual controllability on the two-agent example") {
  DecentralizedProblem p = normalized(two_agent_problem());
  SynthesisResult res = synthesize(p, {LocalMode::supcon, LocalMode::supcon});

  OptimalityResult opt = check_optimality(p, res, OptimalityMethod::mutual);
  CHECK(opt.status == OptimalityResult::Status::pass);
  CHECK(opt.centralized_comparison.verdict == Verdict::pass);

  // confirmed against the directly computed centralized supremal
  ControlContext ctx;
  ctx.plant = prefix_closure(p.plant);
  ctx.observable = p.plant.alphabet_set();
  Generator central = supcon(p.spec, ctx);
  CHECK(language_equal(res.composed, central, true));
}

TEST_CASE("optimality certificates require all-supcon locals") {
  DecentralizedProblem p = normalized(comm_problem());
  SynthesisResult res = synthesize(p, {LocalMode::supcon, LocalMode::infimal});
  OptimalityResult opt = check_optimality(p, res, OptimalityMethod::mutual);
  CHECK(opt.status == OptimalityResult::Status::inapplicable);
  CHECK_FALSE(opt.detail.empty());
}

TEST_CASE("conflict resolution keeps a nonconflicting input intact") {
  DecentralizedProblem p = normalized(two_agent_problem());
  SynthesisResult res = synthesize(p, {LocalMode::supcon, LocalMode::supcon});
  ConflictResolution cr = resolve_conflicts(p, res);
  CHECK(language_equal(cr.result.composed, res.composed, true));
  CHECK(cr.result.certificates.at("nonconflicting").verdict == Verdict::pass);
}

TEST_CASE("a coordinator restores nonconflictingness") {
  DecentralizedProblem p;
  p.plant = closed("ab", {"ab", "a"});
  p.spec = closed("ab", {"ab", "a"});
  AgentProfile a1, a2;
  a1.observable = a1.controllable = alphabet("ab");
  a2.observable = a2.controllable = alphabet("ab");
  p.agents = {a1, a2};
  ExtensionPlan plan;
  plan.sigma = {Alphabet{}, Alphabet{}};
  p = normalize_problem(p, plan);

  SynthesisResult res = synthesize(p, {LocalMode::supcon, LocalMode::supcon});
  // inject a conflicting pair: one local insists on ab, the other stops at a
  res.locals = {marked("ab", {"ab"}), marked("ab", {"a"})};
  res.local_plants = {prefix_closure(p.plant), prefix_closure(p.plant)};
  REQUIRE_FALSE(is_nonconflicting(res.locals).nonconflicting);

  ConflictResolution cr = resolve_conflicts(p, res);
  CHECK(cr.result.certificates.at("nonconflicting").verdict == Verdict::pass);
  CHECK(cr.result.certificates.at("subset-of-spec").verdict == Verdict::pass);
  if (!cr.result.composed.is_empty_language())
    CHECK(is_nonconflicting(cr.result.locals).nonconflicting);
}

TEST_CASE("optimal conflict resolution matches the centralized supremal") {
  DecentralizedProblem p = normalized(two_agent_problem());
  SynthesisResult res = synthesize(p, {LocalMode::supcon, LocalMode::supcon});
  ConflictResolution cr = resolve_conflicts(p, res, {}, true);
  ControlContext ctx;
  ctx.plant = prefix_closure(p.plant);
  ctx.observable = p.plant.alphabet_set();
  Generator central = supcon(p.spec, ctx);
  CHECK(language_equal(cr.result.composed, central, true));
  CHECK(cr.result.certificates.at("optimal").verdict == Verdict::pass);
}
