#include <catch2/catch_amalgamated.hpp>

#include <dsc/io.hpp>

#include <sstream>

#include "helpers.hpp"

using namespace dsc;
using helpers::alphabet;
using helpers::closed;

namespace {

const char* kSpecText =
    "# specification of the two-agent example\n"
    "alphabet: a b c d\n"
    "states: q0 q1 q2 q3 q4 q5 q6 q7\n"
    "initial: q0\n"
    "marked: q0 q1 q2 q3 q4 q5 q6 q7\n"
    "trans:\n"
    "q0 a q1\n"
    "q0 b q2\n"
    "q1 a q3   # aa\n"
    "q1 b q4\n"
    "q2 a q5   # ba\n"
    "q2 b q6\n"
    "q4 c q7   # abc\n"
    "q6 d q7   # bbd\n";

Generator parse_text(const std::string& text, const std::string& src) {
  std::istringstream in(text);
  return parse_generator(in, src);
}

}  // namespace

TEST_CASE("parsing the two-agent specification file") {
  Generator g = parse_text(kSpecText, "spec.gen");
  CHECK(g.num_states() == 8);
  CHECK(language_equal(g, helpers::two_agent_spec(), true));
  CHECK(g.alphabet() == helpers::events("abcd"));
}

TEST_CASE("parse errors name the source and line") {
  auto message_of = [](const std::string& text) {
    try {
      parse_text(text, "bad.gen");
      return std::string("no error");
    } catch (const format_error& e) {
      return std::string(e.what());
    }
  };

  CHECK(message_of("alphabet: a\nstates: q\ninitial: q\nmarked: q\n"
                   "trans:\nq a q\nq a q\n") ==
        "bad.gen:7: duplicate transition from 'q' on 'a'");
  CHECK(message_of("alphabet: a\nalphabet: b\n") ==
        "bad.gen:2: duplicate alphabet section");
  CHECK(message_of("alphabet: a\nstates: q\ninitial: q\nmarked: q\n"
                   "trans:\nq a\n") ==
        "bad.gen:6: transition needs exactly 3 tokens (source event target)");
  CHECK(message_of("alphabet: a\nstates: q\ninitial: q p\nmarked: q\n") ==
        "bad.gen:3: initial section needs at most one state");
  CHECK(message_of("junk: a\n") == "bad.gen:1: unknown section 'junk:'");
  CHECK(message_of("alphabet: a\nstates: q\ninitial: q\n") ==
        "bad.gen:0: missing marked section");

  // dangling references are caught while building
  CHECK(message_of("alphabet: a\nstates: q\ninitial: r\nmarked: q\n")
            .find("bad.gen: ") == 0);
}

TEST_CASE("emitting and re-parsing preserves language and bytes") {
  Generator g = helpers::two_agent_plant();
  std::string text = emit_generator(g);
  Generator back = parse_text(text, "round.gen");
  CHECK(language_equal(g, back, true));
  // byte stability: emitting the re-parsed generator reproduces the text
  CHECK(emit_generator(back) == text);

  // the empty language round-trips too
  Generator none = Generator::empty(helpers::events("ab"));
  Generator none_back = parse_text(emit_generator(none), "empty.gen");
  CHECK(none_back.is_empty_language());
}

TEST_CASE("parsing an agents file") {
  std::istringstream in(
      "agents: 2\n"
      "agent 1 observable: a c\n"
      "agent 1 controllable: a c\n"
      "agent 2 observable: b d   # second agent\n"
      "agent 2 controllable: b d\n");
  std::vector<AgentProfile> agents = parse_agents(in, "ex.agents");
  REQUIRE(agents.size() == 2);
  CHECK(agents[0].observable == alphabet("ac"));
  CHECK(agents[0].controllable == alphabet("ac"));
  CHECK(agents[1].observable == alphabet("bd"));
  CHECK(agents[1].controllable == alphabet("bd"));

  auto fails = [](const std::string& text) {
    std::istringstream bad(text);
    try {
      parse_agents(bad, "bad.agents");
      return std::string("no error");
    } catch (const format_error& e) {
      return std::string(e.what());
    }
  };
  CHECK(fails("agent 1 observable: a\n") ==
        "bad.agents:1: agents: line must come first");
  CHECK(fails("agents: 1\nagent 2 observable: a\n") ==
        "bad.agents:2: agent index out of range");
  CHECK(fails("agents: zero\n") ==
        "bad.agents:1: agents: count must be a number");
}

TEST_CASE("plan and certificate reports") {
  ExtensionPlan plan;
  plan.sigma_all = alphabet("f");
  plan.sigma = {alphabet("aef"), alphabet("cf")};
  plan.extended = {alphabet("abef"), alphabet("cdf")};
  plan.classes = {{0}, {1}};
  CHECK(format_plan(plan) ==
        "sigma_all = {f}\n"
        "agent 1: sigma = {a e f} alphabet = {a b e f}\n"
        "agent 2: sigma = {c f} alphabet = {c d f}\n"
        "classes = {1} {2}\n");

  std::map<std::string, Certificate> certs;
  certs["controllable"] = {Verdict::pass, ""};
  certs["coobservable"] = {Verdict::fail, "s=ba a=c"};
  certs["optimal"] = {Verdict::unverified, "not checked"};
  CHECK(format_certificates(certs) ==
        "controllable: pass\n"
        "coobservable: fail s=ba a=c\n"
        "optimal: unverified not checked\n");
}
