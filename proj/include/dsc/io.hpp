// Text formats: generator files, agent-profile files, and the plan /
// certificate reports written by the synthesize command.
#ifndef DSC_IO_HPP
#define DSC_IO_HPP

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "dsc/generator.hpp"
#include "dsc/synthesis.hpp"

namespace dsc {

namespace detail {

inline std::vector<std::string> tokens(const std::string& line) {
  std::istringstream iss(line);
  std::vector<std::string> out;
  std::string t;
  while (iss >> t) out.push_back(t);
  return out;
}

inline std::string strip_comment(const std::string& line) {
  std::size_t pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

}  // namespace detail

// Parses the line-oriented generator format:
//   alphabet: a b c
//   states: q0 q1
//   initial: q0
//   marked: q0 q1
//   trans:
//   q0 a q1
// Sections may appear in any order except `trans`, which is last.
// `#` starts a comment. Reports syntax errors with line numbers.
inline Generator parse_generator(std::istream& in,
                                 const std::string& source = "<input>") {
  RawGenerator raw;
  bool saw_alphabet = false, saw_states = false, saw_initial = false,
       saw_marked = false, in_trans = false;
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw format_error(source + ":" + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::vector<std::string> tok = detail::tokens(detail::strip_comment(line));
    if (tok.empty()) continue;
    if (in_trans) {
      if (tok.size() != 3)
        fail("transition needs exactly 3 tokens (source event target)");
      for (const std::array<std::string, 3>& t : raw.transitions)
        if (t[0] == tok[0] && t[1] == tok[1])
          fail("duplicate transition from '" + tok[0] + "' on '" + tok[1] +
               "'");
      raw.transitions.push_back({tok[0], tok[1], tok[2]});
      continue;
    }
    const std::string& head = tok[0];
    std::vector<std::string> rest(tok.begin() + 1, tok.end());
    if (head == "alphabet:") {
      if (saw_alphabet) fail("duplicate alphabet section");
      saw_alphabet = true;
      raw.alphabet = rest;
    } else if (head == "states:") {
      if (saw_states) fail("duplicate states section");
      saw_states = true;
      raw.states = rest;
    } else if (head == "initial:") {
      if (saw_initial) fail("duplicate initial section");
      // an empty initial section denotes the empty language
      if (rest.size() > 1) fail("initial section needs at most one state");
      saw_initial = true;
      if (!rest.empty()) raw.initial = rest[0];
    } else if (head == "marked:") {
      if (saw_marked) fail("duplicate marked section");
      saw_marked = true;
      raw.marked = rest;
    } else if (head == "trans:") {
      if (!rest.empty()) fail("trans: takes no tokens on its line");
      in_trans = true;
    } else {
      fail("unknown section '" + head + "'");
    }
  }
  lineno = 0;
  if (!saw_alphabet) fail("missing alphabet section");
  if (!saw_states) fail("missing states section");
  if (!saw_initial) fail("missing initial section");
  if (!saw_marked) fail("missing marked section");
  if (raw.initial.empty())
    return Generator::empty(raw.alphabet);
  try {
    return build_and_trim(raw);
  } catch (const format_error& e) {
    throw format_error(source + ": " + e.what());
  }
}

inline Generator parse_generator_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw format_error("cannot open '" + path + "'");
  return parse_generator(in, path);
}

// Deterministic emitter: the output re-parses to an equal language and is
// byte-stable for equal generators.
inline void emit_generator(std::ostream& out, const Generator& g) {
  out << "alphabet:";
  for (const Event& a : g.alphabet()) out << ' ' << a;
  out << "\nstates:";
  for (int q = 0; q < g.num_states(); ++q) out << ' ' << g.state_name(q);
  out << "\ninitial:";
  if (!g.is_empty_language()) out << ' ' << g.state_name(g.initial());
  out << "\nmarked:";
  for (int q = 0; q < g.num_states(); ++q)
    if (g.is_marked(q)) out << ' ' << g.state_name(q);
  out << "\ntrans:\n";
  for (int q = 0; q < g.num_states(); ++q)
    for (int e = 0; e < g.num_events(); ++e) {
      int t = g.step(q, e);
      if (t >= 0)
        out << g.state_name(q) << ' ' << g.alphabet()[e] << ' '
            << g.state_name(t) << '\n';
    }
}

inline std::string emit_generator(const Generator& g) {
  std::ostringstream os;
  emit_generator(os, g);
  return os.str();
}

inline void write_generator_file(const std::string& path, const Generator& g) {
  std::ofstream out(path);
  if (!out) throw format_error("cannot write '" + path + "'");
  emit_generator(out, g);
}

// Agents file:
//   agents: 2
//   agent 1 observable: a c
//   agent 1 controllable: a c
//   agent 2 observable: b d
//   agent 2 controllable: b d
inline std::vector<AgentProfile> parse_agents(std::istream& in,
                                              const std::string& source =
                                                  "<input>") {
  std::vector<AgentProfile> agents;
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw format_error(source + ":" + std::to_string(lineno) + ": " + msg);
  };
  bool saw_count = false;
  while (std::getline(in, line)) {
    ++lineno;
    std::vector<std::string> tok = detail::tokens(detail::strip_comment(line));
    if (tok.empty()) continue;
    if (tok[0] == "agents:") {
      if (saw_count) fail("duplicate agents: line");
      if (tok.size() != 2) fail("agents: needs one count");
      saw_count = true;
      int n;
      try {
        n = std::stoi(tok[1]);
      } catch (...) {
        fail("agents: count must be a number");
        n = 0;
      }
      if (n <= 0) fail("agents: count must be positive");
      agents.resize(static_cast<std::size_t>(n));
    } else if (tok[0] == "agent") {
      if (!saw_count) fail("agents: line must come first");
      if (tok.size() < 3 || (tok[2] != "observable:" && tok[2] != "controllable:"))
        fail("expected 'agent N observable:|controllable: events...'");
      int idx;
      try {
        idx = std::stoi(tok[1]);
      } catch (...) {
        fail("agent index must be a number");
        idx = 0;
      }
      if (idx < 1 || static_cast<std::size_t>(idx) > agents.size())
        fail("agent index out of range");
      Alphabet& target = tok[2] == "observable:"
                             ? agents[static_cast<std::size_t>(idx - 1)].observable
                             : agents[static_cast<std::size_t>(idx - 1)].controllable;
      target.insert(tok.begin() + 3, tok.end());
    } else {
      fail("unknown line '" + tok[0] + "'");
    }
  }
  lineno = 0;
  if (!saw_count) fail("missing agents: line");
  return agents;
}

inline std::vector<AgentProfile> parse_agents_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw format_error("cannot open '" + path + "'");
  return parse_agents(in, path);
}

inline std::string format_alphabet(const Alphabet& a) {
  std::string s = "{";
  bool first = true;
  for (const Event& e : a) {
    if (!first) s += ' ';
    s += e;
    first = false;
  }
  return s + "}";
}

// Text report of an extension plan: sigma_all, per-agent sigma and final
// alphabet, and the class partition.
inline std::string format_plan(const ExtensionPlan& plan) {
  std::ostringstream os;
  os << "sigma_all = " << format_alphabet(plan.sigma_all) << '\n';
  for (std::size_t i = 0; i < plan.sigma.size(); ++i)
    os << "agent " << (i + 1) << ": sigma = " << format_alphabet(plan.sigma[i])
       << " alphabet = " << format_alphabet(plan.extended[i]) << '\n';
  os << "classes =";
  for (const auto& members : plan.classes) {
    os << " {";
    for (std::size_t j = 0; j < members.size(); ++j)
      os << (j ? " " : "") << (members[j] + 1);
    os << "}";
  }
  os << '\n';
  return os.str();
}

// plan.txt of a synthesis bundle: the extension plan plus the effective
// per-agent alphabets and the communication flag.
inline std::string format_plan(const DecentralizedProblem& p,
                               const ExtensionPlan& plan) {
  std::ostringstream os;
  os << format_plan(plan);
  for (std::size_t i = 0; i < p.agents.size(); ++i)
    os << "agent " << (i + 1)
       << ": effective alphabet = " << format_alphabet(p.agents[i].full)
       << '\n';
  os << "communicate_observability = "
     << (p.communicate_observability ? "on" : "off") << '\n';
  return os.str();
}

// certificates.txt: one `name: pass|fail|unverified [witness...]` line each.
inline std::string format_certificates(
    const std::map<std::string, Certificate>& certs) {
  std::ostringstream os;
  for (const auto& [name, cert] : certs) {
    os << name << ": " << verdict_name(cert.verdict);
    if (!cert.witness.empty()) os << ' ' << cert.witness;
    os << '\n';
  }
  return os.str();
}

}  // namespace dsc

#endif  // DSC_IO_HPP
