// Command-line front end for the decentralized supervisory-control
// library. Exit codes: 0 property holds / synthesis succeeded, 1 property
// fails (witness printed), 2 usage or format error, 3 budget exceeded.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dsc/control.hpp"
#include "dsc/decomposition.hpp"
#include "dsc/generator.hpp"
#include "dsc/hardness.hpp"
#include "dsc/io.hpp"
#include "dsc/observation.hpp"
#include "dsc/synthesis.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

dsc::Alphabet to_alphabet(const std::vector<std::string>& events) {
  return dsc::Alphabet(events.begin(), events.end());
}

std::vector<dsc::Alphabet> to_alphabets(
    const std::vector<std::vector<std::string>>& groups) {
  std::vector<dsc::Alphabet> out;
  for (const auto& g : groups) out.push_back(to_alphabet(g));
  return out;
}

dsc::Alphabet global_controllable(const std::vector<dsc::AgentProfile>& agents) {
  dsc::Alphabet c;
  for (const auto& a : agents) c.insert(a.controllable.begin(), a.controllable.end());
  return c;
}

// A_uc from an agents file: everything no agent controls.
dsc::Alphabet derive_uncontrollable(const dsc::Generator& plant,
                                    const std::vector<dsc::AgentProfile>& agents) {
  dsc::Alphabet uc = plant.alphabet_set();
  for (const dsc::Event& e : global_controllable(agents)) uc.erase(e);
  return uc;
}

struct PipelineOutput {
  dsc::DecentralizedProblem problem;
  dsc::ExtensionPlan plan;
  dsc::SynthesisResult result;
};

std::vector<dsc::LocalMode> parse_modes(const std::string& spec,
                                        std::size_t n_agents) {
  std::vector<dsc::LocalMode> modes;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "supcon")
      modes.push_back(dsc::LocalMode::supcon);
    else if (item == "supcn")
      modes.push_back(dsc::LocalMode::supcn);
    else if (item == "infimal")
      modes.push_back(dsc::LocalMode::infimal);
    else
      throw dsc::format_error("unknown mode '" + item + "'");
  }
  if (modes.size() == 1) modes.assign(n_agents, modes[0]);
  if (modes.size() != n_agents)
    throw dsc::format_error("need one mode or one per agent");
  return modes;
}

PipelineOutput run_pipeline(const std::string& plant_path,
                            const std::string& spec_path,
                            const std::string& agents_path,
                            const std::string& mode_spec, bool minimize,
                            bool communicate, std::size_t budget) {
  PipelineOutput out;
  out.problem.plant = dsc::parse_generator_file(plant_path);
  out.problem.spec = dsc::parse_generator_file(spec_path);
  out.problem.agents = dsc::parse_agents_file(agents_path);
  std::vector<dsc::Alphabet> observed;
  for (const auto& a : out.problem.agents) observed.push_back(a.observable);
  out.plan = dsc::rcd(out.problem.spec, observed, minimize);
  out.problem = dsc::normalize_problem(out.problem, out.plan, communicate);
  std::vector<dsc::LocalMode> modes =
      parse_modes(mode_spec, out.problem.agents.size());
  out.result = dsc::synthesize(out.problem, modes, budget);
  return out;
}

void write_bundle(const std::string& dir, const PipelineOutput& po) {
  std::filesystem::create_directories(dir);
  for (std::size_t i = 0; i < po.result.locals.size(); ++i)
    dsc::write_generator_file(
        dir + "/R_" + std::to_string(i + 1) + ".gen", po.result.locals[i]);
  dsc::write_generator_file(dir + "/composed.gen", po.result.composed);
  std::ofstream plan(dir + "/plan.txt");
  plan << dsc::format_plan(po.problem, po.plan);
  std::ofstream certs(dir + "/certificates.txt");
  certs << dsc::format_certificates(po.result.certificates);
}

int exit_code_from_certificates(
    const std::map<std::string, dsc::Certificate>& certs) {
  bool budget_hit = false;
  for (const auto& [name, c] : certs) {
    if (c.verdict == dsc::Verdict::fail) return kExitFail;
    if (c.verdict == dsc::Verdict::unverified &&
        c.witness.find("budget") != std::string::npos)
      budget_hit = true;
  }
  return budget_hit ? kExitBudget : kExitPass;
}

int verdict_line(bool holds, const std::string& witness) {
  if (holds) {
    std::cout << "holds\n";
    return kExitPass;
  }
  std::cout << "fails " << witness << "\n";
  return kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"decentralized supervisory-control toolkit"};
  app.require_subcommand(1);
  std::size_t budget = 1000000;
  app.add_option("--budget", budget,
                 "product-state budget for the exponential checks");

  // shared option storage
  std::string plant_path, spec_path, agents_path, gen_path, out_path, out_dir;
  std::vector<std::string> gen_paths;
  std::vector<std::string> unc_events, obs_events, target_events, sigma_events;
  std::vector<std::vector<std::string>> alphabet_groups;
  std::string mode_spec = "supcon";
  std::string method = "mutual";
  bool no_minimize = false, no_communicate = false, optimal = false;
  bool trim_product = false;

  auto* check = app.add_subcommand("check", "decision procedures");
  check->require_subcommand(1);

  auto add_plant_spec = [&](CLI::App* c) {
    c->add_option("--plant", plant_path, "plant generator file")->required();
    c->add_option("--spec", spec_path, "specification generator file")->required();
  };

  auto* c_ctrl = check->add_subcommand("controllability");
  add_plant_spec(c_ctrl);
  c_ctrl->add_option("--uncontrollable", unc_events, "uncontrollable events");

  auto* c_obs = check->add_subcommand("observability");
  add_plant_spec(c_obs);
  c_obs->add_option("--uncontrollable", unc_events, "uncontrollable events");
  c_obs->add_option("--observable", obs_events, "observable events")->required();

  auto* c_norm = check->add_subcommand("normality");
  add_plant_spec(c_norm);
  c_norm->add_option("--observable", obs_events, "observable events")->required();

  auto* c_coobs = check->add_subcommand("coobservability");
  add_plant_spec(c_coobs);
  c_coobs->add_option("--agents", agents_path, "agents file")->required();

  auto* c_sep = check->add_subcommand("separability");
  c_sep->add_option("--spec", spec_path, "specification generator file")->required();
  c_sep->add_option("--alphabet", alphabet_groups, "one local alphabet per use")
      ->required()
      ->take_all();

  auto* c_cd = check->add_subcommand("cd");
  c_cd->add_option("--spec", spec_path, "specification generator file")->required();
  c_cd->add_option("--alphabet", alphabet_groups, "one local alphabet per use")
      ->required()
      ->take_all();
  c_cd->add_option("--sigma", sigma_events, "extension events")->required();

  auto* c_observer = check->add_subcommand("observer");
  c_observer->add_option("--gen", gen_path, "generator file")->required();
  c_observer->add_option("--target", target_events, "projection alphabet")
      ->required();

  auto* c_lcc = check->add_subcommand("lcc");
  c_lcc->add_option("--gen", gen_path, "generator file")->required();
  c_lcc->add_option("--target", target_events, "projection alphabet")->required();
  c_lcc->add_option("--uncontrollable", unc_events, "uncontrollable events");

  auto* c_mc = check->add_subcommand("mutual-controllability");
  c_mc->add_option("--gen", gen_paths, "local plant generator files")->required();
  c_mc->add_option("--uncontrollable", unc_events, "uncontrollable events");

  auto* c_nc = check->add_subcommand("nonconflicting");
  c_nc->add_option("--gen", gen_paths, "generator files")->required();

  auto* p_proj = app.add_subcommand("project", "natural projection");
  p_proj->add_option("--gen", gen_path, "generator file")->required();
  p_proj->add_option("--target", target_events, "projection alphabet")->required();
  p_proj->add_option("--out", out_path, "output file (default stdout)");

  auto* p_prod = app.add_subcommand("product", "synchronous product");
  p_prod->add_option("--gen", gen_paths, "generator files")->required();
  p_prod->add_option("--out", out_path, "output file (default stdout)");
  p_prod->add_flag("--trim", trim_product, "trim the result");

  auto* p_supcon = app.add_subcommand(
      "supcon", "supremal controllable sublanguage");
  add_plant_spec(p_supcon);
  p_supcon->add_option("--uncontrollable", unc_events, "uncontrollable events");
  p_supcon->add_option("--out", out_path, "output file (default stdout)");

  auto* p_supcn = app.add_subcommand(
      "supcn", "supremal controllable and normal sublanguage");
  add_plant_spec(p_supcn);
  p_supcn->add_option("--uncontrollable", unc_events, "uncontrollable events");
  p_supcn->add_option("--observable", obs_events, "observable events")->required();
  p_supcn->add_option("--out", out_path, "output file (default stdout)");

  auto* p_rcd = app.add_subcommand(
      "rcd", "per-alphabet extensions for conditional decomposability");
  p_rcd->add_option("--spec", spec_path, "specification generator file")->required();
  p_rcd->add_option("--alphabet", alphabet_groups, "one local alphabet per use")
      ->required()
      ->take_all();
  p_rcd->add_flag("--no-minimize", no_minimize, "use the greedy extension search");

  auto* p_synth = app.add_subcommand("synthesize", "decentralized synthesis");
  add_plant_spec(p_synth);
  p_synth->add_option("--agents", agents_path, "agents file")->required();
  p_synth->add_option("--mode", mode_spec,
                      "supcon|supcn|infimal, single or comma list per agent");
  p_synth->add_option("--out", out_dir, "output directory")->required();
  p_synth->add_flag("--no-minimize", no_minimize, "greedy extension search");
  p_synth->add_flag("--no-communicate", no_communicate,
                    "do not promote communicated events to observed");

  auto* p_resolve = app.add_subcommand(
      "resolve-conflicts", "coordinate the local supervisors");
  add_plant_spec(p_resolve);
  p_resolve->add_option("--agents", agents_path, "agents file")->required();
  p_resolve->add_option("--mode", mode_spec,
                        "supcon|supcn|infimal, single or comma list per agent");
  p_resolve->add_option("--out", out_dir, "output directory")->required();
  p_resolve->add_option("--sigma", sigma_events, "seed coordination events");
  p_resolve->add_flag("--optimal", optimal, "optimal coordinator variant");
  p_resolve->add_flag("--no-minimize", no_minimize, "greedy extension search");
  p_resolve->add_flag("--no-communicate", no_communicate,
                      "do not promote communicated events to observed");

  auto* p_opt = app.add_subcommand("check-optimality",
                                   "certify equality with centralized supcon");
  add_plant_spec(p_opt);
  p_opt->add_option("--agents", agents_path, "agents file")->required();
  p_opt->add_option("--method", method, "mutual|observer-lcc");
  p_opt->add_flag("--no-minimize", no_minimize, "greedy extension search");

  auto* p_reduce = app.add_subcommand(
      "reduce-intersection",
      "DFA-intersection emptiness to separability instance");
  p_reduce->add_option("--gen", gen_paths, "input DFA files")->required();
  p_reduce->add_option("--out", out_path, "output H generator file")->required();
  std::string alphabets_out;
  p_reduce->add_option("--alphabets-out", alphabets_out,
                       "output file listing each E_i")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // usage errors share one exit code
  }

  try {
    if (c_ctrl->parsed()) {
      dsc::ControlContext ctx;
      ctx.plant = dsc::prefix_closure(dsc::parse_generator_file(plant_path));
      ctx.uncontrollable = to_alphabet(unc_events);
      dsc::Generator k = dsc::parse_generator_file(spec_path);
      auto r = dsc::is_controllable(k, ctx);
      return verdict_line(r.controllable,
                          r.controllable ? ""
                                         : "s=" + dsc::word_to_string(*r.s) +
                                               " a=" + *r.event);
    }
    if (c_obs->parsed()) {
      dsc::ControlContext ctx;
      ctx.plant = dsc::prefix_closure(dsc::parse_generator_file(plant_path));
      ctx.uncontrollable = to_alphabet(unc_events);
      ctx.observable = to_alphabet(obs_events);
      auto r = dsc::is_observable(dsc::parse_generator_file(spec_path), ctx);
      return verdict_line(
          r.observable,
          r.observable ? ""
                       : "s=" + dsc::word_to_string(*r.s) + " s'=" +
                             dsc::word_to_string(*r.s_alt) + " a=" + *r.event);
    }
    if (c_norm->parsed()) {
      dsc::ControlContext ctx;
      ctx.plant = dsc::prefix_closure(dsc::parse_generator_file(plant_path));
      ctx.observable = to_alphabet(obs_events);
      auto r = dsc::is_normal(dsc::parse_generator_file(spec_path), ctx);
      return verdict_line(r.normal,
                          r.normal ? "" : dsc::word_to_string(*r.witness));
    }
    if (c_coobs->parsed()) {
      dsc::Generator plant =
          dsc::prefix_closure(dsc::parse_generator_file(plant_path));
      dsc::Generator k = dsc::parse_generator_file(spec_path);
      std::vector<dsc::AgentProfile> agents = dsc::parse_agents_file(agents_path);
      std::vector<dsc::CoAgent> cas;
      for (const auto& a : agents) cas.push_back({a.observable, a.controllable});
      dsc::Alphabet uc = derive_uncontrollable(plant, agents);
      auto r = dsc::is_coobservable(k, plant, cas, uc, budget);
      std::string w;
      if (!r.coobservable)
        w = "s=" + dsc::word_to_string(r.violation->s) +
            " a=" + r.violation->event;
      return verdict_line(r.coobservable, w);
    }
    if (c_sep->parsed()) {
      auto r = dsc::is_separable(dsc::parse_generator_file(spec_path),
                                 to_alphabets(alphabet_groups));
      return verdict_line(r.separable,
                          r.separable ? "" : dsc::word_to_string(*r.witness));
    }
    if (c_cd->parsed()) {
      auto r = dsc::is_conditionally_decomposable(
          dsc::parse_generator_file(spec_path), to_alphabets(alphabet_groups),
          to_alphabet(sigma_events));
      std::string w;
      if (r.missing_shared_event) w = "missing " + *r.missing_shared_event;
      if (r.witness) w = dsc::word_to_string(*r.witness);
      return verdict_line(r.conditionally_decomposable, w);
    }
    if (c_observer->parsed()) {
      auto r = dsc::is_observer(dsc::parse_generator_file(gen_path),
                                to_alphabet(target_events));
      return verdict_line(r.is_observer,
                          r.is_observer
                              ? ""
                              : "s=" + dsc::word_to_string(*r.s) +
                                    " t=" + dsc::word_to_string(*r.t));
    }
    if (c_lcc->parsed()) {
      auto r = dsc::is_lcc(dsc::parse_generator_file(gen_path),
                           to_alphabet(target_events), to_alphabet(unc_events));
      return verdict_line(r.is_lcc,
                          r.is_lcc ? ""
                                   : "s=" + dsc::word_to_string(*r.s) +
                                         " a=" + *r.event);
    }
    if (c_mc->parsed()) {
      std::vector<dsc::Generator> gens;
      for (const auto& p : gen_paths)
        gens.push_back(dsc::prefix_closure(dsc::parse_generator_file(p)));
      auto r = dsc::is_mutually_controllable(gens, to_alphabet(unc_events));
      return verdict_line(
          r.mutually_controllable,
          r.mutually_controllable
              ? ""
              : "agent=" + std::to_string(r.agent + 1) + " s=" +
                    dsc::word_to_string(*r.s) + " a=" + *r.event);
    }
    if (c_nc->parsed()) {
      std::vector<dsc::Generator> gens;
      for (const auto& p : gen_paths)
        gens.push_back(dsc::parse_generator_file(p));
      auto r = dsc::is_nonconflicting(gens);
      return verdict_line(
          r.nonconflicting,
          r.nonconflicting ? "" : dsc::word_to_string(*r.blocking_word));
    }
    if (p_proj->parsed() || p_prod->parsed() || p_supcon->parsed() ||
        p_supcn->parsed()) {
      dsc::Generator result;
      if (p_proj->parsed()) {
        result = dsc::project(dsc::parse_generator_file(gen_path),
                              to_alphabet(target_events));
      } else if (p_prod->parsed()) {
        std::vector<dsc::Generator> gens;
        for (const auto& p : gen_paths)
          gens.push_back(dsc::parse_generator_file(p));
        result = dsc::sync_product(gens);
        if (trim_product) result = dsc::trim(result);
      } else {
        dsc::ControlContext ctx;
        ctx.plant = dsc::prefix_closure(dsc::parse_generator_file(plant_path));
        ctx.uncontrollable = to_alphabet(unc_events);
        dsc::Generator k = dsc::parse_generator_file(spec_path);
        if (p_supcon->parsed()) {
          result = dsc::supcon(k, ctx);
        } else {
          ctx.observable = to_alphabet(obs_events);
          result = dsc::supcn(k, ctx);
        }
      }
      if (out_path.empty())
        dsc::emit_generator(std::cout, result);
      else
        dsc::write_generator_file(out_path, result);
      return kExitPass;
    }
    if (p_rcd->parsed()) {
      dsc::ExtensionPlan plan =
          dsc::rcd(dsc::parse_generator_file(spec_path),
                   to_alphabets(alphabet_groups), !no_minimize);
      std::cout << dsc::format_plan(plan);
      return kExitPass;
    }
    if (p_synth->parsed()) {
      PipelineOutput po =
          run_pipeline(plant_path, spec_path, agents_path, mode_spec,
                       !no_minimize, !no_communicate, budget);
      write_bundle(out_dir, po);
      int code = exit_code_from_certificates(po.result.certificates);
      std::cout << dsc::format_certificates(po.result.certificates);
      return code;
    }
    if (p_resolve->parsed()) {
      PipelineOutput po =
          run_pipeline(plant_path, spec_path, agents_path, mode_spec,
                       !no_minimize, !no_communicate, budget);
      dsc::ConflictResolution cr = dsc::resolve_conflicts(
          po.problem, po.result, to_alphabet(sigma_events), optimal, budget);
      if (cr.coordinator_is_centralized)
        std::cerr << "warning: coordination alphabet grew to the full "
                     "alphabet; the coordinator is centralized\n";
      po.result = cr.result;
      write_bundle(out_dir, po);
      dsc::write_generator_file(out_dir + "/coordinator.gen", cr.coordinator);
      int code = exit_code_from_certificates(po.result.certificates);
      std::cout << "sigma': " << dsc::format_alphabet(cr.coordination_alphabet)
                << "\n"
                << dsc::format_certificates(po.result.certificates);
      return code;
    }
    if (p_opt->parsed()) {
      PipelineOutput po = run_pipeline(plant_path, spec_path, agents_path,
                                       "supcon", !no_minimize, true, budget);
      dsc::OptimalityMethod m;
      if (method == "mutual")
        m = dsc::OptimalityMethod::mutual;
      else if (method == "observer-lcc")
        m = dsc::OptimalityMethod::observer_lcc;
      else
        throw dsc::format_error("unknown method '" + method + "'");
      dsc::OptimalityResult r = dsc::check_optimality(po.problem, po.result, m);
      switch (r.status) {
        case dsc::OptimalityResult::Status::pass:
          std::cout << "optimal\n";
          return kExitPass;
        case dsc::OptimalityResult::Status::fail:
          std::cout << "fails " << r.detail << "\n";
          return kExitFail;
        default:
          std::cout << "inapplicable " << r.detail << "\n";
          return kExitFail;
      }
    }
    if (p_reduce->parsed()) {
      std::vector<dsc::Generator> dfas;
      for (const auto& p : gen_paths)
        dfas.push_back(dsc::parse_generator_file(p));
      dsc::ReductionInstance inst = dsc::build_separability_instance(dfas);
      dsc::write_generator_file(out_path, inst.h);
      std::ofstream al(alphabets_out);
      if (!al) throw dsc::format_error("cannot write '" + alphabets_out + "'");
      for (std::size_t i = 0; i < inst.alphabets.size(); ++i)
        al << "E_" << (i + 1) << ": " << dsc::format_alphabet(inst.alphabets[i])
           << "\n";
      return kExitPass;
    }
  } catch (const dsc::budget_error& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const dsc::PreconditionViolation& e) {
    std::cerr << "precondition violation: " << e.what() << " (witness "
              << dsc::word_to_string(e.witness) << ")\n";
    return kExitUsage;
  } catch (const dsc::format_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const dsc::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  std::cerr << "error: no subcommand handled\n";
  return kExitUsage;
}
