// tangle: command-line front end for the tangled modal logic toolkit.
//
// Exit codes: 0 success / true, 1 false or counterexample found,
// 2 usage or input error, 3 search budget exceeded.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tangle/filtration.hpp"
#include "tangle/formula.hpp"
#include "tangle/io.hpp"
#include "tangle/kripke.hpp"
#include "tangle/logics.hpp"
#include "tangle/topo.hpp"
#include "tangle/translate.hpp"

using nlohmann::json;
using namespace tangle;

namespace {

constexpr int kTrue = 0, kFalse = 1, kUsage = 2, kBudget = 3;

enum class Format { Text, Structured, Dot };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Args {
  Format format = Format::Text;
  std::string formula_text;
  std::string formula_file;
  std::string path;
  std::string world;
  std::string mode = "mu";
  std::string profile;
  std::size_t max_worlds = 4;
  std::int64_t conflicts = 200000;
  std::uint64_t valuations = 1u << 20;
  bool refined = false;
  bool reflexive = false;
  bool list = false;
  std::string schema;
  std::vector<std::string> schema_args;
  std::string fixture;
  std::size_t m = 3;
  std::string out;
};

Formula read_formula(const Args& a) {
  if (!a.formula_text.empty() && !a.formula_file.empty())
    throw UsageError("give the formula inline or with --formula-file, not both");
  if (!a.formula_file.empty()) {
    std::ifstream in(a.formula_file);
    if (!in) throw UsageError("cannot open formula file '" + a.formula_file + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
  }
  if (a.formula_text.empty()) throw UsageError("a formula is required");
  return parse(a.formula_text);
}

std::string set_str(const std::vector<std::string>& ids, const WorldSet& s) {
  std::string out = "{";
  bool first = true;
  for_each_member(s, [&](std::size_t i) {
    if (!first) out += ", ";
    out += ids[i];
    first = false;
  });
  return out + "}";
}

void print_json(const json& j) { std::cout << j.dump(2) << "\n"; }

void require_no_dot(const Args& a, const char* cmd) {
  if (a.format == Format::Dot) throw UsageError(std::string(cmd) + " has no DOT output");
}

void save_if_requested(const Args& a, const json& j) {
  if (a.out.empty()) return;
  std::ofstream o(a.out);
  if (!o) throw UsageError("cannot write '" + a.out + "'");
  o << j.dump(2) << "\n";
}

json valuation_json(const std::vector<std::string>& ids, const Valuation& val) {
  json out = json::object();
  for (const auto& [atom_name, s] : val) out[atom_name] = ids_json(ids, s);
  return out;
}

// Shared by mc and tmc.
int report_extension(const Args& a, const Formula& f, const std::vector<std::string>& ids,
                     const WorldSet& ext) {
  int code = kTrue;
  if (!a.world.empty()) {
    auto it = std::find(ids.begin(), ids.end(), a.world);
    if (it == ids.end()) throw UsageError("unknown world '" + a.world + "'");
    code = ext.test(static_cast<std::size_t>(it - ids.begin())) ? kTrue : kFalse;
  }
  if (a.format == Format::Structured) {
    json truth = json::object();
    for (std::size_t i = 0; i < ids.size(); ++i) truth[ids[i]] = ext.test(i);
    print_json({{"formula", to_string(f)}, {"extension", ids_json(ids, ext)}, {"truth", truth}});
  } else {
    for (std::size_t i = 0; i < ids.size(); ++i)
      std::cout << ids[i] << "  " << (ext.test(i) ? "true" : "false") << "\n";
    std::cout << "extension: " << set_str(ids, ext) << "\n";
  }
  return code;
}

int cmd_fmt(const Args& a) {
  require_no_dot(a, "fmt");
  Formula f = read_formula(a);
  if (a.format == Format::Structured) {
    auto atoms = free_atoms(f);
    print_json({{"formula", to_string(f)},
                {"size", formula_size(f)},
                {"modal_depth", modal_depth(f)},
                {"tangle_depth", tangle_depth(f)},
                {"free_atoms", std::vector<std::string>(atoms.begin(), atoms.end())}});
  } else {
    std::cout << to_string(f) << "\n";
  }
  return kTrue;
}

int cmd_mc(const Args& a) {
  Formula f = read_formula(a);
  KripkeModel m = model_from_json(read_json_file(a.path));
  if (a.format == Format::Dot) {
    std::cout << to_dot(m);
    return kTrue;
  }
  return report_extension(a, f, m.frame.worlds(), model_check(m, f));
}

int cmd_tmc(const Args& a) {
  require_no_dot(a, "tmc");
  Formula f = read_formula(a);
  TopoModel m = space_from_json(read_json_file(a.path));
  return report_extension(a, f, m.space.points(), topo_model_check(m, f));
}

int cmd_translate(const Args& a) {
  require_no_dot(a, "translate");
  Formula f = read_formula(a);
  Formula g = a.mode == "mu" ? to_mu(f) : a.mode == "d" ? to_d(f) : star(f);
  if (a.format == Format::Structured)
    print_json({{"mode", a.mode}, {"input", to_string(f)}, {"output", to_string(g)}});
  else
    std::cout << to_string(g) << "\n";
  return kTrue;
}

ClosureSet closure_for(const Formula& f) { return subformula_closure({f, dia(top()), top()}); }

json classes_json(const FiltrationResult& fr, const std::vector<std::string>& ids) {
  json out = json::object();
  for (std::size_t q = 0; q < fr.size(); ++q) out[fr.quotient_worlds[q]] = ids_json(ids, fr.classes[q]);
  return out;
}

json summary_json(const FrameSummary& s) {
  return {{"serial", s.serial},
          {"reflexive", s.reflexive},
          {"sees_reflexive", s.sees_reflexive},
          {"components", s.components},
          {"local_bound", s.local_bound}};
}

std::string summary_str(const FrameSummary& s) {
  std::ostringstream o;
  o << "serial=" << std::boolalpha << s.serial << " reflexive=" << s.reflexive
    << " sees-reflexive=" << s.sees_reflexive << " components=" << s.components
    << " local-bound=" << s.local_bound;
  return o.str();
}

int cmd_filtrate(const Args& a) {
  Formula f = read_formula(a);
  KripkeModel m = model_from_json(read_json_file(a.path));
  ClosureSet phi = closure_for(f);
  FiltrationResult fr = filtrate(m, phi, a.refined ? FiltrationMode::Refined : FiltrationMode::Standard);
  KripkeModel q = fr.phi_model();
  ConditionReport cond = check_reduction_conditions(fr, fr.r_phi, m, phi);
  save_if_requested(a, model_to_json(q));
  const auto& ids = m.frame.worlds();
  if (a.format == Format::Dot) {
    std::cout << to_dot(q, "filtration");
  } else if (a.format == Format::Structured) {
    print_json({{"mode", mode_name(fr.mode)},
                {"closure_size", phi.size()},
                {"quotient_size", fr.size()},
                {"classes", classes_json(fr, ids)},
                {"quotient", model_to_json(q)},
                {"conditions", {{"r1", cond.r1}, {"r2", cond.r2}, {"r3", cond.r3}, {"r4", cond.r4}}},
                {"violations", cond.violations}});
  } else {
    std::cout << "mode: " << mode_name(fr.mode) << "\n"
              << "closure size: " << phi.size() << "\n"
              << "quotient worlds: " << fr.size() << "\n";
    for (std::size_t i = 0; i < fr.size(); ++i)
      std::cout << "  " << fr.quotient_worlds[i] << " = " << set_str(ids, fr.classes[i]) << "\n";
    std::cout << "conditions (r1)-(r4): " << (cond.ok() ? "hold" : "violated") << "\n";
    for (const auto& v : cond.violations) std::cout << "  " << v << "\n";
  }
  return cond.ok() ? kTrue : kFalse;
}

int cmd_untangle(const Args& a) {
  Formula f = read_formula(a);
  KripkeModel m = model_from_json(read_json_file(a.path));
  ClosureSet phi = closure_for(f);
  FiltrationResult fr = filtrate(m, phi, a.refined ? FiltrationMode::Refined : FiltrationMode::Standard);
  UntangleResult ut = untangle(fr, m, phi, a.reflexive);
  ReductionReport rep = verify_reduction(fr, ut, m, phi);
  PreservationReport pres = preservation_report(fr, ut, m, phi);
  KripkeModel q = fr.model_on(ut.r_t);
  save_if_requested(a, model_to_json(q));
  const auto& ids = m.frame.worlds();
  const auto& qids = fr.quotient_worlds;

  if (a.format == Format::Dot) {
    std::cout << to_dot(fr.phi_model(), "filtration") << to_dot(q, "untangled");
  } else if (a.format == Format::Structured) {
    json clusters = json::array();
    for (std::size_t c = 0; c < ut.phi_clusters.size(); ++c)
      clusters.push_back({{"members", ids_json(qids, ut.phi_clusters[c])},
                          {"degenerate", static_cast<bool>(ut.degenerate[c])},
                          {"critical_point", ids[ut.critical_point[c]]},
                          {"nucleus", ids_json(qids, ut.nucleus[c])}});
    json red = {{"holds", rep.holds}, {"checked", rep.checked}};
    if (!rep.holds) {
      red["failing_formula"] = to_string(*rep.failing_formula);
      red["failing_world"] = ids[*rep.failing_world];
      red["message"] = rep.message;
    }
    print_json({{"mode", mode_name(fr.mode)},
                {"reflexive_mode", ut.reflexive_mode},
                {"closure_size", phi.size()},
                {"quotient_size", fr.size()},
                {"classes", classes_json(fr, ids)},
                {"clusters", clusters},
                {"untangled", model_to_json(q)},
                {"reduction", red},
                {"preservation",
                 {{"source", summary_json(pres.source)},
                  {"phi", summary_json(pres.phi)},
                  {"untangled", summary_json(pres.untangled)},
                  {"path_components_equal", pres.path_components_equal},
                  {"locally_n_connected_for", pres.locally_n_connected_for},
                  {"notes", pres.notes}}}});
  } else {
    std::cout << "mode: " << mode_name(fr.mode) << (ut.reflexive_mode ? ", reflexive" : "") << "\n"
              << "quotient worlds: " << fr.size() << "\n";
    for (std::size_t c = 0; c < ut.phi_clusters.size(); ++c)
      std::cout << "  cluster " << set_str(qids, ut.phi_clusters[c])
                << (ut.degenerate[c] ? " (degenerate)" : "") << " critical point "
                << ids[ut.critical_point[c]] << " nucleus " << set_str(qids, ut.nucleus[c]) << "\n";
    std::cout << "untangled relation:\n";
    for (std::size_t i = 0; i < q.frame.size(); ++i)
      std::cout << "  " << qids[i] << " -> " << set_str(qids, ut.r_t[i]) << "\n";
    std::cout << "reduction: " << (rep.holds ? "holds" : "FAILS") << " (" << rep.checked
              << " checks)\n";
    if (!rep.holds) std::cout << "  " << rep.message << "\n";
    std::cout << "source:    " << summary_str(pres.source) << "\n"
              << "filtered:  " << summary_str(pres.phi) << "\n"
              << "untangled: " << summary_str(pres.untangled) << "\n"
              << "same path components: " << std::boolalpha << pres.path_components_equal << "\n";
    for (const auto& n : pres.notes) std::cout << "note: " << n << "\n";
  }
  return rep.holds ? kTrue : kFalse;
}

int cmd_analyze(const Args& a) {
  KripkeModel m = model_from_json(read_json_file(a.path));
  const Frame& fr = m.frame;
  if (a.format == Format::Dot) {
    std::cout << to_dot(fr);
    return kTrue;
  }
  const auto& ids = fr.worlds();
  RelationProperties props = relation_properties(fr);
  auto comps = path_components(fr);
  std::size_t bound = local_component_bound(fr.rel());
  std::optional<ClusterDecomposition> cd;
  if (props.transitive) cd = cluster_decomposition(fr);

  if (a.format == Format::Structured) {
    json clusters = json::array();
    if (cd)
      for (std::size_t c = 0; c < cd->clusters.size(); ++c)
        clusters.push_back({{"members", ids_json(ids, cd->clusters[c])},
                            {"degenerate", static_cast<bool>(cd->degenerate[c])},
                            {"rank", cd->rank[c]}});
    json comp = json::array();
    for (const auto& c : comps) comp.push_back(ids_json(ids, c));
    json local = json::object();
    for (std::size_t n = 1; n <= 4; ++n) local[std::to_string(n)] = locally_n_connected(fr, n);
    json out = {{"worlds", ids.size()},
                {"reflexive", props.reflexive},
                {"transitive", props.transitive},
                {"serial", props.serial},
                {"path_components", comp},
                {"connected", comps.size() == 1},
                {"local_component_bound", bound},
                {"locally_n_connected", local}};
    out["clusters"] = cd ? clusters : json(nullptr);
    print_json(out);
    return kTrue;
  }
  std::cout << "worlds: " << ids.size() << "\n"
            << std::boolalpha << "reflexive=" << props.reflexive
            << " transitive=" << props.transitive << " serial=" << props.serial << "\n";
  if (cd) {
    std::cout << "clusters:\n";
    for (std::size_t c = 0; c < cd->clusters.size(); ++c)
      std::cout << "  " << set_str(ids, cd->clusters[c]) << " rank " << cd->rank[c]
                << (cd->degenerate[c] ? " degenerate" : "") << "\n";
  } else {
    std::cout << "clusters: n/a (relation is not transitive)\n";
  }
  std::cout << "path components: " << comps.size() << "\n";
  for (const auto& c : comps) std::cout << "  " << set_str(ids, c) << "\n";
  std::cout << "connected=" << (comps.size() == 1) << "\n"
            << "local component bound: " << bound << "\n";
  for (std::size_t n = 1; n <= 4; ++n)
    std::cout << "locally-" << n << "-connected=" << locally_n_connected(fr, n) << "\n";
  return kTrue;
}

int cmd_sat(const Args& a) {
  Formula f = read_formula(a);
  LogicProfile p = parse_profile(a.profile);
  SatOutcome res = bounded_sat(f, p, a.max_worlds, a.conflicts);
  if (!res.model) {
    if (a.format == Format::Structured)
      print_json({{"formula", to_string(f)}, {"profile", p.name}, {"satisfiable", false},
                  {"max_worlds", a.max_worlds}});
    else if (a.format == Format::Text)
      std::cout << "no model of " << p.name << " with at most " << a.max_worlds
                << " worlds (bounded search; not a proof of unsatisfiability in general)\n";
    return kFalse;
  }
  const KripkeModel& m = *res.model;
  save_if_requested(a, model_to_json(m));
  if (a.format == Format::Dot) {
    std::cout << to_dot(m, "witness");
  } else if (a.format == Format::Structured) {
    print_json({{"formula", to_string(f)},
                {"profile", p.name},
                {"satisfiable", true},
                {"world", m.frame.world(*res.world)},
                {"model", model_to_json(m)}});
  } else {
    const auto& ids = m.frame.worlds();
    std::cout << "model with " << ids.size() << " world(s), true at " << ids[*res.world] << "\n";
    for (std::size_t i = 0; i < ids.size(); ++i)
      std::cout << "  " << ids[i] << " -> " << set_str(ids, m.frame.successors(i)) << "\n";
    for (const auto& [atom_name, s] : m.val) std::cout << "  " << atom_name << " = " << set_str(ids, s) << "\n";
  }
  return kTrue;
}

int cmd_validate(const Args& a) {
  require_no_dot(a, "validate");
  Formula f = read_formula(a);
  KripkeModel m = model_from_json(read_json_file(a.path));
  Validity v = frame_validates(m.frame, f, a.valuations);
  const auto& ids = m.frame.worlds();
  if (a.format == Format::Structured) {
    json out = {{"formula", to_string(f)}, {"valid", v.valid}, {"valuations_checked", v.valuations_checked}};
    if (!v.valid) {
      out["witness"] = valuation_json(ids, *v.witness);
      out["failing_world"] = ids[*v.failing_world];
    }
    print_json(out);
  } else if (v.valid) {
    std::cout << "valid (" << v.valuations_checked << " valuations)\n";
  } else {
    std::cout << "not valid: fails at " << ids[*v.failing_world] << " under\n";
    for (const auto& [atom_name, s] : *v.witness) std::cout << "  " << atom_name << " = " << set_str(ids, s) << "\n";
  }
  return v.valid ? kTrue : kFalse;
}

int cmd_axioms(const Args& a) {
  require_no_dot(a, "axioms");
  if (a.list || a.schema.empty()) {
    if (!a.profile.empty()) {
      LogicProfile p = parse_profile(a.profile);
      for (const auto& s : p.schemas()) std::cout << s << "\n";
      return kTrue;
    }
    if (a.format == Format::Structured) {
      json out = json::object();
      for (const auto& s : schema_ids()) out[s] = schema_usage(s);
      print_json(out);
    } else {
      for (const auto& s : schema_ids()) std::cout << s << "  " << schema_usage(s) << "\n";
      std::cout << "(G_n for any n >= 1)\n";
    }
    return kTrue;
  }
  SchemaInstance inst = [&] {
    if (a.schema_args.empty()) return default_instance(a.schema);
    std::vector<Formula> args;
    for (const auto& s : a.schema_args) args.push_back(parse(s));
    return instantiate(a.schema, args);
  }();
  if (a.format == Format::Structured) {
    std::vector<std::string> args;
    for (const auto& f : inst.args) args.push_back(to_string(f));
    print_json({{"schema", inst.schema}, {"args", args}, {"instance", to_string(inst.formula)}});
  } else {
    std::cout << to_string(inst.formula) << "\n";
  }
  return kTrue;
}

int cmd_fixture(const Args& a) {
  if (a.fixture != "figure3") throw UsageError("unknown fixture '" + a.fixture + "' (known: figure3)");
  KripkeModel m = figure3_model(a.m);
  save_if_requested(a, model_to_json(m));
  if (a.format == Format::Dot) {
    std::cout << to_dot(m, "figure3");
    return kTrue;
  }
  if (a.format == Format::Structured) {
    print_json(model_to_json(m));
    return kTrue;
  }
  int code = kTrue;
  std::cout << "figure3 model, m=" << a.m << ", " << m.frame.size() << " worlds\n";
  for (const auto& s : sigma_formulas(a.m / 3)) {
    bool ok = model_check(m, s.formula).all();
    if (!ok) code = kFalse;
    std::cout << "  " << s.label << "  " << (ok ? "valid" : "NOT valid") << "  " << to_string(s.formula) << "\n";
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Model checking, filtration and bounded search for tangled modal logics"};
  app.require_subcommand(1);
  app.fallthrough();
  Args a;
  std::string format = "text";
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"text", "structured", "dot"}));

  auto formula_opts = [&](CLI::App* sub) {
    sub->add_option("formula", a.formula_text, "Formula text");
    sub->add_option("--formula-file", a.formula_file, "Read the formula from a file");
  };

  auto* fmt = app.add_subcommand("fmt", "Parse and print a formula canonically");
  formula_opts(fmt);

  auto* mc = app.add_subcommand("mc", "Kripke model checking");
  mc->add_option("model", a.path, "Model file")->required();
  formula_opts(mc);
  mc->add_option("--world", a.world, "Exit 1 unless the formula holds at this world");

  auto* tmc = app.add_subcommand("tmc", "Topological model checking");
  tmc->add_option("space", a.path, "Space file")->required();
  formula_opts(tmc);
  tmc->add_option("--world", a.world, "Exit 1 unless the formula holds at this point");

  auto* tr = app.add_subcommand("translate", "Translate a formula");
  tr->add_option("--mode", a.mode, "mu, d or star")->check(CLI::IsMember({"mu", "d", "star"}));
  formula_opts(tr);

  auto* fil = app.add_subcommand("filtrate", "Transitive filtration through closure(φ) ∪ {<>true, true}");
  fil->add_option("model", a.path, "Model file")->required();
  formula_opts(fil);
  fil->add_flag("--refined", a.refined, "Also separate worlds by the maximal clusters they see");
  fil->add_option("--out", a.out, "Write the quotient model to this file");

  auto* unt = app.add_subcommand("untangle", "Filtrate, untangle and verify the reduction");
  unt->add_option("model", a.path, "Model file")->required();
  formula_opts(unt);
  unt->add_flag("--refined", a.refined, "Use the refined filtration");
  unt->add_flag("--reflexive", a.reflexive, "Keep every world reflexive");
  unt->add_option("--out", a.out, "Write the untangled model to this file");

  auto* an = app.add_subcommand("analyze", "Frame report: properties, clusters, components");
  an->add_option("model", a.path, "Model file")->required();

  auto* sat = app.add_subcommand("sat", "Bounded satisfiability search");
  sat->add_option("--profile", a.profile, "Logic profile, e.g. K4t, S4t.UC, KD4G_1t")->required();
  sat->add_option("--max", a.max_worlds, "Largest frame size to try")->check(CLI::Range(1, 16));
  sat->add_option("--budget", a.conflicts, "Solver conflict budget per solve call");
  sat->add_option("--out", a.out, "Write the witness model to this file");
  formula_opts(sat);

  auto* val = app.add_subcommand("validate", "Frame validity by exhaustive valuation");
  val->add_option("--frame", a.path, "Frame (model) file")->required();
  val->add_option("--budget", a.valuations, "Largest number of valuations to try");
  formula_opts(val);

  auto* ax = app.add_subcommand("axioms", "Instantiate axiom schemas");
  ax->add_option("--schema", a.schema, "Schema id (K, 4, T, D, Fix, Ind, 4t, Tt, U, C, Gn)");
  ax->add_option("--args", a.schema_args, "Schema arguments as formulas");
  ax->add_option("--profile", a.profile, "With --list, the schemas of this profile");
  ax->add_flag("--list", a.list, "List schemas");

  auto* fx = app.add_subcommand("fixture", "Built-in models");
  fx->add_option("name", a.fixture, "Fixture name (figure3)")->required();
  fx->add_option("--m", a.m, "Size parameter");
  fx->add_option("--out", a.out, "Write the model to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }
  a.format = format == "structured" ? Format::Structured : format == "dot" ? Format::Dot : Format::Text;

  try {
    if (fmt->parsed()) return cmd_fmt(a);
    if (mc->parsed()) return cmd_mc(a);
    if (tmc->parsed()) return cmd_tmc(a);
    if (tr->parsed()) return cmd_translate(a);
    if (fil->parsed()) return cmd_filtrate(a);
    if (unt->parsed()) return cmd_untangle(a);
    if (an->parsed()) return cmd_analyze(a);
    if (sat->parsed()) return cmd_sat(a);
    if (val->parsed()) return cmd_validate(a);
    if (ax->parsed()) return cmd_axioms(a);
    if (fx->parsed()) return cmd_fixture(a);
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const UsageError& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
