// Acceptance suite: one PASS/FAIL line per criterion, exit 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "support/generators.hpp"
#include "tangle/filtration.hpp"
#include "tangle/kripke.hpp"
#include "tangle/logics.hpp"
#include "tangle/topo.hpp"
#include "tangle/translate.hpp"

using namespace tangle;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  // Records the first failure only.
  void fail(const std::string& why) {
    if (pass) detail << "first failure: " << why << "; ";
    pass = false;
  }
};

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;
  std::function<void(Outcome&)> run;
};

bool rel_subset(const Relation& a, const Relation& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].is_subset_of(b[i])) return false;
  return true;
}

std::vector<std::string> first_atoms(std::size_t k) {
  std::vector<std::string> all{"p", "q", "r"};
  return {all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k)};
}

void tangle_agreement(Outcome& o) {
  gen::Rng rng(1001);
  gen::Ops ops;
  ops.tangle = true;
  std::size_t worlds = 0;
  for (int i = 0; i < 500; ++i) {
    auto atoms = first_atoms(1 + gen::pick(rng, 3));
    gen::FormulaGen g(atoms, ops);
    gen::ModelShape shape;
    shape.max_worlds = 7;
    KripkeModel m = gen::random_model(rng, shape, atoms);
    std::vector<Formula> delta{g(rng, 2)};
    if (gen::coin(rng)) delta.push_back(g(rng, 2));
    Formula t = tangle_of(delta);
    WorldSet cluster = model_check(m, t);
    WorldSet encoded = model_check(m, to_mu(t));
    for (std::size_t x = 0; x < m.frame.size(); ++x) {
      ++worlds;
      bool lasso = tangle_oracle(m, x, delta);
      if (cluster.test(x) != encoded.test(x) || cluster.test(x) != lasso)
        o.fail(to_string(t) + " at world " + std::to_string(x));
    }
  }
  o.detail << "500 models, " << worlds << " worlds";
}

void star_on_closure(Outcome& o) {
  gen::Rng rng(1002);
  gen::Ops ops;
  ops.fixpoint = true;
  gen::FormulaGen g({"p", "q"}, ops);
  for (int i = 0; i < 200; ++i) {
    gen::ModelShape shape;
    shape.transitive = false;
    KripkeModel m = gen::random_model(rng, shape, {"p", "q"});
    Formula f = g(rng, 3);
    Relation rstar = reflexive_closure(transitive_closure(m.frame.rel()));
    if (model_check(m, star(f)) != model_check(rstar, m.val, f)) o.fail(to_string(f));
  }
  o.detail << "200 models";
}

void translations(Outcome& o) {
  gen::Rng rng(1003);
  gen::Ops ops;
  ops.box_d = ops.universal = ops.tangle = ops.tangle_d = ops.fixpoint = true;
  gen::FormulaGen g({"p", "q"}, ops);
  for (int i = 0; i < 200; ++i) {
    KripkeModel m = gen::random_model(rng, {}, {"p", "q"});
    Formula f = g(rng, 3);
    if (model_check(m, f) != model_check(m, to_mu(f))) o.fail("to_mu on a model: " + to_string(f));
  }
  for (int i = 0; i < 200; ++i) {
    TopoModel t = gen::random_space(rng, 4, {"p", "q"});
    Formula f = g(rng, 3);
    if (topo_model_check(t, f) != topo_model_check(t, to_mu(f))) o.fail("to_mu on a space: " + to_string(f));
  }
  for (int i = 0; i < 200; ++i) {
    gen::ModelShape shape;
    shape.reflexive = true;
    KripkeModel m = gen::random_model(rng, shape, {"p", "q"});
    Formula f = g(rng, 3);
    if (model_check(m, f) != model_check(m, to_d(f))) o.fail("to_d: " + to_string(f));
  }
  o.detail << "200 + 200 + 200 cases";
}

void td_both_directions(Outcome& o) {
  gen::Rng rng(1004);
  gen::Ops ops;
  ops.box_d = ops.tangle = ops.tangle_d = ops.fixpoint = true;
  gen::FormulaGen g({"p", "q"}, ops);
  std::vector<FiniteSpace> spaces = all_topologies(3);
  std::vector<FiniteSpace> four = all_topologies(4);
  for (std::size_t i = 0; i < four.size(); i += 3) spaces.push_back(four[i]);
  const Formula witness = parse("<t>{p, <d>p}");
  const Formula translated = to_d(witness);
  std::size_t td = 0, non_td = 0;
  for (const auto& s : spaces) {
    const std::size_t n = s.size();
    if (space_predicates(s).is_td) {
      ++td;
      for (int k = 0; k < 50; ++k) {
        TopoModel m{s, gen::random_valuation(rng, n, {"p", "q"})};
        Formula f = g(rng, 3);
        if (topo_model_check(m, f) != topo_model_check(m, to_d(f))) o.fail("T_D space: " + to_string(f));
      }
      continue;
    }
    ++non_td;
    bool found = false;
    for (std::size_t x = 0; x < n && !found; ++x) {
      WorldSet dx = s.derivative(singleton(n, x));
      if (s.closure(dx) == dx) continue;
      found = true;
      TopoModel m{s, {{"p", singleton(n, x)}}};
      if (!topo_model_check(m, witness).test(x)) o.fail("witness tangle false at a non-T_D point");
      if (topo_model_check(m, translated).test(x)) o.fail("d-translation true at a non-T_D point");
    }
    if (!found) o.fail("non-T_D space without a point whose derivative is not closed");
  }
  o.detail << td << " T_D spaces x 50 formulas, " << non_td << " non-T_D witnesses";
}

void untangled_agreement(Outcome& o) {
  gen::Rng rng(1005);
  gen::Ops ops;
  ops.tangle = true;
  gen::FormulaGen g({"p", "q"}, ops);
  std::size_t serial = 0, reflexive = 0, largest = 0;
  for (int i = 0; i < 300; ++i) {
    gen::ModelShape shape;
    shape.max_worlds = 8;
    shape.serial = i % 3 == 1;
    shape.reflexive = i % 3 == 2;
    KripkeModel m = gen::random_model(rng, shape, {"p", "q"});
    Formula f = g(rng, 3);
    if (tangle_depth(f) == 0) f = conj(f, tangle_of({g(rng, 2), g(rng, 1)}));
    ClosureSet phi = subformula_closure({f, dia(top()), top()});
    FiltrationResult fr = filtrate(m, phi, FiltrationMode::Standard);
    UntangleResult ut = untangle(fr, m, phi, shape.reflexive);
    largest = std::max(largest, fr.size());
    ReductionReport rep = verify_reduction(fr, ut, m, phi);
    if (!rep.holds) o.fail(rep.message);
    if (phi.size() < 63 && fr.size() > (std::size_t{1} << phi.size())) o.fail("|W_Φ| > 2^|Φ|");
    if (!rel_subset(ut.r_t, fr.r_phi)) o.fail("r_t not inside r_phi");
    if (path_components(fr.r_phi) != path_components(ut.r_t)) o.fail("path components differ for " + to_string(f));
    if (shape.serial) {
      ++serial;
      FrameSummary s = summarize(ut.r_t);
      if (!s.serial || !s.sees_reflexive) o.fail("serial input, r_t not serial or misses reflexive worlds");
    }
    if (shape.reflexive) {
      ++reflexive;
      if (!is_reflexive(ut.r_t)) o.fail("reflexive input, r_t not reflexive");
    }
  }
  o.detail << "300 models (" << serial << " serial, " << reflexive << " reflexive), largest quotient " << largest;
}

void gn_preservation(Outcome& o) {
  gen::Rng rng(1006);
  gen::Ops ops;
  ops.tangle = true;
  gen::FormulaGen g({"p", "q"}, ops);
  int accepted = 0, drawn = 0, branching = 0;
  while (accepted < 100) {
    ++drawn;
    gen::ModelShape shape;
    shape.max_worlds = 8;
    shape.serial = true;
    shape.min_density = 0.05;
    shape.max_density = 0.3;
    KripkeModel m = gen::random_model(rng, shape, {"p", "q"});
    if (!locally_n_connected(m.frame, 1)) continue;
    ++accepted;
    if (cluster_decomposition(m.frame.rel()).maximal().size() > 1) ++branching;
    Formula f = g(rng, 3);
    ClosureSet phi = subformula_closure({f, dia(top()), top(), atom("p"), atom("q")});
    FiltrationResult fr = filtrate(m, phi, FiltrationMode::Refined);
    UntangleResult ut = untangle(fr, m, phi, false);
    if (!locally_n_connected(fr.r_phi, 1)) o.fail("r_phi quotient not locally 1-connected for " + to_string(f));
    if (!locally_n_connected(ut.r_t, 1)) o.fail("r_t quotient not locally 1-connected for " + to_string(f));
  }
  o.detail << "100 locally 1-connected serial models (" << drawn << " drawn, " << branching
           << " with several maximal clusters)";
}

void fact_gn(Outcome& o) {
  std::size_t frames = 0;
  for (std::size_t n = 1; n <= 4; ++n)
    for (const auto& r : enumerate_frames(n, FrameConditions{})) {
      ++frames;
      Frame f = Frame::anonymous(r);
      for (std::size_t k : {1u, 2u}) {
        bool structural = locally_n_connected(f, k);
        bool valid = frame_validates(f, default_instance("G" + std::to_string(k)).formula).valid;
        if (structural != valid) o.fail("G" + std::to_string(k) + " on a " + std::to_string(n) + "-world frame");
      }
    }
  o.detail << frames << " transitive frames, n = 1, 2";
}

// Random argument lists for a schema, over p and q, depth at most 2.
std::vector<Formula> random_args(gen::Rng& rng, gen::FormulaGen& g, const std::string& schema) {
  auto f = [&] { return g(rng, 2); };
  if (schema == "D") return {};
  if (schema == "K") return {f(), f()};
  if (schema == "G1") return {f(), f()};
  if (schema == "Fix" || schema == "Ind") {
    std::vector<Formula> gamma{f()};
    if (gen::coin(rng)) gamma.push_back(f());
    Formula head = schema == "Fix" ? gamma[gen::pick(rng, gamma.size())] : f();
    gamma.insert(gamma.begin(), head);
    return gamma;
  }
  if (schema == "4t" || schema == "Tt") {
    std::vector<Formula> gamma{f()};
    if (gen::coin(rng)) gamma.push_back(f());
    return gamma;
  }
  return {f()};
}

void soundness(Outcome& o) {
  struct Row {
    const char* schema;
    FrameConditions cond;
  };
  FrameConditions base, serial, refl, conn, local1;
  serial.serial = true;
  refl.reflexive = refl.serial = true;
  conn.connected = true;
  local1.locally_connected = 1;
  const std::vector<Row> rows{{"K", base},   {"4", base},    {"Fix", base}, {"Ind", base}, {"4t", base},
                              {"Tt", refl},  {"D", serial},  {"T", refl},   {"U", base},   {"C", conn},
                              {"G1", local1}};
  gen::Rng rng(1008);
  gen::Ops ops;
  ops.tangle = true;
  gen::FormulaGen g({"p", "q"}, ops);
  std::size_t checks = 0;
  for (const auto& row : rows) {
    std::vector<Formula> instances{default_instance(row.schema).formula};
    for (int k = 0; k < 6; ++k) instances.push_back(instantiate(row.schema, random_args(rng, g, row.schema)).formula);
    for (std::size_t n = 1; n <= 4; ++n)
      for (const auto& r : enumerate_frames(n, row.cond))
        for (const auto& inst : instances) {
          ++checks;
          if (!frame_validates(Frame::anonymous(r), inst).valid)
            o.fail(std::string(row.schema) + " instance " + to_string(inst) + " on a " + std::to_string(n) +
                   "-world frame");
        }
  }
  std::vector<std::string> named;
  for (const auto& ff : failing_frames()) {
    const Row* row = nullptr;
    for (const auto& r : rows)
      if (ff.schema == r.schema) row = &r;
    FrameConditions cond = row ? row->cond : base;
    bool violates = !frame_satisfies(ff.frame.rel(), cond);
    if (ff.frame.size() > 3 || !violates || frame_validates(ff.frame, ff.instance).valid)
      o.fail("failing frame for " + ff.schema + " (" + ff.name + ")");
    named.push_back(ff.schema);
  }
  o.detail << checks << " validity checks; failing frames for";
  for (const auto& s : named) o.detail << ' ' << s;
}

void figure3(Outcome& o) {
  std::size_t formulas = 0;
  for (std::size_t m = 0; m <= 15; ++m) {
    KripkeModel fig = figure3_model(m);
    const Relation& r = fig.frame.rel();
    if (!is_reflexive(r) || !is_transitive(r) || !is_connected(r)) o.fail("frame shape at m=" + std::to_string(m));
    for (const auto& s : sigma_formulas(m / 3)) {
      ++formulas;
      if (!model_check(fig, s.formula).all()) o.fail(s.label + " at m=" + std::to_string(m));
    }
  }
  o.detail << "m = 0..15, " << formulas << " instances";
}

void bounded_sat_soundness(Outcome& o) {
  gen::Rng rng(1010);
  gen::Ops ops;
  ops.tangle = true;
  gen::FormulaGen g({"p", "q"}, ops);
  const char* names[] = {"K4t", "KD4t", "S4t", "K4G1t", "KD4t.U", "S4t.UC", "KD4G2t"};
  std::size_t found = 0, none = 0;
  for (int i = 0; i < 70; ++i) {
    LogicProfile prof = parse_profile(names[i % 7]);
    Formula f = g(rng, 3);
    if (prof.universal) f = conj(f, exists(g(rng, 2)));
    SatOutcome out = bounded_sat(f, prof, 4);
    if (!out.model) {
      ++none;
      continue;
    }
    ++found;
    if (!model_check(*out.model, f).any()) o.fail("witness does not satisfy " + to_string(f));
    if (!frame_satisfies(out.model->frame.rel(), prof.conditions)) o.fail("witness frame violates " + prof.name);
  }
  SatOutcome t = bounded_sat(parse("<t>{p, ~p}"), parse_profile("K4t"), 2);
  if (!t.model || t.model->frame.size() > 2) o.fail("<t>{p, ~p} not found within 2 worlds");
  SatOutcome u = bounded_sat(parse("<>true & []false"), parse_profile("K4"), 5);
  if (u.model || u.largest_size_tried != 5) o.fail("<>true & []false not reported unsat up to 5 worlds");
  o.detail << found << " witnesses re-verified, " << none << " unsat within 4";
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "tangle triple agreement", 60, tangle_agreement},
      {2, "star on R equals R*", 60, star_on_closure},
      {3, "to_mu and to_d equivalence", 120, translations},
      {4, "T_D spaces and d-translation", 120, td_both_directions},
      {5, "untangled model agrees with the source", 300, untangled_agreement},
      {6, "G_n preservation under refined filtration", 300, gn_preservation},
      {7, "local connectivity vs G_n validity", 600, fact_gn},
      {8, "axiom soundness and failing frames", 600, soundness},
      {9, "figure3 fixture", 60, figure3},
      {10, "bounded-sat soundness", 60, bounded_sat_soundness},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    auto start = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.limit_seconds) o.fail("over the " + std::to_string(static_cast<int>(c.limit_seconds)) + " s limit");
    if (!o.pass) ++failed;
    std::printf("%s %2d %s (%.2f s): %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs, o.detail.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
