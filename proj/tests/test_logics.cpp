#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "support/generators.hpp"
#include "tangle/kripke.hpp"
#include "tangle/logics.hpp"
#include "tangle/sat.hpp"

using namespace tangle;

namespace {

Formula P(const char* s) { return parse(s); }

std::uint64_t rel_mask(const Relation& r) {
  std::uint64_t m = 0;
  for (std::size_t i = 0; i < r.size(); ++i)
    for (std::size_t j = 0; j < r.size(); ++j)
      if (r[i].test(j)) m |= std::uint64_t{1} << (i * r.size() + j);
  return m;
}

Relation mask_rel(std::uint64_t m, std::size_t n) {
  Relation r(n, empty_set(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if ((m >> (i * n + j)) & 1u) r[i].set(j);
  return r;
}

// Distinct relabellings of r, as masks.
std::set<std::uint64_t> orbit(const Relation& r) {
  const std::size_t n = r.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::set<std::uint64_t> out;
  do {
    Relation s(n, empty_set(n));
    for (std::size_t i = 0; i < n; ++i)
      for_each_member(r[i], [&](std::size_t j) { s[perm[i]].set(perm[j]); });
    out.insert(rel_mask(s));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

Frame fork_frame() {
  return Frame::from_pairs({"r", "x", "y"}, {{"r", "x"}, {"r", "y"}, {"x", "x"}, {"y", "y"}});
}

// Least (size, valuation mask, relation mask) model of f by brute force.
std::optional<KripkeModel> least_model(const Formula& f, const FrameConditions& c, std::size_t max_n,
                                       const std::vector<std::string>& atoms) {
  for (std::size_t n = 1; n <= max_n; ++n) {
    const std::size_t vbits = atoms.size() * n;
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << vbits); ++v) {
      Valuation val;
      for (std::size_t a = 0; a < atoms.size(); ++a)
        val[atoms[a]] = from_mask(n, (v >> (a * n)) & ((1u << n) - 1));
      for (std::uint64_t r = 0; r < (std::uint64_t{1} << (n * n)); ++r) {
        Relation rel = mask_rel(r, n);
        if (!frame_satisfies(rel, c)) continue;
        if (model_check(rel, val, f).any()) return KripkeModel{Frame::anonymous(rel), val};
      }
    }
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("schema instances") {
  CHECK(instantiate("Fix", {P("p")}).formula == P("<t>{p} -> <>(p & <t>{p})"));
  CHECK(instantiate("Fix", {P("q"), P("p"), P("q")}).formula == P("<t>{p, q} -> <>(q & <t>{p, q})"));
  CHECK(instantiate("4", {top()}).formula == P("<><>true -> <>true"));
  CHECK(instantiate("D", {}).formula == P("<>true"));
  CHECK(instantiate("U", {P("p")}).formula == P("A p -> []p"));
  CHECK(instantiate("4_t", {P("p"), P("q")}).formula == P("<><t>{p, q} -> <t>{p, q}"));
  CHECK(instantiate("T_t", {P("p"), P("q")}).formula == P("p & q -> <t>{p, q}"));
  CHECK(instantiate("Ind", {P("q"), P("p")}).formula ==
        implies(box_star(implies(P("q"), dia(P("p & q")))), implies(P("q"), P("<t>{p}"))));
  CHECK(instantiate("C", {P("p")}).formula ==
        implies(forall(disj(box_star(P("p")), box_star(P("~p")))), P("A p | A ~p")));

  std::vector<Formula> g1{P("p"), P("~p")};
  Formula q0 = q_formula(g1, 0), q1 = q_formula(g1, 1);
  CHECK(q0 == P("p & ~~p"));
  CHECK(instantiate("G_1", g1).formula ==
        implies(conj(dia(q0), dia(q1)), dia(conj(dia_star(neg(q0)), dia_star(neg(q1))))));
  // Frame-equivalent to ◇p ∧ ◇¬p → ◇(◇*p ∧ ◇*¬p).
  Formula simple = P("<>p & <>~p -> <>((p | <>p) & (~p | <>~p))");
  for (std::size_t n = 1; n <= 3; ++n)
    for (const auto& r : enumerate_frames(n, FrameConditions{}))
      CHECK(frame_validates(Frame::anonymous(r), instantiate("G1", g1).formula).valid ==
            frame_validates(Frame::anonymous(r), simple).valid);
}

TEST_CASE("schema errors and listings") {
  CHECK_THROWS_AS(instantiate("K", {P("p")}), ArityError);
  CHECK_THROWS_AS(instantiate("D", {P("p")}), ArityError);
  CHECK_THROWS_AS(instantiate("G2", {P("p"), P("q")}), ArityError);
  CHECK_THROWS_AS(instantiate("Fix", {}), ArityError);
  CHECK_THROWS_AS(instantiate("Fix", {P("r"), P("p")}), ArityError);
  CHECK_THROWS_AS(instantiate("Ind", {P("p")}), ArityError);
  CHECK_THROWS_AS(instantiate("Nope", {P("p")}), FormatError);
  CHECK_THROWS_AS(schema_usage("Nope"), FormatError);
  for (const auto& id : schema_ids()) {
    SchemaInstance si = default_instance(id);
    CHECK(si.schema == id);
    CHECK_FALSE(schema_usage(id).empty());
  }
  CHECK(default_instance("G2").args.size() == 3);
}

TEST_CASE("profiles") {
  LogicProfile p = parse_profile("K4t");
  CHECK((p.tangle && !p.mu && !p.universal && !p.conditions.serial));
  CHECK(p.schemas() == std::vector<std::string>{"K", "4", "Fix", "Ind", "4t"});
  p = parse_profile("S4t.UC");
  CHECK((p.conditions.reflexive && p.conditions.serial && p.conditions.connected && p.universal));
  CHECK(p.schemas() == std::vector<std::string>{"K", "4", "D", "T", "Fix", "Ind", "4t", "Tt", "U", "C"});
  p = parse_profile("KD4G_2t.U");
  CHECK(p.conditions.locally_connected == 2);
  CHECK((p.conditions.serial && !p.conditions.connected && p.universal));
  p = parse_profile("KD4G1t");
  CHECK(p.conditions.locally_connected == 1);
  CHECK(parse_profile("S4mu").mu);
  CHECK(parse_profile("S4μ").mu);
  CHECK_FALSE(parse_profile("S4").tangle);
  for (const char* bad : {"K4x", "S5", "K4G0t", "K4t.V", ""}) CHECK_THROWS_AS(parse_profile(bad), FormatError);

  CHECK_THROWS_AS(require_fragment(P("<t>{p}"), parse_profile("K4")), FragmentError);
  CHECK_THROWS_AS(require_fragment(P("A p"), parse_profile("K4t")), FragmentError);
  CHECK_THROWS_AS(require_fragment(P("mu q. q"), parse_profile("K4t")), FragmentError);
  CHECK_NOTHROW(require_fragment(P("A <t>{p}"), parse_profile("K4t.U")));

  Frame f = fork_frame();
  CHECK(condition_violations(f.rel(), parse_profile("KD4G1").conditions) ==
        std::vector<std::string>{"locally 1-connected"});
  CHECK(condition_violations(f.rel(), parse_profile("S4.UC").conditions) ==
        std::vector<std::string>{"reflexive"});
}

TEST_CASE("frame validity examples") {
  Frame refl({"w"}, Relation(1, full_set(1)));
  CHECK(frame_validates(refl, P("[]p -> p")).valid);

  Validity v = frame_validates(fork_frame(), default_instance("G1").formula);
  CHECK_FALSE(v.valid);
  v = frame_validates(fork_frame(), instantiate("G1", {P("p"), P("~p")}).formula);
  REQUIRE_FALSE(v.valid);
  CHECK(v.witness->at("p") == singleton(3, 1));
  CHECK(v.failing_world == 0u);

  for (std::size_t n = 1; n <= 3; ++n)
    for (const auto& r : enumerate_frames(n, FrameConditions{}))
      CHECK(frame_validates(Frame::anonymous(r), default_instance("Fix").formula).valid);

  CHECK_THROWS_AS(frame_validates(fork_frame(), P("p & q & r & s"), 1000), BudgetExceeded);
}

TEST_CASE("frame enumeration") {
  // Non-isomorphic relations and transitive relations on n points.
  const std::size_t all_counts[] = {0, 2, 10, 104};
  const std::size_t trans_counts[] = {0, 2, 8, 39, 242, 1895};
  const std::size_t labelled_trans[] = {0, 2, 13, 171, 3994, 154303};
  for (std::size_t n = 1; n <= 3; ++n) CHECK(enumerate_frames(n, [](const Relation&) { return true; }).size() == all_counts[n]);
  for (std::size_t n = 1; n <= 5; ++n) {
    auto frames = enumerate_frames(n, FrameConditions{});
    CHECK(frames.size() == trans_counts[n]);
    std::size_t labelled = 0;
    for (const auto& r : frames) {
      auto o = orbit(r);
      CHECK(*o.begin() == rel_mask(r));
      labelled += o.size();
    }
    CHECK(labelled == labelled_trans[n]);
  }
  FrameConditions pre;
  pre.reflexive = true;
  CHECK(enumerate_frames(4, pre).size() == 33);
  CHECK_THROWS_AS(enumerate_frames(6, FrameConditions{}), BudgetExceeded);
}

TEST_CASE("bounded_sat examples") {
  SatOutcome out = bounded_sat(P("<t>{p, ~p}"), parse_profile("K4t"), 2);
  REQUIRE(out.model);
  CHECK(out.model->frame.size() == 2);
  CHECK(rel_mask(out.model->frame.rel()) == 0b1111);
  CHECK(out.model->val.at("p") == singleton(2, 0));
  CHECK(tangle_oracle(*out.model, 0, {P("p"), P("~p")}));

  out = bounded_sat(P("<>true & []false"), parse_profile("K4"), 5);
  CHECK_FALSE(out.model);
  CHECK(out.largest_size_tried == 5);

  out = bounded_sat(P("~p & []p & <>true"), parse_profile("S4"), 3);
  CHECK_FALSE(out.model);
  out = bounded_sat(P("<>p & <>~p & ~<>((p | <>p) & (~p | <>~p))"), parse_profile("KD4G1"), 4);
  CHECK_FALSE(out.model);

  CHECK_THROWS_AS(bounded_sat(P("<t>{p}"), parse_profile("K4"), 2), FragmentError);
  CHECK_THROWS_AS(bounded_sat(P("p"), parse_profile("K4"), 0), ArityError);
}

TEST_CASE("bounded_sat finds the least witness") {
  gen::Rng rng(61);
  gen::Ops ops;
  ops.tangle = true;
  gen::FormulaGen g({"p"}, ops);
  const char* profiles[] = {"K4t", "KD4t", "S4t", "K4G1t", "S4t.UC"};
  for (int i = 0; i < 60; ++i) {
    Formula f = g(rng, 3);
    LogicProfile prof = parse_profile(profiles[i % 5]);
    if (prof.universal) f = conj(f, P("E ~p"));
    std::set<std::string> fa = free_atoms(f);
    std::vector<std::string> atoms(fa.begin(), fa.end());
    auto expect = least_model(f, prof.conditions, 3, atoms);
    SatOutcome out = bounded_sat(f, prof, 3);
    REQUIRE_MESSAGE(out.model.has_value() == expect.has_value(), to_string(f));
    if (!expect) continue;
    CHECK_MESSAGE(out.model->frame.rel() == expect->frame.rel(), to_string(f));
    CHECK(out.model->val == expect->val);
    CHECK(out.world == model_check(*expect, f).find_first());
  }
}

TEST_CASE("figure 3 fixture") {
  KripkeModel m0 = figure3_model(0);
  CHECK(m0.frame.worlds() == std::vector<std::string>{"a0", "b0", "b1"});
  CHECK(model_check(m0, P("r & p0")).test(m0.frame.index_of("b0")));
  KripkeModel m2 = figure3_model(2);
  CHECK(model_check(m2, P("<>p0 & <>r & <>g")).test(m2.frame.index_of("a0")));
  CHECK(model_check(m2, P("b")).test(m2.frame.index_of("b2")));
  CHECK(model_check(m2, P("p1")).test(m2.frame.index_of("b3")));
  for (std::size_t m = 0; m <= 6; ++m) {
    KripkeModel fig = figure3_model(m);
    CHECK(fig.frame.size() == 2 * m + 3);
    CHECK(is_reflexive(fig.frame.rel()));
    CHECK(is_transitive(fig.frame.rel()));
    CHECK(is_connected(fig.frame.rel()));
    for (const auto& s : sigma_formulas(m / 3)) CHECK_MESSAGE(model_check(fig, s.formula).all(), s.label);
  }
  auto sig = sigma_formulas(1);
  std::vector<std::string> labels;
  for (const auto& s : sig) labels.push_back(s.label);
  CHECK(labels == std::vector<std::string>{"Sigma1(0)", "Sigma1(1)", "Sigma2(0,1)", "Sigma3", "Sigma4(0)",
                                           "Sigma4(1)"});
}

TEST_CASE("failing frames") {
  std::set<std::string> schemas;
  for (const auto& ff : failing_frames()) {
    schemas.insert(ff.schema);
    CHECK(ff.frame.size() <= 3);
    CHECK_FALSE_MESSAGE(frame_validates(ff.frame, ff.instance).valid, ff.schema);
  }
  CHECK(schemas == std::set<std::string>{"4", "T", "Tt", "D", "C", "G1"});
}

TEST_CASE("SAT solver agrees with brute force on random CNF") {
  gen::Rng rng(62);
  for (int i = 0; i < 300; ++i) {
    const int vars = 3 + static_cast<int>(gen::pick(rng, 8));
    const std::size_t clauses = 2 + gen::pick(rng, 5 * vars);
    std::vector<std::vector<int>> cnf;
    for (std::size_t c = 0; c < clauses; ++c) {
      std::vector<int> cl;
      std::size_t len = 1 + gen::pick(rng, 3);
      for (std::size_t k = 0; k < len; ++k) {
        int v = 1 + static_cast<int>(gen::pick(rng, vars));
        cl.push_back(gen::coin(rng) ? v : -v);
      }
      cnf.push_back(cl);
    }
    std::vector<int> assumptions;
    if (gen::coin(rng)) assumptions.push_back(gen::coin(rng) ? 1 : -1);

    auto satisfied = [&](std::uint32_t a) {
      for (int lit : assumptions)
        if (((a >> (std::abs(lit) - 1)) & 1u) != (lit > 0)) return false;
      for (const auto& cl : cnf)
        if (std::none_of(cl.begin(), cl.end(), [&](int l) { return ((a >> (std::abs(l) - 1)) & 1u) == (l > 0); }))
          return false;
      return true;
    };
    bool expect = false;
    for (std::uint32_t a = 0; a < (1u << vars) && !expect; ++a) expect = satisfied(a);

    sat::Solver s;
    for (int v = 0; v < vars; ++v) s.new_var();
    for (const auto& cl : cnf) s.add_clause(cl);
    sat::Result res = s.solve(assumptions);
    REQUIRE(res != sat::Result::Unknown);
    CHECK((res == sat::Result::Sat) == expect);
    if (res == sat::Result::Sat) {
      std::uint32_t a = 0;
      for (int v = 1; v <= vars; ++v)
        if (s.model_value(v)) a |= 1u << (v - 1);
      CHECK(satisfied(a));
    }
    // A failed assumption leaves the clause set usable.
    CHECK((s.solve() == sat::Result::Sat) ==
          [&] {
            auto saved = assumptions;
            assumptions.clear();
            bool any = false;
            for (std::uint32_t a = 0; a < (1u << vars) && !any; ++a) any = satisfied(a);
            assumptions = saved;
            return any;
          }());
  }
}

TEST_CASE("circuit gates") {
  sat::Solver s;
  sat::Circuit c(s);
  int a = c.var(), b = c.var();
  int g = c.both(a, b);
  CHECK(c.both(a, b) == g);
  c.require(c.either(a, b));
  c.require(-g);
  REQUIRE(s.solve({a}) == sat::Result::Sat);
  CHECK_FALSE(s.model_value(b));
  CHECK(s.solve({a, b}) == sat::Result::Unsat);
  CHECK(c.all({}) == c.true_lit());
  CHECK(c.any({}) == c.false_lit());
}
