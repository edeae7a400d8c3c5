#include <doctest.h>

#include "support/generators.hpp"
#include "tangle/kripke.hpp"
#include "tangle/logics.hpp"
#include "tangle/translate.hpp"

using namespace tangle;

namespace {

Frame chain3() { return Frame::from_pairs({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}}); }

Frame fork(bool reflexive_root) {
  std::vector<std::pair<std::string, std::string>> rel{{"r", "x"}, {"r", "y"}, {"x", "x"}, {"y", "y"}};
  if (reflexive_root) rel.emplace_back("r", "r");
  return Frame::from_pairs({"r", "x", "y"}, rel);
}

KripkeModel two_cluster() {
  Frame f = Frame::from_pairs({"u", "v"}, {{"u", "u"}, {"u", "v"}, {"v", "u"}, {"v", "v"}});
  return {f, {{"p", from_mask(2, 0b01)}, {"q", from_mask(2, 0b10)}}};
}

std::uint64_t mask_of(const KripkeModel& m, const char* text) { return to_mask(model_check(m, parse(text))); }

}  // namespace

TEST_CASE("frame validation") {
  CHECK_THROWS_AS(Frame({}, {}), FormatError);
  CHECK_THROWS_AS(Frame::from_pairs({"a"}, {{"a", "b"}}), FormatError);
  CHECK_THROWS_AS(Frame::from_pairs({"a", "a"}, {}), FormatError);
  CHECK(chain3().index_of("c") == 2);
  CHECK_THROWS_AS(chain3().index_of("z"), FormatError);
}

TEST_CASE("relation properties") {
  auto p = relation_properties(Frame({"w"}, Relation(1, empty_set(1))));
  CHECK((!p.reflexive && p.transitive && !p.serial));
  p = relation_properties(Frame::from_pairs({"w"}, {{"w", "w"}}));
  CHECK((p.reflexive && p.transitive && p.serial));
  CHECK_FALSE(relation_properties(chain3()).transitive);
}

TEST_CASE("closures") {
  FrameClosures c = closures(chain3());
  CHECK(c.transitive_closure.related(0, 2));
  CHECK_FALSE(c.transitive_closure.related(0, 0));
  CHECK(c.refl_trans_closure.related(1, 1));
  CHECK(closures(Frame({"a"}, Relation(1, empty_set(1)))).refl_trans_closure.related(0, 0));
  Frame cyc = Frame::from_pairs({"a", "b"}, {{"a", "b"}, {"b", "a"}});
  Relation t = closures(cyc).transitive_closure.rel();
  CHECK(to_mask(t[0]) == 0b11);
  CHECK(to_mask(t[1]) == 0b11);
  CHECK(to_mask(converse(chain3().rel())[2]) == 0b010);
}

TEST_CASE("cluster decomposition") {
  auto single = cluster_decomposition(Relation(1, empty_set(1)));
  CHECK(single.clusters.size() == 1);
  CHECK(single.degenerate[0]);
  CHECK(single.rank[0] == 1);

  auto total = cluster_decomposition(Relation(2, full_set(2)));
  CHECK(total.clusters.size() == 1);
  CHECK_FALSE(total.degenerate[0]);

  auto ch = cluster_decomposition(transitive_closure(chain3().rel()));
  REQUIRE(ch.clusters.size() == 3);
  CHECK(ch.rank == std::vector<std::size_t>{3, 2, 1});
  CHECK(ch.maximal() == std::vector<std::size_t>{2});
  CHECK_THROWS_AS(cluster_decomposition(chain3()), FrameError);
}

TEST_CASE("path components and local connectivity") {
  Frame isolated = Frame::from_pairs({"u", "v"}, {{"u", "u"}, {"v", "v"}});
  CHECK(path_components(isolated).size() == 2);
  Frame vee = Frame::from_pairs({"a", "b", "c"}, {{"a", "b"}, {"c", "b"}});
  CHECK(path_components(vee).size() == 1);
  Frame f = fork(false);
  CHECK(path_components(f).size() == 1);
  CHECK(path_components(f.rel(), f.successors(0)).size() == 2);
  CHECK_FALSE(locally_n_connected(f, 1));
  CHECK(locally_n_connected(f, 2));
  CHECK(local_component_bound(f.rel()) == 2);
  CHECK(locally_n_connected(fork(true), 1));  // r itself joins x and y
  CHECK(locally_n_connected(Frame::from_pairs({"w"}, {{"w", "w"}}), 1));
  CHECK(locally_n_connected(Frame({"w"}, Relation(1, empty_set(1))), 1));
}

TEST_CASE("model checking examples") {
  KripkeModel one{Frame::from_pairs({"w"}, {{"w", "w"}}), {{"p", full_set(1)}}};
  CHECK(model_check(one, parse("[]p")).all());
  CHECK(model_check(one, parse("<t>{p}")).all());

  CHECK(mask_of(two_cluster(), "<t>{p, q}") == 0b11);
  CHECK(mask_of(two_cluster(), "mu q. q") == 0);
  CHECK(mask_of(two_cluster(), "nu q. q") == 0b11);
  CHECK(mask_of(two_cluster(), "A p") == 0);
  CHECK(mask_of(two_cluster(), "E p") == 0b11);

  KripkeModel fig = figure3_model(2);
  CHECK(model_check(fig, parse("<>p0 & <>r & <>g")).test(fig.frame.index_of("a0")));

  KripkeModel ch{chain3(), {}};
  CHECK_THROWS_AS(model_check(ch, parse("<t>{p}")), FrameError);
  CHECK(model_check(ch, parse("<><>true")).test(0));  // non-tangle formulas are fine
}

TEST_CASE("tangle oracle examples") {
  KripkeModel one{Frame::from_pairs({"w"}, {{"w", "w"}}), {{"p", full_set(1)}}};
  CHECK(tangle_oracle(one, 0, {atom("p")}));
  KripkeModel dead{Frame({"w"}, Relation(1, empty_set(1))), {{"p", full_set(1)}}};
  CHECK_FALSE(tangle_oracle(dead, 0, {atom("p")}));
  CHECK(tangle_oracle(two_cluster(), 0, {atom("p"), atom("q")}));
}

TEST_CASE("generated submodels") {
  KripkeModel fig = figure3_model(4);
  KripkeModel sub = generated_submodel(fig, fig.frame.index_of("a3"));
  CHECK(sub.frame.worlds() == std::vector<std::string>{"a3", "b3", "b4"});
  KripkeModel leaf{Frame({"a", "b"}, {from_mask(2, 0b10), empty_set(2)}), {}};
  CHECK(generated_submodel(leaf, 1).frame.size() == 1);
  CHECK(generated_submodel(leaf, 0).frame.size() == 2);
}

TEST_CASE("dot export groups clusters by rank") {
  KripkeModel m{Frame::from_pairs({"a", "b"}, {{"a", "b"}, {"b", "b"}}), {{"p", from_mask(2, 0b10)}}};
  std::string dot = to_dot(m);
  CHECK(dot.find("digraph") == 0);
  CHECK(dot.find("rank=same") != std::string::npos);
  CHECK(dot.find("\"a\" -> \"b\"") != std::string::npos);
  CHECK(dot.find("b\\np") != std::string::npos);
}

TEST_CASE("property: tangle agreement and Kripke identities") {
  gen::Rng rng(21);
  gen::Ops ops;
  ops.tangle = true;
  gen::FormulaGen member({"p", "q"}, ops);
  for (int i = 0; i < 200; ++i) {
    gen::ModelShape shape;
    shape.max_worlds = 8;
    KripkeModel m = gen::random_model(rng, shape, {"p", "q"});
    std::vector<Formula> delta{member(rng, 2)};
    if (gen::coin(rng)) delta.push_back(member(rng, 2));
    Formula t = tangle_of(delta);
    WorldSet ext = model_check(m, t);
    WorldSet enc = model_check(m, to_mu(t));
    CHECK(ext == enc);
    for (std::size_t x = 0; x < m.frame.size(); ++x) CHECK(ext.test(x) == tangle_oracle(m, x, delta));
    CHECK(ext == model_check(m, tangle_d_of(delta)));
    CHECK(model_check(m, box(delta[0])) == model_check(m, box_d(delta[0])));

    // ⟨t⟩{φ} iff some reflexive successor satisfies φ.
    WorldSet phi = model_check(m, delta[0]);
    WorldSet single = model_check(m, tangle_of({delta[0]}));
    for (std::size_t x = 0; x < m.frame.size(); ++x) {
      bool expect = false;
      for_each_member(m.frame.successors(x), [&](std::size_t y) {
        if (m.frame.related(y, y) && phi.test(y)) expect = true;
      });
      CHECK(single.test(x) == expect);
    }
  }
}

TEST_CASE("property: on reflexive transitive frames <t>{φ} is ◇φ") {
  gen::Rng rng(22);
  gen::Ops ops;
  gen::FormulaGen g({"p", "q"}, ops);
  for (int i = 0; i < 100; ++i) {
    gen::ModelShape shape;
    shape.reflexive = true;
    KripkeModel m = gen::random_model(rng, shape, {"p", "q"});
    Formula f = g(rng, 2);
    CHECK(model_check(m, tangle_of({f})) == model_check(m, dia(f)));
  }
}

TEST_CASE("property: generated submodels preserve universal-free formulas") {
  gen::Rng rng(23);
  gen::Ops ops;
  ops.tangle = ops.fixpoint = true;
  gen::FormulaGen g({"p", "q"}, ops);
  for (int i = 0; i < 100; ++i) {
    KripkeModel m = gen::random_model(rng, {}, {"p", "q"});
    std::size_t w = gen::pick(rng, m.frame.size());
    KripkeModel sub = generated_submodel(m, w);
    Formula f = g(rng, 3);
    WorldSet big = model_check(m, f), small = model_check(sub, f);
    for (std::size_t i2 = 0; i2 < sub.frame.size(); ++i2)
      CHECK(small.test(i2) == big.test(m.frame.index_of(sub.frame.world(i2))));
  }
}

TEST_CASE("property: least fixpoints are least pre-fixed points") {
  gen::Rng rng(24);
  gen::Ops ops;
  gen::FormulaGen g({"p"}, ops);
  for (int i = 0; i < 60; ++i) {
    gen::ModelShape shape;
    shape.max_worlds = 4;
    shape.transitive = gen::coin(rng);
    KripkeModel m = gen::random_model(rng, shape, {"p"});
    const std::size_t n = m.frame.size();
    // Body positive in q: ψ ∨ ◇(q ∧ χ) or ψ ∨ □q.
    Formula psi = g(rng, 2), chi = g(rng, 1);
    Formula body = gen::coin(rng) ? disj(psi, dia(conj(atom("q"), chi))) : disj(psi, box(atom("q")));
    EvalStats stats;
    WorldSet lfp = model_check(m.frame.rel(), m.val, mu("q", body), &stats);
    CHECK(stats.max_fixpoint_iterations <= n + 1);
    WorldSet meet = full_set(n);
    for (std::uint64_t s = 0; s < (1u << n); ++s) {
      Valuation v = m.val;
      v["q"] = from_mask(n, s);
      WorldSet image = model_check(m.frame.rel(), v, body);
      if (image.is_subset_of(from_mask(n, s))) meet &= from_mask(n, s);
    }
    CHECK(lfp == meet);
    Valuation v = m.val;
    v["q"] = lfp;
    CHECK(model_check(m.frame.rel(), v, body) == lfp);
  }
}
