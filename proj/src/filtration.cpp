#include "tangle/filtration.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace tangle {

const char* mode_name(FiltrationMode m) { return m == FiltrationMode::Standard ? "standard" : "refined"; }

namespace {

// Atom members of Φ that no binder in Φ binds.
std::vector<std::string> scope_atoms(const ClosureSet& phi) {
  std::set<std::string> bound, atoms;
  for (const auto& f : phi.formulas()) {
    if (f.is_binder()) bound.insert(f.name());
    if (f.is(Op::Atom)) atoms.insert(f.name());
  }
  std::vector<std::string> out;
  for (const auto& a : atoms)
    if (!bound.count(a)) out.push_back(a);
  return out;
}

std::vector<WorldSet> truth_table(const KripkeModel& m, const ClosureSet& phi) {
  std::vector<WorldSet> t;
  t.reserve(phi.size());
  for (const auto& f : phi.formulas()) t.push_back(model_check(m, f));
  return t;
}

// M(x) as a bitmask over the positions of maximal clusters.
std::vector<std::vector<bool>> maximal_views(const Relation& r, const ClusterDecomposition& cd,
                                             const std::vector<std::size_t>& maximal) {
  std::vector<std::vector<bool>> out(r.size(), std::vector<bool>(maximal.size(), false));
  for (std::size_t x = 0; x < r.size(); ++x)
    for (std::size_t k = 0; k < maximal.size(); ++k)
      out[x][k] = cd.clusters[maximal[k]].is_subset_of(r[x]);
  return out;
}

std::string set_names(const std::vector<std::string>& names, const WorldSet& s) {
  std::string out = "{";
  bool first = true;
  for_each_member(s, [&](std::size_t i) {
    out += (first ? "" : ",") + names[i];
    first = false;
  });
  return out + "}";
}

}  // namespace

KripkeModel FiltrationResult::model_on(const Relation& r) const {
  return {Frame(quotient_worlds, r), quotient_val};
}

KripkeModel FiltrationResult::phi_model() const { return model_on(r_phi); }

FiltrationResult filtrate(const KripkeModel& m, const ClosureSet& phi, FiltrationMode mode) {
  const Relation& r = m.frame.rel();
  if (!is_transitive(r)) throw FrameError("filtration needs a transitive model");
  const std::size_t n = m.frame.size();
  FiltrationResult fr;
  fr.mode = mode;
  fr.truth = truth_table(m, phi);

  std::vector<std::vector<bool>> views;
  if (mode == FiltrationMode::Refined) {
    auto cd = cluster_decomposition(r);
    views = maximal_views(r, cd, cd.maximal());
  }
  std::map<std::vector<bool>, std::size_t> by_signature;
  fr.quotient_map.assign(n, 0);
  for (std::size_t x = 0; x < n; ++x) {
    std::vector<bool> sig;
    sig.reserve(phi.size() + (views.empty() ? 0 : views[x].size()));
    for (const auto& t : fr.truth) sig.push_back(t.test(x));
    if (!views.empty()) sig.insert(sig.end(), views[x].begin(), views[x].end());
    auto [it, fresh] = by_signature.emplace(std::move(sig), fr.classes.size());
    if (fresh) {
      fr.classes.push_back(WorldSet(n));
      fr.quotient_worlds.push_back("|" + m.frame.world(x) + "|");
    }
    fr.classes[it->second].set(x);
    fr.quotient_map[x] = it->second;
  }
  const std::size_t q = fr.classes.size();
  fr.r_lambda.assign(q, WorldSet(q));
  for (std::size_t x = 0; x < n; ++x)
    for_each_member(r[x], [&](std::size_t y) { fr.r_lambda[fr.quotient_map[x]].set(fr.quotient_map[y]); });
  fr.r_phi = transitive_closure(fr.r_lambda);
  for (const auto& a : scope_atoms(phi)) {
    WorldSet ext = m.value(a);
    WorldSet qs(q);
    for (std::size_t c = 0; c < q; ++c)
      if (ext.test(fr.classes[c].find_first())) qs.set(c);
    fr.quotient_val.emplace(a, std::move(qs));
  }
  return fr;
}

UntangleResult untangle(const FiltrationResult& fr, const KripkeModel& m, const ClosureSet& phi,
                        bool reflexive_mode) {
  const Relation& r = m.frame.rel();
  const std::size_t q = fr.size();
  auto cd = cluster_decomposition(fr.r_phi);
  UntangleResult ut;
  ut.reflexive_mode = reflexive_mode;
  ut.phi_clusters = cd.clusters;
  ut.degenerate = cd.degenerate;
  ut.cluster_of = cd.cluster_of;

  std::vector<std::size_t> tangles;
  for (std::size_t i = 0; i < phi.size(); ++i)
    if (phi.formulas()[i].is_tangle()) tangles.push_back(i);

  for (std::size_t c = 0; c < cd.clusters.size(); ++c) {
    const WorldSet& cluster = cd.clusters[c];
    bool found = false;
    for (std::size_t y = 0; y < m.frame.size() && !found; ++y) {
      if (!cluster.test(fr.quotient_map[y])) continue;
      WorldSet nuc(q);
      for_each_member(r[y], [&](std::size_t z) {
        if (cluster.test(fr.quotient_map[z])) nuc.set(fr.quotient_map[z]);
      });
      // realised at w: true at a (any) member of class w
      auto realised_in_nucleus = [&](std::size_t formula_index) {
        bool hit = false;
        for_each_member(nuc, [&](std::size_t w) {
          if (fr.truth[formula_index].test(fr.classes[w].find_first())) hit = true;
        });
        return hit;
      };
      bool ok = true;
      for (auto ti : tangles) {
        if (fr.truth[ti].test(y)) continue;
        const Formula& t = phi.formulas()[ti];
        bool some_unrealised = std::any_of(t.children().begin(), t.children().end(), [&](const Formula& g) {
          return !realised_in_nucleus(phi.index_of(g));
        });
        if (!some_unrealised) {
          ok = false;
          break;
        }
      }
      if (ok) {
        found = true;
        ut.critical_point.push_back(y);
        ut.nucleus.push_back(std::move(nuc));
      }
    }
    if (!found)
      throw FrameError("no critical point for r_phi cluster " + set_names(fr.quotient_worlds, cluster));
  }

  ut.r_t.assign(q, WorldSet(q));
  for (std::size_t u = 0; u < q; ++u) {
    std::size_t c = cd.cluster_of[u];
    ut.r_t[u] = fr.r_phi[u] - cd.clusters[c];
    ut.r_t[u] |= ut.nucleus[c];
    if (reflexive_mode && !ut.nucleus[c].test(u)) ut.r_t[u].set(u);
  }
  return ut;
}

ReductionReport verify_reduction(const FiltrationResult& fr, const UntangleResult& ut,
                                 const KripkeModel& m, const ClosureSet& phi) {
  ReductionReport rep;
  for (std::size_t i = 0; i < phi.size(); ++i) {
    const Formula& f = phi.formulas()[i];
    WorldSet ext = model_check(ut.r_t, fr.quotient_val, f);
    for (std::size_t x = 0; x < m.frame.size(); ++x) {
      ++rep.checked;
      bool source = fr.truth[i].test(x);
      if (ext.test(fr.quotient_map[x]) != source) {
        rep.holds = false;
        rep.failing_formula = f;
        rep.failing_world = x;
        rep.truth_at_source = source;
        rep.message = to_string(f) + " is " + (source ? "true" : "false") + " at " + m.frame.world(x) +
                      " but " + (source ? "false" : "true") + " at " +
                      fr.quotient_worlds[fr.quotient_map[x]] + " in the untangled model";
        return rep;
      }
    }
  }
  return rep;
}

ConditionReport check_reduction_conditions(const FiltrationResult& fr, const Relation& r,
                                           const KripkeModel& m, const ClosureSet& phi) {
  ConditionReport rep;
  const std::size_t n = m.frame.size();
  const auto& names = m.frame.worlds();
  for (const auto& [a, qs] : fr.quotient_val) {
    WorldSet ext = m.value(a);
    for (std::size_t x = 0; x < n; ++x)
      if (ext.test(x) != qs.test(fr.quotient_map[x])) {
        rep.r1 = false;
        rep.violations.push_back("(r1) atom " + a + " at " + names[x]);
      }
  }
  for (std::size_t c = 0; c < fr.size(); ++c)
    for (std::size_t i = 0; i < phi.size(); ++i) {
      WorldSet in = fr.truth[i] & fr.classes[c];
      if (in.any() && in != fr.classes[c]) {
        rep.r2 = false;
        rep.violations.push_back("(r2) class " + fr.quotient_worlds[c] + " disagrees on " +
                                 to_string(phi.formulas()[i]));
      }
    }
  for (std::size_t x = 0; x < n; ++x)
    for_each_member(m.frame.successors(x), [&](std::size_t y) {
      if (!r[fr.quotient_map[x]].test(fr.quotient_map[y])) {
        rep.r3 = false;
        rep.violations.push_back("(r3) " + names[x] + " R " + names[y]);
      }
    });

  struct Dia {
    std::size_t whole, arg;
  };
  std::vector<std::size_t> tangles, boxes;
  std::vector<Dia> dias;
  for (std::size_t i = 0; i < phi.size(); ++i) {
    const Formula& f = phi.formulas()[i];
    if (f.is_tangle()) tangles.push_back(i);
    if (f.is(Op::Box) || f.is(Op::BoxD)) boxes.push_back(i);
    if (const Formula* a = diamond_argument(f))
      if (phi.contains(*a)) dias.push_back({i, phi.index_of(*a)});
  }
  auto holds = [&](std::size_t i, std::size_t x) { return fr.truth[i].test(x); };
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      if (!r[fr.quotient_map[x]].test(fr.quotient_map[y])) continue;
      auto fail = [&](const std::string& what, std::size_t i) {
        rep.r4 = false;
        if (rep.violations.size() < 32)
          rep.violations.push_back("(r4) " + what + " " + to_string(phi.formulas()[i]) + " from " +
                                   names[y] + " to " + names[x]);
      };
      for (auto t : tangles)
        if (holds(t, y) && !holds(t, x)) fail("tangle", t);
      for (const auto& d : dias)
        if ((holds(d.arg, y) || holds(d.whole, y)) && !holds(d.whole, x)) fail("diamond", d.whole);
      for (auto b : boxes) {
        std::size_t arg = phi.index_of(phi.formulas()[b].child());
        if (holds(b, x) && !(holds(arg, y) && holds(b, y))) fail("box", b);
      }
    }
  return rep;
}

Formula CharacteristicData::chi(std::uint64_t s) const {
  std::vector<Formula> parts;
  for (std::size_t i = 0; i < at.size(); ++i) parts.push_back((s >> i) & 1u ? at[i] : neg(at[i]));
  return conj_all(parts);
}

Formula CharacteristicData::cone(std::size_t k) const { return dia(box_star(alpha.at(k))); }

CharacteristicData characteristic_formulas(const KripkeModel& m, const ClosureSet& phi) {
  const Relation& r = m.frame.rel();
  const std::size_t n = m.frame.size();
  CharacteristicData cd;
  for (const auto& a : scope_atoms(phi)) cd.at.push_back(atom(a));
  cd.at.push_back(dia(top()));
  if (cd.at.size() > 12) throw BudgetExceeded("too many atoms for atomic-type formulas");
  const std::uint64_t types = std::uint64_t{1} << cd.at.size();

  std::vector<WorldSet> at_ext;
  for (const auto& a : cd.at) at_ext.push_back(model_check(m, a));
  cd.type_of.assign(n, 0);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t i = 0; i < cd.at.size(); ++i)
      if (at_ext[i].test(x)) cd.type_of[x] |= std::uint64_t{1} << i;

  auto fail = [&](bool& flag, const std::string& msg) {
    flag = false;
    if (cd.failures.size() < 32) cd.failures.push_back(msg);
  };

  for (std::uint64_t s = 0; s < types; ++s) {
    WorldSet ext = model_check(m, cd.chi(s));
    for (std::size_t x = 0; x < n; ++x)
      if (ext.test(x) != (cd.type_of[x] == s))
        fail(cd.chi_defines_types, "chi(" + std::to_string(s) + ") at " + m.frame.world(x));
  }

  cd.clusters = cluster_decomposition(r);
  cd.maximal = cd.clusters.maximal();
  for (auto c : cd.maximal) {
    std::set<std::uint64_t> ts;
    for_each_member(cd.clusters.clusters[c], [&](std::size_t x) { ts.insert(cd.type_of[x]); });
    cd.delta.emplace_back(ts.begin(), ts.end());
    std::vector<Formula> parts;
    for (std::uint64_t s = 0; s < types; ++s) {
      Formula d = dia_star(cd.chi(s));
      parts.push_back(ts.count(s) ? d : neg(d));
    }
    cd.alpha.push_back(conj_all(parts));
  }

  auto views = maximal_views(r, cd.clusters, cd.maximal);
  cd.m_of.resize(n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t k = 0; k < cd.maximal.size(); ++k)
      if (views[x][k]) cd.m_of[x].push_back(k);

  std::vector<WorldSet> truth = truth_table(m, phi);
  for (std::size_t x = 0; x < n; ++x) {
    std::vector<Formula> g, mu_parts;
    for (std::size_t i = 0; i < phi.size(); ++i)
      g.push_back(truth[i].test(x) ? phi.formulas()[i] : neg(phi.formulas()[i]));
    for (std::size_t k = 0; k < cd.maximal.size(); ++k)
      mu_parts.push_back(views[x][k] ? cd.cone(k) : neg(cd.cone(k)));
    cd.gamma.push_back(conj_all(g));
    cd.mu.push_back(conj_all(mu_parts));
    cd.phi_x.push_back(conj(cd.gamma.back(), cd.mu.back()));
  }

  // Check the defining properties on m itself.
  WorldSet maximal_worlds(n);
  for (auto c : cd.maximal) maximal_worlds |= cd.clusters.clusters[c];
  std::vector<WorldSet> cone_ext;
  for (std::size_t k = 0; k < cd.maximal.size(); ++k) {
    WorldSet a = model_check(m, cd.alpha[k]);
    const WorldSet& members_k = cd.clusters.clusters[cd.maximal[k]];
    for_each_member(maximal_worlds, [&](std::size_t x) {
      if (members_k.test(x) != a.test(x))
        fail(cd.alpha_defines_maximal, "alpha of maximal cluster " + std::to_string(k) + " at " +
                                           m.frame.world(x));
    });
    cone_ext.push_back(model_check(m, cd.cone(k)));
    for (std::size_t x = 0; x < n; ++x)
      if (views[x][k] != cone_ext[k].test(x))
        fail(cd.cone_defines_inclusion, "cone of maximal cluster " + std::to_string(k) + " at " +
                                            m.frame.world(x));
  }
  for (std::size_t x = 0; x < n; ++x)
    for (const auto& comp : path_components(r, r[x])) {
      WorldSet ext = model_check(m, alpha_of_component(cd, comp));
      for_each_member(r[x], [&](std::size_t y) {
        if (comp.test(y) != ext.test(y))
          fail(cd.alpha_p_defines_components, "alpha(P) for a component of R(" + m.frame.world(x) +
                                                  ") at " + m.frame.world(y));
      });
    }
  for (std::size_t x = 0; x < n; ++x) {
    WorldSet ext = model_check(m, cd.phi_x[x]);
    for (std::size_t y = 0; y < n; ++y) {
      bool same = views[x] == views[y];
      for (std::size_t i = 0; i < phi.size() && same; ++i) same = truth[i].test(x) == truth[i].test(y);
      if (same != ext.test(y))
        fail(cd.phi_x_defines_classes, "phi_" + m.frame.world(x) + " at " + m.frame.world(y));
    }
  }
  return cd;
}

Formula alpha_of_component(const CharacteristicData& cd, const WorldSet& component) {
  std::vector<Formula> parts;
  for (std::size_t k = 0; k < cd.maximal.size(); ++k)
    if (cd.clusters.clusters[cd.maximal[k]].is_subset_of(component)) parts.push_back(cd.cone(k));
  return disj_all(parts);
}

Formula defining_formula(const CharacteristicData& cd, const FiltrationResult& fr,
                         const WorldSet& quotient_subset) {
  std::vector<Formula> parts;
  for_each_member(quotient_subset, [&](std::size_t w) { parts.push_back(cd.phi_x[fr.classes[w].find_first()]); });
  return disj_all(parts);
}

FrameSummary summarize(const Relation& r) {
  FrameSummary s;
  s.serial = is_serial(r);
  s.reflexive = is_reflexive(r);
  WorldSet refl(r.size());
  for (std::size_t x = 0; x < r.size(); ++x)
    if (r[x].test(x)) refl.set(x);
  s.sees_reflexive = std::all_of(r.begin(), r.end(), [&](const WorldSet& succ) { return succ.intersects(refl); });
  s.components = path_components(r).size();
  s.local_bound = local_component_bound(r);
  return s;
}

PreservationReport preservation_report(const FiltrationResult& fr, const UntangleResult& ut,
                                       const KripkeModel& m, const ClosureSet& phi) {
  PreservationReport rep;
  rep.source = summarize(m.frame.rel());
  rep.phi = summarize(fr.r_phi);
  rep.untangled = summarize(ut.r_t);
  rep.path_components_equal = path_components(fr.r_phi) == path_components(ut.r_t);
  std::size_t bound = std::max({rep.source.local_bound, rep.phi.local_bound, rep.untangled.local_bound});
  for (std::size_t k = std::max<std::size_t>(bound, 1); k <= 4; ++k) rep.locally_n_connected_for.push_back(k);
  const Formula dt = dia(top());
  if (!phi.contains(dt)) rep.notes.push_back("<>true is not in the closure; path components may differ");
  if (fr.mode != FiltrationMode::Refined)
    rep.notes.push_back("standard filtration; local connectivity is not guaranteed to survive");
  else if (!phi.contains(dt))
    rep.notes.push_back("refined filtration without <>true in the closure; local connectivity not guaranteed");
  return rep;
}

}  // namespace tangle
