#include "tangle/logics.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <regex>
#include <set>

#include "tangle/sat.hpp"

namespace tangle {

namespace {

std::string canonical_schema(std::string_view s) {
  std::string id(s);
  if (id == "4_t") return "4t";
  if (id == "T_t") return "Tt";
  if (id.size() > 2 && id.rfind("G_", 0) == 0) return "G" + id.substr(2);
  return id;
}

// n for "G<n>", 0 if not a G schema.
std::size_t g_index(const std::string& id) {
  if (id.size() < 2 || id[0] != 'G') return 0;
  std::size_t n = 0;
  for (std::size_t i = 1; i < id.size(); ++i) {
    if (id[i] < '0' || id[i] > '9') return 0;
    n = n * 10 + static_cast<std::size_t>(id[i] - '0');
    if (n > 64) return 0;
  }
  return n;
}

void expect_arity(const std::string& id, const std::vector<Formula>& args, std::size_t n) {
  if (args.size() != n)
    throw ArityError(id + " takes " + std::to_string(n) + " argument(s), got " +
                     std::to_string(args.size()));
}

void expect_at_least(const std::string& id, const std::vector<Formula>& args, std::size_t n) {
  if (args.size() < n)
    throw ArityError(id + " takes at least " + std::to_string(n) + " argument(s), got " +
                     std::to_string(args.size()));
}

std::vector<Formula> tail(const std::vector<Formula>& v) { return {v.begin() + 1, v.end()}; }

}  // namespace

Formula q_formula(const std::vector<Formula>& phis, std::size_t i) {
  std::vector<Formula> parts{phis.at(i)};
  for (std::size_t j = 0; j < phis.size(); ++j)
    if (j != i) parts.push_back(neg(phis[j]));
  return conj_all(parts);
}

SchemaInstance instantiate(std::string_view schema, const std::vector<Formula>& args) {
  std::string id = canonical_schema(schema);
  auto done = [&](Formula f) { return SchemaInstance{id, args, std::move(f)}; };

  if (id == "K") {
    expect_arity(id, args, 2);
    return done(implies(box(implies(args[0], args[1])), implies(box(args[0]), box(args[1]))));
  }
  if (id == "4") {
    expect_arity(id, args, 1);
    return done(implies(dia(dia(args[0])), dia(args[0])));
  }
  if (id == "T") {
    expect_arity(id, args, 1);
    return done(implies(args[0], dia(args[0])));
  }
  if (id == "D") {
    expect_arity(id, args, 0);
    return done(dia(top()));
  }
  if (id == "U") {
    expect_arity(id, args, 1);
    return done(implies(forall(args[0]), box(args[0])));
  }
  if (id == "C") {
    expect_arity(id, args, 1);
    const Formula& a = args[0];
    return done(implies(forall(disj(box_star(a), box_star(neg(a)))),
                        disj(forall(a), forall(neg(a)))));
  }
  if (id == "Fix") {
    expect_at_least(id, args, 1);
    std::vector<Formula> gamma = args.size() == 1 ? args : tail(args);
    Formula t = tangle_of(gamma);
    if (std::find(gamma.begin(), gamma.end(), args[0]) == gamma.end())
      throw ArityError("Fix: " + to_string(args[0]) + " is not a member of " + to_string(t));
    return done(implies(t, dia(conj(args[0], t))));
  }
  if (id == "Ind") {
    expect_at_least(id, args, 2);
    const Formula& phi = args[0];
    std::vector<Formula> gamma = tail(args);
    std::vector<Formula> reach;
    for (const auto& g : gamma) reach.push_back(dia(conj(g, phi)));
    return done(implies(box_star(implies(phi, conj_all(reach))), implies(phi, tangle_of(gamma))));
  }
  if (id == "4t") {
    expect_at_least(id, args, 1);
    Formula t = tangle_of(args);
    return done(implies(dia(t), t));
  }
  if (id == "Tt") {
    expect_at_least(id, args, 1);
    return done(implies(conj_all(args), tangle_of(args)));
  }
  if (std::size_t n = g_index(id); n > 0) {
    expect_arity(id, args, n + 1);
    std::vector<Formula> lhs, rhs;
    for (std::size_t i = 0; i <= n; ++i) {
      Formula q = q_formula(args, i);
      lhs.push_back(dia(q));
      rhs.push_back(dia_star(neg(q)));
    }
    return done(implies(conj_all(lhs), dia(conj_all(rhs))));
  }
  throw FormatError("unknown schema '" + std::string(schema) + "'");
}

SchemaInstance default_instance(std::string_view schema) {
  std::string id = canonical_schema(schema);
  Formula p = atom("p"), q = atom("q");
  if (id == "K") return instantiate(id, {p, q});
  if (id == "D") return instantiate(id, {});
  if (id == "Ind") return instantiate(id, {q, p});
  if (std::size_t n = g_index(id); n > 0) {
    std::vector<Formula> ps;
    for (std::size_t i = 0; i <= n; ++i) ps.push_back(atom("p" + std::to_string(i)));
    return instantiate(id, ps);
  }
  return instantiate(id, {p});
}

std::string schema_usage(std::string_view schema) {
  std::string id = canonical_schema(schema);
  if (id == "K") return "φ ψ";
  if (id == "D") return "(none)";
  if (id == "Fix") return "γ [Γ...]  (γ ∈ Γ; Γ = {γ} if omitted)";
  if (id == "Ind") return "φ Γ...";
  if (id == "4t" || id == "Tt") return "Γ...";
  if (std::size_t n = g_index(id); n > 0) return "φ_0 ... φ_" + std::to_string(n);
  if (id == "4" || id == "T" || id == "U" || id == "C") return "φ";
  throw FormatError("unknown schema '" + std::string(schema) + "'");
}

std::vector<std::string> schema_ids() {
  return {"K", "4", "T", "D", "Fix", "Ind", "4t", "Tt", "U", "C", "G1", "G2"};
}

std::vector<std::string> LogicProfile::schemas() const {
  std::vector<std::string> out{"K", "4"};
  if (conditions.serial) out.push_back("D");
  if (conditions.reflexive) out.push_back("T");
  if (conditions.locally_connected > 0) out.push_back("G" + std::to_string(conditions.locally_connected));
  if (tangle) {
    out.insert(out.end(), {"Fix", "Ind", "4t"});
    if (conditions.reflexive) out.push_back("Tt");
  }
  if (universal) out.push_back("U");
  if (conditions.connected) out.push_back("C");
  return out;
}

LogicProfile parse_profile(std::string_view name) {
  static const std::regex re(R"(^(K4|KD4|S4)(G_?(\d+))?(t|mu|μ)?(\.U|\.UC)?$)");
  std::string s(name);
  std::smatch m;
  if (!std::regex_match(s, m, re))
    throw FormatError("unknown logic profile '" + s + "' (expected e.g. K4t, KD4G_1t.UC, S4mu)");
  LogicProfile p;
  p.name = s;
  if (m[1] == "KD4") p.conditions.serial = true;
  if (m[1] == "S4") p.conditions.reflexive = p.conditions.serial = true;
  if (m[3].matched) {
    std::size_t n = std::stoul(m[3].str());
    if (n == 0 || n > 8) throw FormatError("G_n needs 1 ≤ n ≤ 8 in profile '" + s + "'");
    p.conditions.locally_connected = n;
  }
  if (m[4].matched) (m[4] == "t" ? p.tangle : p.mu) = true;
  if (m[5].matched) {
    p.universal = true;
    p.conditions.connected = m[5] == ".UC";
  }
  return p;
}

std::vector<std::string> condition_violations(const Relation& r, const FrameConditions& c) {
  std::vector<std::string> out;
  if (c.transitive && !is_transitive(r)) out.push_back("transitive");
  if (c.serial && !is_serial(r)) out.push_back("serial");
  if (c.reflexive && !is_reflexive(r)) out.push_back("reflexive");
  if (c.connected && !is_connected(r)) out.push_back("connected");
  if (c.locally_connected > 0 && !locally_n_connected(r, c.locally_connected))
    out.push_back("locally " + std::to_string(c.locally_connected) + "-connected");
  return out;
}

void require_fragment(const Formula& f, const LogicProfile& p) {
  auto fail = [&](const char* what) {
    throw FragmentError(std::string(what) + " in " + to_string(f) + " is outside the language of " +
                        p.name);
  };
  std::function<void(const Formula&)> walk = [&](const Formula& g) {
    switch (g.op()) {
      case Op::Forall:
      case Op::Exists:
        if (!p.universal) fail("universal modality");
        break;
      case Op::Tangle:
      case Op::TangleD:
        if (!p.tangle) fail("tangle");
        break;
      case Op::Mu:
      case Op::Nu:
        if (!p.mu) fail("fixpoint");
        break;
      default:
        break;
    }
    for (const auto& k : g.children()) walk(k);
  };
  walk(f);
}

Validity frame_validates(const Frame& frame, const Formula& f, std::uint64_t budget) {
  std::set<std::string> atom_set = free_atoms(f);
  std::vector<std::string> atoms(atom_set.begin(), atom_set.end());
  const std::size_t n = frame.size();
  const std::size_t bits = atoms.size() * n;
  if (bits >= 63 || (std::uint64_t{1} << bits) > budget)
    throw BudgetExceeded("validity check needs 2^" + std::to_string(bits) +
                         " valuations, budget is " + std::to_string(budget));

  KripkeModel m{frame, {}};
  for (const auto& a : atoms) m.val[a] = empty_set(n);
  Validity out;
  const std::uint64_t total = std::uint64_t{1} << bits;
  const std::uint64_t world_mask = (std::uint64_t{1} << n) - 1;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    for (std::size_t a = 0; a < atoms.size(); ++a)
      m.val[atoms[a]] = from_mask(n, (mask >> (a * n)) & world_mask);
    ++out.valuations_checked;
    WorldSet ext = model_check(m, f);
    if (ext.count() != n) {
      out.valid = false;
      out.witness = m.val;
      out.failing_world = (~ext).find_first();
      break;
    }
  }
  return out;
}

namespace {

std::vector<std::vector<std::size_t>> permutations(std::size_t n) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<std::size_t>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

bool is_canonical(std::uint32_t mask, std::size_t n, const std::vector<std::vector<std::size_t>>& perms) {
  for (const auto& p : perms) {
    std::uint32_t image = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if ((mask >> (i * n + j)) & 1u) image |= std::uint32_t{1} << (p[i] * n + p[j]);
    if (image < mask) return false;
  }
  return true;
}

Relation relation_of_mask(std::uint32_t mask, std::size_t n) {
  Relation r(n, empty_set(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if ((mask >> (i * n + j)) & 1u) r[i].set(j);
  return r;
}

bool transitive_mask(std::uint32_t mask, std::size_t n) {
  const std::uint32_t row = (1u << n) - 1;
  for (std::size_t i = 0; i < n; ++i) {
    std::uint32_t ri = (mask >> (i * n)) & row;
    for (std::size_t j = 0; j < n; ++j)
      if ((ri >> j) & 1u) {
        std::uint32_t rj = (mask >> (j * n)) & row;
        if ((rj & ~ri) != 0) return false;
      }
  }
  return true;
}

std::vector<Relation> enumerate(std::size_t n, bool transitive_only,
                                const std::function<bool(const Relation&)>& keep) {
  if (n == 0 || n > 5) throw BudgetExceeded("frame enumeration supports 1 to 5 worlds");
  if (n == 5 && !transitive_only)
    throw BudgetExceeded("enumerating all relations on 5 worlds is limited to transitive ones");
  auto perms = permutations(n);
  std::vector<Relation> out;
  const std::uint64_t total = std::uint64_t{1} << (n * n);
  for (std::uint64_t m = 0; m < total; ++m) {
    auto mask = static_cast<std::uint32_t>(m);
    if (transitive_only && !transitive_mask(mask, n)) continue;
    if (!is_canonical(mask, n, perms)) continue;
    Relation r = relation_of_mask(mask, n);
    if (keep(r)) out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

std::vector<Relation> enumerate_frames(std::size_t n, const std::function<bool(const Relation&)>& keep) {
  return enumerate(n, false, keep);
}

std::vector<Relation> enumerate_frames(std::size_t n, const FrameConditions& c) {
  return enumerate(n, c.transitive, [&](const Relation& r) { return frame_satisfies(r, c); });
}

namespace {

using Lits = std::vector<int>;

/// Propositional encoding of "f holds at world x" for every x of an
/// n-world frame whose relation and valuation are solver variables.
class Encoder {
 public:
  Encoder(sat::Circuit& c, std::size_t n, const std::vector<std::string>& atoms) : c_(c), n_(n) {
    rel_.assign(n, Lits(n));
    for (auto& row : rel_)
      for (auto& v : row) v = c_.var();
    for (const auto& a : atoms) {
      Lits ws(n);
      for (auto& v : ws) v = c_.var();
      val_.emplace(a, std::move(ws));
    }
  }

  int r(std::size_t i, std::size_t j) const { return rel_[i][j]; }
  const std::map<std::string, Lits>& val() const { return val_; }

  Lits encode(const Formula& f) {
    switch (f.op()) {
      case Op::Atom: {
        for (auto it = env_.rbegin(); it != env_.rend(); ++it)
          if (it->first == f.name()) return it->second;
        auto v = val_.find(f.name());
        return v != val_.end() ? v->second : uniform(c_.false_lit());
      }
      case Op::Top: return uniform(c_.true_lit());
      case Op::Bot: return uniform(c_.false_lit());
      case Op::Not: {
        Lits a = encode(f.child());
        for (auto& l : a) l = -l;
        return a;
      }
      case Op::And: return zip(f, [&](int a, int b) { return c_.both(a, b); });
      case Op::Or: return zip(f, [&](int a, int b) { return c_.either(a, b); });
      case Op::Implies: return zip(f, [&](int a, int b) { return c_.implies(a, b); });
      case Op::Iff: return zip(f, [&](int a, int b) { return c_.equal(a, b); });
      case Op::Box:
      case Op::BoxD: return box(encode(f.child()));
      case Op::Dia:
      case Op::DiaD: return dia(encode(f.child()));
      case Op::Forall: return uniform(c_.all(encode(f.child())));
      case Op::Exists: return uniform(c_.any(encode(f.child())));
      case Op::Tangle:
      case Op::TangleD: return tangle(f);
      case Op::Mu:
      case Op::Nu: return fixpoint(f);
    }
    return {};
  }

 private:
  Lits uniform(int l) const { return Lits(n_, l); }

  template <typename G>
  Lits zip(const Formula& f, G gate) {
    Lits a = encode(f.child(0)), b = encode(f.child(1));
    Lits out(n_);
    for (std::size_t x = 0; x < n_; ++x) out[x] = gate(a[x], b[x]);
    return out;
  }

  Lits box(const Lits& s) {
    Lits out(n_);
    for (std::size_t x = 0; x < n_; ++x) {
      Lits parts;
      for (std::size_t y = 0; y < n_; ++y) parts.push_back(c_.implies(rel_[x][y], s[y]));
      out[x] = c_.all(parts);
    }
    return out;
  }

  Lits dia(const Lits& s) {
    Lits out(n_);
    for (std::size_t x = 0; x < n_; ++x) {
      Lits parts;
      for (std::size_t y = 0; y < n_; ++y) parts.push_back(c_.both(rel_[x][y], s[y]));
      out[x] = c_.any(parts);
    }
    return out;
  }

  // y is good when yRy and each member holds somewhere in y's cluster;
  // ⟨t⟩Δ holds at x when x sees a good y.
  Lits tangle(const Formula& f) {
    std::vector<Lits> members;
    for (const auto& d : f.children()) members.push_back(encode(d));
    Lits good(n_);
    for (std::size_t y = 0; y < n_; ++y) {
      Lits conds{rel_[y][y]};
      for (const auto& m : members) {
        Lits some;
        for (std::size_t z = 0; z < n_; ++z) some.push_back(c_.all({rel_[y][z], rel_[z][y], m[z]}));
        conds.push_back(c_.any(some));
      }
      good[y] = c_.all(conds);
    }
    return dia(good);
  }

  // n approximants reach the fixpoint on an n-world frame.
  Lits fixpoint(const Formula& f) {
    Lits s = uniform(f.is(Op::Mu) ? c_.false_lit() : c_.true_lit());
    for (std::size_t k = 0; k < n_; ++k) {
      env_.emplace_back(f.name(), s);
      Lits next = encode(f.child());
      env_.pop_back();
      if (next == s) break;
      s = std::move(next);
    }
    return s;
  }

  sat::Circuit& c_;
  std::size_t n_;
  std::vector<Lits> rel_;
  std::map<std::string, Lits> val_;
  std::vector<std::pair<std::string, Lits>> env_;
};

// reach[y][z]: y and z are joined by a path through `adj` edges.
std::vector<Lits> reachability(sat::Circuit& c, std::vector<Lits> reach) {
  const std::size_t n = reach.size();
  for (std::size_t span = 1; span < n; span *= 2) {
    std::vector<Lits> next(n, Lits(n));
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z) {
        Lits via;
        for (std::size_t w = 0; w < n; ++w) via.push_back(c.both(reach[y][w], reach[w][z]));
        next[y][z] = c.any(via);
      }
    reach = std::move(next);
  }
  return reach;
}

void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& f) {
  std::vector<std::size_t> pick;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    if (pick.size() == k) {
      f(pick);
      return;
    }
    for (std::size_t i = from; i < n; ++i) {
      pick.push_back(i);
      rec(i + 1);
      pick.pop_back();
    }
  };
  rec(0);
}

void add_conditions(sat::Circuit& c, const Encoder& e, std::size_t n, const FrameConditions& fc) {
  sat::Solver& s = c.solver();
  if (fc.transitive)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) s.add_clause({-e.r(i, j), -e.r(j, k), e.r(i, k)});
  if (fc.reflexive)
    for (std::size_t i = 0; i < n; ++i) s.add_clause({e.r(i, i)});
  if (fc.serial)
    for (std::size_t i = 0; i < n; ++i) {
      Lits row;
      for (std::size_t j = 0; j < n; ++j) row.push_back(e.r(i, j));
      s.add_clause(row);
    }
  if (fc.connected) {
    std::vector<Lits> adj(n, Lits(n));
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        adj[y][z] = y == z ? c.true_lit() : c.either(e.r(y, z), e.r(z, y));
    auto reach = reachability(c, adj);
    for (std::size_t z = 1; z < n; ++z) c.require(reach[0][z]);
  }
  if (std::size_t k = fc.locally_connected; k > 0 && k < n) {
    for (std::size_t x = 0; x < n; ++x) {
      std::vector<Lits> adj(n, Lits(n));
      for (std::size_t y = 0; y < n; ++y)
        for (std::size_t z = 0; z < n; ++z)
          adj[y][z] = y == z ? c.true_lit()
                             : c.all({e.r(x, y), e.r(x, z), c.either(e.r(y, z), e.r(z, y))});
      auto reach = reachability(c, adj);
      // No k+1 successors of x lie in pairwise different components.
      for_each_subset(n, k + 1, [&](const std::vector<std::size_t>& pick) {
        Lits clause;
        for (std::size_t a = 0; a < pick.size(); ++a) {
          clause.push_back(-e.r(x, pick[a]));
          for (std::size_t b = a + 1; b < pick.size(); ++b) clause.push_back(reach[pick[a]][pick[b]]);
        }
        s.add_clause(clause);
      });
    }
  }
}

}  // namespace

SatOutcome bounded_sat(const Formula& f, const LogicProfile& profile, std::size_t max_worlds,
                       std::int64_t conflict_budget) {
  if (max_worlds == 0) throw ArityError("bounded_sat needs max_worlds ≥ 1");
  require_fragment(f, profile);
  std::set<std::string> atom_set = free_atoms(f);
  std::vector<std::string> atoms(atom_set.begin(), atom_set.end());

  SatOutcome out;
  for (std::size_t n = 1; n <= max_worlds; ++n) {
    out.largest_size_tried = n;
    sat::Solver solver;
    sat::Circuit c(solver);
    Encoder e(c, n, atoms);
    add_conditions(c, e, n, profile.conditions);
    c.require(c.any(e.encode(f)));

    // Least significant first.
    Lits bits;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) bits.push_back(e.r(i, j));
    for (const auto& a : atoms)
      for (int v : e.val().at(a)) bits.push_back(v);

    auto run = [&](const Lits& assumptions) {
      sat::Result res = solver.solve(assumptions, conflict_budget);
      if (res == sat::Result::Unknown)
        throw BudgetExceeded("solver gave up on " + std::to_string(n) + " worlds after " +
                             std::to_string(conflict_budget) + " conflicts");
      return res == sat::Result::Sat;
    };
    if (!run({})) continue;

    std::vector<bool> current(bits.size());
    auto snapshot = [&] {
      for (std::size_t b = 0; b < bits.size(); ++b) current[b] = solver.model_value(bits[b]);
    };
    snapshot();
    Lits fixed;
    for (std::size_t b = bits.size(); b-- > 0;) {
      if (!current[b]) {
        fixed.push_back(-bits[b]);
        continue;
      }
      fixed.push_back(-bits[b]);
      if (run(fixed)) {
        snapshot();
      } else {
        fixed.back() = bits[b];
      }
    }

    Relation rel(n, empty_set(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (current[i * n + j]) rel[i].set(j);
    Valuation val;
    std::size_t b = n * n;
    for (const auto& a : atoms) {
      WorldSet ext = empty_set(n);
      for (std::size_t w = 0; w < n; ++w, ++b)
        if (current[b]) ext.set(w);
      val.emplace(a, ext);
    }
    KripkeModel m{Frame::anonymous(std::move(rel)), std::move(val)};
    WorldSet ext = model_check(m, f);
    if (ext.none() || !frame_satisfies(m.frame.rel(), profile.conditions))
      throw Error("internal error: bounded_sat witness fails re-verification");
    out.world = ext.find_first();
    out.model = std::move(m);
    return out;
  }
  return out;
}

KripkeModel figure3_model(std::size_t m) {
  std::vector<std::string> worlds;
  for (std::size_t k = 0; k <= m; ++k) {
    worlds.push_back("a" + std::to_string(k));
    worlds.push_back("b" + std::to_string(k));
  }
  worlds.push_back("b" + std::to_string(m + 1));
  const std::size_t n = worlds.size();
  auto a = [](std::size_t k) { return 2 * k; };
  auto b = [m](std::size_t k) { return k <= m ? 2 * k + 1 : 2 * m + 2; };

  Relation rel(n, empty_set(n));
  for (std::size_t w = 0; w < n; ++w) rel[w].set(w);
  for (std::size_t k = 0; k <= m; ++k) {
    rel[a(k)].set(b(k));
    rel[a(k)].set(b(k + 1));
  }

  Valuation val;
  for (const char* name : {"r", "g", "b"}) val[name] = empty_set(n);
  for (std::size_t k = 0; k <= m + 1; ++k) {
    const char* colour = k % 3 == 0 ? "r" : k % 3 == 1 ? "g" : "b";
    val[colour].set(b(k));
    if (k % 3 != 2) {
      std::string p = "p" + std::to_string(k / 3);
      val.try_emplace(p, empty_set(n));
      val[p].set(b(k));
    }
  }
  return {Frame(std::move(worlds), std::move(rel)), std::move(val)};
}

std::vector<LabelledFormula> sigma_formulas(std::size_t max_index) {
  auto p = [](std::size_t i) { return atom("p" + std::to_string(i)); };
  Formula r = atom("r"), g = atom("g"), b = atom("b");
  std::vector<LabelledFormula> out;
  auto label = [](int k, std::initializer_list<std::size_t> idx) {
    std::string s = "Sigma" + std::to_string(k);
    if (idx.size() == 0) return s;
    s += "(";
    bool first = true;
    for (auto i : idx) {
      if (!first) s += ",";
      s += std::to_string(i);
      first = false;
    }
    return s + ")";
  };
  for (std::size_t i = 0; i <= max_index; ++i)
    out.push_back({label(1, {i}), exists(conj(conj(dia(p(i)), dia(r)), dia(g)))});
  for (std::size_t i = 0; i <= max_index; ++i)
    for (std::size_t j = i + 1; j <= max_index; ++j)
      out.push_back({label(2, {i, j}), forall(neg(conj(dia(p(i)), dia(p(j)))))});
  out.push_back({label(3, {}), forall(neg(conj(conj(dia(r), dia(g)), dia(b))))});
  for (std::size_t i = 0; i <= max_index; ++i)
    out.push_back({label(4, {i}),
                   forall(implies(conj(dia(p(i)), box(neg(b))), box(dia(p(i)))))});
  return out;
}

std::vector<FailingFrame> failing_frames() {
  Frame irreflexive_point({"w"}, Relation(1, empty_set(1)));
  Frame dead_end = Frame::from_pairs({"a", "b"}, {{"a", "b"}});
  Frame chain = Frame::from_pairs({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}});
  Frame isolated = Frame::from_pairs({"u", "v"}, {{"u", "u"}, {"v", "v"}});
  Frame fork = Frame::from_pairs({"r", "x", "y"}, {{"r", "x"}, {"r", "y"}, {"x", "x"}, {"y", "y"}});
  return {
      {"4", "non-transitive chain a→b→c", chain, default_instance("4").formula},
      {"T", "irreflexive point", irreflexive_point, default_instance("T").formula},
      {"Tt", "irreflexive point", irreflexive_point, default_instance("Tt").formula},
      {"D", "dead end a→b", dead_end, default_instance("D").formula},
      {"C", "two isolated reflexive points", isolated, default_instance("C").formula},
      {"G1", "fork r→x, r→y with irreflexive root", fork,
       instantiate("G1", {atom("p"), neg(atom("p"))}).formula},
  };
}

}  // namespace tangle
