#include "tangle/kripke.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

namespace tangle {

Frame::Frame(std::vector<std::string> worlds, Relation rel)
    : worlds_(std::move(worlds)), rel_(std::move(rel)) {
  if (worlds_.empty()) throw FormatError("frame must have at least one world");
  if (rel_.size() != worlds_.size()) throw FormatError("relation size does not match world count");
  for (const auto& row : rel_)
    if (row.size() != worlds_.size()) throw FormatError("relation row has wrong width");
  std::vector<std::string> sorted = worlds_;
  std::sort(sorted.begin(), sorted.end());
  auto dup = std::adjacent_find(sorted.begin(), sorted.end());
  if (dup != sorted.end()) throw FormatError("duplicate world id '" + *dup + "'");
}

Frame Frame::from_pairs(std::vector<std::string> worlds,
                        const std::vector<std::pair<std::string, std::string>>& pairs) {
  std::map<std::string, std::size_t> idx;
  for (std::size_t i = 0; i < worlds.size(); ++i) idx.emplace(worlds[i], i);
  Relation rel(worlds.size(), WorldSet(worlds.size()));
  for (const auto& [a, b] : pairs) {
    auto ia = idx.find(a), ib = idx.find(b);
    if (ia == idx.end()) throw FormatError("relation mentions unknown world '" + a + "'");
    if (ib == idx.end()) throw FormatError("relation mentions unknown world '" + b + "'");
    rel[ia->second].set(ib->second);
  }
  return Frame(std::move(worlds), std::move(rel));
}

Frame Frame::anonymous(Relation rel) {
  std::vector<std::string> ws;
  for (std::size_t i = 0; i < rel.size(); ++i) ws.push_back("w" + std::to_string(i));
  return Frame(std::move(ws), std::move(rel));
}

std::size_t Frame::index_of(const std::string& id) const {
  auto it = std::find(worlds_.begin(), worlds_.end(), id);
  if (it == worlds_.end()) throw FormatError("unknown world '" + id + "'");
  return static_cast<std::size_t>(it - worlds_.begin());
}

WorldSet KripkeModel::value(const std::string& atom) const {
  auto it = val.find(atom);
  return it == val.end() ? empty_set(frame.size()) : it->second;
}

bool is_reflexive(const Relation& r) {
  for (std::size_t i = 0; i < r.size(); ++i)
    if (!r[i].test(i)) return false;
  return true;
}

bool is_transitive(const Relation& r) {
  for (std::size_t i = 0; i < r.size(); ++i) {
    bool ok = true;
    for_each_member(r[i], [&](std::size_t j) {
      if (ok && !r[j].is_subset_of(r[i])) ok = false;
    });
    if (!ok) return false;
  }
  return true;
}

bool is_serial(const Relation& r) {
  return std::all_of(r.begin(), r.end(), [](const WorldSet& s) { return s.any(); });
}

RelationProperties relation_properties(const Frame& f) {
  return {is_reflexive(f.rel()), is_transitive(f.rel()), is_serial(f.rel())};
}

Relation transitive_closure(const Relation& r) {
  // Warshall on bit rows.
  Relation t = r;
  for (std::size_t k = 0; k < t.size(); ++k)
    for (std::size_t i = 0; i < t.size(); ++i)
      if (t[i].test(k)) t[i] |= t[k];
  return t;
}

Relation reflexive_closure(const Relation& r) {
  Relation t = r;
  for (std::size_t i = 0; i < t.size(); ++i) t[i].set(i);
  return t;
}

Relation converse(const Relation& r) {
  Relation c(r.size(), WorldSet(r.size()));
  for (std::size_t i = 0; i < r.size(); ++i) for_each_member(r[i], [&](std::size_t j) { c[j].set(i); });
  return c;
}

FrameClosures closures(const Frame& f) {
  Relation t = transitive_closure(f.rel());
  return {Frame(f.worlds(), t), Frame(f.worlds(), reflexive_closure(t))};
}

std::vector<std::size_t> ClusterDecomposition::maximal() const {
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < clusters.size(); ++c)
    if (rank[c] == 1) out.push_back(c);
  return out;
}

ClusterDecomposition cluster_decomposition(const Relation& r) {
  if (!is_transitive(r)) throw FrameError("cluster decomposition needs a transitive relation");
  const std::size_t n = r.size();
  ClusterDecomposition cd;
  cd.cluster_of.assign(n, n);
  for (std::size_t x = 0; x < n; ++x) {
    if (cd.cluster_of[x] != n) continue;
    WorldSet c = singleton(n, x);
    for_each_member(r[x], [&](std::size_t y) {
      if (r[y].test(x)) c.set(y);
    });
    std::size_t id = cd.clusters.size();
    for_each_member(c, [&](std::size_t y) { cd.cluster_of[y] = id; });
    cd.degenerate.push_back(c.count() == 1 && !r[x].test(x));
    cd.clusters.push_back(std::move(c));
  }
  const std::size_t k = cd.clusters.size();
  cd.strictly_above.resize(k);
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t rep = cd.clusters[c].find_first();
    std::vector<bool> seen(k, false);
    for_each_member(r[rep], [&](std::size_t y) {
      std::size_t d = cd.cluster_of[y];
      if (d != c && !seen[d]) {
        seen[d] = true;
        cd.strictly_above[c].push_back(d);
      }
    });
    std::sort(cd.strictly_above[c].begin(), cd.strictly_above[c].end());
  }
  cd.rank.assign(k, 0);
  std::function<std::size_t(std::size_t)> rank_of = [&](std::size_t c) -> std::size_t {
    if (cd.rank[c]) return cd.rank[c];
    std::size_t best = 0;
    for (auto d : cd.strictly_above[c]) best = std::max(best, rank_of(d));
    return cd.rank[c] = best + 1;
  };
  for (std::size_t c = 0; c < k; ++c) rank_of(c);
  return cd;
}

std::vector<WorldSet> path_components(const Relation& r, const WorldSet& within) {
  const std::size_t n = r.size();
  Relation conv = converse(r);
  std::vector<WorldSet> out;
  WorldSet left = within;
  while (left.any()) {
    std::size_t s = left.find_first();
    WorldSet comp = singleton(n, s);
    WorldSet frontier = comp;
    while (frontier.any()) {
      WorldSet next(n);
      for_each_member(frontier, [&](std::size_t x) { next |= r[x] | conv[x]; });
      next &= within;
      next -= comp;
      comp |= next;
      frontier = std::move(next);
    }
    left -= comp;
    out.push_back(std::move(comp));
  }
  return out;
}

std::vector<WorldSet> path_components(const Relation& r) { return path_components(r, full_set(r.size())); }

bool is_connected(const Relation& r) { return path_components(r).size() == 1; }

std::size_t local_component_bound(const Relation& r) {
  std::size_t best = 0;
  for (const auto& succ : r) best = std::max(best, path_components(r, succ).size());
  return best;
}

bool locally_n_connected(const Relation& r, std::size_t n) { return local_component_bound(r) <= n; }

KripkeSemantics::KripkeSemantics(const Relation& r) : rel_(r), transitive_(is_transitive(r)) {}

WorldSet KripkeSemantics::box(const WorldSet& s) const {
  WorldSet out(rel_.size());
  for (std::size_t x = 0; x < rel_.size(); ++x)
    if (rel_[x].is_subset_of(s)) out.set(x);
  return out;
}

WorldSet KripkeSemantics::dia(const WorldSet& s) const {
  WorldSet out(rel_.size());
  for (std::size_t x = 0; x < rel_.size(); ++x)
    if (rel_[x].intersects(s)) out.set(x);
  return out;
}

WorldSet KripkeSemantics::tangle(const std::vector<WorldSet>& members) const {
  if (!transitive_) throw FrameError("tangle evaluation needs a transitive relation");
  const std::size_t n = rel_.size();
  // y qualifies when it is reflexive and every member holds somewhere in C_y.
  WorldSet good(n);
  for (std::size_t y = 0; y < n; ++y) {
    if (!rel_[y].test(y)) continue;
    WorldSet cluster(n);
    for_each_member(rel_[y], [&](std::size_t z) {
      if (rel_[z].test(y)) cluster.set(z);
    });
    bool ok = std::all_of(members.begin(), members.end(),
                          [&](const WorldSet& m) { return cluster.intersects(m); });
    if (ok) good.set(y);
  }
  return dia(good);
}

WorldSet model_check(const Relation& r, const Valuation& val, const Formula& f, EvalStats* stats) {
  KripkeSemantics sem(r);
  return evaluate(sem, val, f, stats);
}

WorldSet model_check(const KripkeModel& m, const Formula& f, EvalStats* stats) {
  return model_check(m.frame.rel(), m.val, f, stats);
}

namespace {

bool lasso_search(const Relation& r, std::vector<std::size_t>& path, std::vector<bool>& on_path,
                  const std::vector<WorldSet>& sats) {
  std::size_t v = path.back();
  bool found = false;
  for_each_member(r[v], [&](std::size_t u) {
    if (found) return;
    if (on_path[u]) {
      // cycle path[k..] + back edge to u
      auto k = std::find(path.begin(), path.end(), u) - path.begin();
      bool all = true;
      for (const auto& s : sats) {
        bool hit = false;
        for (auto i = static_cast<std::size_t>(k); i < path.size() && !hit; ++i) hit = s.test(path[i]);
        if (!hit) {
          all = false;
          break;
        }
      }
      if (all) found = true;
      return;
    }
    path.push_back(u);
    on_path[u] = true;
    if (lasso_search(r, path, on_path, sats)) found = true;
    on_path[u] = false;
    path.pop_back();
  });
  return found;
}

}  // namespace

bool tangle_oracle(const KripkeModel& m, std::size_t x, const std::vector<Formula>& delta) {
  const Relation& r = m.frame.rel();
  if (!is_transitive(r)) throw FrameError("tangle oracle needs a transitive relation");
  std::vector<WorldSet> sats;
  for (const auto& d : delta) sats.push_back(model_check(m, d));
  std::vector<std::size_t> path{x};
  std::vector<bool> on_path(r.size(), false);
  on_path[x] = true;
  return lasso_search(r, path, on_path, sats);
}

KripkeModel generated_submodel(const KripkeModel& m, std::size_t w) {
  const std::size_t n = m.frame.size();
  WorldSet keep = transitive_closure(m.frame.rel())[w];
  keep.set(w);
  std::vector<std::size_t> old = members(keep);
  std::vector<std::size_t> to_new(n, n);
  for (std::size_t i = 0; i < old.size(); ++i) to_new[old[i]] = i;
  std::vector<std::string> ids;
  Relation rel(old.size(), WorldSet(old.size()));
  for (std::size_t i = 0; i < old.size(); ++i) {
    ids.push_back(m.frame.world(old[i]));
    for_each_member(m.frame.successors(old[i]), [&](std::size_t j) { rel[i].set(to_new[j]); });
  }
  Valuation val;
  for (const auto& [a, s] : m.val) {
    WorldSet t(old.size());
    for (std::size_t i = 0; i < old.size(); ++i)
      if (s.test(old[i])) t.set(i);
    val.emplace(a, std::move(t));
  }
  return {Frame(std::move(ids), std::move(rel)), std::move(val)};
}

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

const char* rank_colour(std::size_t rank) {
  static const char* palette[] = {"lightblue", "palegreen", "khaki", "lightsalmon", "plum", "lightgrey"};
  return palette[(rank - 1) % 6];
}

std::string dot_body(const Frame& f, const std::vector<std::string>& labels) {
  std::ostringstream os;
  const std::size_t n = f.size();
  if (is_transitive(f.rel())) {
    auto cd = cluster_decomposition(f.rel());
    for (std::size_t c = 0; c < cd.clusters.size(); ++c) {
      os << "  subgraph cluster_" << c << " {\n    rank=same;\n    style=filled;\n    color="
         << rank_colour(cd.rank[c]) << ";\n    label=" << quote("rank " + std::to_string(cd.rank[c]))
         << ";\n";
      for_each_member(cd.clusters[c], [&](std::size_t x) {
        os << "    " << quote(f.world(x)) << " [label=" << labels[x]
           << (cd.degenerate[c] ? ", shape=circle" : ", shape=doublecircle") << "];\n";
      });
      os << "  }\n";
    }
  } else {
    for (std::size_t x = 0; x < n; ++x) os << "  " << quote(f.world(x)) << " [label=" << labels[x] << "];\n";
  }
  for (std::size_t x = 0; x < n; ++x)
    for_each_member(f.successors(x), [&](std::size_t y) {
      os << "  " << quote(f.world(x)) << " -> " << quote(f.world(y)) << ";\n";
    });
  return os.str();
}

}  // namespace

std::string to_dot(const Frame& f, const std::string& graph_name) {
  std::vector<std::string> labels;
  for (const auto& w : f.worlds()) labels.push_back(quote(w));
  return "digraph " + quote(graph_name) + " {\n" + dot_body(f, labels) + "}\n";
}

std::string to_dot(const KripkeModel& m, const std::string& graph_name) {
  std::vector<std::string> labels;
  for (std::size_t x = 0; x < m.frame.size(); ++x) {
    std::string atoms;
    for (const auto& [a, s] : m.val)
      if (s.test(x)) atoms += (atoms.empty() ? "" : ",") + a;
    std::string l = quote(m.frame.world(x));
    if (!atoms.empty()) l = l.substr(0, l.size() - 1) + "\\n" + atoms + "\"";
    labels.push_back(std::move(l));
  }
  return "digraph " + quote(graph_name) + " {\n" + dot_body(m.frame, labels) + "}\n";
}

}  // namespace tangle
