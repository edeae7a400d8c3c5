#include "tangle/topo.hpp"

#include <algorithm>
#include <map>

namespace tangle {

namespace {

std::string describe(const std::vector<std::string>& pts, const WorldSet& s) {
  std::string out = "{";
  bool first = true;
  for_each_member(s, [&](std::size_t i) {
    out += (first ? "" : ",") + pts[i];
    first = false;
  });
  return out + "}";
}

bool set_less(const WorldSet& a, const WorldSet& b) {
  if (a.count() != b.count()) return a.count() < b.count();
  return members(a) < members(b);
}

}  // namespace

FiniteSpace::FiniteSpace(std::vector<std::string> points, std::vector<WorldSet> opens)
    : points_(std::move(points)), opens_(std::move(opens)) {
  const std::size_t n = points_.size();
  for (const auto& o : opens_)
    if (o.size() != n) throw FormatError("open set has wrong width");
  std::sort(opens_.begin(), opens_.end(), set_less);
  opens_.erase(std::unique(opens_.begin(), opens_.end()), opens_.end());
  if (!is_open(empty_set(n))) throw FormatError("opens must contain the empty set");
  if (!is_open(full_set(n))) throw FormatError("opens must contain the whole point set");
  for (std::size_t i = 0; i < opens_.size(); ++i)
    for (std::size_t j = i + 1; j < opens_.size(); ++j) {
      WorldSet u = opens_[i] | opens_[j];
      if (!is_open(u))
        throw FormatError("opens not closed under union: " + describe(points_, opens_[i]) + " ∪ " +
                          describe(points_, opens_[j]) + " = " + describe(points_, u) +
                          " is missing");
      WorldSet m = opens_[i] & opens_[j];
      if (!is_open(m))
        throw FormatError("opens not closed under intersection: " + describe(points_, opens_[i]) +
                          " ∩ " + describe(points_, opens_[j]) + " = " +
                          describe(points_, m) + " is missing");
    }
  nbhd_.assign(n, full_set(n));
  for (const auto& o : opens_) for_each_member(o, [&](std::size_t x) { nbhd_[x] &= o; });
}

FiniteSpace FiniteSpace::from_ids(std::vector<std::string> points,
                                  const std::vector<std::vector<std::string>>& opens) {
  std::map<std::string, std::size_t> idx;
  for (std::size_t i = 0; i < points.size(); ++i)
    if (!idx.emplace(points[i], i).second) throw FormatError("duplicate point id '" + points[i] + "'");
  std::vector<WorldSet> os;
  for (const auto& o : opens) {
    WorldSet s(points.size());
    for (const auto& id : o) {
      auto it = idx.find(id);
      if (it == idx.end()) throw FormatError("open mentions unknown point '" + id + "'");
      s.set(it->second);
    }
    os.push_back(std::move(s));
  }
  return FiniteSpace(std::move(points), std::move(os));
}

std::size_t FiniteSpace::index_of(const std::string& id) const {
  auto it = std::find(points_.begin(), points_.end(), id);
  if (it == points_.end()) throw FormatError("unknown point '" + id + "'");
  return static_cast<std::size_t>(it - points_.begin());
}

bool FiniteSpace::is_open(const WorldSet& s) const {
  return std::binary_search(opens_.begin(), opens_.end(), s, set_less);
}

WorldSet FiniteSpace::interior(const WorldSet& s) const {
  WorldSet out(size());
  for (std::size_t x = 0; x < size(); ++x)
    if (nbhd_[x].is_subset_of(s)) out.set(x);
  return out;
}

WorldSet FiniteSpace::closure(const WorldSet& s) const {
  WorldSet out(size());
  for (std::size_t x = 0; x < size(); ++x)
    if (nbhd_[x].intersects(s)) out.set(x);
  return out;
}

WorldSet FiniteSpace::derivative(const WorldSet& s) const {
  WorldSet out(size());
  for (std::size_t x = 0; x < size(); ++x) {
    WorldSet punctured = nbhd_[x];
    punctured.reset(x);
    if (punctured.intersects(s)) out.set(x);
  }
  return out;
}

WorldSet FiniteSpace::co_derivative(const WorldSet& s) const { return ~derivative(~s); }

SpaceOperators operators(const FiniteSpace& s, const WorldSet& subset) {
  return {s.interior(subset), s.closure(subset), s.derivative(subset)};
}

SpacePredicates space_predicates(const FiniteSpace& s) {
  const std::size_t n = s.size();
  SpacePredicates p{true, true, true};
  for (std::size_t x = 0; x < n; ++x) {
    WorldSet dx = s.derivative(singleton(n, x));
    if (!s.derivative(dx).is_subset_of(dx)) p.is_td = false;
    if (s.is_open(singleton(n, x))) p.dense_in_itself = false;
  }
  for (const auto& o : s.opens())
    if (o.any() && !o.all() && s.is_open(~o)) p.connected = false;
  return p;
}

namespace {

WorldSet tangle_gfp(const std::vector<WorldSet>& members, std::size_t n,
                    WorldSet (FiniteSpace::*op)(const WorldSet&) const, const FiniteSpace& sp) {
  WorldSet s = full_set(n);
  for (;;) {
    WorldSet next = full_set(n);
    for (const auto& m : members) next &= (sp.*op)(m & s);
    if (next == s) return s;
    s = std::move(next);
  }
}

}  // namespace

WorldSet TopoSemantics::tangle(const std::vector<WorldSet>& members) const {
  return tangle_gfp(members, space_.size(), &FiniteSpace::closure, space_);
}

WorldSet TopoSemantics::tangle_d(const std::vector<WorldSet>& members) const {
  return tangle_gfp(members, space_.size(), &FiniteSpace::derivative, space_);
}

WorldSet topo_model_check(const TopoModel& m, const Formula& f, EvalStats* stats) {
  TopoSemantics sem(m.space);
  return evaluate(sem, m.val, f, stats);
}

FiniteSpace alexandrov(const Frame& f) {
  if (!is_transitive(f.rel())) throw FrameError("Alexandrov topology needs a transitive frame");
  const std::size_t n = f.size();
  // Up-closed sets are the unions of the cones {x} ∪ R(x); close the
  // family of cones under union.
  std::vector<WorldSet> opens{empty_set(n)};
  for (std::size_t x = 0; x < n; ++x) {
    WorldSet cone = f.successors(x);
    cone.set(x);
    std::size_t k = opens.size();
    for (std::size_t i = 0; i < k; ++i) {
      WorldSet u = opens[i] | cone;
      if (std::find(opens.begin(), opens.end(), u) == opens.end()) opens.push_back(u);
    }
  }
  return FiniteSpace(f.worlds(), std::move(opens));
}

std::vector<FiniteSpace> all_topologies(std::size_t n) {
  if (n == 0 || n > 5) throw ArityError("all_topologies supports 1..5 points");
  std::vector<std::pair<std::size_t, std::size_t>> offdiag;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) offdiag.emplace_back(i, j);
  std::vector<FiniteSpace> out;
  const std::uint64_t limit = std::uint64_t{1} << offdiag.size();
  for (std::uint64_t mask = 0; mask < limit; ++mask) {
    Relation r(n, WorldSet(n));
    for (std::size_t i = 0; i < n; ++i) r[i].set(i);
    for (std::size_t b = 0; b < offdiag.size(); ++b)
      if ((mask >> b) & 1u) r[offdiag[b].first].set(offdiag[b].second);
    if (!is_transitive(r)) continue;
    out.push_back(alexandrov(Frame::anonymous(std::move(r))));
  }
  return out;
}

}  // namespace tangle
