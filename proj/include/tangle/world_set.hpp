#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace tangle {

// A subset of a finite, index-addressed carrier (worlds of a frame or
// points of a space).  The bitset size is always the carrier size.
using WorldSet = boost::dynamic_bitset<std::uint64_t>;

inline WorldSet empty_set(std::size_t n) { return WorldSet(n); }

inline WorldSet full_set(std::size_t n) {
  WorldSet s(n);
  s.set();
  return s;
}

inline WorldSet singleton(std::size_t n, std::size_t i) {
  WorldSet s(n);
  s.set(i);
  return s;
}

template <typename F>
void for_each_member(const WorldSet& s, F&& f) {
  for (auto i = s.find_first(); i != WorldSet::npos; i = s.find_next(i)) f(i);
}

inline std::vector<std::size_t> members(const WorldSet& s) {
  std::vector<std::size_t> out;
  out.reserve(s.count());
  for_each_member(s, [&](std::size_t i) { out.push_back(i); });
  return out;
}

// Subset of {0..n-1} encoded by the low n bits of `mask`.
inline WorldSet from_mask(std::size_t n, std::uint64_t mask) {
  WorldSet s(n);
  for (std::size_t i = 0; i < n; ++i)
    if ((mask >> i) & 1u) s.set(i);
  return s;
}

inline std::uint64_t to_mask(const WorldSet& s) {
  std::uint64_t m = 0;
  for_each_member(s, [&](std::size_t i) { m |= std::uint64_t{1} << i; });
  return m;
}

// Binary relation on {0..n-1} stored as successor sets.
using Relation = std::vector<WorldSet>;

}  // namespace tangle
