#include "hybrid/closure.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <tuple>

namespace hybrid {

std::string PathSpace::key(const Path& p) {
  std::string k;
  k.reserve(p.arrows.size() + 1);
  if (p.stationary()) {
    k.push_back('\xff');
    k.append(std::to_string(p.source));
    return k;
  }
  for (ArrowId a : p.arrows) k.push_back(static_cast<char>(a));
  return k;
}

PathSpace::PathSpace(const Quiver& q, int max_length, const std::function<bool(const Path&)>& preferred)
    : max_length_(max_length), arrow_count_(static_cast<size_t>(q.arrow_count())) {
  for (const Arrow& a : q.arrows()) ends_.emplace_back(a.source, a.target);
  std::vector<Path> all;
  std::vector<Path> frontier;
  for (VertexId v = 0; v < q.vertex_count(); ++v) frontier.push_back(stationary_path(v));
  all = frontier;
  for (int len = 1; len <= max_length; ++len) {
    std::vector<Path> next;
    for (const Path& p : frontier) {
      for (ArrowId a : q.outgoing(p.target)) {
        Path np = p;
        np.arrows.push_back(a);
        np.target = q.arrow(a).target;
        next.push_back(std::move(np));
      }
    }
    all.insert(all.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  std::vector<std::pair<bool, size_t>> flags(all.size());
  for (size_t i = 0; i < all.size(); ++i) flags[i] = {!preferred(all[i]), i};
  std::sort(flags.begin(), flags.end(), [&](const auto& x, const auto& y) {
    if (x.first != y.first) return x.first < y.first;
    return all[x.second] < all[y.second];
  });
  paths_.reserve(all.size());
  for (const auto& fl : flags) paths_.push_back(std::move(all[fl.second]));
  by_length_.assign(static_cast<size_t>(max_length) + 1, {});
  for (size_t i = 0; i < paths_.size(); ++i) {
    index_.emplace(key(paths_[i]), static_cast<int>(i));
    by_length_[paths_[i].length()].push_back(static_cast<int>(i));
  }
  right_.assign(paths_.size() * arrow_count_, -1);
  left_.assign(paths_.size() * arrow_count_, -1);
  for (size_t i = 0; i < paths_.size(); ++i) {
    const Path& p = paths_[i];
    if (static_cast<int>(p.length()) >= max_length) continue;
    for (ArrowId a = 0; a < static_cast<ArrowId>(arrow_count_); ++a) {
      const Arrow& ar = q.arrow(a);
      if (ar.source == p.target) {
        Path np = p;
        np.arrows.push_back(a);
        right_[i * arrow_count_ + static_cast<size_t>(a)] = index_.at(key(np));
      }
      if (ar.target == p.source) {
        Path np = p;
        np.arrows.insert(np.arrows.begin(), a);
        left_[i * arrow_count_ + static_cast<size_t>(a)] = index_.at(key(np));
      }
    }
  }
}

int PathSpace::index_of(const Path& p) const {
  if (static_cast<int>(p.length()) > max_length_) return -1;
  auto it = index_.find(key(p));
  return it == index_.end() ? -1 : it->second;
}

SparseVec SparseEchelon::reduce(const SparseVec& v) const {
  std::map<int, Rational> acc;
  for (const auto& [i, c] : v) acc.emplace_hint(acc.end(), i, c);
  auto it = acc.end();
  while (it != acc.begin()) {
    --it;
    auto row = rows_.find(it->first);
    if (row == rows_.end()) continue;
    const int lead = it->first;
    const Rational coeff = it->second;
    for (const auto& [j, x] : row->second) {
      auto [slot, inserted] = acc.try_emplace(j, 0);
      slot->second -= coeff * x;
      if (slot->second == 0) acc.erase(slot);
    }
    it = acc.lower_bound(lead);
  }
  return SparseVec(acc.begin(), acc.end());
}

SparseVec SparseEchelon::insert(const SparseVec& v) {
  SparseVec r = reduce(v);
  if (r.empty()) return r;
  const Rational inv = 1 / r.back().second;
  for (auto& term : r) term.second *= inv;
  rows_.emplace(r.back().first, r);
  return r;
}

bool to_sparse(const PathSpace& space, const LinComb& x, SparseVec& out, bool drop_long) {
  out.clear();
  for (const auto& [p, c] : x) {
    const int i = space.index_of(p);
    if (i < 0) {
      if (drop_long && static_cast<int>(p.length()) > space.max_length()) continue;
      return false;
    }
    out.emplace_back(i, c);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return true;
}

namespace {

// Multiplies a row by an arrow; false if the exact product leaves the space.
bool shift(const PathSpace& space, const SparseVec& row, ArrowId a, bool on_right, ClosureMode mode, SparseVec& out) {
  out.clear();
  // Rows are homogeneous, so composability is decided by any one term.
  const Path& first = space.path(row.front().first);
  if (on_right ? space.arrow_source(a) != first.target : space.arrow_target(a) != first.source) return true;
  for (const auto& [i, c] : row) {
    const int j = on_right ? space.right(i, a) : space.left(a, i);
    if (j < 0) {
      if (mode == ClosureMode::exact) return false;
      continue;
    }
    out.emplace_back(j, c);
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return true;
}

}  // namespace

SparseEchelon close_ideal(const PathSpace& space, const std::vector<LinComb>& generators, ClosureMode mode) {
  SparseEchelon ech;
  std::deque<SparseVec> work;
  for (const auto& g : generators) {
    SparseVec v;
    if (to_sparse(space, g, v, mode == ClosureMode::truncated)) work.push_back(std::move(v));
  }
  const ArrowId arrow_count = space.arrow_count();
  SparseVec prod;
  while (!work.empty()) {
    SparseVec row = ech.insert(work.front());
    work.pop_front();
    if (row.empty()) continue;
    for (ArrowId a = 0; a < arrow_count; ++a) {
      if (shift(space, row, a, true, mode, prod) && !prod.empty()) work.push_back(prod);
      if (shift(space, row, a, false, mode, prod) && !prod.empty()) work.push_back(prod);
    }
  }
  return ech;
}

}  // namespace hybrid
