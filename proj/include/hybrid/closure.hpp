#pragma once

// Path spaces and two-sided ideal closures by sparse exact elimination.

#include "hybrid/path.hpp"
#include "hybrid/quiver.hpp"

#include <functional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace hybrid {

// Sorted by index, no zero coefficients.
using SparseVec = std::vector<std::pair<int, Rational>>;

// All paths of length <= max_length. Indices follow the elimination order:
// preferred paths first, then by length and arrow names. The largest index
// of a vector is its leading term.
class PathSpace {
 public:
  PathSpace(const Quiver& q, int max_length, const std::function<bool(const Path&)>& preferred);

  int size() const { return static_cast<int>(paths_.size()); }
  int max_length() const { return max_length_; }
  const Path& path(int i) const { return paths_[static_cast<size_t>(i)]; }
  int length(int i) const { return static_cast<int>(paths_[static_cast<size_t>(i)].length()); }
  // -1 when the path is longer than max_length.
  int index_of(const Path& p) const;
  // Index of path(i)*a, or -1 when not composable or too long.
  int right(int i, ArrowId a) const { return right_[static_cast<size_t>(i) * arrow_count_ + static_cast<size_t>(a)]; }
  int left(ArrowId a, int i) const { return left_[static_cast<size_t>(i) * arrow_count_ + static_cast<size_t>(a)]; }
  const std::vector<int>& of_length(int k) const { return by_length_[static_cast<size_t>(k)]; }
  int arrow_count() const { return static_cast<int>(arrow_count_); }
  VertexId arrow_source(ArrowId a) const { return ends_[static_cast<size_t>(a)].first; }
  VertexId arrow_target(ArrowId a) const { return ends_[static_cast<size_t>(a)].second; }

 private:
  static std::string key(const Path& p);

  int max_length_;
  size_t arrow_count_;
  std::vector<Path> paths_;
  std::unordered_map<std::string, int> index_;
  std::vector<int> right_, left_;
  std::vector<std::pair<VertexId, VertexId>> ends_;
  std::vector<std::vector<int>> by_length_;
};

// Row echelon form keyed by leading index; rows are monic at the lead.
class SparseEchelon {
 public:
  // Eliminates every leading index present in v.
  SparseVec reduce(const SparseVec& v) const;
  // Reduces and inserts; returns the inserted row or an empty vector.
  SparseVec insert(const SparseVec& v);
  bool is_lead(int i) const { return rows_.count(i) != 0; }
  size_t rank() const { return rows_.size(); }

 private:
  std::unordered_map<int, SparseVec> rows_;
};

enum class ClosureMode {
  truncated,  // products leaving the space lose their long terms (work modulo paths beyond max length)
  exact,      // products leaving the space are discarded, so every row is a genuine ideal element
};

// Smallest subspace containing the generators and closed under multiplication
// by arrows on both sides, in the given mode.
SparseEchelon close_ideal(const PathSpace& space, const std::vector<LinComb>& generators, ClosureMode mode);

// Expresses a combination in the path space; returns false if some term is too long.
bool to_sparse(const PathSpace& space, const LinComb& x, SparseVec& out, bool drop_long);

}  // namespace hybrid
