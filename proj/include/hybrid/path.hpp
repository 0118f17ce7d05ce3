#pragma once

#include "hybrid/rational.hpp"

#include <compare>
#include <map>
#include <stdexcept>
#include <vector>

namespace hybrid {

using VertexId = int;
using ArrowId = int;

class CompositionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A path in a quiver; an empty arrow list is the stationary path at `source`.
// Arrow ids are ordered like arrow names, so the comparison below is the
// length-lexicographic order with name tiebreak.
struct Path {
  VertexId source = 0;
  VertexId target = 0;
  std::vector<ArrowId> arrows;

  size_t length() const { return arrows.size(); }
  bool stationary() const { return arrows.empty(); }

  friend bool operator==(const Path&, const Path&) = default;
  friend std::strong_ordering operator<=>(const Path& a, const Path& b) {
    if (auto c = a.arrows.size() <=> b.arrows.size(); c != 0) return c;
    if (auto c = a.arrows <=> b.arrows; c != 0) return c;
    if (auto c = a.source <=> b.source; c != 0) return c;
    return a.target <=> b.target;
  }
};

inline Path stationary_path(VertexId v) { return Path{v, v, {}}; }

// Concatenation; throws CompositionError when target(a) != source(b).
Path concat(const Path& a, const Path& b);

// Finite linear combination of paths with nonzero rational coefficients.
class LinComb {
 public:
  LinComb() = default;
  explicit LinComb(Path p, Rational coeff = 1);

  void add(const Path& p, const Rational& coeff);
  void add(const LinComb& other, const Rational& scale = 1);
  LinComb scaled(const Rational& s) const;

  bool empty() const { return terms_.empty(); }
  size_t size() const { return terms_.size(); }
  const std::map<Path, Rational>& terms() const { return terms_; }
  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }

  // Path-algebra product: non-composable pairs multiply to zero.
  friend LinComb operator*(const LinComb& a, const LinComb& b);
  friend LinComb operator+(const LinComb& a, const LinComb& b);
  friend LinComb operator-(const LinComb& a, const LinComb& b);
  friend bool operator==(const LinComb&, const LinComb&) = default;

  // Longest path length occurring (0 for the empty combination).
  size_t max_length() const;

 private:
  std::map<Path, Rational> terms_;
};

}  // namespace hybrid
