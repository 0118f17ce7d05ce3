#pragma once

#include "hybrid/path.hpp"
#include "hybrid/rational.hpp"

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hybrid {

struct Arrow {
  std::string name;
  VertexId source;
  VertexId target;
};

// Finite quiver. Arrows are stored sorted by name so that arrow ids follow
// name order; vertices keep the order they were given in.
class Quiver {
 public:
  Quiver() = default;
  // Throws std::invalid_argument on duplicate names or unknown endpoints.
  Quiver(std::vector<std::string> vertices, std::vector<std::array<std::string, 3>> arrows);

  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  int arrow_count() const { return static_cast<int>(arrows_.size()); }
  const std::string& vertex_name(VertexId v) const { return vertices_.at(static_cast<size_t>(v)); }
  const Arrow& arrow(ArrowId a) const { return arrows_.at(static_cast<size_t>(a)); }
  const std::vector<std::string>& vertex_names() const { return vertices_; }
  const std::vector<Arrow>& arrows() const { return arrows_; }

  std::optional<VertexId> find_vertex(const std::string& name) const;
  std::optional<ArrowId> find_arrow(const std::string& name) const;
  VertexId vertex(const std::string& name) const;  // throws std::out_of_range
  ArrowId arrow_id(const std::string& name) const;  // throws std::out_of_range

  const std::vector<ArrowId>& outgoing(VertexId v) const { return out_.at(static_cast<size_t>(v)); }
  const std::vector<ArrowId>& incoming(VertexId v) const { return in_.at(static_cast<size_t>(v)); }

  bool is_two_regular() const;
  bool is_connected() const;

  // Builds a path from arrow ids; throws CompositionError if they do not compose.
  Path path(const std::vector<ArrowId>& arrows) const;
  Path path_from_names(const std::vector<std::string>& names) const;
  std::string format(const Path& p) const;  // "alpha.beta" or "e_1"
  std::string format(const LinComb& x) const;

 private:
  std::vector<std::string> vertices_;
  std::vector<Arrow> arrows_;
  std::map<std::string, VertexId> vertex_index_;
  std::map<std::string, ArrowId> arrow_index_;
  std::vector<std::vector<ArrowId>> out_, in_;
};

using Permutation = std::vector<ArrowId>;

Permutation inverse(const Permutation& p);
Permutation compose(const Permutation& outer, const Permutation& inner);  // outer after inner

// Disjoint cycles in traversal order; each starts at its least element and
// cycles are sorted by that element.
std::vector<std::vector<ArrowId>> orbits(const Permutation& p);

// The involution swapping the two arrows with a common source. Requires 2-regularity.
Permutation bar_involution(const Quiver& q);

// g = bar o f. Throws std::invalid_argument naming every arrow where
// source(f(a)) != target(a).
Permutation derive_g(const Permutation& f, const Quiver& q);

struct Violation {
  std::string rule;
  std::string message;
};

class InvalidPresentation : public std::runtime_error {
 public:
  explicit InvalidPresentation(std::vector<Violation> v);
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

// User-facing description of (Q, f, m, c, b, T). Names only; nothing checked.
struct PresentationSpec {
  struct ArrowSpec {
    std::string name, source, target;
    friend bool operator==(const ArrowSpec&, const ArrowSpec&) = default;
  };
  std::vector<std::string> vertices;
  std::vector<ArrowSpec> arrows;
  std::vector<std::vector<std::string>> f;  // cycles; unlisted arrows are fixed
  std::map<std::string, int> m;             // any member of a g-orbit
  std::map<std::string, Rational> c;        // any member of a g-orbit
  std::map<std::string, Rational> b;        // f-fixed arrows
  std::vector<std::string> triangles;       // any members of the chosen f-orbits

  friend bool operator==(const PresentationSpec&, const PresentationSpec&) = default;
};

class BiserialQuiverData {
 public:
  // Throws InvalidPresentation listing every structural violation.
  static BiserialQuiverData from_spec(const PresentationSpec& spec);

  // Canonical spec: arrows by name, cycles from orbits(), weights keyed by
  // least orbit member, zero border values omitted.
  PresentationSpec to_spec() const;

  const Quiver& quiver() const { return quiver_; }
  ArrowId f(ArrowId a) const { return f_[idx(a)]; }
  ArrowId g(ArrowId a) const { return g_[idx(a)]; }
  ArrowId bar(ArrowId a) const { return bar_[idx(a)]; }
  ArrowId f_inv(ArrowId a) const { return f_inv_[idx(a)]; }
  ArrowId g_inv(ArrowId a) const { return g_inv_[idx(a)]; }
  const Permutation& f_perm() const { return f_; }
  const Permutation& g_perm() const { return g_; }
  const Permutation& bar_perm() const { return bar_; }

  int weight(ArrowId a) const { return m_[idx(a)]; }
  const Rational& parameter(ArrowId a) const { return c_[idx(a)]; }
  const Rational& border(ArrowId a) const { return b_[idx(a)]; }
  bool in_triangles(ArrowId a) const { return in_t_[idx(a)]; }
  bool all_triangles() const;
  int triangle_count() const;  // arrows in T

  int g_orbit_length(ArrowId a) const { return g_len_[idx(a)]; }
  int f_orbit_length(ArrowId a) const { return f_len_[idx(a)]; }
  int socle_length(ArrowId a) const { return weight(a) * g_orbit_length(a); }  // m_a * n_a

  // The g-path starting at a of the given length.
  Path g_path(ArrowId a, int length) const;
  Path socle_path(ArrowId a) const { return g_path(a, socle_length(a)); }         // B_a
  Path socle_prefix(ArrowId a) const { return g_path(a, socle_length(a) - 1); }   // A_a

 private:
  static size_t idx(ArrowId a) { return static_cast<size_t>(a); }

  Quiver quiver_;
  Permutation f_, g_, bar_, f_inv_, g_inv_;
  std::vector<int> m_, g_len_, f_len_;
  std::vector<Rational> c_, b_;
  std::vector<bool> in_t_;
};

enum class VirtualKind { none, biserial_loop, beside_triangle };
enum class VertexKind { biserial, hybrid, quaternion };

struct ArrowInfo {
  int orbit_length = 0;  // n_a
  int socle_length = 0;  // m_a * n_a
  VirtualKind virtual_kind = VirtualKind::none;
  bool critical = false;
  bool border = false;  // fixed by f
  Path socle;           // B_a
  Path socle_prefix;    // A_a

  bool is_virtual() const { return virtual_kind != VirtualKind::none; }
};

struct ArrowClassification {
  std::vector<ArrowInfo> arrows;
  const ArrowInfo& operator[](ArrowId a) const { return arrows.at(static_cast<size_t>(a)); }
};

ArrowClassification classify_arrows(const BiserialQuiverData& data);
std::vector<VertexKind> classify_vertices(const BiserialQuiverData& data);
std::string to_string(VertexKind k);

enum class ValidationLevel { structural, full };

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

// Structural checks and the shape-based exclusions. The full level is
// provided by the algebra engine (validate_full in algebra.hpp).
ValidationReport validate_structural(const PresentationSpec& spec);
ValidationReport validate_structural(const BiserialQuiverData& data);

namespace rules {
inline constexpr const char* kInput = "input";
inline constexpr const char* kTwoRegular = "quiver.two-regular";
inline constexpr const char* kConnected = "quiver.connected";
inline constexpr const char* kPermutation = "f.permutation";
inline constexpr const char* kComposable = "f.composable";
inline constexpr const char* kWeights = "weights";
inline constexpr const char* kParameters = "parameters";
inline constexpr const char* kBorder = "border.domain";
inline constexpr const char* kTriangleOrbit = "triangles.orbit-length";
inline constexpr const char* kTriangleWeight = "triangles.weight";
inline constexpr const char* kLocalAllTriangles = "excluded.local-all-triangles";
inline constexpr const char* kLocalBorder = "excluded.local-border-deformation";
inline constexpr const char* kDiscVirtualLoop = "excluded.disc-virtual-loop";
inline constexpr const char* kTriangleAllVirtual = "excluded.triangle-all-virtual";
inline constexpr const char* kNotFinite = "algebra.not-finite-dimensional";
inline constexpr const char* kNotSymmetric = "algebra.not-symmetric";
}  // namespace rules

}  // namespace hybrid
