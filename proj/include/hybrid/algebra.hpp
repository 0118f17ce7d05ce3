#pragma once

#include "hybrid/closure.hpp"
#include "hybrid/linalg.hpp"
#include "hybrid/path.hpp"
#include "hybrid/presentation.hpp"
#include "hybrid/quiver.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hybrid {

class CapExceeded : public std::runtime_error {
 public:
  explicit CapExceeded(int cap);
  int cap() const { return cap_; }

 private:
  int cap_;
};

struct BuildOptions {
  int initial_length = 0;  // certification starts here
  int cap = 0;             // and gives up beyond this length
  // Paths preferred as basis monomials; may be empty.
  std::function<bool(const Path&)> preferred;
};

// H = KQ/I for an ideal I containing all paths of some length.
// Elements are coordinate vectors over basis(); a corner algebra eHe keeps the
// ambient quiver and restricts to paths between the kept vertices.
class FiniteDimAlgebra {
 public:
  // Throws CapExceeded when no truncation up to the cap certifies J^l in I.
  static FiniteDimAlgebra build(const Quiver& q, const std::vector<LinComb>& generators, const BuildOptions& opts);

  const Quiver& quiver() const { return core_->quiver; }
  int dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<Path>& basis() const { return basis_; }
  const Path& basis(int k) const { return basis_[static_cast<size_t>(k)]; }
  const std::vector<VertexId>& vertices() const { return vertices_; }
  bool has_vertex(VertexId v) const;
  // Every path of this length is zero.
  int nilpotency_length() const { return core_->vanishing_length; }
  int certified_truncation() const { return core_->certified_at; }

  VectorQ zero() const { return VectorQ::Zero(dim()); }
  VectorQ normal_form(const Path& p) const;
  VectorQ normal_form(const LinComb& x) const;
  VectorQ unit(VertexId v) const;
  VectorQ one() const;
  VectorQ arrow(ArrowId a) const { return normal_form(Path{quiver().arrow(a).source, quiver().arrow(a).target, {a}}); }
  VectorQ multiply(const VectorQ& x, const VectorQ& y) const;
  LinComb expand(const VectorQ& x) const;
  std::string format(const VectorQ& x) const { return quiver().format(expand(x)); }

  // Basis indices of e_i H e_j, and of e_i H.
  std::vector<int> basis_between(VertexId i, VertexId j) const;
  std::vector<int> basis_from(VertexId i) const;
  std::vector<int> basis_to(VertexId j) const;

  // Matrix of x -> x*a (right) or a*x (left) for an element a, acting on row vectors.
  MatrixQ right_action(const VectorQ& a) const;
  MatrixQ left_action(const VectorQ& a) const;

  // Rows span J^k (J^0 = H).
  MatrixQ radical_power(int k) const;
  // Rows span { x in H : xJ = 0 } intersected with e_i H.
  MatrixQ right_socle(VertexId i) const;
  MatrixQ right_socle() const;

  FiniteDimAlgebra corner(const std::vector<VertexId>& keep) const;

 private:
  struct Core {
    Quiver quiver;
    std::unique_ptr<PathSpace> space;  // paths shorter than vanishing_length
    SparseEchelon echelon;
    int vanishing_length = 0;
    int certified_at = 0;
  };
  FiniteDimAlgebra() = default;
  void init_basis(const std::vector<VertexId>& keep);
  VectorQ coords(const SparseVec& reduced) const;

  std::shared_ptr<const Core> core_;
  std::vector<VertexId> vertices_;
  std::vector<Path> basis_;
  std::vector<int> basis_space_index_;
  std::unordered_map<int, int> coord_of_space_index_;
  // product_[i * dim + j] as sparse coordinates
  std::vector<std::vector<std::pair<int, Rational>>> product_;
};

// The hybrid algebra of the data; preferred basis monomials are initial
// subpaths of the socle paths B_a. Throws CapExceeded.
FiniteDimAlgebra build_algebra(const BiserialQuiverData& data, const RelationSet& relations);
FiniteDimAlgebra build_algebra(const BiserialQuiverData& data);

std::vector<int> dimension_vector(const FiniteDimAlgebra& a);
std::vector<std::vector<int>> cartan_matrix(const FiniteDimAlgebra& a);

struct SymmetricVerdict {
  bool symmetric = false;
  VectorQ functional;            // witness: symmetric and nondegenerate
  std::vector<VectorQ> certificate;  // socle elements no symmetric functional can separate
  std::string reason;
};
SymmetricVerdict symmetric_form_exists(const FiniteDimAlgebra& a);

struct GabrielQuiver {
  std::vector<VertexId> vertices;
  std::vector<ArrowId> arrows;                 // arrows of Q with independent residues in J/J^2
  std::vector<std::vector<int>> multiplicity;  // dim e_i (J/J^2) e_j, indexed by vertex id
};
GabrielQuiver gabriel_quiver(const FiniteDimAlgebra& a);

// Vertex sets of the connected components of the Gabriel quiver.
std::vector<std::vector<VertexId>> block_vertex_sets(const FiniteDimAlgebra& a);
std::vector<FiniteDimAlgebra> block_decomposition(const FiniteDimAlgebra& a);

// Structural checks, then builds the algebra and runs the symmetric-form test.
ValidationReport validate(const BiserialQuiverData& data, ValidationLevel level);
ValidationReport validate(const PresentationSpec& spec, ValidationLevel level);

}  // namespace hybrid
