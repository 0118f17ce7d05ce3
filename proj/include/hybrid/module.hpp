#pragma once

#include "hybrid/algebra.hpp"
#include "hybrid/linalg.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hybrid {

// A finite-dimensional right module over a built algebra, as a representation
// of its quiver. Vectors are rows: an element of M e_s is a row of length
// dims[s], and arrow a : s -> t acts as v -> v * action[a] (a dims[s] x dims[t]
// matrix). Elements of the whole module are concatenations of the vertex
// blocks in vertex order.
struct RightModule {
  std::vector<int> dims;
  std::vector<MatrixQ> action;

  int dim() const;
  int offset(VertexId v) const;
};

// Per-vertex row bases of a graded subspace (rows of the vertex block).
struct GradedSubspace {
  std::vector<MatrixQ> rows;
  int dim() const;
};

// Per-vertex matrices of a module homomorphism, m -> m * maps[v] on M e_v.
struct ModuleMap {
  std::vector<MatrixQ> maps;
};

// Action of a path (block s(p) -> t(p)) and of an algebra element on the
// whole module (dim x dim).
MatrixQ act(const FiniteDimAlgebra& a, const RightModule& m, const Path& p);
MatrixQ act(const FiniteDimAlgebra& a, const RightModule& m, const VectorQ& x);

// Every relation of the algebra acts as zero: checks that path products
// factor through the normal form map, i.e. the module is an H-module.
bool is_module(const FiniteDimAlgebra& a, const RightModule& m);

RightModule zero_module(const FiniteDimAlgebra& a);
RightModule projective_module(const FiniteDimAlgebra& a, VertexId v);
RightModule direct_sum(const RightModule& x, const RightModule& y);

// Submodule generated by whole-module row vectors; generators are split
// into their vertex components first.
GradedSubspace generated_submodule(const FiniteDimAlgebra& a, const RightModule& m, const MatrixQ& generators);
bool is_submodule(const FiniteDimAlgebra& a, const RightModule& m, const GradedSubspace& u);
RightModule restrict_to(const FiniteDimAlgebra& a, const RightModule& m, const GradedSubspace& u);
RightModule quotient(const FiniteDimAlgebra& a, const RightModule& m, const GradedSubspace& u);

GradedSubspace radical_of(const FiniteDimAlgebra& a, const RightModule& m);
GradedSubspace socle_of(const FiniteDimAlgebra& a, const RightModule& m);
int top_dimension(const FiniteDimAlgebra& a, const RightModule& m);
int socle_dimension(const FiniteDimAlgebra& a, const RightModule& m);
// True when soc(H) annihilates the module.
bool socle_annihilates(const FiniteDimAlgebra& a, const RightModule& m);

// The projective P = e_{v_1}H + ... + e_{v_r}H with an index for its
// elements given as tuples of algebra elements.
struct FreeModule {
  std::vector<VertexId> tops;
  RightModule module;
  // Whole-module row vector of (x_1, ..., x_r), x_k taken in e_{v_k}H.
  RowVectorQ embed(const FiniteDimAlgebra& a, const std::vector<VectorQ>& tuple) const;
  // Inverse of embed.
  std::vector<VectorQ> components(const FiniteDimAlgebra& a, const RowVectorQ& v) const;

  std::vector<std::vector<std::pair<int, int>>> slots;  // per vertex block: (summand, basis index)
};
FreeModule free_module(const FiniteDimAlgebra& a, const std::vector<VertexId>& tops);

// The module generated inside a free module by tuples; e.g. xH for a single
// x in e_vH, or the column span of a matrix over H.
RightModule module_generated_by(const FiniteDimAlgebra& a, const FreeModule& p,
                                const std::vector<std::vector<VectorQ>>& tuples);
RightModule cyclic_module(const FiniteDimAlgebra& a, VertexId v, const VectorQ& x);

RightModule simple_module(const FiniteDimAlgebra& a, VertexId v);
RightModule arrow_module(const FiniteDimAlgebra& a, ArrowId alpha);
// rad(e_vH) / soc(e_vH)
RightModule middle_module(const FiniteDimAlgebra& a, VertexId v);

struct ProjectiveCover {
  FreeModule projective;
  ModuleMap surjection;    // P -> M
  GradedSubspace kernel;   // inside P
  RightModule syzygy;      // Omega(M)
};
ProjectiveCover projective_cover(const FiniteDimAlgebra& a, const RightModule& m);
RightModule omega(const FiniteDimAlgebra& a, const RightModule& m);

// Basis of Hom_H(M, N).
std::vector<ModuleMap> hom_basis(const FiniteDimAlgebra& a, const RightModule& m, const RightModule& n);
int hom_dim(const FiniteDimAlgebra& a, const RightModule& m, const RightModule& n);
bool is_homomorphism(const FiniteDimAlgebra& a, const RightModule& m, const RightModule& n, const ModuleMap& f);
ModuleMap compose(const ModuleMap& first, const ModuleMap& second);  // second after first
bool is_invertible(const ModuleMap& f);

// dim of End(M) modulo its radical (trace-form radical, characteristic 0).
// It is 1 exactly when M stays indecomposable over the algebraic closure.
int endomorphism_top_dim(const FiniteDimAlgebra& a, const RightModule& m);
bool is_indecomposable(const FiniteDimAlgebra& a, const RightModule& m);

struct IsoResult {
  bool isomorphic = false;
  bool exact = true;                // false when decided by sampling
  std::optional<ModuleMap> witness;
  std::string reason;
};
IsoResult iso_test(const FiniteDimAlgebra& a, const RightModule& m, const RightModule& n);

struct OmegaOrbit {
  std::vector<RightModule> steps;  // steps[0] = M, steps[k] = Omega^k(M)
  std::optional<int> period;
  bool exact = true;
};
OmegaOrbit omega_orbit(const FiniteDimAlgebra& a, const RightModule& m, int max_steps = 12);

// dim of the stable Hom space: Hom(W, M) modulo maps through projectives.
int stable_hom_dim(const FiniteDimAlgebra& a, const RightModule& w, const RightModule& m);
int ext1_dim(const FiniteDimAlgebra& a, const RightModule& u, const RightModule& v);

// Parses "simple:V", "projective:V", "arrow:NAME", "middle:V",
// "cyclic:EXPR" (the right ideal xH) with EXPR a sum like "alpha.beta - 2/3*gamma"
// or "e_1"; all terms of EXPR must start at one vertex.
RightModule parse_module_spec(const FiniteDimAlgebra& a, const std::string& spec);
// Linear combination of paths in the quiver, as above.
LinComb parse_element(const Quiver& q, const std::string& expr);

}  // namespace hybrid
