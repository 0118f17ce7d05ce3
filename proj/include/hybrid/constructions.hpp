#pragma once

#include "hybrid/algebra.hpp"
#include "hybrid/quiver.hpp"

#include <map>
#include <string>
#include <vector>

namespace hybrid {

// The triangulation quiver obtained by splitting every arrow a outside the
// triangles into a' : s(a) -> x_a, a'' : x_a -> t(a) and closing with
// eps_a : x_{f(a)} -> x_a. Closing parameters are 1 unless that leaves the
// starred algebra without a symmetrizing form.
struct StarResult {
  struct Split {
    std::string arrow, first, second, closing, vertex;
  };
  struct ClosingCycle {
    std::vector<std::string> arrows;  // an eps-cycle of g*
    int weight = 1;
    Rational parameter = 1;
    std::string reason;  // why the weight or parameter differs from 1
  };
  BiserialQuiverData data;
  std::vector<Split> splits;
  std::vector<ClosingCycle> closing_cycles;
};
StarResult star(const BiserialQuiverData& data);
std::string split_first_name(const std::string& arrow);   // a'
std::string split_second_name(const std::string& arrow);  // a''
std::string closing_name(const std::string& arrow);       // eps_a
std::string split_vertex_name(const std::string& arrow);  // x_a

// One connected component of the contracted quiver, with its hybrid data and
// the images of its arrows in the ambient algebra.
struct ContractionBlock {
  BiserialQuiverData data;
  std::vector<VertexId> vertices;          // ambient ids, in data's vertex order
  std::vector<Path> shortest;              // per arrow of data: the g-path in the ambient quiver
  std::vector<VectorQ> embedding;          // per arrow of data: shortest path plus correction
  std::map<std::string, Rational> border;  // solved border values of loops outside the triangles

  bool relations_vanish = false;
  bool generates = false;       // the embedded arrows generate the corner algebra
  bool dimensions_match = false;
  std::vector<int> dims, corner_dims;
  bool valid = false;           // structural validation of data
  bool loops_ok = false;        // weight-one orbits of length one are biserial loops
  bool has_non_triangle = false;
  std::vector<bool> corrected;             // per arrow: embedding differs from the shortest path
  std::vector<std::string> failures;
};

struct ContractionResult {
  std::vector<VertexId> gamma;
  std::vector<ContractionBlock> blocks;
  int correction_rounds = 0;
  bool solved = false;
  std::vector<std::string> failures;
  bool is_full = false;  // gamma is every vertex
  // Every block verifies, and off the identity contraction every block has an
  // arrow outside the triangles.
  bool ok() const;
};

// Throws std::invalid_argument when gamma is empty or names unknown vertices.
ContractionResult contract(const BiserialQuiverData& data, const FiniteDimAlgebra& a,
                           const std::vector<VertexId>& gamma);

std::string contracted_arrow_name(const Quiver& q, const Path& p);

struct RoundtripReport {
  StarResult star;
  bool star_valid = false;
  ContractionResult contraction;
  int block = -1;  // the block containing the vertices of H
  std::vector<int> h_dims, block_dims;
  bool dimensions_equal = false;
  bool relations_map_to_zero = false;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};
RoundtripReport roundtrip_verify(const BiserialQuiverData& data);

}  // namespace hybrid
