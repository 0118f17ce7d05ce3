#pragma once

#include "hybrid/quiver.hpp"

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace oracle {

using Scalar = mpq_class;
using Sparse = std::map<int, Scalar>;  // word index -> coefficient

// Brute-force model of KQ/I built straight from a presentation: every path
// up to a length bound, and the ideal spanned by all u r v truncated there.
// Shares no code with the library beyond the parsed presentation.
class NaiveAlgebra {
 public:
  struct Word {
    int source = 0, target = 0;
    std::vector<int> arrows;  // indices into the presentation's arrow list
  };

  // Looks for the least N such that every path of length N is a combination
  // of products u r v whose terms all have length <= max(mn) + extra; that
  // proves J^N inside I, and the algebra is then the quotient modulo J^N.
  // nullopt when no such N is found.
  static std::optional<NaiveAlgebra> build(const hybrid::PresentationSpec& spec, int extra = 4);

  int bound() const { return bound_; }  // N with J^N inside I
  int dim() const;
  int dim_between(int i, int j) const;  // e_i A e_j, vertices in presentation order
  int vertex_index(const std::string& name) const;
  int arrow_index(const std::string& name) const;

  const std::vector<Word>& words() const { return words_; }
  // Index of the path, or nullopt when it is longer than the model (hence zero).
  std::optional<int> find(int source, const std::vector<int>& arrows) const;
  bool in_ideal(Sparse v) const;
  // Fully reduced form: a combination of basis words only.
  Sparse normal_form(Sparse v) const;
  std::vector<int> basis() const;  // words that are not pivots of the ideal
  Sparse multiply(int word1, int word2) const;
  std::vector<std::vector<int>> cartan() const;
  // Basis rows of the right ideal generated by a word, over basis words.
  int right_ideal_rank(const std::vector<int>& generators) const;
  int block_count() const;  // linkage classes of the Cartan matrix
  // A functional vanishing on commutators with nonsingular Gram matrix,
  // searched by seeded random combinations; "no" is overwhelmingly likely
  // but not proven.
  bool symmetric_form_found(int trials = 6) const;
  // Rank of the given elements modulo the ideal.
  int rank_modulo(const std::vector<Sparse>& elements) const;

 private:
  NaiveAlgebra() = default;
  static NaiveAlgebra span(const hybrid::PresentationSpec& spec, int model, bool truncate);
  bool insert(Sparse v);              // false when v reduces to zero
  Sparse reduce(Sparse v) const;      // leading-term reduction

  std::vector<std::string> vertices_, arrow_names_;
  std::vector<int> source_, target_;
  int bound_ = 0;
  std::vector<Word> words_;
  std::map<std::pair<int, std::vector<int>>, int> index_;
  std::map<int, Sparse> rows_;  // pivot -> monic row whose largest index is the pivot
};

}  // namespace oracle
