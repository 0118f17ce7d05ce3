#pragma once

#include "hybrid/module.hpp"
#include "hybrid/quiver.hpp"

#include <string>
#include <vector>

namespace hybrid {

// A component of the separated quiver, as the alternating cycle
// i_1 -alpha_1-> j_1 <-beta_1- i_2 -alpha_2-> ... j_r <-beta_r- i_1.
struct SeparatedComponent {
  std::vector<ArrowId> alpha;  // alpha[k] : i[k] -> j[k]
  std::vector<ArrowId> beta;   // beta[k] : i[k+1] -> j[k]
  std::vector<VertexId> i;
  std::vector<VertexId> j;
  int rank() const { return static_cast<int>(alpha.size()); }
};

// Every arrow lies in exactly one component; components are ordered by
// their least arrow, which is alpha_1.
std::vector<SeparatedComponent> separated_components(const Quiver& q);

// True when no arrow is virtual and the Gabriel quiver is all of Q.
bool gabriel_quiver_is_two_regular(const BiserialQuiverData& data, const FiniteDimAlgebra& a);

// theta = p + x q, psi = c_alpha p^ - x^{-1} c_{bar alpha} q^ with B_alpha = p p^
// and B_{bar alpha} = q q^; p, q the initial parts of lengths p_length, q_length.
struct CyclicDetector {
  ArrowId alpha = -1;
  Path p, p_hat, q, q_hat;
  Rational x;
  VectorQ theta, psi;
  bool products_vanish = false;   // theta psi = 0 = psi theta
  bool hypotheses_hold = false;   // the four monomial products and both dimension counts
  std::vector<std::string> failures;
};
CyclicDetector build_cyclic_detector(const BiserialQuiverData& data, const FiniteDimAlgebra& a, ArrowId alpha,
                                     int p_length, int q_length, const Rational& x);

// S has columns z_nu in P_1 = (+) e_{i_nu} H, T has columns v_nu in
// P_2 = (+) e_{j_nu} H; entry (mu, nu) of S lies in e_{i_mu} H e_{j_nu}.
struct DetectorPair {
  SeparatedComponent component;
  Rational x;
  std::vector<std::vector<VectorQ>> s, t;  // [row][column]
  bool st_zero = false;
  bool ts_zero = false;
};
// Requires rank >= 2; use build_cyclic_detector for double arrows.
DetectorPair build_detecting_pair(const BiserialQuiverData& data, const FiniteDimAlgebra& a,
                                  const SeparatedComponent& component, const Rational& x);
RightModule s_module(const FiniteDimAlgebra& a, const DetectorPair& pair);  // S_x H inside P_1
RightModule t_module(const FiniteDimAlgebra& a, const DetectorPair& pair);  // T_x H inside P_2

// Linear maps of S and T on M(1) = (+) M e_{i_nu} and M(2) = (+) M e_{j_nu}.
MatrixQ s_map(const FiniteDimAlgebra& a, const DetectorPair& pair, const RightModule& m);
MatrixQ t_map(const FiniteDimAlgebra& a, const DetectorPair& pair, const RightModule& m);

struct ExactnessReport {
  bool socle_annihilates = false;
  bool image_s_is_kernel_t = false;
  bool image_t_is_kernel_s = false;
  bool kernel_s_is_socle = false;  // Ker S = (+) soc(M) e_{i_nu}
  bool kernel_t_is_radical = false;  // Ker T = (+) rad(M) e_{j_nu}
  bool exact() const { return image_s_is_kernel_t && image_t_is_kernel_s; }
};
ExactnessReport check_detector_exactness(const FiniteDimAlgebra& a, const DetectorPair& pair, const RightModule& m);

// For the rank-one case the same report is computed for theta, psi on M e_i, M e_j.
ExactnessReport check_detector_exactness(const FiniteDimAlgebra& a, const CyclicDetector& det, const RightModule& m);

// The default parameter sample for detector families.
std::vector<Rational> detector_parameters();

}  // namespace hybrid
