#include "hybrid/detectors.hpp"

#include <algorithm>
#include <stdexcept>

namespace hybrid {

namespace {

using Index = Eigen::Index;

size_t sz(int k) { return static_cast<size_t>(k); }

ArrowId other_incoming(const Quiver& q, ArrowId a) {
  for (ArrowId b : q.incoming(q.arrow(a).target)) {
    if (b != a) return b;
  }
  // a loop twice into the same vertex cannot happen in a 2-regular quiver
  throw std::logic_error("vertex with a single incoming arrow");
}

ArrowId other_outgoing(const Quiver& q, ArrowId a) {
  for (ArrowId b : q.outgoing(q.arrow(a).source)) {
    if (b != a) return b;
  }
  throw std::logic_error("vertex with a single outgoing arrow");
}

Path drop_prefix(const Path& p, int k, const Quiver& q) {
  Path out{p.source, p.target, {}};
  out.arrows.assign(p.arrows.begin() + k, p.arrows.end());
  out.source = out.arrows.empty() ? p.target : q.arrow(out.arrows.front()).source;
  return out;
}

Path take_prefix(const Path& p, int k, const Quiver& q) {
  Path out{p.source, p.source, {}};
  out.arrows.assign(p.arrows.begin(), p.arrows.begin() + k);
  out.target = out.arrows.empty() ? p.source : q.arrow(out.arrows.back()).target;
  return out;
}

// Matrix of the linear map (m_mu) -> (sum_mu m_mu E[mu][nu]) on the module.
MatrixQ element_matrix_map(const FiniteDimAlgebra& a, const RightModule& m,
                           const std::vector<std::vector<VectorQ>>& entries,
                           const std::vector<VertexId>& rows, const std::vector<VertexId>& cols) {
  std::vector<int> row_off(rows.size() + 1, 0), col_off(cols.size() + 1, 0);
  for (size_t k = 0; k < rows.size(); ++k) row_off[k + 1] = row_off[k] + m.dims[sz(rows[k])];
  for (size_t k = 0; k < cols.size(); ++k) col_off[k + 1] = col_off[k] + m.dims[sz(cols[k])];
  MatrixQ out = MatrixQ::Zero(row_off.back(), col_off.back());
  for (size_t mu = 0; mu < rows.size(); ++mu) {
    for (size_t nu = 0; nu < cols.size(); ++nu) {
      const int dr = m.dims[sz(rows[mu])], dc = m.dims[sz(cols[nu])];
      if (dr == 0 || dc == 0 || is_zero(entries[mu][nu])) continue;
      MatrixQ whole = act(a, m, entries[mu][nu]);
      out.block(row_off[mu], col_off[nu], dr, dc) =
          whole.block(m.offset(rows[mu]), m.offset(cols[nu]), dr, dc);
    }
  }
  return out;
}

// Row space of the graded subspace sub restricted to the listed vertices.
MatrixQ graded_rows(const RightModule& m, const GradedSubspace& sub, const std::vector<VertexId>& vertices) {
  int total = 0;
  for (VertexId v : vertices) total += m.dims[sz(v)];
  int nrows = 0;
  for (VertexId v : vertices) nrows += static_cast<int>(sub.rows[sz(v)].rows());
  MatrixQ out = MatrixQ::Zero(nrows, total);
  int r = 0, c = 0;
  for (VertexId v : vertices) {
    const MatrixQ& block = sub.rows[sz(v)];
    if (block.rows() > 0) out.block(r, c, block.rows(), block.cols()) = block;
    r += static_cast<int>(block.rows());
    c += m.dims[sz(v)];
  }
  return out;
}

bool same_row_space(const MatrixQ& x, const MatrixQ& y) {
  const Index rx = x.rows() == 0 ? 0 : rank(x);
  const Index ry = y.rows() == 0 ? 0 : rank(y);
  if (rx != ry) return false;
  if (rx == 0) return true;
  MatrixQ both(x.rows() + y.rows(), x.cols());
  both << x, y;
  return rank(both) == rx;
}

MatrixQ kernel_rows(const MatrixQ& map) {
  if (map.rows() == 0) return map;
  if (map.cols() == 0) return MatrixQ::Identity(map.rows(), map.rows());
  return left_nullspace(map);
}

ExactnessReport exactness(const FiniteDimAlgebra& a, const RightModule& m,
                          const std::vector<std::vector<VectorQ>>& s, const std::vector<std::vector<VectorQ>>& t,
                          const std::vector<VertexId>& is, const std::vector<VertexId>& js) {
  ExactnessReport out;
  out.socle_annihilates = socle_annihilates(a, m);
  const MatrixQ smap = element_matrix_map(a, m, s, is, js);
  const MatrixQ tmap = element_matrix_map(a, m, t, js, is);
  const MatrixQ ker_s = kernel_rows(smap), ker_t = kernel_rows(tmap);
  out.image_s_is_kernel_t = same_row_space(smap, ker_t);
  out.image_t_is_kernel_s = same_row_space(tmap, ker_s);
  out.kernel_s_is_socle = same_row_space(ker_s, graded_rows(m, socle_of(a, m), is));
  out.kernel_t_is_radical = same_row_space(ker_t, graded_rows(m, radical_of(a, m), js));
  return out;
}

}  // namespace

std::vector<SeparatedComponent> separated_components(const Quiver& q) {
  std::vector<bool> used(sz(q.arrow_count()), false);
  std::vector<SeparatedComponent> out;
  for (ArrowId start = 0; start < q.arrow_count(); ++start) {
    if (used[sz(start)]) continue;
    SeparatedComponent c;
    ArrowId a = start;
    do {
      const ArrowId b = other_incoming(q, a);
      c.alpha.push_back(a);
      c.beta.push_back(b);
      c.i.push_back(q.arrow(a).source);
      c.j.push_back(q.arrow(a).target);
      used[sz(a)] = used[sz(b)] = true;
      a = other_outgoing(q, b);
    } while (a != start);
    out.push_back(std::move(c));
  }
  return out;
}

bool gabriel_quiver_is_two_regular(const BiserialQuiverData& data, const FiniteDimAlgebra& a) {
  for (const auto& info : classify_arrows(data).arrows) {
    if (info.is_virtual()) return false;
  }
  return static_cast<int>(gabriel_quiver(a).arrows.size()) == a.quiver().arrow_count();
}

CyclicDetector build_cyclic_detector(const BiserialQuiverData& data, const FiniteDimAlgebra& a, ArrowId alpha,
                                     int p_length, int q_length, const Rational& x) {
  if (x == 0) throw std::invalid_argument("detector parameter must be nonzero");
  const Quiver& q = data.quiver();
  const ArrowId alpha_bar = data.bar(alpha);
  const Path b_alpha = data.socle_path(alpha), b_bar = data.socle_path(alpha_bar);
  if (p_length < 1 || p_length >= static_cast<int>(b_alpha.arrows.size()) || q_length < 1 ||
      q_length >= static_cast<int>(b_bar.arrows.size())) {
    throw std::invalid_argument("p and q must be nonempty initial parts of A_alpha and A_{bar alpha}");
  }
  CyclicDetector d;
  d.alpha = alpha;
  d.x = x;
  d.p = take_prefix(b_alpha, p_length, q);
  d.p_hat = drop_prefix(b_alpha, p_length, q);
  d.q = take_prefix(b_bar, q_length, q);
  d.q_hat = drop_prefix(b_bar, q_length, q);
  if (d.p.target != d.q.target) throw std::invalid_argument("p and q end at different vertices");

  auto cls = classify_arrows(data);
  for (ArrowId arrow : {alpha, alpha_bar}) {
    if (cls[arrow].is_virtual() || cls[arrow].critical) {
      d.failures.push_back("arrow " + q.arrow(arrow).name + " is virtual or critical");
    }
  }
  d.theta = a.normal_form(d.p) + x * a.normal_form(d.q);
  d.psi = data.parameter(alpha) * a.normal_form(d.p_hat) - Rational(data.parameter(alpha_bar) / x) * a.normal_form(d.q_hat);
  d.products_vanish = is_zero(a.multiply(d.theta, d.psi)) && is_zero(a.multiply(d.psi, d.theta));
  if (!d.products_vanish) d.failures.push_back("theta psi or psi theta is nonzero");

  const std::pair<const Path*, const Path*> products[] = {
      {&d.p, &d.q_hat}, {&d.q, &d.p_hat}, {&d.p_hat, &d.q}, {&d.q_hat, &d.p}};
  for (const auto& [left, right] : products) {
    if (!is_zero(a.normal_form(concat(*left, *right)))) {
      d.failures.push_back("product " + q.format(*left) + " * " + q.format(*right) + " is nonzero");
    }
  }
  const int theta_dim = cyclic_module(a, d.p.source, d.theta).dim();
  const int psi_dim = cyclic_module(a, d.p.target, d.psi).dim();
  if (theta_dim != static_cast<int>(d.p_hat.arrows.size() + d.q_hat.arrows.size())) {
    d.failures.push_back("dim theta H = " + std::to_string(theta_dim));
  }
  if (psi_dim != static_cast<int>(d.p.arrows.size() + d.q.arrows.size())) {
    d.failures.push_back("dim psi H = " + std::to_string(psi_dim));
  }
  d.hypotheses_hold = d.failures.empty();
  return d;
}

DetectorPair build_detecting_pair(const BiserialQuiverData& data, const FiniteDimAlgebra& a,
                                  const SeparatedComponent& component, const Rational& x) {
  if (x == 0) throw std::invalid_argument("detector parameter must be nonzero");
  const int r = component.rank();
  if (r < 2) throw std::invalid_argument("rank one component: use the cyclic detector");
  DetectorPair out;
  out.component = component;
  out.x = x;
  out.s.assign(sz(r), std::vector<VectorQ>(sz(r), a.zero()));
  out.t.assign(sz(r), std::vector<VectorQ>(sz(r), a.zero()));
  auto arrow = [&](ArrowId id) { return a.arrow(id); };
  // A_{g(gamma)} scaled by c_gamma: gamma A_{g(gamma)} = B_gamma.
  auto tail = [&](ArrowId gamma) {
    return VectorQ(data.parameter(gamma) * a.normal_form(data.socle_prefix(data.g(gamma))));
  };
  for (int nu = 0; nu < r; ++nu) {
    const size_t n = sz(nu), next = sz((nu + 1) % r), prev = sz((nu + r - 1) % r);
    // column z_nu: alpha_nu in row nu, -beta_nu in row nu+1 (twisted by x for nu = 1)
    out.s[n][n] = arrow(component.alpha[n]);
    out.s[next][n] = (nu == 0 ? Rational(-x) : Rational(-1)) * arrow(component.beta[n]);
    // column v_nu: c A_{g(beta_{nu-1})} in row nu-1, c A_{g(alpha_nu)} in row nu
    out.t[n][n] = tail(component.alpha[n]);
    out.t[prev][n] = (nu == 1 ? Rational(1) / x : Rational(1)) * tail(component.beta[prev]);
  }
  auto product_zero = [&](const std::vector<std::vector<VectorQ>>& left,
                          const std::vector<std::vector<VectorQ>>& right) {
    for (int i = 0; i < r; ++i) {
      for (int j = 0; j < r; ++j) {
        VectorQ sum = a.zero();
        for (int k = 0; k < r; ++k) sum += a.multiply(left[sz(i)][sz(k)], right[sz(k)][sz(j)]);
        if (!is_zero(sum)) return false;
      }
    }
    return true;
  };
  out.st_zero = product_zero(out.s, out.t);
  out.ts_zero = product_zero(out.t, out.s);
  return out;
}

namespace {

RightModule column_module(const FiniteDimAlgebra& a, const std::vector<VertexId>& tops,
                          const std::vector<std::vector<VectorQ>>& entries) {
  FreeModule p = free_module(a, tops);
  std::vector<std::vector<VectorQ>> columns;
  for (size_t col = 0; col < tops.size(); ++col) {
    std::vector<VectorQ> tuple;
    for (size_t row = 0; row < tops.size(); ++row) tuple.push_back(entries[row][col]);
    columns.push_back(tuple);
  }
  return module_generated_by(a, p, columns);
}

}  // namespace

RightModule s_module(const FiniteDimAlgebra& a, const DetectorPair& pair) {
  return column_module(a, pair.component.i, pair.s);
}

RightModule t_module(const FiniteDimAlgebra& a, const DetectorPair& pair) {
  return column_module(a, pair.component.j, pair.t);
}

MatrixQ s_map(const FiniteDimAlgebra& a, const DetectorPair& pair, const RightModule& m) {
  return element_matrix_map(a, m, pair.s, pair.component.i, pair.component.j);
}

MatrixQ t_map(const FiniteDimAlgebra& a, const DetectorPair& pair, const RightModule& m) {
  return element_matrix_map(a, m, pair.t, pair.component.j, pair.component.i);
}

ExactnessReport check_detector_exactness(const FiniteDimAlgebra& a, const DetectorPair& pair, const RightModule& m) {
  return exactness(a, m, pair.s, pair.t, pair.component.i, pair.component.j);
}

ExactnessReport check_detector_exactness(const FiniteDimAlgebra& a, const CyclicDetector& det, const RightModule& m) {
  return exactness(a, m, {{det.theta}}, {{det.psi}}, {det.p.source}, {det.p.target});
}

std::vector<Rational> detector_parameters() { return {Rational(1), Rational(2), Rational(1, 2), Rational(-1)}; }

}  // namespace hybrid
