#include "hybrid/module.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>

namespace hybrid {

namespace {

using Index = Eigen::Index;

Index ix(int k) { return static_cast<Index>(k); }
size_t sz(int k) { return static_cast<size_t>(k); }

MatrixQ empty_rows(int cols) { return MatrixQ::Zero(0, ix(cols)); }

MatrixQ stack(const MatrixQ& top, const MatrixQ& bottom) {
  MatrixQ out(top.rows() + bottom.rows(), top.cols());
  if (top.rows() > 0) out.topRows(top.rows()) = top;
  if (bottom.rows() > 0) out.bottomRows(bottom.rows()) = bottom;
  return out;
}

MatrixQ product(const MatrixQ& x, const MatrixQ& y) {
  MatrixQ out = MatrixQ::Zero(x.rows(), y.cols());
  for (Index i = 0; i < x.rows(); ++i) {
    for (Index k = 0; k < x.cols(); ++k) {
      if (x(i, k) == 0) continue;
      for (Index j = 0; j < y.cols(); ++j) {
        if (y(k, j) != 0) out(i, j) += x(i, k) * y(k, j);
      }
    }
  }
  return out;
}

MatrixQ basis_rows(const MatrixQ& m) {
  if (m.rows() == 0) return m;
  return row_basis(m);
}

// Rows of m, as a subspace, restricted to the row-space basis.
MatrixQ coords_or_throw(const MatrixQ& basis, const MatrixQ& rows) {
  if (rows.rows() == 0) return MatrixQ::Zero(0, basis.rows());
  if (basis.rows() == 0) {
    if (!is_zero(rows)) throw std::logic_error("vector outside the subspace");
    return MatrixQ::Zero(rows.rows(), 0);
  }
  auto x = coordinates_in(basis, rows);
  if (!x) throw std::logic_error("vector outside the subspace");
  return *x;
}

VectorQ basis_vector(const FiniteDimAlgebra& a, int k) {
  VectorQ e = a.zero();
  e(k) = 1;
  return e;
}

}  // namespace

int RightModule::dim() const { return std::accumulate(dims.begin(), dims.end(), 0); }

int RightModule::offset(VertexId v) const {
  return std::accumulate(dims.begin(), dims.begin() + v, 0);
}

int GradedSubspace::dim() const {
  int d = 0;
  for (const auto& r : rows) d += static_cast<int>(r.rows());
  return d;
}

MatrixQ act(const FiniteDimAlgebra& a, const RightModule& m, const Path& p) {
  MatrixQ out = MatrixQ::Identity(ix(m.dims[sz(p.source)]), ix(m.dims[sz(p.source)]));
  for (ArrowId arrow : p.arrows) out = product(out, m.action[sz(arrow)]);
  (void)a;
  return out;
}

MatrixQ act(const FiniteDimAlgebra& a, const RightModule& m, const VectorQ& x) {
  const int n = m.dim();
  MatrixQ out = MatrixQ::Zero(ix(n), ix(n));
  for (int k = 0; k < a.dim(); ++k) {
    if (x(k) == 0) continue;
    const Path& p = a.basis(k);
    MatrixQ block = act(a, m, p);
    const Index r0 = ix(m.offset(p.source)), c0 = ix(m.offset(p.target));
    out.block(r0, c0, block.rows(), block.cols()) += x(k) * block;
  }
  return out;
}

bool is_module(const FiniteDimAlgebra& a, const RightModule& m) {
  const Quiver& q = a.quiver();
  if (static_cast<int>(m.dims.size()) != q.vertex_count()) return false;
  if (static_cast<int>(m.action.size()) != q.arrow_count()) return false;
  for (ArrowId arrow = 0; arrow < q.arrow_count(); ++arrow) {
    const auto& ar = q.arrow(arrow);
    if (m.action[sz(arrow)].rows() != m.dims[sz(ar.source)] || m.action[sz(arrow)].cols() != m.dims[sz(ar.target)]) {
      return false;
    }
  }
  for (int k = 0; k < a.dim(); ++k) {
    const Path& p = a.basis(k);
    const MatrixQ pk = act(a, m, p);
    for (ArrowId arrow : q.outgoing(p.target)) {
      if (!a.has_vertex(q.arrow(arrow).target)) continue;
      MatrixQ lhs = product(pk, m.action[sz(arrow)]);
      VectorQ nf = a.multiply(basis_vector(a, k), a.arrow(arrow));
      MatrixQ rhs = MatrixQ::Zero(lhs.rows(), lhs.cols());
      for (int j = 0; j < a.dim(); ++j) {
        if (nf(j) != 0) rhs += nf(j) * act(a, m, a.basis(j));
      }
      if (lhs != rhs) return false;
    }
  }
  return true;
}

RightModule zero_module(const FiniteDimAlgebra& a) {
  const Quiver& q = a.quiver();
  RightModule out;
  out.dims.assign(sz(q.vertex_count()), 0);
  for (ArrowId arrow = 0; arrow < q.arrow_count(); ++arrow) out.action.push_back(MatrixQ::Zero(0, 0));
  return out;
}

RightModule direct_sum(const RightModule& x, const RightModule& y) {
  RightModule out;
  for (size_t v = 0; v < x.dims.size(); ++v) out.dims.push_back(x.dims[v] + y.dims[v]);
  for (size_t k = 0; k < x.action.size(); ++k) {
    const MatrixQ& ax = x.action[k];
    const MatrixQ& ay = y.action[k];
    MatrixQ m = MatrixQ::Zero(ax.rows() + ay.rows(), ax.cols() + ay.cols());
    m.block(0, 0, ax.rows(), ax.cols()) = ax;
    m.block(ax.rows(), ax.cols(), ay.rows(), ay.cols()) = ay;
    out.action.push_back(m);
  }
  return out;
}

FreeModule free_module(const FiniteDimAlgebra& a, const std::vector<VertexId>& tops) {
  const Quiver& q = a.quiver();
  FreeModule out;
  out.tops = tops;
  out.slots.assign(sz(q.vertex_count()), {});
  std::map<std::pair<int, int>, int> position;
  for (size_t k = 0; k < tops.size(); ++k) {
    for (int b : a.basis_from(tops[k])) {
      auto& block = out.slots[sz(a.basis(b).target)];
      position[{static_cast<int>(k), b}] = static_cast<int>(block.size());
      block.emplace_back(static_cast<int>(k), b);
    }
  }
  for (const auto& block : out.slots) out.module.dims.push_back(static_cast<int>(block.size()));
  for (ArrowId arrow = 0; arrow < q.arrow_count(); ++arrow) {
    const auto& ar = q.arrow(arrow);
    MatrixQ m = MatrixQ::Zero(ix(out.module.dims[sz(ar.source)]), ix(out.module.dims[sz(ar.target)]));
    if (a.has_vertex(ar.source) && a.has_vertex(ar.target)) {
      const VectorQ arrow_elt = a.arrow(arrow);
      const auto& block = out.slots[sz(ar.source)];
      for (size_t r = 0; r < block.size(); ++r) {
        const auto [k, b] = block[r];
        VectorQ y = a.multiply(basis_vector(a, b), arrow_elt);
        for (int j = 0; j < a.dim(); ++j) {
          if (y(j) != 0) m(static_cast<Index>(r), ix(position.at({k, j}))) = y(j);
        }
      }
    }
    out.module.action.push_back(m);
  }
  return out;
}

RowVectorQ FreeModule::embed(const FiniteDimAlgebra& a, const std::vector<VectorQ>& tuple) const {
  if (tuple.size() != tops.size()) throw std::invalid_argument("tuple length differs from the number of summands");
  RowVectorQ out = RowVectorQ::Zero(ix(module.dim()));
  for (size_t v = 0; v < slots.size(); ++v) {
    const int base = module.offset(static_cast<VertexId>(v));
    for (size_t r = 0; r < slots[v].size(); ++r) {
      const auto [k, b] = slots[v][r];
      out(ix(base) + static_cast<Index>(r)) = tuple[sz(k)](b);
    }
  }
  for (size_t k = 0; k < tuple.size(); ++k) {
    for (int b = 0; b < a.dim(); ++b) {
      if (tuple[k](b) != 0 && a.basis(b).source != tops[k]) {
        throw std::invalid_argument("tuple entry does not lie in e_v H for its summand");
      }
    }
  }
  return out;
}

std::vector<VectorQ> FreeModule::components(const FiniteDimAlgebra& a, const RowVectorQ& v) const {
  std::vector<VectorQ> out(tops.size(), a.zero());
  for (size_t vert = 0; vert < slots.size(); ++vert) {
    const int base = module.offset(static_cast<VertexId>(vert));
    for (size_t r = 0; r < slots[vert].size(); ++r) {
      const auto [k, b] = slots[vert][r];
      out[sz(k)](b) = v(ix(base) + static_cast<Index>(r));
    }
  }
  return out;
}

RightModule projective_module(const FiniteDimAlgebra& a, VertexId v) { return free_module(a, {v}).module; }

GradedSubspace generated_submodule(const FiniteDimAlgebra& a, const RightModule& m, const MatrixQ& generators) {
  const Quiver& q = a.quiver();
  GradedSubspace u;
  for (int v = 0; v < q.vertex_count(); ++v) {
    const int d = m.dims[sz(v)];
    MatrixQ rows = generators.block(0, ix(m.offset(v)), generators.rows(), ix(d));
    u.rows.push_back(basis_rows(rows.rows() > 0 ? rows : empty_rows(d)));
  }
  bool grew = true;
  while (grew) {
    grew = false;
    for (ArrowId arrow = 0; arrow < q.arrow_count(); ++arrow) {
      const auto& ar = q.arrow(arrow);
      const MatrixQ& src = u.rows[sz(ar.source)];
      if (src.rows() == 0) continue;
      MatrixQ image = product(src, m.action[sz(arrow)]);
      MatrixQ& dst = u.rows[sz(ar.target)];
      MatrixQ merged = basis_rows(stack(dst, image));
      if (merged.rows() > dst.rows()) {
        dst = merged;
        grew = true;
      }
    }
  }
  return u;
}

bool is_submodule(const FiniteDimAlgebra& a, const RightModule& m, const GradedSubspace& u) {
  const Quiver& q = a.quiver();
  for (ArrowId arrow = 0; arrow < q.arrow_count(); ++arrow) {
    const auto& ar = q.arrow(arrow);
    const MatrixQ& src = u.rows[sz(ar.source)];
    if (src.rows() == 0) continue;
    MatrixQ image = product(src, m.action[sz(arrow)]);
    const MatrixQ& dst = u.rows[sz(ar.target)];
    if (rank(stack(dst, image)) != dst.rows()) return false;
  }
  return true;
}

RightModule restrict_to(const FiniteDimAlgebra& a, const RightModule& m, const GradedSubspace& u) {
  const Quiver& q = a.quiver();
  RightModule out;
  for (const auto& r : u.rows) out.dims.push_back(static_cast<int>(r.rows()));
  for (ArrowId arrow = 0; arrow < q.arrow_count(); ++arrow) {
    const auto& ar = q.arrow(arrow);
    const MatrixQ& src = u.rows[sz(ar.source)];
    MatrixQ image = product(src, m.action[sz(arrow)]);
    out.action.push_back(coords_or_throw(u.rows[sz(ar.target)], image));
  }
  return out;
}

RightModule quotient(const FiniteDimAlgebra& a, const RightModule& m, const GradedSubspace& u) {
  const Quiver& q = a.quiver();
  std::vector<MatrixQ> complement, change;
  RightModule out;
  for (int v = 0; v < q.vertex_count(); ++v) {
    const MatrixQ& sub = u.rows[sz(v)];
    MatrixQ c = sub.rows() > 0 ? complement_rows(sub) : MatrixQ(MatrixQ::Identity(ix(m.dims[sz(v)]), ix(m.dims[sz(v)])));
    complement.push_back(c);
    change.push_back(stack(c, sub));
    out.dims.push_back(static_cast<int>(c.rows()));
  }
  for (ArrowId arrow = 0; arrow < q.arrow_count(); ++arrow) {
    const auto& ar = q.arrow(arrow);
    MatrixQ image = product(complement[sz(ar.source)], m.action[sz(arrow)]);
    MatrixQ coords = coords_or_throw(change[sz(ar.target)], image);
    out.action.push_back(coords.leftCols(ix(out.dims[sz(ar.target)])));
  }
  return out;
}

GradedSubspace radical_of(const FiniteDimAlgebra& a, const RightModule& m) {
  const Quiver& q = a.quiver();
  GradedSubspace u;
  for (int v = 0; v < q.vertex_count(); ++v) {
    MatrixQ rows = empty_rows(m.dims[sz(v)]);
    for (ArrowId arrow : q.incoming(v)) rows = stack(rows, m.action[sz(arrow)]);
    u.rows.push_back(basis_rows(rows));
  }
  return u;
}

GradedSubspace socle_of(const FiniteDimAlgebra& a, const RightModule& m) {
  const Quiver& q = a.quiver();
  GradedSubspace u;
  for (int v = 0; v < q.vertex_count(); ++v) {
    const int d = m.dims[sz(v)];
    int cols = 0;
    for (ArrowId arrow : q.outgoing(v)) cols += static_cast<int>(m.action[sz(arrow)].cols());
    MatrixQ all = MatrixQ::Zero(ix(d), ix(cols));
    int c = 0;
    for (ArrowId arrow : q.outgoing(v)) {
      const MatrixQ& act_a = m.action[sz(arrow)];
      if (act_a.cols() > 0) all.block(0, ix(c), ix(d), act_a.cols()) = act_a;
      c += static_cast<int>(act_a.cols());
    }
    if (d == 0) {
      u.rows.push_back(empty_rows(0));
    } else if (cols == 0) {
      u.rows.push_back(MatrixQ::Identity(ix(d), ix(d)));
    } else {
      u.rows.push_back(basis_rows(left_nullspace(all)));
    }
  }
  return u;
}

int top_dimension(const FiniteDimAlgebra& a, const RightModule& m) { return m.dim() - radical_of(a, m).dim(); }

int socle_dimension(const FiniteDimAlgebra& a, const RightModule& m) { return socle_of(a, m).dim(); }

bool socle_annihilates(const FiniteDimAlgebra& a, const RightModule& m) {
  MatrixQ soc = a.right_socle();
  for (Index r = 0; r < soc.rows(); ++r) {
    if (!is_zero(act(a, m, VectorQ(soc.row(r).transpose())))) return false;
  }
  return true;
}

RightModule module_generated_by(const FiniteDimAlgebra& a, const FreeModule& p,
                                const std::vector<std::vector<VectorQ>>& tuples) {
  MatrixQ gens(ix(static_cast<int>(tuples.size())), ix(p.module.dim()));
  for (size_t k = 0; k < tuples.size(); ++k) gens.row(static_cast<Index>(k)) = p.embed(a, tuples[k]);
  return restrict_to(a, p.module, generated_submodule(a, p.module, gens));
}

RightModule cyclic_module(const FiniteDimAlgebra& a, VertexId v, const VectorQ& x) {
  return module_generated_by(a, free_module(a, {v}), {{x}});
}

RightModule simple_module(const FiniteDimAlgebra& a, VertexId v) {
  const Quiver& q = a.quiver();
  RightModule out;
  out.dims.assign(sz(q.vertex_count()), 0);
  out.dims[sz(v)] = 1;
  for (ArrowId arrow = 0; arrow < q.arrow_count(); ++arrow) {
    const auto& ar = q.arrow(arrow);
    out.action.push_back(MatrixQ::Zero(ix(out.dims[sz(ar.source)]), ix(out.dims[sz(ar.target)])));
  }
  return out;
}

RightModule arrow_module(const FiniteDimAlgebra& a, ArrowId alpha) {
  return cyclic_module(a, a.quiver().arrow(alpha).source, a.arrow(alpha));
}

RightModule middle_module(const FiniteDimAlgebra& a, VertexId v) {
  RightModule p = projective_module(a, v);
  GradedSubspace rad = radical_of(a, p);
  GradedSubspace soc = socle_of(a, p);
  RightModule r = restrict_to(a, p, rad);
  GradedSubspace inner;
  for (size_t w = 0; w < rad.rows.size(); ++w) {
    MatrixQ meet = intersect_rows(rad.rows[w], soc.rows[w]);
    inner.rows.push_back(coords_or_throw(rad.rows[w], meet));
  }
  return quotient(a, r, inner);
}

ProjectiveCover projective_cover(const FiniteDimAlgebra& a, const RightModule& m) {
  const Quiver& q = a.quiver();
  GradedSubspace rad = radical_of(a, m);
  std::vector<VertexId> tops;
  std::vector<MatrixQ> gens;  // generator rows in M e_v
  for (int v = 0; v < q.vertex_count(); ++v) {
    const int d = m.dims[sz(v)];
    if (d == 0) continue;
    MatrixQ top = rad.rows[sz(v)].rows() > 0 ? complement_rows(rad.rows[sz(v)]) : MatrixQ(MatrixQ::Identity(ix(d), ix(d)));
    for (Index r = 0; r < top.rows(); ++r) {
      tops.push_back(v);
      gens.push_back(top.row(r));
    }
  }
  ProjectiveCover out{free_module(a, tops), {}, {}, {}};
  for (int v = 0; v < q.vertex_count(); ++v) {
    const auto& block = out.projective.slots[sz(v)];
    MatrixQ pi = MatrixQ::Zero(ix(static_cast<int>(block.size())), ix(m.dims[sz(v)]));
    for (size_t r = 0; r < block.size(); ++r) {
      const auto [k, b] = block[r];
      pi.row(static_cast<Index>(r)) = product(gens[sz(k)], act(a, m, a.basis(b)));
    }
    out.surjection.maps.push_back(pi);
    if (pi.rows() == 0) {
      out.kernel.rows.push_back(empty_rows(0));
    } else if (pi.cols() == 0) {
      out.kernel.rows.push_back(MatrixQ::Identity(pi.rows(), pi.rows()));
    } else {
      out.kernel.rows.push_back(basis_rows(left_nullspace(pi)));
    }
  }
  out.syzygy = restrict_to(a, out.projective.module, out.kernel);
  return out;
}

RightModule omega(const FiniteDimAlgebra& a, const RightModule& m) { return projective_cover(a, m).syzygy; }

std::vector<ModuleMap> hom_basis(const FiniteDimAlgebra& a, const RightModule& m, const RightModule& n) {
  const Quiver& q = a.quiver();
  const int nv = q.vertex_count();
  std::vector<int> base(sz(nv) + 1, 0);
  for (int v = 0; v < nv; ++v) base[sz(v) + 1] = base[sz(v)] + m.dims[sz(v)] * n.dims[sz(v)];
  const int unknowns = base[sz(nv)];
  if (unknowns == 0) return {};
  int eqs = 0;
  for (ArrowId arrow = 0; arrow < q.arrow_count(); ++arrow) {
    const auto& ar = q.arrow(arrow);
    eqs += m.dims[sz(ar.source)] * n.dims[sz(ar.target)];
  }
  MatrixQ sys = MatrixQ::Zero(ix(eqs), ix(unknowns));
  int row = 0;
  for (ArrowId arrow = 0; arrow < q.arrow_count(); ++arrow) {
    const auto& ar = q.arrow(arrow);
    const int s = ar.source, t = ar.target;
    const MatrixQ& ma = m.action[sz(arrow)];
    const MatrixQ& na = n.action[sz(arrow)];
    const int ms = m.dims[sz(s)], mt = m.dims[sz(t)], ns = n.dims[sz(s)], nt = n.dims[sz(t)];
    for (int i = 0; i < ms; ++i) {
      for (int j = 0; j < nt; ++j, ++row) {
        // (M_a phi_t)(i, j) - (phi_s N_a)(i, j)
        for (int k = 0; k < mt; ++k) {
          if (ma(ix(i), ix(k)) != 0) sys(ix(row), ix(base[sz(t)] + k * nt + j)) += ma(ix(i), ix(k));
        }
        for (int k = 0; k < ns; ++k) {
          if (na(ix(k), ix(j)) != 0) sys(ix(row), ix(base[sz(s)] + i * ns + k)) -= na(ix(k), ix(j));
        }
      }
    }
  }
  MatrixQ kernel = nullspace(sys);
  std::vector<ModuleMap> out;
  for (Index c = 0; c < kernel.cols(); ++c) {
    ModuleMap f;
    for (int v = 0; v < nv; ++v) {
      const int dm = m.dims[sz(v)], dn = n.dims[sz(v)];
      MatrixQ block(ix(dm), ix(dn));
      for (int i = 0; i < dm; ++i) {
        for (int j = 0; j < dn; ++j) block(ix(i), ix(j)) = kernel(ix(base[sz(v)] + i * dn + j), c);
      }
      f.maps.push_back(block);
    }
    out.push_back(f);
  }
  return out;
}

int hom_dim(const FiniteDimAlgebra& a, const RightModule& m, const RightModule& n) {
  return static_cast<int>(hom_basis(a, m, n).size());
}

bool is_homomorphism(const FiniteDimAlgebra& a, const RightModule& m, const RightModule& n, const ModuleMap& f) {
  const Quiver& q = a.quiver();
  for (ArrowId arrow = 0; arrow < q.arrow_count(); ++arrow) {
    const auto& ar = q.arrow(arrow);
    if (product(m.action[sz(arrow)], f.maps[sz(ar.target)]) != product(f.maps[sz(ar.source)], n.action[sz(arrow)])) {
      return false;
    }
  }
  return true;
}

ModuleMap compose(const ModuleMap& first, const ModuleMap& second) {
  ModuleMap out;
  for (size_t v = 0; v < first.maps.size(); ++v) out.maps.push_back(product(first.maps[v], second.maps[v]));
  return out;
}

bool is_invertible(const ModuleMap& f) {
  for (const auto& m : f.maps) {
    if (m.rows() != m.cols()) return false;
    if (m.rows() > 0 && determinant(m) == 0) return false;
  }
  return true;
}

namespace {

Rational trace_of_product(const ModuleMap& x, const ModuleMap& y) {
  Rational t = 0;
  for (size_t v = 0; v < x.maps.size(); ++v) {
    const MatrixQ& a = x.maps[v];
    const MatrixQ& b = y.maps[v];
    for (Index i = 0; i < a.rows(); ++i) {
      for (Index k = 0; k < a.cols(); ++k) {
        if (a(i, k) != 0 && b(k, i) != 0) t += a(i, k) * b(k, i);
      }
    }
  }
  return t;
}

ModuleMap combination(const std::vector<ModuleMap>& basis, const std::vector<Rational>& coeffs) {
  ModuleMap out = basis.front();
  for (auto& m : out.maps) m.setZero();
  for (size_t k = 0; k < basis.size(); ++k) {
    if (coeffs[k] == 0) continue;
    for (size_t v = 0; v < out.maps.size(); ++v) out.maps[v] += coeffs[k] * basis[k].maps[v];
  }
  return out;
}

}  // namespace

int endomorphism_top_dim(const FiniteDimAlgebra& a, const RightModule& m) {
  auto end = hom_basis(a, m, m);
  const int k = static_cast<int>(end.size());
  MatrixQ gram(ix(k), ix(k));
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) gram(ix(i), ix(j)) = trace_of_product(end[sz(i)], end[sz(j)]);
  }
  return k == 0 ? 0 : static_cast<int>(rank(gram));
}

bool is_indecomposable(const FiniteDimAlgebra& a, const RightModule& m) {
  return m.dim() > 0 && endomorphism_top_dim(a, m) == 1;
}

IsoResult iso_test(const FiniteDimAlgebra& a, const RightModule& m, const RightModule& n) {
  IsoResult out;
  if (m.dims != n.dims) {
    out.reason = "dimension vectors differ";
    return out;
  }
  if (m.dim() == 0) {
    out.isomorphic = true;
    out.reason = "both zero";
    return out;
  }
  auto homs = hom_basis(a, m, n);
  if (homs.empty()) {
    out.reason = "no nonzero homomorphism";
    return out;
  }
  if (is_indecomposable(a, m)) {
    // Hom(M, N) ~ End(M) is local when N ~ M, so some basis map is invertible.
    for (const auto& f : homs) {
      if (is_invertible(f)) {
        out.isomorphic = true;
        out.witness = f;
        out.reason = "invertible homomorphism";
        return out;
      }
    }
    out.reason = "M is indecomposable and no basis homomorphism is invertible";
    return out;
  }
  for (const auto& f : homs) {
    if (is_invertible(f)) {
      out.isomorphic = true;
      out.witness = f;
      out.reason = "invertible homomorphism";
      return out;
    }
  }
  std::mt19937 rng(20240611u);
  std::uniform_int_distribution<int> pick(-7, 7);
  for (int trial = 0; trial < 24; ++trial) {
    std::vector<Rational> coeffs;
    for (size_t k = 0; k < homs.size(); ++k) coeffs.emplace_back(pick(rng));
    ModuleMap f = combination(homs, coeffs);
    if (is_invertible(f)) {
      out.isomorphic = true;
      out.witness = f;
      out.reason = "invertible homomorphism";
      return out;
    }
  }
  out.exact = false;
  out.reason = "no invertible homomorphism among sampled combinations";
  return out;
}

OmegaOrbit omega_orbit(const FiniteDimAlgebra& a, const RightModule& m, int max_steps) {
  if (max_steps < 1) throw std::invalid_argument("max_steps must be at least 1");
  OmegaOrbit out;
  out.steps.push_back(m);
  for (int k = 1; k <= max_steps; ++k) {
    out.steps.push_back(omega(a, out.steps.back()));
    IsoResult iso = iso_test(a, out.steps.back(), m);
    out.exact = out.exact && iso.exact;
    if (iso.isomorphic) {
      out.period = k;
      break;
    }
  }
  return out;
}

namespace {

RowVectorQ flatten(const ModuleMap& f) {
  int n = 0;
  for (const auto& m : f.maps) n += static_cast<int>(m.size());
  RowVectorQ out(ix(n));
  Index k = 0;
  for (const auto& m : f.maps) {
    for (Index i = 0; i < m.rows(); ++i) {
      for (Index j = 0; j < m.cols(); ++j) out(k++) = m(i, j);
    }
  }
  return out;
}

int span_dim(const std::vector<ModuleMap>& maps) {
  if (maps.empty()) return 0;
  RowVectorQ first = flatten(maps.front());
  if (first.size() == 0) return 0;
  MatrixQ rows(ix(static_cast<int>(maps.size())), first.size());
  for (size_t k = 0; k < maps.size(); ++k) rows.row(static_cast<Index>(k)) = flatten(maps[k]);
  return static_cast<int>(rank(rows));
}

}  // namespace

int stable_hom_dim(const FiniteDimAlgebra& a, const RightModule& w, const RightModule& m) {
  const int all = hom_dim(a, w, m);
  if (all == 0) return 0;
  ProjectiveCover pc = projective_cover(a, m);
  std::vector<ModuleMap> through;
  for (const auto& f : hom_basis(a, w, pc.projective.module)) through.push_back(compose(f, pc.surjection));
  return all - span_dim(through);
}

int ext1_dim(const FiniteDimAlgebra& a, const RightModule& u, const RightModule& v) {
  ProjectiveCover pc = projective_cover(a, u);
  const int all = hom_dim(a, pc.syzygy, v);
  if (all == 0) return 0;
  ModuleMap inclusion{pc.kernel.rows};
  std::vector<ModuleMap> restricted;
  for (const auto& f : hom_basis(a, pc.projective.module, v)) restricted.push_back(compose(inclusion, f));
  return all - span_dim(restricted);
}

LinComb parse_element(const Quiver& q, const std::string& expr) {
  std::string s;
  for (char ch : expr) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  }
  if (s.empty()) throw std::invalid_argument("empty expression");
  LinComb out;
  size_t pos = 0;
  while (pos < s.size()) {
    Rational sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      if (s[pos] == '-') sign = -1;
      ++pos;
    }
    size_t end = s.find_first_of("+-", pos);
    std::string term = s.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
    pos = end == std::string::npos ? s.size() : end;
    if (term.empty()) throw std::invalid_argument("empty term in '" + expr + "'");
    Rational coeff = 1;
    if (auto star = term.find('*'); star != std::string::npos) {
      coeff = parse_rational(term.substr(0, star));
      term = term.substr(star + 1);
    }
    Path p;
    if (term.rfind("e_", 0) == 0 && q.find_vertex(term.substr(2))) {
      p = stationary_path(q.vertex(term.substr(2)));
    } else {
      std::vector<std::string> names;
      size_t start = 0;
      while (true) {
        size_t dot = term.find('.', start);
        names.push_back(term.substr(start, dot == std::string::npos ? std::string::npos : dot - start));
        if (dot == std::string::npos) break;
        start = dot + 1;
      }
      for (const auto& nm : names) {
        if (!q.find_arrow(nm)) throw std::invalid_argument("unknown arrow '" + nm + "'");
      }
      p = q.path_from_names(names);
    }
    out.add(p, sign * coeff);
  }
  return out;
}

RightModule parse_module_spec(const FiniteDimAlgebra& a, const std::string& spec) {
  const Quiver& q = a.quiver();
  auto colon = spec.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("module spec needs KIND:ARGUMENT");
  const std::string kind = spec.substr(0, colon);
  const std::string arg = spec.substr(colon + 1);
  auto vertex = [&](const std::string& name) {
    auto v = q.find_vertex(name);
    if (!v) throw std::invalid_argument("unknown vertex '" + name + "'");
    return *v;
  };
  if (kind == "simple") return simple_module(a, vertex(arg));
  if (kind == "projective") return projective_module(a, vertex(arg));
  if (kind == "middle") return middle_module(a, vertex(arg));
  if (kind == "arrow") {
    auto id = q.find_arrow(arg);
    if (!id) throw std::invalid_argument("unknown arrow '" + arg + "'");
    return arrow_module(a, *id);
  }
  if (kind == "cyclic") {
    LinComb x = parse_element(q, arg);
    if (x.empty()) throw std::invalid_argument("zero generator");
    const VertexId v = x.begin()->first.source;
    for (const auto& [p, c] : x) {
      if (p.source != v) throw std::invalid_argument("generator terms start at different vertices");
    }
    return cyclic_module(a, v, a.normal_form(x));
  }
  throw std::invalid_argument("unknown module kind '" + kind + "'");
}

}  // namespace hybrid
