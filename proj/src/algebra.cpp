#include "hybrid/algebra.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace hybrid {

CapExceeded::CapExceeded(int cap)
    : std::runtime_error("truncation cap exceeded: no path length up to " + std::to_string(cap) +
                         " is certified to vanish (presentation is not finite-dimensional under the cap)"),
      cap_(cap) {}

namespace {

// Smallest l <= space.max_length() such that every path of length l reduces to zero.
std::optional<int> vanishing_length(const PathSpace& space, const SparseEchelon& ech) {
  for (int len = 1; len <= space.max_length(); ++len) {
    bool all = true;
    for (int i : space.of_length(len)) {
      if (!ech.reduce({{i, Rational(1)}}).empty()) {
        all = false;
        break;
      }
    }
    if (all) return len;
  }
  return std::nullopt;
}

}  // namespace

FiniteDimAlgebra FiniteDimAlgebra::build(const Quiver& q, const std::vector<LinComb>& generators,
                                         const BuildOptions& opts) {
  auto pref = opts.preferred ? opts.preferred : [](const Path&) { return true; };
  std::vector<int> schedule;
  for (int len : {opts.initial_length, opts.initial_length + 3, opts.cap}) {
    if (len <= opts.cap && (schedule.empty() || len > schedule.back())) schedule.push_back(len);
  }
  auto core = std::make_shared<Core>();
  core->quiver = q;
  std::optional<int> vanish;
  for (int len : schedule) {
    PathSpace space(q, len, pref);
    SparseEchelon exact = close_ideal(space, generators, ClosureMode::exact);
    vanish = vanishing_length(space, exact);
    if (vanish) {
      core->certified_at = len;
      break;
    }
  }
  if (!vanish) throw CapExceeded(opts.cap);
  core->vanishing_length = *vanish;
  core->space = std::make_unique<PathSpace>(q, *vanish - 1, pref);
  core->echelon = close_ideal(*core->space, generators, ClosureMode::truncated);

  FiniteDimAlgebra out;
  out.core_ = core;
  std::vector<VertexId> all(static_cast<size_t>(q.vertex_count()));
  std::iota(all.begin(), all.end(), 0);
  out.init_basis(all);
  return out;
}

void FiniteDimAlgebra::init_basis(const std::vector<VertexId>& keep) {
  vertices_ = keep;
  std::sort(vertices_.begin(), vertices_.end());
  const PathSpace& space = *core_->space;
  std::vector<int> idx;
  for (int i = 0; i < space.size(); ++i) {
    const Path& p = space.path(i);
    if (has_vertex(p.source) && has_vertex(p.target) && !core_->echelon.is_lead(i)) idx.push_back(i);
  }
  std::sort(idx.begin(), idx.end(), [&](int a, int b) { return space.path(a) < space.path(b); });
  basis_.clear();
  basis_space_index_ = idx;
  coord_of_space_index_.clear();
  for (size_t k = 0; k < idx.size(); ++k) {
    basis_.push_back(space.path(idx[k]));
    coord_of_space_index_.emplace(idx[k], static_cast<int>(k));
  }
  const int n = dim();
  product_.assign(static_cast<size_t>(n) * static_cast<size_t>(n), {});
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Path& a = basis_[static_cast<size_t>(i)];
      const Path& b = basis_[static_cast<size_t>(j)];
      if (a.target != b.source) continue;
      VectorQ c = normal_form(concat(a, b));
      auto& slot = product_[static_cast<size_t>(i) * static_cast<size_t>(n) + static_cast<size_t>(j)];
      for (int k = 0; k < n; ++k) {
        if (c(k) != 0) slot.emplace_back(k, c(k));
      }
    }
  }
}

bool FiniteDimAlgebra::has_vertex(VertexId v) const {
  return std::binary_search(vertices_.begin(), vertices_.end(), v);
}

VectorQ FiniteDimAlgebra::coords(const SparseVec& reduced) const {
  VectorQ out = zero();
  for (const auto& [i, c] : reduced) {
    auto it = coord_of_space_index_.find(i);
    if (it == coord_of_space_index_.end()) {
      throw std::logic_error("normal form leaves the corner algebra: " + quiver().format(core_->space->path(i)));
    }
    out(it->second) = c;
  }
  return out;
}

VectorQ FiniteDimAlgebra::normal_form(const Path& p) const {
  if (static_cast<int>(p.length()) >= core_->vanishing_length) return zero();
  const int i = core_->space->index_of(p);
  if (i < 0) throw std::logic_error("path missing from path space");
  return coords(core_->echelon.reduce({{i, Rational(1)}}));
}

VectorQ FiniteDimAlgebra::normal_form(const LinComb& x) const {
  SparseVec v;
  for (const auto& [p, c] : x) {
    if (static_cast<int>(p.length()) >= core_->vanishing_length) continue;
    v.emplace_back(core_->space->index_of(p), c);
  }
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return coords(core_->echelon.reduce(v));
}

VectorQ FiniteDimAlgebra::unit(VertexId v) const { return normal_form(stationary_path(v)); }

VectorQ FiniteDimAlgebra::one() const {
  VectorQ out = zero();
  for (VertexId v : vertices_) out += unit(v);
  return out;
}

VectorQ FiniteDimAlgebra::multiply(const VectorQ& x, const VectorQ& y) const {
  const int n = dim();
  VectorQ out = zero();
  for (int i = 0; i < n; ++i) {
    if (x(i) == 0) continue;
    for (int j = 0; j < n; ++j) {
      if (y(j) == 0) continue;
      const auto& slot = product_[static_cast<size_t>(i) * static_cast<size_t>(n) + static_cast<size_t>(j)];
      if (slot.empty()) continue;
      const Rational s = x(i) * y(j);
      for (const auto& [k, c] : slot) out(k) += s * c;
    }
  }
  return out;
}

LinComb FiniteDimAlgebra::expand(const VectorQ& x) const {
  LinComb out;
  for (int k = 0; k < dim(); ++k) out.add(basis(k), x(k));
  return out;
}

std::vector<int> FiniteDimAlgebra::basis_between(VertexId i, VertexId j) const {
  std::vector<int> out;
  for (int k = 0; k < dim(); ++k) {
    if (basis(k).source == i && basis(k).target == j) out.push_back(k);
  }
  return out;
}

std::vector<int> FiniteDimAlgebra::basis_from(VertexId i) const {
  std::vector<int> out;
  for (int k = 0; k < dim(); ++k) {
    if (basis(k).source == i) out.push_back(k);
  }
  return out;
}

std::vector<int> FiniteDimAlgebra::basis_to(VertexId j) const {
  std::vector<int> out;
  for (int k = 0; k < dim(); ++k) {
    if (basis(k).target == j) out.push_back(k);
  }
  return out;
}

MatrixQ FiniteDimAlgebra::right_action(const VectorQ& a) const {
  MatrixQ m(dim(), dim());
  for (int k = 0; k < dim(); ++k) {
    VectorQ e = zero();
    e(k) = 1;
    m.row(k) = multiply(e, a).transpose();
  }
  return m;
}

MatrixQ FiniteDimAlgebra::left_action(const VectorQ& a) const {
  MatrixQ m(dim(), dim());
  for (int k = 0; k < dim(); ++k) {
    VectorQ e = zero();
    e(k) = 1;
    m.row(k) = multiply(a, e).transpose();
  }
  return m;
}

MatrixQ FiniteDimAlgebra::radical_power(int k) const {
  const int n = dim();
  if (k <= 0) return MatrixQ::Identity(n, n);
  std::vector<int> rad;
  for (int i = 0; i < n; ++i) {
    if (!basis(i).stationary()) rad.push_back(i);
  }
  MatrixQ current = MatrixQ::Zero(static_cast<Eigen::Index>(rad.size()), n);
  for (size_t r = 0; r < rad.size(); ++r) current(static_cast<Eigen::Index>(r), rad[r]) = 1;
  for (int step = 1; step < k && current.rows() > 0; ++step) {
    MatrixQ next(current.rows() * static_cast<Eigen::Index>(rad.size()), n);
    Eigen::Index row = 0;
    for (Eigen::Index r = 0; r < current.rows(); ++r) {
      VectorQ x = current.row(r).transpose();
      for (int j : rad) {
        VectorQ e = zero();
        e(j) = 1;
        next.row(row++) = multiply(x, e).transpose();
      }
    }
    current = row_basis(next);
  }
  return current;
}

namespace {

// Rows spanning { x supported on idx : x * b = 0 for every radical basis element b }.
MatrixQ annihilated_by_radical(const FiniteDimAlgebra& a, const std::vector<int>& idx) {
  const int n = a.dim();
  std::vector<int> rad;
  for (int i = 0; i < n; ++i) {
    if (!a.basis(i).stationary()) rad.push_back(i);
  }
  // Columns: for each radical element b, the map x -> x*b restricted to idx.
  MatrixQ sys = MatrixQ::Zero(static_cast<Eigen::Index>(idx.size()), static_cast<Eigen::Index>(rad.size()) * n);
  for (size_t r = 0; r < idx.size(); ++r) {
    VectorQ x = a.zero();
    x(idx[r]) = 1;
    for (size_t k = 0; k < rad.size(); ++k) {
      VectorQ e = a.zero();
      e(rad[k]) = 1;
      VectorQ p = a.multiply(x, e);
      sys.block(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(k) * n, 1, n) = p.transpose();
    }
  }
  MatrixQ coeffs = left_nullspace(sys);
  MatrixQ out = MatrixQ::Zero(coeffs.rows(), n);
  for (Eigen::Index r = 0; r < coeffs.rows(); ++r) {
    for (size_t c = 0; c < idx.size(); ++c) out(r, idx[c]) = coeffs(r, static_cast<Eigen::Index>(c));
  }
  return out;
}

}  // namespace

MatrixQ FiniteDimAlgebra::right_socle(VertexId i) const { return annihilated_by_radical(*this, basis_from(i)); }

MatrixQ FiniteDimAlgebra::right_socle() const {
  std::vector<int> all(static_cast<size_t>(dim()));
  std::iota(all.begin(), all.end(), 0);
  return annihilated_by_radical(*this, all);
}

FiniteDimAlgebra FiniteDimAlgebra::corner(const std::vector<VertexId>& keep) const {
  FiniteDimAlgebra out;
  out.core_ = core_;
  out.init_basis(keep);
  return out;
}

// ---------------------------------------------------------------- hybrid builds

FiniteDimAlgebra build_algebra(const BiserialQuiverData& data, const RelationSet& relations) {
  int longest = 1;
  for (ArrowId a = 0; a < data.quiver().arrow_count(); ++a) longest = std::max(longest, data.socle_length(a));
  BuildOptions opts;
  opts.initial_length = longest + 3;
  opts.cap = 4 * longest + 8;
  opts.preferred = [&data](const Path& p) {
    if (p.stationary()) return true;
    if (static_cast<int>(p.length()) > data.socle_length(p.arrows.front())) return false;
    for (size_t k = 1; k < p.arrows.size(); ++k) {
      if (p.arrows[k] != data.g(p.arrows[k - 1])) return false;
    }
    return true;
  };
  std::vector<LinComb> gens;
  for (const auto& r : relations.relations) gens.push_back(r.generator);
  return FiniteDimAlgebra::build(data.quiver(), gens, opts);
}

FiniteDimAlgebra build_algebra(const BiserialQuiverData& data) { return build_algebra(data, generate_relations(data)); }

std::vector<int> dimension_vector(const FiniteDimAlgebra& a) {
  std::vector<int> out;
  for (VertexId v : a.vertices()) out.push_back(static_cast<int>(a.basis_from(v).size()));
  return out;
}

std::vector<std::vector<int>> cartan_matrix(const FiniteDimAlgebra& a) {
  std::vector<std::vector<int>> out;
  for (VertexId i : a.vertices()) {
    std::vector<int> row;
    for (VertexId j : a.vertices()) row.push_back(static_cast<int>(a.basis_between(i, j).size()));
    out.push_back(std::move(row));
  }
  return out;
}

SymmetricVerdict symmetric_form_exists(const FiniteDimAlgebra& a) {
  SymmetricVerdict out;
  const int n = a.dim();
  // Commutator space.
  std::vector<VectorQ> comms;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      VectorQ x = a.zero(), y = a.zero();
      x(i) = 1;
      y(j) = 1;
      VectorQ c = a.multiply(x, y) - a.multiply(y, x);
      if (!is_zero(c)) comms.push_back(c);
    }
  }
  for (int i = 0; i < n; ++i) {
    if (a.basis(i).source != a.basis(i).target) {
      VectorQ c = a.zero();
      c(i) = 1;
      comms.push_back(c);  // e_s b - b e_s
    }
  }
  MatrixQ comm(static_cast<Eigen::Index>(comms.size()), n);
  for (size_t r = 0; r < comms.size(); ++r) comm.row(static_cast<Eigen::Index>(r)) = comms[r].transpose();
  const MatrixQ functionals = nullspace(comm);  // columns: symmetric functionals

  // Socle, split by the simple module it is isomorphic to (its end vertex).
  MatrixQ soc = a.right_socle();
  std::vector<VectorQ> socle_gens;
  for (VertexId j : a.vertices()) {
    std::vector<int> idx = a.basis_to(j);
    // socle is a two-sided ideal, so it splits along end vertices
    MatrixQ part = MatrixQ::Zero(soc.rows(), n);
    for (Eigen::Index r = 0; r < soc.rows(); ++r) {
      for (int k : idx) part(r, k) = soc(r, k);
    }
    MatrixQ basis = row_basis(part);
    if (basis.rows() == 0) continue;
    // Socle elements killed by every symmetric functional.
    MatrixQ values = basis * functionals;
    MatrixQ dead = left_nullspace(values);
    if (dead.rows() > 0) {
      VectorQ z = (dead.row(0) * basis).transpose();
      out.symmetric = false;
      out.certificate.push_back(z);
      out.reason = "socle element " + a.format(z) + " lies in the commutator space";
      return out;
    }
    if (basis.rows() >= 2) {
      out.symmetric = false;
      for (Eigen::Index r = 0; r < basis.rows(); ++r) out.certificate.push_back(basis.row(r).transpose());
      out.reason = "socle component at vertex " + a.quiver().vertex_name(j) + " has dimension " +
                   std::to_string(basis.rows()) + "; every functional kills a simple right ideal";
      return out;
    }
    socle_gens.push_back(basis.row(0).transpose());
  }
  // Pick phi = sum_k w^k phi_k avoiding the finitely many bad w.
  const Eigen::Index k = functionals.cols();
  for (int w = 1; w <= static_cast<int>(k * socle_gens.size()) + 2; ++w) {
    VectorQ phi = a.zero();
    Rational pw = 1;
    for (Eigen::Index c = 0; c < k; ++c) {
      phi += functionals.col(c) * pw;
      pw *= w;
    }
    bool ok = true;
    for (const auto& z : socle_gens) {
      Rational v = z.dot(phi);
      if (v == 0) ok = false;
    }
    if (!ok) continue;
    MatrixQ gram(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        VectorQ x = a.zero(), y = a.zero();
        x(i) = 1;
        y(j) = 1;
        gram(i, j) = a.multiply(x, y).dot(phi);
      }
    }
    if (determinant(gram) != 0) {
      out.symmetric = true;
      out.functional = phi;
      out.reason = "symmetric functional with nonsingular Gram matrix";
      return out;
    }
  }
  out.symmetric = false;
  out.reason = "no nondegenerate symmetric functional found";
  return out;
}

GabrielQuiver gabriel_quiver(const FiniteDimAlgebra& a) {
  GabrielQuiver g;
  g.vertices = a.vertices();
  const Quiver& q = a.quiver();
  const MatrixQ j2 = a.radical_power(2);
  g.multiplicity.assign(static_cast<size_t>(q.vertex_count()), std::vector<int>(static_cast<size_t>(q.vertex_count()), 0));
  for (VertexId s : a.vertices()) {
    for (VertexId t : a.vertices()) {
      std::vector<int> idx = a.basis_between(s, t);
      std::vector<int> rad_idx;
      for (int k : idx) {
        if (!a.basis(k).stationary()) rad_idx.push_back(k);
      }
      // rows of J^2 supported in e_s H e_t
      MatrixQ part = MatrixQ::Zero(j2.rows(), a.dim());
      for (Eigen::Index r = 0; r < j2.rows(); ++r) {
        for (int k : idx) part(r, k) = j2(r, k);
      }
      MatrixQ span = row_basis(part);
      const auto base_rank = span.rows();
      g.multiplicity[static_cast<size_t>(s)][static_cast<size_t>(t)] = static_cast<int>(rad_idx.size()) - static_cast<int>(base_rank);
      for (ArrowId x = 0; x < q.arrow_count(); ++x) {
        if (q.arrow(x).source != s || q.arrow(x).target != t) continue;
        MatrixQ extended(span.rows() + 1, a.dim());
        extended.topRows(span.rows()) = span;
        extended.row(span.rows()) = a.arrow(x).transpose();
        if (rank(extended) > span.rows()) {
          g.arrows.push_back(x);
          span = row_basis(extended);
        }
      }
    }
  }
  return g;
}

std::vector<std::vector<VertexId>> block_vertex_sets(const FiniteDimAlgebra& a) {
  const auto g = gabriel_quiver(a);
  const auto& vs = a.vertices();
  std::map<VertexId, VertexId> parent;
  for (VertexId v : vs) parent[v] = v;
  std::function<VertexId(VertexId)> find = [&](VertexId x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (VertexId s : vs) {
    for (VertexId t : vs) {
      if (g.multiplicity[static_cast<size_t>(s)][static_cast<size_t>(t)] > 0) parent[find(s)] = find(t);
    }
  }
  std::map<VertexId, std::vector<VertexId>> groups;
  for (VertexId v : vs) groups[find(v)].push_back(v);
  std::vector<std::vector<VertexId>> out;
  for (auto& [root, members] : groups) out.push_back(members);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<FiniteDimAlgebra> block_decomposition(const FiniteDimAlgebra& a) {
  std::vector<FiniteDimAlgebra> out;
  for (const auto& vs : block_vertex_sets(a)) out.push_back(a.corner(vs));
  return out;
}

ValidationReport validate(const BiserialQuiverData& data, ValidationLevel level) {
  ValidationReport report = validate_structural(data);
  if (level == ValidationLevel::structural || !report.ok()) return report;
  try {
    const FiniteDimAlgebra h = build_algebra(data);
    const auto verdict = symmetric_form_exists(h);
    if (!verdict.symmetric) report.violations.push_back({rules::kNotSymmetric, verdict.reason});
  } catch (const CapExceeded& e) {
    report.violations.push_back({rules::kNotFinite, e.what()});
  }
  return report;
}

ValidationReport validate(const PresentationSpec& spec, ValidationLevel level) {
  try {
    return validate(BiserialQuiverData::from_spec(spec), level);
  } catch (const InvalidPresentation& e) {
    return ValidationReport{e.violations()};
  }
}

}  // namespace hybrid
