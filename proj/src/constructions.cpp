#include "hybrid/constructions.hpp"

#include "hybrid/linalg.hpp"
#include "hybrid/presentation.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace hybrid {

namespace {

size_t sz(int k) { return static_cast<size_t>(k); }

std::vector<std::vector<std::string>> cycles_of(const std::map<std::string, std::string>& perm) {
  std::set<std::string> seen;
  std::vector<std::vector<std::string>> out;
  for (const auto& [start, image] : perm) {
    if (seen.count(start)) continue;
    std::vector<std::string> cycle;
    std::string cur = start;
    while (!seen.count(cur)) {
      seen.insert(cur);
      cycle.push_back(cur);
      cur = perm.at(cur);
    }
    out.push_back(cycle);
  }
  return out;
}

}  // namespace

std::string split_first_name(const std::string& arrow) { return arrow + "'"; }
std::string split_second_name(const std::string& arrow) { return arrow + "''"; }
std::string closing_name(const std::string& arrow) { return "eps_" + arrow; }
std::string split_vertex_name(const std::string& arrow) { return "x_" + arrow; }

StarResult star(const BiserialQuiverData& data) {
  const Quiver& q = data.quiver();
  StarResult out;
  PresentationSpec spec;
  spec.vertices = q.vertex_names();
  std::map<std::string, std::string> fstar;
  auto name = [&](ArrowId a) { return q.arrow(a).name; };
  auto vname = [&](VertexId v) { return q.vertex_name(v); };

  for (ArrowId a = 0; a < q.arrow_count(); ++a) {
    const Arrow& ar = q.arrow(a);
    if (data.in_triangles(a)) {
      spec.arrows.push_back({ar.name, vname(ar.source), vname(ar.target)});
      fstar[ar.name] = name(data.f(a));
      continue;
    }
    StarResult::Split s{ar.name, split_first_name(ar.name), split_second_name(ar.name), closing_name(ar.name),
                        split_vertex_name(ar.name)};
    if (q.find_vertex(s.vertex) || q.find_arrow(s.first) || q.find_arrow(s.second) || q.find_arrow(s.closing)) {
      throw std::invalid_argument("names for the split of '" + ar.name + "' are already taken");
    }
    spec.vertices.push_back(s.vertex);
    spec.arrows.push_back({s.first, vname(ar.source), s.vertex});
    spec.arrows.push_back({s.second, s.vertex, vname(ar.target)});
    spec.arrows.push_back({s.closing, split_vertex_name(name(data.f(a))), s.vertex});
    fstar[s.second] = split_first_name(name(data.f(a)));
    fstar[split_first_name(name(data.f(a)))] = s.closing;
    fstar[s.closing] = s.second;
    out.splits.push_back(s);
  }
  spec.f = cycles_of(fstar);

  for (const auto& cycle : orbits(data.g_perm())) {
    const ArrowId a = cycle.front();
    const std::string key = data.in_triangles(a) ? name(a) : split_first_name(name(a));
    spec.m[key] = data.weight(a);
    spec.c[key] = data.parameter(a);
  }
  for (ArrowId a = 0; a < q.arrow_count(); ++a) {
    if (data.in_triangles(a) && data.f(a) == a && data.border(a) != 0) spec.b[name(a)] = data.border(a);
  }

  // One eps-cycle per f-orbit outside the triangles: g*(eps_a) = eps_{f^{-1}(a)}.
  for (const auto& orbit : orbits(data.f_perm())) {
    if (data.in_triangles(orbit.front())) continue;
    StarResult::ClosingCycle cc;
    for (ArrowId a : orbit) cc.arrows.push_back(closing_name(name(a)));
    const int n = static_cast<int>(orbit.size());
    // a'' is virtual exactly when the g-cycle of a is a itself with weight one
    bool second_virtual = false;
    for (ArrowId a : orbit) {
      if (data.weight(a) == 1 && data.g_orbit_length(a) == 1) second_virtual = true;
    }
    const ArrowId first = orbit.front();
    if (n == 1 && data.border(first) != 0) {
      const ArrowId other = data.bar(first);
      cc.weight = 2;
      cc.parameter = data.border(first) / data.parameter(other);
      cc.reason = "border value " + data.border(first).get_str() + " carried by a virtual closing loop";
    } else if (n >= 4 || (n == 3 && !second_virtual)) {
      cc.weight = 1;
    } else {
      cc.weight = n == 3 ? 2 : (n == 2 ? 2 : 4);
      cc.reason = "raised so the closing arrows are neither virtual nor critical";
    }
    spec.m[cc.arrows.front()] = cc.weight;
    spec.c[cc.arrows.front()] = cc.parameter;
    out.closing_cycles.push_back(cc);
  }
  for (const auto& arrow : spec.arrows) spec.triangles.push_back(arrow.name);
  out.data = BiserialQuiverData::from_spec(spec);

  // Unit closing parameters can land on a singular, non-symmetric deformation
  // (as for K[x]/(x^3), whose star is the linear quiver at parameter 1).
  std::vector<size_t> free_cycles;
  for (size_t k = 0; k < out.closing_cycles.size(); ++k) {
    if (out.closing_cycles[k].parameter == 1) free_cycles.push_back(k);
  }
  if (free_cycles.empty() || validate(out.data, ValidationLevel::full).ok()) return out;
  for (const Rational& candidate : {Rational(2), Rational(3), Rational(-2), Rational(5)}) {
    PresentationSpec retry = spec;
    for (size_t k : free_cycles) retry.c[out.closing_cycles[k].arrows.front()] = candidate;
    BiserialQuiverData data = BiserialQuiverData::from_spec(retry);
    if (!validate(data, ValidationLevel::full).ok()) continue;
    out.data = std::move(data);
    for (size_t k : free_cycles) {
      auto& cc = out.closing_cycles[k];
      cc.parameter = candidate;
      cc.reason += std::string(cc.reason.empty() ? "" : "; ") + "parameter moved off 1 to keep the algebra symmetric";
    }
    break;
  }
  return out;
}

std::string contracted_arrow_name(const Quiver& q, const Path& p) {
  std::string out;
  for (size_t k = 0; k < p.arrows.size(); ++k) {
    if (k > 0) out += "~";
    out += q.arrow(p.arrows[k]).name;
  }
  return out;
}

bool ContractionResult::ok() const {
  if (!solved || !failures.empty()) return false;
  for (const auto& b : blocks) {
    if (!b.failures.empty()) return false;
    if (!b.relations_vanish || !b.generates || !b.dimensions_match || !b.valid || !b.loops_ok) return false;
    if (!is_full && !b.has_non_triangle) return false;
  }
  return true;
}

namespace {

struct TildeArrow {
  Path path;         // in the ambient quiver
  int block = -1;
  ArrowId local = -1;  // id in the block quiver
};

VectorQ evaluate(const FiniteDimAlgebra& a, const ContractionBlock& block, const Path& p) {
  VectorQ x = a.unit(block.vertices[sz(p.source)]);
  for (ArrowId arrow : p.arrows) x = a.multiply(x, block.embedding[sz(arrow)]);
  return x;
}

VectorQ evaluate(const FiniteDimAlgebra& a, const ContractionBlock& block, const LinComb& x) {
  VectorQ out = a.zero();
  for (const auto& [p, c] : x) out += c * evaluate(a, block, p);
  return out;
}

PresentationSpec block_spec(const BiserialQuiverData& data, const Quiver& q, const std::vector<TildeArrow>& tilde,
                            const std::vector<int>& arrows_of_block, const std::vector<VertexId>& vertices,
                            const std::vector<int>& tilde_f, const std::vector<bool>& triangle,
                            const std::map<std::string, Rational>& parameter,
                            const std::map<std::string, Rational>& border) {
  PresentationSpec spec;
  for (VertexId v : vertices) spec.vertices.push_back(q.vertex_name(v));
  std::map<std::string, std::string> perm;
  for (int k : arrows_of_block) {
    const Path& p = tilde[sz(k)].path;
    const std::string nm = contracted_arrow_name(q, p);
    spec.arrows.push_back({nm, q.vertex_name(p.source), q.vertex_name(p.target)});
    perm[nm] = contracted_arrow_name(q, tilde[sz(tilde_f[sz(k)])].path);
    const ArrowId first = p.arrows.front();
    spec.m[nm] = data.weight(first);
    auto given = parameter.find(nm);
    spec.c[nm] = given != parameter.end() ? given->second : data.parameter(first);
    if (triangle[sz(k)]) {
      spec.triangles.push_back(nm);
      if (tilde_f[sz(k)] == k && data.border(first) != 0) spec.b[nm] = data.border(first);
    } else if (tilde_f[sz(k)] == k) {
      auto it = border.find(nm);
      if (it != border.end() && it->second != 0) spec.b[nm] = it->second;
    }
  }
  spec.f = cycles_of(perm);
  return spec;
}

MatrixQ span_closure(const FiniteDimAlgebra& a, const std::vector<VectorQ>& seeds, const std::vector<VectorQ>& right) {
  MatrixQ basis(static_cast<Eigen::Index>(seeds.size()), a.dim());
  for (size_t k = 0; k < seeds.size(); ++k) basis.row(static_cast<Eigen::Index>(k)) = seeds[k].transpose();
  basis = row_basis(basis);
  while (true) {
    std::vector<RowVectorQ> more;
    for (Eigen::Index r = 0; r < basis.rows(); ++r) {
      for (const auto& x : right) more.push_back(a.multiply(VectorQ(basis.row(r).transpose()), x).transpose());
    }
    MatrixQ all(basis.rows() + static_cast<Eigen::Index>(more.size()), a.dim());
    all.topRows(basis.rows()) = basis;
    for (size_t k = 0; k < more.size(); ++k) all.row(basis.rows() + static_cast<Eigen::Index>(k)) = more[k];
    MatrixQ next = row_basis(all);
    if (next.rows() == basis.rows()) return basis;
    basis = next;
  }
}

}  // namespace

ContractionResult contract(const BiserialQuiverData& data, const FiniteDimAlgebra& a,
                           const std::vector<VertexId>& gamma_in) {
  const Quiver& q = data.quiver();
  if (gamma_in.empty()) throw std::invalid_argument("the vertex subset is empty");
  std::vector<bool> in_gamma(sz(q.vertex_count()), false);
  for (VertexId v : gamma_in) {
    if (v < 0 || v >= q.vertex_count()) throw std::invalid_argument("vertex outside the quiver");
    in_gamma[sz(v)] = true;
  }
  ContractionResult out;
  for (VertexId v = 0; v < q.vertex_count(); ++v) {
    if (in_gamma[sz(v)]) out.gamma.push_back(v);
  }
  out.is_full = static_cast<int>(out.gamma.size()) == q.vertex_count();

  // shortest g-paths from arrows at gamma back into gamma
  std::vector<TildeArrow> tilde;
  std::vector<int> tilde_of_first(sz(q.arrow_count()), -1);
  for (ArrowId start = 0; start < q.arrow_count(); ++start) {
    if (!in_gamma[sz(q.arrow(start).source)]) continue;
    std::vector<ArrowId> walk{start};
    while (!in_gamma[sz(q.arrow(walk.back()).target)]) walk.push_back(data.g(walk.back()));
    tilde_of_first[sz(start)] = static_cast<int>(tilde.size());
    tilde.push_back({q.path(walk), -1, -1});
  }
  const int nt = static_cast<int>(tilde.size());
  std::vector<int> tilde_f(sz(nt));
  std::vector<bool> triangle(sz(nt));
  for (int k = 0; k < nt; ++k) {
    const Path& p = tilde[sz(k)].path;
    tilde_f[sz(k)] = tilde_of_first[sz(data.f(p.arrows.back()))];
    const ArrowId first = p.arrows.front();
    triangle[sz(k)] = p.length() == 1 && data.in_triangles(first) && tilde[sz(tilde_f[sz(k)])].path.length() == 1;
  }

  // connected components over gamma
  std::vector<int> root(sz(q.vertex_count()));
  std::iota(root.begin(), root.end(), 0);
  auto find = [&](int v) {
    while (root[sz(v)] != v) v = root[sz(v)] = root[sz(root[sz(v)])];
    return v;
  };
  for (const auto& t : tilde) root[sz(find(t.path.source))] = find(t.path.target);
  std::map<int, int> block_of_root;
  for (VertexId v : out.gamma) {
    const int r = find(v);
    if (!block_of_root.count(r)) {
      block_of_root[r] = static_cast<int>(out.blocks.size());
      out.blocks.emplace_back();
    }
    out.blocks[sz(block_of_root[r])].vertices.push_back(v);
  }
  std::vector<std::vector<int>> arrows_of(out.blocks.size());
  for (int k = 0; k < nt; ++k) {
    const int b = block_of_root[find(tilde[sz(k)].path.source)];
    tilde[sz(k)].block = b;
    arrows_of[sz(b)].push_back(k);
  }

  // Block data with the parameters of the first arrows and no border values.
  // Arrow ids of the block follow names, so map them back to tilde indices.
  const size_t nb = out.blocks.size();
  std::vector<std::map<std::string, Rational>> parameter(nb), border(nb);
  auto block_data = [&](size_t b) {
    return BiserialQuiverData::from_spec(
        block_spec(data, q, tilde, arrows_of[b], out.blocks[b].vertices, tilde_f, triangle, parameter[b], border[b]));
  };
  std::vector<std::vector<int>> tilde_of_local(nb);
  for (size_t b = 0; b < nb; ++b) {
    ContractionBlock& block = out.blocks[b];
    try {
      block.data = block_data(b);
    } catch (const InvalidPresentation& e) {
      for (const auto& v : e.violations()) block.failures.push_back(v.rule + ": " + v.message);
      out.failures.push_back("block " + std::to_string(b) + " does not form biserial data");
      continue;
    }
    const Quiver& bq = block.data.quiver();
    tilde_of_local[b].assign(sz(bq.arrow_count()), -1);
    for (int k : arrows_of[b]) {
      const ArrowId local = bq.arrow_id(contracted_arrow_name(q, tilde[sz(k)].path));
      tilde[sz(k)].local = local;
      tilde_of_local[b][sz(local)] = k;
    }
    block.shortest.resize(sz(bq.arrow_count()));
    block.embedding.resize(sz(bq.arrow_count()));
    // vertex order of block data follows block.vertices by construction
    for (ArrowId l = 0; l < bq.arrow_count(); ++l) {
      block.shortest[sz(l)] = tilde[sz(tilde_of_local[b][sz(l)])].path;
      block.embedding[sz(l)] = a.normal_form(block.shortest[sz(l)]);
      parameter[b][bq.arrow(l).name] = block.data.parameter(l);
    }
  }
  if (!out.failures.empty()) return out;

  // rad(R)^2 between each pair of gamma vertices, R = eAe
  std::vector<int> rad_basis;
  for (int k = 0; k < a.dim(); ++k) {
    const Path& p = a.basis(k);
    if (!p.stationary() && in_gamma[sz(p.source)] && in_gamma[sz(p.target)]) rad_basis.push_back(k);
  }
  std::map<std::pair<VertexId, VertexId>, std::vector<VectorQ>> square_products;
  for (int k1 : rad_basis) {
    for (int k2 : rad_basis) {
      if (a.basis(k1).target != a.basis(k2).source) continue;
      VectorQ e1 = a.zero(), e2 = a.zero();
      e1(k1) = 1;
      e2(k2) = 1;
      VectorQ p = a.multiply(e1, e2);
      if (!is_zero(p)) square_products[{a.basis(k1).source, a.basis(k2).target}].push_back(p);
    }
  }
  auto square_basis = [&](VertexId s, VertexId t) {
    std::vector<VectorQ> out_rows;
    auto it = square_products.find({s, t});
    if (it == square_products.end()) return out_rows;
    MatrixQ m(static_cast<Eigen::Index>(it->second.size()), a.dim());
    for (size_t k = 0; k < it->second.size(); ++k) m.row(static_cast<Eigen::Index>(k)) = it->second[k].transpose();
    MatrixQ basis = row_basis(m);
    for (Eigen::Index r = 0; r < basis.rows(); ++r) out_rows.push_back(basis.row(r).transpose());
    return out_rows;
  };

  // Elimination pivots on earlier unknowns first. Corrections in rad(R)^2 and
  // border values come first; parameters and corrections by parallel arrows
  // only join in the second pass, parameters ahead so that a step does not
  // land where the residue has no gradient.
  enum class Kind { correction, parameter, border };
  struct Unknown {
    int block;
    Kind kind;
    std::vector<ArrowId> arrows;  // the corrected arrow, or every arrow sharing the parameter
    VectorQ direction;
    int tier = 0;
  };
  std::vector<Unknown> unknowns;
  for (size_t b = 0; b < nb; ++b) {
    const ContractionBlock& block = out.blocks[b];
    const int bi = static_cast<int>(b);
    for (ArrowId l = 0; l < block.data.quiver().arrow_count(); ++l) {
      const Path& p = block.shortest[sz(l)];
      for (auto& w : square_basis(p.source, p.target)) unknowns.push_back({bi, Kind::correction, {l}, w});
      // parallel contracted arrows, as in the two-cycle corrections
      for (ArrowId other = 0; other < block.data.quiver().arrow_count(); ++other) {
        const Path& po = block.shortest[sz(other)];
        if (other != l && po.source == p.source && po.target == p.target) {
          unknowns.push_back({bi, Kind::correction, {l}, a.normal_form(po), 2});
        }
      }
    }
  }
  for (size_t b = 0; b < nb; ++b) {
    const ContractionBlock& block = out.blocks[b];
    const int bi = static_cast<int>(b);
    for (const auto& orbit : orbits(block.data.g_perm())) unknowns.push_back({bi, Kind::parameter, orbit, {}, 1});
    for (ArrowId l = 0; l < block.data.quiver().arrow_count(); ++l) {
      if (block.data.f(l) == l && !block.data.in_triangles(l)) unknowns.push_back({bi, Kind::border, {l}, {}});
    }
  }

  std::stable_sort(unknowns.begin(), unknowns.end(), [](const Unknown& x, const Unknown& y) { return x.tier < y.tier; });
  const size_t first_pass_unknowns =
      static_cast<size_t>(std::count_if(unknowns.begin(), unknowns.end(), [](const Unknown& u) { return u.tier == 0; }));

  auto shift = [&](const Unknown& unk, const Rational& by) {
    const size_t b = sz(unk.block);
    const Quiver& bq = out.blocks[b].data.quiver();
    for (ArrowId l : unk.arrows) {
      const std::string& nm = bq.arrow(l).name;
      if (unk.kind == Kind::parameter) parameter[b][nm] += by;
      if (unk.kind == Kind::border) border[b][nm] += by;
    }
  };
  auto current_value = [&](const Unknown& unk) {
    const std::string& nm = out.blocks[sz(unk.block)].data.quiver().arrow(unk.arrows.front()).name;
    return parameter[sz(unk.block)][nm];
  };
  auto relation_values = [&](size_t b) {
    std::vector<VectorQ> values;
    const BiserialQuiverData current = block_data(b);
    for (const auto& r : generate_relations(current).relations) values.push_back(evaluate(a, out.blocks[b], r.generator));
    return values;
  };

  auto residual_and_jacobian = [&](MatrixQ* jac, size_t active) {
    std::vector<std::vector<VectorQ>> values(nb);
    std::vector<std::vector<Relation>> relations(nb);
    std::vector<size_t> offset(nb + 1, 0);
    for (size_t b = 0; b < nb; ++b) {
      relations[b] = generate_relations(block_data(b)).relations;
      for (const auto& r : relations[b]) values[b].push_back(evaluate(a, out.blocks[b], r.generator));
      offset[b + 1] = offset[b] + values[b].size();
    }
    const Eigen::Index d = a.dim();
    VectorQ stacked(static_cast<Eigen::Index>(offset[nb]) * d);
    for (size_t b = 0; b < nb; ++b) {
      for (size_t r = 0; r < values[b].size(); ++r) stacked.segment(static_cast<Eigen::Index>(offset[b] + r) * d, d) = values[b][r];
    }
    if (jac == nullptr) return stacked;
    *jac = MatrixQ::Zero(stacked.size(), static_cast<Eigen::Index>(active));
    for (size_t u = 0; u < active; ++u) {
      const Unknown& unk = unknowns[u];
      const size_t b = sz(unk.block);
      const ContractionBlock& block = out.blocks[b];
      std::vector<VectorQ> column(values[b].size(), a.zero());
      if (unk.kind == Kind::correction) {
        const ArrowId target = unk.arrows.front();
        for (size_t r = 0; r < relations[b].size(); ++r) {
          for (const auto& [p, c] : relations[b][r].generator) {
            for (size_t i = 0; i < p.arrows.size(); ++i) {
              if (p.arrows[i] != target) continue;
              VectorQ x = a.unit(block.vertices[sz(p.source)]);
              for (size_t k = 0; k < i; ++k) x = a.multiply(x, block.embedding[sz(p.arrows[k])]);
              x = a.multiply(x, unk.direction);
              for (size_t k = i + 1; k < p.arrows.size(); ++k) x = a.multiply(x, block.embedding[sz(p.arrows[k])]);
              column[r] += c * x;
            }
          }
        }
      } else {
        // relations are affine in each parameter and border value
        const Rational h = unk.kind == Kind::parameter && current_value(unk) == -1 ? 2 : 1;
        shift(unk, h);
        const std::vector<VectorQ> moved = relation_values(b);
        shift(unk, -h);
        for (size_t r = 0; r < column.size(); ++r) column[r] = (moved[r] - values[b][r]) / h;
      }
      for (size_t r = 0; r < column.size(); ++r) {
        jac->block(static_cast<Eigen::Index>(offset[b] + r) * d, static_cast<Eigen::Index>(u), d, 1) = column[r];
      }
    }
    return stacked;
  };

  // Over Q a change of parameters may be unavoidable, see the second pass.
  const auto initial_embedding = [&] {
    std::vector<std::vector<VectorQ>> e;
    for (const auto& block : out.blocks) e.push_back(block.embedding);
    return e;
  }();
  const auto initial_parameter = parameter;
  constexpr int kMaxRounds = 8;
  for (int pass = 0; pass < 2 && !out.solved; ++pass) {
    if (pass == 1) {
      for (size_t b = 0; b < nb; ++b) out.blocks[b].embedding = initial_embedding[b];
      parameter = initial_parameter;
      for (auto& m : border) m.clear();
      out.failures.clear();
    }
    const size_t active = pass == 1 ? unknowns.size() : first_pass_unknowns;
  for (int round = 0; round <= kMaxRounds; ++round) {
    MatrixQ jac;
    VectorQ res = residual_and_jacobian(round < kMaxRounds ? &jac : nullptr, active);
    if (is_zero(res)) {
      out.solved = true;
      break;
    }
    if (round == kMaxRounds || active == 0) break;
    out.correction_rounds = round + 1;
    // drop rows that carry no information
    std::vector<Eigen::Index> keep;
    for (Eigen::Index r = 0; r < res.size(); ++r) {
      if (res(r) != 0 || !is_zero(jac.row(r))) keep.push_back(r);
    }
    MatrixQ sys(static_cast<Eigen::Index>(keep.size()), jac.cols());
    VectorQ rhs(static_cast<Eigen::Index>(keep.size()));
    for (size_t k = 0; k < keep.size(); ++k) {
      sys.row(static_cast<Eigen::Index>(k)) = jac.row(keep[k]);
      rhs(static_cast<Eigen::Index>(k)) = -res(keep[k]);
    }
    auto step = solve(sys, rhs);
    if (!step) {
      out.failures.push_back("no correction removes the relation residue");
      break;
    }
    for (size_t u = 0; u < active; ++u) {
      const Rational& s = (*step)(static_cast<Eigen::Index>(u));
      if (s == 0) continue;
      const Unknown& unk = unknowns[u];
      if (unk.kind == Kind::correction) {
        out.blocks[sz(unk.block)].embedding[sz(unk.arrows.front())] += s * unk.direction;
      } else {
        shift(unk, s);
      }
    }
    bool vanishing = false;
    for (const auto& m : parameter) {
      for (const auto& [nm, value] : m) vanishing = vanishing || value == 0;
    }
    if (vanishing) {
      out.failures.push_back("the correction step sends a parameter to zero");
      break;
    }
  }
  if (!out.solved && out.failures.empty()) out.failures.push_back("correction rounds exhausted");
  }

  // final data with the solved parameters, then verification
  for (size_t b = 0; b < nb; ++b) {
    ContractionBlock& block = out.blocks[b];
    for (const auto& [nm, value] : border[b]) {
      if (value != 0) block.border[nm] = value;
    }
    for (const auto& [nm, value] : parameter[b]) {
      if (value == 0) block.failures.push_back("parameter of " + nm + " vanishes");
    }
    try {
      block.data = block_data(b);
    } catch (const InvalidPresentation& e) {
      for (const auto& v : e.violations()) block.failures.push_back(v.rule + ": " + v.message);
      continue;
    }
    const Quiver& bq = block.data.quiver();
    block.corrected.assign(sz(bq.arrow_count()), false);
    for (ArrowId l = 0; l < bq.arrow_count(); ++l) {
      block.corrected[sz(l)] = block.embedding[sz(l)] != a.normal_form(block.shortest[sz(l)]);
    }

    block.relations_vanish = true;
    for (const auto& r : generate_relations(block.data).relations) {
      if (!is_zero(evaluate(a, block, r.generator))) {
        block.relations_vanish = false;
        block.failures.push_back("relation " + bq.format(r.generator) + " does not vanish");
      }
    }

    std::vector<VectorQ> seeds;
    for (VertexId v : block.vertices) seeds.push_back(a.unit(v));
    for (const auto& x : block.embedding) seeds.push_back(x);
    const Eigen::Index generated = span_closure(a, seeds, block.embedding).rows();
    int corner = 0;
    block.corner_dims.clear();
    for (VertexId v : block.vertices) {
      int d = 0;
      for (VertexId w : block.vertices) d += static_cast<int>(a.basis_between(v, w).size());
      block.corner_dims.push_back(d);
      corner += d;
      for (VertexId w : out.gamma) {
        if (std::find(block.vertices.begin(), block.vertices.end(), w) == block.vertices.end() &&
            !a.basis_between(v, w).empty()) {
          block.failures.push_back("paths join block vertex " + q.vertex_name(v) + " to another block");
        }
      }
    }
    block.generates = generated == corner;
    if (!block.generates) block.failures.push_back("contracted arrows do not generate the corner algebra");

    try {
      FiniteDimAlgebra h = build_algebra(block.data);
      block.dims = dimension_vector(h);
      block.dimensions_match = block.dims == block.corner_dims;
      if (!block.dimensions_match) block.failures.push_back("block algebra dimensions differ from the corner algebra");
    } catch (const CapExceeded& e) {
      block.failures.push_back(e.what());
    }

    const ValidationReport report = validate_structural(block.data);
    block.valid = report.ok();
    for (const auto& v : report.violations) block.failures.push_back(v.rule + ": " + v.message);

    const auto cls = classify_arrows(block.data);
    block.loops_ok = true;
    block.has_non_triangle = false;
    for (ArrowId l = 0; l < bq.arrow_count(); ++l) {
      if (!block.data.in_triangles(l)) block.has_non_triangle = true;
      if (cls[l].socle_length != 1) continue;
      const Arrow& ar = bq.arrow(l);
      const bool biserial = !block.data.in_triangles(l) && !block.data.in_triangles(block.data.bar(l));
      if (ar.source != ar.target || !biserial) {
        block.loops_ok = false;
        block.failures.push_back("arrow " + ar.name + " has weight times orbit length one but is not a biserial loop");
      }
    }
    if (!out.is_full && !block.has_non_triangle) block.failures.push_back("every arrow of the block lies in a triangle");
  }
  return out;
}

RoundtripReport roundtrip_verify(const BiserialQuiverData& data) {
  RoundtripReport out;
  const Quiver& hq = data.quiver();
  out.star = star(data);
  out.star_valid = validate_structural(out.star.data).ok();
  if (!out.star_valid) out.failures.push_back("the starred presentation fails structural validation");
  const FiniteDimAlgebra lambda = build_algebra(out.star.data);
  const Quiver& sq = out.star.data.quiver();
  std::vector<VertexId> gamma;
  for (VertexId v = 0; v < hq.vertex_count(); ++v) gamma.push_back(sq.vertex(hq.vertex_name(v)));
  out.contraction = contract(out.star.data, lambda, gamma);
  if (!out.contraction.ok()) out.failures.push_back("the contraction does not verify");

  const VertexId anchor = gamma.front();
  for (size_t b = 0; b < out.contraction.blocks.size(); ++b) {
    const auto& vs = out.contraction.blocks[b].vertices;
    if (std::find(vs.begin(), vs.end(), anchor) != vs.end()) out.block = static_cast<int>(b);
  }
  if (out.block < 0) {
    out.failures.push_back("no block contains the vertices of H");
    return out;
  }
  const ContractionBlock& block = out.contraction.blocks[sz(out.block)];
  const Quiver& bq = block.data.quiver();

  std::map<std::string, std::string> merged;
  for (const auto& s : out.star.splits) merged[s.first] = s.arrow;
  // psi: contracted arrow -> arrow of H
  std::vector<ArrowId> psi(sz(bq.arrow_count()), -1);
  for (ArrowId l = 0; l < bq.arrow_count(); ++l) {
    const Path& p = block.shortest[sz(l)];
    const std::string& first = sq.arrow(p.arrows.front()).name;
    if (p.length() == 1 && hq.find_arrow(first)) {
      psi[sz(l)] = hq.arrow_id(first);
    } else if (p.length() == 2 && merged.count(first) &&
               sq.arrow(p.arrows.back()).name == split_second_name(merged.at(first))) {
      psi[sz(l)] = hq.arrow_id(merged.at(first));
    } else {
      out.failures.push_back("contracted arrow " + bq.arrow(l).name + " has no image in H");
    }
  }
  if (!out.failures.empty() && std::find(psi.begin(), psi.end(), -1) != psi.end()) return out;

  const FiniteDimAlgebra h = build_algebra(data);
  out.h_dims = dimension_vector(h);
  out.block_dims.assign(sz(hq.vertex_count()), 0);
  for (size_t k = 0; k < block.vertices.size(); ++k) {
    out.block_dims[sz(hq.vertex(sq.vertex_name(block.vertices[k])))] = block.corner_dims[k];
  }
  out.dimensions_equal = out.h_dims == out.block_dims;
  if (!out.dimensions_equal) out.failures.push_back("per-vertex dimensions differ");

  out.relations_map_to_zero = true;
  for (const auto& r : generate_relations(block.data).relations) {
    LinComb image;
    for (const auto& [p, c] : r.generator) {
      std::vector<ArrowId> arrows;
      for (ArrowId l : p.arrows) arrows.push_back(psi[sz(l)]);
      Path hp = arrows.empty() ? stationary_path(hq.vertex(bq.vertex_name(p.source))) : hq.path(arrows);
      image.add(hp, c);
    }
    if (!is_zero(h.normal_form(image))) {
      out.relations_map_to_zero = false;
      out.failures.push_back("relation " + bq.format(r.generator) + " maps to " + h.format(h.normal_form(image)));
    }
  }
  return out;
}

}  // namespace hybrid
