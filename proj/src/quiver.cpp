#include "hybrid/quiver.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace hybrid {

// ---------------------------------------------------------------- paths

Path concat(const Path& a, const Path& b) {
  if (a.target != b.source) throw CompositionError("paths do not compose");
  Path out{a.source, b.target, a.arrows};
  out.arrows.insert(out.arrows.end(), b.arrows.begin(), b.arrows.end());
  return out;
}

LinComb::LinComb(Path p, Rational coeff) {
  if (coeff != 0) terms_.emplace(std::move(p), std::move(coeff));
}

void LinComb::add(const Path& p, const Rational& coeff) {
  if (coeff == 0) return;
  auto [it, inserted] = terms_.try_emplace(p, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

void LinComb::add(const LinComb& other, const Rational& scale) {
  for (const auto& [p, c] : other.terms_) add(p, c * scale);
}

LinComb LinComb::scaled(const Rational& s) const {
  LinComb out;
  if (s == 0) return out;
  for (const auto& [p, c] : terms_) out.terms_.emplace(p, c * s);
  return out;
}

LinComb operator*(const LinComb& a, const LinComb& b) {
  LinComb out;
  for (const auto& [p, x] : a.terms_) {
    for (const auto& [q, y] : b.terms_) {
      if (p.target != q.source) continue;
      out.add(concat(p, q), x * y);
    }
  }
  return out;
}

LinComb operator+(const LinComb& a, const LinComb& b) {
  LinComb out = a;
  out.add(b);
  return out;
}

LinComb operator-(const LinComb& a, const LinComb& b) {
  LinComb out = a;
  out.add(b, Rational(-1));
  return out;
}

size_t LinComb::max_length() const {
  size_t n = 0;
  for (const auto& [p, c] : terms_) n = std::max(n, p.length());
  return n;
}

// ---------------------------------------------------------------- quiver

Quiver::Quiver(std::vector<std::string> vertices, std::vector<std::array<std::string, 3>> arrows)
    : vertices_(std::move(vertices)) {
  for (size_t i = 0; i < vertices_.size(); ++i) {
    if (!vertex_index_.emplace(vertices_[i], static_cast<VertexId>(i)).second) {
      throw std::invalid_argument("duplicate vertex '" + vertices_[i] + "'");
    }
  }
  std::sort(arrows.begin(), arrows.end(), [](const auto& a, const auto& b) { return a[0] < b[0]; });
  out_.assign(vertices_.size(), {});
  in_.assign(vertices_.size(), {});
  for (const auto& [name, s, t] : arrows) {
    auto si = vertex_index_.find(s), ti = vertex_index_.find(t);
    if (si == vertex_index_.end() || ti == vertex_index_.end()) {
      throw std::invalid_argument("arrow '" + name + "' has an unknown endpoint");
    }
    const auto id = static_cast<ArrowId>(arrows_.size());
    if (!arrow_index_.emplace(name, id).second) {
      throw std::invalid_argument("duplicate arrow '" + name + "'");
    }
    arrows_.push_back({name, si->second, ti->second});
    out_[static_cast<size_t>(si->second)].push_back(id);
    in_[static_cast<size_t>(ti->second)].push_back(id);
  }
}

std::optional<VertexId> Quiver::find_vertex(const std::string& name) const {
  auto it = vertex_index_.find(name);
  if (it == vertex_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<ArrowId> Quiver::find_arrow(const std::string& name) const {
  auto it = arrow_index_.find(name);
  if (it == arrow_index_.end()) return std::nullopt;
  return it->second;
}

VertexId Quiver::vertex(const std::string& name) const {
  auto v = find_vertex(name);
  if (!v) throw std::out_of_range("unknown vertex '" + name + "'");
  return *v;
}

ArrowId Quiver::arrow_id(const std::string& name) const {
  auto a = find_arrow(name);
  if (!a) throw std::out_of_range("unknown arrow '" + name + "'");
  return *a;
}

bool Quiver::is_two_regular() const {
  for (size_t v = 0; v < vertices_.size(); ++v) {
    if (out_[v].size() != 2 || in_[v].size() != 2) return false;
  }
  return true;
}

bool Quiver::is_connected() const {
  if (vertices_.empty()) return false;
  std::vector<int> parent(vertices_.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<size_t>(x)] != x) x = parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
    return x;
  };
  for (const auto& a : arrows_) parent[static_cast<size_t>(find(a.source))] = find(a.target);
  const int root = find(0);
  for (size_t v = 0; v < vertices_.size(); ++v) {
    if (find(static_cast<int>(v)) != root) return false;
  }
  return true;
}

Path Quiver::path(const std::vector<ArrowId>& arrows) const {
  if (arrows.empty()) throw std::invalid_argument("use stationary_path for empty paths");
  Path p{arrow(arrows.front()).source, arrow(arrows.front()).source, {}};
  for (ArrowId a : arrows) {
    if (arrow(a).source != p.target) {
      throw CompositionError("arrow '" + arrow(a).name + "' does not compose with the preceding path");
    }
    p.arrows.push_back(a);
    p.target = arrow(a).target;
  }
  return p;
}

Path Quiver::path_from_names(const std::vector<std::string>& names) const {
  std::vector<ArrowId> ids;
  ids.reserve(names.size());
  for (const auto& n : names) ids.push_back(arrow_id(n));
  return path(ids);
}

std::string Quiver::format(const Path& p) const {
  if (p.stationary()) return "e_" + vertex_name(p.source);
  std::string out;
  for (size_t k = 0; k < p.arrows.size(); ++k) {
    if (k) out += '.';
    out += arrow(p.arrows[k]).name;
  }
  return out;
}

std::string Quiver::format(const LinComb& x) const {
  if (x.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [p, c] : x) {
    Rational mag = abs(c);
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    if (mag != 1) out += to_string(mag) + "*";
    out += format(p);
    first = false;
  }
  return out;
}

// ---------------------------------------------------------------- permutations

Permutation inverse(const Permutation& p) {
  Permutation inv(p.size());
  for (size_t i = 0; i < p.size(); ++i) inv[static_cast<size_t>(p[i])] = static_cast<ArrowId>(i);
  return inv;
}

Permutation compose(const Permutation& outer, const Permutation& inner) {
  Permutation out(inner.size());
  for (size_t i = 0; i < inner.size(); ++i) out[i] = outer[static_cast<size_t>(inner[i])];
  return out;
}

std::vector<std::vector<ArrowId>> orbits(const Permutation& p) {
  std::vector<std::vector<ArrowId>> out;
  std::vector<bool> seen(p.size(), false);
  for (size_t start = 0; start < p.size(); ++start) {
    if (seen[start]) continue;
    std::vector<ArrowId> cycle;
    for (auto a = static_cast<ArrowId>(start); !seen[static_cast<size_t>(a)]; a = p[static_cast<size_t>(a)]) {
      seen[static_cast<size_t>(a)] = true;
      cycle.push_back(a);
    }
    out.push_back(std::move(cycle));
  }
  return out;
}

Permutation bar_involution(const Quiver& q) {
  Permutation bar(static_cast<size_t>(q.arrow_count()), -1);
  for (VertexId v = 0; v < q.vertex_count(); ++v) {
    const auto& out = q.outgoing(v);
    if (out.size() != 2) throw std::invalid_argument("vertex '" + q.vertex_name(v) + "' does not have two outgoing arrows");
    bar[static_cast<size_t>(out[0])] = out[1];
    bar[static_cast<size_t>(out[1])] = out[0];
  }
  return bar;
}

Permutation derive_g(const Permutation& f, const Quiver& q) {
  std::string bad;
  for (ArrowId a = 0; a < q.arrow_count(); ++a) {
    if (q.arrow(f[static_cast<size_t>(a)]).source != q.arrow(a).target) {
      bad += (bad.empty() ? "" : ", ") + q.arrow(a).name;
    }
  }
  if (!bad.empty()) throw std::invalid_argument("f is not compatible with the quiver at: " + bad);
  return compose(bar_involution(q), f);
}

InvalidPresentation::InvalidPresentation(std::vector<Violation> v)
    : std::runtime_error([&] {
        std::string msg = "invalid presentation";
        for (const auto& x : v) msg += "\n  [" + x.rule + "] " + x.message;
        return msg;
      }()),
      violations_(std::move(v)) {}

// ---------------------------------------------------------------- data

namespace {

std::vector<int> orbit_lengths(const Permutation& p) {
  std::vector<int> len(p.size());
  for (const auto& cyc : orbits(p)) {
    for (ArrowId a : cyc) len[static_cast<size_t>(a)] = static_cast<int>(cyc.size());
  }
  return len;
}

std::vector<int> orbit_index(const Permutation& p) {
  std::vector<int> idx(p.size());
  const auto cycles = orbits(p);
  for (size_t k = 0; k < cycles.size(); ++k) {
    for (ArrowId a : cycles[k]) idx[static_cast<size_t>(a)] = static_cast<int>(k);
  }
  return idx;
}

}  // namespace

BiserialQuiverData BiserialQuiverData::from_spec(const PresentationSpec& spec) {
  std::vector<Violation> errs;
  auto fail = [&](const char* rule, std::string msg) { errs.push_back({rule, std::move(msg)}); };

  std::vector<std::array<std::string, 3>> arrows;
  for (const auto& a : spec.arrows) arrows.push_back({a.name, a.source, a.target});
  BiserialQuiverData d;
  try {
    d.quiver_ = Quiver(spec.vertices, arrows);
  } catch (const std::invalid_argument& e) {
    throw InvalidPresentation(std::vector<Violation>{{rules::kInput, e.what()}});
  }
  const Quiver& q = d.quiver_;
  if (q.arrow_count() == 0) throw InvalidPresentation(std::vector<Violation>{{rules::kInput, "quiver has no arrows"}});
  if (!q.is_two_regular()) fail(rules::kTwoRegular, "every vertex needs exactly two outgoing and two incoming arrows");
  if (!q.is_connected()) fail(rules::kConnected, "the quiver is not connected");

  const auto n = static_cast<size_t>(q.arrow_count());
  d.f_.assign(n, -1);
  for (const auto& cycle : spec.f) {
    for (size_t k = 0; k < cycle.size(); ++k) {
      auto a = q.find_arrow(cycle[k]);
      auto b = q.find_arrow(cycle[(k + 1) % cycle.size()]);
      if (!a || !b) {
        fail(rules::kPermutation, "unknown arrow in f cycle");
        continue;
      }
      if (d.f_[static_cast<size_t>(*a)] != -1) {
        fail(rules::kPermutation, "arrow '" + cycle[k] + "' occurs twice in f");
        continue;
      }
      d.f_[static_cast<size_t>(*a)] = *b;
    }
  }
  for (size_t a = 0; a < n; ++a) {
    if (d.f_[a] == -1) d.f_[a] = static_cast<ArrowId>(a);
  }
  {
    std::vector<int> hits(n, 0);
    for (ArrowId b : d.f_) ++hits[static_cast<size_t>(b)];
    for (size_t a = 0; a < n; ++a) {
      if (hits[a] != 1) fail(rules::kPermutation, "f is not a permutation at '" + q.arrow(static_cast<ArrowId>(a)).name + "'");
    }
  }
  if (!errs.empty()) throw InvalidPresentation(errs);
  for (ArrowId a = 0; a < q.arrow_count(); ++a) {
    if (q.arrow(d.f(a)).source != q.arrow(a).target) {
      fail(rules::kComposable, "source(f(" + q.arrow(a).name + ")) != target(" + q.arrow(a).name + ")");
    }
  }
  if (!errs.empty()) throw InvalidPresentation(errs);

  d.bar_ = bar_involution(q);
  d.g_ = compose(d.bar_, d.f_);
  d.f_inv_ = inverse(d.f_);
  d.g_inv_ = inverse(d.g_);
  d.g_len_ = orbit_lengths(d.g_);
  d.f_len_ = orbit_lengths(d.f_);

  const auto g_orbit = orbit_index(d.g_);
  const auto g_cycles = orbits(d.g_);
  std::vector<std::optional<int>> m_orbit(g_cycles.size());
  std::vector<std::optional<Rational>> c_orbit(g_cycles.size());
  for (const auto& [name, value] : spec.m) {
    auto a = q.find_arrow(name);
    if (!a) {
      fail(rules::kWeights, "weight given for unknown arrow '" + name + "'");
      continue;
    }
    if (value < 1) fail(rules::kWeights, "weight of '" + name + "' must be positive");
    auto& slot = m_orbit[static_cast<size_t>(g_orbit[static_cast<size_t>(*a)])];
    if (slot && *slot != value) fail(rules::kWeights, "conflicting weights on the g-orbit of '" + name + "'");
    slot = value;
  }
  for (const auto& [name, value] : spec.c) {
    auto a = q.find_arrow(name);
    if (!a) {
      fail(rules::kParameters, "parameter given for unknown arrow '" + name + "'");
      continue;
    }
    if (value == 0) fail(rules::kParameters, "parameter of '" + name + "' must be nonzero");
    auto& slot = c_orbit[static_cast<size_t>(g_orbit[static_cast<size_t>(*a)])];
    if (slot && *slot != value) fail(rules::kParameters, "conflicting parameters on the g-orbit of '" + name + "'");
    slot = value;
  }
  d.m_.resize(n);
  d.c_.resize(n);
  d.b_.assign(n, Rational(0));
  for (size_t a = 0; a < n; ++a) {
    const auto k = static_cast<size_t>(g_orbit[a]);
    d.m_[a] = m_orbit[k].value_or(1);
    d.c_[a] = c_orbit[k].value_or(Rational(1));
  }
  for (const auto& [name, value] : spec.b) {
    auto a = q.find_arrow(name);
    if (!a || d.f(*a) != *a) {
      fail(rules::kBorder, "border value given for '" + name + "', which is not fixed by f");
      continue;
    }
    d.b_[static_cast<size_t>(*a)] = value;
  }
  d.in_t_.assign(n, false);
  for (const auto& name : spec.triangles) {
    auto a = q.find_arrow(name);
    if (!a) {
      fail(rules::kTriangleOrbit, "unknown arrow '" + name + "' in T");
      continue;
    }
    const int len = d.f_orbit_length(*a);
    if (len != 1 && len != 3) {
      fail(rules::kTriangleOrbit, "the f-orbit of '" + name + "' has length " + std::to_string(len));
      continue;
    }
    for (ArrowId x = *a;;) {
      d.in_t_[static_cast<size_t>(x)] = true;
      x = d.f(x);
      if (x == *a) break;
    }
  }
  for (ArrowId a = 0; a < q.arrow_count(); ++a) {
    if (d.in_triangles(a) && d.socle_length(a) < 2) {
      fail(rules::kTriangleWeight, "m*n < 2 for '" + q.arrow(a).name + "' in T");
    }
  }
  if (!errs.empty()) throw InvalidPresentation(errs);
  return d;
}

PresentationSpec BiserialQuiverData::to_spec() const {
  PresentationSpec s;
  s.vertices = quiver_.vertex_names();
  for (const auto& a : quiver_.arrows()) {
    s.arrows.push_back({a.name, quiver_.vertex_name(a.source), quiver_.vertex_name(a.target)});
  }
  for (const auto& cyc : orbits(f_)) {
    std::vector<std::string> names;
    for (ArrowId a : cyc) names.push_back(quiver_.arrow(a).name);
    s.f.push_back(std::move(names));
  }
  for (const auto& cyc : orbits(g_)) {
    const auto& rep = quiver_.arrow(cyc.front()).name;
    s.m[rep] = weight(cyc.front());
    s.c[rep] = parameter(cyc.front());
  }
  for (ArrowId a = 0; a < quiver_.arrow_count(); ++a) {
    if (f(a) == a && border(a) != 0) s.b[quiver_.arrow(a).name] = border(a);
    if (in_triangles(a)) s.triangles.push_back(quiver_.arrow(a).name);
  }
  return s;
}

bool BiserialQuiverData::all_triangles() const {
  return std::all_of(in_t_.begin(), in_t_.end(), [](bool x) { return x; });
}

int BiserialQuiverData::triangle_count() const {
  return static_cast<int>(std::count(in_t_.begin(), in_t_.end(), true));
}

Path BiserialQuiverData::g_path(ArrowId a, int length) const {
  if (length <= 0) return stationary_path(quiver_.arrow(a).source);
  std::vector<ArrowId> arrows;
  for (ArrowId x = a; static_cast<int>(arrows.size()) < length; x = g(x)) arrows.push_back(x);
  return quiver_.path(arrows);
}

// ---------------------------------------------------------------- classification

ArrowClassification classify_arrows(const BiserialQuiverData& d) {
  const Quiver& q = d.quiver();
  ArrowClassification cls;
  cls.arrows.resize(static_cast<size_t>(q.arrow_count()));
  for (ArrowId a = 0; a < q.arrow_count(); ++a) {
    auto& info = cls.arrows[static_cast<size_t>(a)];
    info.orbit_length = d.g_orbit_length(a);
    info.socle_length = d.socle_length(a);
    info.border = d.f(a) == a;
    info.socle = d.socle_path(a);
    info.socle_prefix = d.socle_prefix(a);
    const bool vertex_biserial = !d.in_triangles(a) && !d.in_triangles(d.bar(a));
    if (info.socle_length == 1 && vertex_biserial) {
      info.virtual_kind = VirtualKind::biserial_loop;
    } else if (info.socle_length == 2 && d.in_triangles(d.bar(a))) {
      info.virtual_kind = VirtualKind::beside_triangle;
    }
  }
  for (ArrowId a = 0; a < q.arrow_count(); ++a) {
    auto& info = cls.arrows[static_cast<size_t>(a)];
    info.critical = info.socle_length == 3 && d.in_triangles(a) && cls[d.f(a)].is_virtual();
  }
  return cls;
}

std::vector<VertexKind> classify_vertices(const BiserialQuiverData& d) {
  const Quiver& q = d.quiver();
  std::vector<VertexKind> out;
  for (VertexId v = 0; v < q.vertex_count(); ++v) {
    int inside = 0;
    for (ArrowId a : q.outgoing(v)) inside += d.in_triangles(a) ? 1 : 0;
    out.push_back(inside == 0 ? VertexKind::biserial : inside == 2 ? VertexKind::quaternion : VertexKind::hybrid);
  }
  return out;
}

std::string to_string(VertexKind k) {
  switch (k) {
    case VertexKind::biserial: return "biserial";
    case VertexKind::hybrid: return "hybrid";
    case VertexKind::quaternion: return "quaternion";
  }
  return "?";
}

// ---------------------------------------------------------------- validation

ValidationReport validate_structural(const BiserialQuiverData& d) {
  ValidationReport report;
  const Quiver& q = d.quiver();
  const auto cls = classify_arrows(d);
  const int nv = q.vertex_count();
  const bool all_t = d.all_triangles();
  const bool unit_weights = std::all_of(q.arrows().begin(), q.arrows().end(),
                                        [&](const Arrow& a) { return d.weight(q.arrow_id(a.name)) == 1; });
  if (nv == 1) {
    if (all_t && unit_weights) {
      report.violations.push_back({rules::kLocalAllTriangles,
                                   "one vertex, every arrow in T and weight 1: not finite-dimensional"});
    }
    for (ArrowId a = 0; a < q.arrow_count(); ++a) {
      const ArrowId other = d.bar(a);
      if (!d.in_triangles(a) && d.in_triangles(other) && d.f(a) == a && unit_weights && d.border(a) != 0) {
        report.violations.push_back({rules::kLocalBorder, "one vertex, T = {" + q.arrow(other).name +
                                                              "}, weight 1 and nonzero border value on '" +
                                                              q.arrow(a).name + "'"});
      }
    }
  }
  if (nv == 2 && all_t) {
    bool virtual_loop = false;
    for (ArrowId a = 0; a < q.arrow_count(); ++a) {
      const auto& ar = q.arrow(a);
      if (ar.source == ar.target && cls[a].is_virtual()) virtual_loop = true;
    }
    bool unit_three_cycle = false;
    for (const auto& cyc : orbits(d.g_perm())) {
      if (cyc.size() == 3 && d.weight(cyc.front()) == 1) unit_three_cycle = true;
    }
    if (virtual_loop && unit_three_cycle) {
      report.violations.push_back({rules::kDiscVirtualLoop,
                                   "two vertices, every arrow in T, a virtual loop and a g-cycle of length 3 with weight 1"});
    }
  }
  if (nv == 3 && all_t &&
      std::all_of(cls.arrows.begin(), cls.arrows.end(), [](const ArrowInfo& i) { return i.is_virtual(); })) {
    report.violations.push_back({rules::kTriangleAllVirtual, "three vertices, every arrow in T and every arrow virtual"});
  }
  return report;
}

ValidationReport validate_structural(const PresentationSpec& spec) {
  try {
    return validate_structural(BiserialQuiverData::from_spec(spec));
  } catch (const InvalidPresentation& e) {
    return ValidationReport{e.violations()};
  }
}

}  // namespace hybrid
