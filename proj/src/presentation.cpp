#include "hybrid/presentation.hpp"

namespace hybrid {

std::string to_string(RelationKind k) {
  switch (k) {
    case RelationKind::quadratic: return "quadratic";
    case RelationKind::loop_square: return "loop-square";
    case RelationKind::zeta: return "zeta";
    case RelationKind::xi: return "xi";
    case RelationKind::socle: return "socle";
  }
  return "?";
}

SpecialPaths special_paths(const BiserialQuiverData& d, const ArrowClassification& cls, ArrowId a) {
  const Quiver& q = d.quiver();
  SpecialPaths out;
  const ArrowId fa = d.f(a), ga = d.g(a);
  out.zeta = q.path({a, fa, d.g(fa)});
  out.xi = q.path({a, ga, d.f(ga)});
  const ArrowId other = d.bar(a);
  auto special = [&](ArrowId x) { return cls[x].is_virtual() || cls[x].critical; };
  if (d.in_triangles(a) && d.in_triangles(other) && special(other)) out.zeta_witness = other;
  if (d.in_triangles(a) && d.in_triangles(ga) && special(fa)) out.xi_witness = fa;
  return out;
}

RelationSet generate_relations(const BiserialQuiverData& d, const ArrowClassification& cls) {
  const Quiver& q = d.quiver();
  RelationSet out;
  for (ArrowId a = 0; a < q.arrow_count(); ++a) {
    const ArrowId fa = d.f(a), other = d.bar(a);
    LinComb rel(q.path({a, fa}));
    if (d.in_triangles(a)) rel.add(d.socle_prefix(other), -d.parameter(other));
    if (fa == a) {
      rel.add(d.socle_path(other), -d.border(a));
      out.relations.push_back({rel, RelationKind::loop_square, a});
    } else {
      out.relations.push_back({rel, RelationKind::quadratic, a});
    }
  }
  for (ArrowId a = 0; a < q.arrow_count(); ++a) {
    const auto sp = special_paths(d, cls, a);
    if (sp.zeta_witness) {
      out.exceptions.push_back({RelationKind::zeta, a, *sp.zeta_witness, cls[*sp.zeta_witness].critical});
    } else {
      out.relations.push_back({LinComb(sp.zeta), RelationKind::zeta, a});
    }
    if (sp.xi_witness) {
      out.exceptions.push_back({RelationKind::xi, a, *sp.xi_witness, cls[*sp.xi_witness].critical});
    } else {
      out.relations.push_back({LinComb(sp.xi), RelationKind::xi, a});
    }
  }
  for (ArrowId a = 0; a < q.arrow_count(); ++a) {
    const ArrowId other = d.bar(a);
    if (other < a) continue;
    LinComb rel(d.socle_path(a), d.parameter(a));
    rel.add(d.socle_path(other), -d.parameter(other));
    out.relations.push_back({rel, RelationKind::socle, a});
  }
  return out;
}

}  // namespace hybrid
