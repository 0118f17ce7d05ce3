#include "hybrid/algebra.hpp"
#include "hybrid/constructions.hpp"
#include "hybrid/corpus.hpp"
#include "hybrid/detectors.hpp"
#include "hybrid/io.hpp"
#include "hybrid/module.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

using namespace hybrid;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kCheckFailed = 1, kCapExceeded = 2, kInputError = 3 };

// Raised for bad command-line values that the parser cannot catch.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string file;
  bool as_json = false;
};

BiserialQuiverData load(const std::string& path) { return BiserialQuiverData::from_spec(load_presentation(path)); }

void emit(const Options& opt, const json& doc, const std::string& text) {
  if (opt.as_json) {
    std::cout << dump(doc);
  } else {
    std::cout << text;
  }
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

VertexId vertex_of(const Quiver& q, const std::string& name) {
  auto v = q.find_vertex(name);
  if (!v) throw UsageError("unknown vertex '" + name + "'");
  return *v;
}

std::string join(const std::vector<int>& v) {
  std::string s;
  for (size_t k = 0; k < v.size(); ++k) s += (k ? " " : "") + std::to_string(v[k]);
  return s;
}

json report_json(const ValidationReport& r) {
  json out = json::array();
  for (const auto& v : r.violations) out.push_back({{"rule", v.rule}, {"message", v.message}});
  return out;
}

int cmd_validate(const Options& opt) {
  const auto report = validate(load_presentation(opt.file), ValidationLevel::full);
  std::ostringstream text;
  text << (report.ok() ? "valid\n" : "invalid\n");
  for (const auto& v : report.violations) text << "  [" << v.rule << "] " << v.message << "\n";
  emit(opt, {{"valid", report.ok()}, {"violations", report_json(report)}}, text.str());
  return report.ok() ? kOk : kCheckFailed;
}

std::string kind_name(const ArrowInfo& info) {
  if (info.virtual_kind == VirtualKind::biserial_loop) return "virtual loop";
  if (info.virtual_kind == VirtualKind::beside_triangle) return "virtual";
  return info.critical ? "critical" : "";
}

int cmd_describe(const Options& opt, bool relations) {
  const auto d = load(opt.file);
  const Quiver& q = d.quiver();
  const auto cls = classify_arrows(d);
  const auto kinds = classify_vertices(d);
  json doc = to_json(d.to_spec());
  std::ostringstream text;
  int t_orbits = 0;
  for (const auto& orbit : orbits(d.f_perm())) t_orbits += d.in_triangles(orbit.front()) ? 1 : 0;
  text << q.vertex_count() << " vertices, " << q.arrow_count() << " arrows, " << t_orbits << " f-orbits in T\n";
  json vertices = json::object();
  for (VertexId v = 0; v < q.vertex_count(); ++v) {
    vertices[q.vertex_name(v)] = to_string(kinds[static_cast<size_t>(v)]);
    text << "  vertex " << q.vertex_name(v) << ": " << to_string(kinds[static_cast<size_t>(v)]) << "\n";
  }
  json arrows = json::object();
  for (ArrowId a = 0; a < q.arrow_count(); ++a) {
    const auto& info = cls[a];
    arrows[q.arrow(a).name] = {{"f", q.arrow(d.f(a)).name},
                               {"g", q.arrow(d.g(a)).name},
                               {"m", d.weight(a)},
                               {"n", info.orbit_length},
                               {"in_triangles", d.in_triangles(a)},
                               {"kind", kind_name(info)},
                               {"B", q.format(info.socle)}};
    text << "  " << q.arrow(a).name << ": f=" << q.arrow(d.f(a)).name << " g=" << q.arrow(d.g(a)).name
         << " mn=" << info.socle_length << (d.in_triangles(a) ? " T" : "");
    const std::string k = kind_name(info);
    if (!k.empty()) text << " " << k;
    text << "\n";
  }
  doc["vertex_kinds"] = vertices;
  doc["arrow_data"] = arrows;
  if (relations) {
    const json rel = to_json(d, generate_relations(d, cls));
    doc["relations"] = rel;
    for (const auto& r : rel["relations"]) {
      text << "  " << r["kind"].get<std::string>() << "(" << r["anchor"].get<std::string>()
           << "): " << r["generator"].get<std::string>() << "\n";
    }
    for (const auto& e : rel["exceptions"]) {
      text << "  no " << e["kind"].get<std::string>() << "(" << e["anchor"].get<std::string>() << "): "
           << e["witness"].get<std::string>() << (e["critical"].get<bool>() ? " is critical" : " is virtual") << "\n";
    }
  }
  emit(opt, doc, text.str());
  return kOk;
}

int cmd_basis(const Options& opt) {
  const auto d = load(opt.file);
  const auto h = build_algebra(d);
  const Quiver& q = h.quiver();
  json doc = json::object();
  std::ostringstream text;
  text << "dim " << h.dim() << "\n";
  for (VertexId v = 0; v < q.vertex_count(); ++v) {
    json paths = json::array();
    for (int k : h.basis_from(v)) paths.push_back(q.format(h.basis(k)));
    text << "  e_" << q.vertex_name(v) << "H (" << paths.size() << "):";
    for (const auto& p : paths) text << " " << p.get<std::string>();
    text << "\n";
    doc[q.vertex_name(v)] = paths;
  }
  emit(opt, {{"dim", h.dim()}, {"basis", doc}}, text.str());
  return kOk;
}

int cmd_cartan(const Options& opt) {
  const auto h = build_algebra(load(opt.file));
  const auto c = cartan_matrix(h);
  const auto dims = dimension_vector(h);
  std::ostringstream text;
  for (const auto& row : c) text << join(row) << "\n";
  text << "dimension vector: " << join(dims) << "  total " << h.dim() << "\n";
  emit(opt, {{"cartan", c}, {"dimension_vector", dims}, {"dim", h.dim()}}, text.str());
  return kOk;
}

int cmd_blocks(const Options& opt) {
  const auto h = build_algebra(load(opt.file));
  const Quiver& q = h.quiver();
  const auto blocks = block_decomposition(h);
  const auto sets = block_vertex_sets(h);
  json doc = json::array();
  std::ostringstream text;
  text << sets.size() << " block" << (sets.size() == 1 ? "" : "s") << "\n";
  for (size_t k = 0; k < sets.size(); ++k) {
    std::vector<std::string> names;
    for (VertexId v : sets[k]) names.push_back(q.vertex_name(v));
    doc.push_back({{"vertices", names}, {"dim", blocks[k].dim()}});
    text << "  {";
    for (size_t i = 0; i < names.size(); ++i) text << (i ? "," : "") << names[i];
    text << "} dim " << blocks[k].dim() << "\n";
  }
  emit(opt, {{"blocks", doc}}, text.str());
  return kOk;
}

int cmd_symmetric(const Options& opt) {
  const auto h = build_algebra(load(opt.file));
  const auto verdict = symmetric_form_exists(h);
  json doc = {{"symmetric", verdict.symmetric}, {"reason", verdict.reason}};
  std::ostringstream text;
  text << (verdict.symmetric ? "symmetric" : "not symmetric") << "\n";
  if (!verdict.reason.empty()) text << "  " << verdict.reason << "\n";
  if (verdict.symmetric) {
    doc["functional"] = h.format(verdict.functional);
    text << "  functional dual to " << h.format(verdict.functional) << "\n";
  } else {
    json cert = json::array();
    for (const auto& x : verdict.certificate) {
      cert.push_back(h.format(x));
      text << "  certificate " << h.format(x) << "\n";
    }
    doc["certificate"] = cert;
  }
  emit(opt, doc, text.str());
  return verdict.symmetric ? kOk : kCheckFailed;
}

int cmd_star(const Options& opt) {
  const auto s = star(load(opt.file));
  json doc = to_json(s.data.to_spec());
  json splits = json::array();
  for (const auto& sp : s.splits) {
    splits.push_back(
        {{"arrow", sp.arrow}, {"first", sp.first}, {"second", sp.second}, {"closing", sp.closing}, {"vertex", sp.vertex}});
  }
  json cycles = json::array();
  for (const auto& c : s.closing_cycles) {
    cycles.push_back({{"arrows", c.arrows}, {"m", c.weight}, {"c", to_string(c.parameter)}, {"reason", c.reason}});
  }
  std::cout << dump({{"presentation", doc}, {"splits", splits}, {"closing_cycles", cycles}});
  return validate_structural(s.data).ok() ? kOk : kCheckFailed;
}

int cmd_idempotent(const Options& opt, const std::string& keep) {
  const auto d = load(opt.file);
  const auto h = build_algebra(d);
  std::vector<VertexId> gamma;
  for (const auto& name : split_list(keep)) gamma.push_back(vertex_of(d.quiver(), name));
  const auto r = contract(d, h, gamma);
  json blocks = json::array();
  for (const auto& b : r.blocks) {
    json border = json::object();
    for (const auto& [arrow, value] : b.border) border[arrow] = to_string(value);
    blocks.push_back({{"presentation", to_json(b.data.to_spec())},
                      {"dimension_vector", b.dims},
                      {"corner_dimension_vector", b.corner_dims},
                      {"border", border},
                      {"relations_vanish", b.relations_vanish},
                      {"generates", b.generates},
                      {"valid", b.valid},
                      {"failures", b.failures}});
  }
  std::cout << dump({{"ok", r.ok()}, {"blocks", blocks}, {"failures", r.failures}, {"rounds", r.correction_rounds}});
  return r.ok() ? kOk : kCheckFailed;
}

int cmd_roundtrip(const Options& opt) {
  const auto r = roundtrip_verify(load(opt.file));
  json doc = {{"ok", r.ok()},
              {"star_valid", r.star_valid},
              {"dims", r.h_dims},
              {"block_dims", r.block_dims},
              {"dimensions_equal", r.dimensions_equal},
              {"relations_map_to_zero", r.relations_map_to_zero},
              {"failures", r.failures}};
  std::ostringstream text;
  text << (r.ok() ? "round trip holds" : "round trip fails") << "\n";
  text << "  H dims:     " << join(r.h_dims) << "\n  block dims: " << join(r.block_dims) << "\n";
  for (const auto& f : r.failures) text << "  " << f << "\n";
  emit(opt, doc, text.str());
  return r.ok() ? kOk : kCheckFailed;
}

json module_json(const FiniteDimAlgebra& h, const RightModule& m) {
  return {{"dims", m.dims}, {"top", top_dimension(h, m)}, {"socle", socle_dimension(h, m)}};
}

int cmd_omega(const Options& opt, const std::string& spec, int steps) {
  const auto h = build_algebra(load(opt.file));
  const auto m = parse_module_spec(h, spec);
  const auto orbit = omega_orbit(h, m, steps);
  json doc = {{"steps", json::array()}, {"exact", orbit.exact}};
  doc["period"] = orbit.period ? json(*orbit.period) : json(nullptr);
  std::ostringstream text;
  for (size_t k = 0; k < orbit.steps.size(); ++k) {
    doc["steps"].push_back(module_json(h, orbit.steps[k]));
    text << "  Omega^" << k << ": dims " << join(orbit.steps[k].dims) << "\n";
  }
  text << (orbit.period ? "period " + std::to_string(*orbit.period) : "no period within " + std::to_string(steps))
       << (orbit.exact ? "" : " (sampled)") << "\n";
  emit(opt, doc, text.str());
  return orbit.period ? kOk : kCheckFailed;
}

int cmd_detect(const Options& opt, int component, const std::string& x_text) {
  const auto d = load(opt.file);
  const auto h = build_algebra(d);
  const auto comps = separated_components(d.quiver());
  if (component < 1 || component > static_cast<int>(comps.size())) {
    throw UsageError("component must lie in 1.." + std::to_string(comps.size()));
  }
  Rational x;
  try {
    x = parse_rational(x_text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (x == 0) throw UsageError("x must be nonzero");
  const auto& c = comps[static_cast<size_t>(component - 1)];
  const bool regular = gabriel_quiver_is_two_regular(d, h);
  RightModule s, t;
  bool products_vanish = false;
  if (c.rank() == 1) {
    const auto det = build_cyclic_detector(d, h, c.alpha[0], 1, 1, x);
    products_vanish = det.products_vanish;
    s = cyclic_module(h, det.p.source, det.theta);
    t = cyclic_module(h, det.p.target, det.psi);
  } else {
    const auto pair = build_detecting_pair(d, h, c, x);
    products_vanish = pair.st_zero && pair.ts_zero;
    s = s_module(h, pair);
    t = t_module(h, pair);
  }
  const bool s_to_t = iso_test(h, omega(h, s), t).isomorphic;
  const bool t_to_s = iso_test(h, omega(h, t), s).isomorphic;
  const bool ok = products_vanish && s_to_t && t_to_s;
  json doc = {{"rank", c.rank()},
              {"gabriel_two_regular", regular},
              {"products_vanish", products_vanish},
              {"omega_s_is_t", s_to_t},
              {"omega_t_is_s", t_to_s},
              {"s", module_json(h, s)},
              {"t", module_json(h, t)}};
  std::ostringstream text;
  text << "component " << component << " of " << comps.size() << ", rank " << c.rank() << ", x = " << to_string(x)
       << "\n  ST = 0 = TS: " << (products_vanish ? "yes" : "no") << "\n  Omega(SH) = TH: " << (s_to_t ? "yes" : "no")
       << "\n  Omega(TH) = SH: " << (t_to_s ? "yes" : "no") << "\n";
  if (!regular) text << "  note: the Gabriel quiver is not 2-regular\n";
  emit(opt, doc, text.str());
  return ok ? kOk : kCheckFailed;
}

int cmd_middle(const Options& opt, const std::string& vertex) {
  const auto h = build_algebra(load(opt.file));
  const auto m = middle_module(h, vertex_of(h.quiver(), vertex));
  const bool indecomposable = m.dim() > 0 && is_indecomposable(h, m);
  const auto orbit = omega_orbit(h, m, 12);
  json doc = module_json(h, m);
  doc["indecomposable"] = indecomposable;
  doc["period"] = orbit.period ? json(*orbit.period) : json(nullptr);
  std::ostringstream text;
  text << "rad(P)/soc(P) at " << vertex << ": dims " << join(m.dims) << ", "
       << (indecomposable ? "indecomposable" : "decomposable") << ", "
       << (orbit.period ? "period " + std::to_string(*orbit.period) : "no period within 12") << "\n";
  emit(opt, doc, text.str());
  return kOk;
}

int cmd_stablehom(const Options& opt, const std::string& from, const std::string& to) {
  const auto h = build_algebra(load(opt.file));
  const auto w = parse_module_spec(h, from);
  const auto m = parse_module_spec(h, to);
  const int stable = stable_hom_dim(h, w, m);
  const int all = hom_dim(h, w, m);
  emit(opt, {{"hom", all}, {"stable_hom", stable}},
       "dim Hom = " + std::to_string(all) + ", dim stable Hom = " + std::to_string(stable) + "\n");
  return kOk;
}

int cmd_corpus(const Options& opt, const std::string& dir) {
  const auto report = run_corpus(dir);
  emit(opt, report.to_json(), report.table());
  if (!report.pass() && opt.as_json) {
    for (const auto& name : report.failing_entries()) std::cerr << "failing entry: " << name << "\n";
  }
  return report.pass() ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hybrid algebra workbench"};
  app.require_subcommand(1);
  Options opt;
  app.add_flag("--json", opt.as_json, "machine-readable output");

  auto with_file = [&](CLI::App* sub) {
    sub->add_option("file", opt.file, "presentation file")->required();
    return sub;
  };
  auto* validate_cmd = with_file(app.add_subcommand("validate", "structural and algebraic validation"));
  bool relations = false;
  auto* describe_cmd = with_file(app.add_subcommand("describe", "orbits, arrow kinds and vertex kinds"));
  describe_cmd->add_flag("--relations", relations, "list the generating relations");
  auto* basis_cmd = with_file(app.add_subcommand("basis", "path basis per vertex"));
  auto* cartan_cmd = with_file(app.add_subcommand("cartan", "Cartan matrix"));
  auto* blocks_cmd = with_file(app.add_subcommand("blocks", "block decomposition"));
  auto* symmetric_cmd = with_file(app.add_subcommand("symmetric-check", "search for a symmetrizing form"));
  auto* star_cmd = with_file(app.add_subcommand("star", "triangulation quiver presentation"));
  std::string keep;
  auto* idempotent_cmd = with_file(app.add_subcommand("idempotent", "contract to the kept vertices"));
  idempotent_cmd->add_option("--keep", keep, "comma-separated vertex names")->required();
  auto* roundtrip_cmd = with_file(app.add_subcommand("roundtrip", "star then contract back"));
  std::string module_spec;
  int steps = 12;
  auto* omega_cmd = with_file(app.add_subcommand("omega", "syzygy orbit of a module"));
  omega_cmd->add_option("--module", module_spec, "simple:V, projective:V, arrow:NAME, middle:V or cyclic:EXPR")
      ->required();
  omega_cmd->add_option("--steps", steps, "search bound")->check(CLI::PositiveNumber);
  int component = 1;
  std::string x_text = "1";
  auto* detect_cmd = with_file(app.add_subcommand("detect", "detector modules of a separated component"));
  detect_cmd->add_option("--component", component, "1-based component index");
  detect_cmd->add_option("--x", x_text, "nonzero rational parameter");
  std::string vertex;
  auto* middle_cmd = with_file(app.add_subcommand("middle", "rad(P)/soc(P) at a vertex"));
  middle_cmd->add_option("--vertex", vertex, "vertex name")->required();
  std::string from, to;
  auto* stablehom_cmd = with_file(app.add_subcommand("stablehom", "stable Hom dimension"));
  stablehom_cmd->add_option("--from", from, "module spec of the source")->required();
  stablehom_cmd->add_option("--to", to, "module spec of the target")->required();
  auto* corpus_cmd = app.add_subcommand("corpus", "bundled corpus");
  corpus_cmd->require_subcommand(1);
  std::string dir = "corpus";
  auto* corpus_run = corpus_cmd->add_subcommand("run", "check every entry against its expected results");
  corpus_run->add_option("dir", dir, "corpus directory");

  for (auto* sub : app.get_subcommands({})) sub->add_flag("--json", opt.as_json, "machine-readable output");
  corpus_run->add_flag("--json", opt.as_json, "machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*validate_cmd) return cmd_validate(opt);
    if (*describe_cmd) return cmd_describe(opt, relations);
    if (*basis_cmd) return cmd_basis(opt);
    if (*cartan_cmd) return cmd_cartan(opt);
    if (*blocks_cmd) return cmd_blocks(opt);
    if (*symmetric_cmd) return cmd_symmetric(opt);
    if (*star_cmd) return cmd_star(opt);
    if (*idempotent_cmd) return cmd_idempotent(opt, keep);
    if (*roundtrip_cmd) return cmd_roundtrip(opt);
    if (*omega_cmd) return cmd_omega(opt, module_spec, steps);
    if (*detect_cmd) return cmd_detect(opt, component, x_text);
    if (*middle_cmd) return cmd_middle(opt, vertex);
    if (*stablehom_cmd) return cmd_stablehom(opt, from, to);
    if (*corpus_run) return cmd_corpus(opt, dir);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const InvalidPresentation& e) {
    std::cerr << "invalid presentation:\n";
    for (const auto& v : e.violations()) std::cerr << "  [" << v.rule << "] " << v.message << "\n";
    return kCheckFailed;
  } catch (const CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return kCapExceeded;
  } catch (const UsageError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  }
  return kOk;
}
