#include "io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace toricell::io {

namespace {

void require_keys(const json &obj, const std::set<std::string> &required, const std::set<std::string> &optional,
                  const std::string &where) {
  if (!obj.is_object())
    throw InvalidInput(where + " must be an object");
  for (const auto &key : required)
    if (!obj.contains(key))
      throw InvalidInput(where + " is missing \"" + key + "\"");
  for (const auto &[key, value] : obj.items())
    if (!required.count(key) && !optional.count(key))
      throw InvalidInput(where + " has unexpected field \"" + key + "\"");
}

std::vector<long> long_vector(const json &v, const std::string &what) {
  if (!v.is_array())
    throw InvalidInput(what + " must be an array of integers");
  std::vector<long> out;
  for (const auto &x : v) {
    if (!x.is_number_integer())
      throw InvalidInput(what + " must contain integers");
    out.push_back(x.get<long>());
  }
  return out;
}

std::vector<std::vector<long>> long_matrix(const json &v, const std::string &what) {
  if (!v.is_array() || v.empty())
    throw InvalidInput(what + " must be a nonempty array of integer vectors");
  std::vector<std::vector<long>> out;
  for (const auto &row : v)
    out.push_back(long_vector(row, what));
  for (const auto &row : out)
    if (row.size() != out.front().size())
      throw InvalidInput(what + " rows have different lengths");
  return out;
}

toric::GroupGenerator generator(const json &g, std::size_t n) {
  require_keys(g, {"order", "weights"}, {}, "group generator");
  toric::GroupGenerator out;
  if (!g["order"].is_number_integer() || g["order"].get<long>() < 1)
    throw InvalidInput("group order must be a positive integer");
  out.order = g["order"].get<long>();
  out.weights = long_vector(g["weights"], "weights");
  if (n != 0 && out.weights.size() != n)
    throw InvalidInput("weights must have length n");
  return out;
}

Options parse_options(const json &o) {
  require_keys(o, {}, {"bound", "arrow_order", "m_basis"}, "options");
  Options out;
  if (o.contains("bound")) {
    if (!o["bound"].is_number_integer() || o["bound"].get<int>() < 0)
      throw InvalidInput("options.bound must be a nonnegative integer");
    out.bound = o["bound"].get<int>();
  }
  if (o.contains("arrow_order")) {
    std::vector<int> order;
    for (long x : long_vector(o["arrow_order"], "arrow_order"))
      order.push_back(static_cast<int>(x));
    out.arrow_order = order;
  }
  if (o.contains("m_basis"))
    out.m_basis = long_matrix(o["m_basis"], "m_basis");
  return out;
}

} // namespace

InputDocument parse_input(const json &doc) {
  if (!doc.is_object() || !doc.contains("kind") || !doc["kind"].is_string())
    throw InvalidInput("input must be an object with a string \"kind\"");
  const std::string kind = doc["kind"];
  InputDocument out;
  if (kind == "toric") {
    require_keys(doc, {"kind", "rays", "collection"}, {"options"}, "toric input");
    out.kind = InputKind::Toric;
    out.rays = long_matrix(doc["rays"], "rays");
    out.collection = long_matrix(doc["collection"], "collection");
  } else if (kind == "cyclic_quotient") {
    require_keys(doc, {"kind", "order", "weights"}, {"options"}, "cyclic_quotient input");
    out.kind = InputKind::CyclicQuotient;
    out.group.generators.push_back(generator({{"order", doc["order"]}, {"weights", doc["weights"]}}, 0));
    out.group.n = out.group.generators.front().weights.size();
  } else if (kind == "abelian_quotient") {
    require_keys(doc, {"kind", "n", "generators"}, {"options"}, "abelian_quotient input");
    out.kind = InputKind::AbelianQuotient;
    if (!doc["n"].is_number_integer() || doc["n"].get<long>() < 1)
      throw InvalidInput("n must be a positive integer");
    out.group.n = doc["n"].get<std::size_t>();
    if (!doc["generators"].is_array())
      throw InvalidInput("generators must be an array");
    for (const auto &g : doc["generators"])
      out.group.generators.push_back(generator(g, out.group.n));
  } else if (kind == "dimer_quiver") {
    require_keys(doc, {"kind", "vertices", "d", "arrows"}, {"rays", "n", "options"}, "dimer_quiver input");
    out.kind = InputKind::DimerQuiver;
    if (!doc["vertices"].is_number_integer() || doc["vertices"].get<long>() < 1)
      throw InvalidInput("vertices must be a positive integer");
    if (!doc["d"].is_number_integer() || doc["d"].get<long>() < 1)
      throw InvalidInput("d must be a positive integer");
    const int V = doc["vertices"].get<int>();
    const std::size_t d = doc["d"].get<std::size_t>();
    if (!doc["arrows"].is_array() || doc["arrows"].empty())
      throw InvalidInput("arrows must be a nonempty array");
    std::vector<quiver::Arrow> arrows;
    for (const auto &a : doc["arrows"]) {
      require_keys(a, {"tail", "head", "label"}, {"name", "monomial"}, "arrow");
      quiver::Arrow arrow;
      if (!a["tail"].is_number_integer() || !a["head"].is_number_integer())
        throw InvalidInput("arrow endpoints must be integers");
      arrow.tail = a["tail"].get<int>();
      arrow.head = a["head"].get<int>();
      for (long x : long_vector(a["label"], "label"))
        arrow.label.push_back(static_cast<int>(x));
      arrows.push_back(std::move(arrow));
    }
    out.quiver = quiver::make_quiver(V, d, std::move(arrows));
    if (doc.contains("rays")) {
      out.rays = long_matrix(doc["rays"], "rays");
      if (out.rays.size() != d)
        throw InvalidInput("number of rays must equal d");
    }
    if (doc.contains("n")) {
      if (!doc["n"].is_number_integer() || doc["n"].get<long>() < 1)
        throw InvalidInput("n must be a positive integer");
      out.n = doc["n"].get<std::size_t>();
    }
  } else {
    throw InvalidInput("unknown input kind \"" + kind + "\"");
  }
  if (doc.contains("options"))
    out.options = parse_options(doc["options"]);
  return out;
}

InputDocument load_input(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw InvalidInput("cannot open " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error &e) {
    throw InvalidInput(path + ": " + e.what());
  }
  return parse_input(doc);
}

Model build_model(const InputDocument &doc) {
  Model m;
  m.doc = doc;
  switch (doc.kind) {
  case InputKind::Toric: {
    m.X = toric::build_variety(doc.rays);
    auto E = toric::make_collection(*m.X, doc.collection);
    m.Q = quiver::build_quiver(*m.X, E);
    m.n = m.X->n;
    break;
  }
  case InputKind::CyclicQuotient:
  case InputKind::AbelianQuotient:
    m.mckay = toric::mckay_toric_data(doc.group);
    m.X = m.mckay->X;
    m.Q = cells::mckay_quiver(*m.mckay);
    m.n = doc.group.n;
    break;
  case InputKind::DimerQuiver:
    m.Q = *doc.quiver;
    if (!doc.rays.empty()) {
      m.X = toric::build_variety(doc.rays);
      m.n = m.X->n;
    }
    if (doc.n) {
      if (m.X && *doc.n != m.n)
        throw InvalidInput("n disagrees with the dimension of the rays");
      m.n = *doc.n;
    }
    if (m.n == 0)
      m.n = 3;
    break;
  }
  if (doc.options.arrow_order) {
    std::vector<int> order;
    for (int a : *doc.options.arrow_order)
      order.push_back(a - 1);
    m.Q = quiver::reorder_arrows(m.Q, order);
  }
  return m;
}

json divisor_json(const quiver::Divisor &d) { return {{"exponents", d}, {"monomial", quiver::monomial(d)}}; }

json path_json(const quiver::QuiverOfSections &Q, const quiver::Path &p) {
  json arrows = json::array();
  for (int a : p.arrows)
    arrows.push_back(Q.arrow_name(a));
  return {{"path", quiver::path_string(Q, p)},
          {"arrows", arrows},
          {"tail", p.tail},
          {"head", p.head},
          {"divisor", divisor_json(p.divisor)}};
}

json rational_json(const lattice::Rational &q) {
  return json::array({q.get_num().get_str(), q.get_den().get_str()});
}

json quiver_json(const Model &m) {
  const auto &Q = m.Q;
  json arrows = json::array();
  for (const auto &a : Q.arrows)
    arrows.push_back({{"name", Q.arrow_name(a.id)},
                      {"tail", a.tail},
                      {"head", a.head},
                      {"label", a.label},
                      {"monomial", quiver::monomial(a.label)}});
  json out = {{"kind", "dimer_quiver"}, {"vertices", Q.vertex_count}, {"d", Q.d}, {"n", m.n}, {"arrows", arrows}};
  if (m.X)
    out["rays"] = m.X->rays;
  return out;
}

json superpotential_json(const quiver::QuiverOfSections &Q, const superpotential::Superpotential &W,
                         const superpotential::RelationSet &rels) {
  json terms = json::array();
  for (const auto &t : W.terms)
    terms.push_back(path_json(Q, quiver::make_path(Q, Q.arrows[t.arrows.front()].tail, t.arrows))["path"]);
  json gens = json::array();
  for (const auto &r : rels.generators) {
    json wit = json::array();
    for (const auto &q : r.witnesses)
      wit.push_back(quiver::path_string(Q, q));
    gens.push_back({{"relation", quiver::path_string(Q, r.plus) + " - " + quiver::path_string(Q, r.minus)},
                    {"plus", path_json(Q, r.plus)},
                    {"minus", path_json(Q, r.minus)},
                    {"from", wit}});
  }
  json uncovered = json::array();
  for (int a : superpotential::arrow_coverage(Q, W))
    uncovered.push_back(Q.arrow_name(a));
  return {{"terms", terms},
          {"term_count", W.size()},
          {"relations", gens},
          {"relation_count", rels.generators.size()},
          {"uncovered_arrows", uncovered}};
}

json consistency_json(const quiver::QuiverOfSections &Q, const superpotential::ConsistencyReport &r) {
  json quick = json::array();
  for (int a : r.quick_reject)
    quick.push_back({{"arrow", Q.arrow_name(a)}, {"label", divisor_json(Q.arrows[a].label)}});
  json out = {{"verdict", r.consistent ? "consistent up to bound" : "inconsistent"},
              {"consistent", r.consistent},
              {"bound", r.bound},
              {"buckets", r.buckets},
              {"paths", r.paths},
              {"quick_reject", quick}};
  if (r.witness)
    out["witness"] = {path_json(Q, r.witness->first), path_json(Q, r.witness->second)};
  return out;
}

json complex_json(const cells::ToricCellComplex &cx, const cells::TauReport &tau, const cells::FaceReport &faces,
                  const std::optional<cells::IncidenceSolution> &incidence) {
  json cells = json::array();
  for (const auto &c : cx.cells) {
    json facets = json::array();
    for (int i : cx.facets_of[c.id]) {
      const auto &f = cx.incidences[i];
      facets.push_back({{"facet", f.facet}, {"left", divisor_json(f.left)}, {"right", divisor_json(f.right)}});
    }
    cells.push_back({{"id", c.id},
                     {"dim", c.dim},
                     {"name", cx.describe(c.id)},
                     {"tail", c.tail},
                     {"head", c.head},
                     {"divisor", divisor_json(c.divisor)},
                     {"tau", tau.tau.empty() ? -1 : tau.tau[c.id]},
                     {"facets", facets}});
  }
  json out = {{"counts", cx.counts()},
              {"cells", cells},
              {"tau", {{"involution", tau.involution}, {"antisymmetric", tau.antisymmetric}, {"problems", tau.problems}}},
              {"face_poset", {{"flags", faces.flags}, {"violations", faces.violations.size()}}}};
  if (incidence) {
    out["incidence"] = {{"feasible", incidence->feasible()}};
    if (incidence->signs)
      out["incidence"]["signs"] = *incidence->signs;
    else
      out["incidence"]["certificate_flags"] = incidence->certificate.size();
  }
  return out;
}

json exactness_json(const resolution::ExactnessReport &r, bool all_degrees) {
  json degrees = json::array();
  for (const auto &d : r.degrees) {
    bool empty = std::all_of(d.dims.begin(), d.dims.end(), [](std::size_t x) { return x == 0; });
    if (!all_degrees && (empty || d.exact))
      continue;
    degrees.push_back({{"s", d.s},
                       {"t", d.t},
                       {"degree", divisor_json(d.degree)},
                       {"dims", d.dims},
                       {"ranks", d.ranks},
                       {"algebra_dim", d.algebra_dim},
                       {"square_zero", d.square_zero},
                       {"exact", d.exact}});
  }
  return {{"bound", r.bound},
          {"exact", r.exact()},
          {"pieces", r.degrees.size()},
          {"nonzero_pieces", r.nonzero_degrees()},
          {"failures", r.failures},
          {"square_zero", r.square_zero},
          {"euler", r.euler},
          {"degrees", degrees}};
}

std::string exactness_csv(const resolution::ExactnessReport &r) {
  std::ostringstream out;
  out << "s,t,degree,dims,ranks,algebra_dim,exact\n";
  for (const auto &d : r.degrees) {
    auto join = [](const auto &v) {
      std::string s;
      for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? " " : "") + std::to_string(v[i]);
      return s;
    };
    out << d.s << "," << d.t << "," << join(d.degree) << "," << join(d.dims) << "," << join(d.ranks) << ","
        << d.algebra_dim << "," << (d.exact ? 1 : 0) << "\n";
  }
  return out.str();
}

json tiling_json(const quiver::QuiverOfSections &Q, const reconstruct::ProjectionData &P,
                 const reconstruct::Tiling &T, const reconstruct::TilingReport &r) {
  auto point = [](const reconstruct::Point &p) { return json::array({rational_json(p[0]), rational_json(p[1])}); };
  json f_prime = json::array();
  for (const auto &row : P.f_prime) {
    json jr = json::array();
    for (const auto &x : row)
      jr.push_back(rational_json(x));
    f_prime.push_back(jr);
  }
  json vertices = json::array();
  for (const auto &v : T.vertices)
    vertices.push_back(point(v));
  json edges = json::array();
  for (const auto &e : T.edges)
    edges.push_back({{"arrow", Q.arrow_name(e.arrow)}, {"tail", e.tail}, {"head", e.head}, {"vector", point(e.vector)}});
  json faces = json::array();
  for (const auto &F : T.faces) {
    json corners = json::array();
    for (const auto &c : F.corners)
      corners.push_back(point(c));
    json arrows = json::array();
    for (int a : F.arrows)
      arrows.push_back(Q.arrow_name(a));
    faces.push_back({{"arrows", arrows},
                     {"corners", corners},
                     {"orientation", F.orientation},
                     {"area", rational_json(F.signed_area)}});
  }
  json crossings = json::array();
  for (const auto &c : r.crossings) {
    json jc = {{"arrows", {Q.arrow_name(c.first), Q.arrow_name(c.second)}}, {"shift", c.shift}};
    if (c.point)
      jc["point"] = point(*c.point);
    else
      jc["overlap"] = true;
    crossings.push_back(jc);
  }
  return {{"m_basis", P.m_basis},
          {"f_prime", f_prime},
          {"cyclic_order", P.cyclic_order},
          {"vertices", vertices},
          {"edges", edges},
          {"faces", faces},
          {"checks",
           {{"ok", r.ok()},
            {"open_faces", r.open_faces},
            {"nonconvex_faces", r.nonconvex_faces},
            {"unbalanced_edges", r.unbalanced_edges},
            {"crossings", crossings},
            {"euler", r.euler},
            {"total_area", rational_json(r.total_area)}}}};
}

json signcheck_json(const quiver::QuiverOfSections &Q, const cells::SignParityReport &r) {
  json terms = json::array();
  for (const auto &p : r.terms)
    terms.push_back(quiver::path_string(Q, p));
  json cycle = json::array();
  for (int v : r.odd_cycle)
    cycle.push_back(quiver::path_string(Q, r.terms[v]));
  return {{"arrow", Q.arrow_name(r.arrow)},
          {"terms", terms},
          {"edges", r.edges},
          {"two_colourable", r.two_colourable},
          {"odd_cycle", cycle}};
}

} // namespace toricell::io
