#include "io.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>

using namespace toricell;
using io::json;

namespace {

struct Settings {
  std::string input;
  std::string output;
  int bound = -1;
  int jobs = 1;
  bool dot = false;
  bool mckay = false;
  bool verify_exactness = false;
  bool all_degrees = false;
  std::string csv;
  std::string svg;
  int arrow = 0;
};

void emit(const Settings &s, const std::string &text) {
  if (s.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(s.output);
  if (!out)
    throw InvalidInput("cannot write " + s.output);
  out << text;
}

void emit(const Settings &s, const json &j) { emit(s, j.dump(2) + "\n"); }

void write_file(const std::string &path, const std::string &text) {
  std::ofstream out(path);
  if (!out)
    throw InvalidInput("cannot write " + path);
  out << text;
}

int bound_of(const Settings &s, const io::Model &m, int fallback) {
  if (s.bound >= 0)
    return s.bound;
  return m.doc.options.bound.value_or(fallback);
}

superpotential::Superpotential superpotential_of(const io::Model &m) {
  if (m.X)
    return superpotential::anticanonical_cycles(*m.X, m.Q);
  return superpotential::anticanonical_cycles(m.Q);
}

cells::ToricCellComplex complex_of(const Settings &s, const io::Model &m) {
  if (s.mckay) {
    if (!m.is_quotient())
      throw InvalidInput("--mckay needs a cyclic_quotient or abelian_quotient input");
    return cells::mckay_complex(m.doc.group);
  }
  auto W = superpotential_of(m);
  auto rels = superpotential::relations(m.Q, W);
  return cells::general_complex(m.Q, W, rels, m.n);
}

int cmd_quiver(const Settings &s, const io::Model &m) {
  if (s.dot)
    emit(s, quiver::to_dot(m.Q));
  else
    emit(s, io::quiver_json(m));
  return quiver::is_strongly_connected(m.Q) ? 0 : 1;
}

int cmd_superpotential(const Settings &s, const io::Model &m) {
  auto W = superpotential_of(m);
  auto rels = superpotential::relations(m.Q, W);
  auto j = io::superpotential_json(m.Q, W, rels);
  emit(s, j);
  return W.size() > 0 && j["uncovered_arrows"].empty() ? 0 : 1;
}

int cmd_consistency(const Settings &s, const io::Model &m) {
  auto W = superpotential_of(m);
  auto rels = superpotential::relations(m.Q, W);
  auto rep = superpotential::consistency(m.Q, rels, bound_of(s, m, 2), s.jobs);
  emit(s, io::consistency_json(m.Q, rep));
  return rep.consistent ? 0 : 1;
}

int cmd_matchings(const Settings &s, const io::Model &m) {
  auto pi = matchings::build_pi(m.Q);
  auto all = matchings::perfect_matchings(m.Q, pi);
  std::vector<matchings::PerfectMatching> extremal;
  for (std::size_t r = 0; r < m.Q.d; ++r)
    extremal.push_back(matchings::extremal_matching(m.Q, pi, r));
  auto bad_labels = matchings::label_reconstruction_failures(m.Q, extremal);
  bool ok = bad_labels.empty();
  json ext = json::array();
  for (const auto &e : extremal) {
    ok = ok && e.certified;
    json support = json::array();
    for (int a : e.support())
      support.push_back(m.Q.arrow_name(a));
    ext.push_back({{"ray", *e.extremal_ray + 1}, {"values", e.values}, {"support", support}, {"certified", e.certified}});
  }
  json list = json::array();
  for (const auto &pm : all)
    list.push_back(pm.values);
  json out = {{"rank", pi.rank()},
              {"matchings", list},
              {"matching_count", all.size()},
              {"extremal", ext},
              {"label_reconstruction_failures", bad_labels}};
  if (m.X) {
    auto lem = matchings::lemma_2_9_check(m.Q, *m.X);
    out["cycle_hilbert_basis"] = {{"holds", lem.holds}, {"cycles", lem.cycle_basis}, {"cone", lem.cone_basis}};
    ok = ok && lem.holds;
  }
  if (m.n == 3) {
    auto audit = matchings::dimer_matching_audit(m.Q, superpotential_of(m), all);
    out["dimer_audit"] = {{"passed", audit.passed()}, {"non_binary", audit.non_binary}, {"bad_terms", audit.bad_terms}};
  }
  emit(s, out);
  return ok ? 0 : 1;
}

int cmd_complex(const Settings &s, const io::Model &m) {
  auto cx = complex_of(s, m);
  auto tau = cells::compute_tau(cx);
  auto faces = cells::face_poset_check(cx);
  std::optional<cells::IncidenceSolution> inc;
  if (faces.ok())
    inc = cells::solve_incidence(cx);
  auto j = io::complex_json(cx, tau, faces, inc);
  auto data = cells::incidence_data_violations(cx);
  j["incidence_data_violations"] = data;
  emit(s, j);
  return tau.ok() && faces.ok() && inc && inc->feasible() && data.empty() ? 0 : 1;
}

int cmd_resolution(const Settings &s, const io::Model &m) {
  auto cx = complex_of(s, m);
  std::vector<int> eps;
  json out;
  if (cx.explicit_signs) {
    eps = *cx.explicit_signs;
    out["signs"] = "closed form";
  } else {
    auto faces = cells::face_poset_check(cx);
    if (!faces.ok()) {
      emit(s, json{{"error", "face poset condition fails"}, {"violations", faces.violations.size()}});
      return 1;
    }
    auto inc = cells::solve_incidence(cx);
    if (!inc.feasible()) {
      emit(s, json{{"error", "no incidence function exists"}, {"certificate_flags", inc.certificate.size()}});
      return 1;
    }
    eps = *inc.signs;
    out["signs"] = "solved";
  }
  auto res = resolution::build_resolution(cx, eps);
  auto sz = resolution::verify_square_zero(res);
  auto mn = resolution::verify_minimality(res);
  out["generators"] = res.ranks();
  out["square_zero"] = {{"ok", sz.ok()}, {"checked", sz.checked}, {"problems", sz.problems}};
  out["minimal"] = {{"ok", mn.ok()}, {"violations", mn.violations.size()}};
  bool ok = sz.ok() && mn.ok();
  if (s.verify_exactness) {
    auto ex = resolution::verify_exactness(res, bound_of(s, m, 1), s.jobs);
    out["exactness"] = io::exactness_json(ex, s.all_degrees);
    if (!s.csv.empty())
      write_file(s.csv, io::exactness_csv(ex));
    ok = ok && ex.exact() && ex.euler;
  }
  emit(s, out);
  return ok ? 0 : 1;
}

int cmd_reconstruct(const Settings &s, const io::Model &m) {
  if (!m.X)
    throw InvalidInput("reconstruct needs the rays of the variety");
  auto P = reconstruct::projection_maps(*m.X, m.doc.options.m_basis);
  auto T = reconstruct::embed_tiling(m.Q, superpotential_of(m), P);
  auto rep = reconstruct::verify_tiling(T);
  emit(s, io::tiling_json(m.Q, P, T, rep));
  if (!s.svg.empty())
    write_file(s.svg, reconstruct::to_svg(T));
  return rep.ok() ? 0 : 1;
}

int cmd_signcheck(const Settings &s, const io::Model &m) {
  if (s.arrow < 1 || s.arrow > static_cast<int>(m.Q.arrows.size()))
    throw InvalidInput("--arrow must be between 1 and the number of arrows");
  auto W = superpotential_of(m);
  auto rels = superpotential::relations(m.Q, W);
  auto rep = cells::sign_infeasibility(m.Q, W, rels, s.arrow - 1);
  emit(s, io::signcheck_json(m.Q, rep));
  return rep.two_colourable ? 0 : 1;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"toricell: noncommutative toric algebras, cell complexes and bimodule resolutions"};
  app.require_subcommand(1);
  Settings s;
  auto common = [&](CLI::App *c) {
    c->add_option("input", s.input, "input JSON document")->required();
    c->add_option("-o,--output", s.output, "write the report here instead of stdout");
  };
  auto *quiver_cmd = app.add_subcommand("quiver", "quiver of sections");
  common(quiver_cmd);
  quiver_cmd->add_flag("--dot", s.dot, "emit Graphviz DOT");
  auto *sp_cmd = app.add_subcommand("superpotential", "superpotential and its relations");
  common(sp_cmd);
  auto *cons_cmd = app.add_subcommand("consistency", "bounded consistency verdict");
  common(cons_cmd);
  cons_cmd->add_option("--bound", s.bound, "divisor bound k, paths with divisor <= k(1,...,1)");
  cons_cmd->add_option("--jobs", s.jobs, "worker threads");
  auto *pm_cmd = app.add_subcommand("matchings", "perfect matchings");
  common(pm_cmd);
  auto *cx_cmd = app.add_subcommand("complex", "toric cell complex");
  common(cx_cmd);
  cx_cmd->add_flag("--mckay", s.mckay, "use the McKay construction for quotient inputs");
  auto *res_cmd = app.add_subcommand("resolution", "cellular bimodule resolution");
  common(res_cmd);
  res_cmd->add_flag("--mckay", s.mckay, "use the McKay construction for quotient inputs");
  res_cmd->add_flag("--verify-exactness", s.verify_exactness, "check exactness in every graded piece up to the bound");
  res_cmd->add_option("--bound", s.bound, "degree bound k, pieces with degree <= k(1,...,1)");
  res_cmd->add_option("--jobs", s.jobs, "worker threads");
  res_cmd->add_flag("--all-degrees", s.all_degrees, "list every graded piece in the report");
  res_cmd->add_option("--csv", s.csv, "write a per-degree CSV summary");
  auto *rec_cmd = app.add_subcommand("reconstruct", "two-torus tiling of a threefold");
  common(rec_cmd);
  rec_cmd->add_option("--svg", s.svg, "write an SVG of one fundamental domain");
  auto *sc_cmd = app.add_subcommand("signcheck", "parity obstruction for an arrow");
  common(sc_cmd);
  sc_cmd->add_option("--arrow", s.arrow, "arrow number, 1-based")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    auto model = io::build_model(io::load_input(s.input));
    if (*quiver_cmd)
      return cmd_quiver(s, model);
    if (*sp_cmd)
      return cmd_superpotential(s, model);
    if (*cons_cmd)
      return cmd_consistency(s, model);
    if (*pm_cmd)
      return cmd_matchings(s, model);
    if (*cx_cmd)
      return cmd_complex(s, model);
    if (*res_cmd)
      return cmd_resolution(s, model);
    if (*rec_cmd)
      return cmd_reconstruct(s, model);
    if (*sc_cmd)
      return cmd_signcheck(s, model);
  } catch (const InvalidInput &e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument &e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
