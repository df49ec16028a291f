#include "fixtures.hpp"
#include "oracles.hpp"

#include "toricell/reconstruct.hpp"
#include "toricell/resolution.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

using namespace toricell;
using lattice::Rational;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream detail;
  std::set<std::string> failed;

  void require(bool cond, const std::string &what) {
    if (!cond) {
      ok = false;
      failed.insert(what);
    }
  }
};

struct Criterion {
  int id;
  std::string title;
  double limit_seconds;
  std::function<void(Outcome &)> body;
};

std::string counts_string(const std::vector<std::size_t> &c) {
  std::string s = "(";
  for (std::size_t i = 0; i < c.size(); ++i)
    s += (i ? "," : "") + std::to_string(c[i]);
  return s + ")";
}

int cell_of(const cells::ToricCellComplex &cx, cells::CellKind kind, int index) {
  for (const auto &c : cx.cells)
    if (c.kind == kind && c.index == index)
      return c.id;
  return -1;
}

int relation_cell(const cells::ToricCellComplex &cx, const std::string &a, const std::string &b) {
  for (const auto &c : cx.cells) {
    if (c.kind != cells::CellKind::Relation)
      continue;
    const auto &r = cx.relations[c.index];
    auto p = quiver::path_string(cx.quiver, r.plus), m = quiver::path_string(cx.quiver, r.minus);
    if ((p == a && m == b) || (p == b && m == a))
      return c.id;
  }
  return -1;
}

void four_vertex(Outcome &o) {
  auto t = fixtures::four_vertex();
  o.require(t.Q.vertex_count == 4, "4 vertices");
  o.require(fixtures::arrow_table(t.Q) ==
                std::vector<std::string>{"a1:0>1:x1", "a2:0>1:x3", "a3:0>2:x4", "a4:1>2:x2", "a5:1>3:x4",
                                         "a6:2>3:x1", "a7:2>3:x3", "a8:3>0:x4", "a9:3>0:x1*x2", "a10:3>0:x2*x3"},
            "arrow labels");
  auto rels = superpotential::minimal_relations(t.Q, 2);
  o.require(rels.size() == 10, "10 binomials");
  o.require(fixtures::binomials(t.Q, rels) == fixtures::parse_binomials(fixtures::first_example_relations()),
            "binomials equal the display");
  o.detail << "4 vertices, " << t.Q.arrows.size() << " arrows, " << rels.size() << " minimal relations";
}

void superpotential_examples(Outcome &o) {
  auto i = fixtures::four_vertex();
  auto ri = superpotential::consistency(i.Q, i.rels, 2);
  o.require(i.W.size() == 6, "(i) |W| = 6");
  o.require(ri.consistent, "(i) consistent to bound 2");

  auto ii = fixtures::three_vertex();
  auto rii = superpotential::consistency(ii.Q, ii.rels, 2);
  o.require(!rii.consistent, "(ii) inconsistent");
  bool x4sq = false;
  for (int a : rii.quick_reject)
    x4sq = x4sq || ii.Q.arrows[a].label == quiver::Divisor{0, 0, 0, 2};
  o.require(x4sq, "(ii) quick reject on the x4^2 arrow");
  auto target = quiver::parse_path(ii.Q, "a6a3").path_class();
  bool witness = rii.witness && rii.witness->first.path_class() == target &&
                 rii.witness->second.path_class() == target && !(rii.witness->first == rii.witness->second);
  o.require(witness, "(ii) witness with the data of a6a3");

  auto iii = fixtures::five_vertex();
  auto riii = superpotential::consistency(iii.Q, iii.rels, 2);
  auto ours = fixtures::binomials(iii.Q, iii.rels.generators);
  auto shown = fixtures::parse_binomials(fixtures::five_vertex_display());
  bool superset = std::includes(ours.begin(), ours.end(), shown.begin(), shown.end());
  o.require(iii.W.size() == 8, "(iii) |W| = 8");
  o.require(riii.consistent, "(iii) consistent");
  o.require(superset, "(iii) contains the 7 displayed relations");
  // the 7 displayed relations alone
  auto seven = iii.rels;
  seven.generators.clear();
  for (const auto &g : iii.rels.generators)
    if (shown.count({quiver::path_string(iii.Q, g.plus), quiver::path_string(iii.Q, g.minus)}))
      seven.generators.push_back(g);
  auto r7 = superpotential::consistency(iii.Q, seven, 2);
  o.require(iii.rels.generators.size() == 7, "(iii) 7 generators");
  o.detail << "(i) |W|=6 consistent; (ii) quick reject x4^2";
  if (witness)
    o.detail << ", witness " << quiver::path_string(ii.Q, rii.witness->first) << " vs "
             << quiver::path_string(ii.Q, rii.witness->second);
  o.detail << "; (iii) |W|=" << iii.W.size() << ", " << iii.rels.generators.size()
           << " generators containing the 7 displayed, consistent; the 7 displayed alone are "
           << (r7.consistent ? "consistent" : "inconsistent");
  if (r7.witness)
    o.detail << " (witness " << quiver::path_string(iii.Q, r7.witness->first) << " vs "
             << quiver::path_string(iii.Q, r7.witness->second) << ")";
}

void perfect_matchings(Outcome &o) {
  auto t = fixtures::four_vertex();
  auto pi = matchings::build_pi(t.Q);
  std::vector<matchings::PerfectMatching> ext;
  for (std::size_t rho = 0; rho < 4; ++rho) {
    auto m = matchings::extremal_matching(t.Q, pi, rho);
    for (long v : m.values)
      o.require(v == 0 || v == 1, "binary values");
    o.require(m.certified, "certified extremal");
    ext.push_back(m);
  }
  o.require(ext[0].support() == std::vector<int>{0, 5, 8}, "supp of the first matching is a1,a6,a9");
  o.require(matchings::label_reconstruction_failures(t.Q, ext).empty(), "label reconstruction");
  auto all = matchings::perfect_matchings(t.Q, pi);
  o.require(matchings::dimer_matching_audit(t.Q, t.W, all).passed(), "dimer audit");
  o.detail << all.size() << " perfect matchings; supp(Pi_1) = {a1,a6,a9}; labels reconstructed for 10 arrows";
}

void cycle_semigroup(Outcome &o) {
  auto a = fixtures::four_vertex();
  auto b = fixtures::conifold();
  auto G = fixtures::z6_123();
  auto data = toric::mckay_toric_data(G);
  auto ra = matchings::lemma_2_9_check(a.Q, a.X);
  auto rb = matchings::lemma_2_9_check(b.Q, b.X);
  auto rc = matchings::lemma_2_9_check(cells::mckay_quiver(data), data.X);
  o.require(ra.holds, "dimer example");
  o.require(rb.holds, "conifold");
  o.require(rc.holds, "Z/6");
  o.detail << "Hilbert basis sizes " << ra.cone_basis.size() << ", " << rb.cone_basis.size() << ", "
           << rc.cone_basis.size();
}

void mckay_z6(Outcome &o) {
  auto G = fixtures::z6_123();
  auto cx = cells::mckay_complex(G);
  o.require(cx.counts() == std::vector<std::size_t>{6, 18, 18, 6}, "counts (6,18,18,6)");
  o.require(cells::compute_tau(cx).ok(), "tau involution");
  o.require(cx.explicit_signs && cells::incidence_violations(cx, *cx.explicit_signs).empty(),
            "closed-form incidence satisfies the parity condition");
  auto cross = resolution::mckay_sign_crosscheck(G);
  o.require(cross.ok(), "sign crosscheck");
  auto res = resolution::build_resolution(cx, *cx.explicit_signs);
  auto sq = resolution::verify_square_zero(res);
  o.require(sq.ok(), "d∘d = 0");
  auto e2 = resolution::verify_exactness(res, 2);
  auto e5 = resolution::verify_exactness(res, 5);
  o.require(e2.exact() && e2.degrees.size() == 27 * 36, "exact for dvec ≤ (2,2,2)");
  o.require(e5.exact() && e5.degrees.size() == 216 * 36, "exact for 216 classes");
  o.detail << "counts " << counts_string(cx.counts()) << "; crosscheck " << cross.entries << " entries; "
           << sq.checked << " compositions; exact on " << e2.degrees.size() << " pieces (dvec ≤ (2,2,2)) and "
           << e5.degrees.size() << " pieces (dvec ≤ (5,5,5), 216 classes × 36 pairs)";
}

void dimer_resolution(Outcome &o) {
  auto t = fixtures::four_vertex();
  auto cx = cells::general_complex(t.Q, t.W, t.rels, 3);
  o.require(cx.counts() == std::vector<std::size_t>{4, 10, 10, 4}, "counts (4,10,10,4)");
  auto sol = cells::solve_incidence(cx);
  o.require(sol.feasible(), "incidence feasible");
  if (!sol.feasible())
    return;
  auto res = resolution::build_resolution(cx, *sol.signs);
  o.require(resolution::verify_square_zero(res).ok(), "d∘d = 0");
  o.require(resolution::verify_minimality(res).ok(), "minimal");
  auto ex = resolution::verify_exactness(res, 2);
  o.require(ex.exact(), "exact for dvec ≤ (2,2,2,2)");
  o.detail << "counts " << counts_string(cx.counts()) << "; exact on " << ex.degrees.size() << " pieces, "
           << ex.nonzero_degrees() << " nonzero";
}

void reconstruction(Outcome &o) {
  auto t = fixtures::four_vertex();
  std::vector<std::vector<long>> identity{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  auto P = reconstruct::projection_maps(t.X, identity);
  std::vector<std::vector<Rational>> want{{Rational(5, 9), Rational(1, 6), Rational(-4, 9), Rational(-5, 18)},
                                          {Rational(1, 9), Rational(1, 3), Rational(1, 9), Rational(-5, 9)}};
  o.require(P.f_prime == want, "f′ matrix");
  auto T = reconstruct::embed_tiling(t.Q, t.W, P);
  auto pt = [](long a, long b, long c, long d) { return reconstruct::Point{Rational(a, b), Rational(c, d)}; };
  o.require(T.vertices.size() == 4 && T.vertices[1] == pt(5, 9, 1, 9) && T.vertices[2] == pt(13, 18, 4, 9) &&
                T.vertices[3] == pt(5, 18, 5, 9),
            "vertex positions");
  auto rep = reconstruct::verify_tiling(T);
  o.require(rep.ok(), "tiling verified");
  o.require(T.vertices.size() == 4 && T.edges.size() == 10 && T.faces.size() == 6 && rep.euler == 0,
            "V − E + F = 4 − 10 + 6");

  auto u = fixtures::five_vertex();
  auto T5 = reconstruct::embed_tiling(u.Q, u.W, reconstruct::projection_maps(u.X, identity));
  auto bad = reconstruct::verify_tiling(T5);
  std::size_t interior = 0, overlaps = 0;
  for (const auto &c : bad.crossings) {
    if (!c.point) {
      ++overlaps;
      continue;
    }
    // a reported point is never a shared endpoint; count the ones inside an edge
    ++interior;
  }
  o.require(!bad.ok() && interior + overlaps > 0, "crossings in the five-vertex tiling");
  o.detail << "f′ exact; u′ = (5/9,1/9), (13/18,4/9), (5/18,5/9); V−E+F = 0; five-vertex tiling reports "
           << bad.crossings.size() << " crossings (" << interior << " through the interior of an edge, " << overlaps
           << " collinear overlaps) with straight segments";
}

void fourfold(Outcome &o) {
  auto t = fixtures::fourfold();
  o.require(t.Q.arrows.size() == 26, "26 arrows");
  o.require(t.W.size() == 36, "|W| = 36");
  o.require(t.rels.generators.size() == 36, "36 generators");
  o.require(fixtures::binomials(t.Q, t.rels.generators) == fixtures::parse_binomials(fixtures::fourfold_display()),
            "generators equal the display");
  auto cons = superpotential::consistency(t.Q, t.rels, 2);
  o.require(cons.consistent, "consistent to bound 2");
  auto cx = cells::general_complex(t.Q, t.W, t.rels, 4);
  o.require(cx.counts() == std::vector<std::size_t>{8, 26, 36, 26, 8}, "counts (8,26,36,26,8)");
  auto tau = cells::compute_tau(cx);
  o.require(tau.ok(), "tau involution");
  int r = relation_cell(cx, "a14a4", "a9a2"), s = relation_cell(cx, "a23a21a18", "a25a19");
  o.require(r >= 0 && s >= 0 && tau.tau[r] == s, "tau pairs a14a4−a9a2 with a23a21a18−a25a19");
  int eta = cell_of(cx, cells::CellKind::DualArrow, 22);
  o.require(eta >= 0 && cx.facets_of[eta].size() == 7, "eta_23 has 7 facets");
  auto sol = cells::solve_incidence(cx);
  o.require(sol.feasible(), "incidence feasible");
  auto parity = cells::sign_infeasibility(t.Q, t.W, t.rels, 22);
  o.require(!parity.two_colourable && parity.odd_cycle.size() == 7, "odd 7-cycle for a23");
  if (!sol.feasible())
    return;
  auto res = resolution::build_resolution(cx, *sol.signs);
  auto sq = resolution::verify_square_zero(res);
  o.require(sq.ok(), "d∘d = 0");
  auto ex = resolution::verify_exactness(res, 1);
  o.require(ex.exact(), "exact for dvec ≤ 1");
  auto ex2 = resolution::verify_exactness(res, 2);
  o.require(ex2.exact(), "exact for dvec ≤ 2");
  o.detail << "26 arrows, |W|=36, 36 generators equal to the display"
           << " (a12a4a23 taken in place of its rotation a4a23a12); "
           << "consistent over " << cons.buckets << " buckets; counts " << counts_string(cx.counts()) << "; "
           << sq.checked << " compositions; exact on " << ex.degrees.size() << " pieces (dvec ≤ 1) and "
           << ex2.degrees.size() << " pieces (dvec ≤ 2)";
}

void property_suites(Outcome &o) {
  std::vector<cells::ToricCellComplex> complexes;
  for (auto t : {fixtures::four_vertex(), fixtures::conifold(), fixtures::affine3(), fixtures::fourfold()})
    complexes.push_back(cells::general_complex(t.Q, t.W, t.rels, t.X.n));
  for (auto G : std::vector<toric::AbelianGroupData>{
           fixtures::z6_123(), {2, {{2, {1, 1}}}}, {3, {}}, {3, {{2, {1, 1, 0}}, {2, {0, 1, 1}}}}})
    complexes.push_back(cells::mckay_complex(G));
  std::size_t incidences = 0;
  for (const auto &cx : complexes)
    for (const auto &f : cx.incidences) {
      ++incidences;
      o.require(quiver::add(quiver::add(f.left, cx.cells[f.facet].divisor), f.right) == cx.cells[f.parent].divisor,
                "divisor additivity");
    }

  std::vector<fixtures::Toric> all{fixtures::four_vertex(),     fixtures::three_vertex(), fixtures::five_vertex(),
                                   fixtures::conifold(),        fixtures::affine3(),        fixtures::fourfold()};
  std::size_t generators = 0;
  for (const auto &t : all)
    for (const auto &g : t.rels.generators) {
      ++generators;
      o.require(g.plus.path_class() == g.minus.path_class(), "J_W inside J_E");
    }

  std::mt19937 rng(99);
  std::size_t steps_total = 0;
  for (const auto &t : all) {
    superpotential::RewriteSystem rs(t.Q, superpotential::as_binomials(t.rels.generators));
    std::vector<std::vector<int>> starts;
    for (const auto &b : superpotential::path_buckets(t.Q, 2))
      for (const auto &p : b.paths)
        if (p.size() >= 2)
          starts.push_back(p);
    std::size_t steps = 0, stalls = 0;
    while (steps < 10000 && stalls < 100000) {
      auto cur = starts[rng() % starts.size()];
      auto start = quiver::make_path(t.Q, t.Q.arrows[cur.front()].tail, cur);
      for (int k = 0; k < 20 && steps < 10000; ++k) {
        auto next = rs.neighbours(cur);
        if (next.empty()) {
          ++stalls;
          break;
        }
        cur = next[rng() % next.size()];
        o.require(quiver::make_path(t.Q, start.tail, cur).path_class() == start.path_class(), "rewriting");
        ++steps;
      }
    }
    steps_total += steps;
  }

  std::mt19937 cone_rng(2024);
  int cones = 0;
  for (std::size_t k = 2; cones < 50; k = k == 5 ? 2 : k + 1) {
    auto gens = oracles::random_cone(cone_rng, k, 3, 3);
    auto facets = oracles::brute_force_dual(gens, k);
    auto d = lattice::dual_cone_rays(gens, k);
    o.require(oracles::as_set(d.rays) == facets, "dual cone rays");
    auto dd = lattice::dual_cone_rays(d.rays, k);
    o.require(oracles::as_set(dd.rays) == oracles::extremal_generators(gens, facets, k), "double dual");
    ++cones;
  }

  std::mt19937 hb_rng(77);
  int compared = 0;
  for (int trial = 0; trial < 400 && compared < 40; ++trial) {
    std::size_t k = 2 + trial % 2;
    auto gens = oracles::random_cone(hb_rng, k, 2, 2);
    auto oracle = oracles::brute_force_hilbert(gens, oracles::brute_force_dual(gens, k), k, 200);
    if (!oracle)
      continue;
    auto hb = lattice::hilbert_basis(gens, k);
    o.require(std::set<lattice::IntVector>(hb.begin(), hb.end()) == *oracle, "hilbert basis");
    ++compared;
  }
  o.require(compared >= 20, "enough hilbert basis comparisons");
  o.detail << incidences << " incidences additive; " << generators << " generators in J_E; " << steps_total
           << " rewrite steps; " << cones << " cones double-dualized; " << compared << " Hilbert bases compared";
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"toricell acceptance checks"};
  std::vector<int> expected;
  std::vector<int> only;
  app.add_option("--expect-fail", expected, "criteria whose failure is documented; they do not affect the exit code");
  app.add_option("--only", only, "run only these criteria");
  CLI11_PARSE(app, argc, argv);

  std::vector<Criterion> criteria{
      {1, "first example quiver and relations", 1, four_vertex},
      {2, "superpotential examples", 5, superpotential_examples},
      {3, "perfect matchings", 2, perfect_matchings},
      {4, "cycle semigroup and invariant cone", 10, cycle_semigroup},
      {5, "McKay Z/6(1,2,3) resolution", 60, mckay_z6},
      {6, "dimer resolution", 120, dimer_resolution},
      {7, "dimer reconstruction", 5, reconstruction},
      {8, "fourfold", 600, fourfold},
      {9, "property suites", 300, property_suites},
  };

  int unexpected = 0;
  for (const auto &c : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end())
      continue;
    Outcome o;
    auto start = std::chrono::steady_clock::now();
    try {
      c.body(o);
    } catch (const std::exception &e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs >= c.limit_seconds) {
      o.require(false, "over the " + std::to_string(static_cast<int>(c.limit_seconds)) + " s limit");
    }
    std::cout << (o.ok ? "PASS" : "FAIL") << " " << c.id << " " << c.title << " (" << std::fixed
              << std::setprecision(2) << secs << " s): " << o.detail.str();
    for (const auto &f : o.failed)
      std::cout << " [failed: " << f << "]";
    std::cout << std::endl;
    if (!o.ok && std::find(expected.begin(), expected.end(), c.id) == expected.end())
      ++unexpected;
  }
  return unexpected == 0 ? 0 : 1;
}
