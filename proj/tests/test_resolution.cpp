#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fixtures.hpp"
#include "oracles.hpp"

#include "toricell/resolution.hpp"

#include <functional>
#include <map>
#include <random>

using namespace toricell;
using namespace toricell::resolution;

namespace {

BimoduleResolution mckay(const toric::AbelianGroupData &G) {
  auto cx = cells::mckay_complex(G);
  return build_resolution(cx, *cx.explicit_signs);
}

BimoduleResolution solved(const cells::ToricCellComplex &cx) {
  auto sol = cells::solve_incidence(cx);
  REQUIRE(sol.feasible());
  return build_resolution(cx, *sol.signs);
}

BimoduleResolution dimer(const fixtures::Toric &t) {
  return solved(cells::general_complex(t.Q, t.W, t.rels, t.X.n));
}

SparseMatrix random_sparse(std::mt19937 &rng, std::size_t r, std::size_t c, std::int64_t span, int density) {
  SparseMatrix m{r, c, {}};
  std::uniform_int_distribution<std::int64_t> val(-span, span);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (static_cast<int>(rng() % 100) < density)
        m.entries.emplace_back(i, j, val(rng));
  return m;
}

// Splits ℓ ⊗ [η] ⊗ r found by path enumeration.
std::vector<BasisElement> brute_force_basis(const BimoduleResolution &res, std::size_t k, int s, int t,
                                            const quiver::Divisor &degree) {
  const auto &cx = res.complex;
  const auto &Q = cx.quiver;
  std::vector<BasisElement> out;
  for (int id : res.generators[k]) {
    const auto &c = cx.cells[id];
    if (!quiver::leq(c.divisor, degree))
      continue;
    auto rest = quiver::subtract(degree, c.divisor);
    for (const auto &p : quiver::enumerate_paths(Q, s, c.tail, rest, false)) {
      auto left = quiver::subtract(rest, p.divisor);
      if (!quiver::enumerate_paths(Q, c.head, t, left, true).empty())
        out.push_back({id, left, p.divisor});
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Homology ranks from dense rational elimination.
bool dense_exact(const GradedPiece &piece) {
  std::size_t n = piece.bases.size() - 1;
  std::vector<std::size_t> r(n + 2, 0);
  for (std::size_t k = 1; k <= n; ++k)
    r[k] = oracles::rational_rank(piece.matrices[k].dense());
  r[0] = piece.bases[0].empty() ? 0 : piece.algebra_dim;
  if (r[0] != piece.algebra_dim)
    return false;
  for (std::size_t k = 0; k <= n; ++k)
    if (piece.bases[k].size() != r[k] + r[k + 1])
      return false;
  return true;
}

} // namespace

TEST_CASE("sparse rank against rational elimination") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t r = 1 + rng() % 12, c = 1 + rng() % 12;
    auto m = random_sparse(rng, r, c, trial % 3 == 0 ? 2 : 5, 10 + trial % 60);
    CHECK(sparse_rank(m) == oracles::rational_rank(m.dense()));
  }
}

TEST_CASE("sparse rank survives int64 overflow") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    auto m = random_sparse(rng, 10, 10, 4000000000000LL, 90);
    CHECK(sparse_rank(m) == oracles::rational_rank(m.dense()));
  }
  // rank-deficient with huge entries
  SparseMatrix m{3, 3, {}};
  std::int64_t big = 3037000499LL;
  for (std::size_t j = 0; j < 3; ++j) {
    m.entries.emplace_back(0, j, big + static_cast<std::int64_t>(j));
    m.entries.emplace_back(1, j, 2 * (big + static_cast<std::int64_t>(j)));
    m.entries.emplace_back(2, j, big - static_cast<std::int64_t>(j));
  }
  CHECK(sparse_rank(m) == oracles::rational_rank(m.dense()));
  CHECK(sparse_rank(m) == 2);
}

TEST_CASE("sparse product") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    auto a = random_sparse(rng, 4, 6, 3, 50), b = random_sparse(rng, 6, 5, 3, 50);
    CHECK(multiply(a, b).dense() == a.dense() * b.dense());
  }
}

TEST_CASE("McKay generator ranks and the first differential") {
  auto res = mckay(fixtures::z6_123());
  CHECK(res.ranks() == std::vector<std::size_t>{6, 18, 18, 6});
  const auto &cx = res.complex;
  for (int id : res.generators[1]) {
    const auto &a = cx.cells[id];
    std::vector<DifferentialEntry> es;
    for (const auto &e : res.differentials[1])
      if (e.source == id)
        es.push_back(e);
    REQUIRE(es.size() == 2);
    for (const auto &e : es) {
      const auto &v = cx.cells[e.target];
      if (e.sign == 1) {
        CHECK(v.index == a.head);
        CHECK(quiver::is_zero(e.left.divisor));
        CHECK(e.right.divisor == a.divisor);
      } else {
        CHECK(e.sign == -1);
        CHECK(v.index == a.tail);
        CHECK(e.left.divisor == a.divisor);
        CHECK(quiver::is_zero(e.right.divisor));
      }
    }
  }
}

TEST_CASE("top differential of the dimer example") {
  auto t = fixtures::four_vertex();
  auto res = dimer(t);
  CHECK(res.ranks() == std::vector<std::size_t>{4, 10, 10, 4});
  // parity[c] relates the sign of cell c to a root; entries must match +1 on the right, −1 on the left
  std::map<int, std::pair<int, int>> parent;
  std::function<std::pair<int, int>(int)> find = [&](int c) -> std::pair<int, int> {
    auto it = parent.find(c);
    if (it == parent.end() || it->second.first == c)
      return {c, 0};
    auto [root, p] = find(it->second.first);
    it->second = {root, p ^ it->second.second};
    return it->second;
  };
  bool gauge_ok = true;
  for (int id : res.generators[3]) {
    const auto &eta = res.complex.cells[id];
    std::multiset<quiver::Divisor> left_labels, right_labels;
    for (const auto &e : res.differentials[3]) {
      if (e.source != id)
        continue;
      bool l = quiver::is_zero(e.left.divisor), r = quiver::is_zero(e.right.divisor);
      CHECK(l != r);
      if (!l)
        left_labels.insert(e.left.divisor);
      else
        right_labels.insert(e.right.divisor);
      int want = l ? 1 : -1;
      int parity = e.sign == want ? 0 : 1;
      auto [ra, pa] = find(e.source);
      auto [rb, pb] = find(e.target);
      if (ra == rb)
        gauge_ok = gauge_ok && ((pa ^ pb) == parity);
      else
        parent[ra] = {rb, pa ^ pb ^ parity};
    }
    std::multiset<quiver::Divisor> in, out;
    for (const auto &a : t.Q.arrows) {
      if (a.head == eta.head)
        in.insert(a.label);
      if (a.tail == eta.tail)
        out.insert(a.label);
    }
    CHECK(left_labels == in);
    CHECK(right_labels == out);
  }
  CHECK(gauge_ok);
}

TEST_CASE("square zero and minimality") {
  for (const auto &res : {mckay(fixtures::z6_123()), mckay({2, {{2, {1, 1}}}}), mckay({4, {{5, {1, 2, 3, 4}}}}),
                          dimer(fixtures::four_vertex()), dimer(fixtures::conifold()), dimer(fixtures::affine3()),
                          dimer(fixtures::fourfold())}) {
    auto sz = verify_square_zero(res);
    CHECK(sz.ok());
    CHECK(sz.checked > 0);
    CHECK(verify_minimality(res).ok());
  }
  CHECK(dimer(fixtures::fourfold()).ranks() == std::vector<std::size_t>{8, 26, 36, 26, 8});
}

TEST_CASE("graded pieces in degree zero") {
  auto res = mckay(fixtures::z6_123());
  for (int s = 0; s < 6; ++s)
    for (int t = 0; t < 6; ++t) {
      auto p = graded_piece(res, s, t, {0, 0, 0});
      CHECK(p.algebra_dim == (s == t ? 1u : 0u));
      CHECK(p.bases[0].size() == (s == t ? 1u : 0u));
      for (std::size_t k = 1; k < p.bases.size(); ++k)
        CHECK(p.bases[k].empty());
    }
}

TEST_CASE("graded piece contains the top cell at its own vertex") {
  auto res = dimer(fixtures::four_vertex());
  auto p = graded_piece(res, 0, 0, {1, 1, 1, 1});
  int eta0 = -1;
  for (int id : res.generators[3])
    if (res.complex.cells[id].tail == 0)
      eta0 = id;
  BasisElement want{eta0, {0, 0, 0, 0}, {0, 0, 0, 0}};
  CHECK(std::find(p.bases[3].begin(), p.bases[3].end(), want) != p.bases[3].end());
}

TEST_CASE("McKay piece of a single character") {
  auto G = fixtures::z6_123();
  auto data = toric::mckay_toric_data(G);
  auto res = mckay(G);
  for (int s = 0; s < 6; ++s)
    for (int t = 0; t < 6; ++t) {
      auto p = graded_piece(res, s, t, {1, 0, 0});
      bool compatible = static_cast<std::size_t>(t) == data.shift[s][0];
      CHECK(p.bases[1].size() == (compatible ? 1u : 0u));
      CHECK(p.bases[0].size() == (compatible ? 2u : 0u));
    }
}

TEST_CASE("graded bases against path enumeration") {
  for (const auto &res : {mckay(fixtures::z6_123()), dimer(fixtures::four_vertex())}) {
    const auto &Q = res.complex.quiver;
    std::vector<quiver::Divisor> degrees{quiver::ones(Q.d), quiver::scaled_ones(Q.d, 2)};
    degrees.push_back(quiver::Divisor(Q.d, 0));
    degrees.back()[0] = 2;
    degrees.back()[1] = 1;
    for (const auto &deg : degrees)
      for (int s = 0; s < Q.vertex_count; ++s)
        for (int t = 0; t < Q.vertex_count; ++t) {
          auto p = graded_piece(res, s, t, deg);
          for (std::size_t k = 0; k < p.bases.size(); ++k)
            CHECK(p.bases[k] == brute_force_basis(res, k, s, t, deg));
          CHECK(dense_exact(p));
        }
  }
}

TEST_CASE("exactness reports") {
  auto a = verify_exactness(mckay(fixtures::z6_123()), 2);
  CHECK(a.exact());
  CHECK(a.euler);
  CHECK(a.degrees.size() == 27 * 36);
  auto b = verify_exactness(dimer(fixtures::conifold()), 2);
  CHECK(b.exact());
  CHECK(b.euler);
  auto c = verify_exactness(mckay({2, {{2, {1, 1}}}}), 4);
  CHECK(c.exact());
  for (const auto &d : a.degrees)
    CHECK(d.euler == static_cast<long>(d.algebra_dim));
}

TEST_CASE("solved signs give the same ranks as the closed form") {
  auto G = fixtures::z6_123();
  auto cx = cells::mckay_complex(G);
  auto explicit_report = verify_exactness(build_resolution(cx, *cx.explicit_signs), 2);
  auto solved_report = verify_exactness(solved(cx), 2);
  REQUIRE(explicit_report.degrees.size() == solved_report.degrees.size());
  for (std::size_t i = 0; i < explicit_report.degrees.size(); ++i) {
    CHECK(explicit_report.degrees[i].ranks == solved_report.degrees[i].ranks);
    CHECK(explicit_report.degrees[i].dims == solved_report.degrees[i].dims);
  }
  CHECK(solved_report.exact());
}

TEST_CASE("corrupted signs are detected") {
  auto cx = cells::mckay_complex(fixtures::z6_123());
  auto bad = *cx.explicit_signs;
  // flip a sign on a 2-cell incidence
  std::size_t i = 0;
  while (cx.cells[cx.incidences[i].parent].dim != 2)
    ++i;
  bad[i] = -bad[i];
  auto res = build_resolution(cx, bad);
  CHECK(!verify_square_zero(res).ok());
  auto rep = verify_exactness(res, 1);
  CHECK(!rep.exact());

  std::vector<int> ones(cx.incidences.size(), 1);
  auto trivial = build_resolution(cx, ones);
  CHECK(!verify_square_zero(trivial).ok());
  CHECK(!verify_exactness(trivial, 1).exact());

  CHECK_THROWS_AS(build_resolution(cx, std::vector<int>(3, 1)), InvalidInput);
  auto zero = *cx.explicit_signs;
  zero[0] = 0;
  CHECK_THROWS_AS(build_resolution(cx, zero), InvalidInput);
}

TEST_CASE("parallel exactness agrees with serial") {
  auto res = dimer(fixtures::four_vertex());
  auto one = verify_exactness(res, 1, 1);
  auto many = verify_exactness(res, 1, 4);
  REQUIRE(one.degrees.size() == many.degrees.size());
  for (std::size_t i = 0; i < one.degrees.size(); ++i)
    CHECK(one.degrees[i].ranks == many.degrees[i].ranks);
  CHECK(one.nonzero_degrees() == many.nonzero_degrees());
}

TEST_CASE("McKay sign crosscheck") {
  for (auto G : std::vector<toric::AbelianGroupData>{fixtures::z6_123(), {2, {{2, {1, 1}}}}, {3, {}}, {2, {}},
                                                     {3, {{2, {1, 1, 0}}, {2, {0, 1, 1}}}}}) {
    auto rep = mckay_sign_crosscheck(G);
    CHECK(rep.ok());
    CHECK(rep.entries > 0);
  }
  CHECK(mckay_sign_crosscheck(fixtures::z6_123()).entries == 144);
}
