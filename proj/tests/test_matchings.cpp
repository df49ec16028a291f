#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace toricell;
using namespace toricell::matchings;

namespace {

// Values of the facet normals of the cone spanned by π(arrows), found by subset enumeration.
std::set<std::vector<long>> oracle_matchings(const PiMap &pi) {
  std::size_t k = pi.rank();
  auto facets = oracles::brute_force_dual(pi.arrow_coordinates, k);
  std::set<std::vector<long>> out;
  for (const auto &n : facets) {
    std::vector<long> v;
    for (const auto &c : pi.arrow_coordinates)
      v.push_back(lattice::dot(n, c).get_si());
    out.insert(v);
  }
  return out;
}

std::set<std::vector<long>> value_set(const std::vector<PerfectMatching> &ms) {
  std::set<std::vector<long>> out;
  for (const auto &m : ms)
    out.insert(m.values);
  return out;
}

quiver::QuiverOfSections mckay_z6() { return cells::mckay_quiver(toric::mckay_toric_data(fixtures::z6_123())); }

} // namespace

TEST_CASE("lattice ranks") {
  CHECK(build_pi(fixtures::four_vertex().Q).rank() == 6);
  CHECK(build_pi(fixtures::conifold().Q).rank() == 4);
  CHECK(build_pi(fixtures::fourfold().Q).rank() == 11);
  CHECK(build_pi(mckay_z6()).rank() == 8);
  CHECK_THROWS_AS(build_pi(fixtures::four_vertex().Q, 5), InvalidInput);
}

TEST_CASE("arrow coordinates reproduce the columns of pi") {
  auto pi = build_pi(fixtures::four_vertex().Q);
  for (std::size_t a = 0; a < pi.arrow_coordinates.size(); ++a) {
    lattice::IntVector col(pi.matrix.rows(), 0);
    for (std::size_t b = 0; b < pi.rank(); ++b)
      for (std::size_t r = 0; r < col.size(); ++r)
        col[r] += pi.arrow_coordinates[a][b] * pi.lattice_basis[b][r];
    CHECK(col == pi.matrix.column(a));
  }
}

TEST_CASE("perfect matchings against facet enumeration") {
  for (const auto &Q : {fixtures::four_vertex().Q, fixtures::conifold().Q, fixtures::five_vertex().Q, mckay_z6()}) {
    auto pi = build_pi(Q);
    auto ms = perfect_matchings(Q, pi);
    CHECK(value_set(ms) == oracle_matchings(pi));
  }
  CHECK(perfect_matchings(fixtures::four_vertex().Q, build_pi(fixtures::four_vertex().Q)).size() == 8);
  CHECK(perfect_matchings(fixtures::conifold().Q, build_pi(fixtures::conifold().Q)).size() == 4);
  CHECK(perfect_matchings(fixtures::fourfold().Q, build_pi(fixtures::fourfold().Q)).size() == 31);
}

TEST_CASE("extremal matchings of the dimer example") {
  auto t = fixtures::four_vertex();
  auto pi = build_pi(t.Q);
  auto all = value_set(perfect_matchings(t.Q, pi));
  std::vector<PerfectMatching> ext;
  for (std::size_t rho = 0; rho < 4; ++rho) {
    auto m = extremal_matching(t.Q, pi, rho);
    CHECK(m.certified);
    for (long v : m.values)
      CHECK((v == 0 || v == 1));
    CHECK(all.count(m.values) == 1);
    for (const auto &a : t.Q.arrows)
      CHECK(m.values[a.id] == a.label[rho]);
    ext.push_back(m);
  }
  CHECK(ext[0].support() == std::vector<int>{0, 5, 8});
  CHECK(ext[3].support() == std::vector<int>{2, 4, 7});
  CHECK(label_reconstruction_failures(t.Q, ext).empty());
  auto audit = dimer_matching_audit(t.Q, t.W, perfect_matchings(t.Q, pi));
  CHECK(audit.passed());
}

TEST_CASE("label reconstruction detects a corrupted matching") {
  auto t = fixtures::four_vertex();
  auto pi = build_pi(t.Q);
  std::vector<PerfectMatching> ext;
  for (std::size_t rho = 0; rho < 4; ++rho)
    ext.push_back(extremal_matching(t.Q, pi, rho));
  std::swap(ext[0].values[0], ext[0].values[1]);
  auto bad = label_reconstruction_failures(t.Q, ext);
  CHECK(bad == std::vector<int>{0, 1});
}

TEST_CASE("dimer audit fails for the three-vertex collection") {
  auto t = fixtures::three_vertex();
  auto pi = build_pi(t.Q);
  auto audit = dimer_matching_audit(t.Q, t.W, perfect_matchings(t.Q, pi));
  CHECK(!audit.passed());
  CHECK(!audit.non_binary.empty());
}

TEST_CASE("cycle semigroup against the invariant cone") {
  for (auto t : {fixtures::four_vertex(), fixtures::conifold()}) {
    auto rep = lemma_2_9_check(t.Q, t.X);
    CHECK(rep.holds);
    CHECK(rep.cycle_basis.size() == rep.cone_basis.size());
  }
  auto data = toric::mckay_toric_data(fixtures::z6_123());
  auto rep = lemma_2_9_check(mckay_z6(), data.X);
  CHECK(rep.holds);
  CHECK(rep.cone_basis.size() == 7);
  auto conifold = lemma_2_9_check(fixtures::conifold().Q, fixtures::conifold().X);
  CHECK(conifold.cone_basis.size() == 4);
}

TEST_CASE("invariant monomials of Z/6 by direct enumeration") {
  // x^v is invariant iff v₁ + 2v₂ + 3v₃ ≡ 0 mod 6; minimal such exponents
  std::vector<std::vector<long>> inv;
  for (long a = 0; a <= 6; ++a)
    for (long b = 0; b <= 6; ++b)
      for (long c = 0; c <= 6; ++c)
        if ((a + b + c) > 0 && (a + 2 * b + 3 * c) % 6 == 0)
          inv.push_back({a, b, c});
  std::set<std::vector<long>> minimal;
  for (const auto &v : inv) {
    bool red = false;
    for (const auto &w : inv)
      if (w != v && w[0] <= v[0] && w[1] <= v[1] && w[2] <= v[2])
        red = true;
    if (!red)
      minimal.insert(v);
  }
  auto rep = lemma_2_9_check(mckay_z6(), toric::mckay_toric_data(fixtures::z6_123()).X);
  CHECK(std::set<std::vector<long>>(rep.cycle_basis.begin(), rep.cycle_basis.end()) == minimal);
}

TEST_CASE("simple cycles include the anticanonical ones") {
  auto t = fixtures::four_vertex();
  auto divs = simple_cycle_divisors(t.Q);
  CHECK(std::find(divs.begin(), divs.end(), quiver::ones(4)) != divs.end());
}
