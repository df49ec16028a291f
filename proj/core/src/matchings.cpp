#include "toricell/matchings.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace toricell::matchings {

using lattice::Int;

std::vector<int> PerfectMatching::support() const {
  std::vector<int> s;
  for (std::size_t a = 0; a < values.size(); ++a)
    if (values[a] > 0)
      s.push_back(static_cast<int>(a));
  return s;
}

PiMap build_pi(const QuiverOfSections &Q, std::optional<std::size_t> expected_rank) {
  const std::size_t V = Q.vertex_count, rows = V + Q.d;
  PiMap pi;
  pi.matrix = IntegerMatrix(rows, Q.arrows.size());
  std::vector<IntVector> columns;
  for (const auto &a : Q.arrows) {
    pi.matrix(a.head, a.id) += 1;
    pi.matrix(a.tail, a.id) -= 1;
    for (std::size_t r = 0; r < Q.d; ++r)
      pi.matrix(V + r, a.id) = a.label[r];
    columns.push_back(pi.matrix.column(a.id));
  }
  pi.lattice_basis = lattice::hermite_basis(columns, rows);
  if (expected_rank && pi.rank() != *expected_rank)
    throw InvalidInput("rank of the lattice Z(Q) is " + std::to_string(pi.rank()) + ", expected " +
                       std::to_string(*expected_rank));
  IntegerMatrix basis = IntegerMatrix::from_columns(pi.lattice_basis, rows);
  for (const auto &c : columns) {
    auto x = lattice::solve_integer(basis, c);
    if (!x)
      throw std::logic_error("arrow image outside the lattice basis");
    pi.arrow_coordinates.push_back(*x);
  }
  return pi;
}

namespace {

std::vector<long> values_of(const PiMap &pi, const IntVector &functional) {
  std::vector<long> v;
  for (const auto &c : pi.arrow_coordinates)
    v.push_back(lattice::dot(functional, c).get_si());
  return v;
}

bool is_ray(const PiMap &pi, const std::vector<long> &values, const IntVector &functional) {
  if (lattice::is_zero(functional) || lattice::primitive(functional) != functional)
    return false;
  std::vector<IntVector> tight;
  for (std::size_t a = 0; a < values.size(); ++a) {
    if (values[a] < 0)
      return false;
    if (values[a] == 0)
      tight.push_back(pi.arrow_coordinates[a]);
  }
  if (tight.empty())
    return pi.rank() == 1;
  return lattice::rank(IntegerMatrix::from_rows(tight, pi.rank())) + 1 == pi.rank();
}

} // namespace

std::vector<PerfectMatching> perfect_matchings(const QuiverOfSections &Q, const PiMap &pi) {
  (void)Q;
  auto C = lattice::dual_cone_rays(pi.arrow_coordinates, pi.rank());
  if (!C.lineality.empty())
    throw InvalidInput("the cone C has a nontrivial lineality space");
  std::vector<PerfectMatching> out;
  for (const auto &r : C.rays)
    out.push_back({values_of(pi, r), r, std::nullopt, true});
  std::sort(out.begin(), out.end(), [](const PerfectMatching &a, const PerfectMatching &b) {
    return a.values > b.values;
  });
  return out;
}

PerfectMatching extremal_matching(const QuiverOfSections &Q, const PiMap &pi, std::size_t rho) {
  if (rho >= Q.d)
    throw InvalidInput("ray index out of range");
  const std::size_t V = Q.vertex_count;
  IntVector functional;
  for (const auto &b : pi.lattice_basis)
    functional.push_back(b[V + rho]);
  PerfectMatching m;
  m.functional = functional;
  m.values = values_of(pi, functional);
  for (const auto &a : Q.arrows)
    if (m.values[a.id] != a.label[rho])
      throw std::logic_error("extremal functional disagrees with label multiplicities");
  m.extremal_ray = static_cast<int>(rho);
  m.certified = is_ray(pi, m.values, functional);
  return m;
}

std::vector<std::vector<int>> simple_cycle_divisors(const QuiverOfSections &Q) {
  std::set<std::vector<int>> found;
  const int V = Q.vertex_count;
  std::vector<char> on_path(V, 0);
  quiver::Divisor div(Q.d, 0);
  // cycles whose least vertex is s
  std::function<void(int, int)> dfs = [&](int s, int v) {
    for (int id : Q.out_arrows[v]) {
      const auto &a = Q.arrows[id];
      if (a.head < s)
        continue;
      if (a.head == s) {
        found.insert(quiver::add(div, a.label));
        continue;
      }
      if (on_path[a.head])
        continue;
      on_path[a.head] = 1;
      div = quiver::add(div, a.label);
      dfs(s, a.head);
      div = quiver::subtract(div, a.label);
      on_path[a.head] = 0;
    }
  };
  for (int s = 0; s < V; ++s) {
    on_path[s] = 1;
    dfs(s, s);
    on_path[s] = 0;
  }
  return {found.begin(), found.end()};
}

Lemma29Report lemma_2_9_check(const QuiverOfSections &Q, const toric::GorensteinToricVariety &X) {
  auto gens = simple_cycle_divisors(Q);
  // membership in the semigroup generated by gens
  std::map<std::vector<int>, bool> memo;
  std::function<bool(const std::vector<int> &)> member = [&](const std::vector<int> &x) -> bool {
    if (quiver::is_zero(x))
      return true;
    auto it = memo.find(x);
    if (it != memo.end())
      return it->second;
    bool ok = false;
    for (const auto &g : gens)
      if (quiver::leq(g, x) && member(quiver::subtract(x, g))) {
        ok = true;
        break;
      }
    memo[x] = ok;
    return ok;
  };
  Lemma29Report rep;
  for (const auto &g : gens) {
    bool reducible = false;
    for (const auto &h : gens)
      if (h != g && quiver::leq(h, g) && member(quiver::subtract(g, h))) {
        reducible = true;
        break;
      }
    if (!reducible)
      rep.cycle_basis.emplace_back(g.begin(), g.end());
  }
  rep.cone_basis = X.fibers().hilbert_basis_image();
  std::sort(rep.cycle_basis.begin(), rep.cycle_basis.end());
  std::sort(rep.cone_basis.begin(), rep.cone_basis.end());
  rep.holds = rep.cycle_basis == rep.cone_basis;
  return rep;
}

DimerAudit dimer_matching_audit(const QuiverOfSections &Q, const superpotential::Superpotential &W,
                                const std::vector<PerfectMatching> &matchings) {
  (void)Q;
  DimerAudit audit;
  for (std::size_t m = 0; m < matchings.size(); ++m) {
    const auto &vals = matchings[m].values;
    if (std::any_of(vals.begin(), vals.end(), [](long v) { return v != 0 && v != 1; }))
      audit.non_binary.push_back(m);
    for (std::size_t t = 0; t < W.terms.size(); ++t) {
      int hits = 0;
      for (int a : W.terms[t].arrows)
        hits += vals[a] > 0 ? 1 : 0;
      if (hits != 1)
        audit.bad_terms.emplace_back(m, t);
    }
  }
  return audit;
}

std::vector<int> label_reconstruction_failures(const QuiverOfSections &Q,
                                               const std::vector<PerfectMatching> &extremal) {
  std::vector<int> bad;
  for (const auto &a : Q.arrows) {
    quiver::Divisor sum(Q.d, 0);
    for (const auto &m : extremal)
      if (m.extremal_ray)
        sum[*m.extremal_ray] += static_cast<int>(m.values[a.id]);
    if (sum != a.label)
      bad.push_back(a.id);
  }
  return bad;
}

} // namespace toricell::matchings
