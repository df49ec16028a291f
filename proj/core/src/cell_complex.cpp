#include "toricell/cell_complex.hpp"

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

namespace toricell::cells {

using quiver::add;
using quiver::Path;
using superpotential::FRelation;

std::vector<std::size_t> ToricCellComplex::counts() const {
  std::vector<std::size_t> c;
  for (const auto &v : by_dim)
    c.push_back(v.size());
  return c;
}

PathClass ToricCellComplex::left_class(const FacetIncidence &f) const {
  return {cells[f.facet].head, cells[f.parent].head, f.left};
}

PathClass ToricCellComplex::right_class(const FacetIncidence &f) const {
  return {cells[f.parent].tail, cells[f.facet].tail, f.right};
}

std::string ToricCellComplex::describe(int id) const {
  const Cell &c = cells.at(id);
  std::ostringstream os;
  switch (c.kind) {
  case CellKind::Vertex:
    os << "vertex " << c.index;
    break;
  case CellKind::Arrow:
    os << "arrow " << quiver.arrow_name(c.index);
    break;
  case CellKind::Relation: {
    const auto &r = relations.at(c.index);
    os << "relation " << quiver::path_string(quiver, r.plus) << "-" << quiver::path_string(quiver, r.minus);
    break;
  }
  case CellKind::DualArrow:
    os << "tau(" << quiver.arrow_name(c.index) << ")";
    break;
  case CellKind::DualVertex:
    os << "eta_" << c.index;
    break;
  case CellKind::McKay: {
    os << "cube(" << c.character << ";";
    for (std::size_t k = 0; k < c.subset.size(); ++k)
      os << (k ? "," : "") << c.subset[k] + 1;
    os << ")";
    break;
  }
  }
  return os.str();
}

void ToricCellComplex::add_incidence(int parent, int facet, Divisor left, Divisor right) {
  facets_of[parent].push_back(static_cast<int>(incidences.size()));
  incidences.push_back({parent, facet, std::move(left), std::move(right)});
}

namespace {

int add_cell(ToricCellComplex &cx, Cell c) {
  c.id = static_cast<int>(cx.cells.size());
  if (cx.by_dim.size() <= static_cast<std::size_t>(c.dim))
    cx.by_dim.resize(c.dim + 1);
  cx.by_dim[c.dim].push_back(c.id);
  cx.cells.push_back(std::move(c));
  cx.facets_of.emplace_back();
  return cx.cells.back().id;
}

Divisor unit(std::size_t d, int i) {
  Divisor e(d, 0);
  e[i] = 1;
  return e;
}

Divisor prefix_divisor(const QuiverOfSections &Q, const std::vector<int> &arrows, std::size_t from, std::size_t to) {
  Divisor div(Q.d, 0);
  for (std::size_t k = from; k < to; ++k)
    div = add(div, Q.arrows[arrows[k]].label);
  return div;
}

// Gaussian elimination over GF(2). Returns the solution, or the ids of equations summing to 0 = 1.
struct Gf2Result {
  std::optional<std::vector<char>> solution;
  std::vector<std::size_t> conflict;
};

Gf2Result solve_gf2(std::size_t vars, const std::vector<std::pair<std::vector<int>, int>> &equations) {
  using Bits = boost::dynamic_bitset<>;
  const std::size_t E = equations.size();
  std::vector<Bits> rows, prov;
  std::vector<char> rhs;
  for (std::size_t e = 0; e < E; ++e) {
    Bits r(vars);
    for (int v : equations[e].first)
      r.flip(v);
    rows.push_back(r);
    Bits p(E);
    p.set(e);
    prov.push_back(p);
    rhs.push_back(static_cast<char>(equations[e].second & 1));
  }
  std::vector<int> pivot_of_row(E, -1);
  std::size_t next = 0;
  for (std::size_t col = 0; col < vars && next < E; ++col) {
    std::size_t p = next;
    while (p < E && !rows[p].test(col))
      ++p;
    if (p == E)
      continue;
    std::swap(rows[p], rows[next]);
    std::swap(prov[p], prov[next]);
    std::swap(rhs[p], rhs[next]);
    for (std::size_t r = 0; r < E; ++r)
      if (r != next && rows[r].test(col)) {
        rows[r] ^= rows[next];
        prov[r] ^= prov[next];
        rhs[r] ^= rhs[next];
      }
    pivot_of_row[next] = static_cast<int>(col);
    ++next;
  }
  Gf2Result res;
  for (std::size_t r = next; r < E; ++r)
    if (rhs[r]) {
      for (std::size_t e = prov[r].find_first(); e != Bits::npos; e = prov[r].find_next(e))
        res.conflict.push_back(e);
      return res;
    }
  std::vector<char> x(vars, 0);
  for (std::size_t r = 0; r < next; ++r)
    x[pivot_of_row[r]] = rhs[r];
  res.solution = std::move(x);
  return res;
}

} // namespace

QuiverOfSections mckay_quiver(const toric::McKayData &data) {
  const std::size_t n = data.X.n;
  std::vector<quiver::Arrow> arrows;
  for (std::size_t c = 0; c < data.characters.size(); ++c)
    for (std::size_t i = 0; i < n; ++i)
      arrows.push_back({0, static_cast<int>(c), static_cast<int>(data.shift[c][i]), unit(n, static_cast<int>(i))});
  const int V = static_cast<int>(data.characters.size());
  std::stable_sort(arrows.begin(), arrows.end(),
                   [V](const quiver::Arrow &a, const quiver::Arrow &b) { return quiver::arrow_order_less(a, b, V); });
  return quiver::make_quiver(V, n, std::move(arrows));
}

ToricCellComplex mckay_complex(const toric::AbelianGroupData &G) {
  if (!toric::is_special_linear(G))
    throw InvalidInput("group is not contained in SL(n)");
  auto data = toric::mckay_toric_data(G);
  const std::size_t n = G.n;
  const int V = static_cast<int>(data.characters.size());

  ToricCellComplex cx;
  cx.n = n;
  cx.quiver = mckay_quiver(data);
  cx.by_dim.resize(n + 1);

  std::map<std::pair<int, std::vector<int>>, int> lookup;
  for (std::size_t k = 0; k <= n; ++k) {
    // subsets of size k in lexicographic order
    std::vector<int> S(k);
    for (std::size_t j = 0; j < k; ++j)
      S[j] = static_cast<int>(j);
    while (true) {
      for (int c = 0; c < V; ++c) {
        Cell cell;
        cell.dim = static_cast<int>(k);
        cell.tail = c;
        int h = c;
        cell.divisor.assign(n, 0);
        for (int i : S) {
          h = static_cast<int>(data.shift[h][i]);
          cell.divisor[i] = 1;
        }
        cell.head = h;
        cell.kind = k == 0 ? CellKind::Vertex : CellKind::McKay;
        cell.index = k == 0 ? c : -1;
        cell.character = c;
        cell.subset = S;
        lookup[{c, S}] = add_cell(cx, cell);
      }
      int j = static_cast<int>(k) - 1;
      while (j >= 0 && S[j] == static_cast<int>(n - k + j))
        --j;
      if (j < 0)
        break;
      ++S[j];
      for (std::size_t m = j + 1; m < k; ++m)
        S[m] = S[m - 1] + 1;
    }
  }
  std::vector<int> signs;
  for (std::size_t k = 1; k <= n; ++k)
    for (int id : cx.by_dim[k]) {
      const Cell cell = cx.cells[id];
      for (std::size_t nu = 1; nu <= cell.subset.size(); ++nu) {
        int i = cell.subset[nu - 1];
        std::vector<int> rest = cell.subset;
        rest.erase(rest.begin() + (nu - 1));
        int tail_sharing = lookup.at({cell.character, rest});
        int head_sharing = lookup.at({static_cast<int>(data.shift[cell.character][i]), rest});
        int s = nu % 2 == 0 ? 1 : -1;
        cx.add_incidence(id, tail_sharing, unit(n, i), Divisor(n, 0));
        signs.push_back(s);
        cx.add_incidence(id, head_sharing, Divisor(n, 0), unit(n, i));
        signs.push_back(-s);
      }
    }
  cx.explicit_signs = std::move(signs);
  return cx;
}

ToricCellComplex general_complex(const QuiverOfSections &Q, const superpotential::Superpotential &W,
                                 const superpotential::RelationSet &rels, std::size_t n) {
  if (n != 3 && n != 4)
    throw InvalidInput("cell complexes are built for dimension 3 and 4 only (or McKay data)");
  const Divisor one = quiver::ones(Q.d);
  for (const auto &a : Q.arrows)
    if (!quiver::leq(a.label, one))
      throw InvalidInput("arrow " + Q.arrow_name(a.id) + " has a label not dividing the anticanonical monomial");

  ToricCellComplex cx;
  cx.n = n;
  cx.quiver = Q;
  cx.by_dim.resize(n + 1);
  const int V = Q.vertex_count;
  const int A = static_cast<int>(Q.arrows.size());

  std::vector<int> vertex_cell(V), arrow_cell(A), dual_arrow_cell(A), eta_cell(V);
  for (int v = 0; v < V; ++v)
    vertex_cell[v] = add_cell(cx, {0, 0, v, v, Divisor(Q.d, 0), CellKind::Vertex, v, -1, {}});
  for (const auto &a : Q.arrows)
    arrow_cell[a.id] = add_cell(cx, {0, 1, a.head, a.tail, a.label, CellKind::Arrow, a.id, -1, {}});

  std::vector<int> relation_cell;
  if (n == 3) {
    // one relation per arrow, from q = a
    std::vector<int> rel_of_arrow(A, -1);
    for (std::size_t g = 0; g < rels.generators.size(); ++g)
      for (const auto &q : rels.generators[g].witnesses)
        if (q.arrows.size() == 1) {
          if (rel_of_arrow[q.arrows[0]] != -1)
            throw InvalidInput("arrow derivative yields two relations");
          rel_of_arrow[q.arrows[0]] = static_cast<int>(g);
        }
    if (rels.generators.size() != static_cast<std::size_t>(A))
      throw InvalidInput("expected one superpotential relation per arrow, found " +
                         std::to_string(rels.generators.size()) + " relations for " + std::to_string(A) + " arrows");
    relation_cell.assign(rels.generators.size(), -1);
    for (int a = 0; a < A; ++a) {
      if (rel_of_arrow[a] == -1)
        throw InvalidInput("arrow " + Q.arrow_name(a) + " does not lie in the derivative set");
      const auto &arrow = Q.arrows[a];
      int g = rel_of_arrow[a];
      if (relation_cell[g] != -1)
        throw InvalidInput("two arrows yield the same relation");
      const auto &r = rels.generators[g];
      relation_cell[g] = add_cell(cx, {0, 2, r.plus.head, r.plus.tail, r.plus.divisor, CellKind::Relation, g, -1, {}});
      if (r.plus.head != arrow.tail || r.plus.tail != arrow.head)
        throw std::logic_error("relation endpoints do not match the arrow");
      dual_arrow_cell[a] = relation_cell[g];
    }
  } else {
    relation_cell.resize(rels.generators.size());
    for (std::size_t g = 0; g < rels.generators.size(); ++g) {
      const auto &r = rels.generators[g];
      relation_cell[g] = add_cell(
          cx, {0, 2, r.plus.head, r.plus.tail, r.plus.divisor, CellKind::Relation, static_cast<int>(g), -1, {}});
    }
    for (const auto &a : Q.arrows)
      dual_arrow_cell[a.id] = add_cell(
          cx, {0, 3, a.tail, a.head, quiver::subtract(one, a.label), CellKind::DualArrow, a.id, -1, {}});
  }
  cx.relations = rels.generators;
  for (int v = 0; v < V; ++v)
    eta_cell[v] = add_cell(cx, {0, static_cast<int>(n), v, v, one, CellKind::DualVertex, v, -1, {}});

  // 1-cells
  for (const auto &a : Q.arrows) {
    cx.add_incidence(arrow_cell[a.id], vertex_cell[a.head], Divisor(Q.d, 0), a.label);
    cx.add_incidence(arrow_cell[a.id], vertex_cell[a.tail], a.label, Divisor(Q.d, 0));
  }
  // 2-cells: arrow occurrences
  for (std::size_t g = 0; g < rels.generators.size(); ++g)
    for (const Path *p : {&rels.generators[g].plus, &rels.generators[g].minus})
      for (std::size_t k = 0; k < p->arrows.size(); ++k)
        cx.add_incidence(relation_cell[g], arrow_cell[p->arrows[k]],
                         prefix_divisor(Q, p->arrows, k + 1, p->arrows.size()), prefix_divisor(Q, p->arrows, 0, k));
  // 3-cells for n = 4: relations embedded in the complements of a
  if (n == 4) {
    std::vector<std::vector<std::pair<int, const Path *>>> sides_by_first(A);
    for (std::size_t g = 0; g < rels.generators.size(); ++g)
      for (const Path *p : {&rels.generators[g].plus, &rels.generators[g].minus})
        sides_by_first[p->arrows.front()].push_back({static_cast<int>(g), p});
    for (const auto &a : Q.arrows) {
      auto comps = superpotential::derivative(Q, W, quiver::make_path(Q, a.tail, {a.id}));
      std::map<int, std::set<std::pair<Divisor, Divisor>>> found;
      for (const auto &R : comps)
        for (std::size_t k = 0; k < R.arrows.size(); ++k)
          for (const auto &[g, p] : sides_by_first[R.arrows[k]]) {
            if (k + p->arrows.size() > R.arrows.size())
              continue;
            if (!std::equal(p->arrows.begin(), p->arrows.end(), R.arrows.begin() + k))
              continue;
            found[g].insert({prefix_divisor(Q, R.arrows, k + p->arrows.size(), R.arrows.size()),
                             prefix_divisor(Q, R.arrows, 0, k)});
          }
      for (const auto &[g, splits] : found)
        for (const auto &[left, right] : splits)
          cx.add_incidence(dual_arrow_cell[a.id], relation_cell[g], left, right);
      if (found.empty())
        throw InvalidInput("tau(" + Q.arrow_name(a.id) + ") has no facets");
    }
  }
  // n-cells
  for (int v = 0; v < V; ++v)
    for (const auto &a : Q.arrows) {
      if (a.tail == v)
        cx.add_incidence(eta_cell[v], dual_arrow_cell[a.id], Divisor(Q.d, 0), a.label);
      if (a.head == v)
        cx.add_incidence(eta_cell[v], dual_arrow_cell[a.id], a.label, Divisor(Q.d, 0));
    }
  for (const auto &c : cx.cells)
    if (c.dim > 0 && cx.facets_of[c.id].empty())
      throw InvalidInput(cx.describe(c.id) + " has no facets");
  return cx;
}

TauReport compute_tau(const ToricCellComplex &cx) {
  TauReport rep;
  const std::size_t d = cx.quiver.d;
  const Divisor one = quiver::ones(d);
  std::map<std::tuple<int, int, int, Divisor>, std::vector<int>> index;
  for (const auto &c : cx.cells)
    index[{c.dim, c.tail, c.head, c.divisor}].push_back(c.id);
  rep.tau.assign(cx.cells.size(), -1);
  bool ok = true;
  for (const auto &c : cx.cells) {
    if (!quiver::leq(c.divisor, one)) {
      rep.problems.push_back(cx.describe(c.id) + " has a divisor exceeding the anticanonical divisor");
      ok = false;
      continue;
    }
    auto it = index.find({static_cast<int>(cx.n) - c.dim, c.head, c.tail, quiver::subtract(one, c.divisor)});
    if (it == index.end() || it->second.size() != 1) {
      rep.problems.push_back(cx.describe(c.id) + (it == index.end() ? " has no dual cell" : " has several dual cells"));
      ok = false;
      continue;
    }
    rep.tau[c.id] = it->second.front();
  }
  if (ok)
    for (std::size_t c = 0; c < cx.cells.size(); ++c)
      if (rep.tau[rep.tau[c]] != static_cast<int>(c)) {
        rep.problems.push_back("tau is not an involution at " + cx.describe(static_cast<int>(c)));
        ok = false;
      }
  rep.involution = ok;
  if (!ok)
    return rep;
  using Key = std::tuple<int, int, Divisor, Divisor>;
  std::vector<Key> direct, dual;
  for (const auto &f : cx.incidences) {
    direct.emplace_back(f.parent, f.facet, f.left, f.right);
    dual.emplace_back(rep.tau[f.facet], rep.tau[f.parent], f.right, f.left);
  }
  std::sort(direct.begin(), direct.end());
  std::sort(dual.begin(), dual.end());
  rep.antisymmetric = direct == dual;
  if (!rep.antisymmetric)
    rep.problems.push_back("facet relation is not compatible with tau");
  return rep;
}

std::vector<Flag> enumerate_flags(const ToricCellComplex &cx) {
  std::vector<Flag> out;
  for (const auto &c : cx.cells) {
    if (c.dim == 0)
      continue;
    if (c.dim == 1) {
      Flag f;
      f.top = c.id;
      f.left = c.divisor;
      f.right = Divisor(c.divisor.size(), 0);
      for (int i : cx.facets_of[c.id])
        f.chains.push_back({i, -1});
      out.push_back(std::move(f));
      continue;
    }
    std::map<std::tuple<int, Divisor, Divisor>, std::vector<std::pair<int, int>>> groups;
    for (int i1 : cx.facets_of[c.id]) {
      const auto &f1 = cx.incidences[i1];
      for (int i2 : cx.facets_of[f1.facet]) {
        const auto &f2 = cx.incidences[i2];
        groups[{f2.facet, add(f1.left, f2.left), add(f1.right, f2.right)}].push_back({i1, i2});
      }
    }
    for (auto &[key, chains] : groups)
      out.push_back({c.id, std::get<0>(key), std::get<1>(key), std::get<2>(key), std::move(chains)});
  }
  return out;
}

FaceReport face_poset_check(const ToricCellComplex &cx) {
  FaceReport rep;
  for (auto &f : enumerate_flags(cx)) {
    ++rep.flags;
    if (f.chains.size() != 2)
      rep.violations.push_back(std::move(f));
  }
  return rep;
}

IncidenceSolution solve_incidence(const ToricCellComplex &cx) {
  auto flags = enumerate_flags(cx);
  std::vector<std::pair<std::vector<int>, int>> eqs;
  for (const auto &f : flags) {
    if (f.chains.size() != 2)
      throw InvalidInput("face poset check failed at " + cx.describe(f.top));
    std::vector<int> vars;
    for (const auto &[i1, i2] : f.chains) {
      vars.push_back(i1);
      if (i2 >= 0)
        vars.push_back(i2);
    }
    eqs.push_back({vars, 1});
  }
  auto res = solve_gf2(cx.incidences.size(), eqs);
  IncidenceSolution sol;
  if (res.solution) {
    std::vector<int> signs;
    for (char x : *res.solution)
      signs.push_back(x ? -1 : 1);
    sol.signs = std::move(signs);
  } else {
    for (auto e : res.conflict)
      sol.certificate.push_back(flags[e]);
  }
  return sol;
}

std::vector<Flag> incidence_violations(const ToricCellComplex &cx, const std::vector<int> &signs) {
  if (signs.size() != cx.incidences.size())
    throw std::invalid_argument("sign vector has wrong length");
  std::vector<Flag> bad;
  for (auto &f : enumerate_flags(cx)) {
    int total = 0;
    for (const auto &[i1, i2] : f.chains)
      total += signs[i1] * (i2 >= 0 ? signs[i2] : 1);
    if (total != 0)
      bad.push_back(std::move(f));
  }
  return bad;
}

std::optional<std::vector<int>> global_sign_change(const ToricCellComplex &cx, const std::vector<int> &eps,
                                                   const std::vector<int> &eps_prime) {
  std::vector<std::pair<std::vector<int>, int>> eqs;
  for (std::size_t i = 0; i < cx.incidences.size(); ++i)
    eqs.push_back({{cx.incidences[i].parent, cx.incidences[i].facet}, eps[i] != eps_prime[i] ? 1 : 0});
  auto res = solve_gf2(cx.cells.size(), eqs);
  if (!res.solution)
    return std::nullopt;
  std::vector<int> delta;
  for (char x : *res.solution)
    delta.push_back(x ? -1 : 1);
  return delta;
}

std::vector<int> incidence_data_violations(const ToricCellComplex &cx) {
  quiver::PathOracle oracle(cx.quiver);
  std::vector<int> bad;
  for (std::size_t i = 0; i < cx.incidences.size(); ++i) {
    const auto &f = cx.incidences[i];
    bool ok = add(add(f.left, cx.cells[f.facet].divisor), f.right) == cx.cells[f.parent].divisor &&
              oracle.realizable(cx.left_class(f)) && oracle.realizable(cx.right_class(f));
    if (!ok)
      bad.push_back(static_cast<int>(i));
  }
  return bad;
}

SignParityReport sign_infeasibility(const QuiverOfSections &Q, const superpotential::Superpotential &W,
                                    const superpotential::RelationSet &rels, int arrow) {
  if (arrow < 0 || arrow >= static_cast<int>(Q.arrows.size()))
    throw InvalidInput("arrow index out of range");
  SignParityReport rep;
  rep.arrow = arrow;
  const auto &a = Q.arrows[arrow];
  rep.terms = superpotential::derivative(Q, W, quiver::make_path(Q, a.tail, {arrow}));
  std::map<std::vector<int>, int> index;
  for (std::size_t k = 0; k < rep.terms.size(); ++k)
    index[rep.terms[k].arrows] = static_cast<int>(k);
  superpotential::RewriteSystem rs(Q, superpotential::as_binomials(rels.generators));
  std::set<std::pair<int, int>> edges;
  for (std::size_t k = 0; k < rep.terms.size(); ++k)
    for (const auto &nb : rs.neighbours(rep.terms[k].arrows)) {
      auto it = index.find(nb);
      if (it == index.end())
        throw std::logic_error("rewrite of a complement left the derivative");
      int u = static_cast<int>(k), v = it->second;
      if (u != v)
        edges.insert({std::min(u, v), std::max(u, v)});
    }
  rep.edges.assign(edges.begin(), edges.end());

  const int N = static_cast<int>(rep.terms.size());
  std::vector<std::vector<int>> adj(N);
  for (const auto &[u, v] : rep.edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::vector<int> colour(N, -1), parent(N, -1), depth(N, 0);
  for (int s = 0; s < N && rep.two_colourable; ++s) {
    if (colour[s] != -1)
      continue;
    colour[s] = 0;
    std::deque<int> todo{s};
    while (!todo.empty() && rep.two_colourable) {
      int u = todo.front();
      todo.pop_front();
      for (int v : adj[u]) {
        if (colour[v] == -1) {
          colour[v] = 1 - colour[u];
          parent[v] = u;
          depth[v] = depth[u] + 1;
          todo.push_back(v);
        } else if (colour[v] == colour[u]) {
          rep.two_colourable = false;
          std::vector<int> left{u}, right{v};
          int x = u, y = v;
          while (x != y) {
            if (depth[x] >= depth[y]) {
              x = parent[x];
              left.push_back(x);
            } else {
              y = parent[y];
              right.push_back(y);
            }
          }
          right.pop_back();
          std::reverse(right.begin(), right.end());
          left.insert(left.end(), right.begin(), right.end());
          rep.odd_cycle = left;
          break;
        }
      }
    }
  }
  return rep;
}

} // namespace toricell::cells
