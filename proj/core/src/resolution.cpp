#include "toricell/resolution.hpp"
#include "toricell/parallel.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>

namespace toricell::resolution {

std::vector<std::size_t> BimoduleResolution::ranks() const {
  std::vector<std::size_t> r;
  for (const auto &g : generators)
    r.push_back(g.size());
  return r;
}

BimoduleResolution build_resolution(const cells::ToricCellComplex &cx, const std::vector<int> &eps) {
  if (eps.size() != cx.incidences.size())
    throw InvalidInput("incidence function has " + std::to_string(eps.size()) + " signs for " +
                       std::to_string(cx.incidences.size()) + " incidences");
  BimoduleResolution res;
  res.complex = cx;
  res.signs = eps;
  res.generators = cx.by_dim;
  res.differentials.resize(cx.by_dim.size());
  for (std::size_t i = 0; i < cx.incidences.size(); ++i) {
    if (eps[i] != 1 && eps[i] != -1)
      throw InvalidInput("incidence sign must be +1 or -1");
    const auto &f = cx.incidences[i];
    res.differentials[cx.cells[f.parent].dim].push_back(
        {f.parent, f.facet, eps[i], cx.left_class(f), cx.right_class(f)});
  }
  return res;
}

lattice::IntegerMatrix SparseMatrix::dense() const {
  lattice::IntegerMatrix m(rows, cols);
  for (const auto &[i, j, v] : entries)
    m(i, j) += static_cast<long>(v);
  return m;
}

namespace {

using Row = std::vector<std::pair<std::size_t, std::int64_t>>;

struct Overflow {};

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r))
    throw Overflow{};
  return r;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r))
    throw Overflow{};
  return r;
}

// r ← α r − β p, both sorted by column
Row combine(const Row &r, std::int64_t alpha, const Row &p, std::int64_t beta) {
  Row out;
  out.reserve(r.size() + p.size());
  std::size_t i = 0, j = 0;
  while (i < r.size() || j < p.size()) {
    if (j == p.size() || (i < r.size() && r[i].first < p[j].first)) {
      out.push_back({r[i].first, checked_mul(alpha, r[i].second)});
      ++i;
    } else if (i == r.size() || p[j].first < r[i].first) {
      out.push_back({p[j].first, checked_sub(0, checked_mul(beta, p[j].second))});
      ++j;
    } else {
      std::int64_t v = checked_sub(checked_mul(alpha, r[i].second), checked_mul(beta, p[j].second));
      if (v != 0)
        out.push_back({r[i].first, v});
      ++i;
      ++j;
    }
  }
  std::int64_t g = 0;
  for (const auto &e : out)
    g = std::gcd(g, e.second);
  if (g > 1)
    for (auto &e : out)
      e.second /= g;
  return out;
}

std::size_t echelon_rank(const SparseMatrix &m) {
  std::map<std::pair<std::size_t, std::size_t>, std::int64_t> acc;
  for (const auto &[i, j, v] : m.entries)
    acc[{i, j}] += v;
  std::vector<Row> rows(m.rows);
  for (const auto &[key, v] : acc)
    if (v != 0)
      rows[key.first].push_back({key.second, v});
  std::stable_sort(rows.begin(), rows.end(), [](const Row &a, const Row &b) { return a.size() < b.size(); });
  std::vector<Row> pivots;
  std::vector<long> pivot_of(m.cols, -1);
  for (auto &r : rows) {
    while (!r.empty()) {
      long p = pivot_of[r.front().first];
      if (p < 0) {
        pivot_of[r.front().first] = static_cast<long>(pivots.size());
        pivots.push_back(std::move(r));
        break;
      }
      const Row &P = pivots[p];
      std::int64_t a = P.front().second, b = r.front().second;
      std::int64_t g = std::gcd(a, b);
      r = combine(r, a / g, P, b / g);
    }
  }
  return pivots.size();
}

} // namespace

std::size_t sparse_rank(const SparseMatrix &m) {
  if (m.rows == 0 || m.cols == 0)
    return 0;
  try {
    return echelon_rank(m);
  } catch (const Overflow &) {
    return lattice::rank(m.dense());
  }
}

SparseMatrix multiply(const SparseMatrix &a, const SparseMatrix &b) {
  if (a.cols != b.rows)
    throw std::invalid_argument("matrix dimensions do not agree");
  std::vector<std::vector<std::pair<std::size_t, std::int64_t>>> a_col(a.cols);
  for (const auto &[i, j, v] : a.entries)
    a_col[j].push_back({i, v});
  std::map<std::pair<std::size_t, std::size_t>, std::int64_t> acc;
  for (const auto &[k, j, v] : b.entries)
    for (const auto &[i, u] : a_col[k])
      acc[{i, j}] += u * v;
  SparseMatrix out{a.rows, b.cols, {}};
  for (const auto &[key, v] : acc)
    if (v != 0)
      out.entries.emplace_back(key.first, key.second, v);
  return out;
}

namespace {

template <class Fn> void for_each_below(const Divisor &top, Fn &&fn) {
  Divisor x(top.size(), 0);
  while (true) {
    fn(x);
    std::size_t i = 0;
    while (i < x.size() && x[i] == top[i])
      x[i++] = 0;
    if (i == x.size())
      return;
    ++x[i];
  }
}

} // namespace

GradedPiece graded_piece(const BimoduleResolution &res, const quiver::PathOracle &oracle, int s, int t,
                         const Divisor &degree) {
  const auto &cx = res.complex;
  GradedPiece piece;
  piece.s = s;
  piece.t = t;
  piece.degree = degree;
  piece.algebra_dim = oracle.realizable(s, t, degree) ? 1 : 0;
  piece.bases.resize(res.generators.size());
  for (std::size_t k = 0; k < res.generators.size(); ++k) {
    for (int id : res.generators[k]) {
      const auto &cell = cx.cells[id];
      if (!quiver::leq(cell.divisor, degree))
        continue;
      const Divisor rest = quiver::subtract(degree, cell.divisor);
      for_each_below(rest, [&](const Divisor &right) {
        if (!oracle.realizable(s, cell.tail, right))
          return;
        Divisor left = quiver::subtract(rest, right);
        if (oracle.realizable(cell.head, t, left))
          piece.bases[k].push_back({id, std::move(left), right});
      });
    }
    std::sort(piece.bases[k].begin(), piece.bases[k].end());
  }
  piece.matrices.resize(res.generators.size());
  for (std::size_t k = 1; k < res.generators.size(); ++k) {
    const auto &src = piece.bases[k], &dst = piece.bases[k - 1];
    SparseMatrix &m = piece.matrices[k];
    m.rows = dst.size();
    m.cols = src.size();
    for (std::size_t j = 0; j < src.size(); ++j) {
      std::map<std::size_t, std::int64_t> column;
      for (int inc : cx.facets_of[src[j].cell]) {
        const auto &f = cx.incidences[inc];
        BasisElement target{f.facet, quiver::add(src[j].left, f.left), quiver::add(src[j].right, f.right)};
        auto it = std::lower_bound(dst.begin(), dst.end(), target);
        if (it == dst.end() || !(*it == target))
          throw std::logic_error("differential leaves the graded piece");
        column[it - dst.begin()] += res.signs[inc];
      }
      for (const auto &[i, v] : column)
        if (v != 0)
          m.entries.emplace_back(i, j, v);
    }
  }
  return piece;
}

GradedPiece graded_piece(const BimoduleResolution &res, int s, int t, const Divisor &degree) {
  quiver::PathOracle oracle(res.complex.quiver);
  return graded_piece(res, oracle, s, t, degree);
}

SquareZeroReport verify_square_zero(const BimoduleResolution &res) {
  const auto &cx = res.complex;
  SquareZeroReport rep;
  for (std::size_t k = 1; k < res.generators.size(); ++k)
    for (int id : res.generators[k]) {
      if (k == 1) {
        int sum = 0;
        for (int inc : cx.facets_of[id])
          sum += res.signs[inc];
        ++rep.checked;
        if (sum != 0)
          rep.problems.push_back("mu o d1 nonzero on " + cx.describe(id));
        continue;
      }
      std::map<std::tuple<int, Divisor, Divisor>, int> sum;
      for (int i1 : cx.facets_of[id]) {
        const auto &f1 = cx.incidences[i1];
        for (int i2 : cx.facets_of[f1.facet]) {
          const auto &f2 = cx.incidences[i2];
          sum[{f2.facet, quiver::add(f1.left, f2.left), quiver::add(f1.right, f2.right)}] +=
              res.signs[i1] * res.signs[i2];
        }
      }
      for (const auto &[key, v] : sum) {
        ++rep.checked;
        if (v != 0)
          rep.problems.push_back("d o d nonzero on " + cx.describe(id) + " at " + cx.describe(std::get<0>(key)) +
                                 " with left " + quiver::monomial(std::get<1>(key)) + " right " +
                                 quiver::monomial(std::get<2>(key)));
      }
    }
  return rep;
}

MinimalityReport verify_minimality(const BimoduleResolution &res) {
  MinimalityReport rep;
  for (const auto &dk : res.differentials)
    for (const auto &e : dk)
      if (quiver::is_zero(e.left.divisor) && quiver::is_zero(e.right.divisor))
        rep.violations.push_back(e);
  return rep;
}

std::size_t ExactnessReport::nonzero_degrees() const {
  return std::count_if(degrees.begin(), degrees.end(), [](const DegreeReport &d) {
    return std::any_of(d.dims.begin(), d.dims.end(), [](std::size_t x) { return x > 0; });
  });
}

ExactnessReport verify_exactness(const BimoduleResolution &res, int bound, int jobs) {
  if (bound < 0)
    throw InvalidInput("degree bound must be nonnegative");
  const auto &Q = res.complex.quiver;
  const int V = Q.vertex_count;
  std::vector<Divisor> degrees;
  for_each_below(quiver::scaled_ones(Q.d, bound), [&](const Divisor &x) { degrees.push_back(x); });

  ExactnessReport rep;
  rep.bound = bound;
  rep.degrees.resize(degrees.size() * V * V);
  quiver::PathOracle oracle(Q);
  const std::size_t n = res.length();
  parallel_for(rep.degrees.size(), jobs, [&](std::size_t task) {
    const int s = static_cast<int>(task / (degrees.size() * V));
    const int t = static_cast<int>(task / degrees.size() % V);
    GradedPiece piece = graded_piece(res, oracle, s, t, degrees[task % degrees.size()]);
    DegreeReport &d = rep.degrees[task];
    d.s = s;
    d.t = t;
    d.degree = piece.degree;
    d.algebra_dim = piece.algebra_dim;
    for (const auto &b : piece.bases)
      d.dims.push_back(b.size());
    d.ranks.assign(n + 2, 0);
    d.ranks[0] = d.dims[0] > 0 && piece.algebra_dim > 0 ? 1 : 0;
    for (std::size_t k = 1; k <= n; ++k)
      d.ranks[k] = sparse_rank(piece.matrices[k]);
    if (n >= 1) {
      std::vector<std::int64_t> column_sum(piece.matrices[1].cols, 0);
      for (const auto &[i, j, v] : piece.matrices[1].entries)
        column_sum[j] += v;
      if (std::any_of(column_sum.begin(), column_sum.end(), [](std::int64_t v) { return v != 0; }))
        d.square_zero = false;
    }
    for (std::size_t k = 2; k <= n; ++k)
      if (!multiply(piece.matrices[k - 1], piece.matrices[k]).entries.empty())
        d.square_zero = false;
    d.exact = d.square_zero && d.ranks[0] == d.algebra_dim;
    for (std::size_t k = 0; k <= n; ++k)
      if (d.dims[k] != d.ranks[k] + d.ranks[k + 1])
        d.exact = false;
    for (std::size_t k = 0; k <= n; ++k)
      d.euler += (k % 2 == 0 ? 1L : -1L) * static_cast<long>(d.dims[k]);
    d.ranks.pop_back();
  });
  for (const auto &d : rep.degrees) {
    if (!d.exact)
      ++rep.failures;
    if (!d.square_zero)
      rep.square_zero = false;
    if (d.exact && d.euler != static_cast<long>(d.algebra_dim))
      rep.euler = false;
  }
  return rep;
}

McKaySignReport mckay_sign_crosscheck(const toric::AbelianGroupData &G) {
  auto cx = cells::mckay_complex(G);
  if (!cx.explicit_signs)
    throw std::logic_error("McKay complex without its closed-form incidence function");
  auto res = build_resolution(cx, *cx.explicit_signs);
  auto data = toric::mckay_toric_data(G);

  std::map<std::vector<long>, int> character_index;
  for (std::size_t c = 0; c < data.characters.size(); ++c)
    character_index[data.characters[c]] = static_cast<int>(c);
  auto plus = [&](int c, int i) {
    std::vector<long> x = data.characters[c];
    for (std::size_t g = 0; g < G.generators.size(); ++g) {
      const auto &gen = G.generators[g];
      x[g] = ((x[g] + gen.weights[i]) % gen.order + gen.order) % gen.order;
    }
    return character_index.at(x);
  };

  using Key = std::tuple<int, std::vector<int>, int, std::vector<int>, int, Divisor, Divisor>;
  const std::size_t n = G.n;
  auto unit = [&](int i) {
    Divisor e(n, 0);
    e[i] = 1;
    return e;
  };
  std::multiset<Key> expected, actual;
  const int V = static_cast<int>(data.characters.size());
  for (std::size_t k = 1; k <= n; ++k)
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      if (static_cast<std::size_t>(__builtin_popcount(mask)) != k)
        continue;
      std::vector<int> S;
      for (std::size_t i = 0; i < n; ++i)
        if (mask >> i & 1)
          S.push_back(static_cast<int>(i));
      for (int c = 0; c < V; ++c)
        for (std::size_t nu = 1; nu <= k; ++nu) {
          const int i = S[nu - 1];
          std::vector<int> rest = S;
          rest.erase(rest.begin() + (nu - 1));
          const int sign = nu % 2 == 0 ? 1 : -1;
          expected.insert({c, S, c, rest, sign, unit(i), Divisor(n, 0)});
          expected.insert({c, S, plus(c, i), rest, -sign, Divisor(n, 0), unit(i)});
        }
    }

  McKaySignReport rep;
  for (std::size_t k = 1; k < res.differentials.size(); ++k)
    for (const auto &e : res.differentials[k]) {
      const auto &src = cx.cells[e.source], &dst = cx.cells[e.target];
      actual.insert({src.character, src.subset, dst.character, dst.subset, e.sign, e.left.divisor,
                     e.right.divisor});
      int head = src.character;
      for (int i : src.subset)
        head = plus(head, i);
      if (e.left.head != head || e.right.tail != src.character)
        rep.mismatches.push_back("entry of " + cx.describe(e.source) + " has wrong endpoints");
      ++rep.entries;
    }
  std::vector<Key> missing, extra;
  std::set_difference(expected.begin(), expected.end(), actual.begin(), actual.end(), std::back_inserter(missing));
  std::set_difference(actual.begin(), actual.end(), expected.begin(), expected.end(), std::back_inserter(extra));
  auto show = [&](const Key &key) {
    std::string s = "chi" + std::to_string(std::get<0>(key)) + "{";
    for (int i : std::get<1>(key))
      s += std::to_string(i + 1);
    s += "} -> chi" + std::to_string(std::get<2>(key)) + "{";
    for (int i : std::get<3>(key))
      s += std::to_string(i + 1);
    return s + "} sign " + std::to_string(std::get<4>(key));
  };
  for (const auto &k : missing)
    rep.mismatches.push_back("missing " + show(k));
  for (const auto &k : extra)
    rep.mismatches.push_back("unexpected " + show(k));

  auto sol = cells::solve_incidence(cx);
  rep.delta_exists = sol.feasible() && cells::global_sign_change(cx, *cx.explicit_signs, *sol.signs).has_value();
  return rep;
}

} // namespace toricell::resolution
