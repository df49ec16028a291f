#include "toricell/toric.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>

namespace toricell::toric {

WeilClass GorensteinToricVariety::weil_class(const std::vector<long> &divisor) const {
  if (divisor.size() != d())
    throw InvalidInput("divisor length does not match the number of rays");
  return {divisor, deg_data.canonical(divisor)};
}

const lattice::SemigroupFibers &GorensteinToricVariety::fibers() const {
  if (!fibers_)
    fibers_ = std::make_shared<lattice::SemigroupFibers>(embedding);
  return *fibers_;
}

GorensteinToricVariety build_variety(const std::vector<std::vector<long>> &rays) {
  if (rays.empty())
    throw InvalidInput("no rays given");
  const std::size_t n = rays.front().size();
  std::vector<IntVector> big;
  for (const auto &r : rays) {
    if (r.size() != n)
      throw InvalidInput("rays have inconsistent dimensions");
    IntVector v = lattice::to_int_vector(r);
    if (lattice::is_zero(v))
      throw InvalidInput("zero ray");
    if (lattice::primitive(v) != v)
      throw InvalidInput("ray is not primitive");
    big.push_back(v);
  }
  std::set<IntVector> distinct(big.begin(), big.end());
  if (distinct.size() != big.size())
    throw InvalidInput("duplicate rays");

  GorensteinToricVariety X;
  X.n = n;
  X.rays = rays;
  X.embedding = IntegerMatrix::from_rows(big, n);
  if (lattice::rank(X.embedding) != n)
    throw InvalidInput("cone is not full-dimensional");
  auto dual = lattice::dual_cone_rays(big, n);
  if (dual.rays.empty() || lattice::rank(IntegerMatrix::from_rows(dual.rays, n)) != n)
    throw InvalidInput("cone is not strongly convex");
  auto extremal = lattice::dual_cone_rays(dual.rays, n).rays;
  for (const auto &v : big)
    if (std::find(extremal.begin(), extremal.end(), v) == extremal.end())
      throw InvalidInput("ray is not extremal in the cone");

  X.deg_data = lattice::cokernel_form(X.embedding);
  IntVector ones(X.d(), lattice::Int(1));
  if (auto u = lattice::solve_integer(X.embedding, ones))
    X.gorenstein_covector = lattice::to_long_vector(*u);
  return X;
}

Collection make_collection(const GorensteinToricVariety &X, const std::vector<std::vector<long>> &divisors) {
  Collection E;
  for (const auto &D : divisors)
    E.classes.push_back(X.weil_class(D));
  if (E.classes.empty())
    throw InvalidInput("empty collection");
  if (!lattice::is_zero(E.classes.front().canonical))
    throw InvalidInput("first class of the collection must be trivial");
  for (std::size_t i = 0; i < E.size(); ++i)
    for (std::size_t j = i + 1; j < E.size(); ++j)
      if (E.classes[i] == E.classes[j])
        throw InvalidInput("collection classes are not pairwise distinct");
  return E;
}

std::vector<std::vector<long>> hom_sections(const GorensteinToricVariety &X, const std::vector<long> &difference) {
  return X.fibers().generators(lattice::to_int_vector(difference));
}

bool is_special_linear(const AbelianGroupData &G) {
  for (const auto &g : G.generators) {
    long s = std::accumulate(g.weights.begin(), g.weights.end(), 0L);
    if (((s % g.order) + g.order) % g.order != 0)
      return false;
  }
  return true;
}

namespace {

void validate(const AbelianGroupData &G) {
  if (G.n == 0)
    throw InvalidInput("group dimension must be positive");
  for (const auto &g : G.generators) {
    if (g.order < 2)
      throw InvalidInput("generator order must be at least 2");
    if (g.weights.size() != G.n)
      throw InvalidInput("generator weight vector has wrong length");
  }
}

long mod(long a, long m) { return ((a % m) + m) % m; }

} // namespace

std::optional<std::vector<long>> find_quasireflection(const AbelianGroupData &G) {
  validate(G);
  long L = 1;
  for (const auto &g : G.generators)
    L = std::lcm(L, g.order);
  std::set<std::vector<long>> seen;
  std::vector<long> c(G.generators.size(), 0);
  while (true) {
    std::vector<long> e(G.n, 0);
    for (std::size_t k = 0; k < G.generators.size(); ++k)
      for (std::size_t i = 0; i < G.n; ++i)
        e[i] = mod(e[i] + c[k] * G.generators[k].weights[i] * (L / G.generators[k].order), L);
    if (seen.insert(e).second) {
      std::size_t nonzero = std::count_if(e.begin(), e.end(), [](long x) { return x != 0; });
      if (nonzero == 1)
        return e;
    }
    std::size_t pos = 0;
    while (pos < c.size()) {
      if (++c[pos] < G.generators[pos].order)
        break;
      c[pos] = 0;
      ++pos;
    }
    if (pos == c.size())
      break;
  }
  return std::nullopt;
}

McKayData mckay_toric_data(const AbelianGroupData &G) {
  validate(G);
  if (find_quasireflection(G))
    throw InvalidInput("group contains a quasireflection");
  const std::size_t n = G.n, s = G.generators.size();

  // M = {u : Σ w_{k,i} u_i ≡ 0 mod m_k}
  IntegerMatrix A(s, n + s);
  for (std::size_t k = 0; k < s; ++k) {
    for (std::size_t i = 0; i < n; ++i)
      A(k, i) = G.generators[k].weights[i];
    A(k, n + k) = -G.generators[k].order;
  }
  std::vector<IntVector> gens;
  if (s == 0) {
    for (std::size_t i = 0; i < n; ++i) {
      IntVector e(n, lattice::Int(0));
      e[i] = 1;
      gens.push_back(e);
    }
  } else {
    for (const auto &v : lattice::kernel_basis(A))
      gens.emplace_back(v.begin(), v.begin() + n);
  }
  std::vector<IntVector> basis = lattice::hermite_basis(gens, n);
  if (basis.size() != n)
    throw std::logic_error("character kernel has wrong rank");
  IntegerMatrix Bm = IntegerMatrix::from_columns(basis, n);
  std::vector<std::vector<long>> rays;
  for (std::size_t i = 0; i < n; ++i)
    rays.push_back(lattice::to_long_vector(Bm.row(i)));

  McKayData out;
  out.X = build_variety(rays);
  out.special_linear = is_special_linear(G);

  auto character = [&](const std::vector<long> &u) {
    std::vector<long> ch;
    for (const auto &g : G.generators) {
      long v = 0;
      for (std::size_t i = 0; i < n; ++i)
        v += g.weights[i] * u[i];
      ch.push_back(mod(v, g.order));
    }
    return ch;
  };

  // breadth-first closure of the classes under adding χ_i
  std::map<std::vector<long>, std::vector<long>> reps;
  std::queue<std::vector<long>> todo;
  std::vector<long> zero(n, 0);
  reps[character(zero)] = zero;
  todo.push(zero);
  while (!todo.empty()) {
    auto u = todo.front();
    todo.pop();
    for (std::size_t i = 0; i < n; ++i) {
      auto w = u;
      w[i] += 1;
      auto ch = character(w);
      if (!reps.count(ch)) {
        reps[ch] = w;
        todo.push(w);
      }
    }
  }
  std::vector<std::vector<long>> divisors;
  for (const auto &[ch, u] : reps) {
    out.characters.push_back(ch);
    divisors.push_back(u);
  }
  out.collection = make_collection(out.X, divisors);
  if (out.X.deg_data.order() != lattice::Int(static_cast<long>(out.collection.size())))
    throw std::logic_error("class group order does not match the number of characters");

  std::map<std::vector<long>, std::size_t> index;
  for (std::size_t v = 0; v < out.characters.size(); ++v)
    index[out.characters[v]] = v;
  out.shift.assign(out.characters.size(), std::vector<std::size_t>(n));
  for (std::size_t v = 0; v < out.characters.size(); ++v)
    for (std::size_t i = 0; i < n; ++i) {
      auto u = divisors[v];
      u[i] += 1;
      out.shift[v][i] = index.at(character(u));
    }
  return out;
}

} // namespace toricell::toric
