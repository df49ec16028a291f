#include "toricell/superpotential.hpp"
#include "toricell/parallel.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace toricell::superpotential {

using quiver::make_path;
using quiver::trivial_path;

CyclicCycle canonical_cycle(const QuiverOfSections &Q, const std::vector<int> &arrows) {
  if (arrows.empty())
    throw std::invalid_argument("empty cycle");
  const std::size_t L = arrows.size();
  Divisor div(Q.d, 0);
  for (std::size_t k = 0; k < L; ++k) {
    const auto &a = Q.arrows.at(arrows[k]);
    if (a.head != Q.arrows.at(arrows[(k + 1) % L]).tail)
      throw std::invalid_argument("arrows do not form a cycle");
    div = quiver::add(div, a.label);
  }
  std::vector<int> best = arrows;
  for (std::size_t s = 1; s < L; ++s) {
    std::vector<int> rot(arrows.begin() + s, arrows.end());
    rot.insert(rot.end(), arrows.begin(), arrows.begin() + s);
    if (rot < best)
      best = std::move(rot);
  }
  return {best, div};
}

bool Superpotential::contains(const CyclicCycle &c) const { return std::binary_search(terms.begin(), terms.end(), c); }

Superpotential anticanonical_cycles(const QuiverOfSections &Q) {
  const Divisor one = quiver::ones(Q.d);
  std::set<CyclicCycle> found;
  for (int i = 0; i < Q.vertex_count; ++i)
    quiver::for_each_path_from(Q, i, one, [&](const std::vector<int> &arrows, int head, const Divisor &div) {
      if (head == i && !arrows.empty() && div == one)
        found.insert(canonical_cycle(Q, arrows));
    });
  return {std::vector<CyclicCycle>(found.begin(), found.end())};
}

Superpotential anticanonical_cycles(const toric::GorensteinToricVariety &X, const QuiverOfSections &Q) {
  if (!X.is_gorenstein())
    throw InvalidInput("superpotential requires a Gorenstein variety");
  return anticanonical_cycles(Q);
}

std::vector<Path> derivative(const QuiverOfSections &Q, const Superpotential &W, const Path &q) {
  std::set<Path> out;
  for (const auto &t : W.terms) {
    const auto &a = t.arrows;
    const std::size_t L = a.size();
    if (q.trivial()) {
      for (std::size_t k = 0; k < L; ++k)
        if (Q.arrows[a[k]].tail == q.tail) {
          std::vector<int> rot(a.begin() + k, a.end());
          rot.insert(rot.end(), a.begin(), a.begin() + k);
          out.insert(make_path(Q, q.tail, rot));
        }
      continue;
    }
    if (q.arrows.size() > L)
      continue;
    auto it = std::find(a.begin(), a.end(), q.arrows.front());
    if (it == a.end())
      continue;
    std::size_t k = it - a.begin();
    bool match = true;
    for (std::size_t m = 0; m < q.arrows.size() && match; ++m)
      match = a[(k + m) % L] == q.arrows[m];
    if (!match)
      continue;
    std::vector<int> rest;
    for (std::size_t m = q.arrows.size(); m < L; ++m)
      rest.push_back(a[(k + m) % L]);
    out.insert(rest.empty() ? trivial_path(Q, q.head) : make_path(Q, q.head, rest));
  }
  return {out.begin(), out.end()};
}

std::vector<Path> derivative_by_enumeration(const QuiverOfSections &Q, const Path &q) {
  const Divisor one = quiver::ones(Q.d);
  if (!quiver::leq(q.divisor, one))
    return {};
  return quiver::enumerate_paths(Q, q.head, q.tail, quiver::subtract(one, q.divisor), true);
}

RelationSet relations(const QuiverOfSections &Q, const Superpotential &W) {
  std::set<Path> candidates;
  for (int i = 0; i < Q.vertex_count; ++i)
    candidates.insert(trivial_path(Q, i));
  for (const auto &t : W.terms) {
    const auto &a = t.arrows;
    const std::size_t L = a.size();
    for (std::size_t s = 0; s < L; ++s) {
      std::vector<int> sub;
      for (std::size_t len = 1; len <= L; ++len) {
        sub.push_back(a[(s + len - 1) % L]);
        candidates.insert(make_path(Q, Q.arrows[a[s]].tail, sub));
      }
    }
  }
  RelationSet out;
  std::map<std::pair<Path, Path>, std::vector<Path>> rels;
  for (const auto &q : candidates) {
    auto D = derivative(Q, W, q);
    if (D.size() != 2)
      continue;
    const Path &p = D[0], &r = D[1];
    if (p.trivial() || r.trivial())
      continue;
    if (p.arrows.front() == r.arrows.front() || p.arrows.back() == r.arrows.back())
      continue;
    out.P.push_back(q);
    rels[{p, r}].push_back(q);
  }
  for (auto &[key, wit] : rels)
    out.generators.push_back({key.first, key.second, wit});
  return out;
}

std::vector<Binomial> as_binomials(const std::vector<FRelation> &rels) {
  std::vector<Binomial> out;
  for (const auto &r : rels)
    out.push_back({r.plus, r.minus});
  return out;
}

RewriteSystem::RewriteSystem(const QuiverOfSections &Q, const std::vector<Binomial> &rules)
    : Q_(&Q), by_first_arrow_(Q.arrows.size()) {
  for (const auto &b : rules) {
    if (b.plus.path_class() != b.minus.path_class())
      throw std::logic_error("binomial sides are not parallel with equal divisor");
    for (int dir = 0; dir < 2; ++dir) {
      const Path &l = dir ? b.minus : b.plus;
      const Path &r = dir ? b.plus : b.minus;
      if (l.trivial())
        continue;
      by_first_arrow_[l.arrows.front()].push_back(static_cast<int>(rules_.size()));
      rules_.push_back({l.arrows, r.arrows});
    }
  }
}

std::vector<std::vector<int>> RewriteSystem::neighbours(const std::vector<int> &arrows) const {
  std::vector<std::vector<int>> out;
  for (std::size_t k = 0; k < arrows.size(); ++k)
    for (int idx : by_first_arrow_[arrows[k]]) {
      const Rule &rule = rules_[idx];
      if (k + rule.lhs.size() > arrows.size())
        continue;
      if (!std::equal(rule.lhs.begin(), rule.lhs.end(), arrows.begin() + k))
        continue;
      std::vector<int> next(arrows.begin(), arrows.begin() + k);
      next.insert(next.end(), rule.rhs.begin(), rule.rhs.end());
      next.insert(next.end(), arrows.begin() + k + rule.lhs.size(), arrows.end());
      out.push_back(std::move(next));
    }
  return out;
}

std::vector<Bucket> path_buckets(const QuiverOfSections &Q, int bound, int jobs) {
  const Divisor budget = quiver::scaled_ones(Q.d, bound);
  std::vector<std::vector<Bucket>> per_tail(Q.vertex_count);
  parallel_for(Q.vertex_count, jobs, [&](std::size_t i) {
    std::map<std::pair<int, Divisor>, std::vector<std::vector<int>>> groups;
    quiver::for_each_path_from(Q, static_cast<int>(i), budget,
                               [&](const std::vector<int> &arrows, int head, const Divisor &div) {
                                 groups[{head, div}].push_back(arrows);
                               });
    for (auto &[key, paths] : groups) {
      std::sort(paths.begin(), paths.end());
      per_tail[i].push_back({static_cast<int>(i), key.first, key.second, std::move(paths)});
    }
  });
  std::vector<Bucket> all;
  for (auto &v : per_tail)
    for (auto &b : v)
      all.push_back(std::move(b));
  std::sort(all.begin(), all.end(), [](const Bucket &x, const Bucket &y) {
    int dx = quiver::total_degree(x.divisor), dy = quiver::total_degree(y.divisor);
    if (dx != dy)
      return dx < dy;
    if (x.tail != y.tail)
      return x.tail < y.tail;
    if (x.head != y.head)
      return x.head < y.head;
    return x.divisor > y.divisor;
  });
  return all;
}

std::vector<std::vector<int>> class_representatives(const Bucket &b, const RewriteSystem &rs) {
  const std::size_t n = b.paths.size();
  std::unordered_map<std::vector<int>, std::size_t, quiver::VectorHash> index;
  for (std::size_t k = 0; k < n; ++k)
    index.emplace(b.paths[k], k);
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (std::size_t k = 0; k < n; ++k)
    for (const auto &nb : rs.neighbours(b.paths[k])) {
      auto it = index.find(nb);
      if (it == index.end())
        throw std::logic_error("rewrite left its path class");
      std::size_t x = find(k), y = find(it->second);
      if (x != y)
        parent[std::max(x, y)] = std::min(x, y);
    }
  std::vector<std::vector<int>> reps;
  for (std::size_t k = 0; k < n; ++k)
    if (find(k) == k)
      reps.push_back(b.paths[k]);
  return reps;
}

std::vector<Binomial> minimal_relations(const QuiverOfSections &Q, int bound) {
  auto buckets = path_buckets(Q, bound);
  std::vector<Binomial> gens;
  std::size_t pos = 0;
  while (pos < buckets.size()) {
    int deg = quiver::total_degree(buckets[pos].divisor);
    RewriteSystem rs(Q, gens);
    for (; pos < buckets.size() && quiver::total_degree(buckets[pos].divisor) == deg; ++pos) {
      const Bucket &b = buckets[pos];
      auto reps = class_representatives(b, rs);
      for (std::size_t k = 1; k < reps.size(); ++k)
        gens.push_back({make_path(Q, b.tail, reps[0]), make_path(Q, b.tail, reps[k])});
    }
  }
  return gens;
}

ConsistencyReport consistency(const QuiverOfSections &Q, const RelationSet &rels, int bound, int jobs) {
  if (bound < 1)
    throw InvalidInput("consistency bound must be at least 1");
  ConsistencyReport rep;
  rep.bound = bound;
  for (const auto &a : Q.arrows)
    if (std::any_of(a.label.begin(), a.label.end(), [](int x) { return x > 1; }))
      rep.quick_reject.push_back(a.id);

  auto buckets = path_buckets(Q, bound, jobs);
  RewriteSystem rs(Q, as_binomials(rels.generators));
  rep.buckets = buckets.size();
  for (const auto &b : buckets)
    rep.paths += b.paths.size();

  std::atomic<std::size_t> first_bad{buckets.size()};
  parallel_for(buckets.size(), jobs, [&](std::size_t k) {
    if (k > first_bad.load())
      return;
    if (class_representatives(buckets[k], rs).size() > 1) {
      std::size_t cur = first_bad.load();
      while (k < cur && !first_bad.compare_exchange_weak(cur, k)) {
      }
    }
  });
  if (first_bad < buckets.size()) {
    const Bucket &b = buckets[first_bad];
    auto reps = class_representatives(b, rs);
    rep.witness = std::make_pair(make_path(Q, b.tail, reps[0]), make_path(Q, b.tail, reps[1]));
  }
  rep.consistent = rep.quick_reject.empty() && !rep.witness;
  return rep;
}

std::vector<int> arrow_coverage(const QuiverOfSections &Q, const Superpotential &W) {
  std::vector<char> seen(Q.arrows.size(), 0);
  for (const auto &t : W.terms)
    for (int a : t.arrows)
      seen[a] = 1;
  std::vector<int> missing;
  for (std::size_t a = 0; a < seen.size(); ++a)
    if (!seen[a])
      missing.push_back(static_cast<int>(a));
  return missing;
}

} // namespace toricell::superpotential
