#include "toricell/quiver.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>

namespace toricell::quiver {

std::size_t VectorHash::operator()(const std::vector<int> &v) const noexcept {
  std::size_t h = v.size();
  for (int x : v)
    h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

Divisor add(const Divisor &a, const Divisor &b) {
  Divisor c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    c[i] = a[i] + b[i];
  return c;
}

Divisor subtract(const Divisor &a, const Divisor &b) {
  Divisor c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    c[i] = a[i] - b[i];
  return c;
}

bool leq(const Divisor &a, const Divisor &b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i])
      return false;
  return true;
}

bool is_zero(const Divisor &a) {
  return std::all_of(a.begin(), a.end(), [](int x) { return x == 0; });
}

int total_degree(const Divisor &a) { return std::accumulate(a.begin(), a.end(), 0); }

Divisor ones(std::size_t d) { return Divisor(d, 1); }

Divisor scaled_ones(std::size_t d, int k) { return Divisor(d, k); }

std::string monomial(const Divisor &a) {
  std::string s;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0)
      continue;
    if (!s.empty())
      s += "*";
    s += "x" + std::to_string(i + 1);
    if (a[i] != 1)
      s += "^" + std::to_string(a[i]);
  }
  return s.empty() ? "1" : s;
}

QuiverOfSections make_quiver(int vertex_count, std::size_t d, std::vector<Arrow> arrows) {
  QuiverOfSections Q;
  Q.vertex_count = vertex_count;
  Q.d = d;
  Q.out_arrows.assign(vertex_count, {});
  Q.in_arrows.assign(vertex_count, {});
  for (std::size_t k = 0; k < arrows.size(); ++k) {
    Arrow &a = arrows[k];
    if (a.tail < 0 || a.tail >= vertex_count || a.head < 0 || a.head >= vertex_count)
      throw InvalidInput("arrow endpoint out of range");
    if (a.label.size() != d)
      throw InvalidInput("arrow label has wrong length");
    if (is_zero(a.label) || std::any_of(a.label.begin(), a.label.end(), [](int x) { return x < 0; }))
      throw InvalidInput("arrow labels must be nonzero and nonnegative");
    a.id = static_cast<int>(k);
    Q.out_arrows[a.tail].push_back(a.id);
    Q.in_arrows[a.head].push_back(a.id);
  }
  Q.arrows = std::move(arrows);
  return Q;
}

QuiverOfSections reorder_arrows(const QuiverOfSections &Q, const std::vector<int> &order) {
  if (order.size() != Q.arrows.size())
    throw InvalidInput("arrow order has wrong length");
  std::vector<int> sorted = order;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i)
    if (sorted[i] != static_cast<int>(i))
      throw InvalidInput("arrow order is not a permutation");
  std::vector<Arrow> arrows;
  for (int id : order)
    arrows.push_back(Q.arrows[id]);
  return make_quiver(Q.vertex_count, Q.d, std::move(arrows));
}

bool arrow_order_less(const Arrow &a, const Arrow &b, int vertex_count) {
  if (a.tail != b.tail)
    return a.tail < b.tail;
  int sa = ((a.head - a.tail) % vertex_count + vertex_count) % vertex_count;
  int sb = ((b.head - b.tail) % vertex_count + vertex_count) % vertex_count;
  if (sa != sb)
    return sa < sb;
  int da = total_degree(a.label), db = total_degree(b.label);
  if (da != db)
    return da < db;
  return a.label > b.label;
}

QuiverOfSections build_quiver(const toric::GorensteinToricVariety &X, const toric::Collection &E) {
  const int m = static_cast<int>(E.size());
  const std::size_t d = X.d();
  std::vector<Arrow> arrows;
  auto to_div = [](const std::vector<long> &v) { return Divisor(v.begin(), v.end()); };

  if (m == 1) {
    for (const auto &h : X.fibers().hilbert_basis_image())
      arrows.push_back({0, 0, 0, to_div(h)});
  } else {
    std::vector<std::vector<std::vector<Divisor>>> gens(m, std::vector<std::vector<Divisor>>(m));
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        if (i == j)
          continue;
        std::vector<long> diff(d);
        for (std::size_t r = 0; r < d; ++r)
          diff[r] = E.classes[j].representative[r] - E.classes[i].representative[r];
        for (const auto &s : toric::hom_sections(X, diff))
          gens[i][j].push_back(to_div(s));
      }
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        if (i == j)
          continue;
        std::set<Divisor> composites;
        for (int k = 0; k < m; ++k) {
          if (k == i || k == j)
            continue;
          for (const auto &u : gens[i][k])
            for (const auto &w : gens[k][j])
              composites.insert(add(u, w));
        }
        for (const auto &s : gens[i][j])
          if (!composites.count(s))
            arrows.push_back({0, i, j, s});
      }
  }
  std::stable_sort(arrows.begin(), arrows.end(),
                   [m](const Arrow &a, const Arrow &b) { return arrow_order_less(a, b, m); });
  return make_quiver(m, d, std::move(arrows));
}

bool is_strongly_connected(const QuiverOfSections &Q) {
  if (Q.vertex_count == 0)
    return true;
  auto reaches_all = [&](bool forward) {
    std::vector<char> seen(Q.vertex_count, 0);
    std::deque<int> todo{0};
    seen[0] = 1;
    while (!todo.empty()) {
      int v = todo.front();
      todo.pop_front();
      for (int id : forward ? Q.out_arrows[v] : Q.in_arrows[v]) {
        int w = forward ? Q.arrows[id].head : Q.arrows[id].tail;
        if (!seen[w]) {
          seen[w] = 1;
          todo.push_back(w);
        }
      }
    }
    return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
  };
  return reaches_all(true) && reaches_all(false);
}

Path trivial_path(const QuiverOfSections &Q, int vertex) { return {vertex, vertex, {}, Divisor(Q.d, 0)}; }

Path make_path(const QuiverOfSections &Q, int tail, const std::vector<int> &arrows) {
  Path p = trivial_path(Q, tail);
  for (int id : arrows) {
    const Arrow &a = Q.arrows.at(id);
    if (a.tail != p.head)
      throw InvalidInput("arrows are not composable");
    p.arrows.push_back(id);
    p.head = a.head;
    p.divisor = add(p.divisor, a.label);
  }
  return p;
}

Path concatenate(const QuiverOfSections &Q, const Path &first, const Path &second) {
  if (first.head != second.tail)
    throw std::invalid_argument("paths are not composable");
  Path p = first;
  p.arrows.insert(p.arrows.end(), second.arrows.begin(), second.arrows.end());
  p.head = second.head;
  p.divisor = add(first.divisor, second.divisor);
  (void)Q;
  return p;
}

std::string path_string(const QuiverOfSections &Q, const Path &p) {
  if (p.trivial())
    return "e" + std::to_string(p.tail);
  std::string s;
  for (auto it = p.arrows.rbegin(); it != p.arrows.rend(); ++it)
    s += Q.arrow_name(*it);
  return s;
}

Path parse_path(const QuiverOfSections &Q, const std::string &text) {
  if (!text.empty() && text[0] == 'e')
    return trivial_path(Q, std::stoi(text.substr(1)));
  std::vector<int> ids;
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (text[pos] != 'a')
      throw InvalidInput("cannot parse path: " + text);
    std::size_t end = pos + 1;
    while (end < text.size() && std::isdigit(static_cast<unsigned char>(text[end])))
      ++end;
    if (end == pos + 1)
      throw InvalidInput("cannot parse path: " + text);
    int id = std::stoi(text.substr(pos + 1, end - pos - 1)) - 1;
    if (id < 0 || id >= static_cast<int>(Q.arrows.size()))
      throw InvalidInput("arrow index out of range in: " + text);
    ids.push_back(id);
    pos = end;
  }
  std::reverse(ids.begin(), ids.end());
  if (ids.empty())
    throw InvalidInput("empty path text");
  return make_path(Q, Q.arrows[ids.front()].tail, ids);
}

void for_each_path_from(const QuiverOfSections &Q, int i, const Divisor &budget,
                        const std::function<void(const std::vector<int> &, int, const Divisor &)> &visit) {
  std::vector<int> stack;
  Divisor remaining = budget;
  Divisor used(Q.d, 0);
  std::function<void(int)> dfs = [&](int v) {
    visit(stack, v, used);
    for (int id : Q.out_arrows[v]) {
      const Arrow &a = Q.arrows[id];
      if (!leq(a.label, remaining))
        continue;
      for (std::size_t r = 0; r < Q.d; ++r) {
        remaining[r] -= a.label[r];
        used[r] += a.label[r];
      }
      stack.push_back(id);
      dfs(a.head);
      stack.pop_back();
      for (std::size_t r = 0; r < Q.d; ++r) {
        remaining[r] += a.label[r];
        used[r] -= a.label[r];
      }
    }
  };
  dfs(i);
}

std::vector<Path> enumerate_paths(const QuiverOfSections &Q, int i, int j, const Divisor &budget, bool exact) {
  std::vector<Path> out;
  for_each_path_from(Q, i, budget, [&](const std::vector<int> &arrows, int head, const Divisor &div) {
    if (head != j)
      return;
    if (exact && div != budget)
      return;
    out.push_back({i, j, arrows, div});
  });
  std::sort(out.begin(), out.end());
  return out;
}

const std::vector<char> &PathOracle::reach(int tail, const Divisor &divisor) const {
  auto key = std::make_pair(tail, divisor);
  {
    std::shared_lock lock(mutex_);
    auto it = memo_.find(key);
    if (it != memo_.end())
      return it->second;
  }
  const QuiverOfSections &Q = *Q_;
  std::vector<char> result(Q.vertex_count, 0);
  if (is_zero(divisor)) {
    result[tail] = 1;
  } else {
    for (int id : Q.out_arrows[tail]) {
      const Arrow &a = Q.arrows[id];
      if (!leq(a.label, divisor))
        continue;
      const auto &sub = reach(a.head, subtract(divisor, a.label));
      for (int v = 0; v < Q.vertex_count; ++v)
        if (sub[v])
          result[v] = 1;
    }
  }
  std::unique_lock lock(mutex_);
  return memo_.emplace(key, std::move(result)).first->second;
}

bool PathOracle::realizable(const PathClass &c) const {
  if (c.tail < 0 || c.tail >= Q_->vertex_count || c.head < 0 || c.head >= Q_->vertex_count)
    return false;
  if (std::any_of(c.divisor.begin(), c.divisor.end(), [](int x) { return x < 0; }))
    return false;
  return reach(c.tail, c.divisor)[c.head] != 0;
}

bool realizable(const QuiverOfSections &Q, const PathClass &c) { return PathOracle(Q).realizable(c); }

CoveringLift preferred_lifts(const QuiverOfSections &Q) {
  if (!is_strongly_connected(Q))
    throw InvalidInput("quiver is not strongly connected");
  CoveringLift lift;
  lift.lifts.assign(Q.vertex_count, Divisor());
  std::vector<char> seen(Q.vertex_count, 0);
  lift.lifts[0] = Divisor(Q.d, 0);
  seen[0] = 1;
  std::deque<int> todo{0};
  while (!todo.empty()) {
    int v = todo.front();
    todo.pop_front();
    std::vector<int> incident = Q.out_arrows[v];
    incident.insert(incident.end(), Q.in_arrows[v].begin(), Q.in_arrows[v].end());
    std::sort(incident.begin(), incident.end());
    for (int id : incident) {
      const Arrow &a = Q.arrows[id];
      if (a.tail == v && !seen[a.head]) {
        lift.lifts[a.head] = add(lift.lifts[v], a.label);
        seen[a.head] = 1;
        lift.tree_arrows.push_back(id);
        todo.push_back(a.head);
      } else if (a.head == v && !seen[a.tail]) {
        lift.lifts[a.tail] = subtract(lift.lifts[v], a.label);
        seen[a.tail] = 1;
        lift.tree_arrows.push_back(id);
        todo.push_back(a.tail);
      }
    }
  }
  std::sort(lift.tree_arrows.begin(), lift.tree_arrows.end());
  return lift;
}

std::string to_dot(const QuiverOfSections &Q) {
  std::ostringstream os;
  os << "digraph Q {\n";
  for (int v = 0; v < Q.vertex_count; ++v)
    os << "  v" << v << " [label=\"" << v << "\"];\n";
  for (const auto &a : Q.arrows)
    os << "  v" << a.tail << " -> v" << a.head << " [label=\"" << Q.arrow_name(a.id) << ": " << monomial(a.label)
       << "\"];\n";
  os << "}\n";
  return os.str();
}

} // namespace toricell::quiver
