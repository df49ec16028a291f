#pragma once

#include "toricell/toric.hpp"

#include <cstddef>
#include <functional>
#include <map>
#include <shared_mutex>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

namespace toricell::quiver {

using Divisor = std::vector<int>;

struct VectorHash {
  std::size_t operator()(const std::vector<int> &v) const noexcept;
};

Divisor add(const Divisor &a, const Divisor &b);
Divisor subtract(const Divisor &a, const Divisor &b);
bool leq(const Divisor &a, const Divisor &b);
bool is_zero(const Divisor &a);
int total_degree(const Divisor &a);
Divisor ones(std::size_t d);
Divisor scaled_ones(std::size_t d, int k);
std::string monomial(const Divisor &a);

struct Arrow {
  int id = 0;
  int tail = 0;
  int head = 0;
  Divisor label;
};

struct QuiverOfSections {
  int vertex_count = 0;
  std::size_t d = 0;
  std::vector<Arrow> arrows;
  std::vector<std::vector<int>> out_arrows;
  std::vector<std::vector<int>> in_arrows;

  std::string arrow_name(int id) const { return "a" + std::to_string(id + 1); }
};

// Assigns ids in the given order and builds adjacency.
QuiverOfSections make_quiver(int vertex_count, std::size_t d, std::vector<Arrow> arrows);
QuiverOfSections reorder_arrows(const QuiverOfSections &Q, const std::vector<int> &order);

// Arrow order: tail, (head - tail) mod |Q0|, total degree, exponent vector descending.
bool arrow_order_less(const Arrow &a, const Arrow &b, int vertex_count);

QuiverOfSections build_quiver(const toric::GorensteinToricVariety &X, const toric::Collection &E);

bool is_strongly_connected(const QuiverOfSections &Q);

struct PathClass {
  int tail = 0;
  int head = 0;
  Divisor divisor;

  bool operator==(const PathClass &) const = default;
  bool operator<(const PathClass &o) const {
    return std::tie(tail, head, divisor) < std::tie(o.tail, o.head, o.divisor);
  }
};

// Arrows stored in traversal order: arrows[0] acts first.
struct Path {
  int tail = 0;
  int head = 0;
  std::vector<int> arrows;
  Divisor divisor;

  bool trivial() const { return arrows.empty(); }
  PathClass path_class() const { return {tail, head, divisor}; }
  bool operator==(const Path &o) const { return tail == o.tail && head == o.head && arrows == o.arrows; }
  bool operator<(const Path &o) const {
    return std::tie(arrows, tail, head) < std::tie(o.arrows, o.tail, o.head);
  }
};

Path trivial_path(const QuiverOfSections &Q, int vertex);
Path make_path(const QuiverOfSections &Q, int tail, const std::vector<int> &arrows);
Path concatenate(const QuiverOfSections &Q, const Path &first, const Path &second);
// Product notation with the rightmost arrow acting first, e.g. "a8a7a4a1" or "e0".
std::string path_string(const QuiverOfSections &Q, const Path &p);
// Parses product notation like "a6a3" into a path (rightmost arrow first).
Path parse_path(const QuiverOfSections &Q, const std::string &text);

std::vector<Path> enumerate_paths(const QuiverOfSections &Q, int i, int j, const Divisor &budget, bool exact);
// All paths from i with divisor ≤ budget, in depth-first order.
void for_each_path_from(const QuiverOfSections &Q, int i, const Divisor &budget,
                        const std::function<void(const std::vector<int> &, int head, const Divisor &)> &visit);

// Memoized decision of whether some path realizes a class; safe under concurrent use.
class PathOracle {
public:
  explicit PathOracle(const QuiverOfSections &Q) : Q_(&Q) {}
  bool realizable(const PathClass &c) const;
  bool realizable(int tail, int head, const Divisor &divisor) const { return realizable({tail, head, divisor}); }
  const QuiverOfSections &quiver() const { return *Q_; }

private:
  const std::vector<char> &reach(int tail, const Divisor &divisor) const;

  const QuiverOfSections *Q_;
  mutable std::shared_mutex mutex_;
  mutable std::map<std::pair<int, Divisor>, std::vector<char>> memo_;
};

bool realizable(const QuiverOfSections &Q, const PathClass &c);

struct CoveringLift {
  std::vector<int> tree_arrows;
  std::vector<Divisor> lifts;
};

CoveringLift preferred_lifts(const QuiverOfSections &Q);

std::string to_dot(const QuiverOfSections &Q);

} // namespace toricell::quiver
