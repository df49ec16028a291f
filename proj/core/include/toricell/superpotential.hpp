#pragma once

#include "toricell/quiver.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace toricell::superpotential {

using quiver::Divisor;
using quiver::Path;
using quiver::QuiverOfSections;

// Arrow sequence of a cycle, rotated to its lexicographically least form.
struct CyclicCycle {
  std::vector<int> arrows;
  Divisor divisor;

  bool operator==(const CyclicCycle &o) const { return arrows == o.arrows; }
  bool operator<(const CyclicCycle &o) const { return arrows < o.arrows; }
};

CyclicCycle canonical_cycle(const QuiverOfSections &Q, const std::vector<int> &arrows);

struct Superpotential {
  std::vector<CyclicCycle> terms;
  std::size_t size() const { return terms.size(); }
  bool contains(const CyclicCycle &c) const;
};

Superpotential anticanonical_cycles(const QuiverOfSections &Q);
// Same, refusing non-Gorenstein varieties.
Superpotential anticanonical_cycles(const toric::GorensteinToricVariety &X, const QuiverOfSections &Q);

// Complements of q inside the terms of W.
std::vector<Path> derivative(const QuiverOfSections &Q, const Superpotential &W, const Path &q);
// Same set computed by exact path enumeration; used as a cross-check.
std::vector<Path> derivative_by_enumeration(const QuiverOfSections &Q, const Path &q);

struct Binomial {
  Path plus;
  Path minus;
};

struct FRelation {
  Path plus;
  Path minus;
  std::vector<Path> witnesses;
};

struct RelationSet {
  std::vector<Path> P;
  std::vector<FRelation> generators;
};

RelationSet relations(const QuiverOfSections &Q, const Superpotential &W);

std::vector<Binomial> as_binomials(const std::vector<FRelation> &rels);

// Binomial rewriting: replace a contiguous occurrence of one side by the other.
class RewriteSystem {
public:
  RewriteSystem(const QuiverOfSections &Q, const std::vector<Binomial> &rules);
  std::vector<std::vector<int>> neighbours(const std::vector<int> &arrows) const;
  std::size_t rule_count() const { return rules_.size(); }

private:
  struct Rule {
    std::vector<int> lhs;
    std::vector<int> rhs;
  };
  const QuiverOfSections *Q_;
  std::vector<Rule> rules_;
  std::vector<std::vector<int>> by_first_arrow_;
};

struct Bucket {
  int tail = 0;
  int head = 0;
  Divisor divisor;
  std::vector<std::vector<int>> paths;
};

// All paths with divisor ≤ bound·1 grouped by (tail, head, divisor), ordered by
// total degree, tail, head, divisor descending.
std::vector<Bucket> path_buckets(const QuiverOfSections &Q, int bound, int jobs = 1);

// Number of F-term classes in a bucket and the least path of each class.
std::vector<std::vector<int>> class_representatives(const Bucket &b, const RewriteSystem &rs);

std::vector<Binomial> minimal_relations(const QuiverOfSections &Q, int bound);

struct ConsistencyReport {
  bool consistent = false;
  int bound = 2;
  std::vector<int> quick_reject;
  std::optional<std::pair<Path, Path>> witness;
  std::size_t buckets = 0;
  std::size_t paths = 0;
};

ConsistencyReport consistency(const QuiverOfSections &Q, const RelationSet &rels, int bound, int jobs = 1);

std::vector<int> arrow_coverage(const QuiverOfSections &Q, const Superpotential &W);

} // namespace toricell::superpotential
