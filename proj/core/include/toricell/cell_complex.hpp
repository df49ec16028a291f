#pragma once

#include "toricell/superpotential.hpp"
#include "toricell/toric.hpp"

#include <optional>
#include <string>
#include <vector>

namespace toricell::cells {

using quiver::Divisor;
using quiver::PathClass;
using quiver::QuiverOfSections;

enum class CellKind { Vertex, Arrow, Relation, DualArrow, DualVertex, McKay };

struct Cell {
  int id = 0;
  int dim = 0;
  int head = 0;
  int tail = 0;
  Divisor divisor;
  CellKind kind = CellKind::Vertex;
  // vertex, arrow or relation index depending on kind
  int index = -1;
  // McKay cells: tail character index and the subset S of {0..n-1}
  int character = -1;
  std::vector<int> subset;
};

// left: head(facet) → head(parent); right: tail(parent) → tail(facet)
struct FacetIncidence {
  int parent = 0;
  int facet = 0;
  Divisor left;
  Divisor right;
};

struct ToricCellComplex {
  std::size_t n = 0;
  QuiverOfSections quiver;
  std::vector<superpotential::FRelation> relations;
  std::vector<Cell> cells;
  std::vector<std::vector<int>> by_dim;
  std::vector<FacetIncidence> incidences;
  std::vector<std::vector<int>> facets_of;
  // closed-form incidence function when the construction provides one
  std::optional<std::vector<int>> explicit_signs;

  std::vector<std::size_t> counts() const;
  PathClass left_class(const FacetIncidence &f) const;
  PathClass right_class(const FacetIncidence &f) const;
  std::string describe(int cell) const;
  void add_incidence(int parent, int facet, Divisor left, Divisor right);
};

// Arrows ρ → ρ + χ_i labelled x_i for every character ρ and every i.
QuiverOfSections mckay_quiver(const toric::McKayData &data);

ToricCellComplex mckay_complex(const toric::AbelianGroupData &G);

// n = 3: dimer complex; n = 4: vertices, arrows, relations, duals of arrows and vertices.
ToricCellComplex general_complex(const QuiverOfSections &Q, const superpotential::Superpotential &W,
                                 const superpotential::RelationSet &rels, std::size_t n);

struct TauReport {
  std::vector<int> tau;
  bool involution = false;
  bool antisymmetric = false;
  std::vector<std::string> problems;
  bool ok() const { return involution && antisymmetric; }
};

TauReport compute_tau(const ToricCellComplex &cx);

// A codimension-two face instance: η with a face η″ reached by two facet chains.
struct Flag {
  int top = 0;
  int bottom = -1; // -1 for the empty face below a 1-cell
  Divisor left;
  Divisor right;
  std::vector<std::pair<int, int>> chains; // incidence pairs, or (i, -1) for 1-cells
};

std::vector<Flag> enumerate_flags(const ToricCellComplex &cx);

struct FaceReport {
  std::size_t flags = 0;
  std::vector<Flag> violations;
  bool ok() const { return violations.empty(); }
};

FaceReport face_poset_check(const ToricCellComplex &cx);

struct IncidenceSolution {
  std::optional<std::vector<int>> signs;
  // flags whose parity equations sum to 0 = 1
  std::vector<Flag> certificate;
  bool feasible() const { return signs.has_value(); }
};

IncidenceSolution solve_incidence(const ToricCellComplex &cx);

// Flags on which Σ ε(η,η′)ε(η′,η″) over the two chains is nonzero.
std::vector<Flag> incidence_violations(const ToricCellComplex &cx, const std::vector<int> &signs);

// δ with ε′(η,η′) = δ(η′) ε(η,η′) δ(η), if one exists.
std::optional<std::vector<int>> global_sign_change(const ToricCellComplex &cx, const std::vector<int> &eps,
                                                   const std::vector<int> &eps_prime);

// Incidences whose divisors do not add up or whose classes are not realizable.
std::vector<int> incidence_data_violations(const ToricCellComplex &cx);

struct SignParityReport {
  int arrow = 0;
  std::vector<quiver::Path> terms;
  std::vector<std::pair<int, int>> edges;
  bool two_colourable = true;
  std::vector<int> odd_cycle;
};

SignParityReport sign_infeasibility(const QuiverOfSections &Q, const superpotential::Superpotential &W,
                                    const superpotential::RelationSet &rels, int arrow);

} // namespace toricell::cells
