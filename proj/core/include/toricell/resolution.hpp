#pragma once

#include "toricell/cell_complex.hpp"

#include <cstdint>
#include <string>
#include <tuple>
#include <vector>

namespace toricell::resolution {

using quiver::Divisor;
using quiver::PathClass;

// ε(η,η′) · left ⊗ [η′] ⊗ right inside d_k(1 ⊗ [η] ⊗ 1)
struct DifferentialEntry {
  int source = 0;
  int target = 0;
  int sign = 1;
  PathClass left;
  PathClass right;
};

struct BimoduleResolution {
  cells::ToricCellComplex complex;
  std::vector<int> signs;
  // generators[k] are the k-cells; differentials[k] holds d_k for k ≥ 1
  std::vector<std::vector<int>> generators;
  std::vector<std::vector<DifferentialEntry>> differentials;

  std::size_t length() const { return generators.empty() ? 0 : generators.size() - 1; }
  std::vector<std::size_t> ranks() const;
};

// Throws InvalidInput if the sign vector does not cover every incidence.
BimoduleResolution build_resolution(const cells::ToricCellComplex &cx, const std::vector<int> &eps);

struct SparseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::tuple<std::size_t, std::size_t, std::int64_t>> entries;

  lattice::IntegerMatrix dense() const;
};

// Exact rank by fraction-free row reduction; falls back to GMP arithmetic on overflow.
std::size_t sparse_rank(const SparseMatrix &m);

// Product a·b of integer matrices given as sparse lists, duplicates summed.
SparseMatrix multiply(const SparseMatrix &a, const SparseMatrix &b);

// Generator ℓ ⊗ [η] ⊗ r with div ℓ = left, div r = right.
struct BasisElement {
  int cell = 0;
  Divisor left;
  Divisor right;
  bool operator<(const BasisElement &o) const {
    return std::tie(cell, left, right) < std::tie(o.cell, o.left, o.right);
  }
  bool operator==(const BasisElement &o) const { return cell == o.cell && left == o.left && right == o.right; }
};

// e_t (P_•) e_s in total degree `degree`.
struct GradedPiece {
  int s = 0;
  int t = 0;
  Divisor degree;
  std::vector<std::vector<BasisElement>> bases;
  // matrices[k] : bases[k] → bases[k-1], rows indexed by bases[k-1]
  std::vector<SparseMatrix> matrices;
  // dim e_t A e_s in this degree
  std::size_t algebra_dim = 0;
};

GradedPiece graded_piece(const BimoduleResolution &res, const quiver::PathOracle &oracle, int s, int t,
                         const Divisor &degree);
GradedPiece graded_piece(const BimoduleResolution &res, int s, int t, const Divisor &degree);

struct SquareZeroReport {
  std::size_t checked = 0;
  std::vector<std::string> problems;
  bool ok() const { return problems.empty(); }
};

// Composes d_{k-1} ∘ d_k symbolically in path-class arithmetic.
SquareZeroReport verify_square_zero(const BimoduleResolution &res);

struct MinimalityReport {
  std::vector<DifferentialEntry> violations;
  bool ok() const { return violations.empty(); }
};

MinimalityReport verify_minimality(const BimoduleResolution &res);

struct DegreeReport {
  int s = 0;
  int t = 0;
  Divisor degree;
  std::vector<std::size_t> dims;  // P_0 .. P_n
  std::vector<std::size_t> ranks; // ranks[k] = rank d_k, ranks[0] = rank μ
  std::size_t algebra_dim = 0;
  bool square_zero = true;
  bool exact = true;
  long euler = 0;
};

struct ExactnessReport {
  int bound = 0;
  std::vector<DegreeReport> degrees;
  std::size_t failures = 0;
  bool square_zero = true;
  bool euler = true;
  bool exact() const { return failures == 0 && square_zero; }
  std::size_t nonzero_degrees() const;
};

ExactnessReport verify_exactness(const BimoduleResolution &res, int bound, int jobs = 1);

struct McKaySignReport {
  std::size_t entries = 0;
  std::vector<std::string> mismatches;
  bool delta_exists = false;
  bool ok() const { return mismatches.empty() && delta_exists; }
};

// Rebuilds every d_k of the McKay complex from the group data and the (−1)^ν rule, compares it
// with build_resolution, and relates a solver-produced incidence function by a global sign.
McKaySignReport mckay_sign_crosscheck(const toric::AbelianGroupData &G);

} // namespace toricell::resolution
