#pragma once

#include "toricell/superpotential.hpp"

#include <optional>
#include <string>
#include <vector>

namespace toricell::matchings {

using lattice::IntegerMatrix;
using lattice::IntVector;
using quiver::QuiverOfSections;

struct PiMap {
  // column a is (χ_h(a) − χ_t(a), div(a))
  IntegerMatrix matrix;
  // ℤ-basis of the image lattice ℤ(Q), as vectors in ℤ^{Q0} ⊕ ℤ^d
  std::vector<IntVector> lattice_basis;
  // coordinates of each column in lattice_basis
  std::vector<IntVector> arrow_coordinates;

  std::size_t rank() const { return lattice_basis.size(); }
};

// Throws InvalidInput if rank ℤ(Q) differs from expected_rank (when given).
PiMap build_pi(const QuiverOfSections &Q, std::optional<std::size_t> expected_rank = std::nullopt);

struct PerfectMatching {
  std::vector<long> values;
  IntVector functional;
  std::optional<int> extremal_ray;
  bool certified = true;

  std::vector<int> support() const;
};

// Rays of C. Throws InvalidInput if C has lineality.
std::vector<PerfectMatching> perfect_matchings(const QuiverOfSections &Q, const PiMap &pi);

// The matching read off from multiplicities of x_ρ, certified as a ray of C.
PerfectMatching extremal_matching(const QuiverOfSections &Q, const PiMap &pi, std::size_t rho);

struct Lemma29Report {
  bool holds = false;
  std::vector<std::vector<long>> cycle_basis;
  std::vector<std::vector<long>> cone_basis;
};

Lemma29Report lemma_2_9_check(const QuiverOfSections &Q, const toric::GorensteinToricVariety &X);

// Divisors of all simple cycles, deduplicated.
std::vector<std::vector<int>> simple_cycle_divisors(const QuiverOfSections &Q);

struct DimerAudit {
  std::vector<std::size_t> non_binary;                          // matchings with a value outside {0,1}
  std::vector<std::pair<std::size_t, std::size_t>> bad_terms; // (matching, term) without exactly one arrow
  bool passed() const { return non_binary.empty() && bad_terms.empty(); }
};

DimerAudit dimer_matching_audit(const QuiverOfSections &Q, const superpotential::Superpotential &W,
                                const std::vector<PerfectMatching> &matchings);

// Arrows whose label differs from Σ_ρ values_ρ(a) χ_ρ over the given extremal matchings.
std::vector<int> label_reconstruction_failures(const QuiverOfSections &Q,
                                               const std::vector<PerfectMatching> &extremal);

} // namespace toricell::matchings
