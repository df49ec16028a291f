#pragma once

#include "toricell/lattice.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace toricell::toric {

using lattice::IntegerMatrix;
using lattice::IntVector;

struct WeilClass {
  std::vector<long> representative;
  IntVector canonical;

  bool operator==(const WeilClass &o) const { return canonical == o.canonical; }
};

class GorensteinToricVariety {
public:
  std::size_t n = 0;
  std::vector<std::vector<long>> rays;
  IntegerMatrix embedding; // d × n, row ρ is v_ρ
  lattice::CokernelForm deg_data;
  std::optional<std::vector<long>> gorenstein_covector;

  std::size_t d() const { return rays.size(); }
  bool is_gorenstein() const { return gorenstein_covector.has_value(); }
  WeilClass weil_class(const std::vector<long> &divisor) const;
  const lattice::SemigroupFibers &fibers() const;

private:
  mutable std::shared_ptr<lattice::SemigroupFibers> fibers_;
};

GorensteinToricVariety build_variety(const std::vector<std::vector<long>> &rays);

struct Collection {
  std::vector<WeilClass> classes;
  std::size_t size() const { return classes.size(); }
};

Collection make_collection(const GorensteinToricVariety &X, const std::vector<std::vector<long>> &divisors);

// Minimal generators of Hom(E_i, E_j) for class(E_j - E_i) represented by `difference`.
std::vector<std::vector<long>> hom_sections(const GorensteinToricVariety &X, const std::vector<long> &difference);

struct GroupGenerator {
  long order = 0;
  std::vector<long> weights;
};

struct AbelianGroupData {
  std::size_t n = 0;
  std::vector<GroupGenerator> generators;
};

struct McKayData {
  GorensteinToricVariety X;
  Collection collection;
  // character tuple of each collection entry, residues per generator
  std::vector<std::vector<long>> characters;
  // shift[v][i] = vertex of E_v + χ_i
  std::vector<std::vector<std::size_t>> shift;
  bool special_linear = false;
};

bool is_special_linear(const AbelianGroupData &G);
// First quasireflection found, as weights over the common denominator, if any.
std::optional<std::vector<long>> find_quasireflection(const AbelianGroupData &G);

McKayData mckay_toric_data(const AbelianGroupData &G);

} // namespace toricell::toric
