#pragma once

#include "toricell/cell_complex.hpp"
#include "toricell/matchings.hpp"
#include "toricell/superpotential.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <vector>

namespace fixtures {

using namespace toricell;

struct Toric {
  toric::GorensteinToricVariety X;
  quiver::QuiverOfSections Q;
  superpotential::Superpotential W;
  superpotential::RelationSet rels;
};

inline Toric make(const std::vector<std::vector<long>> &rays, const std::vector<std::vector<long>> &collection) {
  Toric t;
  t.X = toric::build_variety(rays);
  t.Q = quiver::build_quiver(t.X, toric::make_collection(t.X, collection));
  t.W = superpotential::anticanonical_cycles(t.X, t.Q);
  t.rels = superpotential::relations(t.Q, t.W);
  return t;
}

inline const std::vector<std::vector<long>> &f1_rays() {
  static const std::vector<std::vector<long>> r{{1, 0, 1}, {0, 1, 1}, {-1, 1, 1}, {0, -1, 1}};
  return r;
}

inline Toric four_vertex() { return make(f1_rays(), {{0, 0, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 1}, {1, 0, 0, 1}}); }
inline Toric three_vertex() { return make(f1_rays(), {{0, 0, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 1}}); }
inline Toric five_vertex() {
  return make(f1_rays(), {{0, 0, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 1}, {1, 0, 0, 1}, {0, 0, 0, 2}});
}
inline Toric conifold() { return make({{0, 0, 1}, {1, 1, 1}, {1, 0, 1}, {0, 1, 1}}, {{0, 0, 0, 0}, {1, 0, 0, 0}}); }
inline Toric affine3() { return make({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, {{0, 0, 0}}); }
inline Toric fourfold() {
  return make({{1, 0, 0, 1}, {0, 1, 0, 1}, {0, 0, 1, 1}, {-1, -1, 2, 1}, {-1, -1, 1, 1}, {0, 0, -1, 1}},
              {{0, 0, 0, 0, 0, 0},
               {1, 0, 0, 0, 0, 0},
               {2, 0, 0, 0, 0, 0},
               {0, 0, 0, 0, 0, 1},
               {0, 0, 0, 0, 1, 1},
               {1, 0, 0, 0, 0, 1},
               {1, 0, 0, 0, 1, 1},
               {2, 0, 0, 0, 0, 1}});
}

inline toric::AbelianGroupData z6_123() { return {3, {{6, {1, 2, 3}}}}; }

// "a4a1:1>2:x2" style summary of each arrow
inline std::vector<std::string> arrow_table(const quiver::QuiverOfSections &Q) {
  std::vector<std::string> out;
  for (const auto &a : Q.arrows)
    out.push_back(Q.arrow_name(a.id) + ":" + std::to_string(a.tail) + ">" + std::to_string(a.head) + ":" +
                  quiver::monomial(a.label));
  return out;
}

using Binomials = std::set<std::set<std::string>>;

inline Binomials binomials(const quiver::QuiverOfSections &Q, const std::vector<superpotential::Binomial> &rels) {
  Binomials out;
  for (const auto &b : rels)
    out.insert({quiver::path_string(Q, b.plus), quiver::path_string(Q, b.minus)});
  return out;
}

inline Binomials binomials(const quiver::QuiverOfSections &Q, const std::vector<superpotential::FRelation> &rels) {
  return binomials(Q, superpotential::as_binomials(rels));
}

// "a6a3-a5a1" → {"a6a3", "a5a1"}
inline Binomials parse_binomials(const std::vector<std::string> &display) {
  Binomials out;
  for (const auto &s : display) {
    auto dash = s.find('-');
    out.insert({s.substr(0, dash), s.substr(dash + 1)});
  }
  return out;
}

inline const std::vector<std::string> &first_example_relations() {
  static const std::vector<std::string> r{"a6a3-a5a1",    "a7a3-a5a2",    "a7a4a1-a6a4a2", "a3a9-a4a1a8",
                                          "a3a10-a4a2a8", "a2a9-a1a10",   "a1a8a7-a2a8a6", "a9a7-a10a6",
                                          "a8a6a4-a9a5",  "a10a5-a8a7a4"};
  return r;
}

inline const std::vector<std::string> &five_vertex_display() {
  static const std::vector<std::string> r{"a5a1-a6a3",   "a7a4a1-a6a4a2",  "a5a2-a7a3", "a10a6-a11a8",
                                          "a12a9a6-a11a9a7", "a10a7-a12a8", "a8a4-a9a5"};
  return r;
}

inline const std::vector<std::string> &fourfold_display() {
  // a12a4a23 is often written with its arrows rotated, as a4a23a12, which is not a path
  static const std::vector<std::string> r{
      "a6a1-a5a2",       "a25a11-a22a18a15a10", "a9a1-a13a4",       "a24a21a18-a25a20", "a14a4-a9a2",
      "a23a21a18-a25a19", "a5a3-a7a1",          "a22a17a10-a24a11", "a9a3-a15a12a4",    "a24a19-a23a20",
      "a11a6-a20a9",      "a1a25-a3a23",        "a11a5-a19a9",      "a2a25-a3a24",      "a20a13-a19a14",
      "a4a25-a8a26",      "a11a7-a21a18a9",     "a1a24-a2a23",      "a19a15-a21a16",    "a12a4a24-a10a6a26",
      "a16a12-a18a13",    "a8a2a22-a4a24a21",   "a7a2-a6a3",        "a22a16a10-a23a11", "a17a12-a18a14",
      "a8a1a22-a4a23a21", "a20a15-a21a17",      "a12a4a23-a10a5a26", "a17a10a5-a16a10a6", "a3a22-a26a21",
      "a10a7-a12a8",      "a1a22a17-a2a22a16",  "a14a8-a15a10a6",   "a1a22a18-a26a19",  "a15a10a5-a13a8",
      "a2a22a18-a26a20"};
  return r;
}

} // namespace fixtures
