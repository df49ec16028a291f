#pragma once

#include "toricell/cell_complex.hpp"
#include "toricell/matchings.hpp"
#include "toricell/reconstruct.hpp"
#include "toricell/resolution.hpp"

#include "json.hpp"

#include <optional>
#include <string>
#include <vector>

namespace toricell::io {

using nlohmann::json;

enum class InputKind { Toric, CyclicQuotient, AbelianQuotient, DimerQuiver };

struct Options {
  std::optional<int> bound;
  // 1-based arrow numbers in the desired order
  std::optional<std::vector<int>> arrow_order;
  std::optional<std::vector<std::vector<long>>> m_basis;
};

struct InputDocument {
  InputKind kind = InputKind::Toric;
  std::vector<std::vector<long>> rays;
  std::vector<std::vector<long>> collection;
  toric::AbelianGroupData group;
  std::optional<quiver::QuiverOfSections> quiver;
  std::optional<std::size_t> n;
  Options options;
};

// Throws InvalidInput on schema violations.
InputDocument parse_input(const json &doc);
InputDocument load_input(const std::string &path);

struct Model {
  InputDocument doc;
  std::optional<toric::GorensteinToricVariety> X;
  std::optional<toric::McKayData> mckay;
  quiver::QuiverOfSections Q;
  std::size_t n = 0;

  bool is_quotient() const { return mckay.has_value(); }
};

Model build_model(const InputDocument &doc);

json divisor_json(const quiver::Divisor &d);
json path_json(const quiver::QuiverOfSections &Q, const quiver::Path &p);
json rational_json(const lattice::Rational &q);

// Output of `quiver`; accepted back as a dimer_quiver input.
json quiver_json(const Model &m);
json superpotential_json(const quiver::QuiverOfSections &Q, const superpotential::Superpotential &W,
                         const superpotential::RelationSet &rels);
json consistency_json(const quiver::QuiverOfSections &Q, const superpotential::ConsistencyReport &r);
json complex_json(const cells::ToricCellComplex &cx, const cells::TauReport &tau, const cells::FaceReport &faces,
                  const std::optional<cells::IncidenceSolution> &incidence);
json exactness_json(const resolution::ExactnessReport &r, bool all_degrees);
std::string exactness_csv(const resolution::ExactnessReport &r);
json tiling_json(const quiver::QuiverOfSections &Q, const reconstruct::ProjectionData &P,
                 const reconstruct::Tiling &T, const reconstruct::TilingReport &r);
json signcheck_json(const quiver::QuiverOfSections &Q, const cells::SignParityReport &r);

} // namespace toricell::io
