#pragma once

#include "toricell/superpotential.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace toricell::reconstruct {

using lattice::Rational;
using Point = std::array<Rational, 2>;

struct ProjectionData {
  // rows x, y, z of an M-basis; z is the Gorenstein covector
  std::vector<std::vector<long>> m_basis;
  // d × 3, column j is the image of m_basis[j] in ℤ^d
  lattice::IntegerMatrix B;
  // (BᵗB)⁻¹Bᵗ, 3 × d
  std::vector<std::vector<Rational>> f;
  // first two rows of f
  std::vector<std::vector<Rational>> f_prime;
  // ray indices in anticlockwise order of f′(χ_ρ), starting from ray 0
  std::vector<int> cyclic_order;

  Point image(const quiver::Divisor &v) const;
};

// Throws InvalidInput unless X is Gorenstein of dimension three or m_basis is not a basis with z last.
ProjectionData projection_maps(const toric::GorensteinToricVariety &X,
                               const std::optional<std::vector<std::vector<long>>> &m_basis = std::nullopt);

struct Edge {
  int arrow = 0;
  int tail = 0;
  int head = 0;
  Point start;
  Point vector;
};

struct Face {
  int term = 0;
  std::vector<Point> corners;
  std::vector<int> arrows;
  // +1 anticlockwise, -1 clockwise, 0 degenerate
  int orientation = 0;
  Rational signed_area;
};

// Vertices live in the unit square [0,1)², representing ℝ²/ℤ².
struct Tiling {
  std::vector<Point> vertices;
  std::vector<Edge> edges;
  std::vector<Face> faces;
  std::vector<int> cyclic_order;
};

Tiling embed_tiling(const quiver::QuiverOfSections &Q, const superpotential::Superpotential &W,
                    const ProjectionData &proj);

struct Crossing {
  int first = 0;
  int second = 0;
  std::array<long, 2> shift{};
  std::optional<Point> point; // absent for overlapping collinear edges
};

struct TilingReport {
  std::vector<int> open_faces;
  std::vector<int> nonconvex_faces;
  // arrows not bounded by exactly one face of each orientation
  std::vector<int> unbalanced_edges;
  std::vector<Crossing> crossings;
  long euler = 0;
  Rational total_area;
  bool faces_ok() const { return open_faces.empty() && nonconvex_faces.empty() && unbalanced_edges.empty(); }
  bool ok() const { return faces_ok() && crossings.empty() && euler == 0 && total_area == 1; }
};

TilingReport verify_tiling(const Tiling &T);

// Labels read around a face boundary, as ray indices, and whether they move monotonically
// through the global cyclic order (increasing for anticlockwise faces).
bool face_labels_monotone(const quiver::QuiverOfSections &Q, const Tiling &T, const Face &F);

std::string to_svg(const Tiling &T);

} // namespace toricell::reconstruct
