#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace toricell {

class InvalidInput : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

namespace lattice {

using Int = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Int>;

class IntegerMatrix {
public:
  IntegerMatrix() = default;
  IntegerMatrix(std::size_t rows, std::size_t cols);

  static IntegerMatrix identity(std::size_t n);
  static IntegerMatrix from_rows(const std::vector<IntVector> &rows, std::size_t cols);
  static IntegerMatrix from_rows(const std::vector<std::vector<long>> &rows);
  static IntegerMatrix from_columns(const std::vector<IntVector> &cols, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Int &operator()(std::size_t i, std::size_t j) { return data_.at(i * cols_ + j); }
  const Int &operator()(std::size_t i, std::size_t j) const { return data_.at(i * cols_ + j); }

  IntVector row(std::size_t i) const;
  IntVector column(std::size_t j) const;
  IntegerMatrix transpose() const;
  IntegerMatrix operator*(const IntegerMatrix &other) const;
  IntVector operator*(const IntVector &v) const;
  bool operator==(const IntegerMatrix &other) const = default;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_columns(std::size_t a, std::size_t b);
  // row a += k * row b
  void add_row_multiple(std::size_t a, std::size_t b, const Int &k);
  void add_column_multiple(std::size_t a, std::size_t b, const Int &k);
  void negate_row(std::size_t a);

  std::string str() const;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> data_;
};

struct SmithDecomposition {
  IntegerMatrix U;
  IntegerMatrix S;
  IntegerMatrix V;

  std::size_t rank() const;
  std::vector<Int> invariant_factors() const;
};

SmithDecomposition smith_normal_form(const IntegerMatrix &A);

// Row-style Hermite normal form: nonzero rows form a basis of the row lattice.
std::vector<IntVector> hermite_basis(const std::vector<IntVector> &vectors, std::size_t dim);

std::vector<IntVector> kernel_basis(const IntegerMatrix &A);

std::size_t rank(const IntegerMatrix &A);
Int determinant(const IntegerMatrix &A);

// Integer solution of A x = b, if one exists.
std::optional<IntVector> solve_integer(const IntegerMatrix &A, const IntVector &b);
// Unique rational solution of a square nonsingular system.
std::vector<Rational> solve_rational(const IntegerMatrix &A, const std::vector<Rational> &b);

// Presentation of Z^m / A Z^k.
class CokernelForm {
public:
  CokernelForm() = default;
  explicit CokernelForm(const IntegerMatrix &A);

  const std::vector<Int> &torsion() const { return torsion_; }
  std::size_t free_rank() const { return free_rank_; }
  std::size_t ambient() const { return ambient_; }
  bool is_finite() const { return free_rank_ == 0; }
  // group order for finite cokernels
  Int order() const;

  IntVector canonical(const IntVector &v) const;
  IntVector canonical(const std::vector<long> &v) const;

private:
  std::size_t ambient_ = 0;
  std::size_t rank_ = 0;
  std::size_t free_rank_ = 0;
  IntegerMatrix U_;
  std::vector<Int> diag_;
  std::vector<Int> torsion_;
};

CokernelForm cokernel_form(const IntegerMatrix &A);

struct DualCone {
  std::vector<IntVector> rays;
  std::vector<IntVector> lineality;
};

DualCone dual_cone_rays(const std::vector<IntVector> &generators, std::size_t ambient);

struct RationalCone {
  std::size_t ambient = 0;
  std::vector<IntVector> generators;
  std::vector<IntVector> facet_normals;
  std::vector<IntVector> lineality_of_dual;
};

RationalCone make_cone(const std::vector<IntVector> &generators, std::size_t ambient);
bool contains(const RationalCone &cone, const IntVector &v);

std::vector<IntVector> hilbert_basis(const RationalCone &cone);
std::vector<IntVector> hilbert_basis(const std::vector<IntVector> &generators, std::size_t ambient);

std::vector<std::vector<std::size_t>> triangulate(const std::vector<IntVector> &points);

// Minimal generators of {v in N^d : v - target in image(B)} over N^d ∩ image(B).
class SemigroupFibers {
public:
  explicit SemigroupFibers(const IntegerMatrix &B);

  const IntegerMatrix &embedding() const { return B_; }
  const std::vector<std::vector<long>> &hilbert_basis_image() const { return hb_image_; }
  const std::vector<IntVector> &dual_rays() const { return rays_; }

  std::vector<std::vector<long>> generators(const IntVector &target) const;

private:
  IntegerMatrix B_;
  std::vector<IntVector> rays_;
  std::vector<std::vector<long>> rays_image_;
  std::vector<std::vector<long>> hb_image_;
  std::vector<std::vector<std::size_t>> bases_;
};

std::vector<std::vector<long>> fiber_generators(const IntegerMatrix &B, const IntVector &target);

IntVector primitive(const IntVector &v);

IntVector to_int_vector(const std::vector<long> &v);
std::vector<long> to_long_vector(const IntVector &v);
Int dot(const IntVector &a, const IntVector &b);
bool is_zero(const IntVector &v);

} // namespace lattice
} // namespace toricell
