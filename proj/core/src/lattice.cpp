#include "toricell/lattice.hpp"

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

namespace toricell::lattice {

IntegerMatrix::IntegerMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Int(0)) {}

IntegerMatrix IntegerMatrix::identity(std::size_t n) {
  IntegerMatrix I(n, n);
  for (std::size_t i = 0; i < n; ++i)
    I(i, i) = 1;
  return I;
}

IntegerMatrix IntegerMatrix::from_rows(const std::vector<IntVector> &rows, std::size_t cols) {
  IntegerMatrix M(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols)
      throw std::invalid_argument("row length mismatch");
    for (std::size_t j = 0; j < cols; ++j)
      M(i, j) = rows[i][j];
  }
  return M;
}

IntegerMatrix IntegerMatrix::from_rows(const std::vector<std::vector<long>> &rows) {
  std::size_t cols = rows.empty() ? 0 : rows.front().size();
  std::vector<IntVector> big;
  for (const auto &r : rows)
    big.push_back(to_int_vector(r));
  return from_rows(big, cols);
}

IntegerMatrix IntegerMatrix::from_columns(const std::vector<IntVector> &cols, std::size_t rows) {
  IntegerMatrix M(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows)
      throw std::invalid_argument("column length mismatch");
    for (std::size_t i = 0; i < rows; ++i)
      M(i, j) = cols[j][i];
  }
  return M;
}

IntVector IntegerMatrix::row(std::size_t i) const {
  IntVector r(cols_);
  for (std::size_t j = 0; j < cols_; ++j)
    r[j] = (*this)(i, j);
  return r;
}

IntVector IntegerMatrix::column(std::size_t j) const {
  IntVector c(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    c[i] = (*this)(i, j);
  return c;
}

IntegerMatrix IntegerMatrix::transpose() const {
  IntegerMatrix T(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      T(j, i) = (*this)(i, j);
  return T;
}

IntegerMatrix IntegerMatrix::operator*(const IntegerMatrix &other) const {
  if (cols_ != other.rows_)
    throw std::invalid_argument("matrix product shape mismatch");
  IntegerMatrix P(rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Int &a = (*this)(i, k);
      if (a == 0)
        continue;
      for (std::size_t j = 0; j < other.cols_; ++j)
        P(i, j) += a * other(k, j);
    }
  return P;
}

IntVector IntegerMatrix::operator*(const IntVector &v) const {
  if (v.size() != cols_)
    throw std::invalid_argument("matrix-vector shape mismatch");
  IntVector out(rows_, Int(0));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      out[i] += (*this)(i, j) * v[j];
  return out;
}

void IntegerMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b)
    return;
  for (std::size_t j = 0; j < cols_; ++j)
    std::swap((*this)(a, j), (*this)(b, j));
}

void IntegerMatrix::swap_columns(std::size_t a, std::size_t b) {
  if (a == b)
    return;
  for (std::size_t i = 0; i < rows_; ++i)
    std::swap((*this)(i, a), (*this)(i, b));
}

void IntegerMatrix::add_row_multiple(std::size_t a, std::size_t b, const Int &k) {
  for (std::size_t j = 0; j < cols_; ++j)
    (*this)(a, j) += k * (*this)(b, j);
}

void IntegerMatrix::add_column_multiple(std::size_t a, std::size_t b, const Int &k) {
  for (std::size_t i = 0; i < rows_; ++i)
    (*this)(i, a) += k * (*this)(i, b);
}

void IntegerMatrix::negate_row(std::size_t a) {
  for (std::size_t j = 0; j < cols_; ++j)
    (*this)(a, j) = -(*this)(a, j);
}

std::string IntegerMatrix::str() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < cols_; ++j)
      os << (j ? ", " : "") << (*this)(i, j).get_str();
    os << "]";
  }
  os << "]";
  return os.str();
}

namespace {

Int floor_div(const Int &a, const Int &b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Int abs_int(const Int &a) { return a < 0 ? Int(-a) : a; }

} // namespace

std::size_t SmithDecomposition::rank() const {
  std::size_t r = 0;
  for (std::size_t i = 0; i < std::min(S.rows(), S.cols()); ++i)
    if (S(i, i) != 0)
      ++r;
  return r;
}

std::vector<Int> SmithDecomposition::invariant_factors() const {
  std::vector<Int> f;
  for (std::size_t i = 0; i < std::min(S.rows(), S.cols()); ++i)
    if (S(i, i) != 0)
      f.push_back(S(i, i));
  return f;
}

SmithDecomposition smith_normal_form(const IntegerMatrix &A) {
  const std::size_t m = A.rows(), n = A.cols();
  IntegerMatrix S = A;
  IntegerMatrix U = IntegerMatrix::identity(m);
  IntegerMatrix V = IntegerMatrix::identity(n);

  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    std::size_t pi = m, pj = n;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j)
        if (S(i, j) != 0 && (pi == m || abs_int(S(i, j)) < abs_int(S(pi, pj)))) {
          pi = i;
          pj = j;
        }
    if (pi == m)
      break;
    S.swap_rows(t, pi);
    U.swap_rows(t, pi);
    S.swap_columns(t, pj);
    V.swap_columns(t, pj);

    while (true) {
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (S(i, t) == 0)
          continue;
        Int q = floor_div(S(i, t), S(t, t));
        S.add_row_multiple(i, t, -q);
        U.add_row_multiple(i, t, -q);
        if (S(i, t) != 0)
          clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (S(t, j) == 0)
          continue;
        Int q = floor_div(S(t, j), S(t, t));
        S.add_column_multiple(j, t, -q);
        V.add_column_multiple(j, t, -q);
        if (S(t, j) != 0)
          clean = false;
      }
      if (!clean) {
        std::size_t bi = t, bj = t;
        for (std::size_t i = t + 1; i < m; ++i)
          if (S(i, t) != 0 && abs_int(S(i, t)) < abs_int(S(bi, bj))) {
            bi = i;
            bj = t;
          }
        for (std::size_t j = t + 1; j < n; ++j)
          if (S(t, j) != 0 && abs_int(S(t, j)) < abs_int(S(bi, bj))) {
            bi = t;
            bj = j;
          }
        if (bi != t) {
          S.swap_rows(t, bi);
          U.swap_rows(t, bi);
        } else if (bj != t) {
          S.swap_columns(t, bj);
          V.swap_columns(t, bj);
        }
        continue;
      }
      bool fixed = false;
      for (std::size_t i = t + 1; i < m && !fixed; ++i)
        for (std::size_t j = t + 1; j < n && !fixed; ++j)
          if (S(i, j) % S(t, t) != 0) {
            S.add_row_multiple(t, i, Int(1));
            U.add_row_multiple(t, i, Int(1));
            fixed = true;
          }
      if (!fixed)
        break;
    }
    if (S(t, t) < 0) {
      S.negate_row(t);
      U.negate_row(t);
    }
  }
  return {U, S, V};
}

std::vector<IntVector> hermite_basis(const std::vector<IntVector> &vectors, std::size_t dim) {
  std::vector<IntVector> rows = vectors;
  for (const auto &r : rows)
    if (r.size() != dim)
      throw std::invalid_argument("vector length mismatch");
  std::size_t r = 0;
  for (std::size_t c = 0; c < dim && r < rows.size(); ++c) {
    while (true) {
      std::size_t best = rows.size();
      std::size_t nonzero = 0;
      for (std::size_t i = r; i < rows.size(); ++i)
        if (rows[i][c] != 0) {
          ++nonzero;
          if (best == rows.size() || abs_int(rows[i][c]) < abs_int(rows[best][c]))
            best = i;
        }
      if (nonzero == 0)
        break;
      std::swap(rows[r], rows[best]);
      if (nonzero == 1)
        break;
      for (std::size_t i = r + 1; i < rows.size(); ++i) {
        if (rows[i][c] == 0)
          continue;
        Int q = floor_div(rows[i][c], rows[r][c]);
        for (std::size_t j = 0; j < dim; ++j)
          rows[i][j] -= q * rows[r][j];
      }
    }
    if (rows[r][c] == 0)
      continue;
    if (rows[r][c] < 0)
      for (auto &x : rows[r])
        x = -x;
    for (std::size_t i = 0; i < r; ++i) {
      Int q = floor_div(rows[i][c], rows[r][c]);
      if (q != 0)
        for (std::size_t j = 0; j < dim; ++j)
          rows[i][j] -= q * rows[r][j];
    }
    ++r;
  }
  rows.resize(r);
  return rows;
}

std::vector<IntVector> kernel_basis(const IntegerMatrix &A) {
  SmithDecomposition snf = smith_normal_form(A);
  std::size_t rk = snf.rank();
  std::vector<IntVector> basis;
  for (std::size_t j = rk; j < A.cols(); ++j)
    basis.push_back(snf.V.column(j));
  return hermite_basis(basis, A.cols());
}

std::size_t rank(const IntegerMatrix &A) {
  IntegerMatrix M = A;
  const std::size_t m = M.rows(), n = M.cols();
  std::size_t r = 0;
  Int prev = 1;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    std::size_t p = r;
    while (p < m && M(p, c) == 0)
      ++p;
    if (p == m)
      continue;
    M.swap_rows(r, p);
    for (std::size_t i = r + 1; i < m; ++i) {
      for (std::size_t j = c + 1; j < n; ++j) {
        Int v = M(r, c) * M(i, j) - M(i, c) * M(r, j);
        mpz_divexact(M(i, j).get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      }
      M(i, c) = 0;
    }
    prev = M(r, c);
    ++r;
  }
  return r;
}

Int determinant(const IntegerMatrix &A) {
  if (A.rows() != A.cols())
    throw std::invalid_argument("determinant of non-square matrix");
  IntegerMatrix M = A;
  const std::size_t n = M.rows();
  if (n == 0)
    return Int(1);
  Int prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && M(p, k) == 0)
      ++p;
    if (p == n)
      return Int(0);
    if (p != k) {
      M.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Int v = M(k, k) * M(i, j) - M(i, k) * M(k, j);
        mpz_divexact(M(i, j).get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      }
      M(i, k) = 0;
    }
    prev = M(k, k);
  }
  return sign * M(n - 1, n - 1);
}

std::optional<IntVector> solve_integer(const IntegerMatrix &A, const IntVector &b) {
  if (b.size() != A.rows())
    throw std::invalid_argument("right-hand side length mismatch");
  SmithDecomposition snf = smith_normal_form(A);
  std::size_t rk = snf.rank();
  IntVector y = snf.U * b;
  IntVector w(A.cols(), Int(0));
  for (std::size_t i = 0; i < A.rows(); ++i) {
    if (i < rk) {
      if (y[i] % snf.S(i, i) != 0)
        return std::nullopt;
      w[i] = y[i] / snf.S(i, i);
    } else if (y[i] != 0) {
      return std::nullopt;
    }
  }
  return snf.V * w;
}

std::vector<Rational> solve_rational(const IntegerMatrix &A, const std::vector<Rational> &b) {
  const std::size_t n = A.rows();
  if (A.cols() != n || b.size() != n)
    throw std::invalid_argument("solve_rational expects a square system");
  std::vector<std::vector<Rational>> M(n, std::vector<Rational>(n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j)
      M[i][j] = Rational(A(i, j));
    M[i][n] = b[i];
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && M[p][c] == 0)
      ++p;
    if (p == n)
      throw std::invalid_argument("singular system");
    std::swap(M[p], M[c]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || M[i][c] == 0)
        continue;
      Rational f = M[i][c] / M[c][c];
      for (std::size_t j = c; j <= n; ++j)
        M[i][j] -= f * M[c][j];
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = M[i][n] / M[i][i];
    x[i].canonicalize();
  }
  return x;
}

CokernelForm::CokernelForm(const IntegerMatrix &A) : ambient_(A.rows()) {
  SmithDecomposition snf = smith_normal_form(A);
  rank_ = snf.rank();
  free_rank_ = ambient_ - rank_;
  U_ = snf.U;
  for (std::size_t i = 0; i < rank_; ++i) {
    diag_.push_back(snf.S(i, i));
    if (snf.S(i, i) > 1)
      torsion_.push_back(snf.S(i, i));
  }
}

Int CokernelForm::order() const {
  if (free_rank_ != 0)
    throw std::logic_error("infinite cokernel has no order");
  Int o = 1;
  for (const auto &t : torsion_)
    o *= t;
  return o;
}

IntVector CokernelForm::canonical(const IntVector &v) const {
  if (v.size() != ambient_)
    throw std::invalid_argument("class vector length mismatch");
  IntVector y = U_ * v;
  IntVector out;
  for (std::size_t i = 0; i < rank_; ++i) {
    if (diag_[i] > 1) {
      Int r;
      mpz_fdiv_r(r.get_mpz_t(), y[i].get_mpz_t(), diag_[i].get_mpz_t());
      out.push_back(r);
    }
  }
  for (std::size_t i = rank_; i < ambient_; ++i)
    out.push_back(y[i]);
  return out;
}

IntVector CokernelForm::canonical(const std::vector<long> &v) const { return canonical(to_int_vector(v)); }

CokernelForm cokernel_form(const IntegerMatrix &A) { return CokernelForm(A); }

namespace {

using Bits = boost::dynamic_bitset<>;

std::vector<std::size_t> independent_subset(const std::vector<IntVector> &vs, std::size_t dim) {
  std::vector<std::size_t> chosen;
  std::vector<IntVector> rows;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    rows.push_back(vs[i]);
    if (rank(IntegerMatrix::from_rows(rows, dim)) == rows.size())
      chosen.push_back(i);
    else
      rows.pop_back();
  }
  return chosen;
}

IntVector scale_to_primitive(const std::vector<Rational> &x) {
  Int l = 1;
  for (const auto &q : x)
    l = lcm(l, q.get_den());
  IntVector v;
  for (const auto &q : x)
    v.push_back(Int(q.get_num() * (l / q.get_den())));
  return primitive(v);
}

// Rays of {z : <c, z> >= 0 for all c}, where the constraints span the space.
std::vector<IntVector> pointed_dual(const std::vector<IntVector> &cons, std::size_t k) {
  if (k == 0)
    return {};
  std::vector<std::size_t> basis = independent_subset(cons, k);
  if (basis.size() != k)
    throw std::logic_error("constraints do not span");
  IntegerMatrix AB(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      AB(i, j) = cons[basis[i]][j];

  const std::size_t m = cons.size();
  std::vector<IntVector> rays;
  std::vector<Bits> tight;
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<Rational> e(k, Rational(0));
    e[i] = 1;
    rays.push_back(scale_to_primitive(solve_rational(AB, e)));
    Bits t(m);
    for (std::size_t j = 0; j < k; ++j)
      if (j != i)
        t.set(basis[j]);
    tight.push_back(t);
  }
  std::vector<bool> in_basis(m, false);
  for (auto b : basis)
    in_basis[b] = true;

  for (std::size_t q = 0; q < m; ++q) {
    if (in_basis[q])
      continue;
    std::vector<Int> vals(rays.size());
    for (std::size_t r = 0; r < rays.size(); ++r)
      vals[r] = dot(cons[q], rays[r]);
    std::vector<IntVector> next;
    std::vector<Bits> next_tight;
    std::vector<std::size_t> pos, neg;
    for (std::size_t r = 0; r < rays.size(); ++r) {
      if (vals[r] > 0) {
        pos.push_back(r);
        next.push_back(rays[r]);
        next_tight.push_back(tight[r]);
      } else if (vals[r] == 0) {
        next.push_back(rays[r]);
        Bits t = tight[r];
        t.set(q);
        next_tight.push_back(t);
      } else {
        neg.push_back(r);
      }
    }
    for (auto p : pos)
      for (auto nn : neg) {
        Bits common = tight[p] & tight[nn];
        if (k >= 2 && common.count() < k - 2)
          continue;
        bool adjacent = true;
        for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
          if (r == p || r == nn)
            continue;
          if (common.is_subset_of(tight[r]))
            adjacent = false;
        }
        if (!adjacent)
          continue;
        IntVector w(k);
        for (std::size_t j = 0; j < k; ++j)
          w[j] = vals[p] * rays[nn][j] - vals[nn] * rays[p][j];
        if (is_zero(w))
          continue;
        next.push_back(primitive(w));
        common.set(q);
        next_tight.push_back(common);
      }
    rays = std::move(next);
    tight = std::move(next_tight);
  }
  return rays;
}

// Z-basis of span(vs) ∩ Z^dim as columns of a dim × k matrix.
IntegerMatrix saturated_span_basis(const std::vector<IntVector> &vs, std::size_t dim) {
  std::vector<IntVector> nonzero;
  for (const auto &v : vs)
    if (!is_zero(v))
      nonzero.push_back(v);
  if (nonzero.empty())
    return IntegerMatrix(dim, 0);
  std::vector<IntVector> perp = kernel_basis(IntegerMatrix::from_rows(nonzero, dim));
  if (perp.empty())
    return IntegerMatrix::identity(dim);
  std::vector<IntVector> span = kernel_basis(IntegerMatrix::from_rows(perp, dim));
  return IntegerMatrix::from_columns(span, dim);
}

IntVector coordinates_in(const IntegerMatrix &W, const IntVector &v) {
  auto sol = solve_integer(W, v);
  if (!sol)
    throw std::logic_error("vector not in lattice span");
  return *sol;
}

} // namespace

DualCone dual_cone_rays(const std::vector<IntVector> &generators, std::size_t ambient) {
  for (const auto &g : generators)
    if (g.size() != ambient)
      throw std::invalid_argument("ambient-rank mismatch in cone generators");
  DualCone out;
  IntegerMatrix W = saturated_span_basis(generators, ambient);
  const std::size_t k = W.cols();
  if (k == 0) {
    for (std::size_t i = 0; i < ambient; ++i) {
      IntVector e(ambient, Int(0));
      e[i] = 1;
      out.lineality.push_back(e);
    }
    return out;
  }
  std::vector<IntVector> nonzero;
  for (const auto &g : generators)
    if (!is_zero(g))
      nonzero.push_back(g);
  if (k < ambient)
    out.lineality = kernel_basis(IntegerMatrix::from_rows(nonzero, ambient));
  IntegerMatrix Wt = W.transpose();
  std::vector<IntVector> cons;
  for (const auto &g : nonzero)
    cons.push_back(Wt * g);
  for (const auto &z : pointed_dual(cons, k))
    out.rays.push_back(primitive(W * z));
  std::sort(out.rays.begin(), out.rays.end());
  out.rays.erase(std::unique(out.rays.begin(), out.rays.end()), out.rays.end());
  return out;
}

RationalCone make_cone(const std::vector<IntVector> &generators, std::size_t ambient) {
  RationalCone c;
  c.ambient = ambient;
  for (const auto &g : generators)
    if (!is_zero(g))
      c.generators.push_back(primitive(g));
  std::sort(c.generators.begin(), c.generators.end());
  c.generators.erase(std::unique(c.generators.begin(), c.generators.end()), c.generators.end());
  DualCone d = dual_cone_rays(c.generators, ambient);
  c.facet_normals = d.rays;
  c.lineality_of_dual = d.lineality;
  return c;
}

bool contains(const RationalCone &cone, const IntVector &v) {
  for (const auto &f : cone.facet_normals)
    if (dot(f, v) < 0)
      return false;
  for (const auto &l : cone.lineality_of_dual)
    if (dot(l, v) != 0)
      return false;
  return true;
}

namespace {

std::vector<std::size_t> spanning_coordinates(const std::vector<IntVector> &pts, std::size_t dim) {
  std::vector<std::size_t> coords;
  std::size_t target = rank(IntegerMatrix::from_rows(pts, dim));
  for (std::size_t c = 0; c < dim && coords.size() < target; ++c) {
    coords.push_back(c);
    std::vector<IntVector> proj;
    for (const auto &p : pts) {
      IntVector q;
      for (auto cc : coords)
        q.push_back(p[cc]);
      proj.push_back(q);
    }
    if (rank(IntegerMatrix::from_rows(proj, coords.size())) != coords.size())
      coords.pop_back();
  }
  return coords;
}

void triangulate_rec(const std::vector<IntVector> &points, const std::vector<std::size_t> &idx,
                     std::vector<std::vector<std::size_t>> &out, std::vector<std::size_t> &apex) {
  const std::size_t dim = points.front().size();
  std::vector<IntVector> sub;
  for (auto i : idx)
    sub.push_back(points[i]);
  std::vector<std::size_t> coords = spanning_coordinates(sub, dim);
  const std::size_t k = coords.size();
  if (idx.size() == k) {
    std::vector<std::size_t> simplex = idx;
    simplex.insert(simplex.end(), apex.begin(), apex.end());
    std::sort(simplex.begin(), simplex.end());
    out.push_back(simplex);
    return;
  }
  std::vector<IntVector> proj;
  for (const auto &p : sub) {
    IntVector q;
    for (auto c : coords)
      q.push_back(p[c]);
    proj.push_back(q);
  }
  std::vector<IntVector> facets = dual_cone_rays(proj, k).rays;
  for (const auto &f : facets) {
    if (dot(f, proj[0]) <= 0)
      continue;
    std::vector<std::size_t> face;
    for (std::size_t i = 0; i < idx.size(); ++i)
      if (dot(f, proj[i]) == 0)
        face.push_back(idx[i]);
    apex.push_back(idx[0]);
    triangulate_rec(points, face, out, apex);
    apex.pop_back();
  }
}

std::vector<IntVector> parallelepiped_points(const std::vector<IntVector> &gens) {
  const std::size_t k = gens.size();
  IntegerMatrix G = IntegerMatrix::from_columns(gens, k);
  SmithDecomposition snf = smith_normal_form(G);
  // columns of U^{-1}
  std::vector<IntVector> uinv_cols;
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<Rational> e(k, Rational(0));
    e[i] = 1;
    std::vector<Rational> x = solve_rational(snf.U, e);
    IntVector col;
    for (auto &q : x)
      col.push_back(Int(q.get_num()));
    uinv_cols.push_back(col);
  }
  std::vector<Int> s(k);
  for (std::size_t i = 0; i < k; ++i)
    s[i] = snf.S(i, i);

  std::vector<IntVector> out;
  std::vector<Int> e(k, Int(0));
  while (true) {
    IntVector x(k, Int(0));
    for (std::size_t i = 0; i < k; ++i)
      if (e[i] != 0)
        for (std::size_t j = 0; j < k; ++j)
          x[j] += e[i] * uinv_cols[i][j];
    std::vector<Rational> xr(x.begin(), x.end());
    std::vector<Rational> lambda = solve_rational(G, xr);
    IntVector p = x;
    for (std::size_t i = 0; i < k; ++i) {
      Int fl;
      mpz_fdiv_q(fl.get_mpz_t(), lambda[i].get_num_mpz_t(), lambda[i].get_den_mpz_t());
      if (fl != 0)
        for (std::size_t j = 0; j < k; ++j)
          p[j] -= fl * gens[i][j];
    }
    out.push_back(p);
    std::size_t pos = 0;
    while (pos < k) {
      e[pos] += 1;
      if (e[pos] < s[pos])
        break;
      e[pos] = 0;
      ++pos;
    }
    if (pos == k)
      break;
  }
  return out;
}

} // namespace

std::vector<std::vector<std::size_t>> triangulate(const std::vector<IntVector> &points) {
  std::vector<std::vector<std::size_t>> out;
  if (points.empty())
    return out;
  std::vector<std::size_t> idx(points.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<std::size_t> apex;
  triangulate_rec(points, idx, out, apex);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<IntVector> hilbert_basis(const RationalCone &cone) {
  const std::size_t m = cone.ambient;
  if (cone.generators.empty())
    return {};
  IntegerMatrix W = saturated_span_basis(cone.generators, m);
  const std::size_t k = W.cols();
  std::vector<IntVector> Y;
  for (const auto &g : cone.generators)
    Y.push_back(coordinates_in(W, g));
  std::vector<IntVector> facets = dual_cone_rays(Y, k).rays;
  if (facets.empty() || rank(IntegerMatrix::from_rows(facets, k)) != k)
    throw InvalidInput("hilbert_basis: cone is not pointed");
  std::vector<IntVector> rays = dual_cone_rays(facets, k).rays;

  std::set<IntVector> candidates(rays.begin(), rays.end());
  for (const auto &simplex : triangulate(rays)) {
    std::vector<IntVector> gens;
    for (auto i : simplex)
      gens.push_back(rays[i]);
    for (auto &p : parallelepiped_points(gens))
      if (!is_zero(p))
        candidates.insert(p);
  }
  std::vector<IntVector> cand(candidates.begin(), candidates.end());
  std::vector<IntVector> result;
  for (const auto &x : cand) {
    bool reducible = false;
    for (const auto &y : cand) {
      if (y == x)
        continue;
      IntVector diff(k);
      for (std::size_t j = 0; j < k; ++j)
        diff[j] = x[j] - y[j];
      bool inside = true;
      for (const auto &f : facets)
        if (dot(f, diff) < 0) {
          inside = false;
          break;
        }
      if (inside) {
        reducible = true;
        break;
      }
    }
    if (!reducible)
      result.push_back(W * x);
  }
  std::sort(result.begin(), result.end());
  return result;
}

std::vector<IntVector> hilbert_basis(const std::vector<IntVector> &generators, std::size_t ambient) {
  return hilbert_basis(make_cone(generators, ambient));
}

SemigroupFibers::SemigroupFibers(const IntegerMatrix &B) : B_(B) {
  const std::size_t d = B.rows(), n = B.cols();
  if (rank(B) != n)
    throw InvalidInput("embedding matrix must have full column rank");
  std::vector<IntVector> rows;
  for (std::size_t i = 0; i < d; ++i)
    rows.push_back(B.row(i));
  rays_ = dual_cone_rays(rows, n).rays;
  for (const auto &r : rays_)
    rays_image_.push_back(to_long_vector(B * r));
  for (const auto &h : hilbert_basis(rays_, n))
    hb_image_.push_back(to_long_vector(B * h));

  std::vector<std::size_t> pick(n);
  std::function<void(std::size_t, std::size_t)> choose = [&](std::size_t start, std::size_t depth) {
    if (depth == n) {
      IntegerMatrix BS(n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          BS(i, j) = B(pick[i], j);
      if (determinant(BS) != 0)
        bases_.push_back(pick);
      return;
    }
    for (std::size_t i = start; i < d; ++i) {
      pick[depth] = i;
      choose(i + 1, depth + 1);
    }
  };
  choose(0, 0);
}

std::vector<std::vector<long>> SemigroupFibers::generators(const IntVector &target) const {
  const std::size_t d = B_.rows(), n = B_.cols();
  if (target.size() != d)
    throw std::invalid_argument("fiber target length mismatch");

  auto sub_matrix = [&](const std::vector<std::size_t> &S) {
    IntegerMatrix BS(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        BS(i, j) = B_(S[i], j);
    return BS;
  };

  // vertices of {w >= 0 : w - target in image(B) ⊗ R}
  std::vector<std::vector<Rational>> vertices;
  for (const auto &S : bases_) {
    std::vector<Rational> rhs;
    for (auto i : S)
      rhs.push_back(Rational(-target[i]));
    std::vector<Rational> u = solve_rational(sub_matrix(S), rhs);
    std::vector<Rational> w(d);
    bool feasible = true;
    for (std::size_t i = 0; i < d && feasible; ++i) {
      w[i] = Rational(target[i]);
      for (std::size_t j = 0; j < n; ++j)
        w[i] += Rational(B_(i, j)) * u[j];
      w[i].canonicalize();
      if (w[i] < 0)
        feasible = false;
    }
    if (feasible)
      vertices.push_back(w);
  }
  if (vertices.empty())
    return {};

  std::vector<long> box(d, 0);
  for (std::size_t i = 0; i < d; ++i) {
    Rational mx = 0;
    for (const auto &w : vertices)
      mx = std::max(mx, w[i]);
    Int fl;
    mpz_fdiv_q(fl.get_mpz_t(), mx.get_num_mpz_t(), mx.get_den_mpz_t());
    std::vector<long> col;
    for (const auto &r : rays_image_)
      col.push_back(r[i]);
    std::sort(col.rbegin(), col.rend());
    long extra = 0;
    for (std::size_t j = 0; j < std::min(n, col.size()); ++j)
      extra += col[j];
    box[i] = fl.get_si() + extra;
  }

  // u-ranges through the invertible row subset giving the smallest box
  std::vector<long> best_lo, best_hi;
  double best_volume = -1;
  for (const auto &S : bases_) {
    IntegerMatrix BS = sub_matrix(S);
    std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n));
    for (std::size_t c = 0; c < n; ++c) {
      std::vector<Rational> e(n, Rational(0));
      e[c] = 1;
      std::vector<Rational> col = solve_rational(BS, e);
      for (std::size_t r = 0; r < n; ++r)
        inv[r][c] = col[r];
    }
    std::vector<long> lo(n), hi(n);
    double volume = 1;
    for (std::size_t r = 0; r < n; ++r) {
      Rational a = 0, b = 0;
      for (std::size_t c = 0; c < n; ++c) {
        Rational base = -inv[r][c] * Rational(target[S[c]]);
        Rational span = inv[r][c] * Rational(box[S[c]]);
        a += base + (span < 0 ? span : Rational(0));
        b += base + (span > 0 ? span : Rational(0));
      }
      Int fl, ce;
      mpz_fdiv_q(fl.get_mpz_t(), a.get_num_mpz_t(), a.get_den_mpz_t());
      mpz_cdiv_q(ce.get_mpz_t(), b.get_num_mpz_t(), b.get_den_mpz_t());
      lo[r] = fl.get_si();
      hi[r] = ce.get_si();
      volume *= static_cast<double>(hi[r] - lo[r] + 1);
    }
    if (best_volume < 0 || volume < best_volume) {
      best_volume = volume;
      best_lo = lo;
      best_hi = hi;
    }
  }

  std::vector<std::vector<long>> Bl(d, std::vector<long>(n));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < n; ++j)
      Bl[i][j] = B_(i, j).get_si();
  std::vector<long> t0 = to_long_vector(target);

  std::vector<std::vector<long>> found;
  std::vector<long> u = best_lo;
  std::vector<long> v(d);
  while (true) {
    bool ok = true;
    for (std::size_t i = 0; i < d && ok; ++i) {
      long s = t0[i];
      for (std::size_t j = 0; j < n; ++j)
        s += Bl[i][j] * u[j];
      if (s < 0 || s > box[i])
        ok = false;
      v[i] = s;
    }
    if (ok) {
      bool dominated = false;
      for (const auto &h : hb_image_) {
        bool ge = true;
        for (std::size_t i = 0; i < d && ge; ++i)
          if (v[i] < h[i])
            ge = false;
        if (ge) {
          dominated = true;
          break;
        }
      }
      if (!dominated)
        found.push_back(v);
    }
    std::size_t pos = 0;
    while (pos < n) {
      if (++u[pos] <= best_hi[pos])
        break;
      u[pos] = best_lo[pos];
      ++pos;
    }
    if (pos == n)
      break;
  }
  std::sort(found.begin(), found.end());
  return found;
}

std::vector<std::vector<long>> fiber_generators(const IntegerMatrix &B, const IntVector &target) {
  return SemigroupFibers(B).generators(target);
}

IntVector primitive(const IntVector &v) {
  Int g = 0;
  for (const auto &x : v)
    g = gcd(g, x);
  if (g == 0)
    throw std::invalid_argument("primitive of the zero vector");
  IntVector out;
  for (const auto &x : v)
    out.push_back(Int(x / g));
  return out;
}

IntVector to_int_vector(const std::vector<long> &v) {
  IntVector out;
  for (long x : v)
    out.push_back(Int(x));
  return out;
}

std::vector<long> to_long_vector(const IntVector &v) {
  std::vector<long> out;
  for (const auto &x : v) {
    if (!x.fits_slong_p())
      throw std::overflow_error("integer does not fit in a machine word");
    out.push_back(x.get_si());
  }
  return out;
}

Int dot(const IntVector &a, const IntVector &b) {
  if (a.size() != b.size())
    throw std::invalid_argument("dot product length mismatch");
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    s += a[i] * b[i];
  return s;
}

bool is_zero(const IntVector &v) {
  return std::all_of(v.begin(), v.end(), [](const Int &x) { return x == 0; });
}

} // namespace toricell::lattice
