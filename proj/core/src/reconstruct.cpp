#include "toricell/reconstruct.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace toricell::reconstruct {

using lattice::Int;

Point ProjectionData::image(const quiver::Divisor &v) const {
  Point p{Rational(0), Rational(0)};
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t k = 0; k < v.size(); ++k)
      p[r] += f_prime[r][k] * v[k];
  return p;
}

namespace {

long det3(const std::vector<std::vector<long>> &m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

// rows 2 and 3 of the inverse of a unimodular matrix
std::vector<std::vector<long>> complement_rows(const lattice::IntegerMatrix &V) {
  std::vector<std::vector<long>> m(3, std::vector<long>(3));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      m[i][j] = V(i, j).get_si();
  const long det = det3(m);
  auto cof = [&](int i, int j) {
    int r0 = (i + 1) % 3, r1 = (i + 2) % 3, c0 = (j + 1) % 3, c1 = (j + 2) % 3;
    return m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
  };
  std::vector<std::vector<long>> rows;
  for (int r = 1; r < 3; ++r) {
    std::vector<long> row(3);
    for (int c = 0; c < 3; ++c)
      row[c] = cof(c, r) / det;
    rows.push_back(row);
  }
  return rows;
}

int half(const Point &p) { return p[1] < 0 || (p[1] == 0 && p[0] < 0) ? 1 : 0; }

Rational cross(const Point &a, const Point &b) { return a[0] * b[1] - a[1] * b[0]; }

Point minus(const Point &a, const Point &b) { return {a[0] - b[0], a[1] - b[1]}; }

Point plus(const Point &a, const Point &b) { return {a[0] + b[0], a[1] + b[1]}; }

bool angle_less(const Point &a, const Point &b) {
  int ha = half(a), hb = half(b);
  if (ha != hb)
    return ha < hb;
  return cross(a, b) > 0;
}

Rational floor_of(const Rational &x) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return Rational(q);
}

int sgn(const Rational &x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

} // namespace

ProjectionData projection_maps(const toric::GorensteinToricVariety &X,
                               const std::optional<std::vector<std::vector<long>>> &m_basis) {
  if (X.n != 3)
    throw InvalidInput("tiling reconstruction needs a threefold");
  if (!X.is_gorenstein())
    throw InvalidInput("tiling reconstruction needs a Gorenstein variety");
  const auto &z = *X.gorenstein_covector;
  ProjectionData P;
  if (m_basis) {
    if (m_basis->size() != 3 || std::any_of(m_basis->begin(), m_basis->end(), [](const auto &r) { return r.size() != 3; }))
      throw InvalidInput("m_basis must be three vectors of length three");
    if ((*m_basis)[2] != z)
      throw InvalidInput("the last m_basis vector must be the Gorenstein covector");
    if (std::abs(det3(*m_basis)) != 1)
      throw InvalidInput("m_basis is not a lattice basis");
    P.m_basis = *m_basis;
  } else if (std::abs(z[2]) == 1) {
    P.m_basis = {{1, 0, 0}, {0, 1, 0}, z};
  } else {
    lattice::IntegerMatrix R(1, 3);
    for (std::size_t j = 0; j < 3; ++j)
      R(0, j) = z[j];
    auto snf = lattice::smith_normal_form(R);
    auto rows = complement_rows(snf.V);
    P.m_basis = {rows[0], rows[1], z};
  }
  if (det3(P.m_basis) < 0)
    std::swap(P.m_basis[0], P.m_basis[1]);

  const std::size_t d = X.d();
  P.B = lattice::IntegerMatrix(d, 3);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t j = 0; j < 3; ++j) {
      long s = 0;
      for (std::size_t k = 0; k < 3; ++k)
        s += P.m_basis[j][k] * X.rays[r][k];
      P.B(r, j) = s;
    }
  lattice::IntegerMatrix G(3, 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t r = 0; r < d; ++r)
        G(i, j) += P.B(r, i) * P.B(r, j);
  P.f.assign(3, std::vector<Rational>(d));
  for (std::size_t r = 0; r < d; ++r) {
    std::vector<Rational> b(3);
    for (std::size_t i = 0; i < 3; ++i)
      b[i] = Rational(P.B(r, i));
    auto col = lattice::solve_rational(G, b);
    for (std::size_t i = 0; i < 3; ++i)
      P.f[i][r] = col[i];
  }
  P.f_prime = {P.f[0], P.f[1]};

  std::vector<Point> chi;
  for (std::size_t r = 0; r < d; ++r)
    chi.push_back({P.f[0][r], P.f[1][r]});
  std::vector<int> order(d);
  for (std::size_t r = 0; r < d; ++r)
    order[r] = static_cast<int>(r);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return angle_less(chi[a], chi[b]); });
  auto start = std::find(order.begin(), order.end(), 0);
  std::rotate(order.begin(), start, order.end());
  P.cyclic_order = order;
  return P;
}

Tiling embed_tiling(const quiver::QuiverOfSections &Q, const superpotential::Superpotential &W,
                    const ProjectionData &proj) {
  Tiling T;
  T.cyclic_order = proj.cyclic_order;
  auto lifts = quiver::preferred_lifts(Q);
  for (const auto &u : lifts.lifts) {
    Point p = proj.image(u);
    T.vertices.push_back({p[0] - floor_of(p[0]), p[1] - floor_of(p[1])});
  }
  for (const auto &a : Q.arrows)
    T.edges.push_back({a.id, a.tail, a.head, T.vertices[a.tail], proj.image(a.label)});
  for (std::size_t t = 0; t < W.terms.size(); ++t) {
    Face F;
    F.term = static_cast<int>(t);
    F.arrows = W.terms[t].arrows;
    Point p = T.vertices[Q.arrows[F.arrows.front()].tail];
    for (int a : F.arrows) {
      F.corners.push_back(p);
      p = plus(p, T.edges[a].vector);
    }
    Rational area2(0);
    for (std::size_t k = 0; k < F.corners.size(); ++k)
      area2 += cross(F.corners[k], F.corners[(k + 1) % F.corners.size()]);
    F.signed_area = area2 / 2;
    F.orientation = sgn(F.signed_area);
    T.faces.push_back(std::move(F));
  }
  return T;
}

namespace {

bool on_segment(const Point &p, const Point &a, const Point &b) {
  if (cross(minus(b, a), minus(p, a)) != 0)
    return false;
  return std::min(a[0], b[0]) <= p[0] && p[0] <= std::max(a[0], b[0]) && std::min(a[1], b[1]) <= p[1] &&
         p[1] <= std::max(a[1], b[1]);
}

// Intersection of [p, p+u] and [q, q+v] other than a single common endpoint.
std::optional<std::optional<Point>> bad_meeting(const Point &p, const Point &u, const Point &q, const Point &v) {
  const Point p2 = plus(p, u), q2 = plus(q, v);
  const Rational denom = cross(u, v);
  if (denom != 0) {
    const Point w = minus(q, p);
    const Rational s = cross(w, v) / denom, t = cross(w, u) / denom;
    if (s < 0 || s > 1 || t < 0 || t > 1)
      return std::nullopt;
    const bool end_p = s == 0 || s == 1, end_q = t == 0 || t == 1;
    if (end_p && end_q)
      return std::nullopt;
    return std::optional<Point>(Point{p[0] + s * u[0], p[1] + s * u[1]});
  }
  if (cross(u, minus(q, p)) != 0)
    return std::nullopt;
  // collinear: count the shared length through endpoint containment
  std::vector<Point> shared;
  for (const Point &x : {p, p2})
    if (on_segment(x, q, q2))
      shared.push_back(x);
  for (const Point &x : {q, q2})
    if (on_segment(x, p, p2))
      shared.push_back(x);
  if (shared.empty())
    return std::nullopt;
  for (const Point &x : shared)
    if (x != shared.front())
      return std::optional<Point>(std::nullopt);
  const Point &x = shared.front();
  if ((x == p || x == p2) && (x == q || x == q2))
    return std::nullopt;
  return std::optional<Point>(x);
}

long floor_long(const Rational &x) { return floor_of(x).get_num().get_si(); }

} // namespace

TilingReport verify_tiling(const Tiling &T) {
  TilingReport rep;
  std::map<int, std::pair<int, int>> orientation_count;
  for (const auto &e : T.edges)
    orientation_count[e.arrow] = {0, 0};
  rep.total_area = 0;
  for (std::size_t f = 0; f < T.faces.size(); ++f) {
    const Face &F = T.faces[f];
    Point sum{Rational(0), Rational(0)};
    for (int a : F.arrows)
      sum = plus(sum, T.edges[a].vector);
    if (sum[0] != 0 || sum[1] != 0)
      rep.open_faces.push_back(static_cast<int>(f));
    bool convex = F.orientation != 0 && F.arrows.size() >= 3;
    std::size_t descents = 0;
    const std::size_t L = F.arrows.size();
    for (std::size_t k = 0; k < L && convex; ++k) {
      const Point &a = T.edges[F.arrows[k]].vector, &b = T.edges[F.arrows[(k + 1) % L]].vector;
      if (sgn(cross(a, b)) != F.orientation)
        convex = false;
      bool forward = F.orientation > 0 ? angle_less(a, b) : angle_less(b, a);
      if (!forward)
        ++descents;
    }
    if (!convex || descents != 1)
      rep.nonconvex_faces.push_back(static_cast<int>(f));
    rep.total_area += F.signed_area > 0 ? F.signed_area : Rational(-F.signed_area);
    for (int a : F.arrows) {
      if (F.orientation > 0)
        ++orientation_count[a].first;
      else if (F.orientation < 0)
        ++orientation_count[a].second;
    }
  }
  for (const auto &[a, c] : orientation_count)
    if (c.first != 1 || c.second != 1)
      rep.unbalanced_edges.push_back(a);

  for (std::size_t i = 0; i < T.edges.size(); ++i)
    for (std::size_t j = i; j < T.edges.size(); ++j) {
      const Edge &e = T.edges[i], &g = T.edges[j];
      auto lo = [](const Point &s, const Point &v, int c) { return std::min<Rational>(s[c], s[c] + v[c]); };
      auto hi = [](const Point &s, const Point &v, int c) { return std::max<Rational>(s[c], s[c] + v[c]); };
      std::array<long, 2> from{}, to{};
      for (int c = 0; c < 2; ++c) {
        from[c] = floor_long(lo(e.start, e.vector, c) - hi(g.start, g.vector, c)) - 1;
        to[c] = floor_long(hi(e.start, e.vector, c) - lo(g.start, g.vector, c)) + 1;
      }
      for (long sx = from[0]; sx <= to[0]; ++sx)
        for (long sy = from[1]; sy <= to[1]; ++sy) {
          if (i == j && sx == 0 && sy == 0)
            continue;
          if (i == j && (sx < 0 || (sx == 0 && sy < 0)))
            continue;
          Point q = plus(g.start, Point{Rational(sx), Rational(sy)});
          auto bad = bad_meeting(e.start, e.vector, q, g.vector);
          if (bad)
            rep.crossings.push_back({e.arrow, g.arrow, {sx, sy}, *bad});
        }
    }
  rep.euler = static_cast<long>(T.vertices.size()) - static_cast<long>(T.edges.size()) +
              static_cast<long>(T.faces.size());
  return rep;
}

bool face_labels_monotone(const quiver::QuiverOfSections &Q, const Tiling &T, const Face &F) {
  const std::size_t d = T.cyclic_order.size();
  if (F.orientation == 0 || d == 0)
    return false;
  std::vector<int> pos(d);
  for (std::size_t k = 0; k < d; ++k) {
    std::size_t idx = F.orientation > 0 ? k : (d - k) % d;
    pos[T.cyclic_order[idx]] = static_cast<int>(k);
  }
  // each label must be a cyclic interval; record its first and last position
  std::vector<std::pair<int, int>> spans;
  for (int a : F.arrows) {
    std::vector<char> in(d, 0);
    std::size_t count = 0;
    for (std::size_t r = 0; r < d; ++r)
      if (Q.arrows[a].label[r] > 0) {
        if (Q.arrows[a].label[r] > 1)
          return false;
        in[pos[r]] = 1;
        ++count;
      }
    if (count == 0 || count == d)
      return false;
    int first = -1;
    for (std::size_t k = 0; k < d; ++k)
      if (in[k] && !in[(k + d - 1) % d]) {
        if (first >= 0)
          return false;
        first = static_cast<int>(k);
      }
    spans.push_back({first, static_cast<int>((first + count - 1) % d)});
  }
  for (std::size_t k = 0; k < spans.size(); ++k)
    if ((spans[k].second + 1) % static_cast<int>(d) != spans[(k + 1) % spans.size()].first)
      return false;
  return true;
}

std::string to_svg(const Tiling &T) {
  const double scale = 400;
  auto X = [&](const Rational &x) { return 50 + scale * x.get_d(); };
  auto Y = [&](const Rational &y) { return 50 + scale * (1 - y.get_d()); };
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"500\" height=\"500\">\n";
  out << "<rect x=\"50\" y=\"50\" width=\"400\" height=\"400\" fill=\"none\" stroke=\"grey\"/>\n";
  for (const auto &F : T.faces) {
    out << "<polygon fill=\"" << (F.orientation > 0 ? "#dddddd" : "#ffffff") << "\" stroke=\"black\" points=\"";
    for (const auto &c : F.corners)
      out << X(c[0]) << "," << Y(c[1]) << " ";
    out << "\"/>\n";
  }
  for (std::size_t v = 0; v < T.vertices.size(); ++v)
    out << "<text x=\"" << X(T.vertices[v][0]) << "\" y=\"" << Y(T.vertices[v][1]) << "\">" << v << "</text>\n";
  out << "</svg>\n";
  return out.str();
}

} // namespace toricell::reconstruct
