#pragma once

#include <algorithm>
#include <array>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "pinch4/errors.hpp"

namespace pinch4 {

using VecX = Eigen::VectorXd;
using MatX = Eigen::MatrixXd;
using Index = std::vector<int>;

// Vertex coordinates affine in delta: base + delta * slope.
struct AffineVertex {
  VecX base;
  VecX slope;

  VecX at(double delta) const { return base + delta * slope; }
};

// normal . x <= offset + delta * offset_slope
struct AffineInequality {
  VecX normal;
  double offset = 0.0;
  double offset_slope = 0.0;

  double slack(const VecX& x, double delta) const {
    return offset + delta * offset_slope - normal.dot(x);
  }
};

enum class PolytopeKind { simplex, prism, general };

struct Face {
  Index vertices;
  MatX basis;  // orthonormal columns spanning the directions of the affine hull

  int dim() const { return static_cast<int>(basis.cols()); }
};

struct Polytope {
  std::string name;
  int dim_ambient = 0;
  std::vector<AffineVertex> vertices;
  std::vector<std::string> labels;
  PolytopeKind kind = PolytopeKind::simplex;
  std::vector<Index> faces;  // every nonempty face, sorted by size then lexicographically
  std::vector<int> face_dims;
  std::vector<AffineInequality> inequalities;  // facet description, prisms only

  int num_vertices() const { return static_cast<int>(vertices.size()); }

  int dim() const {
    return face_dims.empty() ? 0 : *std::max_element(face_dims.begin(), face_dims.end());
  }

  // Rows are the vertices evaluated at delta.
  MatX evaluate(double delta) const {
    MatX m(num_vertices(), dim_ambient);
    for (int i = 0; i < num_vertices(); ++i) m.row(i) = vertices[i].at(delta).transpose();
    return m;
  }

  VecX vertex(int i, double delta) const { return vertices.at(i).at(delta); }

  int face_index(const Index& f) const {
    Index s = f;
    std::sort(s.begin(), s.end());
    auto it = std::find(faces.begin(), faces.end(), s);
    return it == faces.end() ? -1 : static_cast<int>(it - faces.begin());
  }

  bool is_face(const Index& f) const { return face_index(f) >= 0; }

  int face_dim(const Index& f) const {
    const int i = face_index(f);
    if (i < 0) throw Error(Errc::NotAFace, "vertex subset is not a face");
    return face_dims[i];
  }
};

namespace detail {

struct Lin {
  double base, slope;
};

inline AffineVertex make_vertex(std::initializer_list<Lin> coords) {
  AffineVertex v{VecX(coords.size()), VecX(coords.size())};
  int i = 0;
  for (const auto& c : coords) {
    v.base[i] = c.base;
    v.slope[i] = c.slope;
    ++i;
  }
  return v;
}

inline AffineVertex truncate(const AffineVertex& v, int n) {
  return {v.base.head(n), v.slope.head(n)};
}

inline bool lex_size_less(const Index& a, const Index& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

inline void finalize_simplex_faces(Polytope& p) {
  const int n = p.num_vertices();
  p.faces.clear();
  p.face_dims.clear();
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    Index f;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) f.push_back(i);
    p.faces.push_back(f);
  }
  std::sort(p.faces.begin(), p.faces.end(), lex_size_less);
  for (const auto& f : p.faces) p.face_dims.push_back(static_cast<int>(f.size()) - 1);
}

// Prism with triangles {a0,a1,a2}, {b0,b1,b2} and vertical edges (ai, bi).
inline void finalize_prism_faces(Polytope& p, const std::array<int, 3>& a,
                                 const std::array<int, 3>& b) {
  std::vector<std::pair<Index, int>> lat;
  // triangle faces x segment faces
  std::vector<std::vector<int>> tri;  // positions 0..2
  for (unsigned mask = 1; mask < 8u; ++mask) {
    std::vector<int> s;
    for (int i = 0; i < 3; ++i)
      if (mask & (1u << i)) s.push_back(i);
    tri.push_back(s);
  }
  const std::vector<std::vector<int>> seg = {{0}, {1}, {0, 1}};
  for (const auto& t : tri)
    for (const auto& s : seg) {
      Index f;
      for (int i : t)
        for (int e : s) f.push_back(e == 0 ? a[i] : b[i]);
      std::sort(f.begin(), f.end());
      lat.emplace_back(f, static_cast<int>(t.size()) - 1 + static_cast<int>(s.size()) - 1);
    }
  std::sort(lat.begin(), lat.end(),
            [](const auto& x, const auto& y) { return lex_size_less(x.first, y.first); });
  p.faces.clear();
  p.face_dims.clear();
  for (auto& [f, d] : lat) {
    p.faces.push_back(f);
    p.face_dims.push_back(d);
  }
}

}  // namespace detail

// Coordinates (w1+, w2+, w1-, w2-, u [, t1 [, t2]]).
inline Polytope einstein_simplex(int variant) {
  using detail::make_vertex;
  const double t = 1.0 / 3.0;
  // k * (delta - 1) has base -k and slope k
  auto dm = [](double k) { return detail::Lin{-k, k}; };
  const detail::Lin z{0, 0};
  const detail::Lin u_a{t, 2 * t};   // (2 delta + 1) / 3
  const detail::Lin u_b{2 * t, t};   // (delta + 2) / 3
  const detail::Lin one{1, 0}, del{0, 1};
  const std::vector<AffineVertex> v = {
      make_vertex({dm(2 * t), dm(2 * t), z, z, u_a, dm(-t), dm(2 * t)}),
      make_vertex({dm(4 * t), dm(-2 * t), z, z, u_b, dm(-2 * t), dm(t)}),
      make_vertex({z, z, dm(2 * t), dm(2 * t), u_a, dm(t), dm(-2 * t)}),
      make_vertex({z, z, dm(4 * t), dm(-2 * t), u_b, dm(2 * t), dm(-t)}),
      make_vertex({z, z, z, z, one, dm(1), z}),
      make_vertex({z, z, z, z, one, dm(-1), z}),
      make_vertex({z, z, z, z, del, z, dm(1)}),
      make_vertex({z, z, z, z, del, z, dm(-1)}),
  };
  Polytope p;
  p.kind = PolytopeKind::simplex;
  switch (variant) {
    case 7:
      p.name = "d7";
      p.dim_ambient = 7;
      p.vertices = v;
      for (int i = 1; i <= 8; ++i) p.labels.push_back("v" + std::to_string(i));
      break;
    case 6:
      p.name = "d6";
      p.dim_ambient = 6;
      for (int i = 0; i < 6; ++i) p.vertices.push_back(detail::truncate(v[i], 6));
      p.vertices.push_back(make_vertex({z, z, z, z, del, z}));
      for (int i = 1; i <= 7; ++i) p.labels.push_back("q" + std::to_string(i));
      break;
    case 5:
      p.name = "d5";
      p.dim_ambient = 5;
      for (int i = 0; i < 4; ++i) p.vertices.push_back(detail::truncate(v[i], 5));
      p.vertices.push_back(make_vertex({z, z, z, z, one}));
      p.vertices.push_back(make_vertex({z, z, z, z, del}));
      for (int i = 1; i <= 6; ++i) p.labels.push_back("p" + std::to_string(i));
      break;
    default:
      throw Error(Errc::BadParameter, "simplex variant must be 5, 6 or 7");
  }
  detail::finalize_simplex_faces(p);
  return p;
}

inline Polytope einstein_simplex(double delta, int variant) {
  check_delta_open(delta);
  return einstein_simplex(variant);
}

// The four cells of the ordered box delta <= v1 <= v2 <= v3 <= 1 cut by v = (delta+1)/2.
inline std::vector<Polytope> ville_cells() {
  using detail::make_vertex;
  const detail::Lin d{0, 1}, m{0.5, 0.5}, o{1, 0};
  std::vector<Polytope> cells(4);

  auto ineq = [](double a, double b, double c, double off, double off_slope) {
    return AffineInequality{Eigen::Vector3d(a, b, c), off, off_slope};
  };

  Polytope& c1 = cells[0];
  c1.name = "v1";
  c1.vertices = {make_vertex({m, m, m}), make_vertex({m, m, o}), make_vertex({m, o, o}),
                 make_vertex({o, o, o})};
  detail::finalize_simplex_faces(c1);

  Polytope& c2 = cells[1];
  c2.name = "v2";
  c2.kind = PolytopeKind::prism;
  c2.vertices = {make_vertex({d, m, m}), make_vertex({d, m, o}), make_vertex({d, o, o}),
                 make_vertex({m, m, m}), make_vertex({m, m, o}), make_vertex({m, o, o})};
  detail::finalize_prism_faces(c2, {0, 1, 2}, {3, 4, 5});
  // delta <= v1 <= m <= v2 <= v3 <= 1
  c2.inequalities = {ineq(-1, 0, 0, 0, -1), ineq(1, 0, 0, 0.5, 0.5), ineq(0, -1, 0, -0.5, -0.5),
                     ineq(0, 1, -1, 0, 0), ineq(0, 0, 1, 1, 0)};

  Polytope& c3 = cells[2];
  c3.name = "v3";
  c3.kind = PolytopeKind::prism;
  c3.vertices = {make_vertex({d, d, m}), make_vertex({d, d, o}), make_vertex({d, m, m}),
                 make_vertex({d, m, o}), make_vertex({m, m, m}), make_vertex({m, m, o})};
  detail::finalize_prism_faces(c3, {0, 2, 4}, {1, 3, 5});
  // delta <= v1 <= v2 <= m <= v3 <= 1
  c3.inequalities = {ineq(-1, 0, 0, 0, -1), ineq(1, -1, 0, 0, 0), ineq(0, 1, 0, 0.5, 0.5),
                     ineq(0, 0, -1, -0.5, -0.5), ineq(0, 0, 1, 1, 0)};

  Polytope& c4 = cells[3];
  c4.name = "v4";
  c4.vertices = {make_vertex({d, d, d}), make_vertex({d, d, m}), make_vertex({d, m, m}),
                 make_vertex({m, m, m})};
  detail::finalize_simplex_faces(c4);

  for (int i = 0; i < 4; ++i) {
    cells[i].dim_ambient = 3;
    for (int j = 1; j <= cells[i].num_vertices(); ++j)
      cells[i].labels.push_back("q" + std::to_string(j) + "^" + std::to_string(i + 1));
  }
  return cells;
}

inline std::vector<Polytope> ville_cells(double delta) {
  check_delta_open(delta);
  return ville_cells();
}

// Orthonormal basis of span{v_j - v_0} by modified Gram-Schmidt.
inline MatX affine_basis(const MatX& points, double pivot_tol = 1e-12) {
  const int n = static_cast<int>(points.rows());
  const int dim = static_cast<int>(points.cols());
  MatX basis(dim, 0);
  if (n <= 1) return basis;
  double scale = 0.0;
  for (int j = 1; j < n; ++j) scale = std::max(scale, (points.row(j) - points.row(0)).norm());
  for (int j = 1; j < n; ++j) {
    VecX v = (points.row(j) - points.row(0)).transpose();
    for (int pass = 0; pass < 2; ++pass)
      for (int k = 0; k < basis.cols(); ++k) v -= basis.col(k).dot(v) * basis.col(k);
    const double nv = v.norm();
    if (nv > pivot_tol * std::max(1.0, scale)) {
      basis.conservativeResize(Eigen::NoChange, basis.cols() + 1);
      basis.col(basis.cols() - 1) = v / nv;
    }
  }
  return basis;
}

inline MatX face_points(const Polytope& p, const Index& face, double delta) {
  MatX pts(face.size(), p.dim_ambient);
  for (size_t i = 0; i < face.size(); ++i) pts.row(i) = p.vertex(face[i], delta).transpose();
  return pts;
}

inline std::vector<Face> enumerate_faces(const Polytope& p, int max_dim, double delta) {
  check_delta_open(delta);
  std::vector<Face> out;
  for (size_t i = 0; i < p.faces.size(); ++i) {
    if (p.face_dims[i] > max_dim) continue;
    Face f{p.faces[i], affine_basis(face_points(p, p.faces[i], delta))};
    out.push_back(std::move(f));
  }
  return out;
}

// Barycentric coordinates of x with respect to a vertex subset (least squares on the
// augmented system) and the residual of that solve.
inline std::pair<VecX, double> barycentric(const MatX& points, const VecX& x) {
  const int n = static_cast<int>(points.rows());
  MatX a(points.cols() + 1, n);
  a.topRows(points.cols()) = points.transpose();
  a.row(points.cols()).setOnes();
  VecX rhs(points.cols() + 1);
  rhs << x, 1.0;
  VecX beta = a.colPivHouseholderQr().solve(rhs);
  return {beta, (a * beta - rhs).norm()};
}

inline bool contains(const Polytope& p, const VecX& x, double delta, double tol = 1e-10) {
  if (x.size() != p.dim_ambient) throw Error(Errc::DimensionMismatch, "point dimension");
  if (p.kind == PolytopeKind::prism) {
    for (const auto& h : p.inequalities)
      if (h.slack(x, delta) < -tol) return false;
    return true;
  }
  auto [beta, res] = barycentric(p.evaluate(delta), x);
  return res <= tol && beta.minCoeff() >= -tol && std::abs(beta.sum() - 1.0) <= tol;
}

}  // namespace pinch4
