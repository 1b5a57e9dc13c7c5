#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "pinch4/curvature.hpp"
#include "pinch4/polytopes.hpp"

using namespace pinch4;

namespace {

VecX vec(std::initializer_list<double> xs) {
  VecX v(xs.size());
  int i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

// Face lattice of a full-dimensional polytope in R^3 from its vertex list: facets are the
// vertex sets of supporting planes through three vertices, lower faces are intersections.
std::set<Index> hull_faces(const MatX& pts) {
  const int n = static_cast<int>(pts.rows());
  std::set<Index> facets;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c) {
        const Eigen::Vector3d pa = pts.row(a), pb = pts.row(b), pc = pts.row(c);
        const Eigen::Vector3d nrm = (pb - pa).cross(pc - pa);
        if (nrm.norm() < 1e-9) continue;
        int pos = 0, neg = 0;
        Index on;
        for (int i = 0; i < n; ++i) {
          const double s = nrm.dot(Eigen::Vector3d(pts.row(i)) - pa);
          if (s > 1e-9) ++pos;
          else if (s < -1e-9) ++neg;
          else on.push_back(i);
        }
        if (pos == 0 || neg == 0) facets.insert(on);
      }
  std::set<Index> faces(facets.begin(), facets.end());
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Index> cur(faces.begin(), faces.end());
    for (size_t i = 0; i < cur.size(); ++i)
      for (size_t j = i + 1; j < cur.size(); ++j) {
        Index meet;
        std::set_intersection(cur[i].begin(), cur[i].end(), cur[j].begin(), cur[j].end(),
                              std::back_inserter(meet));
        if (!meet.empty() && faces.insert(meet).second) grew = true;
      }
  }
  Index all(n);
  for (int i = 0; i < n; ++i) all[i] = i;
  faces.insert(all);
  return faces;
}

CurvOp iota5(const VecX& x) {
  return make_operator(x[4], Vec3(x[0], x[1], -x[0] - x[1]), Vec3(x[2], x[3], -x[2] - x[3]));
}

}  // namespace

TEST(EinsteinSimplex, Vertices) {
  const Polytope d5 = einstein_simplex(5);
  EXPECT_TRUE(d5.vertex(4, 0.3).isApprox(vec({0, 0, 0, 0, 1})));
  EXPECT_TRUE(d5.vertex(0, 0.25).isApprox(vec({-0.5, -0.5, 0, 0, 0.5})));
  const Polytope d6 = einstein_simplex(6);
  for (double d : {0.1, 0.4, 0.9}) EXPECT_TRUE(d6.vertex(6, d).isApprox(vec({0, 0, 0, 0, d, 0})));
  EXPECT_EQ(d6.labels[6], "q7");
  EXPECT_EQ(einstein_simplex(7).num_vertices(), 8);
}

TEST(EinsteinSimplex, CollapsesAtOne) {
  for (int variant : {5, 6, 7}) {
    const MatX m = einstein_simplex(variant).evaluate(1.0);
    EXPECT_TRUE(m.leftCols(4).isZero(0));
    EXPECT_TRUE((m.col(4).array() == 1.0).all());
  }
}

TEST(EinsteinSimplex, RejectsDelta) {
  EXPECT_THROW(einstein_simplex(0.0, 6), Error);
  EXPECT_THROW(einstein_simplex(1.0, 6), Error);
  EXPECT_THROW(einstein_simplex(4), Error);
}

TEST(VilleCells, Vertices) {
  const auto cells = ville_cells(0.3);
  EXPECT_TRUE(cells[0].vertex(3, 0.3).isApprox(vec({1, 1, 1})));
  EXPECT_TRUE(cells[3].vertex(0, 0.3).isApprox(vec({0.3, 0.3, 0.3})));
  EXPECT_EQ(cells[3].labels[0], "q1^4");
  for (const auto& c : cells) {
    // every vertex is ordered and lies in [delta, 1]
    const MatX m = c.evaluate(0.3);
    for (int i = 0; i < m.rows(); ++i) {
      EXPECT_LE(0.3, m(i, 0));
      EXPECT_LE(m(i, 0), m(i, 1));
      EXPECT_LE(m(i, 1), m(i, 2));
      EXPECT_LE(m(i, 2), 1.0);
    }
  }
}

TEST(EnumerateFaces, Counts) {
  EXPECT_EQ(enumerate_faces(einstein_simplex(6), 3, 0.3).size(), 98u);
  EXPECT_EQ(enumerate_faces(einstein_simplex(5), 1, 0.3).size(), 21u);
  EXPECT_EQ(enumerate_faces(ville_cells()[1], 2, 0.3).size(), 20u);
  EXPECT_EQ(enumerate_faces(ville_cells()[2], 2, 0.3).size(), 20u);
}

TEST(EnumerateFaces, PrismLatticeMatchesHull) {
  for (int cell : {1, 2})
    for (double d : {0.05, 0.3, 0.8}) {
      const Polytope p = ville_cells()[cell];
      const std::set<Index> want = hull_faces(p.evaluate(d));
      const std::set<Index> got(p.faces.begin(), p.faces.end());
      EXPECT_EQ(got, want) << p.name << " at " << d;
    }
}

TEST(EnumerateFaces, SimplexCellsMatchHull) {
  for (int cell : {0, 3}) {
    const Polytope p = ville_cells()[cell];
    const std::set<Index> got(p.faces.begin(), p.faces.end());
    EXPECT_EQ(got, hull_faces(p.evaluate(0.4)));
  }
}

TEST(EnumerateFaces, BasesAreOrthonormal) {
  for (const auto& f : enumerate_faces(einstein_simplex(6), 6, 0.2)) {
    EXPECT_EQ(f.dim(), static_cast<int>(f.vertices.size()) - 1);
    EXPECT_TRUE((f.basis.transpose() * f.basis).isIdentity(1e-12));
  }
  for (const auto& f : enumerate_faces(ville_cells()[1], 3, 0.2)) {
    const int expect = f.vertices.size() == 4 ? 2 : f.vertices.size() == 6 ? 3 : static_cast<int>(f.vertices.size()) - 1;
    EXPECT_EQ(f.dim(), expect);
  }
}

TEST(Polytope, FaceQueries) {
  const Polytope p = ville_cells()[1];
  EXPECT_TRUE(p.is_face({0, 1, 2}));
  EXPECT_TRUE(p.is_face({0, 1, 3, 4}));
  EXPECT_FALSE(p.is_face({0, 4}));
  EXPECT_EQ(p.face_dim({0, 1, 3, 4}), 2);
  try {
    p.face_dim({0, 4});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotAFace);
  }
}

TEST(Contains, SimplexAndPrism) {
  std::mt19937_64 g(2);
  std::exponential_distribution<double> ex;
  for (const Polytope& p : {einstein_simplex(6), ville_cells()[0], ville_cells()[1], ville_cells()[2]}) {
    const MatX v = p.evaluate(0.35);
    for (int i = 0; i < 200; ++i) {
      VecX w(v.rows());
      for (int j = 0; j < w.size(); ++j) w[j] = ex(g);
      w /= w.sum();
      const VecX x = v.transpose() * w;
      EXPECT_TRUE(contains(p, x, 0.35));
      // push past a vertex
      const VecX out = v.row(i % v.rows()).transpose() + 0.05 * (v.row(i % v.rows()).transpose() - x);
      if ((v.row(i % v.rows()).transpose() - x).norm() > 1e-3) EXPECT_FALSE(contains(p, out, 0.35));
    }
  }
  EXPECT_THROW(contains(einstein_simplex(6), vec({1, 2}), 0.3), Error);
}

TEST(Contains, NestedInDelta) {
  const Polytope p = einstein_simplex(6);
  for (double d : {0.1, 0.3, 0.6, 0.9})
    for (double dp : {0.05, 0.2, 0.5})
      if (dp < d)
        for (int i = 0; i < p.num_vertices(); ++i) EXPECT_TRUE(contains(p, p.vertex(i, d), dp)) << d << " " << dp;
}

TEST(EinsteinSimplex, PointsArePinched) {
  std::mt19937_64 g(4);
  std::uniform_real_distribution<double> ud(0.02, 0.98);
  std::exponential_distribution<double> ex;
  const Polytope p = einstein_simplex(5);
  for (int i = 0; i < 1000; ++i) {
    const double d = ud(g);
    VecX w(6);
    for (int j = 0; j < 6; ++j) w[j] = ex(g);
    w /= w.sum();
    const VecX x = p.evaluate(d).transpose() * w;
    EXPECT_TRUE(pinch_certificate(iota5(x), d).feasible) << d;
  }
}

TEST(Barycentric, Recovers) {
  const MatX v = einstein_simplex(6).evaluate(0.4);
  VecX w(7);
  w << 0.1, 0.2, 0.05, 0.15, 0.3, 0.1, 0.1;
  auto [beta, res] = barycentric(v, v.transpose() * w);
  EXPECT_LT(res, 1e-12);
  EXPECT_TRUE(beta.isApprox(w, 1e-10));
}
