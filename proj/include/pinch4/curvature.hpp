#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include <Eigen/Dense>

#include "pinch4/errors.hpp"

namespace pinch4 {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Mat6 = Eigen::Matrix<double, 6, 6>;
using Vec6 = Eigen::Matrix<double, 6, 1>;

// Curvature operator on the 2-forms of R^4 in block form
//   [ u Id + W+   C^t      ]
//   [ C           u Id + W- ]
// with W+ = diag(wplus), W- = diag(wminus), both traceless and sorted.
struct CurvOp {
  double u = 0.0;
  Vec3 wplus = Vec3::Zero();
  Vec3 wminus = Vec3::Zero();
  Mat3 c = Mat3::Zero();
};

// A 2-plane written as (h + k)/sqrt(2) with h self-dual, k anti-self-dual.
struct Bivector {
  Vec3 h = Vec3::UnitX();
  Vec3 k = Vec3::UnitX();
};

struct Certificate {
  bool feasible = false;
  bool boundary = false;
  double t1 = 0.0;
  double t2 = 0.0;
  double margin1 = 0.0;
  double margin2 = 0.0;
  int sign = 1;
};

inline constexpr double kTracelessTol = 1e-9;
inline constexpr double kCertTol = 1e-9;

namespace detail {

inline std::array<int, 3> ascending_perm(const Vec3& w) {
  std::array<int, 3> p{0, 1, 2};
  std::stable_sort(p.begin(), p.end(), [&](int a, int b) { return w[a] < w[b]; });
  return p;
}

inline Vec3 remove_trace(const Vec3& w) { return w.array() - w.mean(); }

// Sum of squares taken in increasing order, so the result does not depend on the
// order or signs of the entries.
template <class M>
double sum_sq(const M& m) {
  std::array<double, 9> s{};
  const int n = static_cast<int>(m.size());
  for (int i = 0; i < n; ++i) s[i] = m.data()[i] * m.data()[i];
  std::sort(s.begin(), s.begin() + n);
  double acc = 0.0;
  for (int i = 0; i < n; ++i) acc += s[i];
  return acc;
}

}  // namespace detail

inline Mat6 hodge_star() {
  Mat6 s = Mat6::Zero();
  s.diagonal() << 1, 1, 1, -1, -1, -1;
  return s;
}

// Sorts W± ascending and moves the columns (W+) and rows (W-) of C along.
inline CurvOp make_operator(double u, const Vec3& wplus, const Vec3& wminus, const Mat3& c) {
  if (std::abs(wplus.sum()) > kTracelessTol || std::abs(wminus.sum()) > kTracelessTol)
    throw Error(Errc::NonTraceless, "Weyl eigenvalues must sum to zero");
  const auto pp = detail::ascending_perm(wplus);
  const auto pm = detail::ascending_perm(wminus);
  CurvOp r;
  r.u = u;
  for (int i = 0; i < 3; ++i) {
    r.wplus[i] = wplus[pp[i]];
    r.wminus[i] = wminus[pm[i]];
  }
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r.c(i, j) = c(pm[i], pp[j]);
  return r;
}

inline CurvOp make_operator(double u, const Vec3& wplus, const Vec3& wminus) {
  return make_operator(u, wplus, wminus, Mat3::Zero());
}

inline Mat6 to_matrix(const CurvOp& r) {
  Mat6 m = Mat6::Zero();
  m.topLeftCorner<3, 3>().diagonal() = r.wplus.array() + r.u;
  m.bottomRightCorner<3, 3>().diagonal() = r.wminus.array() + r.u;
  m.bottomLeftCorner<3, 3>() = r.c;
  m.topRightCorner<3, 3>() = r.c.transpose();
  return m;
}

// Canonical form of a symmetric 6x6 operator satisfying tr(top block) = tr(bottom block),
// obtained by diagonalizing both diagonal blocks with rotations.
inline CurvOp from_matrix(const Mat6& m) {
  const Mat3 top = m.topLeftCorner<3, 3>();
  const Mat3 bot = m.bottomRightCorner<3, 3>();
  const double scale = 1.0 + m.cwiseAbs().maxCoeff();
  if (std::abs(top.trace() - bot.trace()) > kTracelessTol * scale)
    throw Error(Errc::NonTraceless, "diagonal blocks have different traces");
  const double u = m.trace() / 6.0;
  Eigen::SelfAdjointEigenSolver<Mat3> ep(top), em(bot);
  Mat3 p = ep.eigenvectors();
  Mat3 q = em.eigenvectors();
  if (p.determinant() < 0) p.col(0) *= -1.0;
  if (q.determinant() < 0) q.col(0) *= -1.0;
  const Mat3 c = q.transpose() * m.bottomLeftCorner<3, 3>() * p;
  return make_operator(u, detail::remove_trace(ep.eigenvalues().array() - u),
                       detail::remove_trace(em.eigenvalues().array() - u), c);
}

inline CurvOp operator-(const CurvOp& r) {
  return make_operator(-r.u, -r.wplus, -r.wminus, -r.c);
}

inline CurvOp scaled(const CurvOp& r, double s) {
  return make_operator(s * r.u, s * r.wplus, s * r.wminus, s * r.c);
}

// Swaps the roles of self-dual and anti-self-dual forms.
inline CurvOp reverse_orientation(const CurvOp& r) {
  CurvOp o;
  o.u = r.u;
  o.wplus = r.wminus;
  o.wminus = r.wplus;
  o.c = r.c.transpose();
  return o;
}

inline CurvOp project_einstein(const CurvOp& r) {
  CurvOp o = r;
  o.c.setZero();
  return o;
}

inline CurvOp sphere_operator() { return make_operator(1.0, Vec3::Zero(), Vec3::Zero()); }

inline CurvOp cp2_operator() { return make_operator(2.0, Vec3(-2, -2, 4), Vec3::Zero()); }

inline double euler_form(const CurvOp& r) {
  const double wp = detail::sum_sq(r.wplus), wm = detail::sum_sq(r.wminus);
  return (6.0 * r.u * r.u + std::min(wp, wm) + std::max(wp, wm) - 2.0 * detail::sum_sq(r.c)) / 8.0;
}

inline double signature_form(const CurvOp& r) {
  return (detail::sum_sq(r.wplus) - detail::sum_sq(r.wminus)) / 12.0;
}

inline double i_lambda(const CurvOp& r, double lambda) {
  check_lambda(lambda);
  return euler_form(r) - signature_form(r) / lambda;
}

inline double sec(const CurvOp& r, const Bivector& plane) {
  if (std::abs(plane.h.norm() - 1.0) > 1e-12 || std::abs(plane.k.norm() - 1.0) > 1e-12)
    throw Error(Errc::NonUnitPlane, "h and k must be unit vectors");
  const Vec3& h = plane.h;
  const Vec3& k = plane.k;
  const double hh = r.u * h.squaredNorm() + h.dot(r.wplus.cwiseProduct(h));
  const double kk = r.u * k.squaredNorm() + k.dot(r.wminus.cwiseProduct(k));
  return 0.5 * (hh + kk + 2.0 * k.dot(r.c * h));
}

inline double min_eigenvalue(const Mat6& m) {
  Eigen::SelfAdjointEigenSolver<Mat6> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues()[0];
}

inline double spectral_norm(const Mat6& m) {
  Eigen::SelfAdjointEigenSolver<Mat6> es(m, Eigen::EigenvaluesOnly);
  return std::max(std::abs(es.eigenvalues()[0]), std::abs(es.eigenvalues()[5]));
}

// Maximizes a concave function on [lo, hi]; returns (argmax, value).
template <class F>
std::pair<double, double> golden_max(F&& f, double lo, double hi, int max_iter = 200,
                                     double width_tol = 0.0) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double x1 = b - g * (b - a), x2 = a + g * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < max_iter && (b - a) > width_tol; ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + g * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - g * (b - a);
      f1 = f(x1);
    }
  }
  const double t = 0.5 * (a + b);
  const double ft = f(t);
  if (ft >= f1 && ft >= f2) return {t, ft};
  return f1 >= f2 ? std::pair{x1, f1} : std::pair{x2, f2};
}

struct SignedCertificate {
  double t1, t2, margin1, margin2;
};

// Best t for R - delta Id + t* and Id - R + t*, with R given as a matrix.
inline SignedCertificate certify_matrix(const Mat6& r, double delta) {
  const Mat6 star = hodge_star();
  const double bound = spectral_norm(r) + delta + 1.0;
  const double width = 1e-12 * (1.0 + bound);
  const Mat6 m1 = r - delta * Mat6::Identity();
  const Mat6 m2 = Mat6::Identity() - r;
  auto [t1, g1] = golden_max([&](double t) { return min_eigenvalue(m1 + t * star); },
                             -bound, bound, 200, width);
  auto [t2, g2] = golden_max([&](double t) { return min_eigenvalue(m2 + t * star); },
                             -bound, bound, 200, width);
  return {t1, t2, g1, g2};
}

inline Certificate make_certificate(const SignedCertificate& s, int sign, double tol) {
  Certificate c;
  c.t1 = s.t1;
  c.t2 = s.t2;
  c.margin1 = s.margin1;
  c.margin2 = s.margin2;
  c.sign = sign;
  c.feasible = s.margin1 >= -tol && s.margin2 >= -tol;
  c.boundary = c.feasible && (s.margin1 < 0.0 || s.margin2 < 0.0);
  return c;
}

// Certificate for R itself (sign +1) only.
inline Certificate pinch_certificate_positive(const CurvOp& r, double delta, double tol = kCertTol) {
  if (!(delta > 0.0 && delta <= 1.0)) throw Error(Errc::BadDelta, "delta must lie in (0,1]");
  return make_certificate(certify_matrix(to_matrix(r), delta), 1, tol);
}

inline Certificate pinch_certificate(const CurvOp& r, double delta, double tol = kCertTol) {
  if (!(delta > 0.0 && delta <= 1.0)) throw Error(Errc::BadDelta, "delta must lie in (0,1]");
  const Mat6 m = to_matrix(r);
  const Certificate pos = make_certificate(certify_matrix(m, delta), 1, tol);
  if (pos.feasible) return pos;
  const Certificate neg = make_certificate(certify_matrix(-m, delta), -1, tol);
  if (neg.feasible) return neg;
  const double wp = std::min(pos.margin1, pos.margin2);
  const double wn = std::min(neg.margin1, neg.margin2);
  return wp >= wn ? pos : neg;
}

}  // namespace pinch4
