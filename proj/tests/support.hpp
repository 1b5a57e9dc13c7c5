#pragma once

#include <array>
#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "pinch4/curvature.hpp"

namespace testsupport {

using pinch4::CurvOp;
using pinch4::Mat3;
using pinch4::Mat6;
using pinch4::Vec3;

// Random operator u Id + W + C near a given center.
inline CurvOp random_operator(std::mt19937_64& g, double spread, double u0 = 1.0) {
  std::normal_distribution<double> n(0.0, spread);
  Vec3 wp(n(g), n(g), n(g)), wm(n(g), n(g), n(g));
  wp.array() -= wp.mean();
  wm.array() -= wm.mean();
  Mat3 c;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) c(i, j) = n(g);
  return pinch4::make_operator(u0 + n(g), wp, wm, c);
}

// Curvature operator written in the basis e12, e13, e14, e23, e24, e34 of 2-forms on R^4.
inline Mat6 coordinate_form(const CurvOp& r) {
  const double s = 1.0 / std::sqrt(2.0);
  // rows: self-dual e12+e34, e13-e24, e14+e23; anti-self-dual e12-e34, e13+e24, e14-e23
  Mat6 p;
  p << s, 0, 0, 0, 0, s,
       0, s, 0, 0, -s, 0,
       0, 0, s, s, 0, 0,
       s, 0, 0, 0, 0, -s,
       0, s, 0, 0, s, 0,
       0, 0, s, -s, 0, 0;
  return p.transpose() * pinch4::to_matrix(r) * p;
}

inline double plane_curvature(const Mat6& coord, const Eigen::Vector4d& a, const Eigen::Vector4d& b) {
  Eigen::Matrix<double, 6, 1> w;
  const int idx[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  for (int k = 0; k < 6; ++k) w[k] = a[idx[k][0]] * b[idx[k][1]] - a[idx[k][1]] * b[idx[k][0]];
  return w.dot(coord * w) / w.squaredNorm();
}

// Extremes of the sectional curvature over random 2-planes of R^4.
inline std::array<double, 2> sampled_sec_range(const CurvOp& r, int planes, std::mt19937_64& g) {
  const Mat6 coord = coordinate_form(r);
  std::normal_distribution<double> n;
  double lo = INFINITY, hi = -INFINITY;
  for (int i = 0; i < planes; ++i) {
    Eigen::Vector4d a(n(g), n(g), n(g), n(g)), b(n(g), n(g), n(g), n(g));
    const double k = plane_curvature(coord, a, b);
    lo = std::min(lo, k);
    hi = std::max(hi, k);
  }
  return {lo, hi};
}

inline double psd_margin(const Mat6& m) {
  Eigen::SelfAdjointEigenSolver<Mat6> es(m);
  return es.eigenvalues()[0];
}

}  // namespace testsupport
