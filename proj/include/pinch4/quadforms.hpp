#pragma once

#include <algorithm>
#include <array>
#include <cmath>

#include <Eigen/Dense>

#include "pinch4/curvature.hpp"
#include "pinch4/errors.hpp"
#include "pinch4/polytopes.hpp"

namespace pinch4 {

// Q(x) = c0 + b.x + x^T a x, so the Hessian is 2a.
struct QuadForm {
  int n = 0;
  double c0 = 0.0;
  VecX b;
  MatX a;

  QuadForm() = default;
  explicit QuadForm(int dim) : n(dim), b(VecX::Zero(dim)), a(MatX::Zero(dim, dim)) {}

  double operator()(const VecX& x) const {
    if (x.size() != n) throw Error(Errc::DimensionMismatch, "point dimension");
    return c0 + b.dot(x) + x.dot(a * x);
  }

  MatX hessian() const { return 2.0 * a; }

  VecX gradient(const VecX& x) const { return b + 2.0 * a * x; }

  void set_sym(int i, int j, double v) {
    a(i, j) = v;
    a(j, i) = v;
  }

  bool symmetric(double tol = 1e-14) const { return (a - a.transpose()).cwiseAbs().maxCoeff() <= tol; }
};

// Coordinates (w1+, w2+, w1-, w2-, u, t1).
inline QuadForm q_lambda(double lambda, double delta) {
  check_lambda(lambda);
  const double ap = (3.0 * lambda - 2.0) / (12.0 * lambda);
  const double am = (3.0 * lambda + 2.0) / (12.0 * lambda);
  QuadForm q(6);
  q.a(0, 0) = q.a(1, 1) = ap;
  q.set_sym(0, 1, ap / 2);
  q.a(2, 2) = q.a(3, 3) = am;
  q.set_sym(2, 3, am / 2);
  q.set_sym(0, 2, -0.25);
  q.set_sym(1, 3, -0.25);
  q.set_sym(0, 3, -0.125);
  q.set_sym(1, 2, -0.125);
  q.a(5, 5) = 0.75;
  q.b[4] = 1.5 * delta;
  q.c0 = -0.75 * delta * delta;
  return q;
}

// Q_lambda at lambda = 1/2, entered term by term.
inline QuadForm q_half(double delta) {
  QuadForm q(6);
  // -1/12 ((w1+)^2 + (w2+)^2 + w1+ w2+)
  q.a(0, 0) = -1.0 / 12;
  q.a(1, 1) = -1.0 / 12;
  q.set_sym(0, 1, -1.0 / 24);
  // 7/12 ((w1-)^2 + (w2-)^2 + w1- w2-)
  q.a(2, 2) = 7.0 / 12;
  q.a(3, 3) = 7.0 / 12;
  q.set_sym(2, 3, 7.0 / 24);
  // -1/2 (w1+ w1- + w2+ w2-) - 1/4 (w1+ w2- + w2+ w1-)
  q.set_sym(0, 2, -1.0 / 4);
  q.set_sym(1, 3, -1.0 / 4);
  q.set_sym(0, 3, -1.0 / 8);
  q.set_sym(1, 2, -1.0 / 8);
  q.a(5, 5) = 3.0 / 4;
  q.b[4] = 3.0 / 2 * delta;
  q.c0 = -3.0 / 4 * delta * delta;
  return q;
}

// Coordinates (w1+, w2+, w1-, w2-, u).
inline QuadForm q_eta(double eta) {
  if (!(eta >= -1.0 && eta <= 1.0)) throw Error(Errc::EtaOutOfRange, "eta must lie in [-1,1]");
  QuadForm q(5);
  q.a(0, 0) = q.a(1, 1) = 2.0;
  q.set_sym(0, 1, 1.0);
  q.a(2, 2) = q.a(3, 3) = 2.0 * eta;
  q.set_sym(2, 3, eta);
  return q;
}

inline QuadForm q_euler() {
  QuadForm q(5);
  q.a(0, 0) = q.a(1, 1) = 0.25;
  q.set_sym(0, 1, 0.125);
  q.a(2, 2) = q.a(3, 3) = 0.25;
  q.set_sym(2, 3, 0.125);
  q.a(4, 4) = 0.75;
  return q;
}

// Branch of m(x) = min(1 - x, x - delta) on each coordinate of a cell, written m = s x + r.
inline std::array<bool, 3> ville_lower_branches(int cell) {
  switch (cell) {
    case 1: return {false, false, false};
    case 2: return {true, false, false};
    case 3: return {true, true, false};
    case 4: return {true, true, true};
    default: throw Error(Errc::BadParameter, "cell must be 1..4");
  }
}

inline QuadForm f_ville(double lambda, double delta, int cell) {
  check_lambda(lambda);
  const auto lower = ville_lower_branches(cell);
  Eigen::Vector3d s, r;
  for (int j = 0; j < 3; ++j) {
    s[j] = lower[j] ? 1.0 : -1.0;
    r[j] = lower[j] ? -delta : 1.0;
  }
  const double alpha = 4.0 / (9.0 * lambda) - 1.0 / 3.0;
  const double beta = 2.0 - 4.0 / (3.0 * lambda);
  const double rs = r.sum();
  QuadForm q(3);
  q.a = alpha * MatX::Ones(3, 3) + (beta - 1.0) * MatX::Identity(3, 3) -
        (lambda / 2.0) * (s * s.transpose());
  q.b = -lambda * rs * s - 2.0 * s.cwiseProduct(r);
  q.c0 = -(lambda / 2.0) * rs * rs - r.squaredNorm();
  return q;
}

inline double ville_m(double x, double delta) { return std::min(1.0 - x, x - delta); }

// F_lambda straight from its piecewise definition.
inline double f_ville_direct(double lambda, double delta, const Eigen::Vector3d& v) {
  check_lambda(lambda);
  const double sv = v.sum();
  double sm = 0.0, sm2 = 0.0;
  for (int j = 0; j < 3; ++j) {
    const double m = ville_m(v[j], delta);
    sm += m;
    sm2 += m * m;
  }
  return (4.0 / (9.0 * lambda) - 1.0 / 3.0) * sv * sv + (2.0 - 4.0 / (3.0 * lambda)) * v.squaredNorm() -
         (lambda / 2.0) * sm * sm - sm2;
}

struct VillePoint {
  Eigen::Vector3d v = Eigen::Vector3d::Zero();
  double delta = 0.0;

  bool valid(double tol = 1e-12) const {
    return v[0] >= delta - tol && v[0] <= v[1] + tol && v[1] <= v[2] + tol && v[2] <= 1.0 + tol;
  }
};

inline VillePoint ville_point(const CurvOp& r, double delta) {
  return {r.u * Eigen::Vector3d::Ones() + 0.5 * r.wplus, delta};
}

// Cell whose linearity domain holds v (ties go to the higher-numbered cell).
inline int ville_cell_of(const Eigen::Vector3d& v, double delta) {
  const double mid = 0.5 * (delta + 1.0);
  int below = 0;
  for (int j = 0; j < 3; ++j)
    if (v[j] <= mid) ++below;
  return below + 1;
}

}  // namespace pinch4
