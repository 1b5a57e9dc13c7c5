#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "pinch4/errors.hpp"
#include "pinch4/polytopes.hpp"
#include "pinch4/quadforms.hpp"

namespace pinch4 {

enum class Sense { min, max };

inline constexpr double kRelintTol = 1e-9;

struct RestrictedForm {
  Index face;
  int dim = 0;
  // Hessian of t -> Q(v0 + sum_j t_j (v_j - v0)) on simplex faces; on other faces the same
  // as hess_eigs_orthonormal.
  std::vector<double> hess_eigs;
  std::vector<double> hess_eigs_orthonormal;
  int definiteness = 0;  // +1 positive definite, -1 negative definite, 0 otherwise
  std::optional<VecX> critical_bary;
  std::optional<VecX> critical_point;
  std::optional<double> value_at_critical;
  double relint_margin = 0.0;  // smallest barycentric coordinate or facet slack
  bool in_relint = false;
};

struct Candidate {
  Index face;
  double value;
};

struct Extremum {
  double value = 0.0;
  VecX point;
  Index face;
  Sense sense = Sense::min;
  std::vector<Candidate> candidates;
};

namespace detail {

inline std::vector<double> sorted_eigs(const MatX& m) {
  std::vector<double> out;
  if (m.rows() == 0) return out;
  Eigen::SelfAdjointEigenSolver<MatX> es(m, Eigen::EigenvaluesOnly);
  for (int i = 0; i < es.eigenvalues().size(); ++i) out.push_back(es.eigenvalues()[i]);
  return out;
}

inline double definiteness_threshold(const QuadForm& q) {
  return 1e-12 * (1.0 + q.hessian().norm());
}

// Smallest slack, over facets of a prism not tight on every vertex of the face, at x.
inline double prism_relint_margin(const Polytope& p, const Index& face, const VecX& x,
                                  double delta) {
  double margin = std::numeric_limits<double>::infinity();
  for (const auto& h : p.inequalities) {
    bool tight = true;
    for (int v : face)
      if (std::abs(h.slack(p.vertex(v, delta), delta)) > 1e-12) tight = false;
    if (!tight) margin = std::min(margin, h.slack(x, delta));
  }
  return margin;
}

}  // namespace detail

inline RestrictedForm restrict(const QuadForm& q, const Polytope& p, const Index& face_in,
                               double delta, double relint_tol = kRelintTol) {
  if (q.n != p.dim_ambient) throw Error(Errc::DimensionMismatch, "form and polytope dimensions differ");
  check_delta_open(delta);
  const int fi = p.face_index(face_in);
  if (fi < 0) throw Error(Errc::NotAFace, "vertex subset is not a face");
  RestrictedForm rf;
  rf.face = p.faces[fi];
  rf.dim = p.face_dims[fi];
  const MatX pts = face_points(p, rf.face, delta);
  const VecX v0 = pts.row(0).transpose();
  const MatX h = q.hessian();

  if (rf.dim == 0) {
    rf.definiteness = 0;
    rf.critical_point = v0;
    rf.critical_bary = VecX::Ones(1);
    rf.value_at_critical = q(v0);
    rf.relint_margin = 1.0;
    rf.in_relint = true;
    return rf;
  }

  const MatX basis = affine_basis(pts);
  const MatX ho = basis.transpose() * h * basis;
  rf.hess_eigs_orthonormal = detail::sorted_eigs(ho);
  const double thr = detail::definiteness_threshold(q);
  if (rf.hess_eigs_orthonormal.front() > thr) rf.definiteness = 1;
  if (rf.hess_eigs_orthonormal.back() < -thr) rf.definiteness = -1;

  const bool simplex_face = static_cast<int>(rf.face.size()) == rf.dim + 1;
  if (simplex_face) {
    MatX d(p.dim_ambient, rf.dim);
    for (int j = 0; j < rf.dim; ++j) d.col(j) = (pts.row(j + 1) - pts.row(0)).transpose();
    const MatX hb = d.transpose() * h * d;
    rf.hess_eigs = detail::sorted_eigs(hb);
    if (rf.definiteness != 0) {
      const VecX rhs = -d.transpose() * q.gradient(v0);
      const VecX y = hb.ldlt().solve(rhs);
      VecX bary(rf.dim + 1);
      bary[0] = 1.0 - y.sum();
      bary.tail(rf.dim) = y;
      const VecX x = v0 + d * y;
      rf.critical_bary = bary;
      rf.critical_point = x;
      rf.value_at_critical = q(x);
      rf.relint_margin = bary.minCoeff();
    }
  } else {
    rf.hess_eigs = rf.hess_eigs_orthonormal;
    if (rf.definiteness != 0) {
      const VecX rhs = -basis.transpose() * q.gradient(v0);
      const VecX y = ho.ldlt().solve(rhs);
      const VecX x = v0 + basis * y;
      rf.critical_point = x;
      rf.value_at_critical = q(x);
      rf.relint_margin = detail::prism_relint_margin(p, rf.face, x, delta);
    }
  }
  rf.in_relint = rf.definiteness != 0 && rf.relint_margin > relint_tol;
  return rf;
}

// Number of Hessian eigenvalues that obstruct the given sense (negative for max).
inline int adverse_count(const QuadForm& q, Sense sense) {
  const double thr = detail::definiteness_threshold(q);
  int d = 0;
  for (double e : detail::sorted_eigs(q.hessian()))
    if (sense == Sense::max ? e < -thr : e > thr) ++d;
  return d;
}

struct OptimizeOptions {
  double relint_tol = kRelintTol;
};

inline Extremum optimize(const QuadForm& q, const Polytope& p, Sense sense, double delta,
                         const OptimizeOptions& opt = {}) {
  if (q.n != p.dim_ambient) throw Error(Errc::DimensionMismatch, "form and polytope dimensions differ");
  check_delta_open(delta);
  const int max_dim = std::min(adverse_count(q, sense), p.dim());
  const int favorable = sense == Sense::max ? -1 : 1;
  Extremum best;
  best.sense = sense;
  bool have = false;
  for (size_t i = 0; i < p.faces.size(); ++i) {
    if (p.face_dims[i] > max_dim) continue;
    const RestrictedForm rf = restrict(q, p, p.faces[i], delta, opt.relint_tol);
    if (rf.dim > 0 && !(rf.definiteness == favorable && rf.in_relint)) continue;
    const double v = *rf.value_at_critical;
    best.candidates.push_back({rf.face, v});
    const bool better = sense == Sense::max ? v > best.value : v < best.value;
    if (!have || better) {
      have = true;
      best.value = v;
      best.point = *rf.critical_point;
      best.face = rf.face;
    }
  }
  // Ties: report the smallest face holding every candidate that attains the extremum.
  const double tol = 1e-12 * (1.0 + std::abs(best.value));
  Index hull;
  for (const auto& c : best.candidates)
    if (std::abs(c.value - best.value) <= tol) hull.insert(hull.end(), c.face.begin(), c.face.end());
  std::sort(hull.begin(), hull.end());
  hull.erase(std::unique(hull.begin(), hull.end()), hull.end());
  for (const Index& f : p.faces)
    if (std::includes(f.begin(), f.end(), hull.begin(), hull.end())) {
      best.face = f;
      break;
    }
  return best;
}

// Bisection on a boolean predicate of delta whose value differs at lo and hi.
template <class Pred>
double threshold_scan(Pred&& pred, double lo, double hi, double tol = 1e-11) {
  const bool plo = pred(lo);
  if (plo == static_cast<bool>(pred(hi)))
    throw Error(Errc::NoSignChange, "predicate has the same value at both ends");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (static_cast<bool>(pred(mid)) == plo)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

// Every crossing of pred on [lo, hi], located by a uniform scan followed by bisection.
template <class Pred>
std::vector<double> find_crossings(Pred&& pred, double lo, double hi, int samples = 400,
                                   double tol = 1e-11) {
  std::vector<double> out;
  double prev_x = lo;
  bool prev = pred(lo);
  for (int i = 1; i <= samples; ++i) {
    const double x = lo + (hi - lo) * i / samples;
    const bool cur = pred(x);
    if (cur != prev) out.push_back(threshold_scan(pred, prev_x, x, tol));
    prev_x = x;
    prev = cur;
  }
  return out;
}

enum class ScanPredicate { relint, sign };

struct FaceFamily {
  std::function<QuadForm(double)> form;
  Polytope polytope;
  Index face;  // empty: the whole polytope (sign predicate only)
  Sense sense = Sense::min;
};

// relint: critical point of the face strictly inside it; sign: extremal value >= 0.
inline bool family_predicate(const FaceFamily& fam, ScanPredicate pred, double delta) {
  const QuadForm q = fam.form(delta);
  if (pred == ScanPredicate::sign && fam.face.empty())
    return optimize(q, fam.polytope, fam.sense, delta).value >= 0.0;
  const RestrictedForm rf = restrict(q, fam.polytope, fam.face, delta, 0.0);
  if (pred == ScanPredicate::relint) return rf.in_relint;
  return rf.value_at_critical.has_value() && *rf.value_at_critical >= 0.0;
}

inline double threshold_scan(const FaceFamily& fam, ScanPredicate pred, double lo, double hi,
                             double tol = 1e-11) {
  return threshold_scan([&](double d) { return family_predicate(fam, pred, d); }, lo, hi, tol);
}

}  // namespace pinch4
