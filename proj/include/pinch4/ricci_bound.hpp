#pragma once

#include <span>
#include <vector>

#include "pinch4/curvature.hpp"
#include "pinch4/errors.hpp"

namespace pinch4 {

// Upper bound for |C|^2 from R - k Id + t* >= 0 (k = delta) or k Id - R + t* >= 0 (k = 1).
inline double ricci_rhs(double u, const Vec3& wplus, const Vec3& wminus, double k, double t) {
  return 3.0 * (u - k) * (u - k) - 3.0 * t * t + wplus.dot(wminus);
}

// Largest |C|^2 over C with [diag(lam) C^t; C diag(mu)] positive semidefinite.
inline double schur_offdiag_bound(std::span<const double> lam, std::span<const double> mu) {
  if (lam.size() != mu.size()) throw Error(Errc::DimensionMismatch, "vectors differ in length");
  for (size_t i = 0; i < lam.size(); ++i) {
    if (lam[i] < 0.0 || mu[i] < 0.0) throw Error(Errc::NegativeEntry, "entries must be nonnegative");
    if (i > 0 && (lam[i] < lam[i - 1] || mu[i] < mu[i - 1]))
      throw Error(Errc::NotSorted, "entries must be ascending");
  }
  double s = 0.0;
  for (size_t i = 0; i < lam.size(); ++i) s += lam[i] * mu[i];
  return s;
}

inline double schur_offdiag_bound(const std::vector<double>& lam, const std::vector<double>& mu) {
  return schur_offdiag_bound(std::span<const double>(lam), std::span<const double>(mu));
}

}  // namespace pinch4
