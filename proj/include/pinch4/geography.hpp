#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <variant>
#include <vector>

#include "pinch4/errors.hpp"

namespace pinch4 {

// Horner evaluation, coefficients from the highest degree down.
inline double poly_eval(const std::vector<double>& c, double x) {
  double v = 0.0;
  for (double a : c) v = v * x + a;
  return v;
}

// Root of an integer polynomial inside [lo, hi] by bisection down to adjacent doubles.
inline double polynomial_root(const std::vector<double>& c, double lo, double hi) {
  double flo = poly_eval(c, lo);
  const double fhi = poly_eval(c, hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0) == (fhi > 0)) throw Error(Errc::NoSignChange, "bracket does not isolate a root");
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = poly_eval(c, mid);
    if (fm == 0.0) return mid;
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

struct Breakpoints {
  double d1, d2, d3;          // best curve
  double d1_star, d2_star;    // star curve
  double d0_v, d1_v, d2_v;    // ville curve
};

inline const Breakpoints& breakpoints() {
  static const Breakpoints b = [] {
    auto near = [](const std::vector<double>& c, double approx) {
      return polynomial_root(c, approx - 0.05, approx + 0.05);
    };
    Breakpoints r{};
    r.d1 = near({2, -40, 89, -6}, 0.069);
    r.d2 = near({2279, 6246, 4470, 2060, -450, -24, -1}, 0.191);
    r.d3 = near({140, 40, -6, 88, -19}, 0.211);
    r.d1_star = r.d1;
    r.d2_star = near({2, -16, 5}, 0.326);
    r.d0_v = near({1, -18, 2, -6, 1}, 0.163);
    r.d1_v = near({31, 1, 5, -1}, 0.166);
    r.d2_v = r.d3;
    return r;
  }();
  return b;
}

namespace branch {

inline double a(double d) { return (std::sqrt(24.0 / d + 8.0 - 8.0 * d + d * d) + d - 4.0) / (6.0 * (3.0 - d)); }

inline double b(double d) { return 4.0 / (3.0 * std::sqrt(15.0)) * (1.0 - d) / std::sqrt(d * (d + 2.0)); }

inline double c(double d) {
  const double disc = 55 * d * d * d * d + 40 * d * d * d + 6 * d * d + 8 * d - 1;
  return (26 * d * d + 8 * d + 2 - 2 * std::sqrt(3.0) * std::sqrt(disc)) / (3 * (1 - d) * (1 - d));
}

inline double d(double x) { return 8 * (1 - x) * (1 - x) / (24 * x * x - 12 * x + 15); }

inline double v1(double d) {
  const double disc = 11 * d * d * d * d + 68 * d * d * d + 6 * d * d + 28 * d - 5;
  return (7 * d * d + 10 * d + 1 - std::sqrt(3.0) * std::sqrt(disc)) / (6 * (1 - d) * (1 - d));
}

}  // namespace branch

enum class Curve { best, star, ville };

inline const char* curve_name(Curve c) {
  switch (c) {
    case Curve::best: return "best";
    case Curve::star: return "star";
    case Curve::ville: return "ville";
  }
  return "?";
}

inline double lambda_of_delta(double delta, Curve which) {
  const Breakpoints& b = breakpoints();
  const double lo = which == Curve::ville ? b.d0_v : 0.0;
  const bool ok = which == Curve::ville ? (delta >= lo && delta <= 1.0) : (delta > 0.0 && delta <= 1.0);
  if (!ok) throw Error(Errc::OutOfDomain, std::string("delta outside the domain of the ") + curve_name(which) + " curve");
  switch (which) {
    case Curve::best:
      if (delta < b.d1) return branch::a(delta);
      if (delta < b.d2) return branch::b(delta);
      if (delta <= b.d3) return branch::c(delta);
      return branch::d(delta);
    case Curve::star:
      if (delta < b.d1_star) return branch::a(delta);
      if (delta < b.d2_star) return branch::b(delta);
      return branch::d(delta);
    case Curve::ville:
      if (delta <= b.d1_v) return branch::v1(delta);
      if (delta <= b.d2_v) return branch::c(delta);
      return branch::d(delta);
  }
  return 0.0;
}

struct LambdaCurve {
  Curve which = Curve::best;
  std::vector<double> breakpoints;
  double domain_lo = 0.0;

  double operator()(double delta) const { return lambda_of_delta(delta, which); }
};

inline LambdaCurve lambda_curve(Curve which) {
  const Breakpoints& b = breakpoints();
  switch (which) {
    case Curve::best: return {which, {b.d1, b.d2, b.d3}, 0.0};
    case Curve::star: return {which, {b.d1_star, b.d2_star}, 0.0};
    case Curve::ville: return {which, {b.d0_v, b.d1_v, b.d2_v}, b.d0_v};
  }
  return {};
}

struct PositiveContext {
  double delta;
};
struct NegativeVolContext {
  double delta;
  double volume;
};
struct NegativeDiamContext {
  double delta;
  double diameter;
};
using GeoContext = std::variant<PositiveContext, NegativeVolContext, NegativeDiamContext>;

struct GeoBounds {
  double chi_max = 0.0;
  double sigma_max = 0.0;
  GeoContext context;
};

// (2 + cosh D) sinh^4(D/2)
inline double diameter_profile(double d) {
  const double s = std::sinh(0.5 * d);
  return (2.0 + std::cosh(d)) * s * s * s * s;
}

inline GeoBounds geography_bounds(const GeoContext& ctx) {
  const double pi2 = std::numbers::pi * std::numbers::pi;
  auto check = [](double delta) {
    if (!(delta > 0.0 && delta <= 1.0)) throw Error(Errc::BadParameter, "delta must lie in (0,1]");
  };
  return std::visit(
      [&](const auto& c) -> GeoBounds {
        using T = std::decay_t<decltype(c)>;
        check(c.delta);
        const double g = (1.0 - c.delta) * (1.0 - c.delta);
        if constexpr (std::is_same_v<T, PositiveContext>) {
          const double k = (1.0 / c.delta - 1.0) * (1.0 / c.delta - 1.0);
          return {8.0 / 9.0 * k, 8.0 / 27.0 * k, c};
        } else if constexpr (std::is_same_v<T, NegativeVolContext>) {
          if (!(c.volume > 0.0)) throw Error(Errc::BadParameter, "volume must be positive");
          return {3.0 * c.volume / (4.0 * pi2), 2.0 * g * c.volume / (9.0 * pi2), c};
        } else {
          if (!(c.diameter > 0.0)) throw Error(Errc::BadParameter, "diameter must be positive");
          const double f = diameter_profile(c.diameter);
          return {2.0 * f, 16.0 / 27.0 * g * f, c};
        }
      },
      ctx);
}

inline double min_volume_nonzero_sigma(double delta) {
  check_delta_open(delta);
  return 9.0 * std::numbers::pi * std::numbers::pi / (2.0 * (1.0 - delta) * (1.0 - delta));
}

inline double min_diameter_nonzero_sigma(double delta) {
  check_delta_open(delta);
  const double target = 27.0 / (16.0 * (1.0 - delta) * (1.0 - delta));
  double lo = 0.0, hi = 1.0;
  while (diameter_profile(hi) < target) hi *= 2.0;
  while (hi - lo > 1e-13 * std::max(1.0, hi)) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (diameter_profile(mid) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

struct EulerGap {
  double value;
  bool valid;
};

inline EulerGap euler_gap(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw Error(Errc::BadParameter, "delta must lie in (0,1)");
  const double v = (24 * delta * delta - 12 * delta + 15) / (8 * (1 - delta) * (1 - delta));
  return {v, delta >= breakpoints().d3};
}

inline double b1_bound(int bplus, int bminus, double lambda) {
  check_lambda(lambda);
  if (bplus < 0 || bminus < 0) throw Error(Errc::BadParameter, "Betti numbers must be nonnegative");
  const double mx = std::max(bplus, bminus), mn = std::min(bplus, bminus);
  return 1.0 + (lambda - 1.0) / (2.0 * lambda) * mx + (lambda + 1.0) / (2.0 * lambda) * mn;
}

struct Homeotype {
  std::string label;
  std::string family;  // "sphere", "nonspin" or "spin"
  int r = 0;
  int s = 0;
  int chi = 2;
  int sigma = 0;
};

struct HomeoMenu {
  std::vector<Homeotype> orientable;
  double nonorientable_chi_max = 0.0;
};

inline std::string nonspin_label(int r, int s) {
  if (r == 0 && s == 0) return "S4";
  if (r == 1 && s == 0) return "CP2";
  if (r == 0 && s == 1) return "CP2bar";
  std::string out;
  if (r > 0) out += "#^" + std::to_string(r) + " CP2";
  if (s > 0) out += std::string(out.empty() ? "" : " # ") + "#^" + std::to_string(s) + " CP2bar";
  return out;
}

inline std::string spin_label(int r) { return r == 1 ? "S2xS2" : "#^" + std::to_string(r) + " S2xS2"; }

inline HomeoMenu homeo_menu(double delta) {
  if (!(delta > 0.0 && delta <= 1.0)) throw Error(Errc::BadDelta, "delta must lie in (0,1]");
  const double k = (1.0 / delta - 1.0) * (1.0 / delta - 1.0);
  const double chi_max = 8.0 / 9.0 * k, sig_max = 8.0 / 27.0 * k;
  const double eps = 1e-12;
  HomeoMenu menu;
  menu.orientable.push_back({"S4", "sphere", 0, 0, 2, 0});
  for (int n = 1; n + 2 <= chi_max + eps; ++n)
    for (int r = n; r >= 0; --r) {
      const int s = n - r;
      if (std::abs(r - s) > sig_max + eps) continue;
      menu.orientable.push_back({nonspin_label(r, s), "nonspin", r, s, n + 2, r - s});
    }
  for (int r = 1; 2 * r + 2 <= chi_max + eps; ++r)
    menu.orientable.push_back({spin_label(r), "spin", r, r, 2 * r + 2, 0});
  menu.nonorientable_chi_max = 4.0 / 9.0 * k;
  return menu;
}

struct Point2 {
  double x = 0.0;  // |sigma|
  double y = 0.0;  // chi
};

inline double polygon_area(const std::vector<Point2>& poly) {
  double a = 0.0;
  for (size_t i = 0; i < poly.size(); ++i) {
    const Point2& p = poly[i];
    const Point2& q = poly[(i + 1) % poly.size()];
    a += p.x * q.y - q.x * p.y;
  }
  return 0.5 * a;
}

namespace detail {

// Keeps the part of a convex polygon where a x + b y <= c.
inline std::vector<Point2> clip(const std::vector<Point2>& poly, double a, double b, double c) {
  std::vector<Point2> out;
  const size_t n = poly.size();
  for (size_t i = 0; i < n; ++i) {
    const Point2& p = poly[i];
    const Point2& q = poly[(i + 1) % n];
    const double fp = a * p.x + b * p.y - c;
    const double fq = a * q.x + b * q.y - c;
    if (fp <= 0) out.push_back(p);
    if ((fp < 0 && fq > 0) || (fp > 0 && fq < 0)) {
      const double t = fp / (fp - fq);
      out.push_back({p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)});
    }
  }
  return out;
}

inline std::vector<Point2> dedupe(const std::vector<Point2>& poly, double tol = 1e-12) {
  std::vector<Point2> out;
  for (const auto& p : poly) {
    if (!out.empty() && std::abs(out.back().x - p.x) <= tol && std::abs(out.back().y - p.y) <= tol) continue;
    out.push_back(p);
  }
  while (out.size() > 1 && std::abs(out.front().x - out.back().x) <= tol &&
         std::abs(out.front().y - out.back().y) <= tol)
    out.pop_back();
  return out;
}

}  // namespace detail

// Admissible (|sigma|, chi) region, counterclockwise. The chi cap is at least 2 so the
// round sphere stays inside.
inline std::vector<Point2> region_polygon(double delta) {
  check_delta_open(delta);
  const GeoBounds g = geography_bounds(PositiveContext{delta});
  const double lam = lambda_of_delta(delta, Curve::best);
  const double top = std::max(g.chi_max, 2.0);
  const double right = g.sigma_max;
  std::vector<Point2> poly = {{0, 0}, {right, 0}, {right, top}, {0, top}};
  poly = detail::clip(poly, 1.0, -1.0, -2.0);  // y >= x + 2
  poly = detail::clip(poly, 1.0, -lam, 0.0);   // y >= x / lambda
  poly = detail::dedupe(poly);
  if (poly.empty()) throw Error(Errc::EmptyRegion, "constraints are inconsistent");
  return poly;
}

}  // namespace pinch4
