// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "pinch4/curvature.hpp"
#include "pinch4/geography.hpp"
#include "pinch4/oracle.hpp"
#include "pinch4/polytopes.hpp"
#include "pinch4/qp_face.hpp"
#include "pinch4/quadforms.hpp"
#include "pinch4/ricci_bound.hpp"
#include "pinch4/tables.hpp"

using namespace pinch4;

namespace {

struct Outcome {
  bool ok = true;
  std::string note;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      if (ok) note = what;
      ok = false;
    }
  }
};

std::vector<double> spectrum(const MatX& m) {
  Eigen::SelfAdjointEigenSolver<MatX> es(m, Eigen::EigenvaluesOnly);
  std::vector<double> v(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  return v;
}

bool same_spectrum(const MatX& m, std::vector<double> want, double tol) {
  std::sort(want.begin(), want.end());
  const auto got = spectrum(m);
  if (got.size() != want.size()) return false;
  for (size_t i = 0; i < got.size(); ++i)
    if (std::abs(got[i] - want[i]) > tol) return false;
  return true;
}

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

FaceFamily half_family(const Index& face) {
  FaceFamily f;
  f.form = [](double d) { return q_half(d); };
  f.polytope = einstein_simplex(6);
  f.face = face;
  return f;
}

// 1
Outcome tables() {
  Outcome o;
  double worst = 0.0;
  const std::vector<std::pair<std::string, std::vector<double>>> which = {
      {"table1", {0.5}}, {"table2", {0.5}}, {"table3", {0.5}}, {"table4", {0.25, 1.0 / 3, 0.5, 0.8}},
      {"table6", {0.25, 1.0 / 3, 0.5, 0.8}}};
  for (double d : {0.05, 0.1, 0.156, 0.2, 0.3, 0.5})
    for (const auto& [name, lambdas] : which)
      for (double lam : lambdas) {
        const TableResult r = build_table(name, d, lam);
        size_t vcol = 0, rcol = 0;
        for (size_t j = 0; j < r.table.columns.size(); ++j) {
          if (r.table.columns[j] == "value") vcol = j;
          if (r.table.columns[j] == "closed_form") rcol = j;
        }
        for (const auto& row : r.table.rows) {
          if (!row[vcol].num) {
            o.require(false, name + " row " + row[0].text + " has no critical value");
            continue;
          }
          const double dev = std::abs(*row[vcol].num - *row[rcol].num);
          worst = std::max(worst, dev);
          o.require(dev <= 1e-12, name + " " + row[0].text + " at delta " + num(d));
        }
      }
  if (o.ok) o.note = "max deviation " + num(worst);
  return o;
}

// 2
Outcome spectra() {
  Outcome o;
  o.require(same_spectrum(q_half(0.3).hessian(), {2.0 / 3, 2, 1.5, -0.5, -1.0 / 6, 0}, 1e-10), "Q_1/2");
  for (double eta : {-1.0, -0.5, 0.5, 1.0})
    o.require(same_spectrum(q_eta(eta).a, {1, 3, eta, 3 * eta, 0}, 1e-10), "Q_eta " + num(eta));
  return o;
}

// 3
Outcome thresholds() {
  Outcome o;
  auto scan = [](const Index& f, double lo, double hi) {
    return threshold_scan(half_family(f), ScanPredicate::relint, lo, hi);
  };
  const double lo = 1e-6, hi = 1 - 1e-6;
  const std::vector<std::tuple<Index, double, double, double>> want = {
      {{0, 3}, lo, hi, 11.0 / 20},     {{0, 4}, lo, hi, 4.0 / 13},       {{1, 2}, lo, hi, 43.0 / 52},
      {{1, 4}, lo, hi, 26.0 / 35},     {{2, 3}, lo, hi, 11.0 / 20},      {{2, 4}, lo, hi, 11.0 / 20},
      {{2, 5}, lo, hi, 20.0 / 29},     {{3, 4}, lo, hi, 22.0 / 31},      {{3, 5}, lo, hi, 58.0 / 67},
      {{0, 2, 3}, lo, hi, 4.0 / 139},  {{0, 2, 4}, lo, hi, 4.0 / 139},   {{0, 3, 4}, lo, hi, 43.0 / 439},
      {{1, 2, 3}, lo, 0.3, 4.0 / 31},  {{1, 2, 3}, 0.3, hi, 23.0 / 41},  {{1, 2, 4}, lo, hi, 349.0 / 844},
      {{1, 3, 4}, lo, hi, 10.0 / 37},  {{2, 3, 5}, lo, hi, 7.0 / 13},    {{2, 4, 5}, lo, hi, 7.0 / 13},
      {{3, 4, 5}, lo, hi, 28.0 / 43},  {{1, 2, 3, 4}, lo, 0.2, 8.0 / 57}, {{1, 2, 3, 4}, 0.2, hi, 35.0 / 134}};
  double worst = 0.0;
  for (const auto& [face, a, b, x] : want) {
    const double got = scan(face, a, b);
    worst = std::max(worst, std::abs(got - x));
    o.require(std::abs(got - x) <= 1e-9, "crossing near " + num(x));
  }
  // delta_S = 1: no crossing anywhere in (0, 1)
  for (const Index& face : {Index{0, 2}, Index{1, 3}, Index{4, 5}}) {
    const FaceFamily fam = half_family(face);
    const auto xs =
        find_crossings([&](double d) { return family_predicate(fam, ScanPredicate::relint, d); }, lo, hi, 2000);
    o.require(xs.empty() && family_predicate(fam, ScanPredicate::relint, hi), "edge with delta_S = 1");
  }
  if (o.ok) o.note = "24 thresholds, max error " + num(worst);
  return o;
}

// 4
Outcome baby_boundary() {
  Outcome o;
  const double d0 = (-199 + 9 * std::sqrt(545.0)) / 71;
  const double x = threshold_scan(half_family({}), ScanPredicate::sign, 0.1, 0.3);
  o.require(std::abs(x - d0) <= 1e-9, "crossing " + num(x));
  const Extremum e = optimize(q_half(d0), einstein_simplex(6), Sense::min, d0);
  o.require(e.face == Index{0, 2}, "minimizing face");
  o.require(std::abs(e.value) <= 1e-12, "value at delta0");
  if (o.ok) o.note = "delta0 = " + std::to_string(x) + ", face {q1,q3}";
  return o;
}

// 5
Outcome star_tightness() {
  Outcome o;
  const Polytope d6 = einstein_simplex(6);
  for (double d : {0.05, 0.1, 0.2, 0.33, 0.5, 0.8}) {
    const double ls = lambda_of_delta(d, Curve::star);
    const double at = optimize(q_lambda(ls, d), d6, Sense::min, d).value;
    const double below = optimize(q_lambda(ls * (1 - 1e-3), d), d6, Sense::min, d).value;
    o.require(std::abs(at) <= 1e-8, "min at lambda* for delta " + num(d) + " is " + num(at));
    o.require(below < -1e-10, "min below lambda* for delta " + num(d));
  }
  return o;
}

// 6
Outcome ville_boundary() {
  Outcome o;
  const auto cells = ville_cells();
  double worst = INFINITY;
  for (double d : {0.2, 0.25, 0.3, 0.5}) {
    const double lv = lambda_of_delta(d, Curve::ville);
    for (int c = 0; c < 4; ++c) {
      const QuadForm f = f_ville(lv, d, c + 1);
      for (int i = 0; i < cells[c].num_vertices(); ++i) worst = std::min(worst, f(cells[c].vertex(i, d)));
    }
  }
  o.require(worst >= -1e-9, "vertex value " + num(worst));
  o.require(std::abs(lambda_of_delta(0.25, Curve::ville) - 1.0 / 3) <= 1e-12, "lambda_v(1/4)");
  if (o.ok) o.note = "min vertex value " + num(worst);
  return o;
}

// 7
Outcome weyl() {
  Outcome o;
  const Polytope d5 = einstein_simplex(5);
  for (double eta : {-1.0, -0.5, 0.0, 0.5, 1.0})
    for (double d : {0.1, 0.25, 0.5}) {
      const Extremum e = optimize(q_eta(eta), d5, Sense::max, d);
      o.require(std::abs(e.value - 8.0 / 3 * (1 - d) * (1 - d)) <= 1e-10, "value eta " + num(eta));
      if (eta < 1)
        o.require(e.face == Index{0, 1}, "face eta " + num(eta));
      else
        o.require(std::all_of(e.face.begin(), e.face.end(), [](int v) { return v < 4; }) && e.face.size() >= 2,
                  "face eta 1");
    }
  return o;
}

// 8
Outcome grid_dominance() {
  Outcome o;
  struct Case {
    QuadForm q;
    Polytope p;
    Sense s;
    double d;
  };
  std::vector<Case> cases;
  const Polytope d5 = einstein_simplex(5), d6 = einstein_simplex(6);
  for (double d : {0.1, 0.2, 0.3, 0.5}) cases.push_back({q_half(d), d6, Sense::min, d});
  for (double d : {0.1, 0.33, 0.6}) cases.push_back({q_lambda(lambda_of_delta(d, Curve::star), d), d6, Sense::min, d});
  cases.push_back({q_lambda(0.8, 0.25), d6, Sense::min, 0.25});
  for (double eta : {-1.0, -0.5, 0.0, 0.5, 1.0}) cases.push_back({q_eta(eta), d5, Sense::max, 0.25});
  for (double d : {0.2, 0.6}) cases.push_back({q_euler(), d5, Sense::max, d});
  const auto cells = ville_cells();
  for (int c = 0; c < 4; ++c) cases.push_back({f_ville(1.0 / 3, 0.25, c + 1), cells[c], Sense::min, 0.25});
  cases.push_back({f_ville(lambda_of_delta(0.5, Curve::ville), 0.5, 2), cells[1], Sense::min, 0.5});
  double gap = 0.0;
  for (size_t i = 0; i < cases.size(); ++i) {
    const auto& c = cases[i];
    const double g = grid_extremum(c.q, c.p, 40, c.s, c.d);
    const double v = optimize(c.q, c.p, c.s, c.d).value;
    const bool bounded = c.s == Sense::min ? g >= v - 1e-12 : g <= v + 1e-12;
    o.require(bounded, "grid beats optimizer in case " + std::to_string(i));
    o.require(std::abs(g - v) <= 5e-3, "grid gap in case " + std::to_string(i));
    gap = std::max(gap, std::abs(g - v));
  }
  if (o.ok) o.note = std::to_string(cases.size()) + " cases, max gap " + num(gap);
  return o;
}

// 9
Outcome audits() {
  Outcome o;
  std::string notes;
  for (double d : {0.17, 0.25, 0.5}) {
    const AuditReport r = audit(d, 100000, 20240601);
    o.require(r.violations() == 0, "audit at " + num(d) + ": " + std::to_string(r.violations()) + " violations");
    o.require(r.lambda_ville.has_value() && r.checks.count("e_ville"), "ville check ran at " + num(d));
  }
  std::mt19937_64 g(7);
  std::normal_distribution<double> n;
  double worst = INFINITY;
  for (int i = 0; i < 100000; ++i) {
    Mat6 f;
    for (int a = 0; a < 6; ++a)
      for (int b = 0; b < 6; ++b) f(a, b) = n(g);
    if (i % 4 == 0) f.col(i % 6).setZero();
    const Mat6 m = f * f.transpose();
    Eigen::SelfAdjointEigenSolver<Mat3> ea(m.topLeftCorner<3, 3>(), Eigen::EigenvaluesOnly);
    Eigen::SelfAdjointEigenSolver<Mat3> eb(m.bottomRightCorner<3, 3>(), Eigen::EigenvaluesOnly);
    std::vector<double> la(3), mu(3);
    for (int k = 0; k < 3; ++k) {
      la[k] = std::max(ea.eigenvalues()[k], 0.0);
      mu[k] = std::max(eb.eigenvalues()[k], 0.0);
    }
    const double bound = schur_offdiag_bound(la, mu);
    worst = std::min(worst, (bound - m.bottomLeftCorner<3, 3>().squaredNorm()) / (1 + bound));
  }
  o.require(worst >= -1e-9, "Schur bound slack " + num(worst));
  if (o.ok) o.note = "3 x 1e5 samples, Schur slack " + num(worst);
  return o;
}

// 10
Outcome geography() {
  Outcome o;
  auto lam = [](double d) { return lambda_of_delta(d, Curve::best); };
  o.require(std::abs(lam(0.25) - 1.0 / 3) <= 1e-12, "lambda(1/4)");
  o.require(std::abs(lam(1.0)) <= 1e-12, "lambda(1)");
  o.require(lam(1 / (1 + 3 * std::sqrt(3.0))) < 0.5, "lambda(1/(1+3 sqrt 3))");
  const double inv1 = (39 - 5 * std::sqrt(57.0)) / 24;
  o.require(std::abs(lam(inv1) - 1.0) <= 1e-9, "lambda at (39-5 sqrt 57)/24");
  const double root = threshold_scan([&](double d) { return lam(d) > 1.0; }, 0.01, 0.2, 1e-13);
  o.require(std::abs(root - inv1) <= 1e-9, "inverse of 1");
  const double d0v = breakpoints().d0_v;
  for (int i = 1; i <= 200; ++i) {
    const double d = i / 201.0;
    double m = lambda_of_delta(d, Curve::star);
    if (d >= d0v) m = std::min(m, lambda_of_delta(d, Curve::ville));
    o.require(std::abs(lam(d) - m) <= 1e-12, "min of the curves at " + num(d));
  }
  const Breakpoints& b = breakpoints();
  for (double x : {b.d1, b.d2, b.d3}) o.require(std::abs(lam(x + 1e-12) - lam(x - 1e-12)) <= 1e-9, "jump at " + num(x));
  const double dc = (9 * std::sqrt(2.0) - 2) / 79;
  o.require(std::abs(lam(dc) - 0.552) <= 1e-3, "caption lambda " + num(lam(dc)));
  const GeoBounds g = geography_bounds(PositiveContext{dc});
  o.require(std::abs(g.chi_max - 36) <= 1e-9, "chi_max " + num(g.chi_max));
  o.require(std::abs(g.sigma_max - 12) <= 1e-9, "sigma_max " + num(g.sigma_max));
  return o;
}

// 11
Outcome integrands() {
  Outcome o;
  const double e = euler_form(sphere_operator());
  o.require(std::abs(e - 0.75) <= 1e-15, "euler_form(Id)");
  const double pi2 = std::numbers::pi * std::numbers::pi;
  o.require(std::abs(e * (8 * pi2 / 3) / pi2 - 2.0) <= 1e-12, "chi(S4)");
  const CurvOp cp2 = cp2_operator();
  o.require(std::abs(signature_form(cp2) / euler_form(cp2) - 1.0 / 3) <= 1e-12, "sigma/chi for CP2");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"table reproduction", tables},
      {"Hessian spectra", spectra},
      {"threshold recovery", thresholds},
      {"positivity boundary delta0", baby_boundary},
      {"lambda* tightness", star_tightness},
      {"Ville boundary", ville_boundary},
      {"Weyl bound", weyl},
      {"grid oracle dominance", grid_dominance},
      {"Monte-Carlo audit", audits},
      {"geography constants", geography},
      {"integrand checks", integrands},
  };
  int failed = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome r;
    try {
      r = criteria[i].second();
    } catch (const std::exception& ex) {
      r.ok = false;
      r.note = std::string("exception: ") + ex.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!r.ok) ++failed;
    std::printf("%s %zu. %s (%s%s%.1fs)\n", r.ok ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), r.note.c_str(),
                r.note.empty() ? "" : ", ", secs);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
