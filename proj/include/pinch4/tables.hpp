#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pinch4/errors.hpp"
#include "pinch4/io.hpp"
#include "pinch4/polytopes.hpp"
#include "pinch4/qp_face.hpp"
#include "pinch4/quadforms.hpp"

namespace pinch4 {

// Closed forms of the extremal values, as functions of (delta, lambda).
using ClosedForm = std::function<double(double, double)>;

struct FaceEntry {
  Index face;  // 0-based vertex indices
  ClosedForm value;
  std::string threshold;  // relint window in delta, if any
};

namespace ref {

inline ClosedForm quad(double a, double b, double c) {
  return [=](double d, double) { return a * d * d + b * d + c; };
}

inline std::vector<FaceEntry> qhalf_vertices() {
  return {{{0}, quad(2.0 / 9, 5.0 / 9, -1.0 / 36), ""},  {{1}, quad(-1.0 / 36, 5.0 / 9, 2.0 / 9), ""},
          {{2}, quad(10.0 / 9, -11.0 / 9, 31.0 / 36), ""}, {{3}, quad(31.0 / 36, -11.0 / 9, 10.0 / 9), ""},
          {{4}, quad(0, 0, 0.75), ""},                   {{5}, quad(0, 0, 0.75), ""},
          {{6}, quad(0.75, 0, 0), ""}};
}

inline std::vector<FaceEntry> qhalf_edges() {
  return {{{0, 2}, quad(71.0 / 540, 199.0 / 270, -16.0 / 135), "1"},
          {{0, 3}, quad(26.0 / 567, 425.0 / 567, -46.0 / 567), "11/20"},
          {{0, 4}, quad(-9.0 / 44, 9.0 / 11, -3.0 / 44), "4/13"},
          {{1, 2}, quad(-46.0 / 567, 425.0 / 567, 26.0 / 567), "43/52"},
          {{1, 3}, quad(-35.0 / 108, 31.0 / 27, -2.0 / 27), "1"},
          {{1, 4}, quad(-36.0 / 71, 90.0 / 71, -3.0 / 71), "26/35"},
          {{2, 3}, quad(70.0 / 93, -77.0 / 93, 70.0 / 93), "11/20"},
          {{2, 4}, quad(0, 0, 21.0 / 40), "11/20"},
          {{2, 5}, quad(-9.0 / 76, 9.0 / 19, 21.0 / 76), "20/29"},
          {{3, 4}, quad(0, 0, 21.0 / 31), "22/31"},
          {{3, 5}, quad(-36.0 / 103, 90.0 / 103, 21.0 / 103), "58/67"},
          {{4, 5}, quad(-0.75, 1.5, 0), "1"}};
}

inline std::vector<FaceEntry> qhalf_triangles() {
  return {{{0, 2, 3}, quad(227.0 / 4992, 463.0 / 624, -37.0 / 312), "4/139"},
          {{0, 2, 4}, quad(-45.0 / 202, 153.0 / 202, -12.0 / 101), "4/139"},
          {{0, 3, 4}, quad(-279.0 / 1328, 1062.0 / 1328, -111.0 / 1328), "43/439"},
          {{1, 2, 3}, quad(-86.0 / 183, 217.0 / 183, -14.0 / 183), "(4/31, 23/41)"},
          {{1, 2, 4}, quad(-1440.0 / 2264, 2736.0 / 2264, -111.0 / 2264), "349/844"},
          {{1, 3, 4}, quad(-279.0 / 548, 684.0 / 548, -48.0 / 548), "10/37"},
          {{2, 3, 5}, quad(-333.0 / 784, 630.0 / 784, 147.0 / 784), "7/13"},
          {{2, 4, 5}, quad(-15.0 / 14, 21.0 / 14, 0.0), "7/13"},
          {{3, 4, 5}, quad(-93.0 / 112, 168.0 / 112, 0.0), "28/43"},
          {{1, 2, 3, 4}, quad(-630.0 / 923, 1197.0 / 923, -84.0 / 923), "(8/57, 35/134)"}};
}

inline std::vector<FaceEntry> qlambda_vertices() {
  auto f = [](auto g) -> ClosedForm { return g; };
  return {
      {{0}, f([](double d, double l) {
         return 2 * (3 * l - 1) / (9 * l) * d * d - (3 * l - 4) / (9 * l) * d + (15 * l - 8) / (36 * l);
       }), ""},
      {{1}, f([](double d, double l) {
         return (15 * l - 8) / (36 * l) * d * d - (3 * l - 4) / (9 * l) * d + (24 * l - 8) / (36 * l);
       }), ""},
      {{2}, f([](double d, double l) {
         return 2 * (3 * l + 1) / (9 * l) * d * d - (3 * l + 4) / (9 * l) * d + (15 * l + 8) / (36 * l);
       }), ""},
      {{3}, f([](double d, double l) {
         return (15 * l + 8) / (36 * l) * d * d - (3 * l + 4) / (9 * l) * d + (24 * l + 8) / (36 * l);
       }), ""},
      {{4}, quad(0, 0, 0.75), ""},
      {{5}, quad(0, 0, 0.75), ""},
      {{6}, quad(0.75, 0, 0), ""}};
}

inline std::vector<FaceEntry> qlambda_edges() {
  auto f = [](auto g) -> ClosedForm { return g; };
  return {
      {{0, 1}, f([](double d, double l) {
         const double k = (18 * (l - 1) * l + 4) / (3 * l * (15 * l - 8));
         return k * d * d + (9 * (l - 2) * l + 8) / (3 * (8 - 15 * l) * l) * d + k;
       }), ""},
      {{0, 2}, f([](double d, double l) {
         const double e = 4 / (135 * l * l);
         return (0.25 - e) * d * d + (2 * e + 0.5) * d - e;
       }), ""},
      {{0, 3}, f([](double d, double l) {
         const double s = 567 * l * l;
         return (18 * l * (3 * l + 1) - 16) / s * d * d + (32 / s + 11.0 / 21) * d + (18 * l * (3 * l - 1) - 16) / s;
       }), ""},
      {{0, 4}, f([](double d, double l) {
         return 9 * l / (8 - 60 * l) * d * d + 9 * l / (15 * l - 2) * d + (6 - 9 * l) / (8 - 60 * l);
       }), ""},
      {{0, 5}, f([](double, double l) { return (6 - 9 * l) / (8 - 24 * l); }), ""},
      {{1, 2}, f([](double d, double l) {
         const double s = 567 * l * l;
         return (18 * l * (3 * l - 1) - 16) / s * d * d + (32 / s + 11.0 / 21) * d + (18 * l * (3 * l + 1) - 16) / s;
       }), ""},
      {{1, 3}, f([](double d, double l) {
         const double e = 1 / (54 * l * l);
         return -(e + 0.25) * d * d + (2 * e + 1) * d - e;
       }), ""},
      {{1, 4}, f([](double d, double l) {
         return 36 * l / (8 - 87 * l) * d * d + 90 * l / (87 * l - 8) * d + (6 - 9 * l) / (8 - 87 * l);
       }), ""},
      {{1, 5}, f([](double, double l) { return (6 - 9 * l) / (8 - 15 * l); }), ""},
      {{2, 3}, f([](double d, double l) {
         const double k = (18 * l * (l + 1) + 4) / (3 * l * (15 * l + 8));
         return k * d * d + (9 / (15 * l + 8) - 5 / l - 3) / 15 * d + k;
       }), ""},
      {{2, 4}, f([](double, double l) { return (6 + 9 * l) / (8 + 24 * l); }), ""},
      {{2, 5}, f([](double d, double l) {
         return -9 * l / (60 * l + 8) * d * d + 9 * l / (15 * l + 2) * d + (9 * l + 6) / (60 * l + 8);
       }), ""},
      {{3, 4}, f([](double, double l) { return (6 + 9 * l) / (8 + 15 * l); }), ""},
      {{3, 5}, f([](double d, double l) {
         return -36 * l / (87 * l + 8) * d * d + 90 * l / (87 * l + 8) * d + (9 * l + 6) / (87 * l + 8);
       }), ""},
      {{4, 5}, quad(-0.75, 1.5, 0), ""}};
}

// F_lambda at every vertex of every cell, keyed by (cell, vertex index).
struct VilleEntry {
  int cell;
  int vertex;
  ClosedForm value;
};

inline std::vector<VilleEntry> ville_vertices() {
  const ClosedForm q11 = [](double d, double l) { return -9 * l / 8 * d * d + (9 * l / 4 + 3) * d - 9 * l / 8; };
  const ClosedForm q21 = [](double d, double l) {
    const double k = 2 / (9 * l);
    return (1.0 / 6 - l / 2 - k) * d * d + (5.0 / 3 + l + 2 * k) * d + 7.0 / 6 - l / 2 - k;
  };
  const ClosedForm q31 = [](double d, double l) {
    const double k = 2 / (9 * l);
    return (1.0 / 6 - l / 8 - k) * d * d + (2.0 / 3 + l / 4 + 2 * k) * d + 13.0 / 6 - l / 8 - k;
  };
  const ClosedForm q41 = [](double, double) { return 3.0; };
  const ClosedForm q12 = [](double d, double l) {
    const double k = 2 / (9 * l);
    return (7.0 / 6 - l / 2 - k) * d * d + (5.0 / 3 + l + 2 * k) * d + 1.0 / 6 - l / 2 - k;
  };
  const ClosedForm q22 = [](double d, double l) {
    const double k = 2 / (3 * l);
    return (1.5 - l / 8 - k) * d * d + (l / 4 + 2 * k) * d + 1.5 - l / 8 - k;
  };
  const ClosedForm q32 = [](double d, double l) {
    return (5.0 / 3 - 8 / (9 * l)) * d * d + 4.0 / 9 * (4 / l - 3) * d + 8.0 / 3 - 8 / (9 * l);
  };
  const ClosedForm q13 = [](double d, double l) {
    const double k = 2 / (9 * l);
    return (13.0 / 6 - l / 8 - k) * d * d + (2.0 / 3 + l / 4 + 2 * k) * d + 1.0 / 6 - l / 8 - k;
  };
  const ClosedForm q23 = [](double d, double l) {
    return (8.0 / 3 - 8 / (9 * l)) * d * d + 4.0 / 9 * (4 / l - 3) * d + 5.0 / 3 - 8 / (9 * l);
  };
  const ClosedForm q14 = [](double d, double) { return 3 * d * d; };
  return {{1, 0, q11}, {1, 1, q21}, {1, 2, q31}, {1, 3, q41}, {2, 0, q12}, {2, 1, q22},
          {2, 2, q32}, {2, 3, q11}, {2, 4, q21}, {2, 5, q31}, {3, 0, q13}, {3, 1, q23},
          {3, 2, q12}, {3, 3, q22}, {3, 4, q11}, {3, 5, q21}, {4, 0, q14}, {4, 1, q13},
          {4, 2, q12}, {4, 3, q11}};
}

}  // namespace ref

inline std::string face_label(const Polytope& p, const Index& f) {
  std::string s = "{";
  for (size_t i = 0; i < f.size(); ++i) s += (i ? "," : "") + p.labels[f[i]];
  return s + "}";
}

struct TableResult {
  Table table;
  double max_deviation = 0.0;  // largest |computed - closed form| over compared rows
};

namespace detail {

inline double rel_dev(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

inline TableResult face_table(const QuadForm& q, const Polytope& p, double delta, double lambda,
                              const std::vector<FaceEntry>& entries, bool with_threshold) {
  TableResult r;
  r.table.columns = {"S", "value", "closed_form", "in_relint"};
  if (with_threshold) r.table.columns.push_back("delta_S");
  for (const auto& e : entries) {
    const RestrictedForm rf = restrict(q, p, e.face, delta);
    const double ref = e.value(delta, lambda);
    std::vector<Cell> row{face_label(p, e.face)};
    if (rf.value_at_critical) {
      row.emplace_back(*rf.value_at_critical);
      r.max_deviation = std::max(r.max_deviation, rel_dev(*rf.value_at_critical, ref));
    } else {
      row.emplace_back("-");
    }
    row.emplace_back(ref);
    row.emplace_back(rf.in_relint);
    if (with_threshold) row.emplace_back(e.threshold);
    r.table.rows.push_back(std::move(row));
  }
  return r;
}

}  // namespace detail

// table1..table3: Q_1/2 on faces of the 6-simplex; table4, table5: Q_lambda; table6: F_lambda.
inline TableResult build_table(const std::string& which, double delta, double lambda) {
  check_delta_open(delta);
  const Polytope d6 = einstein_simplex(6);
  if (which == "table1") return detail::face_table(q_half(delta), d6, delta, 0.5, ref::qhalf_vertices(), false);
  if (which == "table2") return detail::face_table(q_half(delta), d6, delta, 0.5, ref::qhalf_edges(), true);
  if (which == "table3") return detail::face_table(q_half(delta), d6, delta, 0.5, ref::qhalf_triangles(), true);
  if (which == "table4")
    return detail::face_table(q_lambda(lambda, delta), d6, delta, lambda, ref::qlambda_vertices(), false);
  if (which == "table5")
    return detail::face_table(q_lambda(lambda, delta), d6, delta, lambda, ref::qlambda_edges(), false);
  if (which == "table6") {
    check_lambda(lambda);
    const auto cells = ville_cells();
    TableResult r;
    r.table.columns = {"cell", "vertex", "v1", "v2", "v3", "value", "closed_form"};
    for (const auto& e : ref::ville_vertices()) {
      const Polytope& c = cells[e.cell - 1];
      const VecX v = c.vertex(e.vertex, delta);
      const double val = f_ville(lambda, delta, e.cell)(v);
      const double refv = e.value(delta, lambda);
      r.max_deviation = std::max(r.max_deviation, detail::rel_dev(val, refv));
      r.table.rows.push_back({Cell(e.cell), Cell(c.labels[e.vertex]), Cell(v[0]), Cell(v[1]), Cell(v[2]),
                              Cell(val), Cell(refv)});
    }
    return r;
  }
  throw Error(Errc::BadParameter, "unknown table " + which);
}

}  // namespace pinch4
