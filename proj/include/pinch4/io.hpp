#pragma once

#include <cstdio>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "pinch4/curvature.hpp"
#include "pinch4/errors.hpp"
#include "pinch4/oracle.hpp"
#include "pinch4/polytopes.hpp"

namespace pinch4 {

using json = nlohmann::json;

// 12 significant digits.
inline std::string fmt_num(double x) {
  if (x == 0.0) return "0";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

inline double rounded12(double x) { return std::stod(fmt_num(x)); }

enum class Format { text, csv, json };

inline Format parse_format(const std::string& s) {
  if (s == "text") return Format::text;
  if (s == "csv") return Format::csv;
  if (s == "json") return Format::json;
  throw Error(Errc::BadParameter, "unknown format " + s);
}

struct Cell {
  std::string text;
  std::optional<double> num;

  Cell(double v) : text(fmt_num(v)), num(v) {}  // NOLINT
  Cell(int v) : text(std::to_string(v)), num(v) {}  // NOLINT
  Cell(long long v) : text(std::to_string(v)), num(static_cast<double>(v)) {}  // NOLINT
  Cell(std::string s) : text(std::move(s)) {}  // NOLINT
  Cell(const char* s) : text(s) {}  // NOLINT
  Cell(bool b) : text(b ? "true" : "false") {}  // NOLINT
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

inline void write_table(std::ostream& os, const Table& t, Format f) {
  switch (f) {
    case Format::csv: {
      for (size_t j = 0; j < t.columns.size(); ++j) os << (j ? "," : "") << t.columns[j];
      os << '\n';
      for (const auto& r : t.rows) {
        for (size_t j = 0; j < r.size(); ++j) os << (j ? "," : "") << r[j].text;
        os << '\n';
      }
      break;
    }
    case Format::json: {
      json arr = json::array();
      for (const auto& r : t.rows) {
        json o = json::object();
        for (size_t j = 0; j < r.size() && j < t.columns.size(); ++j) {
          if (r[j].num)
            o[t.columns[j]] = rounded12(*r[j].num);
          else if (r[j].text == "true" || r[j].text == "false")
            o[t.columns[j]] = r[j].text == "true";
          else
            o[t.columns[j]] = r[j].text;
        }
        arr.push_back(o);
      }
      os << arr.dump(2) << '\n';
      break;
    }
    case Format::text: {
      std::vector<size_t> w(t.columns.size());
      for (size_t j = 0; j < t.columns.size(); ++j) w[j] = t.columns[j].size();
      for (const auto& r : t.rows)
        for (size_t j = 0; j < r.size() && j < w.size(); ++j) w[j] = std::max(w[j], r[j].text.size());
      auto line = [&](auto get) {
        for (size_t j = 0; j < w.size(); ++j) {
          const std::string s = get(j);
          os << s;
          if (j + 1 < w.size()) os << std::string(w[j] - s.size() + 2, ' ');
        }
        os << '\n';
      };
      line([&](size_t j) { return t.columns[j]; });
      for (const auto& r : t.rows) line([&](size_t j) { return j < r.size() ? r[j].text : std::string(); });
      break;
    }
  }
}

inline json to_json(const CurvOp& r) {
  json c = json::array();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) c.push_back(r.c(i, j));
  return {{"u", r.u},
          {"wplus", {r.wplus[0], r.wplus[1], r.wplus[2]}},
          {"wminus", {r.wminus[0], r.wminus[1], r.wminus[2]}},
          {"c", c}};
}

inline CurvOp curvop_from_json(const json& j) {
  try {
    Vec3 wp, wm;
    Mat3 c = Mat3::Zero();
    for (int i = 0; i < 3; ++i) {
      wp[i] = j.at("wplus").at(i).get<double>();
      wm[i] = j.at("wminus").at(i).get<double>();
    }
    if (j.contains("c")) {
      const json& cj = j.at("c");
      if (cj.size() != 9) throw Error(Errc::BadParameter, "c must hold 9 numbers");
      for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k) c(i, k) = cj.at(3 * i + k).get<double>();
    }
    return make_operator(j.at("u").get<double>(), wp, wm, c);
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError, e.what());
  }
}

inline json to_json(const Certificate& c) {
  return {{"feasible", c.feasible}, {"boundary", c.boundary}, {"sign", c.sign},
          {"t1", rounded12(c.t1)},  {"t2", rounded12(c.t2)},   {"margin1", rounded12(c.margin1)},
          {"margin2", rounded12(c.margin2)}};
}

inline json to_json(const AuditReport& r) {
  json checks = json::object();
  for (const auto& [name, s] : r.checks)
    checks[name] = {{"worst_margin", rounded12(s.worst_margin)}, {"violations", s.violations}};
  json j = {{"delta", rounded12(r.delta)}, {"samples", r.samples}, {"seed", r.seed},
            {"chains", r.chains},          {"lambda", rounded12(r.lambda)}, {"checks", checks},
            {"violations", r.violations()}};
  j["lambda_ville"] = r.lambda_ville ? json(rounded12(*r.lambda_ville)) : json(nullptr);
  return j;
}

// One row per vertex: label followed by the coordinates.
inline Table vertex_table(const Polytope& p, double delta) {
  Table t;
  t.columns.push_back("vertex");
  static const char* simplex_cols[] = {"w1+", "w2+", "w1-", "w2-", "u", "t1", "t2"};
  for (int j = 0; j < p.dim_ambient; ++j)
    t.columns.push_back(p.dim_ambient == 3 ? "v" + std::to_string(j + 1) : simplex_cols[j]);
  for (int i = 0; i < p.num_vertices(); ++i) {
    std::vector<Cell> row{p.labels[i]};
    const VecX v = p.vertex(i, delta);
    for (int j = 0; j < p.dim_ambient; ++j) row.emplace_back(v[j]);
    t.rows.push_back(std::move(row));
  }
  return t;
}

// Parses the CSV written by write_table for a vertex table; returns the coordinate rows.
inline MatX parse_vertex_csv(std::istream& in) {
  std::string line;
  std::vector<std::vector<double>> rows;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    std::stringstream ss(line);
    std::string cell;
    std::getline(ss, cell, ',');
    std::vector<double> r;
    while (std::getline(ss, cell, ',')) r.push_back(std::stod(cell));
    rows.push_back(std::move(r));
  }
  if (rows.empty()) return MatX(0, 0);
  MatX m(rows.size(), rows[0].size());
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows[0].size()) throw Error(Errc::ParseError, "ragged vertex CSV");
    for (size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

}  // namespace pinch4
