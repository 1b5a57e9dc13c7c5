#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "pinch4/curvature.hpp"
#include "pinch4/errors.hpp"
#include "pinch4/expr.hpp"
#include "pinch4/geography.hpp"
#include "pinch4/io.hpp"
#include "pinch4/oracle.hpp"
#include "pinch4/polytopes.hpp"
#include "pinch4/qp_face.hpp"
#include "pinch4/quadforms.hpp"
#include "pinch4/tables.hpp"

namespace pinch4 {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

namespace cli {

inline Polytope polytope_by_name(const std::string& name) {
  if (name == "d5") return einstein_simplex(5);
  if (name == "d6") return einstein_simplex(6);
  if (name == "d7") return einstein_simplex(7);
  if (name.size() == 2 && name[0] == 'v' && name[1] >= '1' && name[1] <= '4') return ville_cells()[name[1] - '1'];
  throw Error(Errc::BadParameter, "unknown polytope " + name);
}

inline Index parse_face(const std::string& s, int nverts) {
  Index f;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    const int i = static_cast<int>(parse_expr(tok));
    if (i < 1 || i > nverts) throw Error(Errc::BadParameter, "vertex index out of range: " + tok);
    f.push_back(i - 1);
  }
  std::sort(f.begin(), f.end());
  return f;
}

inline bool usage_error(Errc e) {
  switch (e) {
    case Errc::StuckSampler:
    case Errc::NoSignChange:
    case Errc::EmptyRegion:
      return false;
    default:
      return true;
  }
}

struct Args {
  std::string delta = "";
  std::string lambda = "";
  std::string eta = "0";
  std::string tol = "1e-9";
  std::string which, file, form, polytope, sense = "min", face;
  std::string from = "0.01", to = "1", step = "0.01";
  std::string format;
  long long n = 100000;
  unsigned long long seed = 42;
  int chains = 8;
  unsigned threads = 0;
};

inline Format format_or(const Args& a, Format dflt) { return a.format.empty() ? dflt : parse_format(a.format); }

inline int run_tables(const Args& a, std::ostream& out) {
  const double delta = parse_expr(a.delta);
  const double lambda = a.lambda.empty() ? 0.5 : parse_expr(a.lambda);
  const TableResult r = build_table(a.which, delta, lambda);
  write_table(out, r.table, format_or(a, Format::text));
  return r.max_deviation <= 1e-9 ? kExitOk : kExitFail;
}

inline int run_certify(const Args& a, std::ostream& out) {
  std::ifstream in(a.file);
  if (!in) throw Error(Errc::BadParameter, "cannot open " + a.file);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError, e.what());
  }
  const CurvOp r = curvop_from_json(j);
  const double delta = parse_expr(a.delta);
  const Certificate c = pinch_certificate(r, delta, parse_expr(a.tol));
  const Format f = format_or(a, Format::text);
  if (f == Format::json) {
    out << to_json(c).dump(2) << '\n';
  } else {
    Table t{{"feasible", "boundary", "sign", "t1", "t2", "margin1", "margin2"},
            {{c.feasible, c.boundary, c.sign, c.t1, c.t2, c.margin1, c.margin2}}};
    write_table(out, t, f);
  }
  return c.feasible ? kExitOk : kExitFail;
}

inline int run_optimize(const Args& a, std::ostream& out) {
  const double delta = parse_expr(a.delta);
  const Polytope p = polytope_by_name(a.polytope);
  QuadForm q;
  if (a.form == "qhalf")
    q = q_half(delta);
  else if (a.form == "qlambda")
    q = q_lambda(a.lambda.empty() ? lambda_of_delta(delta, Curve::best) : parse_expr(a.lambda), delta);
  else if (a.form == "qeta")
    q = q_eta(parse_expr(a.eta));
  else if (a.form == "qeuler")
    q = q_euler();
  else if (a.form == "fville") {
    if (p.dim_ambient != 3) throw Error(Errc::DimensionMismatch, "fville lives on the cells v1..v4");
    const double lam = a.lambda.empty() ? lambda_of_delta(delta, Curve::ville) : parse_expr(a.lambda);
    q = f_ville(lam, delta, a.polytope[1] - '0');
  } else {
    throw Error(Errc::BadParameter, "unknown form " + a.form);
  }
  if (a.sense != "min" && a.sense != "max") throw Error(Errc::BadParameter, "sense must be min or max");
  const Extremum e = optimize(q, p, a.sense == "max" ? Sense::max : Sense::min, delta);
  const Format f = format_or(a, Format::text);
  if (f == Format::json) {
    json pt = json::array();
    for (int i = 0; i < e.point.size(); ++i) pt.push_back(rounded12(e.point[i]));
    json cands = json::array();
    for (const auto& c : e.candidates) cands.push_back({{"face", face_label(p, c.face)}, {"value", rounded12(c.value)}});
    out << json{{"value", rounded12(e.value)}, {"face", face_label(p, e.face)}, {"sense", a.sense}, {"point", pt},
                {"candidates", cands}}
               .dump(2)
        << '\n';
    return kExitOk;
  }
  Table t{{"face", "value"}, {}};
  for (const auto& c : e.candidates) t.rows.push_back({face_label(p, c.face), c.value});
  if (f == Format::text) {
    out << "value  " << fmt_num(e.value) << "\nface   " << face_label(p, e.face) << "\npoint ";
    for (int i = 0; i < e.point.size(); ++i) out << ' ' << fmt_num(e.point[i]);
    out << "\n\ncandidates\n";
  }
  write_table(out, t, f);
  return kExitOk;
}

inline int run_thresholds(const Args& a, std::ostream& out) {
  const Polytope d6 = einstein_simplex(6);
  const Index face = parse_face(a.face, d6.num_vertices());
  if (!d6.is_face(face)) throw Error(Errc::NotAFace, a.face);
  FaceFamily fam;
  fam.polytope = d6;
  fam.face = face;
  if (a.form == "qhalf") {
    fam.form = [](double d) { return q_half(d); };
  } else if (a.form == "qlambda") {
    const double lam = a.lambda.empty() ? 0.5 : parse_expr(a.lambda);
    check_lambda(lam);
    fam.form = [lam](double d) { return q_lambda(lam, d); };
  } else {
    throw Error(Errc::BadParameter, "thresholds supports qhalf and qlambda");
  }
  const double lo = 1e-6, hi = 1.0 - 1e-6;
  auto pred = [&](double d) { return family_predicate(fam, ScanPredicate::relint, d); };
  const std::vector<double> xs = find_crossings(pred, lo, hi, 2000);
  Table t{{"delta", "relint_below", "relint_above"}, {}};
  for (double x : xs) t.rows.push_back({x, pred(x - 1e-9), pred(x + 1e-9)});
  const Format f = format_or(a, Format::text);
  if (f == Format::text) {
    out << "face " << face_label(d6, face) << ": critical point in relint at delta=" << fmt_num(lo) << ": "
        << (pred(lo) ? "yes" : "no") << '\n';
  }
  write_table(out, t, f);
  return kExitOk;
}

inline int run_lambda_curve(const Args& a, std::ostream& out) {
  const double from = parse_expr(a.from), to = parse_expr(a.to), step = parse_expr(a.step);
  if (!(step > 0.0) || !(from > 0.0) || !(to <= 1.0) || from > to)
    throw Error(Errc::BadParameter, "need 0 < from <= to <= 1 and step > 0");
  Table t{{"delta", "lambda_best", "lambda_star", "lambda_ville"}, {}};
  const long long count = static_cast<long long>(std::floor((to - from) / step + 1e-9)) + 1;
  const double d0v = breakpoints().d0_v;
  for (long long i = 0; i < count; ++i) {
    double d = from + static_cast<double>(i) * step;
    if (std::abs(d - to) < 1e-12 || d > to) d = to;
    std::vector<Cell> row{d, lambda_of_delta(d, Curve::best), lambda_of_delta(d, Curve::star)};
    row.push_back(d >= d0v ? Cell(lambda_of_delta(d, Curve::ville)) : Cell(""));
    t.rows.push_back(std::move(row));
  }
  write_table(out, t, format_or(a, Format::csv));
  return kExitOk;
}

inline int run_region(const Args& a, std::ostream& out) {
  const double delta = parse_expr(a.delta);
  const auto poly = region_polygon(delta);
  Table t{{"sigma_abs", "chi"}, {}};
  for (const auto& p : poly) t.rows.push_back({p.x, p.y});
  write_table(out, t, format_or(a, Format::csv));
  return kExitOk;
}

inline int run_audit(const Args& a, std::ostream& out) {
  const double delta = parse_expr(a.delta);
  AuditOptions opt;
  opt.chains = a.chains;
  opt.threads = a.threads;
  const AuditReport rep = audit(delta, a.n, a.seed, opt);
  const Format f = format_or(a, Format::json);
  if (f == Format::json) {
    out << to_json(rep).dump(2) << '\n';
  } else {
    Table t{{"check", "worst_margin", "violations"}, {}};
    for (const auto& [name, s] : rep.checks) t.rows.push_back({name, s.worst_margin, s.violations});
    write_table(out, t, f);
  }
  return rep.violations() > 0 ? kExitFail : kExitOk;
}

inline int run_vertices(const Args& a, std::ostream& out) {
  const double delta = parse_expr(a.delta);
  check_delta_open(delta);
  write_table(out, vertex_table(polytope_by_name(a.polytope), delta), format_or(a, Format::csv));
  return kExitOk;
}

}  // namespace cli

// Runs one pinch4 command; args excludes the program name.
inline int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Verification engine for pinched 4-manifold geography", "pinch4"};
  app.failure_message(CLI::FailureMessage::help);
  app.require_subcommand(1);
  cli::Args a;
  auto fmt = [&](CLI::App* s) {
    s->add_option("--format", a.format, "text, csv or json")->check(CLI::IsMember({"text", "csv", "json"}));
  };

  auto* tables = app.add_subcommand("tables", "Reproduce the face-value tables");
  tables->add_option("--which", a.which, "table1..table6")
      ->required()
      ->check(CLI::IsMember({"table1", "table2", "table3", "table4", "table5", "table6"}));
  tables->add_option("--delta", a.delta, "pinching constant (expression allowed)")->required();
  tables->add_option("--lambda", a.lambda, "lambda for table4..table6 (default 1/2)");
  fmt(tables);

  auto* certify = app.add_subcommand("certify", "Pinching certificate for an operator in a JSON file");
  certify->add_option("--file", a.file, "JSON with keys u, wplus, wminus, c")->required();
  certify->add_option("--delta", a.delta)->required();
  certify->add_option("--tol", a.tol);
  fmt(certify);

  auto* optimize_cmd = app.add_subcommand("optimize", "Extremize a quadratic form over a polytope");
  optimize_cmd->add_option("--form", a.form)->required()->check(
      CLI::IsMember({"qhalf", "qlambda", "qeta", "qeuler", "fville"}));
  optimize_cmd->add_option("--polytope", a.polytope)->required()->check(
      CLI::IsMember({"d5", "d6", "d7", "v1", "v2", "v3", "v4"}));
  optimize_cmd->add_option("--delta", a.delta)->required();
  auto* lam_opt = optimize_cmd->add_option("--lambda", a.lambda);
  auto* eta_opt = optimize_cmd->add_option("--eta", a.eta);
  lam_opt->excludes(eta_opt);
  optimize_cmd->add_option("--sense", a.sense)->required()->check(CLI::IsMember({"min", "max"}));
  fmt(optimize_cmd);

  auto* thresholds = app.add_subcommand("thresholds", "Relative-interior crossings of a face critical point");
  thresholds->add_option("--face", a.face, "1-based vertex indices of the 6-simplex, e.g. 1,4")->required();
  thresholds->add_option("--form", a.form)->required()->check(CLI::IsMember({"qhalf", "qlambda"}));
  thresholds->add_option("--lambda", a.lambda);
  fmt(thresholds);

  auto* curve = app.add_subcommand("lambda-curve", "Tabulate the lambda curves");
  curve->add_option("--from", a.from);
  curve->add_option("--to", a.to);
  curve->add_option("--step", a.step);
  fmt(curve);

  auto* region = app.add_subcommand("region", "Admissible (|sigma|, chi) polygon");
  region->add_option("--delta", a.delta)->required();
  fmt(region);

  auto* audit_cmd = app.add_subcommand("audit", "Monte-Carlo audit of the pointwise inequalities");
  audit_cmd->add_option("--delta", a.delta)->required();
  audit_cmd->add_option("--n", a.n)->check(CLI::PositiveNumber);
  audit_cmd->add_option("--seed", a.seed);
  audit_cmd->add_option("--chains", a.chains)->check(CLI::PositiveNumber);
  audit_cmd->add_option("--threads", a.threads);
  fmt(audit_cmd);

  auto* vertices = app.add_subcommand("vertices", "Evaluated vertices of a polytope");
  vertices->add_option("--polytope", a.polytope)->required()->check(
      CLI::IsMember({"d5", "d6", "d7", "v1", "v2", "v3", "v4"}));
  vertices->add_option("--delta", a.delta)->required();
  fmt(vertices);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (tables->parsed()) return cli::run_tables(a, out);
    if (certify->parsed()) return cli::run_certify(a, out);
    if (optimize_cmd->parsed()) return cli::run_optimize(a, out);
    if (thresholds->parsed()) return cli::run_thresholds(a, out);
    if (curve->parsed()) return cli::run_lambda_curve(a, out);
    if (region->parsed()) return cli::run_region(a, out);
    if (audit_cmd->parsed()) return cli::run_audit(a, out);
    if (vertices->parsed()) return cli::run_vertices(a, out);
  } catch (const Error& e) {
    err << "pinch4: " << e.what() << '\n';
    return cli::usage_error(e.code()) ? kExitUsage : kExitFail;
  }
  return kExitUsage;
}

}  // namespace pinch4
