#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "pinch4/curvature.hpp"
#include "pinch4/errors.hpp"
#include "pinch4/geography.hpp"
#include "pinch4/polytopes.hpp"
#include "pinch4/qp_face.hpp"
#include "pinch4/quadforms.hpp"
#include "pinch4/ricci_bound.hpp"

namespace pinch4 {

// SplitMix64 viewed as a counter-based generator: output i is mix(key + i * gamma), so a
// stream can be split or repositioned without replaying it.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t key = 0, std::uint64_t counter = 0) : key_(key), counter_(counter) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() { return mix(key_ + (++counter_) * kGamma); }

  CounterRng split(std::uint64_t stream) const { return CounterRng(mix(key_ ^ mix(stream * kGamma + 1))); }

  std::uint64_t key() const { return key_; }
  std::uint64_t counter() const { return counter_; }

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
  std::uint64_t key_;
  std::uint64_t counter_;
};

struct SamplerOptions {
  std::optional<CurvOp> start;  // defaults to the round sphere operator
  double step_factor = 0.05;    // step = step_factor * (1 - delta)
  int halve_after = 10;
  long long stuck_window = 100000;
  double stuck_rate = 1e-3;
};

struct PinchedSample {
  CurvOp op;
  Certificate cert;
};

namespace detail {

// Sectional curvatures of the 18 planes e_i + (+-e_j): a necessary condition for pinching.
inline bool coordinate_planes_pinched(const CurvOp& r, double delta, double tol) {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const double diag = 0.5 * (2.0 * r.u + r.wplus[i] + r.wminus[j]);
      const double off = r.c(j, i);
      for (double s : {1.0, -1.0}) {
        const double k = diag + s * off;
        if (k < delta - tol || k > 1.0 + tol) return false;
      }
    }
  return true;
}

}  // namespace detail

// Random walk through the positively delta-pinched operators.
class PinchedWalk {
 public:
  PinchedWalk(double delta, std::uint64_t seed, const SamplerOptions& opt = {})
      : delta_(delta), opt_(opt), rng_(CounterRng::mix(seed) ^ 0x5851F42D4C957F2DULL) {
    check_delta_open(delta);
    state_ = opt.start.value_or(sphere_operator());
    cert_ = pinch_certificate_positive(state_, delta_);
    if (!cert_.feasible) throw Error(Errc::BadParameter, "start operator is not delta-pinched");
    base_step_ = opt.step_factor * (1.0 - delta);
    step_ = base_step_;
  }

  PinchedSample next() {
    while (true) {
      CurvOp prop = propose();
      ++proposals_;
      bool ok = detail::coordinate_planes_pinched(prop, delta_, kCertTol);
      Certificate c;
      if (ok) {
        c = pinch_certificate_positive(prop, delta_);
        ok = c.feasible;
      }
      if (ok) {
        ++accepted_;
        ++window_accepts_;
        rejects_in_row_ = 0;
        step_ = std::min(base_step_, step_ * 1.25);
        state_ = prop;
        cert_ = c;
        check_stuck();
        return {state_, cert_};
      }
      if (++rejects_in_row_ >= opt_.halve_after) {
        step_ *= 0.5;
        rejects_in_row_ = 0;
      }
      check_stuck();
    }
  }

  long long proposals() const { return proposals_; }
  long long accepted() const { return accepted_; }
  double step() const { return step_; }

 private:
  CurvOp propose() {
    Vec3 wp, wm;
    Mat3 c;
    const double u = state_.u + step_ * normal_(rng_);
    for (int i = 0; i < 3; ++i) wp[i] = state_.wplus[i] + step_ * normal_(rng_);
    for (int i = 0; i < 3; ++i) wm[i] = state_.wminus[i] + step_ * normal_(rng_);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) c(i, j) = state_.c(i, j) + step_ * normal_(rng_);
    return make_operator(u, detail::remove_trace(wp), detail::remove_trace(wm), c);
  }

  void check_stuck() {
    if (++window_count_ < opt_.stuck_window) return;
    if (static_cast<double>(window_accepts_) < opt_.stuck_rate * static_cast<double>(window_count_))
      throw Error(Errc::StuckSampler, "acceptance rate fell below threshold");
    window_count_ = 0;
    window_accepts_ = 0;
  }

  double delta_;
  SamplerOptions opt_;
  CounterRng rng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  CurvOp state_;
  Certificate cert_;
  double base_step_ = 0.0;
  double step_ = 0.0;
  int rejects_in_row_ = 0;
  long long proposals_ = 0;
  long long accepted_ = 0;
  long long window_count_ = 0;
  long long window_accepts_ = 0;
};

inline std::vector<PinchedSample> sample_pinched_certified(double delta, long long n, std::uint64_t seed,
                                                           const SamplerOptions& opt = {}) {
  if (n <= 0) throw Error(Errc::BadParameter, "sample count must be positive");
  PinchedWalk walk(delta, seed, opt);
  std::vector<PinchedSample> out;
  out.reserve(static_cast<size_t>(n));
  for (long long i = 0; i < n; ++i) out.push_back(walk.next());
  return out;
}

inline std::vector<CurvOp> sample_pinched(double delta, long long n, std::uint64_t seed,
                                          const SamplerOptions& opt = {}) {
  std::vector<CurvOp> out;
  for (auto& s : sample_pinched_certified(delta, n, seed, opt)) out.push_back(s.op);
  return out;
}

// Brute-force extremum over the barycentric lattice with the given denominator.
inline double grid_extremum(const QuadForm& q, const Polytope& p, int resolution, Sense sense, double delta) {
  if (q.n != p.dim_ambient) throw Error(Errc::DimensionMismatch, "form and polytope dimensions differ");
  if (resolution < 2) throw Error(Errc::BadParameter, "resolution must be at least 2");
  check_delta_open(delta);
  const int n = q.n;
  auto binom = [](double a, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r *= (a - k + i) / i;
    return r;
  };
  const double m = resolution;
  double count = 0.0;
  if (p.kind == PolytopeKind::simplex)
    count = binom(m + p.num_vertices() - 1, p.num_vertices() - 1);
  else if (p.kind == PolytopeKind::prism)
    count = binom(m + 2, 2) * (m + 1);
  else
    throw Error(Errc::BadParameter, "grid oracle needs a simplex or a prism");
  if (count > 1e8) throw Error(Errc::ResolutionTooLarge, "lattice exceeds 1e8 points");

  std::vector<double> a(q.a.data(), q.a.data() + n * n), b(q.b.data(), q.b.data() + n);
  auto eval = [&](const std::vector<double>& y) {
    double v = q.c0;
    for (int i = 0; i < n; ++i) {
      double row = 0.0;
      for (int j = 0; j < n; ++j) row += a[i + j * n] * y[j];
      v += y[i] * (b[i] + row);
    }
    return v;
  };
  double best = sense == Sense::max ? -std::numeric_limits<double>::infinity()
                                    : std::numeric_limits<double>::infinity();
  auto consider = [&](double v) { best = sense == Sense::max ? std::max(best, v) : std::min(best, v); };

  // Points are sum_i (c_i / m) g_i over compositions c of m into |g| parts.
  auto lattice = [&](const std::vector<std::vector<double>>& gens, auto&& leaf) {
    const int k = static_cast<int>(gens.size());
    std::vector<std::vector<double>> acc(k + 1, std::vector<double>(n, 0.0));
    std::function<void(int, int)> rec = [&](int level, int left) {
      if (level == k - 1) {
        for (int d = 0; d < n; ++d) acc[k][d] = acc[level][d] + left / m * gens[level][d];
        leaf(acc[k]);
        return;
      }
      for (int c = 0; c <= left; ++c) {
        for (int d = 0; d < n; ++d) acc[level + 1][d] = acc[level][d] + c / m * gens[level][d];
        rec(level + 1, left - c);
      }
    };
    rec(0, resolution);
  };

  auto vert = [&](int i) {
    VecX v = p.vertex(i, delta);
    return std::vector<double>(v.data(), v.data() + n);
  };

  if (p.kind == PolytopeKind::simplex) {
    std::vector<std::vector<double>> gens;
    for (int i = 0; i < p.num_vertices(); ++i) gens.push_back(vert(i));
    lattice(gens, [&](const std::vector<double>& y) { consider(eval(y)); });
  } else {
    // Prism faces of size 3 with dimension 2 are the two triangles; their vertices pair up
    // along the segment direction.
    std::vector<Index> tris;
    for (size_t i = 0; i < p.faces.size(); ++i)
      if (p.faces[i].size() == 3 && p.face_dims[i] == 2) tris.push_back(p.faces[i]);
    const Index& bottom = tris.at(0);
    const Index& top = tris.at(1);
    // pair each bottom vertex with the top vertex joined to it by an edge
    Index partner(3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        Index e = {bottom[i], top[j]};
        std::sort(e.begin(), e.end());
        if (p.is_face(e)) partner[i] = top[j];
      }
    std::vector<std::vector<double>> gens, lift(3);
    for (int i = 0; i < 3; ++i) {
      gens.push_back(vert(bottom[i]));
      const auto t = vert(partner[i]);
      lift[i].resize(n);
      for (int d = 0; d < n; ++d) lift[i][d] = t[d] - gens[i][d];
    }
    std::vector<double> y(n);
    for (int c0 = 0; c0 <= resolution; ++c0)
      for (int c1 = 0; c0 + c1 <= resolution; ++c1) {
        const int c2 = resolution - c0 - c1;
        const double w[3] = {c0 / m, c1 / m, c2 / m};
        for (int sidx = 0; sidx <= resolution; ++sidx) {
          const double s = sidx / m;
          for (int d = 0; d < n; ++d) {
            double v = 0.0;
            for (int i = 0; i < 3; ++i) v += w[i] * (gens[i][d] + s * lift[i][d]);
            y[d] = v;
          }
          consider(eval(y));
        }
      }
  }
  return best;
}

struct CheckStat {
  double worst_margin = std::numeric_limits<double>::infinity();
  long long violations = 0;

  void add(double margin, double tol) {
    worst_margin = std::min(worst_margin, margin);
    if (margin < -tol) ++violations;
  }

  void merge(const CheckStat& o) {
    worst_margin = std::min(worst_margin, o.worst_margin);
    violations += o.violations;
  }
};

struct AuditReport {
  double delta = 0.0;
  long long samples = 0;
  std::uint64_t seed = 0;
  int chains = 0;
  double lambda = 0.0;
  std::optional<double> lambda_ville;
  std::map<std::string, CheckStat> checks;

  long long violations() const {
    long long v = 0;
    for (const auto& [k, c] : checks) v += c.violations;
    return v;
  }
};

struct AuditOptions {
  int chains = 8;
  unsigned threads = 0;  // 0: hardware concurrency
  double tol = 1e-9;
  SamplerOptions sampler;
};

inline void audit_sample(const CurvOp& r, const Certificate& cert, double delta, double lambda,
                         const std::optional<double>& lambda_v, double tol,
                         std::map<std::string, CheckStat>& checks) {
  checks["a_i_lambda"].add(i_lambda(r, lambda), tol);
  checks["b_ricci"].add(ricci_rhs(r.u, r.wplus, r.wminus, delta, cert.t1) - r.c.squaredNorm(), tol);
  const double weyl_cap = 8.0 / 3.0 * (1.0 - delta) * (1.0 - delta);
  const double wp = r.wplus.squaredNorm(), wm = r.wminus.squaredNorm();
  checks["c_weyl_eta=-1"].add(weyl_cap - (wp - wm), tol);
  checks["c_weyl_eta=0"].add(weyl_cap - wp, tol);
  checks["c_weyl_eta=1"].add(weyl_cap - (wp + wm), tol);
  checks["d_euler"].add(euler_form(r), tol);
  if (lambda_v) {
    const VillePoint vp = ville_point(r, delta);
    const QuadForm f = f_ville(*lambda_v, delta, ville_cell_of(vp.v, delta));
    checks["e_ville"].add(4.0 * i_lambda(r, *lambda_v) - f(vp.v), tol);
  }
}

inline AuditReport audit(double delta, long long n, std::uint64_t seed, const AuditOptions& opt = {}) {
  check_delta_open(delta);
  if (n <= 0) throw Error(Errc::BadParameter, "sample count must be positive");
  AuditReport rep;
  rep.delta = delta;
  rep.samples = n;
  rep.seed = seed;
  rep.chains = std::max(1, opt.chains);
  rep.lambda = lambda_of_delta(delta, Curve::best);
  if (delta >= breakpoints().d0_v) rep.lambda_ville = lambda_of_delta(delta, Curve::ville);

  const int k = rep.chains;
  std::vector<std::map<std::string, CheckStat>> parts(k);
  std::vector<std::exception_ptr> errors(k);
  const CounterRng root(seed);
  auto run_chain = [&](int c) {
    try {
      const long long count = n / k + (c < n % k ? 1 : 0);
      if (count == 0) return;
      PinchedWalk walk(delta, root.split(static_cast<std::uint64_t>(c)).key(), opt.sampler);
      for (long long i = 0; i < count; ++i) {
        const PinchedSample s = walk.next();
        audit_sample(s.op, s.cert, delta, rep.lambda, rep.lambda_ville, opt.tol, parts[c]);
      }
    } catch (...) {
      errors[c] = std::current_exception();
    }
  };
  unsigned threads = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(k));
  if (threads <= 1) {
    for (int c = 0; c < k; ++c) run_chain(c);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        for (int c = static_cast<int>(t); c < k; c += static_cast<int>(threads)) run_chain(c);
      });
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  for (const auto& part : parts)
    for (const auto& [name, stat] : part) rep.checks[name].merge(stat);
  return rep;
}

}  // namespace pinch4
