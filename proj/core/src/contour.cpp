#include "risfox/contour.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "risfox/error.hpp"
#include "risfox/gamma.hpp"

namespace risfox::specfun {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kRoundingFloor = 1e-14;
constexpr int kBelowCount = 4;

cplx joint_term(const JointGamma& g, cplx arg) { return g.power > 0 ? ln_gamma(arg) : ln_rgamma(arg); }

// Scales that are integer multiples of a common unit let the joint gamma factor be tabulated on the grid.
bool commensurate(const std::vector<double>& scales, double& unit, std::vector<long>& mult) {
  double smallest = 0.0;
  for (double s : scales)
    if (s != 0.0 && (smallest == 0.0 || std::abs(s) < smallest)) smallest = std::abs(s);
  mult.assign(scales.size(), 0);
  if (smallest == 0.0) {
    unit = 1.0;
    return true;
  }
  for (int div = 1; div <= 12; ++div) {
    const double u = smallest / div;
    bool ok = true;
    for (std::size_t i = 0; i < scales.size() && ok; ++i) {
      const double r = scales[i] / u;
      const double n = std::round(r);
      ok = std::abs(r - n) < 1e-9 * std::max(1.0, std::abs(r)) && std::abs(n) < 1e6;
      mult[i] = static_cast<long>(n);
    }
    if (ok) {
      unit = u;
      return true;
    }
  }
  return false;
}

struct TensorGrid {
  const MultiIntegrand& f;
  std::span<const double> c;
  double h;
  std::vector<long> kmax;

  std::vector<std::vector<cplx>> dim_tab;  // dim_tab[i][k - kmin_i]
  std::vector<long> kmin;

  struct JointTab {
    bool tabulated = false;
    std::vector<long> mult;
    long nmin = 0;
    std::vector<cplx> tab;
    cplx base;
    double unit = 1.0;
  };
  std::vector<JointTab> jt;

  std::vector<long> idx;
  cplx sum = 0.0;
  double abs_sum = 0.0;

  TensorGrid(const MultiIntegrand& f_, std::span<const double> c_, double h_, std::vector<long> kmax_)
      : f(f_), c(c_), h(h_), kmax(std::move(kmax_)) {
    const std::size_t n = c.size();
    kmin.resize(n);
    dim_tab.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      kmin[i] = i == 0 ? 0 : -kmax[i];
      auto& tab = dim_tab[i];
      tab.resize(static_cast<std::size_t>(kmax[i] - kmin[i] + 1));
      for (long k = kmin[i]; k <= kmax[i]; ++k) tab[k - kmin[i]] = f.per_dim[i](cplx(c[i], k * h));
    }
    jt.resize(f.joint.size());
    for (std::size_t j = 0; j < f.joint.size(); ++j) {
      const auto& g = f.joint[j];
      auto& t = jt[j];
      double re = g.shift;
      for (std::size_t i = 0; i < n; ++i) re += g.scales[i] * c[i];
      t.base = cplx(re, 0.0);
      if (!commensurate(g.scales, t.unit, t.mult)) continue;
      long lo = 0, hi = 0;
      for (std::size_t i = 0; i < n; ++i) {
        const long a = t.mult[i] * kmin[i], b = t.mult[i] * kmax[i];
        lo += std::min(a, b);
        hi += std::max(a, b);
      }
      if (hi - lo > 50'000'000) continue;
      t.tabulated = true;
      t.nmin = lo;
      t.tab.resize(static_cast<std::size_t>(hi - lo + 1));
      for (long m = lo; m <= hi; ++m) t.tab[m - lo] = joint_term(g, cplx(re, h * t.unit * m));
    }
    idx.assign(n, 0);
  }

  void run() {
    std::vector<long> jn(jt.size(), 0);
    recurse(0, 0.0, jn);
  }

  void recurse(std::size_t d, cplx partial, std::vector<long>& jn) {
    const std::size_t n = c.size();
    for (long k = kmin[d]; k <= kmax[d]; ++k) {
      idx[d] = k;
      const cplx p = partial + dim_tab[d][k - kmin[d]];
      if (p.real() == -std::numeric_limits<double>::infinity()) continue;
      for (std::size_t j = 0; j < jt.size(); ++j)
        if (jt[j].tabulated) jn[j] += jt[j].mult[d] * k;
      if (d + 1 < n) {
        recurse(d + 1, p, jn);
      } else {
        cplx lv = p;
        for (std::size_t j = 0; j < jt.size(); ++j) {
          if (jt[j].tabulated) {
            lv += jt[j].tab[jn[j] - jt[j].nmin];
          } else {
            double im = 0.0;
            for (std::size_t i = 0; i < n; ++i) im += f.joint[j].scales[i] * idx[i] * h;
            lv += joint_term(f.joint[j], jt[j].base + cplx(0.0, im));
          }
        }
        const double w = idx[0] == 0 ? 0.5 : 1.0;
        if (lv.real() > -745.0) {
          const cplx v = std::exp(lv);
          sum += w * v;
          abs_sum += w * std::abs(v);
        }
      }
      for (std::size_t j = 0; j < jt.size(); ++j)
        if (jt[j].tabulated) jn[j] -= jt[j].mult[d] * k;
    }
  }
};

double radical_inverse(std::uint64_t i, std::uint64_t base) {
  double inv = 1.0 / static_cast<double>(base), f = inv, r = 0.0;
  while (i > 0) {
    r += f * static_cast<double>(i % base);
    i /= base;
    f *= inv;
  }
  return r;
}

}  // namespace

double Strip::midpoint(double clip) const noexcept {
  const bool lo_inf = std::isinf(lo), hi_inf = std::isinf(hi);
  if (lo_inf && hi_inf) return 0.0;
  if (lo_inf) return hi - clip / 2.0;
  if (hi_inf) return lo + clip / 2.0;
  if (hi - lo <= 2.0 * clip) return 0.5 * (lo + hi);
  // Very wide strip: stay within clip/2 of whichever edge lies nearer the origin.
  const double a = lo + clip / 2.0, b = hi - clip / 2.0;
  return std::abs(a) <= std::abs(b) ? a : b;
}

Strip intersect(const Strip& a, const Strip& b) noexcept { return {std::max(a.lo, b.lo), std::min(a.hi, b.hi)}; }

double find_truncation(const LogIntegrand& log_f, double c, double tail_ratio, double max_t) {
  const double log_tail = std::log(tail_ratio);
  double peak = log_f(cplx(c, 0.0)).real();
  double t = 0.0;
  int below = 0;
  while (t < max_t) {
    t += std::max(0.25, 0.02 * t);
    const double v = log_f(cplx(c, t)).real();
    if (std::isnan(v)) throw NonConvergenceError("integrand is not finite on the contour");
    peak = std::max(peak, v);
    if (v < peak + log_tail) {
      if (++below >= kBelowCount) return t;
    } else {
      below = 0;
    }
  }
  throw NonConvergenceError("integrand does not decay along the contour (T > " + std::to_string(max_t) + ")");
}

namespace {

struct Trapezoid {
  const LogIntegrand& f;
  double c, T;
  int n;
  double h;
  double inner = 0.0, ends = 0.0, abs_total = 0.0;

  double eval(double t, double w) {
    const cplx lv = f(cplx(c, t));
    if (lv.real() < -745.0) return 0.0;
    const cplx v = std::exp(lv);
    abs_total += w * std::abs(v);
    return v.real();
  }
  Trapezoid(const LogIntegrand& f_, double c_, double T_, int n_) : f(f_), c(c_), T(T_), n(n_), h(T_ / n_) {
    ends = 0.5 * (eval(0.0, 0.5) + eval(T, 0.5));
    for (int k = 1; k < n; ++k) inner += eval(k * h, 1.0);
  }
  double value() const { return h * (inner + ends) / kPi; }
  double abs_value() const { return h * abs_total / kPi; }
  void refine() {
    for (int k = 0; k < n; ++k) inner += eval((k + 0.5) * h, 1.0);
    n *= 2;
    h *= 0.5;
  }
};

}  // namespace

Estimate line_integral(const LogIntegrand& log_f, double c, const LineOptions& opt) {
  const double T = opt.truncation > 0.0 ? opt.truncation : find_truncation(log_f, c, opt.tail_ratio, opt.max_truncation);
  Trapezoid tr(log_f, c, T, std::max(opt.nodes, 2));
  double prev = tr.value();
  for (int level = 0; level < opt.max_levels; ++level) {
    tr.refine();
    const double cur = tr.value();
    const double diff = std::abs(cur - prev);
    const double floor = kRoundingFloor * tr.abs_value();
    if (level >= 1 && diff <= opt.rel_tol * std::abs(cur) + floor) return {cur, diff + floor};
    prev = cur;
  }
  throw NonConvergenceError("trapezoid node doubling did not converge");
}

std::vector<double> line_integral_levels(const LogIntegrand& log_f, double c, const LineOptions& opt, int levels) {
  const double T = opt.truncation > 0.0 ? opt.truncation : find_truncation(log_f, c, opt.tail_ratio, opt.max_truncation);
  Trapezoid tr(log_f, c, T, std::max(opt.nodes, 2));
  std::vector<double> out{tr.value()};
  for (int l = 0; l < levels; ++l) {
    tr.refine();
    out.push_back(tr.value());
  }
  return out;
}

cplx log_integrand(const MultiIntegrand& f, std::span<const cplx> u) {
  cplx acc = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) acc += f.per_dim[i](u[i]);
  for (const auto& g : f.joint) {
    cplx arg = g.shift;
    for (std::size_t i = 0; i < u.size(); ++i) arg += g.scales[i] * u[i];
    acc += joint_term(g, arg);
  }
  return acc;
}

std::vector<double> truncations(const MultiIntegrand& f, std::span<const double> c, double tail_ratio, double max_t) {
  const std::size_t n = c.size();
  std::vector<double> out(n);
  std::vector<cplx> u(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto axis = [&](cplx ui) {
      for (std::size_t k = 0; k < n; ++k) u[k] = cplx(c[k], 0.0);
      u[i] = ui;
      return log_integrand(f, u);
    };
    out[i] = find_truncation(axis, c[i], tail_ratio, max_t);
  }
  return out;
}

Estimate multi_integral(const MultiIntegrand& f, std::span<const double> c, const MultiOptions& opt) {
  const std::size_t n = c.size();
  if (n == 0 || f.per_dim.size() != n) throw DimensionError("multi_integral: dimension mismatch");
  for (const auto& g : f.joint)
    if (g.scales.size() != n) throw DimensionError("multi_integral: joint scale vector has wrong length");

  std::vector<double> T = opt.truncation.empty() ? truncations(f, c, opt.tail_ratio) : opt.truncation;
  if (T.size() != n) throw DimensionError("multi_integral: truncation vector has wrong length");
  const double norm_dim = std::pow(2.0 * kPi, static_cast<double>(n));

  if (opt.strategy == QuadratureStrategy::tensor) {
    double h = *std::min_element(T.begin(), T.end()) / std::max(opt.nodes, 2);
    double prev = std::numeric_limits<double>::quiet_NaN();
    for (int level = 0; level <= opt.max_levels; ++level, h *= 0.5) {
      std::vector<long> kmax(n);
      double points = 1.0;
      for (std::size_t i = 0; i < n; ++i) {
        kmax[i] = static_cast<long>(std::ceil(T[i] / h));
        points *= (i == 0 ? 1.0 : 2.0) * kmax[i] + 1.0;
      }
      if (points > static_cast<double>(opt.max_points))
        throw NonConvergenceError("tensor quadrature exceeded point budget before converging");
      TensorGrid grid(f, c, h, kmax);
      grid.run();
      const double scale = 2.0 * std::pow(h, static_cast<double>(n)) / norm_dim;
      const double cur = scale * grid.sum.real();
      const double floor = 1e-13 * scale * grid.abs_sum;
      if (level > 0) {
        const double diff = std::abs(cur - prev);
        if (diff <= opt.rel_tol * std::abs(cur) + floor) return {cur, diff};
      }
      prev = cur;
    }
    throw NonConvergenceError("tensor quadrature node doubling did not converge");
  }

  // Randomised Halton points on the truncated box, first axis folded by conjugate symmetry.
  static constexpr std::uint64_t kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19};
  if (n > std::size(kPrimes)) throw DimensionError("quasi-random strategy supports at most 8 dimensions");
  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const int R = std::max(opt.replicas, 2);
  std::vector<std::vector<double>> shift(R, std::vector<double>(n));
  for (auto& s : shift)
    for (auto& x : s) x = unif(rng);
  double volume = 1.0;
  for (std::size_t i = 0; i < n; ++i) volume *= (i == 0 ? 1.0 : 2.0) * T[i];

  std::vector<double> acc(R, 0.0);
  std::vector<cplx> u(n);
  std::uint64_t done = 0;
  std::uint64_t target = 1 << 12;
  while (true) {
    for (int r = 0; r < R; ++r) {
      for (std::uint64_t p = done; p < target; ++p) {
        for (std::size_t i = 0; i < n; ++i) {
          double y = radical_inverse(p + 1, kPrimes[i]) + shift[r][i];
          if (y >= 1.0) y -= 1.0;
          const double t = i == 0 ? y * T[0] : (2.0 * y - 1.0) * T[i];
          u[i] = cplx(c[i], t);
        }
        const cplx lv = log_integrand(f, u);
        if (lv.real() > -745.0) acc[r] += std::exp(lv).real();
      }
    }
    done = target;
    double mean = 0.0, m2 = 0.0;
    std::vector<double> est(R);
    for (int r = 0; r < R; ++r) {
      est[r] = 2.0 * volume * acc[r] / static_cast<double>(done) / norm_dim;
      mean += est[r];
    }
    mean /= R;
    for (double e : est) m2 += (e - mean) * (e - mean);
    const double se = std::sqrt(m2 / (R - 1) / R);
    if (se <= opt.rel_tol * std::abs(mean)) return {mean, se};
    if (target * 2 * static_cast<std::uint64_t>(R) > opt.max_points)
      throw NonConvergenceError("quasi-random integration exceeded point budget before converging");
    target *= 2;
  }
}

}  // namespace risfox::specfun
