#include "polyvf/tracer.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <sstream>

#include "polyvf/parallel.hpp"

namespace polyvf::trace {

namespace odeint = boost::numeric::odeint;
using core::EqKind;

namespace {

using Stepper = odeint::runge_kutta_dopri5<cplx, double, cplx, double, odeint::vector_space_algebra>;

double wrap_angle(double a) {
  a = std::fmod(a, 2 * kPi);
  if (a > kPi) a -= 2 * kPi;
  if (a < -kPi) a += 2 * kPi;
  return a;
}

// sum_{k<d} |a_k| R^{k-d}
double tail_bound(const std::vector<cplx>& c, double R) {
  const int d = static_cast<int>(c.size()) - 1;
  double s = 0;
  for (int k = 0; k < d; ++k) s += std::abs(c[k]) * std::pow(R, k - d);
  return s;
}

// Largest r with sum_{n>m} |b_n| r^{n-m} <= 0.05 |b_m|, capped by rmax.
double multiple_radius(const std::vector<cplx>& b, int m, double rmax) {
  auto g = [&](double r) {
    double s = 0;
    for (size_t n = m + 1; n < b.size(); ++n) s += std::abs(b[n]) * std::pow(r, double(n - m));
    return s;
  };
  const double target = 0.05 * std::abs(b[m]);
  if (g(rmax) <= target) return rmax;
  double lo = 0, hi = rmax;
  for (int it = 0; it < 80; ++it) {
    double mid = 0.5 * (lo + hi);
    (g(mid) <= target ? lo : hi) = mid;
  }
  return lo;
}

// Largest r where prod(|zeta - zeta_i| + r)^m_i - prod |zeta - zeta_i|^m_i < |Re P'(zeta)| / 2.
double trap_radius(const std::vector<Equilibrium>& eqs, size_t i, double rmax) {
  const double target = 0.5 * std::abs(eqs[i].dP.real());
  auto g = [&](double r) {
    double a = 1, b = 1;
    for (size_t k = 0; k < eqs.size(); ++k) {
      if (k == i) continue;
      double dist = std::abs(eqs[i].zeta - eqs[k].zeta);
      a *= std::pow(dist + r, eqs[k].m);
      b *= std::pow(dist, eqs[k].m);
    }
    return a - b;
  };
  if (g(rmax) < target) return rmax;
  double lo = 0, hi = rmax;
  for (int it = 0; it < 80; ++it) {
    double mid = 0.5 * (lo + hi);
    (g(mid) < target ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace

const char* to_string(Fate f) {
  switch (f) {
    case Fate::Landing: return "landing";
    case Fate::Homoclinic: return "homoclinic";
    case Fate::Inconclusive: return "inconclusive";
  }
  return "?";
}

double auto_start_radius(const Polynomial& p, const std::vector<Equilibrium>& eqs) {
  const auto& c = p.coeffs();
  double rmax = 0;
  for (auto& e : eqs) rmax = std::max(rmax, std::abs(e.zeta));
  bool zero = true;
  for (int k = 0; k + 1 < static_cast<int>(c.size()); ++k)
    if (c[k] != 0.0) zero = false;
  if (zero) return std::max(1.0, 2 * rmax);
  double hi = std::max(rmax, 1e-300);
  while (tail_bound(c, hi) > 1e-4) hi *= 2;
  double lo = hi / 2;
  for (int it = 0; it < 60; ++it) {
    double mid = 0.5 * (lo + hi);
    (tail_bound(c, mid) > 1e-4 ? lo : hi) = mid;
  }
  return std::max(hi, 2 * rmax);
}

cplx tail_integral(const Polynomial& p, cplx z) {
  // w = z/u: T = int_0^1 z u^{d-2} / Ptilde(u) du, Ptilde(u) = sum a_n z^n u^{d-n}
  const auto& a = p.coeffs();
  const int d = p.degree();
  std::vector<cplx> b(d + 1);
  cplx zp = 1.0;
  for (int n = 0; n <= d; ++n) {
    b[d - n] = a[n] * zp;
    zp *= z;
  }
  auto f = [&](double u) -> cplx {
    cplx q = 0;
    for (int m = d; m >= 0; --m) q = q * u + b[m];
    return z * std::pow(u, d - 2) / q;
  };
  double err = 0;
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, 0.0, 1.0, 12, 1e-13, &err);
}

cplx separatrix_start(const Polynomial& p, int l, double R) {
  const int d = p.degree();
  const double th0 = kPi * l / (d - 1);
  double th = th0;
  for (int it = 0; it < 40; ++it) {
    cplx z = std::polar(R, th);
    double f = tail_integral(p, z).imag();
    double fp = (cplx(0, -1) * z / p(z)).imag();
    if (fp == 0) break;
    double step = f / fp;
    th -= step;
    if (std::abs(step) < 1e-15) break;
  }
  if (std::abs(wrap_angle(th - th0)) > kPi / (2 * (d - 1)))
    fail(ErrorKind::Numeric, "separatrix start point search drifted; start radius too small");
  return std::polar(R, th);
}

Context make_context(const Polynomial& p, const std::vector<Equilibrium>& eqs, const TraceConfig& cfg) {
  Context ctx;
  ctx.p = p;
  ctx.eqs = eqs;
  const double scale = core::root_scale(eqs);
  double rmax = 0;
  for (auto& e : eqs) rmax = std::max(rmax, std::abs(e.zeta));
  ctx.R0 = cfg.start_radius > 0 ? cfg.start_radius : auto_start_radius(p, eqs);
  if (ctx.R0 <= rmax) fail(ErrorKind::InvalidArgument, "start radius must exceed the largest root modulus");
  ctx.Resc = cfg.escape_radius > 0 ? cfg.escape_radius : 10 * ctx.R0;
  if (ctx.Resc <= ctx.R0) fail(ErrorKind::InvalidArgument, "escape radius must exceed the start radius");
  ctx.rel_tol = cfg.rel_tol;
  ctx.abs_tol = cfg.abs_tol > 0 ? cfg.abs_tol : 1e-13 * scale;
  ctx.max_steps = cfg.max_steps;

  ctx.min_sep = 0;
  for (size_t i = 0; i < eqs.size(); ++i)
    for (size_t k = i + 1; k < eqs.size(); ++k) {
      double dd = std::abs(eqs[i].zeta - eqs[k].zeta);
      if (ctx.min_sep == 0 || dd < ctx.min_sep) ctx.min_sep = dd;
    }
  if (ctx.min_sep == 0) ctx.min_sep = scale;
  ctx.fallback_radius = cfg.landing_radius_factor * ctx.min_sep;

  double tchar = 0, rhosum = 0;
  ctx.trap_radius.assign(eqs.size(), 0.0);
  ctx.lead.assign(eqs.size(), 0.0);
  for (size_t i = 0; i < eqs.size(); ++i) {
    const auto& e = eqs[i];
    rhosum += std::abs(e.rho);
    double dnear = 0;
    for (size_t k = 0; k < eqs.size(); ++k)
      if (k != i) {
        double dd = std::abs(e.zeta - eqs[k].zeta);
        if (dnear == 0 || dd < dnear) dnear = dd;
      }
    if (dnear == 0) dnear = scale;
    if (e.kind == EqKind::Center) continue;
    if (e.m == 1) {
      ctx.trap_radius[i] = trap_radius(eqs, i, 0.5 * dnear);
      ctx.lead[i] = e.dP;
      tchar = std::max(tchar, 1.0 / std::abs(e.dP.real()));
    } else {
      auto b = core::taylor_shift(p.coeffs(), e.zeta);
      double r = multiple_radius(b, e.m, 0.25 * dnear);
      ctx.trap_radius[i] = r;
      ctx.lead[i] = b[e.m];
      tchar = std::max(tchar, 1.0 / (std::abs(b[e.m]) * std::pow(r, e.m - 1)));
    }
  }
  ctx.max_time = cfg.max_time > 0 ? cfg.max_time : 1e3 * (tchar + rhosum / (2 * kPi)) + 1.0;
  return ctx;
}

namespace {

// step cap near infinity keeps the blow-up resolved
double step_cap(const Context& ctx, cplx z, cplx v) {
  double az = std::abs(z);
  if (az < 0.5 * ctx.R0 || v == 0.0) return 1e300;
  return 0.2 * az / std::abs(v);
}

}  // namespace

SeparatrixTrace trace_separatrix(const Context& ctx, int l) {
  const auto& P = ctx.p;
  const int d = P.degree();
  const int n = 2 * d - 2;
  SeparatrixTrace tr;
  tr.label = l;
  const double s = (l % 2 == 1) ? 1.0 : -1.0;  // odd: forward, even: backward
  cplx z = separatrix_start(P, l, ctx.R0);
  tr.tail_start = tail_integral(P, z);
  auto rhs = [&](const cplx& x, cplx& dx, double) { dx = s * P(x); };
  auto stepper = odeint::make_controlled(ctx.abs_tol, ctx.rel_tol, Stepper());
  double t = 0;
  double dt = 1e-3 * std::abs(z) / std::abs(P(z));
  tr.samples.push_back({0.0, z});

  auto contracting = [&](size_t i) {
    const auto& S = tr.samples;
    if (S.size() < 11) return false;
    for (size_t q = S.size() - 10; q < S.size(); ++q)
      if (!(std::abs(S[q].z - ctx.eqs[i].zeta) < std::abs(S[q - 1].z - ctx.eqs[i].zeta))) return false;
    return true;
  };

  long steps = 0, rejects = 0;
  while (true) {
    if (steps >= ctx.max_steps || rejects > 100 * ctx.max_steps) {
      tr.message = "maximum step count exceeded";
      break;
    }
    if (t > ctx.max_time) {
      tr.message = "maximum time exceeded";
      break;
    }
    dt = std::min(dt, step_cap(ctx, z, P(z)));
    auto res = stepper.try_step(rhs, z, t, dt);
    if (res != odeint::success) {
      ++rejects;
      continue;
    }
    ++steps;
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      tr.message = "integration produced non-finite values";
      break;
    }
    const double az_prev = std::abs(tr.samples.back().z);
    tr.samples.push_back({t, z});
    const double az = std::abs(z);
    auto exit_dir = [&]() {
      double phi = std::arg(z);
      int lp = static_cast<int>(std::lround(phi * (d - 1) / kPi));
      lp = ((lp % n) + n) % n;
      double dev = std::abs(wrap_angle(phi - kPi * lp / (d - 1)));
      if (dev > kPi / (4 * (d - 1)) || (lp % 2) == (l % 2)) return -1;
      return lp;
    };
    // outward through the start circle: on the incoming separatrix of infinity iff Im T vanishes
    bool early = false;
    if (az_prev < ctx.R0 && az >= ctx.R0 && exit_dir() >= 0)
      early = std::abs(tail_integral(P, z).imag()) <= 1e-7 * (1.0 + t);
    if (early || az > ctx.Resc) {
      int lp = exit_dir();
      if (lp < 0) {
        tr.message = "ambiguous exit direction at the escape radius; try a larger escape radius";
        break;
      }
      tr.fate = Fate::Homoclinic;
      tr.exit_label = lp;
      tr.interior_time = t;
      tr.tail_end = tail_integral(P, z);
      cplx tail = s * (tr.tail_end - tr.tail_start);
      tr.tail_time = tail.real();
      tr.tau = t + tail.real();
      tr.tau_imag = tail.imag();
      return tr;
    }
    for (size_t i = 0; i < ctx.eqs.size(); ++i) {
      const auto& e = ctx.eqs[i];
      if (e.kind == EqKind::Center) continue;
      cplx u = z - e.zeta;
      double r = std::abs(u);
      bool land = false;
      if (e.m == 1) {
        if (s * e.dP.real() < 0 && r < ctx.trap_radius[i]) land = true;
      } else if (r < ctx.trap_radius[i]) {
        cplx w = s * ctx.lead[i] * std::pow(u, e.m - 1);
        if (std::abs(std::arg(-w)) < kPi / 4 && contracting(i)) land = true;
      }
      if (!land && r < ctx.fallback_radius && contracting(i)) land = true;
      if (land) {
        tr.fate = Fate::Landing;
        tr.root = static_cast<int>(i);
        tr.interior_time = t;
        return tr;
      }
    }
  }
  tr.fate = Fate::Inconclusive;
  tr.interior_time = t;
  return tr;
}

double homoclinic_time(const SeparatrixTrace& tr) {
  if (tr.fate != Fate::Homoclinic) fail(ErrorKind::InvalidArgument, "trace is not homoclinic");
  return tr.tau;
}

std::vector<SeparatrixTrace> trace_all(const Context& ctx, int threads) {
  const int n = 2 * ctx.p.degree() - 2;
  std::vector<SeparatrixTrace> out(n);
  parallel_for(n, threads, [&](size_t l) { out[l] = trace_separatrix(ctx, static_cast<int>(l)); });
  std::ostringstream os;
  for (auto& tr : out)
    if (tr.fate == Fate::Inconclusive) os << " s_" << tr.label << ": " << tr.message << ";";
  if (!os.str().empty()) fail(ErrorKind::Inconclusive, "inconclusive separatrix traces:" + os.str());
  for (auto& tr : out) {
    if (tr.fate != Fate::Homoclinic) continue;
    const auto& o = out[tr.exit_label];
    if (o.fate != Fate::Homoclinic || o.exit_label != tr.label)
      fail(ErrorKind::Inconsistent, "homoclinic pairing is not an involution at s_" + std::to_string(tr.label));
    if (std::abs(o.tau - tr.tau) > 1e-6 * (1 + std::abs(tr.tau)))
      fail(ErrorKind::Inconsistent, "homoclinic times disagree between s_" + std::to_string(tr.label) +
                                        " and s_" + std::to_string(o.label));
  }
  return out;
}

namespace {
struct Seg {
  double x0, x1, y0, y1;
  cplx a, b;
  int tr;
};
double orient(cplx a, cplx b, cplx c) { return (b.real() - a.real()) * (c.imag() - a.imag()) - (b.imag() - a.imag()) * (c.real() - a.real()); }
bool proper_cross(const Seg& s, const Seg& t) {
  double o1 = orient(s.a, s.b, t.a), o2 = orient(s.a, s.b, t.b);
  double o3 = orient(t.a, t.b, s.a), o4 = orient(t.a, t.b, s.b);
  return ((o1 > 0 && o2 < 0) || (o1 < 0 && o2 > 0)) && ((o3 > 0 && o4 < 0) || (o3 < 0 && o4 > 0));
}
}  // namespace

bool polylines_non_crossing(const Context& ctx, const std::vector<SeparatrixTrace>& traces, std::string* msg) {
  const double ex = 0.05 * ctx.min_sep;
  std::vector<Seg> segs;
  for (size_t ti = 0; ti < traces.size(); ++ti) {
    const auto& tr = traces[ti];
    for (size_t q = 1; q < tr.samples.size(); ++q) {
      cplx a = tr.samples[q - 1].z, b = tr.samples[q].z;
      if (tr.fate == Fate::Landing) {
        cplx zr = ctx.eqs[tr.root].zeta;
        if (std::abs(a - zr) < ex || std::abs(b - zr) < ex) continue;
      }
      segs.push_back({std::min(a.real(), b.real()), std::max(a.real(), b.real()), std::min(a.imag(), b.imag()),
                      std::max(a.imag(), b.imag()), a, b, static_cast<int>(ti)});
    }
  }
  std::sort(segs.begin(), segs.end(), [](const Seg& u, const Seg& v) { return u.x0 < v.x0; });
  std::vector<size_t> active;
  for (size_t i = 0; i < segs.size(); ++i) {
    const Seg& s = segs[i];
    size_t w = 0;
    for (size_t k = 0; k < active.size(); ++k) {
      const Seg& t = segs[active[k]];
      if (t.x1 < s.x0) continue;
      active[w++] = active[k];
      if (t.tr == s.tr) continue;
      const auto& A = traces[s.tr];
      const auto& B = traces[t.tr];
      if (A.fate == Fate::Homoclinic && A.exit_label == B.label) continue;
      if (t.y1 < s.y0 || s.y1 < t.y0) continue;
      if (proper_cross(s, t)) {
        if (msg) *msg = "separatrices s_" + std::to_string(A.label) + " and s_" + std::to_string(B.label) + " cross";
        return false;
      }
    }
    active.resize(w);
    active.push_back(i);
  }
  return true;
}

std::vector<cplx> flow_path(const Context& ctx, cplx z0, cplx c) {
  const auto& P = ctx.p;
  auto rhs = [&](const cplx& x, cplx& dx, double) { dx = c * P(x); };
  auto stepper = odeint::make_controlled(ctx.abs_tol, ctx.rel_tol, Stepper());
  double s = 0, ds = 1e-3;
  cplx z = z0;
  std::vector<cplx> pts{z};
  long steps = 0;
  while (s < 1.0) {
    if (++steps > ctx.max_steps) fail(ErrorKind::Inconclusive, "transversal path integration exceeded the step limit");
    cplx v = c * P(z);
    ds = std::min({ds, 1.0 - s, step_cap(ctx, z, v)});
    if (stepper.try_step(rhs, z, s, ds) == odeint::success) pts.push_back(z);
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      fail(ErrorKind::Numeric, "transversal path integration diverged");
  }
  return pts;
}

cplx polyline_integral(const Polynomial& p, const std::vector<cplx>& pts) {
  cplx acc = 0;
  for (size_t i = 1; i < pts.size(); ++i) {
    cplx a = pts[i - 1], h = pts[i] - pts[i - 1];
    auto f = [&](double u) -> cplx { return h / p(a + u * h); };
    acc += boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, 0.0, 1.0, 10, 1e-13);
  }
  return acc;
}

}  // namespace polyvf::trace
