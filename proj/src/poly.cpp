#include "polyvf/poly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

namespace polyvf::core {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double max_abs(const std::vector<cplx>& c) {
  double m = 0;
  for (auto& x : c) m = std::max(m, std::abs(x));
  return m;
}

// sum |c_k| r^k, used for rounding-error bounds of Horner
double abs_horner(const std::vector<cplx>& c, double r) {
  double s = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) s = s * r + std::abs(*it);
  return s;
}

struct DSU {
  std::vector<int> p;
  explicit DSU(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
  void unite(int a, int b) { p[find(a)] = find(b); }
};

}  // namespace

Polynomial::Polynomial(std::vector<cplx> coeffs, double tol) : c_(std::move(coeffs)) {
  if (c_.size() < 3) fail(ErrorKind::InvalidArgument, "polynomial degree must be at least 2");
  for (auto& x : c_)
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag()))
      fail(ErrorKind::InvalidArgument, "polynomial has non-finite coefficients");
  const int d = degree();
  const double scale = std::max(1.0, max_abs(c_));
  if (std::abs(c_[d] - 1.0) > tol * scale)
    fail(ErrorKind::InvalidArgument, "polynomial is not monic: " + describe());
  if (std::abs(c_[d - 1]) > tol * scale)
    fail(ErrorKind::InvalidArgument, "polynomial is not centered: " + describe());
  c_[d] = 1.0;
  c_[d - 1] = 0.0;
}

cplx Polynomial::operator()(cplx z) const { return horner(c_, z); }

void Polynomial::eval(cplx z, cplx& p, cplx& dp) const {
  p = c_.back();
  dp = 0;
  for (int k = degree() - 1; k >= 0; --k) {
    dp = dp * z + p;
    p = p * z + c_[k];
  }
}

std::string Polynomial::describe() const {
  std::ostringstream os;
  os.precision(17);
  os << "[";
  for (size_t i = 0; i < c_.size(); ++i) {
    if (i) os << ", ";
    os << c_[i].real() << (c_[i].imag() < 0 ? "" : "+") << c_[i].imag() << "i";
  }
  os << "]";
  return os.str();
}

cplx horner(const std::vector<cplx>& c, cplx z) {
  cplx p = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) p = p * z + *it;
  return p;
}

std::vector<cplx> derivative(const std::vector<cplx>& c) {
  if (c.size() <= 1) return {0.0};
  std::vector<cplx> r(c.size() - 1);
  for (size_t k = 1; k < c.size(); ++k) r[k - 1] = c[k] * double(k);
  return r;
}

std::vector<cplx> taylor_shift(const std::vector<cplx>& c, cplx z0) {
  // repeated synthetic division
  std::vector<cplx> a = c;
  const int n = static_cast<int>(a.size()) - 1;
  for (int k = 0; k < n; ++k)
    for (int i = n - 1; i >= k; --i) a[i] += z0 * a[i + 1];
  return a;
}

std::vector<cplx> poly_from_roots(const std::vector<cplx>& roots) {
  std::vector<cplx> c{1.0};
  for (auto r : roots) {
    std::vector<cplx> nc(c.size() + 1, 0.0);
    for (size_t i = 0; i < c.size(); ++i) {
      nc[i + 1] += c[i];
      nc[i] -= r * c[i];
    }
    c = std::move(nc);
  }
  return c;
}

const char* to_string(EqKind k) {
  switch (k) {
    case EqKind::Source: return "source";
    case EqKind::Sink: return "sink";
    case EqKind::Center: return "center";
    case EqKind::Multiple: return "multiple";
  }
  return "?";
}

std::vector<cplx> aberth_roots(const std::vector<cplx>& c, const RootOptions& opt) {
  const int d = static_cast<int>(c.size()) - 1;
  if (d < 1) return {};
  double r0 = 0;
  for (int k = 0; k < d; ++k)
    if (c[k] != 0.0) r0 = std::max(r0, std::pow(std::abs(c[k] / c[d]), 1.0 / (d - k)));
  if (r0 == 0) return std::vector<cplx>(d, 0.0);

  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  std::vector<cplx> z(d);
  for (int i = 0; i < d; ++i) {
    double ang = 2 * kPi * i / d + 0.4 + 0.2 * U(rng);
    z[i] = std::polar(r0 * (1.0 + 0.1 * U(rng)), ang);
  }
  const auto dc = derivative(c);
  std::vector<char> done(d, 0);
  int iter = 0;
  for (; iter < opt.max_iter; ++iter) {
    bool all = true;
    for (int i = 0; i < d; ++i) {
      if (done[i]) continue;
      cplx p = horner(c, z[i]);
      double bound = 8 * kEps * abs_horner(c, std::abs(z[i]));
      if (std::abs(p) <= bound) {
        done[i] = 1;
        continue;
      }
      all = false;
      cplx dp = horner(dc, z[i]);
      cplx S = 0;
      for (int j = 0; j < d; ++j)
        if (j != i) S += 1.0 / (z[i] - z[j]);
      cplx w;
      if (dp == 0.0) {
        w = std::polar(1e-3 * r0, 1.0 + i);
      } else {
        cplx N = p / dp;
        w = N / (1.0 - N * S);
      }
      z[i] -= w;
      if (std::abs(w) <= 2 * kEps * std::abs(z[i])) done[i] = 1;
    }
    if (all) break;
  }
  if (iter == opt.max_iter) {
    std::ostringstream os;
    os.precision(17);
    os << "root finder did not converge after " << opt.max_iter << " iterations for coefficients [";
    for (size_t i = 0; i < c.size(); ++i) os << (i ? ", " : "") << c[i];
    os << "]";
    fail(ErrorKind::Numeric, os.str());
  }
  // Newton polish, only accepted when it reduces |p|
  for (auto& zi : z) {
    for (int it = 0; it < 3; ++it) {
      cplx p = horner(c, zi), dp = horner(dc, zi);
      if (dp == 0.0 || p == 0.0) break;
      cplx zn = zi - p / dp;
      if (std::abs(horner(c, zn)) < std::abs(p)) zi = zn;
      else break;
    }
  }
  return z;
}

double root_scale(const std::vector<Equilibrium>& eqs) {
  double s = 0;
  for (auto& e : eqs) s = std::max(s, std::abs(e.zeta));
  return s > 0 ? s : 1.0;
}

std::vector<Equilibrium> find_roots(const Polynomial& p, const RootOptions& opt) {
  const auto& c = p.coeffs();
  const int d = p.degree();
  auto z = aberth_roots(c, opt);
  double scale = 0;
  for (auto x : z) scale = std::max(scale, std::abs(x));
  if (scale == 0) scale = 1;
  const double tol = opt.cluster_tol * scale;

  // inclusion radii d|p/p'|
  std::vector<double> rad(d);
  for (int i = 0; i < d; ++i) {
    cplx v, dv;
    p.eval(z[i], v, dv);
    rad[i] = (dv == 0.0) ? tol : d * std::abs(v / dv);
  }
  DSU dsu(d);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      double dist = std::abs(z[i] - z[j]);
      if (dist < tol || dist < rad[i] + rad[j]) dsu.unite(i, j);
    }

  // A loose group is one multiple root when its spread is what a 1e-12 relative coefficient
  // perturbation of an m-fold root produces.
  DSU loose(d);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      if (std::abs(z[i] - z[j]) < 1e-2 * scale) loose.unite(i, j);
  {
    std::vector<std::vector<int>> lg(d);
    for (int i = 0; i < d; ++i) lg[loose.find(i)].push_back(i);
    for (auto& g : lg) {
      const int m = static_cast<int>(g.size());
      if (m < 2) continue;
      cplx cen = 0;
      for (int i : g) cen += z[i];
      cen /= double(m);
      double spread = 0;
      for (int i : g) spread = std::max(spread, std::abs(z[i] - cen));
      auto b = taylor_shift(c, cen);
      double S = abs_horner(c, std::abs(cen));
      if (b[m] == 0.0) continue;
      double expect = std::pow(1e-12 * S / std::abs(b[m]), 1.0 / m);
      if (spread <= 10 * expect)
        for (int i : g) dsu.unite(g[0], i);
    }
  }

  std::vector<std::vector<int>> groups(d);
  for (int i = 0; i < d; ++i) groups[dsu.find(i)].push_back(i);

  std::vector<Equilibrium> out;
  for (auto& g : groups) {
    if (g.empty()) continue;
    Equilibrium e;
    e.m = static_cast<int>(g.size());
    cplx cen = 0;
    for (int i : g) {
      e.members.push_back(z[i]);
      cen += z[i];
    }
    cen /= double(e.m);
    if (e.m >= 2) {
      // the cluster is a simple root of P^(m-1)
      std::vector<cplx> q = c;
      for (int k = 0; k < e.m - 1; ++k) q = derivative(q);
      auto dq = derivative(q);
      for (int it = 0; it < 20; ++it) {
        cplx v = horner(q, cen), dv = horner(dq, cen);
        if (dv == 0.0 || v == 0.0) break;
        cplx nz = cen - v / dv;
        if (std::abs(horner(q, nz)) >= std::abs(v)) break;
        cen = nz;
      }
    }
    e.zeta = cen;
    cplx v;
    p.eval(cen, v, e.dP);
    if (e.m >= 2) {
      e.kind = EqKind::Multiple;
    } else {
      double re = e.dP.real();
      if (std::abs(re) <= opt.center_tol * std::abs(e.dP)) e.kind = EqKind::Center;
      else e.kind = re > 0 ? EqKind::Source : EqKind::Sink;
    }
    e.rho = residue_of(p, e);
    out.push_back(std::move(e));
  }
  const double stol = 1e-9 * scale;
  std::sort(out.begin(), out.end(), [stol](const Equilibrium& a, const Equilibrium& b) {
    if (std::abs(a.zeta.real() - b.zeta.real()) > stol) return a.zeta.real() < b.zeta.real();
    return a.zeta.imag() < b.zeta.imag();
  });
  return out;
}

cplx residue_of(const Polynomial& p, const Equilibrium& e) {
  const auto& c = p.coeffs();
  if (e.m == 1) {
    cplx v, dv;
    p.eval(e.zeta, v, dv);
    double ref = abs_horner(derivative(c), std::abs(e.zeta));
    if (std::abs(dv) <= 1e-13 * ref)
      fail(ErrorKind::Numeric, "inconsistent multiplicity: P'(zeta) vanishes at a root claimed simple");
    return kTwoPiI / dv;
  }
  // 1/P(zeta+u) = u^-m / (b_m + b_{m+1} u + ...); need the u^{m-1} coefficient of the inverse series
  auto b = taylor_shift(c, e.zeta);
  const int d = p.degree();
  const int m = e.m;
  if (m > d) fail(ErrorKind::InvalidArgument, "multiplicity exceeds degree");
  auto B = [&](int k) { return k <= d ? b[k] : cplx(0.0); };
  std::vector<cplx> inv(m);
  inv[0] = 1.0 / B(m);
  for (int n = 1; n < m; ++n) {
    cplx s = 0;
    for (int i = 1; i <= n; ++i) s += B(m + i) * inv[n - i];
    inv[n] = -s / B(m);
  }
  return kTwoPiI * inv[m - 1];
}

double period_of_center(const Polynomial& p, const Equilibrium& e) {
  if (e.m != 1) fail(ErrorKind::InvalidArgument, "period requested for a multiple equilibrium");
  cplx v, dv;
  p.eval(e.zeta, v, dv);
  if (dv.imag() == 0.0)
    fail(ErrorKind::InvalidArgument, "degenerate center: Im P'(zeta) = 0");
  cplx t = dv.imag() > 0 ? kTwoPiI / dv : -kTwoPiI / dv;
  return t.real();
}

std::vector<cplx> push_forward(const std::vector<cplx>& q, cplx A, cplx B) {
  // P(w) = A q((w - B)/A)
  const int d = static_cast<int>(q.size()) - 1;
  std::vector<cplx> r(d + 1, 0.0);
  const cplx a1 = 1.0 / A, a0 = -B / A;
  std::vector<cplx> acc{q[d]};
  for (int k = d - 1; k >= 0; --k) {
    std::vector<cplx> nx(acc.size() + 1, 0.0);
    for (size_t i = 0; i < acc.size(); ++i) {
      nx[i + 1] += acc[i] * a1;
      nx[i] += acc[i] * a0;
    }
    nx[0] += q[k];
    acc = std::move(nx);
  }
  for (int i = 0; i <= d; ++i) r[i] = A * acc[i];
  return r;
}

std::vector<Normalization> normalize_all(const std::vector<cplx>& q_in) {
  std::vector<cplx> q = q_in;
  while (q.size() > 1 && q.back() == 0.0) q.pop_back();
  if (q.size() < 3) fail(ErrorKind::InvalidArgument, "normalize needs degree >= 2");
  const int d = static_cast<int>(q.size()) - 1;
  const cplx cd = q[d];
  std::vector<std::pair<double, cplx>> cand;
  const double mod = std::pow(std::abs(cd), 1.0 / (d - 1));
  for (int k = 0; k < d - 1; ++k) {
    cplx A = std::polar(mod, (std::arg(cd) + 2 * kPi * k) / (d - 1));
    double a = std::arg(A);
    if (a < 0) a += 2 * kPi;
    if (a >= 2 * kPi - 1e-15) a = 0;
    cand.push_back({a, A});
  }
  std::sort(cand.begin(), cand.end(), [](auto& x, auto& y) { return x.first < y.first; });
  std::vector<Normalization> out;
  for (auto& [ang, A0] : cand) {
    cplx A = A0;
    if (ang == 0) A = cplx(A.real(), 0.0);
    cplx B = A * q[d - 1] / (double(d) * cd);
    auto P = push_forward(q, A, B);
    double sc = std::max(1.0, max_abs(P));
    P[d] = 1.0;
    if (std::abs(P[d - 1]) <= 1e-10 * sc) P[d - 1] = 0.0;
    out.push_back({Polynomial(P, 1e-9), A, B});
  }
  return out;
}

Normalization normalize(const std::vector<cplx>& q) { return normalize_all(q).front(); }

}  // namespace polyvf::core
