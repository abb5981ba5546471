#include "polyvf/realizer.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "polyvf/invariants.hpp"
#include "polyvf/parallel.hpp"

namespace polyvf::real {

using comb::Cell;
using comb::CellKind;

namespace {

int count_alpha_cells(const DataSet& ds) {
  int s = 0;
  for (auto& c : comb::decompose_cells(ds))
    if (c.kind == CellKind::AlphaOmega) ++s;
  return s;
}

// alpha-omega cells by ascending j with their left class sets
struct AlphaPlan {
  std::vector<std::vector<int>> left;
};

AlphaPlan alpha_plan(const DataSet& ds) {
  std::vector<Cell> aw;
  for (auto& c : comb::decompose_cells(ds))
    if (c.kind == CellKind::AlphaOmega) aw.push_back(c);
  std::sort(aw.begin(), aw.end(), [](const Cell& a, const Cell& b) { return a.j < b.j; });
  AlphaPlan plan;
  for (auto& c : aw) plan.left.push_back(inv::left_of_zone(ds, c).classes);
  return plan;
}

std::vector<cplx> residues(const std::vector<cplx>& z) {
  std::vector<cplx> rho(z.size());
  for (size_t i = 0; i < z.size(); ++i) {
    cplx dp = 1.0;
    for (size_t j = 0; j < z.size(); ++j)
      if (j != i) dp *= z[i] - z[j];
    rho[i] = kTwoPiI / dp;
  }
  return rho;
}

std::vector<cplx> eval_alphas(const AlphaPlan& plan, const std::vector<cplx>& z) {
  auto rho = residues(z);
  std::vector<cplx> a(plan.left.size(), 0.0);
  for (size_t i = 0; i < plan.left.size(); ++i)
    for (int c : plan.left[i]) a[i] += rho[c];
  return a;
}

double rel_residual(const std::vector<cplx>& a, const std::vector<cplx>& target) {
  double r = 0;
  for (size_t i = 0; i < a.size(); ++i) r = std::max(r, std::abs(a[i] - target[i]) / std::abs(target[i]));
  return r;
}

double min_separation(const std::vector<cplx>& z) {
  double m = 1e300;
  for (size_t i = 0; i < z.size(); ++i)
    for (size_t j = i + 1; j < z.size(); ++j) m = std::min(m, std::abs(z[i] - z[j]));
  return m;
}

double max_modulus(const std::vector<cplx>& z) {
  double m = 0;
  for (auto& w : z) m = std::max(m, std::abs(w));
  return m;
}

// free unknowns are the first d-1 roots; the last keeps the sum at zero
std::vector<cplx> complete(const Eigen::VectorXcd& x) {
  std::vector<cplx> z(x.size() + 1);
  cplx s = 0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    z[i] = x[i];
    s += x[i];
  }
  z.back() = -s;
  return z;
}

struct NewtonResult {
  bool ok = false;
  int iterations = 0;
  double residual = 0;
};

// Damped Newton with a central-difference Jacobian.
NewtonResult newton(const AlphaPlan& plan, Eigen::VectorXcd& x, const std::vector<cplx>& target, double goal,
                    int max_iter) {
  const int m = static_cast<int>(x.size());
  auto F = [&](const Eigen::VectorXcd& y, double* r) {
    auto z = complete(y);
    auto a = eval_alphas(plan, z);
    Eigen::VectorXcd f(m);
    for (int i = 0; i < m; ++i) f[i] = a[i] - target[i];
    if (r) *r = rel_residual(a, target);
    return f;
  };
  NewtonResult res;
  double r = 0;
  Eigen::VectorXcd f = F(x, &r);
  for (int it = 0; it < max_iter; ++it) {
    res.iterations = it;
    if (r <= goal) {
      res.ok = true;
      res.residual = r;
      return res;
    }
    const double scale = std::max(max_modulus(complete(x)), 1e-3);
    const double h = 1e-6 * scale;
    Eigen::MatrixXcd J(m, m);
    for (int k = 0; k < m; ++k) {
      Eigen::VectorXcd xp = x, xm = x;
      xp[k] += h;
      xm[k] -= h;
      J.col(k) = (F(xp, nullptr) - F(xm, nullptr)) / (2 * h);
    }
    Eigen::VectorXcd dx = J.fullPivLu().solve(-f);
    if (!dx.allFinite()) break;
    double lam = 1.0;
    bool accepted = false;
    while (lam >= 1.0 / 64) {
      Eigen::VectorXcd xn = x + lam * dx;
      auto zn = complete(xn);
      if (min_separation(zn) > 1e-9 * scale) {
        double rn = 0;
        Eigen::VectorXcd fn = F(xn, &rn);
        if (std::isfinite(rn) && rn < (1 - lam / 4) * r) {
          x = xn;
          f = fn;
          r = rn;
          accepted = true;
          break;
        }
      }
      lam /= 2;
    }
    if (!accepted) break;
  }
  res.residual = r;
  res.ok = r <= goal;
  return res;
}

struct AttemptOut {
  Attempt info;
  Polynomial p;
};

Polynomial from_roots(const std::vector<cplx>& z) {
  auto c = core::poly_from_roots(z);
  c[c.size() - 2] = 0.0;
  return Polynomial(c, 1e-6);
}

AttemptOut run_attempt(const Problem& prob, const AlphaPlan& plan, const Options& opt, int index) {
  AttemptOut out;
  out.info.index = index;
  const int d = prob.ds.d;
  try {
    auto guess = initial_guess(prob, index, opt.seed);
    // the continuation stays in one class, so the start must already be in the target class
    auto cls = inv::assemble(from_roots(guess), opt.trace, {false});
    if (!(cls.ds == prob.ds)) {
      out.info.message = "initial guess lies in class " + comb::canonical_string(cls.ds);
      return out;
    }
    std::vector<cplx> z(d);
    for (size_t ci = 0; ci < prob.ds.classes.size(); ++ci) z[ci] = cls.eqs[cls.class_root[ci]].zeta;
    // order unknowns so the last root is the one eliminated by centering
    Eigen::VectorXcd x(d - 1);
    for (int i = 0; i < d - 1; ++i) x[i] = z[i];
    const auto a0 = eval_alphas(plan, complete(x));

    double t = 0, dt = 0.25;
    int iters = 0;
    while (t < 1) {
      double tn = std::min(1.0, t + dt);
      std::vector<cplx> target(a0.size());
      for (size_t i = 0; i < a0.size(); ++i) target[i] = (1 - tn) * a0[i] + tn * prob.alphas[i];
      Eigen::VectorXcd xs = x;
      const bool last = tn >= 1;
      auto nr = newton(plan, xs, target, last ? 1e-13 : 1e-9, opt.max_iter);
      iters += nr.iterations;
      bool ok = nr.ok || (last && nr.residual <= opt.tol * 1e-2);
      if (ok) {
        x = xs;
        t = tn;
        dt = std::min(0.5, dt * 1.5);
        out.info.residual = nr.residual;
      } else {
        dt /= 2;
        if (dt < 1e-4) {
          out.info.iterations = iters;
          out.info.residual = nr.residual;
          out.info.message = "continuation stalled at t=" + std::to_string(t);
          return out;
        }
      }
    }
    out.info.iterations = iters;
    auto p = from_roots(complete(x));
    auto fin = forward_map(p, opt.trace);
    if (!(fin.ds == prob.ds)) {
      out.info.message = "converged to class " + comb::canonical_string(fin.ds);
      return out;
    }
    double r = rel_residual(fin.alphas, prob.alphas);
    out.info.residual = r;
    if (r > opt.tol) {
      out.info.message = "residual " + std::to_string(r) + " above tolerance";
      return out;
    }
    out.info.ok = true;
    out.p = p;
  } catch (const Error& e) {
    out.info.message = e.what();
  }
  return out;
}

}  // namespace

void check_problem(const Problem& prob) {
  const auto& ds = prob.ds;
  auto rep = comb::validate(ds);
  if (!rep.valid()) fail(ErrorKind::InvalidDataSet, "target data set is invalid: " + rep.message);
  const int s = count_alpha_cells(ds);
  int h = 0;
  for (int l : ds.H)
    if (l % 2) ++h;
  if (static_cast<int>(prob.alphas.size()) != s || static_cast<int>(prob.taus.size()) != h) {
    std::ostringstream os;
    os << "invariant dimensions do not match the data set: expected " << s << " alphas and " << h << " taus, got "
       << prob.alphas.size() << " and " << prob.taus.size();
    fail(ErrorKind::InvalidArgument, os.str());
  }
  for (auto& a : prob.alphas)
    if (!(a.imag() > 0) || !std::isfinite(a.real())) fail(ErrorKind::InvalidArgument, "every alpha needs Im > 0");
  for (double t : prob.taus)
    if (!(t > 0) || !std::isfinite(t)) fail(ErrorKind::InvalidArgument, "every tau must be positive");
  const int d = ds.d;
  if (d > 2 && 2 * s + h != 2 * (d - 1)) {
    std::ostringstream os;
    os << "target lies on a non-generic stratum (2s+h = " << 2 * s + h << " constraints for " << 2 * (d - 1)
       << " real unknowns); only structurally stable targets are realized for d > 2";
    fail(ErrorKind::Unsupported, os.str());
  }
}

std::vector<cplx> alphas_from_roots(const DataSet& ds, const std::vector<cplx>& root_of_class) {
  if (static_cast<int>(root_of_class.size()) != ds.d || !ds.H.empty())
    fail(ErrorKind::InvalidArgument, "alphas_from_roots expects one root per class of a structurally stable set");
  return eval_alphas(alpha_plan(ds), root_of_class);
}

std::vector<cplx> initial_guess(const Problem& prob, int attempt, std::uint64_t seed) {
  const auto& ds = prob.ds;
  const int d = ds.d;
  std::vector<cplx> z;
  for (auto& cl : ds.classes) {
    cplx c = 0;
    for (int l : cl) c += std::polar(1.0, kPi * l / (d - 1));
    z.push_back(c / static_cast<double>(cl.size()));
  }
  cplx mean = 0;
  for (auto& w : z) mean += w;
  mean /= static_cast<double>(z.size());
  for (auto& w : z) w -= mean;
  if (attempt > 0) {
    std::mt19937_64 rng(seed * 1000003ULL + static_cast<std::uint64_t>(attempt));
    std::normal_distribution<double> N(0.0, 0.25 * std::min(1.0, min_separation(z)));
    for (auto& w : z) w += cplx(N(rng), N(rng));
    mean = 0;
    for (auto& w : z) mean += w;
    mean /= static_cast<double>(z.size());
    for (auto& w : z) w -= mean;
  }
  if (min_separation(z) < 1e-3)
    for (size_t i = 0; i < z.size(); ++i) z[i] += std::polar(1e-2, 2.0 * kPi * static_cast<double>(i) / z.size());
  // alpha scales like r^(1-d) under z -> r z
  auto a = eval_alphas(alpha_plan(ds), z);
  double ma = 0, mt = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    ma += std::abs(a[i]);
    mt += std::abs(prob.alphas[i]);
  }
  if (ma > 0 && mt > 0) {
    double r = std::pow(mt / ma, 1.0 / (1 - d));
    for (auto& w : z) w *= r;
  }
  return z;
}

Problem forward_map(const Polynomial& p, const trace::TraceConfig& cfg) {
  auto C = inv::assemble(p, cfg, {false});
  return {C.ds, C.alphas, C.taus};
}

Polynomial realize(const Problem& prob, const Options& opt, Report* report) {
  check_problem(prob);
  const int d = prob.ds.d;
  Report rep;
  if (d == 2) {
    rep.method = "closed-form";
    std::vector<cplx> c{0.0, 0.0, 1.0};
    if (!prob.alphas.empty()) {
      cplx r = cplx(0, kPi) / prob.alphas[0];
      c[0] = -r * r;
    } else if (!prob.taus.empty()) {
      double r = kPi / prob.taus[0];
      c[0] = r * r;
    }
    if (report) *report = rep;
    return Polynomial(c);
  }

  rep.method = "newton";
  const auto plan = alpha_plan(prob.ds);
  const int n = std::max(1, opt.restarts);
  std::vector<AttemptOut> outs(n);
  int threads = opt.threads > 0 ? opt.threads : default_threads();
  // waves of concurrent restarts; the lowest successful index wins
  int winner = -1;
  for (int base = 0; base < n && winner < 0; base += threads) {
    int m = std::min(threads, n - base);
    parallel_for(m, threads, [&](size_t i) {
      int idx = base + static_cast<int>(i);
      outs[idx] = run_attempt(prob, plan, opt, idx);
    });
    for (int i = base; i < base + m; ++i) {
      rep.attempts.push_back(outs[i].info);
      if (winner < 0 && outs[i].info.ok) winner = i;
    }
  }
  if (winner < 0) {
    std::ostringstream os;
    os << "no restart converged in the target class after " << rep.attempts.size() << " attempts:";
    for (auto& a : rep.attempts) os << " [" << a.index << "] " << a.message << ";";
    if (report) *report = rep;
    fail(ErrorKind::Realization, os.str());
  }
  rep.restart = winner;
  rep.residual = outs[winner].info.residual;
  if (report) *report = rep;
  return outs[winner].p;
}

}  // namespace polyvf::real
