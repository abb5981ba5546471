#include "polyvf/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace polyvf::inv {

using core::EqKind;
using trace::Fate;

namespace {

// x in the cyclic run of `count` labels starting at `start`
bool in_run(const DataSet& ds, int x, int start, int count) { return ds.mod(x - start) < count; }

bool class_in_run(const DataSet& ds, int ci, int start, int count) {
  for (int l : ds.classes[ci])
    if (!in_run(ds, l, start, count)) return false;
  return true;
}

bool cell_in_run(const DataSet& ds, const Cell& c, int start, int count) {
  for (int e : c.ends)
    if (!in_run(ds, e, start, count)) return false;
  return true;
}

LeftSet left_set(const DataSet& ds, int lab_start, int lab_count, int end_start, int end_count) {
  LeftSet s;
  for (size_t ci = 0; ci < ds.classes.size(); ++ci)
    if (!comb::class_in_h(ds, static_cast<int>(ci)) && class_in_run(ds, static_cast<int>(ci), lab_start, lab_count))
      s.classes.push_back(static_cast<int>(ci));
  auto cs = comb::cells(ds);
  for (size_t i = 0; i < cs.size(); ++i) {
    const auto& c = cs[i];
    if (c.kind != CellKind::OddCenter && c.kind != CellKind::EvenCenter) continue;
    if (cell_in_run(ds, c, end_start, end_count)) s.center_cells.push_back(static_cast<int>(i));
  }
  return s;
}

double rel_err(cplx ref, cplx v) { return std::abs(ref - v) / (1.0 + std::abs(ref)); }

void append_arc(std::vector<cplx>& poly, cplx from, double to_angle) {
  const double r = std::abs(from);
  const double a0 = std::arg(from);
  double sweep = std::fmod(to_angle - a0, 2 * kPi);
  if (sweep < 0) sweep += 2 * kPi;
  const int N = 128;
  for (int i = 1; i <= N; ++i) poly.push_back(std::polar(r, a0 + sweep * i / N));
}

std::vector<cplx> chain_polygon(const trace::Context&, const std::vector<trace::SeparatrixTrace>& traces,
                                const std::vector<int>& members) {
  std::vector<cplx> poly;
  for (size_t i = 0; i < members.size(); ++i) {
    const auto& tr = traces[members[i]];
    for (auto& s : tr.samples) poly.push_back(s.z);
    const auto& nx = traces[members[(i + 1) % members.size()]];
    append_arc(poly, tr.samples.back().z, std::arg(nx.samples.front().z));
  }
  return poly;
}

// ends of a center cell in chain order
std::vector<int> chain_order(const DataSet& ds, const Cell& c) {
  std::vector<int> out;
  int x = *std::min_element(c.ends.begin(), c.ends.end());
  do {
    out.push_back(x);
    x = ds.mod(ds.sig[x] + 1);
  } while (x != out.front() && out.size() <= c.ends.size());
  return out;
}

}  // namespace

int winding_number(const std::vector<cplx>& poly, cplx w) {
  double tot = 0;
  for (size_t i = 0; i < poly.size(); ++i) {
    cplx a = poly[i] - w, b = poly[(i + 1) % poly.size()] - w;
    if (a == 0.0 || b == 0.0) continue;
    tot += std::arg(b / a);
  }
  return static_cast<int>(std::lround(tot / (2 * kPi)));
}

bool Classification::checks_pass() const {
  for (auto& c : checks)
    if (!c.pass) return false;
  return true;
}

std::vector<Zone> label_zones(const DataSet& ds) {
  auto cs = comb::decompose_cells(ds);
  std::vector<Zone> zs;
  for (auto& c : cs) {
    Zone z;
    z.kind = c.kind;
    z.k = c.k;
    z.j = c.j;
    z.label = c.label;
    z.ends = c.ends;
    zs.push_back(z);
  }
  auto rank = [](CellKind k) { return static_cast<int>(k); };
  std::stable_sort(zs.begin(), zs.end(), [&](const Zone& a, const Zone& b) {
    if (a.kind != b.kind) return rank(a.kind) < rank(b.kind);
    if (a.kind == CellKind::AlphaOmega) return a.j < b.j;
    return a.label < b.label;
  });
  return zs;
}

LeftSet left_of_homoclinic(const DataSet& ds, int k) {
  if (!ds.in_h[ds.mod(k)] || k % 2 == 0) fail(ErrorKind::InvalidArgument, "left_of_homoclinic expects an odd label in H");
  const int j = ds.sig[k];
  const int gap = ds.mod(k - j);
  // labels j+1..k-1, ends j+1..k
  return left_set(ds, ds.mod(j + 1), gap - 1, ds.mod(j + 1), gap);
}

LeftSet left_of_zone(const DataSet& ds, const Cell& cell) {
  if (cell.kind != CellKind::AlphaOmega) fail(ErrorKind::InvalidArgument, "left_of_zone expects an alpha-omega cell");
  const int gap = ds.mod(cell.k - cell.j);
  // labels j..k-1, ends j+1..k-1
  return left_set(ds, cell.j, gap, ds.mod(cell.j + 1), gap - 1);
}

DataSet build_data_set(int d, const std::vector<trace::SeparatrixTrace>& traces, std::vector<int>* class_root) {
  std::map<int, std::vector<int>> by_root;
  std::vector<std::vector<int>> classes;
  std::vector<int> H;
  for (auto& tr : traces) {
    if (tr.fate == Fate::Landing) by_root[tr.root].push_back(tr.label);
    else if (tr.fate == Fate::Homoclinic) {
      H.push_back(tr.label);
      if (tr.label % 2 == 1) classes.push_back({tr.label, tr.exit_label});
    } else {
      fail(ErrorKind::Inconclusive, "trace of s_" + std::to_string(tr.label) + " is inconclusive");
    }
  }
  for (auto& [r, ls] : by_root) classes.push_back(ls);
  auto ds = comb::make_data_set(d, classes, H);
  auto rep = comb::validate(ds);
  if (!rep.valid())
    fail(ErrorKind::Inconsistent, "traced separatrix graph gives an invalid data set " + comb::canonical_string(ds) +
                                      ": " + rep.message);
  if (class_root) {
    class_root->assign(ds.classes.size(), -1);
    for (auto& [r, ls] : by_root) (*class_root)[ds.class_of[ls.front()]] = r;
  }
  return ds;
}

cplx alpha_residue(const DataSet& ds, const Cell& cell, const std::vector<cplx>& rho_class,
                   const std::vector<cplx>& rho_cell) {
  auto L = left_of_zone(ds, cell);
  cplx a = 0;
  for (int ci : L.classes) a += rho_class[ci];
  for (int c : L.center_cells) a += rho_cell[c];
  return a;
}

cplx alpha_quadrature(const trace::Context& ctx, const Cell& cell, cplx alpha_guess, std::vector<cplx>* path,
                      double* miss) {
  const int d = ctx.p.degree();
  auto mid = [&](int e) { return std::polar(ctx.R0, kPi * (e - 0.5) / (d - 1)); };
  const cplx zk = mid(cell.k), zj = mid(cell.j);
  const cplx Tk = trace::tail_integral(ctx.p, zk), Tj = trace::tail_integral(ctx.p, zj);
  const cplx c = alpha_guess - Tj + Tk;
  auto pts = trace::flow_path(ctx, zk, c);
  const cplx zend = pts.back();
  cplx I = trace::polyline_integral(ctx.p, pts) + trace::polyline_integral(ctx.p, {zend, zj});
  // miss measured in rectifying coordinates, where the path is a straight segment
  if (miss) *miss = std::abs(trace::tail_integral(ctx.p, zend) - Tj) / (1.0 + std::abs(alpha_guess));
  if (path) {
    *path = std::move(pts);
    path->push_back(zj);
  }
  return -Tk + I + Tj;
}

Classification assemble(const Polynomial& p, const trace::TraceConfig& cfg, const AssembleOptions& opt) {
  Classification C;
  C.poly = p;
  C.eqs = core::find_roots(p);
  C.ctx = trace::make_context(p, C.eqs, cfg);
  C.traces = trace::trace_all(C.ctx, cfg.threads);
  const int d = p.degree();
  C.ds = build_data_set(d, C.traces, &C.class_root);
  const auto& ds = C.ds;
  C.cells = comb::decompose_cells(ds);

  // center cells to center equilibria by winding of their chain polygons
  C.center_eq_of_cell.assign(C.cells.size(), -1);
  bool centers_ok = true;
  std::string center_msg;
  int n_center_cells = 0;
  for (size_t ci = 0; ci < C.cells.size(); ++ci) {
    const auto& cell = C.cells[ci];
    if (cell.kind != CellKind::OddCenter && cell.kind != CellKind::EvenCenter) continue;
    ++n_center_cells;
    auto poly = chain_polygon(C.ctx, C.traces, chain_order(ds, cell));
    int found = -1, hits = 0;
    for (size_t e = 0; e < C.eqs.size(); ++e)
      if (std::abs(winding_number(poly, C.eqs[e].zeta)) == 1) {
        ++hits;
        found = static_cast<int>(e);
      }
    if (hits == 1 && C.eqs[found].kind == EqKind::Center) C.center_eq_of_cell[ci] = found;
    else {
      centers_ok = false;
      center_msg = "center cell " + std::to_string(cell.label) + " encloses " + std::to_string(hits) + " equilibria";
    }
  }
  int n_spectral_centers = 0;
  for (auto& e : C.eqs)
    if (e.kind == EqKind::Center) ++n_spectral_centers;
  if (n_spectral_centers != n_center_cells) {
    centers_ok = false;
    center_msg = "spectral test finds " + std::to_string(n_spectral_centers) + " centers, topology finds " +
                 std::to_string(n_center_cells);
  }
  std::vector<int> hits(C.eqs.size(), 0);
  for (auto& tr : C.traces)
    if (tr.fate == Fate::Landing) hits[tr.root]++;
  for (size_t e = 0; e < C.eqs.size(); ++e)
    if (C.eqs[e].kind != EqKind::Center && hits[e] == 0) {
      centers_ok = false;
      center_msg = "non-center equilibrium receives no separatrix";
    }

  // zones
  C.zones = label_zones(ds);
  for (auto& z : C.zones) {
    if (z.kind == CellKind::AlphaOmega) {
      z.omega_eq = C.class_root[ds.class_of[z.k]];
      z.alpha_eq = C.class_root[ds.class_of[z.j]];
    } else if (z.kind == CellKind::OddSepal || z.kind == CellKind::EvenSepal) {
      z.eq = C.class_root[ds.class_of[z.label]];
    } else {
      for (size_t ci = 0; ci < C.cells.size(); ++ci)
        if (C.cells[ci].ends == z.ends) z.eq = C.center_eq_of_cell[ci];
    }
  }

  std::vector<cplx> rho_class(ds.classes.size(), 0.0), rho_cell(C.cells.size(), 0.0);
  for (size_t ci = 0; ci < ds.classes.size(); ++ci)
    if (C.class_root[ci] >= 0) rho_class[ci] = C.eqs[C.class_root[ci]].rho;
  for (size_t ci = 0; ci < C.cells.size(); ++ci)
    if (C.center_eq_of_cell[ci] >= 0) rho_cell[ci] = C.eqs[C.center_eq_of_cell[ci]].rho;

  std::vector<const Cell*> aw;
  for (auto& c : C.cells)
    if (c.kind == CellKind::AlphaOmega) aw.push_back(&c);
  std::sort(aw.begin(), aw.end(), [](auto* a, auto* b) { return a->j < b->j; });
  for (auto* c : aw) {
    C.alpha_zones.push_back({c->k, c->j});
    C.alphas.push_back(alpha_residue(ds, *c, rho_class, rho_cell));
  }
  for (int k : ds.H)
    if (k % 2 == 1) {
      C.homoclinics.push_back({k, ds.sig[k]});
      C.taus.push_back(C.traces[k].tau);
      auto L = left_of_homoclinic(ds, k);
      cplx t = 0;
      for (int ci : L.classes) t += rho_class[ci];
      for (int c : L.center_cells) t += rho_cell[c];
      C.tau_residue.push_back(t.real());
    }

  auto add = [&](std::string name, bool pass, double err, std::string detail = "") {
    C.checks.push_back({std::move(name), pass, err, std::move(detail)});
  };

  // residue sum
  {
    cplx s = 0;
    double mx = 0;
    for (auto& e : C.eqs) {
      s += e.rho;
      mx = std::max(mx, std::abs(e.rho));
    }
    double err = mx > 0 ? std::abs(s) / mx : std::abs(s);
    add("residue_sum", err <= 1e-9, err);
  }
  {
    bool ok = true;
    for (auto& a : C.alphas) ok = ok && a.imag() > 0;
    for (double t : C.taus) ok = ok && t > 0;
    add("strip_heights", ok, 0);
  }
  {
    bool ok = true;
    for (size_t ci = 0; ci < ds.classes.size(); ++ci) {
      int r = C.class_root[ci];
      if (r < 0) continue;
      const auto& cl = ds.classes[ci];
      bool all_even = true, all_odd = true;
      for (int l : cl) (l % 2 ? all_even : all_odd) = false;
      EqKind k = C.eqs[r].kind;
      if (all_even && k != EqKind::Source) ok = false;
      if (all_odd && k != EqKind::Sink) ok = false;
      if (!all_even && !all_odd && k != EqKind::Multiple) ok = false;
    }
    add("landing_kinds", ok, 0);
  }
  add("center_consistency", centers_ok, 0, center_msg);
  {
    auto e = comb::euler_data(ds);
    add("qsh_relation", e.s + e.h == d - 1 - e.p / 2, 0);
    add("euler_characteristic", e.chi() == 2, 0);
    add("counting_identities", comb::counting_identities(ds).all(), 0);
  }

  if (opt.cross_checks) {
    // relation 1 and the alpha-omega geometric left test
    C.alpha_quad.resize(aw.size());
    double e1 = 0, worst_miss = 0;
    bool geo_ok = true;
    for (size_t i = 0; i < aw.size(); ++i) {
      std::vector<cplx> path;
      double miss = 0;
      C.alpha_quad[i] = alpha_quadrature(C.ctx, *aw[i], C.alphas[i], &path, &miss);
      e1 = std::max(e1, rel_err(C.alphas[i], C.alpha_quad[i]));
      worst_miss = std::max(worst_miss, miss);
      append_arc(path, path.back(), std::arg(path.front()));
      auto L = left_of_zone(ds, *aw[i]);
      std::vector<int> expect(C.eqs.size(), 0);
      for (int ci : L.classes) expect[C.class_root[ci]] = 1;
      for (int c : L.center_cells)
        if (C.center_eq_of_cell[c] >= 0) expect[C.center_eq_of_cell[c]] = 1;
      for (size_t e = 0; e < C.eqs.size(); ++e)
        if (winding_number(path, C.eqs[e].zeta) != expect[e]) geo_ok = false;
    }
    add("relation1_alpha", e1 <= 1e-6 && worst_miss < 1e-6, e1, "path miss " + std::to_string(worst_miss));

    double e2 = 0;
    for (size_t i = 0; i < C.taus.size(); ++i) {
      e2 = std::max(e2, rel_err(C.taus[i], C.tau_residue[i]));
      int k = C.homoclinics[i].first;
      const auto& tr = C.traces[k];
      std::vector<cplx> poly;
      for (auto& s : tr.samples) poly.push_back(s.z);
      append_arc(poly, poly.back(), std::arg(poly.front()));
      auto L = left_of_homoclinic(ds, k);
      std::vector<int> expect(C.eqs.size(), 0);
      for (int ci : L.classes) expect[C.class_root[ci]] = 1;
      for (int c : L.center_cells)
        if (C.center_eq_of_cell[c] >= 0) expect[C.center_eq_of_cell[c]] = 1;
      for (size_t e = 0; e < C.eqs.size(); ++e)
        if (winding_number(poly, C.eqs[e].zeta) != expect[e]) geo_ok = false;
    }
    add("relation2_tau", e2 <= 1e-6, e2);
    add("left_of_geometric", geo_ok, 0);

    // relations 3 and 4 with alpha from quadrature and tau from traces
    std::map<int, double> tau_of;  // by both labels of each homoclinic class
    for (size_t i = 0; i < C.taus.size(); ++i) {
      tau_of[C.homoclinics[i].first] = C.taus[i];
      tau_of[C.homoclinics[i].second] = C.taus[i];
    }
    auto chain_tau = [&](int start) {
      double s = 0;
      for (int x : comb::h_chain_from(ds, start)) s += tau_of[x];
      return s;
    };
    std::map<int, cplx> alpha_by_j, alpha_by_k;
    for (size_t i = 0; i < aw.size(); ++i) {
      alpha_by_j[aw[i]->j] = C.alpha_quad[i];
      alpha_by_k[aw[i]->k] = C.alpha_quad[i];
    }
    double e3 = 0, e4 = 0;
    bool ok34 = true;
    for (size_t ci = 0; ci < ds.classes.size(); ++ci) {
      int r = C.class_root[ci];
      if (r < 0) continue;
      const auto& cl = ds.classes[ci];
      EqKind kind = C.eqs[r].kind;
      if (kind != EqKind::Source && kind != EqKind::Sink) continue;
      cplx sum = 0;
      for (int l : cl) {
        auto& tab = kind == EqKind::Source ? alpha_by_j : alpha_by_k;
        auto it = tab.find(l);
        if (it == tab.end()) {
          ok34 = false;
          continue;
        }
        sum += it->second + chain_tau(ds.sig_inv[l] + 1);
      }
      if (kind == EqKind::Source) e3 = std::max(e3, rel_err(C.eqs[r].rho, sum));
      else e4 = std::max(e4, rel_err(C.eqs[r].rho, -sum));
    }
    add("relation3_source", ok34 && e3 <= 1e-6, e3);
    add("relation4_sink", ok34 && e4 <= 1e-6, e4);

    double e5 = 0;
    bool ok5 = true;
    for (size_t ci = 0; ci < C.cells.size(); ++ci) {
      const auto& cell = C.cells[ci];
      if (cell.kind != CellKind::OddCenter && cell.kind != CellKind::EvenCenter) continue;
      int r = C.center_eq_of_cell[ci];
      if (r < 0) {
        ok5 = false;
        continue;
      }
      double s = 0;
      for (int x : cell.ends) s += tau_of[x];
      double sign = C.eqs[r].dP.imag() > 0 ? 1.0 : -1.0;
      e5 = std::max(e5, rel_err(C.eqs[r].rho, sign * s));
    }
    add("relation5_center", ok5 && e5 <= 1e-6, e5);

    std::string msg;
    add("non_crossing_traces", trace::polylines_non_crossing(C.ctx, C.traces, &msg), 0, msg);
  }
  return C;
}

}  // namespace polyvf::inv
