#pragma once
#include <string>
#include <vector>

#include "polyvf/poly.hpp"

namespace polyvf::trace {

using core::Equilibrium;
using core::Polynomial;

struct TraceConfig {
  double start_radius = 0;   // 0: smallest R with |P/z^d - 1| < 1e-4 on |z| = R
  double escape_radius = 0;  // 0: 10 * start radius
  double landing_radius_factor = 1e-6;  // fallback landing radius relative to min root separation
  double rel_tol = 1e-10;
  double abs_tol = 0;   // 0: 1e-13 * root scale
  double max_time = 0;  // 0: derived from the linearizations
  long max_steps = 1000000;
  int threads = 0;  // workers for trace_all; 0 = default
};

enum class Fate { Landing, Homoclinic, Inconclusive };
const char* to_string(Fate f);

struct Sample {
  double t;
  cplx z;
};

struct SeparatrixTrace {
  int label = -1;
  std::vector<Sample> samples;
  Fate fate = Fate::Inconclusive;
  int root = -1;        // index into equilibria for landings
  int exit_label = -1;  // for homoclinics
  double interior_time = 0;
  cplx tail_start = 0;  // T(z) = int_z^inf dw/P at the first sample
  cplx tail_end = 0;    // same at the last sample (homoclinic only)
  double tail_time = 0;
  double tau = 0;           // homoclinic transit time
  double tau_imag = 0;      // imaginary residue of the time, a degeneracy diagnostic
  std::string message;
};

// Resolved configuration for one polynomial.
struct Context {
  Polynomial p;
  std::vector<Equilibrium> eqs;
  double R0 = 0, Resc = 0;
  double rel_tol = 0, abs_tol = 0, max_time = 0;
  long max_steps = 0;
  double min_sep = 0, fallback_radius = 0;
  std::vector<double> trap_radius;  // per equilibrium: certified landing radius (0 if none)
  std::vector<cplx> lead;           // per equilibrium: b_m in P(zeta+u) = b_m u^m + ...
};

Context make_context(const Polynomial& p, const std::vector<Equilibrium>& eqs, const TraceConfig& cfg);

double auto_start_radius(const Polynomial& p, const std::vector<Equilibrium>& eqs);
// int_z^inf dw/P(w) along the ray, valid for |z| beyond all roots
cplx tail_integral(const Polynomial& p, cplx z);
// Point on |z| = R where the separatrix with label l crosses (Im T = 0 near direction l).
cplx separatrix_start(const Polynomial& p, int l, double R);

SeparatrixTrace trace_separatrix(const Context& ctx, int l);
double homoclinic_time(const SeparatrixTrace& tr);
// All 2d-2 traces. Throws Inconclusive on undecided traces and Inconsistent on broken pairing.
std::vector<SeparatrixTrace> trace_all(const Context& ctx, int threads = 0);

// Segment-intersection sweep over the sampled curves; false plus a message on a crossing.
bool polylines_non_crossing(const Context& ctx, const std::vector<SeparatrixTrace>& traces, std::string* msg = nullptr);

// Integrates dz/ds = c P(z) for s in [0,1]; returns the sampled path (used by zone quadratures).
std::vector<cplx> flow_path(const Context& ctx, cplx z0, cplx c);
// int dz/P along the polyline (Gauss-Legendre per segment)
cplx polyline_integral(const Polynomial& p, const std::vector<cplx>& pts);

}  // namespace polyvf::trace
