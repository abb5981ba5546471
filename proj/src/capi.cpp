#include "polyvf/pvf.h"

#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "polyvf/comb.hpp"
#include "polyvf/invariants.hpp"
#include "polyvf/io.hpp"
#include "polyvf/realizer.hpp"
#include "polyvf/svg.hpp"

using namespace polyvf;

struct pvf_poly {
  core::Polynomial p;
};
struct pvf_dataset {
  comb::DataSet ds;
};
struct pvf_classification {
  inv::Classification c;
};

namespace {

thread_local std::string g_last_error;

pvf_status status_of(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidArgument: return PVF_ERR_ARGUMENT;
    case ErrorKind::Inconclusive: return PVF_ERR_INCONCLUSIVE;
    case ErrorKind::InvalidDataSet: return PVF_ERR_INVALID_DATA_SET;
    case ErrorKind::Realization: return PVF_ERR_REALIZATION;
    case ErrorKind::Numeric: return PVF_ERR_NUMERIC;
    case ErrorKind::Unsupported: return PVF_ERR_UNSUPPORTED;
    case ErrorKind::Inconsistent: return PVF_ERR_INCONSISTENT;
  }
  return PVF_ERR_INTERNAL;
}

template <class F>
pvf_status guarded(F&& f) {
  g_last_error.clear();
  try {
    f();
    return PVF_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return status_of(e.kind());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
  } catch (const std::exception& e) {
    g_last_error = e.what();
  } catch (...) {
    g_last_error = "unknown error";
  }
  return PVF_ERR_INTERNAL;
}

char* dup(const std::string& s) {
  char* r = static_cast<char*>(std::malloc(s.size() + 1));
  if (!r) throw std::bad_alloc();
  std::memcpy(r, s.c_str(), s.size() + 1);
  return r;
}

void need(const void* p, const char* what) {
  if (!p) fail(ErrorKind::InvalidArgument, std::string(what) + " must not be null");
}

trace::TraceConfig to_cfg(const pvf_trace_config* c) {
  trace::TraceConfig t;
  if (!c) return t;
  t.start_radius = c->start_radius;
  t.escape_radius = c->escape_radius;
  if (c->landing_radius_factor > 0) t.landing_radius_factor = c->landing_radius_factor;
  if (c->rel_tol > 0) t.rel_tol = c->rel_tol;
  t.max_time = c->max_time;
  if (c->max_steps > 0) t.max_steps = c->max_steps;
  t.threads = c->threads;
  return t;
}

std::vector<cplx> to_vec(const pvf_complex* c, int n) {
  need(c, "coeffs");
  if (n < 3) fail(ErrorKind::InvalidArgument, "need at least 3 coefficients (degree >= 2)");
  std::vector<cplx> v(n);
  for (int i = 0; i < n; ++i) v[i] = {c[i].re, c[i].im};
  return v;
}

// monic centered input is taken verbatim; anything else is normalized
core::Polynomial make_poly(const std::vector<cplx>& c, cplx* A, cplx* B, bool* changed) {
  try {
    core::Polynomial p(c);
    if (A) *A = 1.0;
    if (B) *B = 0.0;
    if (changed) *changed = false;
    return p;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::InvalidArgument) throw;
  }
  auto nz = core::normalize(c);
  if (A) *A = nz.A;
  if (B) *B = nz.B;
  if (changed) *changed = true;
  return nz.p;
}

}  // namespace

extern "C" {

const char* pvf_version(void) { return "1.0.0"; }
const char* pvf_last_error(void) { return g_last_error.c_str(); }

const char* pvf_status_string(pvf_status s) {
  switch (s) {
    case PVF_OK: return "ok";
    case PVF_ERR_ARGUMENT: return "invalid argument";
    case PVF_ERR_INCONCLUSIVE: return "inconclusive";
    case PVF_ERR_INVALID_DATA_SET: return "invalid data set";
    case PVF_ERR_REALIZATION: return "realization failed";
    case PVF_ERR_NUMERIC: return "numerical failure";
    case PVF_ERR_UNSUPPORTED: return "unsupported";
    case PVF_ERR_INCONSISTENT: return "inconsistent";
    case PVF_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void pvf_string_free(char* s) { std::free(s); }

void pvf_trace_config_default(pvf_trace_config* cfg) {
  if (!cfg) return;
  trace::TraceConfig t;
  cfg->start_radius = t.start_radius;
  cfg->escape_radius = t.escape_radius;
  cfg->landing_radius_factor = t.landing_radius_factor;
  cfg->rel_tol = t.rel_tol;
  cfg->max_time = t.max_time;
  cfg->max_steps = t.max_steps;
  cfg->threads = t.threads;
}

void pvf_realize_options_default(pvf_realize_options* opt) {
  if (!opt) return;
  real::Options o;
  opt->max_iter = o.max_iter;
  opt->restarts = o.restarts;
  opt->seed = o.seed;
  opt->tol = o.tol;
  opt->threads = o.threads;
}

pvf_status pvf_poly_create(const pvf_complex* coeffs, int n, pvf_poly** out) {
  return guarded([&] {
    need(out, "out");
    *out = new pvf_poly{core::Polynomial(to_vec(coeffs, n))};
  });
}

pvf_status pvf_poly_normalize(const pvf_complex* coeffs, int n, pvf_poly** out, pvf_complex* A, pvf_complex* B,
                              int* changed) {
  return guarded([&] {
    need(out, "out");
    cplx a, b;
    bool ch;
    auto p = make_poly(to_vec(coeffs, n), &a, &b, &ch);
    *out = new pvf_poly{p};
    if (A) *A = {a.real(), a.imag()};
    if (B) *B = {b.real(), b.imag()};
    if (changed) *changed = ch;
  });
}

pvf_status pvf_poly_parse(const char* literals, pvf_poly** out, int* changed) {
  return guarded([&] {
    need(literals, "literals");
    need(out, "out");
    auto c = io::parse_coeffs(literals);
    if (c.size() < 3) fail(ErrorKind::InvalidArgument, "need at least 3 coefficients (degree >= 2)");
    bool ch;
    *out = new pvf_poly{make_poly(c, nullptr, nullptr, &ch)};
    if (changed) *changed = ch;
  });
}

pvf_status pvf_poly_from_json(const char* json, pvf_poly** out, int* changed) {
  return guarded([&] {
    need(json, "json");
    need(out, "out");
    auto j = io::parse_json(json);
    // a classification file carries its polynomial under "polynomial"
    auto c = io::coeffs_from_json(j.is_object() && j.contains("polynomial") ? j["polynomial"] : j);
    if (c.size() < 3) fail(ErrorKind::InvalidArgument, "need at least 3 coefficients (degree >= 2)");
    bool ch;
    *out = new pvf_poly{make_poly(c, nullptr, nullptr, &ch)};
    if (changed) *changed = ch;
  });
}

int pvf_poly_degree(const pvf_poly* p) { return p ? p->p.degree() : -1; }

pvf_status pvf_poly_coeffs(const pvf_poly* p, pvf_complex* out, int n) {
  return guarded([&] {
    need(p, "poly");
    need(out, "out");
    if (n < p->p.degree() + 1) fail(ErrorKind::InvalidArgument, "output buffer too small");
    for (int i = 0; i <= p->p.degree(); ++i) out[i] = {p->p.coeffs()[i].real(), p->p.coeffs()[i].imag()};
  });
}

pvf_status pvf_poly_to_json(const pvf_poly* p, char** out) {
  return guarded([&] {
    need(p, "poly");
    need(out, "out");
    *out = dup(io::emit(io::polynomial_json(p->p)));
  });
}

void pvf_poly_free(pvf_poly* p) { delete p; }

pvf_status pvf_dataset_from_json(const char* json, pvf_dataset** out) {
  return guarded([&] {
    need(json, "json");
    need(out, "out");
    auto j = io::parse_json(json);
    *out = new pvf_dataset{io::data_set_from_json(j.is_object() && j.contains("data_set") ? j["data_set"] : j)};
  });
}

pvf_status pvf_dataset_to_json(const pvf_dataset* ds, char** out) {
  return guarded([&] {
    need(ds, "data set");
    need(out, "out");
    *out = dup(io::emit(io::data_set_json(ds->ds)));
  });
}

int pvf_dataset_degree(const pvf_dataset* ds) { return ds ? ds->ds.d : -1; }

pvf_status pvf_dataset_validate(const pvf_dataset* ds, char** report, int* valid) {
  return guarded([&] {
    need(ds, "data set");
    auto rep = comb::validate(ds->ds);
    if (report) *report = dup(io::emit(io::validation_json(ds->ds, rep)));
    if (valid) *valid = rep.valid();
  });
}

pvf_status pvf_validate_json(const char* json, char** report, int* valid) {
  return guarded([&] {
    need(json, "json");
    auto j = io::parse_json(json);
    // a classification or problem file carries its data set under "data_set"
    const auto& dj = j.is_object() && j.contains("data_set") ? j["data_set"] : j;
    try {
      auto ds = io::data_set_from_json(dj);
      auto rep = comb::validate(ds);
      if (report) *report = dup(io::emit(io::validation_json(ds, rep)));
      if (valid) *valid = rep.valid();
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::InvalidDataSet) throw;
      io::Json o;
      o["valid"] = false;
      io::Json cond;
      cond["partition"] = false;
      o["conditions"] = cond;
      o["message"] = e.what();
      if (report) *report = dup(io::emit(o));
      if (valid) *valid = 0;
    }
  });
}

void pvf_dataset_free(pvf_dataset* ds) { delete ds; }

pvf_status pvf_enumerate(int d, int structurally_stable_only, pvf_dataset_callback cb, void* user, long* count) {
  return guarded([&] {
    if (d < 2 || d > 6) fail(ErrorKind::InvalidArgument, "enumeration supports 2 <= d <= 6");
    long n = 0;
    for (auto& ds : comb::enumerate_data_sets(d)) {
      if (structurally_stable_only && !comb::structurally_stable(ds)) continue;
      ++n;
      if (cb) cb(comb::canonical_string(ds).c_str(), user);
    }
    if (count) *count = n;
  });
}

pvf_status pvf_classify(const pvf_poly* p, const pvf_trace_config* cfg, pvf_classification** out) {
  return guarded([&] {
    need(p, "poly");
    need(out, "out");
    *out = new pvf_classification{inv::assemble(p->p, to_cfg(cfg))};
  });
}

pvf_status pvf_classification_to_json(const pvf_classification* c, char** out) {
  return guarded([&] {
    need(c, "classification");
    need(out, "out");
    *out = dup(io::emit(io::classification_json(c->c)));
  });
}

int pvf_classification_checks_pass(const pvf_classification* c) { return c && c->c.checks_pass(); }

pvf_status pvf_classification_dataset(const pvf_classification* c, pvf_dataset** out) {
  return guarded([&] {
    need(c, "classification");
    need(out, "out");
    *out = new pvf_dataset{c->c.ds};
  });
}

void pvf_classification_free(pvf_classification* c) { delete c; }

pvf_status pvf_realize_json(const char* problem_json, const pvf_realize_options* opt, const pvf_trace_config* cfg,
                            pvf_poly** out, char** report) {
  return guarded([&] {
    need(problem_json, "problem");
    need(out, "out");
    auto prob = io::problem_from_json(io::parse_json(problem_json));
    real::Options o;
    if (opt) {
      if (opt->max_iter > 0) o.max_iter = opt->max_iter;
      if (opt->restarts > 0) o.restarts = opt->restarts;
      o.seed = opt->seed;
      if (opt->tol > 0) o.tol = opt->tol;
      o.threads = opt->threads;
    }
    o.trace = to_cfg(cfg);
    real::Report rep;
    auto p = real::realize(prob, o, &rep);
    *out = new pvf_poly{p};
    if (report) *report = dup(io::emit(io::realization_json(p, rep)));
  });
}

pvf_status pvf_dataset_render_svg(const pvf_dataset* ds, int size, char** svg) {
  return guarded([&] {
    need(ds, "data set");
    need(svg, "svg");
    if (size <= 0) fail(ErrorKind::InvalidArgument, "canvas size must be positive");
    svg::RenderOptions ro;
    ro.size = size;
    *svg = dup(svg::disk_model(ds->ds, ro));
  });
}

pvf_status pvf_classification_render_svg(const pvf_classification* c, int size, char** svg) {
  return guarded([&] {
    need(c, "classification");
    need(svg, "svg");
    if (size <= 0) fail(ErrorKind::InvalidArgument, "canvas size must be positive");
    svg::RenderOptions ro;
    ro.size = size;
    *svg = dup(svg::phase_portrait(c->c, ro));
  });
}

}  // extern "C"
