#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "polyvf/pvf.h"

namespace {

struct CStr {
  char* s = nullptr;
  ~CStr() { pvf_string_free(s); }
};

struct Flags {
  std::string coeffs, in, out, svg, mode;
  int d = 0;
  double tol = 0, start_radius = 0, escape_radius = 0;
  unsigned long long seed = 1;
  int max_iter = 0;
};

int exit_code(pvf_status s) {
  switch (s) {
    case PVF_OK: return 0;
    case PVF_ERR_INCONCLUSIVE:
    case PVF_ERR_NUMERIC:
    case PVF_ERR_INCONSISTENT: return 2;
    case PVF_ERR_INVALID_DATA_SET: return 3;
    case PVF_ERR_REALIZATION:
    case PVF_ERR_UNSUPPORTED: return 4;
    default: return 1;
  }
}

int report(pvf_status s) {
  std::cerr << "polyvf: " << pvf_status_string(s) << ": " << pvf_last_error() << "\n";
  return exit_code(s);
}

bool read_file(const std::string& path, std::string& text) {
  std::ifstream f(path, std::ios::binary);
  if (!f) {
    std::cerr << "polyvf: cannot read " << path << "\n";
    return false;
  }
  std::ostringstream os;
  os << f.rdbuf();
  text = os.str();
  return true;
}

bool write_out(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return true;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << text)) {
    std::cerr << "polyvf: cannot write " << path << "\n";
    return false;
  }
  return true;
}

pvf_trace_config trace_cfg(const Flags& fl) {
  pvf_trace_config c;
  pvf_trace_config_default(&c);
  c.start_radius = fl.start_radius;
  c.escape_radius = fl.escape_radius;
  if (fl.tol > 0) c.rel_tol = fl.tol;
  return c;
}

// polynomial from --coeffs or --in; returns an exit code, 0 on success
int load_poly(const Flags& fl, pvf_poly** p) {
  int changed = 0;
  pvf_status s;
  if (!fl.coeffs.empty() == !fl.in.empty()) {
    std::cerr << "polyvf: give exactly one of --coeffs or --in\n";
    return 1;
  }
  if (!fl.coeffs.empty()) {
    s = pvf_poly_parse(fl.coeffs.c_str(), p, &changed);
  } else {
    std::string text;
    if (!read_file(fl.in, text)) return 1;
    s = pvf_poly_from_json(text.c_str(), p, &changed);
  }
  if (s != PVF_OK) return report(s);
  if (changed) std::cerr << "polyvf: input normalized to monic centered form\n";
  return 0;
}

int cmd_classify(const Flags& fl) {
  pvf_poly* p = nullptr;
  if (int rc = load_poly(fl, &p)) return rc;
  pvf_trace_config cfg = trace_cfg(fl);
  pvf_classification* c = nullptr;
  pvf_status s = pvf_classify(p, &cfg, &c);
  pvf_poly_free(p);
  if (s != PVF_OK) return report(s);
  CStr json;
  s = pvf_classification_to_json(c, &json.s);
  if (s == PVF_OK && !fl.svg.empty()) {
    CStr svg;
    s = pvf_classification_render_svg(c, 600, &svg.s);
    if (s == PVF_OK && !write_out(fl.svg, svg.s)) s = PVF_ERR_ARGUMENT;
  }
  if (!pvf_classification_checks_pass(c)) std::cerr << "polyvf: warning: some cross-checks failed (see \"checks\")\n";
  pvf_classification_free(c);
  if (s != PVF_OK) return report(s);
  return write_out(fl.out, json.s) ? 0 : 1;
}

int cmd_validate(const Flags& fl) {
  std::string text;
  if (fl.in.empty()) {
    std::cerr << "polyvf: validate needs --in\n";
    return 1;
  }
  if (!read_file(fl.in, text)) return 1;
  CStr rep;
  int valid = 0;
  pvf_status s = pvf_validate_json(text.c_str(), &rep.s, &valid);
  if (s != PVF_OK) return report(s);
  if (!write_out(fl.out, rep.s)) return 1;
  return valid ? 0 : 3;
}

void print_line(const char* canonical, void* user) {
  auto* os = static_cast<std::ostream*>(user);
  *os << canonical << "\n";
}

int cmd_enumerate(const Flags& fl) {
  bool stable = false;
  if (fl.mode == "structurally-stable") stable = true;
  else if (!fl.mode.empty() && fl.mode != "all") {
    std::cerr << "polyvf: enumerate --mode must be all or structurally-stable\n";
    return 1;
  }
  std::ofstream file;
  std::ostream* os = &std::cout;
  if (!fl.out.empty() && fl.out != "-") {
    file.open(fl.out, std::ios::binary);
    if (!file) {
      std::cerr << "polyvf: cannot write " << fl.out << "\n";
      return 1;
    }
    os = &file;
  }
  long count = 0;
  pvf_status s = pvf_enumerate(fl.d, stable, print_line, os, &count);
  if (s != PVF_OK) return report(s);
  *os << "count: " << count << "\n";
  return 0;
}

int cmd_realize(const Flags& fl) {
  std::string text;
  if (fl.in.empty()) {
    std::cerr << "polyvf: realize needs --in\n";
    return 1;
  }
  if (!read_file(fl.in, text)) return 1;
  pvf_realize_options opt;
  pvf_realize_options_default(&opt);
  opt.seed = fl.seed;
  if (fl.max_iter > 0) opt.max_iter = fl.max_iter;
  if (fl.tol > 0) opt.tol = fl.tol;
  pvf_trace_config cfg = trace_cfg(Flags{});
  cfg.start_radius = fl.start_radius;
  cfg.escape_radius = fl.escape_radius;
  pvf_poly* p = nullptr;
  CStr rep;
  pvf_status s = pvf_realize_json(text.c_str(), &opt, &cfg, &p, &rep.s);
  if (s != PVF_OK) return report(s);
  pvf_poly_free(p);
  return write_out(fl.out, rep.s) ? 0 : 1;
}

int cmd_render(const Flags& fl) {
  const std::string mode = fl.mode.empty() ? "phase-portrait" : fl.mode;
  const std::string dest = !fl.svg.empty() ? fl.svg : fl.out;
  CStr svg;
  pvf_status s;
  if (mode == "disk-model") {
    std::string text;
    if (fl.in.empty()) {
      std::cerr << "polyvf: render --mode disk-model needs --in\n";
      return 1;
    }
    if (!read_file(fl.in, text)) return 1;
    pvf_dataset* ds = nullptr;
    s = pvf_dataset_from_json(text.c_str(), &ds);
    if (s != PVF_OK) return report(s);
    s = pvf_dataset_render_svg(ds, 600, &svg.s);
    pvf_dataset_free(ds);
  } else if (mode == "phase-portrait") {
    pvf_poly* p = nullptr;
    if (int rc = load_poly(fl, &p)) return rc;
    pvf_trace_config cfg = trace_cfg(fl);
    pvf_classification* c = nullptr;
    s = pvf_classify(p, &cfg, &c);
    pvf_poly_free(p);
    if (s != PVF_OK) return report(s);
    s = pvf_classification_render_svg(c, 600, &svg.s);
    pvf_classification_free(c);
  } else {
    std::cerr << "polyvf: render --mode must be disk-model or phase-portrait\n";
    return 1;
  }
  if (s != PVF_OK) return report(s);
  return write_out(dest, svg.s) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Classification and realization of polynomial vector fields dz/dt = P(z)"};
  app.set_version_flag("--version", std::string(pvf_version()));
  app.require_subcommand(1);
  Flags fl;

  auto* classify = app.add_subcommand("classify", "Classify a polynomial; writes classification JSON");
  classify->add_option("--coeffs", fl.coeffs, "Comma-separated complex coefficients, ascending powers (e.g. \"-1,0,1\")");
  classify->add_option("--in", fl.in, "Polynomial JSON file");
  classify->add_option("--out", fl.out, "Output JSON path (default stdout)");
  classify->add_option("--svg", fl.svg, "Also write a phase portrait SVG");
  classify->add_option("--tol", fl.tol, "Relative integration tolerance");
  classify->add_option("--start-radius", fl.start_radius, "Radius where separatrices are started");
  classify->add_option("--escape-radius", fl.escape_radius, "Radius where escaping traces are decided");

  auto* validate = app.add_subcommand("validate", "Validate a combinatorial data set JSON");
  validate->add_option("--in", fl.in, "Data set JSON file")->required();
  validate->add_option("--out", fl.out, "Output report path (default stdout)");

  auto* enumerate = app.add_subcommand("enumerate", "List all valid data sets of a degree");
  enumerate->add_option("--d", fl.d, "Degree, 2 to 6")->required();
  enumerate->add_option("--mode", fl.mode, "all (default) or structurally-stable");
  enumerate->add_option("--out", fl.out, "Output path (default stdout)");

  auto* realize = app.add_subcommand("realize", "Find the polynomial realizing a data set and invariant");
  realize->add_option("--in", fl.in, "Problem JSON file (data_set, alphas, taus)")->required();
  realize->add_option("--out", fl.out, "Output polynomial JSON path (default stdout)");
  realize->add_option("--seed", fl.seed, "Seed for restart perturbations");
  realize->add_option("--max-iter", fl.max_iter, "Newton iterations per continuation step");
  realize->add_option("--tol", fl.tol, "Required relative residual in the invariant");
  realize->add_option("--start-radius", fl.start_radius, "Tracer start radius for class checks");
  realize->add_option("--escape-radius", fl.escape_radius, "Tracer escape radius for class checks");

  auto* render = app.add_subcommand("render", "Render SVG");
  render->add_option("--mode", fl.mode, "disk-model or phase-portrait (default)");
  render->add_option("--in", fl.in, "Data set JSON (disk-model) or polynomial JSON (phase-portrait)");
  render->add_option("--coeffs", fl.coeffs, "Coefficients for phase-portrait");
  render->add_option("--out,--svg", fl.svg, "Output SVG path (default stdout)");
  render->add_option("--tol", fl.tol, "Relative integration tolerance");
  render->add_option("--start-radius", fl.start_radius, "Tracer start radius");
  render->add_option("--escape-radius", fl.escape_radius, "Tracer escape radius");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  if (*classify) return cmd_classify(fl);
  if (*validate) return cmd_validate(fl);
  if (*enumerate) return cmd_enumerate(fl);
  if (*realize) return cmd_realize(fl);
  if (*render) return cmd_render(fl);
  return 1;
}
