#include "polyvf/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace polyvf::io {

namespace {

std::string fmt(double x) {
  if (!std::isfinite(x)) return "null";
  if (x == 0) return "0";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void emit_compact(const Json& j, std::string& out) {
  switch (j.type()) {
    case Json::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        out += Json(it.key()).dump();
        out += ':';
        emit_compact(it.value(), out);
      }
      out += '}';
      break;
    }
    case Json::value_t::array: {
      out += '[';
      for (size_t i = 0; i < j.size(); ++i) {
        if (i) out += ',';
        emit_compact(j[i], out);
      }
      out += ']';
      break;
    }
    case Json::value_t::number_float: out += fmt(j.get<double>()); break;
    default: out += j.dump(-1, ' ', false, nlohmann::detail::error_handler_t::replace);
  }
}

void emit_pretty(const Json& j, std::string& out, int indent) {
  std::string flat;
  emit_compact(j, flat);
  if (!j.is_structured() || flat.size() + indent <= 100) {
    out += flat;
    return;
  }
  const std::string pad(indent + 2, ' ');
  if (j.is_object()) {
    out += "{\n";
    bool first = true;
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (!first) out += ",\n";
      first = false;
      out += pad + Json(it.key()).dump() + ": ";
      emit_pretty(it.value(), out, indent + 2);
    }
    out += "\n" + std::string(indent, ' ') + "}";
  } else {
    out += "[\n";
    for (size_t i = 0; i < j.size(); ++i) {
      if (i) out += ",\n";
      out += pad;
      emit_pretty(j[i], out, indent + 2);
    }
    out += "\n" + std::string(indent, ' ') + "]";
  }
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(ErrorKind::InvalidArgument, std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::vector<int> int_list(const Json& j, const char* what) {
  if (!j.is_array()) fail(ErrorKind::InvalidArgument, std::string(what) + " must be an array of integers");
  std::vector<int> v;
  for (auto& x : j) {
    if (!x.is_number_integer()) fail(ErrorKind::InvalidArgument, std::string(what) + " must be an array of integers");
    v.push_back(x.get<int>());
  }
  return v;
}

Json check_json(const inv::Check& c) {
  Json o;
  o["pass"] = c.pass;
  o["error"] = c.error;
  if (!c.detail.empty()) o["detail"] = c.detail;
  return o;
}

Json cell_json(const comb::Cell& c) {
  Json o;
  o["kind"] = comb::to_string(c.kind);
  o["ends"] = c.ends;
  if (c.kind == comb::CellKind::AlphaOmega) {
    o["k"] = c.k;
    o["j"] = c.j;
  } else if (c.kind != comb::CellKind::Invalid) {
    o["label"] = c.label;
  }
  return o;
}

}  // namespace

std::string emit(const Json& j) {
  std::string out;
  emit_pretty(j, out, 0);
  out += '\n';
  return out;
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    fail(ErrorKind::InvalidArgument, std::string("malformed JSON: ") + e.what());
  }
}

cplx parse_complex(const std::string& s) {
  auto bad = [&]() -> cplx { fail(ErrorKind::InvalidArgument, "malformed complex literal \"" + s + "\""); };
  if (s.empty() || std::isspace(static_cast<unsigned char>(s[0]))) bad();
  const char* p = s.c_str();
  const char* end = p + s.size();
  auto number = [&](const char*& q, double& v) {
    // a lone sign before i means unit magnitude
    if ((*q == '+' || *q == '-') && q[1] == 'i') {
      v = *q == '-' ? -1.0 : 1.0;
      ++q;
      return;
    }
    if (*q == 'i') {
      v = 1.0;
      return;
    }
    char* e = nullptr;
    v = std::strtod(q, &e);
    if (e == q || !std::isfinite(v)) bad();
    for (const char* c = q; c < e; ++c)
      if (std::isalpha(static_cast<unsigned char>(*c)) && *c != 'e' && *c != 'E') bad();
    q = e;
  };
  double a = 0;
  const char* q = p;
  number(q, a);
  if (q == end) return {a, 0.0};
  if (*q == 'i' && q + 1 == end) return {0.0, a};
  if (*q != '+' && *q != '-') bad();
  double b = 0;
  number(q, b);
  if (q + 1 != end || *q != 'i') bad();
  return {a, b};
}

std::string format_complex(cplx z) {
  std::string s = fmt(z.real());
  std::string im = fmt(z.imag());
  if (im[0] != '-') im = "+" + im;
  return s + im + "i";
}

std::vector<cplx> parse_coeffs(const std::string& s) {
  std::vector<cplx> out;
  size_t pos = 0;
  while (true) {
    size_t c = s.find(',', pos);
    std::string item = s.substr(pos, c == std::string::npos ? std::string::npos : c - pos);
    auto b = item.find_first_not_of(" \t"), e = item.find_last_not_of(" \t");
    if (b == std::string::npos) fail(ErrorKind::InvalidArgument, "empty coefficient in list \"" + s + "\"");
    out.push_back(parse_complex(item.substr(b, e - b + 1)));
    if (c == std::string::npos) break;
    pos = c + 1;
  }
  return out;
}

Json complex_json(cplx z) {
  Json o;
  o["re"] = z.real();
  o["im"] = z.imag();
  return o;
}

cplx complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_string()) return parse_complex(j.get<std::string>());
  if (j.is_object() && j.contains("re") && j.contains("im") && j["re"].is_number() && j["im"].is_number())
    return {j["re"].get<double>(), j["im"].get<double>()};
  fail(ErrorKind::InvalidArgument, "complex value must be {\"re\",\"im\"}, a number or a literal string");
}

Json polynomial_json(const core::Polynomial& p) {
  Json o;
  o["degree"] = p.degree();
  Json cs = Json::array();
  for (auto& c : p.coeffs()) cs.push_back(complex_json(c));
  o["coeffs"] = cs;
  return o;
}

std::vector<cplx> coeffs_from_json(const Json& j) {
  const Json& arr = j.is_array() ? j : field(j, "coeffs");
  if (!arr.is_array() || arr.empty()) fail(ErrorKind::InvalidArgument, "coeffs must be a non-empty array");
  std::vector<cplx> c;
  for (auto& x : arr) c.push_back(complex_from_json(x));
  return c;
}

Json data_set_json(const comb::DataSet& ds) {
  Json o;
  o["d"] = ds.d;
  o["classes"] = ds.classes;
  o["H"] = ds.H;
  return o;
}

comb::DataSet data_set_from_json(const Json& j) {
  const Json& dj = field(j, "d");
  if (!dj.is_number_integer()) fail(ErrorKind::InvalidArgument, "d must be an integer");
  const Json& cj = field(j, "classes");
  if (!cj.is_array()) fail(ErrorKind::InvalidArgument, "classes must be an array of arrays");
  std::vector<std::vector<int>> classes;
  for (auto& c : cj) classes.push_back(int_list(c, "each class"));
  std::vector<int> H = j.contains("H") ? int_list(j["H"], "H") : std::vector<int>{};
  const int d = dj.get<int>();
  if (d < 2) fail(ErrorKind::InvalidArgument, "d must be at least 2");
  try {
    return comb::make_data_set(d, classes, H);
  } catch (const Error& e) {
    fail(ErrorKind::InvalidDataSet, std::string("classes do not partition the labels: ") + e.what());
  }
}

Json validation_json(const comb::DataSet& ds, const comb::ValidationReport& rep) {
  Json o;
  o["data_set"] = data_set_json(ds);
  o["valid"] = rep.valid();
  Json cond;
  cond["partition"] = rep.partition;
  cond["non_crossing"] = rep.non_crossing;
  cond["homoclinic_classes"] = rep.homoclinic_classes;
  cond["cell_types"] = rep.cell_types;
  o["conditions"] = cond;
  o["message"] = rep.message;
  if (rep.non_crossing && rep.homoclinic_classes) o["decomposition_properties"] = rep.decomposition;
  if (rep.valid()) {
    auto e = comb::euler_data(ds);
    o["euler_characteristic"] = e.chi();
    Json counts;
    counts["s"] = e.s;
    counts["h"] = e.h;
    counts["c"] = e.c;
    counts["p"] = e.p;
    o["counts"] = counts;
    auto cr = comb::counting_identities(ds);
    Json ci;
    ci["component_counts"] = cr.component_counts;
    ci["alpha_omega_split"] = cr.alpha_omega_split;
    ci["qsh"] = cr.qsh;
    ci["euler"] = cr.euler;
    o["counting_identities"] = ci;
    o["structurally_stable"] = comb::structurally_stable(ds);
    Json cells = Json::array();
    for (auto& c : comb::cells(ds)) cells.push_back(cell_json(c));
    o["cells"] = cells;
  } else if (rep.offending) {
    o["offending_cell"] = cell_json(*rep.offending);
  }
  return o;
}

Json classification_json(const inv::Classification& c) {
  Json o;
  o["polynomial"] = polynomial_json(c.poly);
  o["data_set"] = data_set_json(c.ds);
  Json al = Json::array();
  for (auto& a : c.alphas) al.push_back(complex_json(a));
  o["alphas"] = al;
  o["taus"] = c.taus;
  Json hom = Json::array();
  for (auto& [k, j] : c.homoclinics) hom.push_back(Json::array({k, j}));
  o["homoclinics"] = hom;
  Json res = Json::array();
  for (auto& e : c.eqs) {
    Json r;
    r["zeta"] = complex_json(e.zeta);
    r["multiplicity"] = e.m;
    r["kind"] = core::to_string(e.kind);
    if (e.m == 1) r["derivative"] = complex_json(e.dP);
    r["residue"] = complex_json(e.rho);
    res.push_back(r);
  }
  o["residues"] = res;
  Json zs = Json::array();
  for (auto& z : c.zones) {
    Json zj;
    zj["kind"] = comb::to_string(z.kind);
    if (z.kind == comb::CellKind::AlphaOmega) {
      zj["k"] = z.k;
      zj["j"] = z.j;
    } else {
      zj["label"] = z.label;
    }
    zj["ends"] = z.ends;
    if (z.kind == comb::CellKind::AlphaOmega) {
      zj["alpha_point"] = z.alpha_eq;
      zj["omega_point"] = z.omega_eq;
    } else {
      zj["point"] = z.eq;
    }
    zs.push_back(zj);
  }
  o["zones"] = zs;
  Json ch;
  for (auto& k : c.checks) ch[k.name] = check_json(k);
  ch["all_pass"] = c.checks_pass();
  o["checks"] = ch;
  return o;
}

real::Problem problem_from_json(const Json& j) {
  real::Problem p;
  p.ds = data_set_from_json(field(j, "data_set"));
  const Json& al = field(j, "alphas");
  if (!al.is_array()) fail(ErrorKind::InvalidArgument, "alphas must be an array");
  for (auto& a : al) p.alphas.push_back(complex_from_json(a));
  if (j.contains("taus")) {
    if (!j["taus"].is_array()) fail(ErrorKind::InvalidArgument, "taus must be an array");
    for (auto& t : j["taus"]) {
      if (!t.is_number()) fail(ErrorKind::InvalidArgument, "taus must be numbers");
      p.taus.push_back(t.get<double>());
    }
  }
  return p;
}

Json problem_json(const real::Problem& p) {
  Json o;
  o["data_set"] = data_set_json(p.ds);
  Json al = Json::array();
  for (auto& a : p.alphas) al.push_back(complex_json(a));
  o["alphas"] = al;
  o["taus"] = p.taus;
  return o;
}

Json realization_json(const core::Polynomial& p, const real::Report& rep) {
  Json o = polynomial_json(p);
  Json s;
  s["method"] = rep.method;
  if (rep.restart >= 0) s["restart"] = rep.restart;
  s["residual"] = rep.residual;
  o["solver"] = s;
  return o;
}

}  // namespace polyvf::io
