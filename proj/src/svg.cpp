#include "polyvf/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace polyvf::svg {

using comb::CellKind;

namespace {

std::string num(double x) {
  char b[32];
  std::snprintf(b, sizeof b, "%.2f", x);
  return b;
}

struct Canvas {
  double cx, cy, scale;
  std::string x(cplx z) const { return num(cx + scale * z.real()); }
  std::string y(cplx z) const { return num(cy - scale * z.imag()); }
  std::string pt(cplx z) const { return x(z) + "," + y(z); }
};

std::string header(int size) {
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << size << "\" height=\"" << size
     << "\" viewBox=\"0 0 " << size << " " << size << "\">\n"
     << "<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"5\" refY=\"5\" markerWidth=\"6\" markerHeight=\"6\" "
        "orient=\"auto\"><path d=\"M0,0 L10,5 L0,10 z\" fill=\"#333\"/></marker></defs>\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  return os.str();
}

// hyperbolic geodesic between boundary points at angles a and b, sampled
std::vector<cplx> geodesic(double a, double b) {
  cplx p = std::polar(1.0, a), q = std::polar(1.0, b);
  double span = std::abs(std::remainder(b - a, 2 * kPi));
  std::vector<cplx> pts;
  if (span > kPi - 1e-6 || span < 1e-9) {
    pts = {p, q};
    return pts;
  }
  cplx mid = (p + q) / std::abs(p + q);
  cplx c = mid / std::cos(span / 2);
  double r = std::tan(span / 2);
  double t0 = std::arg(p - c), t1 = std::arg(q - c);
  double dt = std::remainder(t1 - t0, 2 * kPi);
  for (int i = 0; i <= 32; ++i) pts.push_back(c + std::polar(r, t0 + dt * i / 32));
  return pts;
}

const char* class_color(size_t i) {
  static const char* pal[] = {"#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#76b7b2", "#edc948", "#b07aa1", "#9c755f"};
  return pal[i % 8];
}

const char* eq_color(core::EqKind k) {
  switch (k) {
    case core::EqKind::Source: return "#d62728";
    case core::EqKind::Sink: return "#1f77b4";
    case core::EqKind::Center: return "#2ca02c";
    case core::EqKind::Multiple: return "#9467bd";
  }
  return "black";
}

}  // namespace

std::string disk_model(const comb::DataSet& ds, const RenderOptions& opt) {
  const int d = ds.d, n = ds.n();
  const double S = opt.size;
  Canvas cv{S / 2, S / 2, 0.42 * S};
  auto ang = [&](double l) { return kPi * l / (d - 1); };
  std::ostringstream os;
  os << header(opt.size);
  os << "<circle cx=\"" << num(cv.cx) << "\" cy=\"" << num(cv.cy) << "\" r=\"" << num(cv.scale)
     << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"/>\n";

  // class hulls
  for (size_t ci = 0; ci < ds.classes.size(); ++ci) {
    const auto& cl = ds.classes[ci];
    const bool hom = comb::class_in_h(ds, static_cast<int>(ci));
    std::string color = hom ? "#888888" : class_color(ci);
    os << "<g class=\"hull\" data-class=\"" << ci << "\"" << (hom ? " data-homoclinic=\"1\"" : "") << ">";
    if (cl.size() == 1) {
      cplx p = std::polar(1.0, ang(cl[0]));
      os << "<circle cx=\"" << cv.x(p) << "\" cy=\"" << cv.y(p) << "\" r=\"5\" fill=\"" << color << "\"/>";
    } else {
      std::string path;
      for (size_t i = 0; i < cl.size(); ++i) {
        if (cl.size() == 2 && i == 1) break;
        auto g = geodesic(ang(cl[i]), ang(cl[(i + 1) % cl.size()]));
        for (size_t k = 0; k < g.size(); ++k) path += (path.empty() ? "M" : "L") + cv.pt(g[k]) + " ";
      }
      if (cl.size() > 2) path += "Z";
      os << "<path d=\"" << path << "\" fill=\"" << (cl.size() > 2 ? color : "none") << "\" fill-opacity=\"0.25\" stroke=\""
         << color << "\" stroke-width=\"" << (hom ? 2.5 : 2) << "\"/>";
    }
    os << "</g>\n";
  }

  auto cells = comb::cells(ds);
  if (opt.transversals) {
    auto ess = comb::essential_transversals(ds);
    auto is_ess = [&](int k, int j) { return std::find(ess.begin(), ess.end(), std::make_pair(k, j)) != ess.end(); };
    for (auto& c : cells) {
      if (c.kind != CellKind::AlphaOmega) continue;
      auto g = geodesic(ang(c.k - 0.5), ang(c.j - 0.5));
      std::string path;
      for (size_t k = 0; k < g.size(); ++k) path += (k ? "L" : "M") + cv.pt(g[k]) + " ";
      os << "<path class=\"transversal\" d=\"" << path << "\" fill=\"none\" stroke=\""
         << (is_ess(c.k, c.j) ? "#999999" : "#333333") << "\" stroke-dasharray=\"6,4\" stroke-width=\"1.2\"/>\n";
    }
  }

  // division points and end labels
  for (int l = 0; l < n; ++l) {
    cplx p = std::polar(1.0, ang(l));
    os << "<circle cx=\"" << cv.x(p) << "\" cy=\"" << cv.y(p) << "\" r=\"3\" fill=\"black\"/>";
    if (opt.labels) {
      cplx q = std::polar(1.1, ang(l));
      os << "<text x=\"" << cv.x(q) << "\" y=\"" << cv.y(q)
         << "\" font-size=\"13\" text-anchor=\"middle\" dominant-baseline=\"middle\">" << l << "</text>";
      cplx e = std::polar(1.06, ang(l - 0.5));
      os << "<text x=\"" << cv.x(e) << "\" y=\"" << cv.y(e)
         << "\" font-size=\"9\" fill=\"#777\" text-anchor=\"middle\" dominant-baseline=\"middle\">e" << l << "</text>";
    }
    os << "\n";
  }

  // one marker per cell at the mean of its end midpoints, pulled inward
  for (auto& c : cells) {
    cplx m = 0;
    for (int e : c.ends) m += std::polar(1.0, ang(e - 0.5));
    m /= static_cast<double>(c.ends.size());
    if (std::abs(m) > 0.85) m *= 0.85 / std::abs(m);
    std::string tag;
    switch (c.kind) {
      case CellKind::AlphaOmega: tag = "aw " + std::to_string(c.k) + "," + std::to_string(c.j); break;
      case CellKind::OddSepal:
      case CellKind::EvenSepal: tag = "s " + std::to_string(c.label); break;
      case CellKind::OddCenter:
      case CellKind::EvenCenter: tag = "c " + std::to_string(c.label); break;
      default: tag = "?";
    }
    os << "<text class=\"cell\" data-kind=\"" << comb::to_string(c.kind) << "\" x=\"" << cv.x(m) << "\" y=\"" << cv.y(m)
       << "\" font-size=\"11\" fill=\"" << (c.kind == CellKind::Invalid ? "red" : "#222")
       << "\" text-anchor=\"middle\" dominant-baseline=\"middle\">" << tag << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string phase_portrait(const inv::Classification& c, const RenderOptions& opt) {
  const double S = opt.size;
  double rmax = 0;
  for (auto& e : c.eqs) rmax = std::max(rmax, std::abs(e.zeta));
  const double W = 1.6 * std::max(rmax, 0.5);
  Canvas cv{S / 2, S / 2, 0.5 * S / W};
  std::ostringstream os;
  os << header(opt.size);
  os << "<clipPath id=\"view\"><rect width=\"" << opt.size << "\" height=\"" << opt.size << "\"/></clipPath>\n";
  os << "<g clip-path=\"url(#view)\">\n";
  os << "<line x1=\"0\" y1=\"" << num(cv.cy) << "\" x2=\"" << opt.size << "\" y2=\"" << num(cv.cy)
     << "\" stroke=\"#eee\"/><line x1=\"" << num(cv.cx) << "\" y1=\"0\" x2=\"" << num(cv.cx) << "\" y2=\""
     << opt.size << "\" stroke=\"#eee\"/>\n";

  auto visible_path = [&](const std::vector<cplx>& pts) {
    std::string path;
    cplx last = 1e300;
    bool pen = false;
    for (size_t i = 0; i < pts.size(); ++i) {
      bool near = std::abs(pts[i]) < 3 * W;
      bool keep = near || (i + 1 < pts.size() && std::abs(pts[i + 1]) < 3 * W) || (i > 0 && std::abs(pts[i - 1]) < 3 * W);
      if (!keep) {
        pen = false;
        continue;
      }
      if (pen && std::abs(pts[i] - last) * cv.scale < 0.7 && i + 1 < pts.size()) continue;
      path += (pen ? "L" : "M") + cv.pt(pts[i]) + " ";
      pen = true;
      last = pts[i];
    }
    return path;
  };

  // center zones: closed chains of homoclinic traces
  for (size_t ci = 0; ci < c.cells.size(); ++ci) {
    const auto& cell = c.cells[ci];
    if (cell.kind != CellKind::OddCenter && cell.kind != CellKind::EvenCenter) continue;
    std::vector<cplx> poly;
    int x = *std::min_element(cell.ends.begin(), cell.ends.end());
    for (size_t m = 0; m < cell.ends.size(); ++m) {
      for (auto& s : c.traces[x].samples) poly.push_back(s.z);
      x = c.ds.mod(c.ds.sig[x] + 1);
    }
    std::string path = visible_path(poly);
    if (!path.empty())
      os << "<path class=\"zone\" d=\"" << path << "Z\" fill=\"#2ca02c\" fill-opacity=\"0.08\" stroke=\"none\"/>\n";
  }

  for (auto& tr : c.traces) {
    std::vector<cplx> pts;
    for (auto& s : tr.samples) pts.push_back(s.z);
    const char* color = tr.fate == trace::Fate::Homoclinic ? "#d62728" : "#1f77b4";
    os << "<path class=\"separatrix\" data-label=\"" << tr.label << "\" data-fate=\"" << trace::to_string(tr.fate)
       << "\" d=\"" << visible_path(pts) << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\"/>\n";
    // orientation arrow at the first visible sample inside the view
    for (size_t i = 1; i + 1 < pts.size(); ++i) {
      if (std::abs(pts[i]) < 0.9 * W && std::abs(pts[i - 1]) >= 0.9 * W) {
        cplx a = pts[i], b = tr.label % 2 ? pts[i + 1] : pts[i - 1];
        os << "<line x1=\"" << cv.x(a) << "\" y1=\"" << cv.y(a) << "\" x2=\"" << cv.x(b) << "\" y2=\"" << cv.y(b)
           << "\" stroke=\"" << color << "\" marker-end=\"url(#arrow)\"/>\n";
        break;
      }
    }
    if (opt.labels && !pts.empty()) {
      cplx q = std::polar(0.92 * W, kPi * tr.label / (c.poly.degree() - 1));
      os << "<text x=\"" << cv.x(q) << "\" y=\"" << cv.y(q) << "\" font-size=\"12\" fill=\"" << color
         << "\" text-anchor=\"middle\">s" << tr.label << "</text>\n";
    }
  }
  for (auto& e : c.eqs) {
    os << "<circle class=\"equilibrium\" data-kind=\"" << core::to_string(e.kind) << "\" cx=\"" << cv.x(e.zeta)
       << "\" cy=\"" << cv.y(e.zeta) << "\" r=\"5\" fill=\"" << eq_color(e.kind) << "\" stroke=\"black\"/>\n";
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

}  // namespace polyvf::svg
