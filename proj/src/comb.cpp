#include "polyvf/comb.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace polyvf::comb {

DataSet make_data_set(int d, std::vector<std::vector<int>> classes, std::vector<int> H) {
  if (d < 2) fail(ErrorKind::InvalidArgument, "data set degree must be at least 2");
  DataSet ds;
  ds.d = d;
  const int n = 2 * d - 2;
  ds.class_of.assign(n, -1);
  for (auto& c : classes) {
    if (c.empty()) fail(ErrorKind::InvalidArgument, "empty class");
    std::sort(c.begin(), c.end());
  }
  std::sort(classes.begin(), classes.end(), [](auto& a, auto& b) { return a.front() < b.front(); });
  for (size_t ci = 0; ci < classes.size(); ++ci)
    for (int l : classes[ci]) {
      if (l < 0 || l >= n) fail(ErrorKind::InvalidArgument, "label " + std::to_string(l) + " out of range");
      if (ds.class_of[l] != -1) fail(ErrorKind::InvalidArgument, "label " + std::to_string(l) + " repeated");
      ds.class_of[l] = static_cast<int>(ci);
    }
  for (int l = 0; l < n; ++l)
    if (ds.class_of[l] == -1) fail(ErrorKind::InvalidArgument, "label " + std::to_string(l) + " missing");
  std::sort(H.begin(), H.end());
  if (std::adjacent_find(H.begin(), H.end()) != H.end()) fail(ErrorKind::InvalidArgument, "repeated label in H");
  ds.in_h.assign(n, 0);
  for (int l : H) {
    if (l < 0 || l >= n) fail(ErrorKind::InvalidArgument, "H label out of range");
    ds.in_h[l] = 1;
  }
  ds.classes = std::move(classes);
  ds.H = std::move(H);
  ds.sig.assign(n, 0);
  ds.sig_inv.assign(n, 0);
  for (auto& c : ds.classes)
    for (size_t i = 0; i < c.size(); ++i) {
      int nx = c[(i + 1) % c.size()];
      ds.sig[c[i]] = nx;
      ds.sig_inv[nx] = c[i];
    }
  return ds;
}

int shift(const DataSet& ds, int l) { return ds.sig[ds.mod(l)]; }

bool class_in_h(const DataSet& ds, int ci) {
  for (int l : ds.classes[ci])
    if (!ds.in_h[l]) return false;
  return true;
}

int parity_changes(const DataSet& ds, int ci) {
  if (class_in_h(ds, ci)) fail(ErrorKind::InvalidArgument, "parity changes requested for a homoclinic class");
  const auto& c = ds.classes[ci];
  if (c.size() < 2) return 0;
  int p = 0;
  for (int l : c)
    if (ds.mod(ds.sig[l] - l) % 2 == 1) ++p;
  return p;
}

bool is_non_crossing(const DataSet& ds) {
  const int n = ds.n();
  // every other class lies in one open arc between consecutive members of a class
  for (size_t a = 0; a < ds.classes.size(); ++a) {
    const auto& ca = ds.classes[a];
    if (ca.size() < 2) continue;
    for (size_t b = 0; b < ds.classes.size(); ++b) {
      if (a == b) continue;
      // arc index of each member of b: which gap of ca contains it
      int arc = -1;
      for (int y : ds.classes[b]) {
        // find gap: first member of ca greater than y (cyclically)
        auto it = std::upper_bound(ca.begin(), ca.end(), y);
        int g = (it == ca.end()) ? 0 : static_cast<int>(it - ca.begin());
        if (arc == -1) arc = g;
        else if (arc != g) return false;
      }
    }
  }
  (void)n;
  return true;
}

bool condition2(const DataSet& ds) {
  for (size_t ci = 0; ci < ds.classes.size(); ++ci) {
    const auto& c = ds.classes[ci];
    bool any = false, all = true;
    for (int l : c) {
      if (ds.in_h[l]) any = true;
      else all = false;
    }
    if (!any) continue;
    if (!all || c.size() != 2 || (c[0] - c[1]) % 2 == 0) return false;
  }
  return true;
}

bool structurally_stable(const DataSet& ds) {
  if (!ds.H.empty()) return false;
  for (auto& c : ds.classes)
    for (int l : c)
      if ((l - c[0]) % 2 != 0) return false;
  return true;
}

std::vector<int> h_chain_from(const DataSet& ds, int l) {
  std::vector<int> out;
  l = ds.mod(l);
  while (ds.in_h[l]) {
    if (!out.empty() && l == out.front()) break;
    out.push_back(l);
    l = ds.mod(ds.sig[l] + 1);
  }
  return out;
}

std::vector<Chain> extract_h_chains(const DataSet& ds) {
  const int n = ds.n();
  std::vector<Chain> out;
  for (int par : {1, 0}) {
    std::vector<int> hs;
    for (int l : ds.H)
      if (l % 2 == par) hs.push_back(l);
    std::vector<char> has_prev(n, 0), seen(n, 0);
    for (int x : hs) {
      int y = ds.mod(ds.sig[x] + 1);
      if (ds.in_h[y]) has_prev[y] = 1;
    }
    for (int x : hs) {
      if (seen[x] || has_prev[x]) continue;
      Chain c;
      c.ccw = par == 1;
      c.closed = false;
      for (int y = x; ds.in_h[y]; y = ds.mod(ds.sig[y] + 1)) {
        c.h.push_back(y);
        seen[y] = 1;
      }
      out.push_back(c);
    }
    for (int x : hs) {
      if (seen[x]) continue;
      Chain c;
      c.ccw = par == 1;
      c.closed = true;
      int y = x;
      do {
        c.h.push_back(y);
        seen[y] = 1;
        y = ds.mod(ds.sig[y] + 1);
      } while (y != x);
      out.push_back(c);
    }
  }
  return out;
}

std::vector<std::pair<int, int>> source_transversals(const DataSet& ds) {
  std::vector<std::pair<int, int>> T;
  const int n = ds.n();
  for (int k = 1; k < n; k += 2) {
    int s = ds.sig[ds.mod(k - 1)];
    if (ds.mod(s - (k - 1)) % 2 == 0) T.push_back({k, s});
  }
  std::sort(T.begin(), T.end());
  return T;
}

std::vector<std::pair<int, int>> sink_transversals(const DataSet& ds) {
  std::vector<std::pair<int, int>> T;
  const int n = ds.n();
  for (int j = 0; j < n; j += 2) {
    int s = ds.sig[ds.mod(j - 1)];
    if (ds.mod(s - (j - 1)) % 2 == 0) T.push_back({s, j});
  }
  std::sort(T.begin(), T.end());
  return T;
}

std::vector<std::pair<int, int>> essential_transversals(const DataSet& ds) {
  auto a = source_transversals(ds);
  auto b = sink_transversals(ds);
  std::set<std::pair<int, int>> s(a.begin(), a.end());
  s.insert(b.begin(), b.end());
  return {s.begin(), s.end()};
}

std::vector<Chain> extract_t_chains(const DataSet& ds) {
  std::vector<Chain> out;
  for (bool ccw : {true, false}) {
    auto T = ccw ? source_transversals(ds) : sink_transversals(ds);
    // successor: ccw k' = j + 1, cw j' = k + 1
    std::map<int, size_t> by_key;
    for (size_t i = 0; i < T.size(); ++i) by_key[ccw ? T[i].first : T[i].second] = i;
    auto next = [&](size_t i) -> long {
      int key = ds.mod((ccw ? T[i].second : T[i].first) + 1);
      auto it = by_key.find(key);
      return it == by_key.end() ? -1 : static_cast<long>(it->second);
    };
    std::vector<char> has_prev(T.size(), 0), seen(T.size(), 0);
    for (size_t i = 0; i < T.size(); ++i) {
      long nx = next(i);
      if (nx >= 0) has_prev[nx] = 1;
    }
    for (size_t i = 0; i < T.size(); ++i) {
      if (seen[i] || has_prev[i]) continue;
      Chain c;
      c.ccw = ccw;
      for (long x = static_cast<long>(i); x >= 0; x = next(x)) {
        c.t.push_back(T[x]);
        seen[x] = 1;
      }
      out.push_back(c);
    }
    for (size_t i = 0; i < T.size(); ++i) {
      if (seen[i]) continue;
      Chain c;
      c.ccw = ccw;
      c.closed = true;
      long x = static_cast<long>(i);
      do {
        c.t.push_back(T[x]);
        seen[x] = 1;
        x = next(x);
      } while (x != static_cast<long>(i));
      out.push_back(c);
    }
  }
  return out;
}

const char* to_string(CellKind k) {
  switch (k) {
    case CellKind::AlphaOmega: return "alpha-omega";
    case CellKind::OddSepal: return "odd-sepal";
    case CellKind::EvenSepal: return "even-sepal";
    case CellKind::OddCenter: return "odd-center";
    case CellKind::EvenCenter: return "even-center";
    case CellKind::Invalid: return "invalid";
  }
  return "?";
}

std::vector<Cell> cells(const DataSet& ds) {
  const int n = ds.n();
  std::vector<char> seen(n, 0);
  std::vector<Cell> out;
  for (int e = 0; e < n; ++e) {
    if (seen[e]) continue;
    Cell c;
    for (int x = e; !seen[x]; x = ds.mod(ds.sig_inv[x] + 1)) {
      seen[x] = 1;
      c.ends.push_back(x);
    }
    std::vector<int> larr;
    for (int x : c.ends)
      if (!ds.in_h[x]) larr.push_back(x);
    if (larr.empty()) {
      bool odd = c.ends[0] % 2 == 1;
      c.kind = odd ? CellKind::OddCenter : CellKind::EvenCenter;
      c.label = *std::min_element(c.ends.begin(), c.ends.end());
      for (int x : c.ends)
        if (x % 2 != c.ends[0] % 2) c.kind = CellKind::Invalid;
    } else if (larr.size() == 1) {
      int x = larr[0];
      c.kind = x % 2 ? CellKind::OddSepal : CellKind::EvenSepal;
      c.label = x;
    } else if (larr.size() == 2) {
      bool flips = true;
      for (int x : larr)
        if (ds.mod(ds.sig_inv[x] - x) % 2 != 0) flips = false;
      if (flips && (larr[0] + larr[1]) % 2 == 1) {
        c.kind = CellKind::AlphaOmega;
        c.k = larr[0] % 2 ? larr[0] : larr[1];
        c.j = larr[0] % 2 ? larr[1] : larr[0];
      }
    }
    out.push_back(std::move(c));
  }
  return out;
}

bool condition3(const DataSet& ds) {
  for (auto& c : cells(ds))
    if (c.kind == CellKind::Invalid) return false;
  return true;
}

std::vector<Cell> decompose_cells(const DataSet& ds) {
  auto cs = cells(ds);
  for (auto& c : cs)
    if (c.kind == CellKind::Invalid) {
      std::ostringstream os;
      os << "cell with ends {";
      for (size_t i = 0; i < c.ends.size(); ++i) os << (i ? "," : "") << c.ends[i];
      os << "} matches none of the five cell types";
      fail(ErrorKind::InvalidDataSet, os.str());
    }
  return cs;
}

ValidationReport validate(const DataSet& ds) {
  ValidationReport r;
  r.non_crossing = is_non_crossing(ds);
  r.homoclinic_classes = condition2(ds);
  auto cs = cells(ds);
  r.cell_types = true;
  for (auto& c : cs)
    if (c.kind == CellKind::Invalid) {
      r.cell_types = false;
      r.offending = c;
      break;
    }
  if (r.non_crossing && r.homoclinic_classes) {
    r.decomposition = decomposition_properties_hold(ds);
    if (r.cell_types) r.euler = euler_characteristic(ds);
  }
  std::ostringstream os;
  if (!r.non_crossing) os << "condition 1 fails: classes cross; ";
  if (!r.homoclinic_classes) os << "condition 2 fails: homoclinic classes must be mixed-parity pairs; ";
  if (!r.cell_types) {
    os << "condition 3 fails: cell with ends {";
    for (size_t i = 0; i < r.offending->ends.size(); ++i) os << (i ? "," : "") << r.offending->ends[i];
    os << "} is of no admissible type; ";
  }
  r.message = os.str();
  if (!r.message.empty()) r.message.resize(r.message.size() - 2);
  else r.message = "ok";
  return r;
}

namespace {
struct DSU {
  std::vector<int> p;
  explicit DSU(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
  void unite(int a, int b) { p[find(a)] = find(b); }
};

bool subset_of(const std::vector<int>& c, const std::vector<char>& in) {
  for (int x : c)
    if (!in[x]) return false;
  return true;
}
bool disjoint_from(const std::vector<int>& c, const std::vector<char>& in) {
  for (int x : c)
    if (in[x]) return false;
  return true;
}
}  // namespace

std::vector<Component> h_components(const DataSet& ds) {
  const int n = ds.n();
  DSU u(n);
  for (int l = 0; l < n; ++l) {
    if (!ds.in_h[l]) u.unite(l, ds.mod(l + 1));
    else u.unite(l, ds.mod(ds.sig[l] + 1));
  }
  std::map<int, Component> m;
  for (int e = 0; e < n; ++e) {
    auto& c = m[u.find(e)];
    c.ends.push_back(e);
    if (!ds.in_h[e]) c.labels.push_back(e);
  }
  std::vector<Component> out;
  for (auto& [k, c] : m) out.push_back(std::move(c));
  return out;
}

namespace {
// classes of ds that are non-homoclinic and lie on the given label set
std::vector<int> classes_on(const DataSet& ds, const std::vector<int>& labels) {
  std::vector<int> out;
  std::set<int> seen;
  for (int l : labels) {
    int ci = ds.class_of[l];
    if (!class_in_h(ds, ci) && seen.insert(ci).second) out.push_back(ci);
  }
  return out;
}

// count check on a sub-interval of the cyclic label list: (size+1)/2 - sum(p)/2 classes
bool interval_counts(const DataSet& ds, const std::vector<int>& cls, const std::vector<char>& in, int size) {
  int q = 0, psum = 0;
  for (int ci : cls)
    if (subset_of(ds.classes[ci], in)) {
      ++q;
      psum += parity_changes(ds, ci);
    }
  return q == (size + 1) / 2 - psum / 2;
}
}  // namespace

bool decomposition_properties_hold(const DataSet& ds) {
  const int n = ds.n();
  for (auto& comp : h_components(ds)) {
    const auto& Ls = comp.labels;
    const int m = static_cast<int>(Ls.size());
    if (m % 2) return false;
    const int di = (m + 2) / 2;
    auto cls = classes_on(ds, Ls);
    // i
    if (di == 1) {
      if (!cls.empty()) return false;
    } else {
      int psum = 0;
      for (int ci : cls) psum += parity_changes(ds, ci);
      if (static_cast<int>(cls.size()) != di - psum / 2) return false;
    }
    // iii
    std::vector<char> inL(n, 0);
    for (int l : Ls) inL[l] = 1;
    for (int l : Ls) {
      int g = ds.mod(ds.sig[l] - l);
      if (g % 2 == 1)
        for (int t = 1; t < g; ++t)
          if (inL[ds.mod(l + t)]) return false;
    }
    // ii, on the cyclic order of this component's labels
    if (m < 2) continue;
    for (int a = 0; a < m; ++a)
      for (int size = 1; size < m; size += 2) {
        std::vector<char> in(n, 0);
        for (int t = 0; t < size; ++t) in[Ls[(a + t) % m]] = 1;
        bool split = true;
        for (int ci : cls)
          if (!subset_of(ds.classes[ci], in) && !disjoint_from(ds.classes[ci], in)) split = false;
        if (!split) continue;
        std::vector<char> out(n, 0);
        for (int l : Ls)
          if (!in[l]) out[l] = 1;
        if (!interval_counts(ds, cls, in, size)) return false;
        if (!interval_counts(ds, cls, out, m - size)) return false;
      }
  }
  return true;
}

EulerData euler_data(const DataSet& ds) {
  EulerData e{};
  for (auto& c : cells(ds)) {
    switch (c.kind) {
      case CellKind::AlphaOmega: ++e.s; break;
      case CellKind::OddSepal:
      case CellKind::EvenSepal: ++e.p; break;
      case CellKind::OddCenter:
      case CellKind::EvenCenter: ++e.c; break;
      default: break;
    }
  }
  e.h = static_cast<int>(ds.H.size()) / 2;
  e.V = 1 + ds.d - e.c - e.p / 2;
  e.E = 2 * (ds.d - 1) - e.h;
  e.F = e.s + e.c + e.p;
  return e;
}

int euler_characteristic(const DataSet& ds) { return euler_data(ds).chi(); }

CountingReport counting_identities(const DataSet& ds) {
  CountingReport r;
  const int n = ds.n();
  auto comps = h_components(ds);
  std::vector<int> comp_of_label(n, -1);
  for (size_t i = 0; i < comps.size(); ++i) {
    auto& c = comps[i];
    for (int l : c.labels) comp_of_label[l] = static_cast<int>(i);
    auto cls = classes_on(ds, c.labels);
    int di = (static_cast<int>(c.labels.size()) + 2) / 2;
    int psum = 0;
    for (int ci : cls) psum += parity_changes(ds, ci);
    int expect = di == 1 ? 0 : di - psum / 2;
    if (static_cast<int>(cls.size()) != expect) r.component_counts = false;
  }
  auto cs = cells(ds);
  for (auto& cell : cs) {
    if (cell.kind != CellKind::AlphaOmega) continue;
    int ci = comp_of_label[cell.k];
    if (ci < 0 || comp_of_label[cell.j] != ci) {
      r.alpha_omega_split = false;
      continue;
    }
    auto& comp = comps[ci];
    auto cls = classes_on(ds, comp.labels);
    // I_k = [k, j-1], I_j = [j, k-1] restricted to the component
    for (auto [lo, hi] : {std::pair{cell.k, cell.j - 1}, std::pair{cell.j, cell.k - 1}}) {
      std::vector<char> in(n, 0);
      int size = 0;
      int len = ds.mod(hi - lo) + 1;
      for (int t = 0; t < len; ++t) {
        int l = ds.mod(lo + t);
        if (comp_of_label[l] == ci) {
          in[l] = 1;
          ++size;
        }
      }
      if (size % 2 == 0) {
        r.alpha_omega_split = false;
        continue;
      }
      for (int c : cls)
        if (!subset_of(ds.classes[c], in) && !disjoint_from(ds.classes[c], in)) r.alpha_omega_split = false;
      if (!interval_counts(ds, cls, in, size)) r.alpha_omega_split = false;
    }
  }
  auto e = euler_data(ds);
  r.qsh = e.s + e.h == ds.d - 1 - e.p / 2;
  r.euler = e.chi() == 2;
  return r;
}

std::vector<std::vector<std::vector<int>>> non_crossing_partitions(int n) {
  std::vector<std::vector<std::vector<int>>> res;
  std::vector<std::vector<int>> blocks;
  // a block is "open" if a later element can still join it without crossing
  std::function<void(int)> rec = [&](int i) {
    if (i == n) {
      res.push_back(blocks);
      return;
    }
    for (size_t bi = 0; bi < blocks.size(); ++bi) {
      int last = blocks[bi].back();
      bool ok = true;
      for (size_t cj = 0; cj < blocks.size() && ok; ++cj) {
        if (cj == bi) continue;
        bool inside = false, outside = false;
        for (int x : blocks[cj]) {
          if (last < x && x < i) inside = true;
          else outside = true;
        }
        if (inside && outside) ok = false;
      }
      if (ok) {
        blocks[bi].push_back(i);
        rec(i + 1);
        blocks[bi].pop_back();
      }
    }
    blocks.push_back({i});
    rec(i + 1);
    blocks.pop_back();
  };
  rec(0);
  return res;
}

std::vector<DataSet> candidate_data_sets(int d) {
  std::vector<DataSet> out;
  for (auto& part : non_crossing_partitions(2 * d - 2)) {
    std::vector<int> pairs;
    for (size_t i = 0; i < part.size(); ++i)
      if (part[i].size() == 2 && (part[i][1] - part[i][0]) % 2 == 1) pairs.push_back(static_cast<int>(i));
    const int np = static_cast<int>(pairs.size());
    for (long mask = 0; mask < (1L << np); ++mask) {
      std::vector<int> H;
      for (int b = 0; b < np; ++b)
        if (mask >> b & 1) H.insert(H.end(), part[pairs[b]].begin(), part[pairs[b]].end());
      out.push_back(make_data_set(d, part, H));
    }
  }
  return out;
}

std::string canonical_string(const DataSet& ds) {
  std::ostringstream os;
  os << "{\"d\":" << ds.d << ",\"classes\":[";
  for (size_t i = 0; i < ds.classes.size(); ++i) {
    os << (i ? "," : "") << "[";
    for (size_t k = 0; k < ds.classes[i].size(); ++k) os << (k ? "," : "") << ds.classes[i][k];
    os << "]";
  }
  os << "],\"H\":[";
  for (size_t i = 0; i < ds.H.size(); ++i) os << (i ? "," : "") << ds.H[i];
  os << "]}";
  return os.str();
}

std::vector<DataSet> enumerate_data_sets(int d) {
  if (d < 2 || d > 6) fail(ErrorKind::InvalidArgument, "enumeration supports 2 <= d <= 6");
  std::vector<std::pair<std::string, DataSet>> keyed;
  for (auto& ds : candidate_data_sets(d))
    if (condition3(ds)) keyed.push_back({canonical_string(ds), std::move(ds)});
  std::sort(keyed.begin(), keyed.end(), [](auto& a, auto& b) { return a.first < b.first; });
  std::vector<DataSet> out;
  for (auto& [k, ds] : keyed) out.push_back(std::move(ds));
  return out;
}

}  // namespace polyvf::comb
