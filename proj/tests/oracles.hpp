#pragma once
// Independent reference computations used by the tests. Nothing here calls into the library.
#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <set>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
constexpr double pi = 3.14159265358979323846;

inline cplx eval(const std::vector<cplx>& c, cplx z) {
  cplx s = 0;
  for (size_t k = c.size(); k-- > 0;) s = s * z + c[k];
  return s;
}

// Cardano roots of z^3 + p z + q.
inline std::vector<cplx> depressed_cubic_roots(cplx p, cplx q) {
  const cplx w(-0.5, std::sqrt(3.0) / 2);
  cplx disc = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
  cplx u = std::pow(-q / 2.0 + disc, 1.0 / 3.0);
  if (std::abs(u) < 1e-300) u = std::pow(-q / 2.0 - disc, 1.0 / 3.0);
  std::vector<cplx> r;
  for (int k = 0; k < 3; ++k) {
    cplx uk = u * std::pow(w, k);
    cplx vk = std::abs(uk) > 0 ? -p / (3.0 * uk) : cplx(0);
    r.push_back(uk + vk);
  }
  return r;
}

// 2 pi i times the residue of 1/P at z0 by the trapezoid rule on a circle (spectrally accurate).
inline cplx contour_residue(const std::vector<cplx>& c, cplx z0, double r, int n = 4096) {
  cplx s = 0;
  for (int k = 0; k < n; ++k) {
    cplx e = std::polar(1.0, 2 * pi * k / n);
    cplx z = z0 + r * e;
    s += (cplx(0, 1) * r * e) / eval(c, z);
  }
  return s * (2 * pi / n);
}

// Count of non-crossing perfect matchings on n points in a circle, by brute force over all matchings.
inline long noncrossing_pairings(int n) {
  long count = 0;
  std::vector<int> mate(n, -1);
  std::function<void()> rec = [&]() {
    int a = -1;
    for (int i = 0; i < n; ++i)
      if (mate[i] < 0) {
        a = i;
        break;
      }
    if (a < 0) {
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          int x = i, y = mate[i], u = j, v = mate[j];
          if (x > y || u > v || x == u) continue;
          if ((x < u && u < y && y < v) || (u < x && x < v && v < y)) return;
        }
      ++count;
      return;
    }
    for (int b = a + 1; b < n; ++b)
      if (mate[b] < 0) {
        mate[a] = b;
        mate[b] = a;
        rec();
        mate[a] = mate[b] = -1;
      }
  };
  if (n % 2 == 0) rec();
  return count;
}

struct Labeling {
  std::vector<std::vector<int>> classes;
  std::vector<int> H;
};

// Blocks of a restricted growth string, sorted by minimum.
inline std::vector<std::vector<int>> blocks_of(const std::vector<int>& rgs) {
  int m = rgs.empty() ? 0 : *std::max_element(rgs.begin(), rgs.end()) + 1;
  std::vector<std::vector<int>> b(m);
  for (int i = 0; i < (int)rgs.size(); ++i) b[rgs[i]].push_back(i);
  return b;
}

inline bool crossing_free(const std::vector<int>& rgs) {
  int n = (int)rgs.size();
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c)
        for (int d = c + 1; d < n; ++d)
          if (rgs[a] == rgs[c] && rgs[b] == rgs[d] && rgs[a] != rgs[b]) return false;
  return true;
}

// All set partitions of 0..n-1 that are non-crossing, with every admissible marking
// (marked blocks are pairs of mixed parity).
inline std::vector<Labeling> conditions12(int d) {
  int n = 2 * d - 2;
  std::vector<Labeling> out;
  std::vector<int> rgs(n, 0);
  std::function<void(int, int)> rec = [&](int i, int m) {
    if (i == n) {
      if (!crossing_free(rgs)) return;
      auto b = blocks_of(rgs);
      std::vector<int> eligible;
      for (int k = 0; k < (int)b.size(); ++k)
        if (b[k].size() == 2 && (b[k][0] + b[k][1]) % 2 == 1) eligible.push_back(k);
      for (unsigned mask = 0; mask < (1u << eligible.size()); ++mask) {
        Labeling L{b, {}};
        for (size_t e = 0; e < eligible.size(); ++e)
          if (mask >> e & 1)
            for (int x : b[eligible[e]]) L.H.push_back(x);
        std::sort(L.H.begin(), L.H.end());
        out.push_back(L);
      }
      return;
    }
    for (int v = 0; v <= m; ++v) {
      rgs[i] = v;
      rec(i + 1, std::max(m, v + 1));
    }
  };
  if (n > 0) {
    rgs[0] = 0;
    rec(1, 1);
  }
  return out;
}

// Random centered polynomial with well separated simple roots in the unit square, none near a center.
inline std::vector<cplx> random_stable_roots(int d, std::mt19937& g) {
  std::uniform_real_distribution<double> U(-1, 1);
  for (;;) {
    std::vector<cplx> r;
    int guard = 0;
    while ((int)r.size() < d && guard++ < 10000) {
      cplx w(U(g), U(g));
      bool ok = true;
      for (auto& q : r) ok = ok && std::abs(q - w) >= 0.2;
      if (ok) r.push_back(w);
    }
    if ((int)r.size() < d) continue;
    cplx m = 0;
    for (auto& q : r) m += q;
    m /= double(d);
    for (auto& q : r) q -= m;
    bool ok = true;
    for (size_t i = 0; i < r.size(); ++i) {
      cplx dp = 1;
      for (size_t j = 0; j < r.size(); ++j)
        if (j != i) dp *= r[i] - r[j];
      ok = ok && std::abs(dp.real()) >= 0.02 * std::abs(dp);
    }
    if (ok) return r;
  }
}

inline std::vector<cplx> expand(const std::vector<cplx>& roots) {
  std::vector<cplx> c{1.0};
  for (cplx r : roots) {
    std::vector<cplx> n(c.size() + 1, 0.0);
    for (size_t k = 0; k < c.size(); ++k) {
      n[k + 1] += c[k];
      n[k] -= r * c[k];
    }
    c = n;
  }
  return c;
}

// Generic coefficients: monic, centered, lower coefficients complex normal.
inline std::vector<cplx> random_generic(int d, std::mt19937& g) {
  std::normal_distribution<double> N;
  std::vector<cplx> c(d + 1, 0.0);
  c[d] = 1;
  for (int k = 0; k <= d - 2; ++k) c[k] = cplx(N(g), N(g));
  return c;
}

// Coefficients c_n on the rays arg = pi/2 - (n-1) pi/(2(d-1)): the field commutes with a reflection,
// which produces homoclinic separatrices and centers.
inline std::vector<cplx> random_reflection(int d, std::mt19937& g) {
  std::normal_distribution<double> N;
  std::vector<cplx> c(d + 1, 0.0);
  c[d] = 1;
  for (int k = 0; k <= d - 2; ++k) c[k] = N(g) * std::polar(1.0, pi / 2 - (k - 1) * pi / (2 * (d - 1)));
  return c;
}

}  // namespace oracle
