#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "polyvf/tracer.hpp"

using namespace polyvf;
using namespace polyvf::trace;

namespace {
Context ctx_of(std::vector<cplx> c, TraceConfig cfg = {}) {
  Polynomial p(std::move(c));
  return make_context(p, core::find_roots(p), cfg);
}
}  // namespace

TEST_CASE("z^2 - 1 separatrices land on the real axis") {
  auto ctx = ctx_of({-1.0, 0.0, 1.0});
  auto t0 = trace_separatrix(ctx, 0);
  auto t1 = trace_separatrix(ctx, 1);
  REQUIRE(t0.fate == Fate::Landing);
  REQUIRE(t1.fate == Fate::Landing);
  CHECK(std::abs(ctx.eqs[t0.root].zeta - 1.0) < 1e-9);
  CHECK(std::abs(ctx.eqs[t1.root].zeta + 1.0) < 1e-9);
  CHECK(std::abs(t0.samples.front().z - ctx.R0) < 1e-6 * ctx.R0);
}

TEST_CASE("z^2 + 1 has one homoclinic pair with transit time pi") {
  auto ctx = ctx_of({1.0, 0.0, 1.0});
  auto t1 = trace_separatrix(ctx, 1);
  auto t0 = trace_separatrix(ctx, 0);
  REQUIRE(t1.fate == Fate::Homoclinic);
  REQUIRE(t0.fate == Fate::Homoclinic);
  CHECK(t1.exit_label == 0);
  CHECK(t0.exit_label == 1);
  CHECK(homoclinic_time(t1) == doctest::Approx(kPi).epsilon(1e-8));
  CHECK(std::abs(homoclinic_time(t0) - homoclinic_time(t1)) < 1e-6 * kPi);
}

TEST_CASE("z^2 + 4 transit time") {
  auto ctx = ctx_of({4.0, 0.0, 1.0});
  auto t1 = trace_separatrix(ctx, 1);
  REQUIRE(t1.fate == Fate::Homoclinic);
  CHECK(homoclinic_time(t1) == doctest::Approx(kPi / 2).epsilon(1e-8));
}

TEST_CASE("z^2 separatrices land at the double point") {
  auto ctx = ctx_of({0.0, 0.0, 1.0});
  auto all = trace_all(ctx);
  REQUIRE(all.size() == 2);
  for (auto& t : all) {
    CHECK(t.fate == Fate::Landing);
    CHECK(ctx.eqs[t.root].m == 2);
  }
}

TEST_CASE("tail integral matches the closed form for z^2 + a") {
  // int_x^inf dw/(w^2 + a) = (pi/2 - atan(x/sqrt a)) / sqrt a
  for (double a : {1.0, 4.0, 0.25}) {
    Polynomial p({a, 0.0, 1.0});
    for (double x : {5.0, 20.0, 100.0}) {
      double ref = (kPi / 2 - std::atan(x / std::sqrt(a))) / std::sqrt(a);
      CHECK(std::abs(tail_integral(p, x) - ref) < 1e-12 * ref);
    }
  }
}

TEST_CASE("polyline integral of a segment") {
  Polynomial p({1.0, 0.0, 1.0});
  cplx v = polyline_integral(p, {-1.0, 1.0});
  CHECK(std::abs(v - kPi / 2) < 1e-12);
}

TEST_CASE("random fields: parity, involution, non-crossing, landing coverage") {
  std::mt19937 g(21);
  for (int d = 2; d <= 5; ++d)
    for (int t = 0; t < 8; ++t) {
      auto c = t % 2 ? oracle::random_reflection(d, g) : oracle::random_generic(d, g);
      auto ctx = ctx_of(c);
      std::vector<SeparatrixTrace> all;
      REQUIRE_NOTHROW(all = trace_all(ctx));
      std::vector<int> hits(ctx.eqs.size(), 0);
      for (auto& tr : all) {
        if (tr.fate == Fate::Homoclinic) {
          CHECK((tr.label + tr.exit_label) % 2 == 1);
          CHECK(all[tr.exit_label].exit_label == tr.label);
          CHECK(tr.tau > 0);
        } else {
          REQUIRE(tr.fate == Fate::Landing);
          auto& e = ctx.eqs[tr.root];
          ++hits[tr.root];
          if (e.m == 1) CHECK(e.kind == (tr.label % 2 ? core::EqKind::Sink : core::EqKind::Source));
          CHECK(std::abs(tr.samples.back().z - e.zeta) <= std::max(ctx.trap_radius[tr.root], ctx.fallback_radius));
        }
      }
      for (size_t i = 0; i < ctx.eqs.size(); ++i)
        CHECK((hits[i] == 0) == (ctx.eqs[i].kind == core::EqKind::Center));
      std::string msg;
      CHECK_MESSAGE(polylines_non_crossing(ctx, all, &msg), msg);
    }
}

TEST_CASE("context defaults") {
  auto ctx = ctx_of({-1.0, 0.0, 1.0});
  CHECK(ctx.R0 > 1);
  CHECK(ctx.Resc == doctest::Approx(10 * ctx.R0));
  TraceConfig cfg;
  cfg.start_radius = 50;
  auto c2 = ctx_of({-1.0, 0.0, 1.0}, cfg);
  CHECK(c2.R0 == 50);
  CHECK(c2.Resc == doctest::Approx(500));
}
