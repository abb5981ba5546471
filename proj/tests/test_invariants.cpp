#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "polyvf/invariants.hpp"

using namespace polyvf;
using namespace polyvf::inv;

namespace {
bool all_pass(const Classification& c, std::string& why) {
  for (auto& k : c.checks)
    if (!k.pass) why += k.name + " (" + std::to_string(k.error) + " " + k.detail + ") ";
  return why.empty();
}
}  // namespace

TEST_CASE("d = 2 classifications") {
  SUBCASE("z^2 - 1") {
    auto c = assemble(Polynomial({-1.0, 0.0, 1.0}));
    CHECK(comb::canonical_string(c.ds) == R"({"d":2,"classes":[[0],[1]],"H":[]})");
    REQUIRE(c.alphas.size() == 1);
    CHECK(std::abs(c.alphas[0] - cplx(0, kPi)) < 1e-12);
    CHECK(std::abs(c.alpha_quad[0] - cplx(0, kPi)) < 1e-6);
    CHECK(c.alpha_zones[0] == std::pair<int, int>{1, 0});
    CHECK(c.taus.empty());
  }
  SUBCASE("z^2 + 1") {
    auto c = assemble(Polynomial({1.0, 0.0, 1.0}));
    CHECK(comb::canonical_string(c.ds) == R"({"d":2,"classes":[[0,1]],"H":[0,1]})");
    CHECK(c.alphas.empty());
    REQUIRE(c.taus.size() == 1);
    CHECK(std::abs(c.taus[0] - kPi) < 1e-6);
    CHECK(std::abs(c.tau_residue[0] - kPi) < 1e-12);
  }
  SUBCASE("z^2") {
    auto c = assemble(Polynomial({0.0, 0.0, 1.0}));
    CHECK(comb::canonical_string(c.ds) == R"({"d":2,"classes":[[0,1]],"H":[]})");
    CHECK(c.alphas.empty());
    CHECK(c.taus.empty());
  }
  SUBCASE("z^2 - c gives i pi / sqrt c") {
    for (double cc : {0.01, 0.25, 2.0}) {
      auto c = assemble(Polynomial({-cc, 0.0, 1.0}));
      REQUIRE(c.alphas.size() == 1);
      CHECK(std::abs(c.alphas[0] - cplx(0, kPi / std::sqrt(cc))) < 1e-9 * kPi / std::sqrt(cc));
    }
  }
}

TEST_CASE("zone labeling") {
  auto z1 = label_zones(comb::make_data_set(2, {{0}, {1}}, {}));
  REQUIRE(z1.size() == 1);
  CHECK(z1[0].kind == CellKind::AlphaOmega);
  CHECK(z1[0].k == 1);
  CHECK(z1[0].j == 0);
  auto z2 = label_zones(comb::make_data_set(2, {{0, 1}}, {}));
  REQUIRE(z2.size() == 2);
  CHECK(z2[0].kind == CellKind::OddSepal);
  CHECK(z2[0].label == 1);
  CHECK(z2[1].kind == CellKind::EvenSepal);
  CHECK(z2[1].label == 0);
}

TEST_CASE("left set of the z^2 + 1 homoclinic holds the center at +i") {
  auto c = assemble(Polynomial({1.0, 0.0, 1.0}));
  auto L = left_of_homoclinic(c.ds, 1);
  CHECK(L.classes.empty());
  REQUIRE(L.center_cells.size() == 1);
  int e = c.center_eq_of_cell[L.center_cells[0]];
  REQUIRE(e >= 0);
  CHECK(std::abs(c.eqs[e].zeta - cplx(0, 1)) < 1e-9);
}

TEST_CASE("left sets of homoclinics are never empty") {
  for (int d = 2; d <= 5; ++d)
    for (auto& ds : comb::enumerate_data_sets(d))
      for (int k : ds.H)
        if (k % 2) {
          auto L = left_of_homoclinic(ds, k);
          CHECK(L.classes.size() + L.center_cells.size() > 0);
        }
}

TEST_CASE("build_data_set groups landings by root") {
  std::vector<trace::SeparatrixTrace> tr(4);
  for (int l = 0; l < 4; ++l) {
    tr[l].label = l;
    tr[l].fate = trace::Fate::Landing;
  }
  tr[0].root = 0;
  tr[2].root = 0;
  tr[1].root = 1;
  tr[3].root = 2;
  std::vector<int> cr;
  auto ds = build_data_set(3, tr, &cr);
  CHECK(comb::canonical_string(ds) == R"({"d":3,"classes":[[0,2],[1],[3]],"H":[]})");
  CHECK(cr == std::vector<int>{0, 1, 2});
}

TEST_CASE("winding numbers") {
  std::vector<cplx> sq{cplx(-1, -1), cplx(1, -1), cplx(1, 1), cplx(-1, 1)};
  CHECK(winding_number(sq, 0.0) == 1);
  CHECK(winding_number(sq, 3.0) == 0);
  std::vector<cplx> rev(sq.rbegin(), sq.rend());
  CHECK(winding_number(rev, 0.0) == -1);
}

TEST_CASE("random classifications pass every cross-check") {
  std::mt19937 g(31);
  for (int d = 2; d <= 5; ++d)
    for (int t = 0; t < 10; ++t) {
      auto cf = t % 2 ? oracle::random_reflection(d, g) : oracle::random_generic(d, g);
      auto c = assemble(Polynomial(cf));
      std::string why;
      CHECK_MESSAGE(all_pass(c, why), "d=" << d << " " << why);
      // qsh relation and strip heights, checked directly
      int p = 0;
      for (auto& cell : c.cells) p += cell.kind == CellKind::OddSepal || cell.kind == CellKind::EvenSepal;
      CHECK((int)(c.alphas.size() + c.taus.size()) == d - 1 - p / 2);
      for (auto a : c.alphas) CHECK(a.imag() > 0);
      for (auto tau : c.taus) CHECK(tau > 0);
    }
}
