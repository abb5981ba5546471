#include <doctest.h>

#include <map>
#include <set>

#include "oracles.hpp"
#include "polyvf/comb.hpp"

using namespace polyvf;
using namespace polyvf::comb;

namespace {
DataSet all_kinds_d9() {
  return make_data_set(9, {{0, 2}, {1}, {7, 8, 11}, {3, 4}, {5, 6}, {9, 10}, {12, 15}, {13, 14}},
                       {3, 4, 5, 6, 9, 10, 12, 13, 14, 15});
}
int class_index(const DataSet& ds, int l) { return ds.class_of[l]; }
}  // namespace

TEST_CASE("canonical form") {
  auto ds = make_data_set(3, {{3}, {2, 0}, {1}}, {});
  CHECK(ds.classes == std::vector<std::vector<int>>{{0, 2}, {1}, {3}});
  CHECK(canonical_string(ds) == R"({"d":3,"classes":[[0,2],[1],[3]],"H":[]})");
  CHECK_THROWS_AS(make_data_set(3, {{0, 1}, {1, 2}, {3}}, {}), Error);
  CHECK_THROWS_AS(make_data_set(3, {{0, 1}, {2}}, {}), Error);
}

TEST_CASE("shift map") {
  auto ds = all_kinds_d9();
  CHECK(shift(ds, 1) == 1);
  CHECK(shift(ds, 7) == 8);
  CHECK(shift(ds, 8) == 11);
  CHECK(shift(ds, 11) == 7);
  for (int k : ds.H) CHECK(shift(ds, shift(ds, k)) == k);
  auto d5 = make_data_set(4, {{0}, {1}, {2}, {3, 4}, {5}}, {3, 4});
  CHECK(shift(d5, 3) == 4);
  CHECK(shift(d5, 4) == 3);
  CHECK(shift(d5, 5) == 5);
}

TEST_CASE("parity changes") {
  auto a = make_data_set(3, {{0, 2}, {1}, {3}}, {});
  CHECK(parity_changes(a, class_index(a, 0)) == 0);
  auto f = all_kinds_d9();
  CHECK(parity_changes(f, class_index(f, 7)) == 2);
  for (int d = 2; d <= 7; ++d) {
    std::vector<int> all;
    for (int l = 0; l < 2 * d - 2; ++l) all.push_back(l);
    auto z = make_data_set(d, {all}, {});
    CHECK(parity_changes(z, 0) == 2 * d - 2);
  }
}

TEST_CASE("non-crossing") {
  CHECK(is_non_crossing(make_data_set(3, {{0, 2}, {1}, {3}}, {})));
  CHECK_FALSE(is_non_crossing(make_data_set(3, {{0, 2}, {1, 3}}, {})));
  CHECK(is_non_crossing(all_kinds_d9()));
}

TEST_CASE("validation examples") {
  SUBCASE("z^3 pattern") {
    auto ds = make_data_set(3, {{0, 1, 2, 3}}, {});
    auto rep = validate(ds);
    CHECK(rep.valid());
    auto cs = decompose_cells(ds);
    int odd = 0, even = 0;
    for (auto& c : cs) {
      odd += c.kind == CellKind::OddSepal;
      even += c.kind == CellKind::EvenSepal;
    }
    CHECK(odd == 2);
    CHECK(even == 2);
    CHECK(cs.size() == 4);
  }
  SUBCASE("singletons marked homoclinic") {
    auto ds = make_data_set(2, {{0}, {1}}, {0, 1});
    auto rep = validate(ds);
    CHECK_FALSE(rep.homoclinic_classes);
    CHECK_FALSE(rep.valid());
  }
  SUBCASE("d = 9 set with every cell kind") {
    auto rep = validate(all_kinds_d9());
    CHECK(rep.valid());
    std::set<CellKind> kinds;
    for (auto& c : decompose_cells(all_kinds_d9())) kinds.insert(c.kind);
    CHECK(kinds.size() == 5);
  }
  SUBCASE("four singletons at d = 3 fail condition 3") {
    auto ds = make_data_set(3, {{0}, {1}, {2}, {3}}, {});
    auto rep = validate(ds);
    CHECK(rep.non_crossing);
    CHECK_FALSE(rep.cell_types);
    CHECK(rep.offending.has_value());
    CHECK_FALSE(decomposition_properties_hold(ds));
    CHECK_THROWS_AS(decompose_cells(ds), Error);
  }
}

TEST_CASE("cells at d = 2") {
  auto aw = decompose_cells(make_data_set(2, {{0}, {1}}, {}));
  REQUIRE(aw.size() == 1);
  CHECK(aw[0].kind == CellKind::AlphaOmega);
  CHECK(aw[0].k == 1);
  CHECK(aw[0].j == 0);
  auto sep = decompose_cells(make_data_set(2, {{0, 1}}, {}));
  REQUIRE(sep.size() == 2);
  std::multiset<CellKind> kinds{sep[0].kind, sep[1].kind};
  CHECK(kinds == std::multiset<CellKind>{CellKind::OddSepal, CellKind::EvenSepal});
  auto cen = decompose_cells(make_data_set(2, {{0, 1}}, {0, 1}));
  std::multiset<CellKind> ck;
  for (auto& c : cen) ck.insert(c.kind);
  CHECK(ck == std::multiset<CellKind>{CellKind::OddCenter, CellKind::EvenCenter});
}

TEST_CASE("every end lies on exactly one cell") {
  for (int d = 2; d <= 5; ++d)
    for (auto& ds : enumerate_data_sets(d)) {
      std::vector<int> seen(ds.n(), 0);
      for (auto& c : decompose_cells(ds))
        for (int e : c.ends) ++seen[e];
      for (int s : seen) CHECK(s == 1);
    }
}

TEST_CASE("H-chains") {
  auto hc = extract_h_chains(make_data_set(2, {{0, 1}}, {0, 1}));
  int ccw = 0, cw = 0;
  for (auto& c : hc) {
    CHECK(c.closed);
    CHECK(c.h.size() == 1);
    (c.ccw ? ccw : cw)++;
  }
  CHECK(ccw == 1);
  CHECK(cw == 1);
  CHECK(extract_h_chains(make_data_set(2, {{0}, {1}}, {})).empty());
  // every homoclinic class appears in one chain of each orientation
  for (int d = 2; d <= 5; ++d)
    for (auto& ds : enumerate_data_sets(d)) {
      std::map<int, int> in_ccw, in_cw;
      for (auto& c : extract_h_chains(ds))
        for (int k : c.h) (c.ccw ? in_ccw : in_cw)[ds.class_of[k]]++;
      for (size_t ci = 0; ci < ds.classes.size(); ++ci)
        if (class_in_h(ds, (int)ci)) {
          CHECK(in_ccw[(int)ci] == 1);
          CHECK(in_cw[(int)ci] == 1);
        }
    }
}

TEST_CASE("essential transversals and T-chains") {
  auto two = make_data_set(2, {{0}, {1}}, {});
  auto tp = essential_transversals(two);
  REQUIRE(tp.size() == 1);
  CHECK(tp[0] == std::pair<int, int>{1, 0});
  auto tc = extract_t_chains(two);
  int ccw = 0, cw = 0;
  for (auto& c : tc) {
    CHECK(c.closed);
    CHECK(c.t.size() == 1);
    (c.ccw ? ccw : cw)++;
  }
  CHECK(ccw == 1);
  CHECK(cw == 1);
  for (int d = 2; d <= 7; ++d) {
    std::vector<int> all;
    for (int l = 0; l < 2 * d - 2; ++l) all.push_back(l);
    CHECK(essential_transversals(make_data_set(d, {all}, {})).empty());
  }
}

TEST_CASE("decomposition properties on small cases") {
  CHECK(decomposition_properties_hold(make_data_set(2, {{0, 1}}, {})));
  CHECK(decomposition_properties_hold(make_data_set(2, {{0}, {1}}, {})));
  CHECK_FALSE(decomposition_properties_hold(make_data_set(3, {{0}, {1}, {2}, {3}}, {})));
}

TEST_CASE("Euler characteristic by hand") {
  auto a = euler_data(make_data_set(2, {{0}, {1}}, {}));
  CHECK(a.V == 3);
  CHECK(a.E == 2);
  CHECK(a.F == 1);
  auto b = euler_data(make_data_set(2, {{0, 1}}, {0, 1}));
  CHECK(b.V == 1);
  CHECK(b.E == 1);
  CHECK(b.F == 2);
  auto c = euler_data(make_data_set(2, {{0, 1}}, {}));
  CHECK(c.V == 2);
  CHECK(c.E == 2);
  CHECK(c.F == 2);
  CHECK(euler_characteristic(all_kinds_d9()) == 2);
  CHECK(counting_identities(all_kinds_d9()).all());
}

TEST_CASE("enumeration matches brute force over conditions 1 and 2") {
  for (int d = 2; d <= 5; ++d) {
    auto ref = oracle::conditions12(d);
    auto got = candidate_data_sets(d);
    CHECK(got.size() == ref.size());
    std::set<std::string> a, b;
    for (auto& L : ref) a.insert(canonical_string(make_data_set(d, L.classes, L.H)));
    for (auto& ds : got) b.insert(canonical_string(ds));
    CHECK(a == b);
  }
}

TEST_CASE("enumeration order and counts") {
  auto two = enumerate_data_sets(2);
  REQUIRE(two.size() == 3);
  for (size_t i = 1; i < two.size(); ++i) CHECK(canonical_string(two[i - 1]) < canonical_string(two[i]));
  for (int d = 2; d <= 6; ++d) {
    long stable = 0;
    auto all = enumerate_data_sets(d);
    for (size_t i = 1; i < all.size(); ++i) CHECK(canonical_string(all[i - 1]) < canonical_string(all[i]));
    for (auto& ds : all) stable += structurally_stable(ds);
    CHECK(stable == oracle::noncrossing_pairings(2 * d - 2));
  }
  CHECK_THROWS_AS(enumerate_data_sets(1), Error);
  CHECK_THROWS_AS(enumerate_data_sets(7), Error);
}

TEST_CASE("properties over every valid data set") {
  for (int d = 2; d <= 5; ++d)
    for (auto& ds : enumerate_data_sets(d)) {
      CHECK(euler_characteristic(ds) == 2);
      CHECK(counting_identities(ds).all());
      for (size_t ci = 0; ci < ds.classes.size(); ++ci)
        if (!class_in_h(ds, (int)ci)) CHECK(parity_changes(ds, (int)ci) % 2 == 0);
      // some l ~ l+2 whenever there is more than one class and no homoclinics
      if (d > 2 && ds.H.empty() && ds.classes.size() > 1) {
        bool found = false;
        for (int l = 0; l < ds.n(); ++l) found = found || ds.class_of[l] == ds.class_of[ds.mod(l + 2)];
        CHECK(found);
      }
      // sigma is a bijection on each class
      for (auto& cls : ds.classes) {
        std::set<int> img;
        for (int l : cls) img.insert(shift(ds, l));
        CHECK(img == std::set<int>(cls.begin(), cls.end()));
      }
    }
}
