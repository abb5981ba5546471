#pragma once
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "polyvf/error.hpp"

namespace polyvf::comb {

// Partition of Z/(2d-2) plus marked homoclinic labels. Construct with make_data_set.
struct DataSet {
  int d = 0;
  std::vector<std::vector<int>> classes;  // each ascending, sorted by minimum
  std::vector<int> H;                     // ascending

  // derived
  std::vector<int> class_of, sig, sig_inv;
  std::vector<char> in_h;

  int n() const { return 2 * d - 2; }
  int mod(int x) const { return ((x % n()) + n()) % n(); }
  bool operator==(const DataSet& o) const { return d == o.d && classes == o.classes && H == o.H; }
};

// Canonicalizes and checks that classes partition the labels; throws InvalidArgument otherwise.
DataSet make_data_set(int d, std::vector<std::vector<int>> classes, std::vector<int> H);

int shift(const DataSet& ds, int l);
bool class_in_h(const DataSet& ds, int ci);
// number of odd gaps sigma(l)-l within a non-homoclinic class
int parity_changes(const DataSet& ds, int ci);
bool is_non_crossing(const DataSet& ds);
bool condition2(const DataSet& ds);
bool structurally_stable(const DataSet& ds);

struct Chain {
  bool ccw = true;
  bool closed = false;
  std::vector<int> h;                          // H-chain members: k (ccw) or j (cw)
  std::vector<std::pair<int, int>> t;          // T-chain members (k, j)
  int name() const { return h.empty() ? (t.empty() ? -1 : (ccw ? t.front().first : t.front().second)) : h.front(); }
};

std::vector<Chain> extract_h_chains(const DataSet& ds);
// (k, sigma(k-1)) with even gap, the source side
std::vector<std::pair<int, int>> source_transversals(const DataSet& ds);
// (sigma(j-1), j) with even gap, the sink side
std::vector<std::pair<int, int>> sink_transversals(const DataSet& ds);
std::vector<std::pair<int, int>> essential_transversals(const DataSet& ds);
std::vector<Chain> extract_t_chains(const DataSet& ds);
// sum-chain helpers: labels of the ccw (odd start) or cw (even start) H-chain beginning at l
std::vector<int> h_chain_from(const DataSet& ds, int l);

enum class CellKind { AlphaOmega, OddSepal, EvenSepal, OddCenter, EvenCenter, Invalid };
const char* to_string(CellKind k);

struct Cell {
  CellKind kind = CellKind::Invalid;
  std::vector<int> ends;  // in walk order starting from the smallest
  int k = -1, j = -1;     // alpha-omega labels
  int label = -1;         // sepal / center label
};

// All cells, invalid ones included with kind Invalid.
std::vector<Cell> cells(const DataSet& ds);
// Throws InvalidDataSet on a cell of none of the five types.
std::vector<Cell> decompose_cells(const DataSet& ds);

struct ValidationReport {
  bool partition = true;
  bool non_crossing = false;
  bool homoclinic_classes = false;
  bool cell_types = false;
  bool decomposition = false;
  int euler = 0;
  std::optional<Cell> offending;
  std::string message;
  bool valid() const { return partition && non_crossing && homoclinic_classes && cell_types; }
};
ValidationReport validate(const DataSet& ds);
bool condition3(const DataSet& ds);

struct Component {
  std::vector<int> ends;
  std::vector<int> labels;  // non-homoclinic labels on the component, ascending
};
std::vector<Component> h_components(const DataSet& ds);
bool decomposition_properties_hold(const DataSet& ds);

struct EulerData {
  int V, E, F, s, h, c, p;
  int chi() const { return V - E + F; }
};
EulerData euler_data(const DataSet& ds);
int euler_characteristic(const DataSet& ds);

struct CountingReport {
  bool component_counts = true;
  bool alpha_omega_split = true;
  bool qsh = true;
  bool euler = true;
  bool all() const { return component_counts && alpha_omega_split && qsh && euler; }
};
CountingReport counting_identities(const DataSet& ds);

// Non-crossing partitions of {0..n-1}, each as ascending blocks sorted by minimum.
std::vector<std::vector<std::vector<int>>> non_crossing_partitions(int n);
// Every partition+marking satisfying conditions 1 and 2.
std::vector<DataSet> candidate_data_sets(int d);
std::vector<DataSet> enumerate_data_sets(int d);

std::string canonical_string(const DataSet& ds);

}  // namespace polyvf::comb
