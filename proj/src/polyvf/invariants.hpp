#pragma once
#include <string>
#include <vector>

#include "polyvf/comb.hpp"
#include "polyvf/poly.hpp"
#include "polyvf/tracer.hpp"

namespace polyvf::inv {

using comb::Cell;
using comb::CellKind;
using comb::DataSet;
using core::Equilibrium;
using core::Polynomial;

struct Zone {
  CellKind kind = CellKind::Invalid;
  int k = -1, j = -1;  // alpha-omega
  int label = -1;      // sepal / center
  std::vector<int> ends;
  int alpha_eq = -1, omega_eq = -1;  // alpha-omega zones
  int eq = -1;                       // sepal: its multiple point; center: its center
};

// alpha-omega zones by ascending j, then odd/even sepals, then odd/even centers, each by label
std::vector<Zone> label_zones(const DataSet& ds);

// Residue bookkeeping: class indices of non-homoclinic classes and center cells left of a curve.
struct LeftSet {
  std::vector<int> classes;
  std::vector<int> center_cells;  // indices into comb::cells(ds)
};
LeftSet left_of_homoclinic(const DataSet& ds, int k);
LeftSet left_of_zone(const DataSet& ds, const Cell& cell);

// Landing fates grouped into classes; class_root[ci] is the equilibrium of class ci (-1 for H classes).
DataSet build_data_set(int d, const std::vector<trace::SeparatrixTrace>& traces, std::vector<int>* class_root = nullptr);

struct Check {
  std::string name;
  bool pass = true;
  double error = 0;  // worst normalized error (0 when not numeric)
  std::string detail;
};

struct AssembleOptions {
  bool cross_checks = true;
};

struct Classification {
  Polynomial poly;
  std::vector<Equilibrium> eqs;
  DataSet ds;
  std::vector<int> class_root;
  std::vector<int> center_eq_of_cell;  // per cell of comb::cells(ds); -1 unless center cell
  std::vector<Cell> cells;
  std::vector<Zone> zones;
  std::vector<std::pair<int, int>> alpha_zones;  // (k, j) ascending j
  std::vector<cplx> alphas;                      // residue sums
  std::vector<cplx> alpha_quad;                  // direct quadrature (cross-check)
  std::vector<std::pair<int, int>> homoclinics;  // (k, j) ascending k
  std::vector<double> taus;                      // traced transit times
  std::vector<double> tau_residue;               // residue sums (cross-check)
  trace::Context ctx;
  std::vector<trace::SeparatrixTrace> traces;
  std::vector<Check> checks;
  bool checks_pass() const;
};

// Full pipeline: roots, traces, data set, zones, invariants and cross-checks.
Classification assemble(const Polynomial& p, const trace::TraceConfig& cfg = {}, const AssembleOptions& opt = {});

// alpha of an alpha-omega cell by relation 1 given residues per class and per center cell
cplx alpha_residue(const DataSet& ds, const Cell& cell, const std::vector<cplx>& rho_class,
                   const std::vector<cplx>& rho_cell);
// alpha by quadrature along the straight line in rectifying coordinates from end k to end j
cplx alpha_quadrature(const trace::Context& ctx, const Cell& cell, cplx alpha_guess, std::vector<cplx>* path = nullptr,
                      double* miss = nullptr);

// winding number of the closed polygon around w
int winding_number(const std::vector<cplx>& poly, cplx w);

}  // namespace polyvf::inv
