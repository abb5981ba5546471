#pragma once
#include <string>

#include "polyvf/comb.hpp"
#include "polyvf/invariants.hpp"

namespace polyvf::svg {

struct RenderOptions {
  int size = 600;  // canvas width and height in px
  bool labels = true;
  bool transversals = true;
};

// Unit disk with division points, geodesic class hulls, dashed transversals and one marker per cell.
std::string disk_model(const comb::DataSet& ds, const RenderOptions& opt = {});

// Separatrices colored by fate, equilibria marked by kind, center zones shaded.
std::string phase_portrait(const inv::Classification& c, const RenderOptions& opt = {});

}  // namespace polyvf::svg
