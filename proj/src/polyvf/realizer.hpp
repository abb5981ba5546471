#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "polyvf/comb.hpp"
#include "polyvf/poly.hpp"
#include "polyvf/tracer.hpp"

namespace polyvf::real {

using comb::DataSet;
using core::Polynomial;

struct Problem {
  DataSet ds;
  std::vector<cplx> alphas;   // by ascending j of the alpha-omega cells
  std::vector<double> taus;   // by ascending odd k of the homoclinic pairs
};

struct Options {
  int max_iter = 60;      // Newton iterations per continuation step
  int restarts = 8;
  std::uint64_t seed = 1;
  double tol = 1e-8;      // relative residual in A required on return
  int threads = 0;
  trace::TraceConfig trace;
};

struct Attempt {
  int index = 0;
  bool ok = false;
  int iterations = 0;
  double residual = 0;
  std::string message;
};

struct Report {
  int restart = -1;  // winning attempt, -1 for closed forms
  double residual = 0;
  std::vector<Attempt> attempts;
  std::string method;  // "closed-form" or "newton"
};

// Throws InvalidDataSet / InvalidArgument / Unsupported when the problem is not solvable as posed.
void check_problem(const Problem& prob);

// Residue form of the invariant for given roots, one root per non-homoclinic class.
std::vector<cplx> alphas_from_roots(const DataSet& ds, const std::vector<cplx>& root_of_class);

// Roots per class (index = class index) placed toward the directions of their labels and scaled to the target.
std::vector<cplx> initial_guess(const Problem& prob, int attempt = 0, std::uint64_t seed = 1);

// Classify p (no cross-checks) and return its data set and invariant.
Problem forward_map(const Polynomial& p, const trace::TraceConfig& cfg = {});

// Throws Realization when every restart fails; the message lists each attempt.
Polynomial realize(const Problem& prob, const Options& opt = {}, Report* report = nullptr);

}  // namespace polyvf::real
