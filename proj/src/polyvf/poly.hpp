#pragma once
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "polyvf/error.hpp"

namespace polyvf {

using cplx = std::complex<double>;
inline constexpr double kPi = 3.14159265358979323846;
inline constexpr cplx kTwoPiI{0.0, 2.0 * kPi};

namespace core {

// Monic, centered polynomial; coeffs in ascending powers.
class Polynomial {
 public:
  Polynomial() = default;
  // Throws unless monic and centered (up to tol relative to the largest coefficient; snapped exactly).
  explicit Polynomial(std::vector<cplx> coeffs, double tol = 1e-12);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<cplx>& coeffs() const { return c_; }
  cplx operator()(cplx z) const;
  // value and first derivative
  void eval(cplx z, cplx& p, cplx& dp) const;
  std::string describe() const;

 private:
  std::vector<cplx> c_;
};

cplx horner(const std::vector<cplx>& c, cplx z);
std::vector<cplx> derivative(const std::vector<cplx>& c);
// coefficients of u -> q(z0 + u)
std::vector<cplx> taylor_shift(const std::vector<cplx>& c, cplx z0);
std::vector<cplx> poly_from_roots(const std::vector<cplx>& roots);

enum class EqKind { Source, Sink, Center, Multiple };
const char* to_string(EqKind k);

struct Equilibrium {
  cplx zeta;
  int m = 1;
  EqKind kind = EqKind::Source;
  cplx dP;   // P'(zeta), meaningful for m == 1
  cplx rho;  // dynamical residue 2*pi*i*Res(1/P)
  std::vector<cplx> members;  // raw root approximations of the cluster
};

struct RootOptions {
  double cluster_tol = 1e-6;  // relative to root scale
  double center_tol = 1e-9;   // |Re P'| <= center_tol |P'|
  int max_iter = 1000;
  std::uint64_t seed = 0x5eedULL;
};

// Simultaneous Aberth-Ehrlich iteration on a monic polynomial given by ascending coeffs.
std::vector<cplx> aberth_roots(const std::vector<cplx>& c, const RootOptions& opt = {});

std::vector<Equilibrium> find_roots(const Polynomial& p, const RootOptions& opt = {});
cplx residue_of(const Polynomial& p, const Equilibrium& e);
double period_of_center(const Polynomial& p, const Equilibrium& e);
double root_scale(const std::vector<Equilibrium>& eqs);

// Push-forward of q(z) d/dz under w = A z + B.
struct Normalization {
  Polynomial p;
  cplx A, B;
};
std::vector<Normalization> normalize_all(const std::vector<cplx>& q);
Normalization normalize(const std::vector<cplx>& q);
std::vector<cplx> push_forward(const std::vector<cplx>& q, cplx A, cplx B);

}  // namespace core
}  // namespace polyvf
