#pragma once

#include "khspace/field.hpp"
#include "khspace/weights.hpp"

namespace kh {

struct BpkNormResult {
  double value = 0.0;
  double p = 2.0;
  GridSpec grid;
};

/// Samples of a weight on the (signed) frequency lattice of a grid.
std::vector<double> weight_on_grid(const Weight& k, const GridSpec& g);

/// ||k uhat||_p with freq-cell quadrature weights; p = INFINITY takes the max.
double norm_from_spectrum(const Field& uhat, const std::vector<double>& kgrid, double p);

/// ||u||_{p,k} = ||k uhat||_p for a space-domain field.
BpkNormResult bpk_norm(const Field& u, const Weight& k, double p);
double bpk_norm_value(const Field& u, const Weight& k, double p);

/// (2pi)^{-n} ||u||_{p,k} ||v||_{p',1/kcheck} - |<v,u>|, which is >= 0 up to
/// roundoff (discrete Hoelder pairing).
double holder_duality_gap(const Field& u, const Field& v, const Weight& k, double p);

struct BoundCheck {
  double bound = 0.0;
  double actual = 0.0;
  bool pass = false;
  double ratio() const { return bound > 0.0 ? actual / bound : (actual == 0.0 ? 0.0 : INFINITY); }
};

/// ||phi u||_{p,k} <= (2pi)^{-n} ||M_k phihat||_1 ||u||_{p,k}.
BoundCheck multiplier_bound_check(const Field& phi, const Field& u, const Weight& k, double p);

struct SobolevMultiplierConstant {
  double value = 0.0;    // C(C,n) ||chi||_{H^{N+(n+1)/2}}
  double h_norm = 0.0;   // ||chi||_{H^{N+(n+1)/2}} on the grid
  double schwarz_factor = 0.0;
  int m_k = 0;           // [N+(n+1)/2]+1
  int l_k = 0;           // [N]+n+2
};
SobolevMultiplierConstant sobolev_multiplier_constant(const Field& chi, const Weight& k);

/// ||chi||_{H^m} computed spectrally: ((dxi)^n sum <xi>^{2m} |chihat|^2)^{1/2}.
double sobolev_norm(const Field& chi, double m);

struct PeriodicMultiplierCheck {
  double bound = 0.0;
  double actual = 0.0;
  bool pass = false;
  bool tail_warning = false;  // Fourier coefficient tail not negligible at truncation
};
/// For Z^n-periodic chi on an integer-period grid: bound via unit-cell Fourier
/// coefficients, C sum_gamma <2pi gamma>^N |c_gamma| ||u||_{p,k}.
PeriodicMultiplierCheck periodic_multiplier_check(const Field& chi_periodic, const Field& u,
                                                  const Weight& k, double p);

/// ||u1 u2||_{B_k} <= (2pi)^{-n} C ||u1||_{B_{k1}} ||u2||_{B_{k2}} with C
/// estimated from the convolution condition on the field grid.
BoundCheck product_bound_check(const Field& u1, const Field& u2, const Weight& k1, const Weight& k2,
                               const Weight& k);

/// | ||u||^2_{B_k} - ||u||^2_{B_kbar} - sum_j ||d_j u||^2_{B_kbar} | / ||u||^2_{B_k}.
double gradient_decomposition_residual(const Field& u, const Weight& k);

}  // namespace kh
