#pragma once

#include <Eigen/Dense>
#include <functional>

#include "khspace/weights.hpp"
#include "khspace/field.hpp"

namespace kh {

/// tau in End(R^n); tau = 0 Kohn-Nirenberg, tau = I/2 Weyl, tau = I adjoint.
struct Quantization {
  Eigen::MatrixXd tau;

  static Quantization kohn_nirenberg(int n) { return {Eigen::MatrixXd::Zero(n, n)}; }
  static Quantization weyl(int n) { return {0.5 * Eigen::MatrixXd::Identity(n, n)}; }
  static Quantization adjoint_form(int n) { return {Eigen::MatrixXd::Identity(n, n)}; }
  static Quantization scalar(int n, double t) { return {t * Eigen::MatrixXd::Identity(n, n)}; }
};

/// Symbol a(x, eta) sampled on the product of the spatial grid and its
/// frequency lattice. Layout: x flat index slow, eta flat index fast; the eta
/// axes are stored in raw spectral order (index j means frequency
/// freq_step * signed(j)).
struct Symbol2n {
  GridSpec base;
  std::vector<cplx> values;

  std::size_t count() const { return base.size() * base.size(); }
  cplx& at(std::size_t x_flat, std::size_t eta_flat) { return values[x_flat * base.size() + eta_flat]; }
  const cplx& at(std::size_t x_flat, std::size_t eta_flat) const {
    return values[x_flat * base.size() + eta_flat];
  }

  static Symbol2n sample(const GridSpec& base,
                         const std::function<cplx(const double*, const double*)>& f);

  /// l2 mass fraction of the spatial marginal near the period boundary
  /// (beyond inner_fraction of the half-period from the torus midpoint).
  double spatial_tail_fraction(double inner_fraction = 0.9) const;
};

using OperatorMatrix = Eigen::MatrixXcd;

/// Kernel K(x,y) = ((1 (x) F^{-1}) a)(x - tau z, z), z = x - y reduced to the
/// symmetric torus representative; trigonometric interpolation in the first
/// slot. Entries are kernel values (no quadrature weight).
OperatorMatrix kernel_from_symbol(const Symbol2n& a, const Quantization& q);

/// entries = K(x_i, y_j) h^n so that (A v)(x_i) approximates Op_tau(a) v.
OperatorMatrix op_matrix(const Symbol2n& a, const Quantization& q);

std::vector<double> singular_values(const OperatorMatrix& A);
double schatten_norm(const std::vector<double>& sv, double p);
double schatten_norm(const OperatorMatrix& A, double p);

/// | ||A||_S2 - (2pi)^{-n/2} ||a||_{L2} | / ||a||_{L2}.
double hs_identity_residual(const Symbol2n& a, const Quantization& q);

/// max_i || Op_{tau_{i+1}}(a) - Op_{tau_i}(a) ||_{S_p} along a path.
double tau_path_max_step(const Symbol2n& a, const std::vector<Quantization>& path, double p);

/// Amplitude a(x, y, theta) on the 3-axis product grid (theta in raw spectral
/// order); Op(a) v(x) = iint e^{i<x-y,theta>} a(x,y,theta) v(y) dy dtheta.
struct Amplitude3 {
  GridSpec base;
  std::vector<cplx> values;  // layout (x, y, theta), theta fastest

  static Amplitude3 sample(const GridSpec& base,
                           const std::function<cplx(double, double, double)>& f);  // n = 1
};

OperatorMatrix amplitude_op(const Amplitude3& a3);

/// Product window and lattice steps for the symbol amalgam norm.
struct SymbolWindow {
  double x_radius;
  double eta_radius;
};

/// ||a||_{k,p,Gamma,chi} on the 2n product grid, lattice mode with counting
/// measure: window positions every x_step samples in the spatial axes and
/// every eta_step samples in the frequency axes.
double symbol_amalgam_norm(const Symbol2n& a, const Weight& k2n, double p, const SymbolWindow& win,
                           int x_step_samples, int eta_step_samples);

double symbol_l2_norm(const Symbol2n& a);

struct SchattenReport {
  std::vector<double> singular_values;
  std::vector<double> p_list;
  std::vector<double> schatten;
  std::vector<double> symbol_norm;
  std::vector<double> sharpened_norm;  // weight k^{|1-2/p|}
  std::vector<double> ratio;
  std::vector<double> sharpened_ratio;
};

SchattenReport schatten_report(const Symbol2n& a, const Quantization& q, const Weight& k2n,
                               const std::vector<double>& p_list, const SymbolWindow& win,
                               int x_step_samples, int eta_step_samples);

}  // namespace kh
