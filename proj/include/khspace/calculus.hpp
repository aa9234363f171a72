#pragma once

#include <functional>
#include <optional>
#include <string>

#include "khspace/amalgam.hpp"

namespace kh {

using cvec = std::vector<cplx>;

/// Open domain in C^d given by a membership predicate; common shapes also
/// carry an exact sup-metric distance to the complement for cross-checks.
struct DomainSpec {
  int d = 1;
  std::function<bool(const cvec&)> contains;
  std::function<double(const cvec&)> exact_dist;  // may be empty

  static DomainSpec entire(int d);
  static DomainSpec disc(cplx center, double radius);       // d = 1
  static DomainSpec half_plane(double re_min);              // d = 1, Re z > re_min
  static DomainSpec annulus(double rmin);                   // d = 1, |z| > rmin
  static DomainSpec product(const DomainSpec& a, const DomainSpec& b);
};

struct HolomorphicMap {
  int d = 1;
  std::function<cplx(const cvec&)> apply;
  DomainSpec domain;
  std::vector<std::function<cplx(const cvec&)>> partials;  // optional, size d when present

  /// Catalog: identity, reciprocal, square, exp_minus_one, principal_log.
  static HolomorphicMap by_name(const std::string& name, double margin = 0.5);
};

struct CalderonConfig {
  int contour_nodes = 64;  // power of two >= 16
  double mollifier_eps = 0.25;
};

/// Sup-metric distance from z to the complement, estimated by radial probing
/// of the membership predicate (16 directions per coordinate plane, bisection
/// to 1e-6 relative). Uses the exact distance when the domain provides one.
double domain_distance(const DomainSpec& dom, const cvec& z, bool prefer_exact = true);

struct RangeViolation : std::runtime_error {
  std::vector<double> x;
  explicit RangeViolation(std::vector<double> x_)
      : std::runtime_error("grid value outside the holomorphy domain"), x(std::move(x_)) {}
};

/// r = (1/8) min over grid points of dist_inf(u(x), complement); throws
/// RangeViolation if any grid value leaves the domain.
double range_distance(const std::vector<Field>& u, const DomainSpec& dom);

struct CalderonResult {
  Field h;
  int margin_warnings = 0;  // nodes with |zeta_j + v_j - u_j| below 2r(1 - 1e-6)
};

/// Polydisc contour integral h(x) = (2pi i)^{-d} int_{Gamma(r)}
/// Phi(zeta + v(x)) / prod_j (zeta_j + v_j(x) - u_j(x)) dzeta by tensor
/// trapezoid quadrature on circles of radius 3r.
CalderonResult calderon_apply(const HolomorphicMap& phi, const std::vector<Field>& u,
                              const std::vector<Field>& v, double r, const CalderonConfig& cfg = {});

struct ApproximantResult {
  std::vector<Field> v;
  double eps = 0.0;
  double norm_gap = 0.0;  // achieved ||u - v||_{k',inf,chi} (max over components)
  double sup_gap = 0.0;   // achieved max_x |u(x) - v(x)|_inf
};

/// Smallest eps in the list with componentwise ||u - phi_eps*u||_{k',inf,chi}
/// below the budget; the sup gap must come out below r.
ApproximantResult smooth_approximant(const std::vector<Field>& u, const std::vector<double>& eps_list,
                                     double r, double norm_budget, const Weight& kprime,
                                     const Window& chi);

/// 1/u via the Calderon formula on {|z| > c/2}; requires min |u| >= c.
/// Postcondition ||u * invert(u) - 1||_inf <= 1e-8 is verified.
Field invert(const Field& u, double c, const CalderonConfig& cfg = {});

struct SpectrumResult {
  bool in_spectrum = false;
  std::vector<Field> witnesses;      // v_k with sum v_k (u_k - lambda_k) = 1
  double identity_residual = 0.0;
  std::vector<double> nearest_x;     // where u(x) ~ lambda when in_spectrum
};

SpectrumResult joint_spectrum_membership(const std::vector<Field>& u, const cvec& lambda, double c,
                                         const CalderonConfig& cfg = {});

struct IdealCompositionReport {
  Field phi_u;
  double factorization_residual = 0.0;  // max |Phi(u) - u1 F(u) - Phi(0,..,u_d)|
  double norm_ratio = 0.0;              // amalgam p-norm on the doubled torus / base
  bool stable = false;                  // |ratio - 1| <= 0.15
  double tail_mass = 0.0;
};

/// Requires Phi(0) = 0. Computes Phi(u) by the contour formula, checks the
/// factorization Phi(u) = u1 F(u) + Phi(0,...,u_d) pointwise, and probes the
/// amalgam norm on the doubled torus as a membership proxy.
IdealCompositionReport ideal_composition_check(const HolomorphicMap& phi, const std::vector<Field>& u,
                                               const Weight& k, double p, const Window& chi,
                                               const CalderonConfig& cfg = {});

}  // namespace kh
