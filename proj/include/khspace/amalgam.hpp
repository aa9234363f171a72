#pragma once

#include "khspace/bspace.hpp"
#include "khspace/window.hpp"

namespace kh {

enum class AmalgamMode { continuous, lattice };

struct AmalgamNormResult {
  double value = 0.0;
  double p = 2.0;
  AmalgamMode mode = AmalgamMode::continuous;
};

/// ||u tau_y chi||_{B_k} for the given shifts y.
std::vector<double> window_norm_map(const Field& u, const Window& chi, const Weight& k,
                                    const std::vector<std::vector<double>>& ys);

/// ||u||_{k,p,chi}: continuous mode integrates ||u tau_y chi||_{B_k}^p over the
/// full sample grid with h^n weights; lattice mode sums over lattice points
/// within the torus (counting measure). p = INFINITY takes the sup.
AmalgamNormResult amalgam_norm(const Field& u, const Window& chi, const Weight& k, double p,
                               AmalgamMode mode = AmalgamMode::continuous,
                               const Lattice* gamma = nullptr);
double amalgam_norm_value(const Field& u, const Window& chi, const Weight& k, double p,
                          AmalgamMode mode = AmalgamMode::continuous,
                          const Lattice* gamma = nullptr);

struct RatioReport {
  double min_ratio = INFINITY;
  double max_ratio = 0.0;
  int counted = 0;
  int skipped = 0;
};

/// Ratios ||u||_{k,p,chit} / ||u||_{k,p,chi} over a corpus; zero fields skipped.
RatioReport window_equivalence_report(const std::vector<Field>& corpus, const Window& chi,
                                      const Window& chit, const Weight& k, double p,
                                      AmalgamMode mode = AmalgamMode::continuous);

/// S2/||u||_{B_k} for the decomposition u_{gamma,i} = (tau_gamma h_i) u,
/// S2 = (sum_{gamma,i} ||u_{gamma,i}||^2_{B_k})^{1/2}.
double frame_decompose_ratio(const Field& u, const PartitionOfUnity& P, const Weight& k);

/// ||R_chi S u - u||_{B_k} / ||u||_{B_k} for S u = ((tau_gamma chi_Z) u)_gamma,
/// R_chi (u_gamma) = sum (tau_gamma chi) u_gamma. Requires chi = 1 on a
/// neighborhood of supp chi_Z and sum_gamma tau_gamma chi_Z = 1.
double retraction_roundtrip_residual(const Field& u, const Window& chi_z, const Window& chi,
                                     const Weight& k);

/// ||phi * u||_{k,inf,chi} <= ||phi||_{L1} ||u||_{k,inf,chi}.
BoundCheck convolution_bound_check(const Field& phi, const Field& u, const Window& chi,
                                   const Weight& k);

struct MollifierConvergence {
  std::vector<double> errors;     // ||phi_eps * u - u||_{k',inf,chi} per eps
  bool ratio_warning = false;     // k'/k decay not verifiable on the grid
  double edge_ratio = 0.0;        // (k'/k)(edge) / (k'/k)(0)
};
MollifierConvergence mollifier_convergence_check(const Field& u, const Weight& k, const Weight& kprime,
                                                 const std::vector<double>& epsilons, const Window& chi);

/// C_{k,phi}(theta) = C sum_gamma <2pi gamma + theta>^N |phihat(2pi gamma + theta)|,
/// the frame-estimate constant; measured on the grid for one theta.
double frame_constant(const Field& phi, const Weight& k, const std::vector<double>& theta);

}  // namespace kh
