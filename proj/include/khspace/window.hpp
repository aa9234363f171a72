#pragma once

#include "khspace/field.hpp"

namespace kh {

/// Compactly supported window sampled on a grid. Support is measured in the
/// sup metric around `center` so both radial bumps and cube plateaus fit.
struct Window {
  Field field;
  std::vector<double> center;
  double support_radius = 0.0;

  /// c * exp(-1/(1-|x-center|^2/radius^2)) inside the ball, exact zero outside.
  static Window bump(const GridSpec& g, const std::vector<double>& center, double radius,
                     double amplitude = 1.0);

  /// Smooth plateau: 1 for |x-center|_inf <= inner, 0 for >= outer.
  static Window plateau(const GridSpec& g, const std::vector<double>& center, double inner,
                        double outer);

  void verify() const;  // support containment and non-triviality
};

/// Smooth one-sided step: 0 for t <= 0, 1 for t >= 1.
double smoothstep_c0(double t);

/// chi_Z with sum_gamma tau_gamma chi_Z = 1 over the integer lattice:
/// a plateau (1 on [-1/2,1/2]^n, support (-3/4,3/4)^n) normalized by its
/// periodized sum. Centered at `center` (defaults to L/2 per axis).
Window unit_cover_window(const GridSpec& g, const std::vector<double>& center = {});

/// Diagonal lattice Gamma = (+) d_a Z. The spacing must tile the period and
/// land on sample points so lattice translates are exact shifts.
struct Lattice {
  std::vector<double> spacing;  // d_a per axis

  static Lattice integers(int n) { return Lattice{std::vector<double>(static_cast<std::size_t>(n), 1.0)}; }

  /// All lattice points inside [0,L)^n as per-axis sample offsets.
  std::vector<std::vector<long long>> sample_offsets(const GridSpec& g) const;
};

/// The h_i / chi_i construction: 3^n pieces from a cube plateau profile,
/// normalized by the periodized sum so that sum_i chi_i = 1 and
/// sum_gamma tau_gamma h = 1 on the grid.
struct PartitionOfUnity {
  std::vector<Window> pieces;       // h_i, supported in x_i + [1/4,3/4]^n
  std::vector<Field> chi;           // chi_i = sum_gamma tau_gamma h_i (Z^n-periodic)
  Field aggregate;                  // h = sum_i h_i
  std::vector<std::vector<double>> centers;

  static PartitionOfUnity build(const GridSpec& g);
};

}  // namespace kh
