#pragma once

#include "khspace/amalgam.hpp"

namespace kh {

/// Short-time transform values V(y, xi) = dft(u tau_y chi)(xi) with y on the
/// sample lattice. Layout: y index slow, xi index fast (both flat on the grid).
struct ShortTimeTransform {
  GridSpec base;
  std::vector<cplx> values;

  const cplx& at(std::size_t y_flat, std::size_t xi_flat) const {
    return values[y_flat * base.size() + xi_flat];
  }
};

ShortTimeTransform short_time_transform(const Field& u, const Window& chi);

/// U_{chi,p}(xi): sup_y |V| for p = inf, else (h^n sum_y |V|^p)^{1/p}.
std::vector<double> modulation_profile(const Field& u, const Window& chi, double p);

/// ||u||_{S_w^p, chi} = (dxi)^n sum_xi U_{chi,p}(xi).
double modulation_norm(const Field& u, const Window& chi, double p);

/// Count-normalized profile (sum_y |V|^p)^{1/p}, where l^p monotonicity in p
/// holds literally.
std::vector<double> modulation_profile_counting(const Field& u, const Window& chi, double p);

/// B_k^p -> S_w^p: actual = modulation norm with chi, bound =
/// (2pi)^{-n} C ||chi||_{H^N} ||1/k||_{L1-grid} ||u||_{k,p,chit} where
/// chit = 1 on supp chi.
BoundCheck embedding_check(const Field& u, const Window& chi, const Window& chit, const Weight& k,
                           double p);

/// Paired windows for the embedding hypothesis: a bump chi and a plateau
/// window equal to 1 on its support.
std::pair<Window, Window> embedding_window_pair(const GridSpec& g, const std::vector<double>& center,
                                                double radius);

}  // namespace kh
