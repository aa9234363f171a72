#include "khspace/bspace.hpp"

#include <cmath>
#include <stdexcept>

namespace kh {

std::vector<double> weight_on_grid(const Weight& k, const GridSpec& g) {
  if (k.dim() != g.n) throw std::invalid_argument("weight dimension must match grid");
  std::vector<double> out(g.size());
  double xi[max_dim];
  for (std::size_t i = 0; i < out.size(); ++i) {
    g.freqs(i, xi);
    out[i] = k.eval(xi, g.n);
  }
  return out;
}

namespace {

void check_p(double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("p must be in [1, inf]");
}

double conjugate_exponent(double p) {
  if (std::isinf(p)) return 1.0;
  if (p == 1.0) return INFINITY;
  return p / (p - 1.0);
}

}  // namespace

double norm_from_spectrum(const Field& uhat, const std::vector<double>& kgrid, double p) {
  check_p(p);
  if (uhat.domain != Domain::frequency) throw std::invalid_argument("norm_from_spectrum expects a spectrum");
  if (kgrid.size() != uhat.size()) throw std::invalid_argument("weight grid size mismatch");
  double out;
  if (std::isinf(p)) {
    out = 0.0;
    for (std::size_t i = 0; i < uhat.size(); ++i) out = std::max(out, kgrid[i] * std::abs(uhat.samples[i]));
  } else if (p == 2.0) {
    double acc = 0.0;
    for (std::size_t i = 0; i < uhat.size(); ++i) {
      double t = kgrid[i];
      acc += t * t * std::norm(uhat.samples[i]);
    }
    out = std::sqrt(acc * uhat.grid.freq_cell_volume());
  } else {
    double acc = 0.0;
    for (std::size_t i = 0; i < uhat.size(); ++i) acc += std::pow(kgrid[i] * std::abs(uhat.samples[i]), p);
    out = std::pow(acc * uhat.grid.freq_cell_volume(), 1.0 / p);
  }
  if (!std::isfinite(out)) throw std::domain_error("B_{p,k} norm is non-finite (weight overflow)");
  return out;
}

BpkNormResult bpk_norm(const Field& u, const Weight& k, double p) {
  Field uhat = u.domain == Domain::frequency ? u : dft(u);
  auto kg = weight_on_grid(k, u.grid);
  return BpkNormResult{norm_from_spectrum(uhat, kg, p), p, u.grid};
}

double bpk_norm_value(const Field& u, const Weight& k, double p) { return bpk_norm(u, k, p).value; }

double holder_duality_gap(const Field& u, const Field& v, const Weight& k, double p) {
  check_p(p);
  if (std::isinf(p)) throw std::invalid_argument("duality gap requires p < inf");
  double pprime = conjugate_exponent(p);
  double nu = bpk_norm_value(u, k, p);
  Weight dual = k.reflect().pow(-1.0);  // 1/kcheck
  double nv = bpk_norm_value(v, dual, pprime);
  double lhs = std::pow(two_pi, -u.grid.n) * nu * nv;
  return lhs - std::abs(pairing(v, u));
}

BoundCheck multiplier_bound_check(const Field& phi, const Field& u, const Weight& k, double p) {
  if (!(phi.grid == u.grid)) throw std::invalid_argument("grids differ");
  GrowthCertificate cert = k.certificate();
  Field phihat = dft(phi);
  const GridSpec& g = u.grid;
  double xi[max_dim];
  double mkl1 = 0.0;  // ||M_k phihat||_1 on the grid
  for (std::size_t i = 0; i < phihat.size(); ++i) {
    g.freqs(i, xi);
    double r2 = 0.0;
    for (int a = 0; a < g.n; ++a) r2 += xi[a] * xi[a];
    mkl1 += cert.C * std::pow(std::sqrt(1.0 + r2), cert.N) * std::abs(phihat.samples[i]);
  }
  mkl1 *= g.freq_cell_volume();

  double nu = bpk_norm_value(u, k, p);
  BoundCheck chk;
  chk.bound = std::pow(two_pi, -g.n) * mkl1 * nu;
  chk.actual = bpk_norm_value(pointwise_mul(phi, u), k, p);
  chk.pass = chk.actual <= chk.bound * (1.0 + 1e-8);
  return chk;
}

double sobolev_norm(const Field& chi, double m) {
  Field chihat = chi.domain == Domain::frequency ? chi : dft(chi);
  const GridSpec& g = chi.grid;
  double xi[max_dim];
  double acc = 0.0;
  for (std::size_t i = 0; i < chihat.size(); ++i) {
    g.freqs(i, xi);
    double r2 = 0.0;
    for (int a = 0; a < g.n; ++a) r2 += xi[a] * xi[a];
    acc += std::pow(1.0 + r2, m) * std::norm(chihat.samples[i]);
  }
  return std::sqrt(acc * g.freq_cell_volume());
}

SobolevMultiplierConstant sobolev_multiplier_constant(const Field& chi, const Weight& k) {
  GrowthCertificate cert = k.certificate();
  const GridSpec& g = chi.grid;
  const int n = g.n;

  SobolevMultiplierConstant out;
  out.m_k = static_cast<int>(std::floor(cert.N + (n + 1) / 2.0)) + 1;
  out.l_k = static_cast<int>(std::floor(cert.N)) + n + 2;
  out.h_norm = sobolev_norm(chi, cert.N + (n + 1) / 2.0);

  // Schwarz factor ||<.>^{-(n+1)/2}||_{L2-grid}; exact discrete Cauchy-Schwarz
  // then gives (2pi)^{-n} ||M_k chihat||_1 <= value.
  double xi[max_dim];
  double acc = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    g.freqs(i, xi);
    double r2 = 0.0;
    for (int a = 0; a < n; ++a) r2 += xi[a] * xi[a];
    acc += std::pow(1.0 + r2, -(n + 1) / 2.0);
  }
  out.schwarz_factor = std::sqrt(acc * g.freq_cell_volume());
  out.value = std::pow(two_pi, -n) * cert.C * out.schwarz_factor * out.h_norm;
  return out;
}

PeriodicMultiplierCheck periodic_multiplier_check(const Field& chi_periodic, const Field& u,
                                                  const Weight& k, double p) {
  if (!(chi_periodic.grid == u.grid)) throw std::invalid_argument("grids differ");
  const GridSpec& g = u.grid;
  detail::require_integer_lattice(g);
  const int cells = detail::unit_shift_samples(g);  // samples per unit cell per axis

  // Verify Z^n-periodicity: shifting by one unit must reproduce the samples.
  {
    std::vector<double> one(static_cast<std::size_t>(g.n), 1.0);
    Field shifted = translate(chi_periodic, one);
    double scale = sup_norm(chi_periodic);
    for (std::size_t i = 0; i < g.size(); ++i)
      if (std::abs(shifted.samples[i] - chi_periodic.samples[i]) > 1e-9 * (scale + 1.0))
        throw std::invalid_argument("multiplier is not Z^n-periodic on this grid");
  }

  GrowthCertificate cert = k.certificate();

  // Fourier coefficients on the unit cell [0,1)^n: c_gamma for gamma in the
  // signed range [-cells/2, cells - cells/2). Direct DFT over cell samples.
  const double cellvol = std::pow(g.spacing(), g.n);
  const int glo = -cells / 2;
  const int ghi = cells - cells / 2;
  double coef_sum = 0.0;
  double max_coef = 0.0;
  double edge_coef = 0.0;
  int gamma[max_dim];
  for (int a = 0; a < g.n; ++a) gamma[a] = glo;
  int cx[max_dim];
  while (true) {
    cplx c{0.0, 0.0};
    for (int a = 0; a < g.n; ++a) cx[a] = 0;
    while (true) {
      double phase = 0.0;
      double xpt[max_dim];
      for (int a = 0; a < g.n; ++a) {
        xpt[a] = g.spacing() * cx[a];
        phase -= two_pi * gamma[a] * xpt[a];
      }
      int flat[max_dim];
      for (int a = 0; a < g.n; ++a) flat[a] = cx[a];
      c += chi_periodic.samples[g.flatten(flat)] * cplx{std::cos(phase), std::sin(phase)};
      int a = g.n - 1;
      while (a >= 0 && ++cx[a] == cells) cx[a--] = 0;
      if (a < 0) break;
    }
    c *= cellvol;

    double g2 = 0.0;
    bool edge = false;
    for (int a = 0; a < g.n; ++a) {
      double f = two_pi * gamma[a];
      g2 += f * f;
      if (cells > 2 && std::abs(gamma[a]) >= cells / 2 - 1) edge = true;
    }
    double mag = std::abs(c);
    coef_sum += cert.C * std::pow(std::sqrt(1.0 + g2), cert.N) * mag;
    max_coef = std::max(max_coef, mag);
    if (edge) edge_coef = std::max(edge_coef, mag);

    int a = g.n - 1;
    while (a >= 0 && ++gamma[a] == ghi) {
      gamma[a] = glo;
      --a;
    }
    if (a < 0) break;
  }

  PeriodicMultiplierCheck chk;
  chk.bound = coef_sum * bpk_norm_value(u, k, p);
  chk.actual = bpk_norm_value(pointwise_mul(chi_periodic, u), k, p);
  chk.pass = chk.actual <= chk.bound * (1.0 + 1e-8);
  chk.tail_warning = edge_coef > 1e-10 * (max_coef + 1e-300);
  return chk;
}

BoundCheck product_bound_check(const Field& u1, const Field& u2, const Weight& k1, const Weight& k2,
                               const Weight& k) {
  if (!(u1.grid == u2.grid)) throw std::invalid_argument("grids differ");
  AlgebraCheckReport cond = verify_product_condition(k1, k2, k, u1.grid);
  // The divergence flag concerns the continuum limit; the discrete inequality
  // only needs a finite constant on this grid's own lattice.
  if (!std::isfinite(cond.refined_constant))
    throw std::domain_error("convolution condition constant unavailable");

  BoundCheck chk;
  double c = cond.refined_constant;
  chk.bound = std::pow(two_pi, -u1.grid.n) * c * bpk_norm_value(u1, k1, 2.0) * bpk_norm_value(u2, k2, 2.0);
  chk.actual = bpk_norm_value(pointwise_mul(u1, u2), k, 2.0);
  chk.pass = chk.actual <= chk.bound * (1.0 + 1e-6);
  return chk;
}

double gradient_decomposition_residual(const Field& u, const Weight& k) {
  Weight kbar = k.lowered();
  double nk = bpk_norm_value(u, k, 2.0);
  double acc = bpk_norm_value(u, kbar, 2.0);
  acc *= acc;
  for (int a = 0; a < u.grid.n; ++a) {
    double d = bpk_norm_value(derivative(u, a), kbar, 2.0);
    acc += d * d;
  }
  double denom = nk * nk;
  if (denom == 0.0) return 0.0;
  return std::abs(denom - acc) / denom;
}

}  // namespace kh
