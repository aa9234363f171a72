#pragma once

#include <functional>
#include <vector>

#include "khspace/grid.hpp"

namespace kh {

/// Complex samples of a function on a periodic grid, in space or frequency
/// domain. Frequency-domain fields store the quadrature approximation of the
/// Fourier integral: uhat(xi_j) = h^n sum_x e^{-i<x,xi_j>} u(x).
struct Field {
  GridSpec grid;
  Domain domain = Domain::space;
  std::vector<cplx> samples;

  Field() = default;
  Field(GridSpec g, Domain d) : grid(g), domain(d), samples(g.size(), cplx{0.0, 0.0}) {}

  static Field sample(const GridSpec& g, const std::function<cplx(const double*)>& f) {
    Field u(g, Domain::space);
    double x[max_dim];
    for (std::size_t i = 0; i < u.samples.size(); ++i) {
      g.coords(i, x);
      u.samples[i] = f(x);
    }
    return u;
  }

  std::size_t size() const { return samples.size(); }
  cplx& operator[](std::size_t i) { return samples[i]; }
  const cplx& operator[](std::size_t i) const { return samples[i]; }
};

Field dft(const Field& u);
Field idft(const Field& uhat);

/// u(. - a); exact circular shift for on-grid a, trigonometric interpolation
/// otherwise (modulation by e^{-i<a,xi>} on the spectrum).
Field translate(const Field& u, const std::vector<double>& a);
Field derivative(const Field& u, int axis);
Field pointwise_mul(const Field& u, const Field& v);
Field reverse(const Field& u);                       // x -> -x on the torus
Field convolve(const Field& u, const Field& v);      // circular, h^n-weighted
Field operator+(const Field& u, const Field& v);
Field operator-(const Field& u, const Field& v);
Field operator*(cplx c, const Field& u);

/// Bilinear pairing h^n sum u*v (no conjugation).
cplx pairing(const Field& u, const Field& v);

double l1_norm(const Field& u);  // h^n sum |u|
double l2_norm(const Field& u);  // (h^n sum |u|^2)^(1/2)
double sup_norm(const Field& u);

/// The normalized exponential bump at scale eps, sampled on the grid around
/// the origin (torus-symmetric) and renormalized so h^n sum = 1 exactly.
Field mollifier_bump(const GridSpec& g, double eps);

/// phi_eps * u computed spectrally; eps in (0, 1].
Field mollify(const Field& u, double eps);

struct FubiniResiduals {
  double tensor_identity;       // |(int psi)<u,phi> - int <u, phi tau_y psi> dy|
  double convolution_identity;  // |<u, phi*psi> - int phi(y) <u, tau_y psi> dy|
};
FubiniResiduals fubini_identity_check(const Field& u, const Field& phi, const Field& psi);

struct PoissonReport {
  double off_lattice_max;    // max |spectrum| off the shifted lattice, relative to peak
  double on_lattice_max_err; // max |spectrum - L^n phihat| on the lattice, relative to peak
  bool tail_warning;
  double tail_mass;
};
/// Forms phi_theta = sum_gamma e^{i<gamma,theta>} tau_gamma phi over integer
/// lattice points of the torus and checks its spectrum sits on {2pi gamma + theta}
/// with masses (2pi)^n phihat(2pi gamma + theta). Requires integer L dividing M
/// and theta on the frequency lattice.
PoissonReport poisson_periodization_check(const Field& phi, const std::vector<double>& theta);

/// Fraction of l2 mass outside the central part of the period (distance from
/// the torus midpoint above inner_fraction * L/2 in sup metric).
double boundary_tail_fraction(const Field& u, double inner_fraction = 0.5);

namespace detail {
void fft_axis(cplx* data, const GridSpec& g, int axis, int sign);  // raw, unnormalized
void fft_all(cplx* data, const GridSpec& g, int sign);
void require_integer_lattice(const GridSpec& g);  // integer L, M % L == 0
int unit_shift_samples(const GridSpec& g);        // samples per unit translation
}  // namespace detail

}  // namespace kh
