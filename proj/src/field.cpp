#include "khspace/field.hpp"

#include <fftw3.h>

#include <cmath>
#include <stdexcept>

namespace kh {

namespace {

void require_same_grid(const Field& u, const Field& v) {
  if (!(u.grid == v.grid)) throw std::invalid_argument("field grids differ");
}

void require_domain(const Field& u, Domain d, const char* what) {
  if (u.domain != d) throw std::invalid_argument(std::string(what) + ": wrong domain tag");
}

}  // namespace

namespace detail {

void require_integer_lattice(const GridSpec& g) {
  double Lr = std::round(g.L);
  if (std::abs(g.L - Lr) > 1e-12 || Lr < 1.0) throw std::invalid_argument("grid period must be a positive integer");
  int L = static_cast<int>(Lr);
  if (g.M % L != 0) throw std::invalid_argument("M must be divisible by the integer period");
}

int unit_shift_samples(const GridSpec& g) {
  require_integer_lattice(g);
  return g.M / static_cast<int>(std::round(g.L));
}

}  // namespace detail

Field dft(const Field& u) {
  require_domain(u, Domain::space, "dft");
  Field out = u;
  detail::fft_all(out.samples.data(), out.grid, FFTW_FORWARD);
  const double scale = u.grid.cell_volume();
  for (auto& z : out.samples) z *= scale;
  out.domain = Domain::frequency;
  return out;
}

Field idft(const Field& uhat) {
  require_domain(uhat, Domain::frequency, "idft");
  Field out = uhat;
  detail::fft_all(out.samples.data(), out.grid, FFTW_BACKWARD);
  const double scale = 1.0 / std::pow(uhat.grid.L, uhat.grid.n);
  for (auto& z : out.samples) z *= scale;
  out.domain = Domain::space;
  return out;
}

Field translate(const Field& u, const std::vector<double>& a) {
  require_domain(u, Domain::space, "translate");
  const GridSpec& g = u.grid;
  if (static_cast<int>(a.size()) != g.n) throw std::invalid_argument("translate: shift dimension mismatch");

  // On-grid shifts are exact sample permutations.
  bool on_grid = true;
  long long shift[max_dim] = {0, 0, 0, 0};
  for (int ax = 0; ax < g.n; ++ax) {
    double cells = a[ax] / g.spacing();
    double r = std::round(cells);
    if (std::abs(cells - r) > 1e-9) { on_grid = false; break; }
    shift[ax] = static_cast<long long>(r);
  }
  if (on_grid) {
    Field out(g, Domain::space);
    int ix[max_dim];
    int jx[max_dim];
    for (std::size_t i = 0; i < out.size(); ++i) {
      g.unflatten(i, ix);
      for (int ax = 0; ax < g.n; ++ax) jx[ax] = g.wrap_index(ix[ax] - shift[ax]);
      out.samples[i] = u.samples[g.flatten(jx)];
    }
    return out;
  }

  Field spec = dft(u);
  double xi[max_dim];
  for (std::size_t i = 0; i < spec.size(); ++i) {
    spec.grid.freqs(i, xi);
    double phase = 0.0;
    for (int ax = 0; ax < g.n; ++ax) phase -= a[ax] * xi[ax];
    spec.samples[i] *= cplx{std::cos(phase), std::sin(phase)};
  }
  return idft(spec);
}

Field derivative(const Field& u, int axis) {
  require_domain(u, Domain::space, "derivative");
  if (axis < 0 || axis >= u.grid.n) throw std::invalid_argument("derivative: bad axis");
  Field spec = dft(u);
  double xi[max_dim];
  for (std::size_t i = 0; i < spec.size(); ++i) {
    spec.grid.freqs(i, xi);
    spec.samples[i] *= cplx{0.0, xi[axis]};
  }
  return idft(spec);
}

Field pointwise_mul(const Field& u, const Field& v) {
  require_same_grid(u, v);
  if (u.domain != v.domain) throw std::invalid_argument("pointwise_mul: domain mismatch");
  Field out = u;
  for (std::size_t i = 0; i < out.size(); ++i) out.samples[i] *= v.samples[i];
  return out;
}

Field reverse(const Field& u) {
  Field out(u.grid, u.domain);
  const GridSpec& g = u.grid;
  int ix[max_dim];
  int jx[max_dim];
  for (std::size_t i = 0; i < out.size(); ++i) {
    g.unflatten(i, ix);
    for (int ax = 0; ax < g.n; ++ax) jx[ax] = g.wrap_index(-static_cast<long long>(ix[ax]));
    out.samples[i] = u.samples[g.flatten(jx)];
  }
  return out;
}

Field convolve(const Field& u, const Field& v) {
  require_same_grid(u, v);
  require_domain(u, Domain::space, "convolve");
  require_domain(v, Domain::space, "convolve");
  Field a = dft(u);
  Field b = dft(v);
  for (std::size_t i = 0; i < a.size(); ++i) a.samples[i] *= b.samples[i];
  return idft(a);
}

Field operator+(const Field& u, const Field& v) {
  require_same_grid(u, v);
  Field out = u;
  for (std::size_t i = 0; i < out.size(); ++i) out.samples[i] += v.samples[i];
  return out;
}

Field operator-(const Field& u, const Field& v) {
  require_same_grid(u, v);
  Field out = u;
  for (std::size_t i = 0; i < out.size(); ++i) out.samples[i] -= v.samples[i];
  return out;
}

Field operator*(cplx c, const Field& u) {
  Field out = u;
  for (auto& z : out.samples) z *= c;
  return out;
}

cplx pairing(const Field& u, const Field& v) {
  require_same_grid(u, v);
  cplx s{0.0, 0.0};
  for (std::size_t i = 0; i < u.size(); ++i) s += u.samples[i] * v.samples[i];
  return s * u.grid.cell_volume();
}

double l1_norm(const Field& u) {
  double s = 0.0;
  for (const auto& z : u.samples) s += std::abs(z);
  return s * u.grid.cell_volume();
}

double l2_norm(const Field& u) {
  double s = 0.0;
  for (const auto& z : u.samples) s += std::norm(z);
  return std::sqrt(s * u.grid.cell_volume());
}

double sup_norm(const Field& u) {
  double s = 0.0;
  for (const auto& z : u.samples) s = std::max(s, std::abs(z));
  return s;
}

Field mollifier_bump(const GridSpec& g, double eps) {
  if (!(eps > 0.0) || eps > 1.0) throw std::invalid_argument("mollifier scale must be in (0,1]");
  Field phi(g, Domain::space);
  double x[max_dim];
  double mass = 0.0;
  for (std::size_t i = 0; i < phi.size(); ++i) {
    g.coords(i, x);
    double r2 = 0.0;
    for (int ax = 0; ax < g.n; ++ax) {
      double d = g.torus_delta(x[ax], 0.0) / eps;
      r2 += d * d;
    }
    double v = r2 < 1.0 ? std::exp(-1.0 / (1.0 - r2)) : 0.0;
    phi.samples[i] = v;
    mass += v;
  }
  mass *= g.cell_volume();
  if (!(mass > 0.0)) throw std::domain_error("mollifier bump has no mass on this grid");
  for (auto& z : phi.samples) z /= mass;
  return phi;
}

Field mollify(const Field& u, double eps) {
  require_domain(u, Domain::space, "mollify");
  Field phi = mollifier_bump(u.grid, eps);
  return convolve(phi, u);
}

FubiniResiduals fubini_identity_check(const Field& u, const Field& phi, const Field& psi) {
  require_same_grid(u, phi);
  require_same_grid(u, psi);
  const GridSpec& g = u.grid;
  const double cell = g.cell_volume();

  // (int psi) <u, phi> vs int <u, phi tau_y psi> dy, both sides by direct sums.
  cplx int_psi{0.0, 0.0};
  for (const auto& z : psi.samples) int_psi += z;
  int_psi *= cell;
  cplx lhs1 = int_psi * pairing(u, phi);

  int ix[max_dim];
  int jx[max_dim];
  cplx rhs1{0.0, 0.0};
  cplx rhs2{0.0, 0.0};
  std::vector<cplx> shifted(g.size());
  for (std::size_t y = 0; y < g.size(); ++y) {
    int yix[max_dim];
    g.unflatten(y, yix);
    // tau_y psi as an exact circular shift
    for (std::size_t i = 0; i < g.size(); ++i) {
      g.unflatten(i, ix);
      for (int ax = 0; ax < g.n; ++ax) jx[ax] = g.wrap_index(ix[ax] - yix[ax]);
      shifted[i] = psi.samples[g.flatten(jx)];
    }
    cplx py{0.0, 0.0};
    cplx qy{0.0, 0.0};
    for (std::size_t i = 0; i < g.size(); ++i) {
      py += u.samples[i] * phi.samples[i] * shifted[i];
      qy += u.samples[i] * shifted[i];
    }
    rhs1 += py * cell;
    rhs2 += phi.samples[y] * qy * cell;
  }
  rhs1 *= cell;
  rhs2 *= cell;

  cplx lhs2 = pairing(u, convolve(phi, psi));
  return FubiniResiduals{std::abs(lhs1 - rhs1), std::abs(lhs2 - rhs2)};
}

double boundary_tail_fraction(const Field& u, double inner_fraction) {
  const GridSpec& g = u.grid;
  double x[max_dim];
  double total = 0.0;
  double outer = 0.0;
  const double cutoff = inner_fraction * g.L / 2.0;
  const double mid = g.L / 2.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    g.coords(i, x);
    double dist = 0.0;
    for (int ax = 0; ax < g.n; ++ax) dist = std::max(dist, std::abs(g.torus_delta(x[ax], mid)));
    double m = std::norm(u.samples[i]);
    total += m;
    if (dist > cutoff) outer += m;
  }
  return total > 0.0 ? std::sqrt(outer / total) : 0.0;
}

PoissonReport poisson_periodization_check(const Field& phi, const std::vector<double>& theta) {
  require_domain(phi, Domain::space, "poisson_periodization_check");
  const GridSpec& g = phi.grid;
  detail::require_integer_lattice(g);
  if (static_cast<int>(theta.size()) != g.n) throw std::invalid_argument("theta dimension mismatch");

  const int L = static_cast<int>(std::round(g.L));
  const int cells = detail::unit_shift_samples(g);

  // theta must sit on the frequency lattice so the shifted lattice hits bins.
  long long tbin[max_dim];
  for (int ax = 0; ax < g.n; ++ax) {
    double b = theta[ax] / g.freq_step();
    double r = std::round(b);
    if (std::abs(b - r) > 1e-9) throw std::invalid_argument("theta must lie on the frequency lattice");
    tbin[ax] = static_cast<long long>(r);
  }

  double tail = boundary_tail_fraction(phi);
  bool warn = tail > 1e-12;

  // phi_theta = sum over integer lattice points of the torus.
  Field ptheta(g, Domain::space);
  int gamma[max_dim] = {0, 0, 0, 0};
  std::vector<int> counts(static_cast<std::size_t>(g.n), L);
  int ix[max_dim];
  int jx[max_dim];
  while (true) {
    double phase = 0.0;
    for (int ax = 0; ax < g.n; ++ax) phase += gamma[ax] * theta[ax];
    cplx w{std::cos(phase), std::sin(phase)};
    for (std::size_t i = 0; i < g.size(); ++i) {
      g.unflatten(i, ix);
      for (int ax = 0; ax < g.n; ++ax) jx[ax] = g.wrap_index(ix[ax] - static_cast<long long>(gamma[ax]) * cells);
      ptheta.samples[i] += w * phi.samples[g.flatten(jx)];
    }
    int ax = g.n - 1;
    while (ax >= 0 && ++gamma[ax] == counts[static_cast<std::size_t>(ax)]) gamma[ax--] = 0;
    if (ax < 0) break;
  }

  Field T = dft(ptheta);
  Field phihat = dft(phi);
  const double Ln = std::pow(g.L, g.n);

  // A bin is on the shifted lattice iff its index is congruent to theta's bin mod L
  // (lattice spacing 2pi corresponds to L frequency bins).
  double peak = 0.0;
  for (const auto& z : T.samples) peak = std::max(peak, std::abs(z));
  if (peak == 0.0) peak = 1.0;

  double off_max = 0.0;
  double on_err = 0.0;
  for (std::size_t i = 0; i < T.size(); ++i) {
    g.unflatten(i, ix);
    bool on = true;
    for (int ax = 0; ax < g.n; ++ax) {
      long long d = g.signed_index(ix[ax]) - tbin[ax];
      if (((d % L) + L) % L != 0) { on = false; break; }
    }
    if (on) {
      on_err = std::max(on_err, std::abs(T.samples[i] - Ln * phihat.samples[i]));
    } else {
      off_max = std::max(off_max, std::abs(T.samples[i]));
    }
  }
  return PoissonReport{off_max / peak, on_err / peak, warn, tail};
}

}  // namespace kh
