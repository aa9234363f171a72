#include "khspace/amalgam.hpp"

#include <cmath>
#include <stdexcept>

namespace kh {

namespace {

// Circular shift by integer sample offsets (exact translation).
Field shift_samples(const Field& u, const long long* off) {
  const GridSpec& g = u.grid;
  Field out(g, u.domain);
  int ix[max_dim];
  int jx[max_dim];
  for (std::size_t i = 0; i < out.size(); ++i) {
    g.unflatten(i, ix);
    for (int a = 0; a < g.n; ++a) jx[a] = g.wrap_index(ix[a] - off[a]);
    out.samples[i] = u.samples[g.flatten(jx)];
  }
  return out;
}

double windowed_bk_norm(const Field& u, const Field& chi_shifted, const std::vector<double>& kgrid) {
  Field prod = pointwise_mul(u, chi_shifted);
  Field spec = dft(prod);
  return norm_from_spectrum(spec, kgrid, 2.0);
}

double reduce_lp(const std::vector<double>& vals, double p, double cell) {
  if (std::isinf(p)) {
    double m = 0.0;
    for (double v : vals) m = std::max(m, v);
    return m;
  }
  double acc = 0.0;
  for (double v : vals) acc += std::pow(v, p);
  return std::pow(acc * cell, 1.0 / p);
}

}  // namespace

std::vector<double> window_norm_map(const Field& u, const Window& chi, const Weight& k,
                                    const std::vector<std::vector<double>>& ys) {
  auto kg = weight_on_grid(k, u.grid);
  std::vector<double> out;
  out.reserve(ys.size());
  for (const auto& y : ys) {
    Field shifted = translate(chi.field, y);
    out.push_back(windowed_bk_norm(u, shifted, kg));
  }
  return out;
}

AmalgamNormResult amalgam_norm(const Field& u, const Window& chi, const Weight& k, double p,
                               AmalgamMode mode, const Lattice* gamma) {
  if (!(u.grid == chi.field.grid)) throw std::invalid_argument("window grid mismatch");
  if (!(p >= 1.0)) throw std::invalid_argument("p must be in [1, inf]");
  const GridSpec& g = u.grid;
  auto kg = weight_on_grid(k, g);

  std::vector<double> norms;
  if (mode == AmalgamMode::continuous) {
    norms.reserve(g.size());
    long long off[max_dim];
    int yx[max_dim];
    for (std::size_t y = 0; y < g.size(); ++y) {
      g.unflatten(y, yx);
      for (int a = 0; a < g.n; ++a) off[a] = yx[a];
      Field shifted = shift_samples(chi.field, off);
      norms.push_back(windowed_bk_norm(u, shifted, kg));
    }
    return AmalgamNormResult{reduce_lp(norms, p, g.cell_volume()), p, mode};
  }

  Lattice lat = gamma ? *gamma : Lattice::integers(g.n);
  auto pts = lat.sample_offsets(g);

  // Psi_{Gamma,chi} = sum_gamma |tau_gamma chi|^2 must be positive on the grid.
  {
    std::vector<double> psi(g.size(), 0.0);
    for (const auto& off : pts) {
      Field shifted = shift_samples(chi.field, off.data());
      for (std::size_t i = 0; i < g.size(); ++i) psi[i] += std::norm(shifted.samples[i]);
    }
    for (double v : psi)
      if (!(v > 0.0)) throw std::invalid_argument("lattice mode rejected: Psi_{Gamma,chi} is not positive");
  }

  norms.reserve(pts.size());
  for (const auto& off : pts) {
    Field shifted = shift_samples(chi.field, off.data());
    norms.push_back(windowed_bk_norm(u, shifted, kg));
  }
  return AmalgamNormResult{reduce_lp(norms, p, 1.0), p, mode};
}

double amalgam_norm_value(const Field& u, const Window& chi, const Weight& k, double p,
                          AmalgamMode mode, const Lattice* gamma) {
  return amalgam_norm(u, chi, k, p, mode, gamma).value;
}

RatioReport window_equivalence_report(const std::vector<Field>& corpus, const Window& chi,
                                      const Window& chit, const Weight& k, double p,
                                      AmalgamMode mode) {
  RatioReport rep;
  for (const auto& u : corpus) {
    double a = amalgam_norm_value(u, chi, k, p, mode);
    if (a == 0.0) {
      ++rep.skipped;
      continue;
    }
    double b = amalgam_norm_value(u, chit, k, p, mode);
    double r = b / a;
    rep.min_ratio = std::min(rep.min_ratio, r);
    rep.max_ratio = std::max(rep.max_ratio, r);
    ++rep.counted;
  }
  return rep;
}

double frame_decompose_ratio(const Field& u, const PartitionOfUnity& P, const Weight& k) {
  const GridSpec& g = u.grid;
  auto kg = weight_on_grid(k, g);
  double denom = bpk_norm_value(u, k, 2.0);
  if (denom == 0.0) throw std::invalid_argument("frame ratio undefined for the zero field");

  auto pts = Lattice::integers(g.n).sample_offsets(g);
  double acc = 0.0;
  for (const auto& piece : P.pieces) {
    for (const auto& off : pts) {
      Field shifted = shift_samples(piece.field, off.data());
      double s = windowed_bk_norm(u, shifted, kg);
      acc += s * s;
    }
  }
  return std::sqrt(acc) / denom;
}

double retraction_roundtrip_residual(const Field& u, const Window& chi_z, const Window& chi,
                                     const Weight& k) {
  const GridSpec& g = u.grid;
  if (!(chi_z.field.grid == g) || !(chi.field.grid == g)) throw std::invalid_argument("grid mismatch");
  auto pts = Lattice::integers(g.n).sample_offsets(g);

  // chi must equal 1 wherever chi_Z is supported (within a small margin).
  {
    double peak = sup_norm(chi_z.field);
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (std::abs(chi_z.field.samples[i]) > 1e-14 * peak &&
          std::abs(chi.field.samples[i] - 1.0) > 1e-10)
        throw std::invalid_argument("retraction rejected: chi != 1 on supp chi_Z");
    }
  }
  // sum_gamma tau_gamma chi_Z = 1.
  {
    std::vector<cplx> total(g.size(), cplx{0.0, 0.0});
    for (const auto& off : pts) {
      Field shifted = shift_samples(chi_z.field, off.data());
      for (std::size_t i = 0; i < g.size(); ++i) total[i] += shifted.samples[i];
    }
    for (const auto& v : total)
      if (std::abs(v - 1.0) > 1e-10) throw std::invalid_argument("chi_Z translates do not sum to 1");
  }

  Field recon(g, Domain::space);
  for (const auto& off : pts) {
    Field sz = shift_samples(chi_z.field, off.data());
    Field sc = shift_samples(chi.field, off.data());
    Field piece = pointwise_mul(pointwise_mul(sz, u), sc);
    recon = recon + piece;
  }
  double denom = bpk_norm_value(u, k, 2.0);
  if (denom == 0.0) return 0.0;
  return bpk_norm_value(recon - u, k, 2.0) / denom;
}

BoundCheck convolution_bound_check(const Field& phi, const Field& u, const Window& chi,
                                   const Weight& k) {
  Field conv = convolve(phi, u);
  BoundCheck chk;
  chk.actual = amalgam_norm_value(conv, chi, k, INFINITY);
  chk.bound = l1_norm(phi) * amalgam_norm_value(u, chi, k, INFINITY);
  chk.pass = chk.actual <= chk.bound * (1.0 + 1e-8);
  return chk;
}

MollifierConvergence mollifier_convergence_check(const Field& u, const Weight& k, const Weight& kprime,
                                                 const std::vector<double>& epsilons, const Window& chi) {
  MollifierConvergence out;
  const GridSpec& g = u.grid;

  // k'/k should decay toward the grid boundary by at least a factor 10.
  double edge = g.freq_step() * (g.M / 2);
  std::vector<double> zero(static_cast<std::size_t>(g.n), 0.0);
  std::vector<double> corner(static_cast<std::size_t>(g.n), -edge);
  double r0 = kprime.eval(zero) / k.eval(zero);
  double re = kprime.eval(corner) / k.eval(corner);
  out.edge_ratio = re / r0;
  out.ratio_warning = !(re <= r0 / 10.0);

  for (double eps : epsilons) {
    Field diff = mollify(u, eps) - u;
    out.errors.push_back(amalgam_norm_value(diff, chi, kprime, INFINITY));
  }
  return out;
}

double frame_constant(const Field& phi, const Weight& k, const std::vector<double>& theta) {
  const GridSpec& g = phi.grid;
  detail::require_integer_lattice(g);
  GrowthCertificate cert = k.certificate();
  const int L = static_cast<int>(std::round(g.L));
  Field phihat = dft(phi);

  // Bins at 2pi gamma + theta: indices congruent to theta's bin modulo L.
  long long tbin[max_dim];
  for (int a = 0; a < g.n; ++a) {
    double b = theta[static_cast<std::size_t>(a)] / g.freq_step();
    double r = std::round(b);
    if (std::abs(b - r) > 1e-9) throw std::invalid_argument("theta must lie on the frequency lattice");
    tbin[a] = static_cast<long long>(r);
  }

  double acc = 0.0;
  int ix[max_dim];
  double xi[max_dim];
  for (std::size_t i = 0; i < phihat.size(); ++i) {
    g.unflatten(i, ix);
    bool on = true;
    for (int a = 0; a < g.n; ++a) {
      long long d = g.signed_index(ix[a]) - tbin[a];
      if (((d % L) + L) % L != 0) { on = false; break; }
    }
    if (!on) continue;
    g.freqs(i, xi);
    double r2 = 0.0;
    for (int a = 0; a < g.n; ++a) r2 += xi[a] * xi[a];
    acc += std::pow(std::sqrt(1.0 + r2), cert.N) * std::abs(phihat.samples[i]);
  }
  return cert.C * acc;
}

}  // namespace kh
