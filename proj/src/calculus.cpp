#include "khspace/calculus.hpp"

#include <cmath>
#include <stdexcept>

namespace kh {

DomainSpec DomainSpec::entire(int d) {
  DomainSpec dom;
  dom.d = d;
  dom.contains = [](const cvec&) { return true; };
  dom.exact_dist = [](const cvec&) { return INFINITY; };
  return dom;
}

DomainSpec DomainSpec::disc(cplx center, double radius) {
  DomainSpec dom;
  dom.d = 1;
  dom.contains = [center, radius](const cvec& z) { return std::abs(z[0] - center) < radius; };
  dom.exact_dist = [center, radius](const cvec& z) { return radius - std::abs(z[0] - center); };
  return dom;
}

DomainSpec DomainSpec::half_plane(double re_min) {
  DomainSpec dom;
  dom.d = 1;
  dom.contains = [re_min](const cvec& z) { return z[0].real() > re_min; };
  dom.exact_dist = [re_min](const cvec& z) { return z[0].real() - re_min; };
  return dom;
}

DomainSpec DomainSpec::annulus(double rmin) {
  DomainSpec dom;
  dom.d = 1;
  dom.contains = [rmin](const cvec& z) { return std::abs(z[0]) > rmin; };
  dom.exact_dist = [rmin](const cvec& z) { return std::abs(z[0]) - rmin; };
  return dom;
}

DomainSpec DomainSpec::product(const DomainSpec& a, const DomainSpec& b) {
  DomainSpec dom;
  dom.d = a.d + b.d;
  int da = a.d;
  dom.contains = [a, b, da](const cvec& z) {
    cvec za(z.begin(), z.begin() + da);
    cvec zb(z.begin() + da, z.end());
    return a.contains(za) && b.contains(zb);
  };
  if (a.exact_dist && b.exact_dist) {
    dom.exact_dist = [a, b, da](const cvec& z) {
      cvec za(z.begin(), z.begin() + da);
      cvec zb(z.begin() + da, z.end());
      return std::min(a.exact_dist(za), b.exact_dist(zb));
    };
  }
  return dom;
}

HolomorphicMap HolomorphicMap::by_name(const std::string& name, double margin) {
  HolomorphicMap m;
  m.d = 1;
  if (name == "identity") {
    m.apply = [](const cvec& z) { return z[0]; };
    m.domain = DomainSpec::entire(1);
    m.partials = {[](const cvec&) { return cplx{1.0, 0.0}; }};
  } else if (name == "reciprocal") {
    m.apply = [](const cvec& z) { return 1.0 / z[0]; };
    m.domain = DomainSpec::annulus(margin);
    m.partials = {[](const cvec& z) { return -1.0 / (z[0] * z[0]); }};
  } else if (name == "square") {
    m.apply = [](const cvec& z) { return z[0] * z[0]; };
    m.domain = DomainSpec::entire(1);
    m.partials = {[](const cvec& z) { return 2.0 * z[0]; }};
  } else if (name == "exp_minus_one") {
    m.apply = [](const cvec& z) { return std::exp(z[0]) - 1.0; };
    m.domain = DomainSpec::entire(1);
    m.partials = {[](const cvec& z) { return std::exp(z[0]); }};
  } else if (name == "principal_log") {
    m.apply = [](const cvec& z) { return std::log(z[0]); };
    m.domain = DomainSpec::half_plane(margin);
    m.partials = {[](const cvec& z) { return 1.0 / z[0]; }};
  } else {
    throw std::invalid_argument("unknown holomorphic map: " + name);
  }
  return m;
}

namespace {

constexpr int probe_directions = 16;

double directional_exit(const DomainSpec& dom, const cvec& z, int coord, double theta, double cap) {
  cvec probe = z;
  cplx dir{std::cos(theta), std::sin(theta)};
  // Bracket the boundary crossing by doubling.
  double lo = 0.0;
  double hi = 1e-3 * cap;
  bool exited = false;
  for (int it = 0; it < 64 && hi <= cap; ++it) {
    probe[static_cast<std::size_t>(coord)] = z[static_cast<std::size_t>(coord)] + hi * dir;
    if (!dom.contains(probe)) {
      exited = true;
      break;
    }
    lo = hi;
    hi *= 2.0;
  }
  if (!exited) return INFINITY;
  while (hi - lo > 1e-6 * hi) {
    double mid = 0.5 * (lo + hi);
    probe[static_cast<std::size_t>(coord)] = z[static_cast<std::size_t>(coord)] + mid * dir;
    if (dom.contains(probe))
      lo = mid;
    else
      hi = mid;
  }
  return hi;
}

}  // namespace

double domain_distance(const DomainSpec& dom, const cvec& z, bool prefer_exact) {
  if (!dom.contains(z)) return 0.0;
  if (prefer_exact && dom.exact_dist) return dom.exact_dist(z);
  double zmax = 0.0;
  for (const auto& c : z) zmax = std::max(zmax, std::abs(c));
  const double cap = 8.0 * (1.0 + zmax);
  double best = INFINITY;
  for (int coord = 0; coord < dom.d; ++coord) {
    for (int m = 0; m < probe_directions; ++m) {
      double theta = two_pi * m / probe_directions;
      best = std::min(best, directional_exit(dom, z, coord, theta, cap));
    }
  }
  return std::min(best, cap);
}

double range_distance(const std::vector<Field>& u, const DomainSpec& dom) {
  if (u.empty() || static_cast<int>(u.size()) != dom.d) throw std::invalid_argument("field count must match domain dimension");
  const GridSpec& g = u[0].grid;
  for (const auto& f : u)
    if (!(f.grid == g)) throw std::invalid_argument("component grids differ");

  cvec z(u.size());
  double best = INFINITY;
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (std::size_t c = 0; c < u.size(); ++c) z[c] = u[c].samples[i];
    if (!dom.contains(z)) {
      std::vector<double> x(static_cast<std::size_t>(g.n));
      g.coords(i, x.data());
      throw RangeViolation(x);
    }
    double zmax = 0.0;
    for (const auto& c : z) zmax = std::max(zmax, std::abs(c));
    // unbounded domains: cap so the contour scale stays finite
    best = std::min(best, std::min(domain_distance(dom, z), 8.0 * (1.0 + zmax)));
  }
  return best / 8.0;
}

CalderonResult calderon_apply(const HolomorphicMap& phi, const std::vector<Field>& u,
                              const std::vector<Field>& v, double r, const CalderonConfig& cfg) {
  const int d = phi.d;
  if (static_cast<int>(u.size()) != d || static_cast<int>(v.size()) != d)
    throw std::invalid_argument("component count must match map dimension");
  if (!(r > 0.0)) throw std::invalid_argument("contour scale r must be positive");
  if (cfg.contour_nodes < 16 || (cfg.contour_nodes & (cfg.contour_nodes - 1)) != 0)
    throw std::invalid_argument("contour nodes must be a power of two >= 16");
  if (d > 3 || (d == 3 && cfg.contour_nodes > 32)) throw std::invalid_argument("d <= 2 (d = 3 only with <= 32 nodes)");
  const GridSpec& g = u[0].grid;
  for (const auto& f : u)
    if (!(f.grid == g)) throw std::invalid_argument("component grids differ");
  for (const auto& f : v)
    if (!(f.grid == g)) throw std::invalid_argument("component grids differ");

  const int Mc = cfg.contour_nodes;
  const double rho = 3.0 * r;
  std::vector<cplx> nodes(static_cast<std::size_t>(Mc));
  for (int t = 0; t < Mc; ++t) {
    double th = two_pi * t / Mc;
    nodes[static_cast<std::size_t>(t)] = rho * cplx{std::cos(th), std::sin(th)};
  }

  // Preconditions: |u - v|_inf < r pointwise and v-range + closed 3r-polydisc
  // inside the domain.
  std::size_t gap_failures = 0;
  std::size_t domain_failures = 0;
  cvec z(static_cast<std::size_t>(d));
  for (std::size_t i = 0; i < g.size(); ++i) {
    double gap = 0.0;
    for (int c = 0; c < d; ++c) {
      z[static_cast<std::size_t>(c)] = v[static_cast<std::size_t>(c)].samples[i];
      gap = std::max(gap, std::abs(u[static_cast<std::size_t>(c)].samples[i] - z[static_cast<std::size_t>(c)]));
    }
    if (!(gap < r)) ++gap_failures;
    if (!(domain_distance(phi.domain, z) > rho)) ++domain_failures;
  }
  if (gap_failures > 0)
    throw std::domain_error("approximant gap >= r at " + std::to_string(gap_failures) + " grid points");
  if (domain_failures > 0)
    throw std::domain_error("v-polydisc leaves the domain at " + std::to_string(domain_failures) + " grid points");

  CalderonResult out;
  out.h = Field(g, Domain::space);
  const double warn_floor = 2.0 * r * (1.0 - 1e-6);

  cvec arg(static_cast<std::size_t>(d));
  std::vector<cplx> w(static_cast<std::size_t>(d));
  std::vector<int> t(static_cast<std::size_t>(d), 0);
  const double inv_nodes = 1.0 / std::pow(static_cast<double>(Mc), d);
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (int c = 0; c < d; ++c)
      w[static_cast<std::size_t>(c)] =
          u[static_cast<std::size_t>(c)].samples[i] - v[static_cast<std::size_t>(c)].samples[i];

    cplx acc{0.0, 0.0};
    std::fill(t.begin(), t.end(), 0);
    while (true) {
      cplx weight{1.0, 0.0};
      for (int c = 0; c < d; ++c) {
        const cplx zeta = nodes[static_cast<std::size_t>(t[static_cast<std::size_t>(c)])];
        const cplx den = zeta - w[static_cast<std::size_t>(c)];
        if (std::abs(den) < warn_floor) ++out.margin_warnings;
        weight *= zeta / den;
        arg[static_cast<std::size_t>(c)] = v[static_cast<std::size_t>(c)].samples[i] + zeta;
      }
      acc += phi.apply(arg) * weight;
      int c = d - 1;
      while (c >= 0 && ++t[static_cast<std::size_t>(c)] == Mc) t[static_cast<std::size_t>(c--)] = 0;
      if (c < 0) break;
    }
    out.h.samples[i] = acc * inv_nodes;
  }
  return out;
}

ApproximantResult smooth_approximant(const std::vector<Field>& u, const std::vector<double>& eps_list,
                                     double r, double norm_budget, const Weight& kprime,
                                     const Window& chi) {
  if (u.empty()) throw std::invalid_argument("empty component list");
  ApproximantResult best;
  bool found = false;
  double best_achieved = INFINITY;
  for (double eps : eps_list) {
    std::vector<Field> v;
    v.reserve(u.size());
    double gap = 0.0;
    for (const auto& comp : u) {
      Field m = mollify(comp, eps);
      gap = std::max(gap, amalgam_norm_value(m - comp, chi, kprime, INFINITY));
      v.push_back(std::move(m));
    }
    if (gap < best_achieved) best_achieved = gap;
    if (gap < norm_budget && (!found || eps < best.eps)) {
      found = true;
      best.v = std::move(v);
      best.eps = eps;
      best.norm_gap = gap;
    }
  }
  if (!found)
    throw std::domain_error("no mollifier scale met the budget (best " + std::to_string(best_achieved) + ")");
  double sup_gap = 0.0;
  for (std::size_t c = 0; c < u.size(); ++c) sup_gap = std::max(sup_gap, sup_norm(u[c] - best.v[c]));
  best.sup_gap = sup_gap;
  if (!(sup_gap < r))
    throw std::domain_error("approximant sup gap " + std::to_string(sup_gap) + " not below r");
  return best;
}

namespace {

// Mollifier ladder search in the sup norm; falls back to the grid mean when
// the field is nearly constant (the design default).
std::vector<Field> sup_gap_approximant(const std::vector<Field>& u, double r, double eps0) {
  const GridSpec& g = u[0].grid;
  std::vector<Field> consts;
  double gap = 0.0;
  for (const auto& comp : u) {
    cplx mean{0.0, 0.0};
    for (const auto& s : comp.samples) mean += s;
    mean /= static_cast<double>(comp.size());
    Field c(g, Domain::space);
    for (auto& s : c.samples) s = mean;
    gap = std::max(gap, sup_norm(comp - c));
    consts.push_back(std::move(c));
  }
  if (gap < 0.5 * r) return consts;

  for (double eps = eps0; eps > 1e-6; eps *= 0.5) {
    std::vector<Field> v;
    double worst = 0.0;
    for (const auto& comp : u) {
      Field m = mollify(comp, eps);
      worst = std::max(worst, sup_norm(m - comp));
      v.push_back(std::move(m));
    }
    if (worst < 0.5 * r) return v;
  }
  throw std::domain_error("could not build a smooth approximant within r/2");
}

}  // namespace

Field invert(const Field& u, double c, const CalderonConfig& cfg) {
  if (!(c > 0.0)) throw std::invalid_argument("modulus floor must be positive");
  for (const auto& s : u.samples)
    if (!(std::abs(s) >= c)) throw std::domain_error("invert rejected: |u| < c on the grid");

  HolomorphicMap recip = HolomorphicMap::by_name("reciprocal", c / 2.0);
  std::vector<Field> uu{u};
  double r = range_distance(uu, recip.domain);
  std::vector<Field> v = sup_gap_approximant(uu, r, cfg.mollifier_eps);
  CalderonResult res = calderon_apply(recip, uu, v, r, cfg);

  double worst = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i)
    worst = std::max(worst, std::abs(u.samples[i] * res.h.samples[i] - 1.0));
  if (worst > 1e-8)
    throw std::domain_error("invert postcondition failed: ||u/u - 1|| = " + std::to_string(worst));
  return res.h;
}

SpectrumResult joint_spectrum_membership(const std::vector<Field>& u, const cvec& lambda, double c,
                                         const CalderonConfig& cfg) {
  if (u.empty() || u.size() != lambda.size()) throw std::invalid_argument("lambda dimension mismatch");
  const GridSpec& g = u[0].grid;

  Field ulam(g, Domain::space);
  for (std::size_t i = 0; i < g.size(); ++i) {
    double acc = 0.0;
    for (std::size_t k = 0; k < u.size(); ++k) acc += std::norm(u[k].samples[i] - lambda[k]);
    ulam.samples[i] = acc;
  }

  double minval = INFINITY;
  std::size_t argmin = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    double v = ulam.samples[i].real();
    if (v < minval) {
      minval = v;
      argmin = i;
    }
  }

  SpectrumResult out;
  if (minval < c) {
    out.in_spectrum = true;
    out.nearest_x.resize(static_cast<std::size_t>(g.n));
    g.coords(argmin, out.nearest_x.data());
    return out;
  }

  Field w = invert(ulam, c, cfg);
  out.witnesses.reserve(u.size());
  for (std::size_t k = 0; k < u.size(); ++k) {
    Field vk(g, Domain::space);
    for (std::size_t i = 0; i < g.size(); ++i)
      vk.samples[i] = std::conj(u[k].samples[i] - lambda[k]) * w.samples[i];
    out.witnesses.push_back(std::move(vk));
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    cplx acc{0.0, 0.0};
    for (std::size_t k = 0; k < u.size(); ++k)
      acc += out.witnesses[k].samples[i] * (u[k].samples[i] - lambda[k]);
    worst = std::max(worst, std::abs(acc - 1.0));
  }
  out.identity_residual = worst;
  return out;
}

IdealCompositionReport ideal_composition_check(const HolomorphicMap& phi, const std::vector<Field>& u,
                                               const Weight& k, double p, const Window& chi,
                                               const CalderonConfig& cfg) {
  const int d = phi.d;
  if (static_cast<int>(u.size()) != d) throw std::invalid_argument("component count mismatch");
  cvec zero(static_cast<std::size_t>(d), cplx{0.0, 0.0});
  if (std::abs(phi.apply(zero)) > 1e-14) throw std::invalid_argument("ideal composition requires Phi(0) = 0");
  if (phi.partials.size() != static_cast<std::size_t>(d))
    throw std::invalid_argument("ideal composition requires the partial derivatives");

  const GridSpec& g = u[0].grid;
  double r = range_distance(u, phi.domain);
  std::vector<Field> v = sup_gap_approximant(u, r, cfg.mollifier_eps);
  IdealCompositionReport rep;
  rep.phi_u = calderon_apply(phi, u, v, r, cfg).h;
  rep.tail_mass = 0.0;
  for (const auto& comp : u) rep.tail_mass = std::max(rep.tail_mass, boundary_tail_fraction(comp));

  // Factorization residual with F by difference quotient, derivative branch
  // near z1 = 0.
  cvec z(static_cast<std::size_t>(d));
  cvec ztail(static_cast<std::size_t>(d));
  double worst = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (int cidx = 0; cidx < d; ++cidx) z[static_cast<std::size_t>(cidx)] = u[static_cast<std::size_t>(cidx)].samples[i];
    ztail = z;
    ztail[0] = cplx{0.0, 0.0};
    cplx phi_tail = phi.apply(ztail);
    cplx F;
    if (std::abs(z[0]) <= 1e-8) {
      F = phi.partials[0](ztail);
    } else {
      F = (phi.apply(z) - phi_tail) / z[0];
    }
    cplx recon = z[0] * F + phi_tail;
    worst = std::max(worst, std::abs(rep.phi_u.samples[i] - recon));
  }
  rep.factorization_residual = worst;

  // Membership proxy: embed into the doubled torus (same spacing) and compare
  // amalgam norms. The samples are recentred so the bump stays mid-torus.
  GridSpec g2(g.n, 2.0 * g.L, 2 * g.M);
  const int off = g.M / 2;
  std::vector<Field> u2;
  for (const auto& comp : u) {
    Field big(g2, Domain::space);
    // Baseline value = the map's fixed point at spatial infinity: use the
    // component value at the torus boundary (fields decay to a baseline).
    cplx baseline = comp.samples[0];
    for (auto& s : big.samples) s = baseline;
    int ix[max_dim];
    int jx[max_dim];
    for (std::size_t i = 0; i < comp.size(); ++i) {
      g.unflatten(i, ix);
      for (int a = 0; a < g.n; ++a) jx[a] = ix[a] + off;
      big.samples[g2.flatten(jx)] = comp.samples[i];
    }
    u2.push_back(std::move(big));
  }
  double r2 = range_distance(u2, phi.domain);
  std::vector<Field> v2 = sup_gap_approximant(u2, r2, cfg.mollifier_eps);
  Field phi_u2 = calderon_apply(phi, u2, v2, r2, cfg).h;

  std::vector<double> center2 = chi.center;
  for (auto& c : center2) c += g.L / 2.0;
  Window chi2 = Window::bump(g2, center2, chi.support_radius);
  double base = amalgam_norm_value(rep.phi_u, chi, k, p);
  double doubled = amalgam_norm_value(phi_u2, chi2, k, p);
  rep.norm_ratio = base > 0.0 ? doubled / base : (doubled == 0.0 ? 1.0 : INFINITY);
  rep.stable = std::abs(rep.norm_ratio - 1.0) <= 0.15;
  return rep;
}

}  // namespace kh
