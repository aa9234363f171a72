// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one pass/fail line per criterion. Exit code 0 iff all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "khspace/amalgam.hpp"
#include "khspace/bspace.hpp"
#include "khspace/calculus.hpp"
#include "khspace/corpus.hpp"
#include "khspace/modwin.hpp"
#include "khspace/psido.hpp"

using namespace kh;

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();
constexpr std::uint64_t kSeed = 2024;

struct Criterion {
  bool pass = true;
  double value = 0.0;   // the measured quantity
  double tol = 0.0;     // the gate it was held to
  std::string detail;
};

int failures = 0;

void report(int id, const char* name, const Criterion& c, double seconds, double budget) {
  bool ok = c.pass && seconds < budget;
  if (!ok) ++failures;
  std::printf("[%2d] %s  %-28s value=%.3e tol=%.1e  (%.2fs < %.0fs)%s%s\n", id,
              ok ? "PASS" : "FAIL", name, c.value, c.tol, seconds, budget,
              c.detail.empty() ? "" : "  ", c.detail.c_str());
  std::fflush(stdout);
}

void run(int id, const char* name, double budget, const std::function<Criterion()>& fn) {
  auto t0 = std::chrono::steady_clock::now();
  Criterion c;
  try {
    c = fn();
  } catch (const std::exception& e) {
    c.pass = false;
    c.detail = std::string("exception: ") + e.what();
  }
  auto t1 = std::chrono::steady_clock::now();
  report(id, name, c, std::chrono::duration<double>(t1 - t0).count(), budget);
}

// ---------------------------------------------------------------------------

Criterion parseval_pin() {
  Criterion c;
  c.tol = 1e-12;
  GridSpec g(1, 16.0, 128);
  for (int i = 0; i < 100; ++i) {
    Field u = random_band_limited(g, mix_seed(kSeed, i), CorpusSpec{16, 0.8, false, 0.2});
    double space = 0.0;
    for (const auto& z : u.samples) space += std::norm(z);
    space *= g.cell_volume();
    Field uhat = dft(u);
    double freq = 0.0;
    for (const auto& z : uhat.samples) freq += std::norm(z);
    freq *= g.freq_cell_volume() * std::pow(two_pi, -g.n);
    c.value = std::max(c.value, std::abs(space - freq) / space);
  }
  c.pass = c.value <= c.tol;
  return c;
}

Criterion moderateness() {
  Criterion c;
  c.tol = 1.0;
  auto jb = [](double s) { return Weight::jbracket_power(1, s); };
  std::vector<Weight> catalog = {
      jb(1.0),
      jb(2.0),
      jb(-1.0),
      mul(jb(1.0), jb(2.0)),
      sup_of(jb(1.0), Weight::constant(1, 2.0)),
      add(jb(2.0), Weight::constant(1, 1.0)).pow(0.5).reflect(),
  };
  Rng rng(kSeed);
  int violations = 0;
  for (const auto& w : catalog) {
    std::vector<std::pair<std::vector<double>, std::vector<double>>> probes;
    probes.reserve(10000);
    for (int i = 0; i < 10000; ++i)
      probes.push_back({{16.0 * rng.symmetric()}, {16.0 * rng.symmetric()}});
    auto rep = verify_moderate(w, w.certificate(), probes);
    if (!rep.pass) ++violations;
    c.value = std::max(c.value, rep.worst_ratio);
  }
  c.pass = violations == 0 && c.value <= 1.0;
  c.detail = "violations=" + std::to_string(violations);
  return c;
}

Criterion ka_detection() {
  Criterion c;
  c.tol = 0.02;
  GridSpec probe(1, two_pi, 512);
  auto ok = verify_algebra_condition(Weight::jbracket_power(1, 1.0), probe);
  auto flagged = verify_algebra_condition(Weight::jbracket_power(1, 0.4), probe);
  c.value = std::abs(ok.refined_constant / ok.estimated_constant - 1.0);
  c.pass = ok.pass && !ok.divergence && c.value <= 0.02 && flagged.divergence;
  c.detail = "C=" + std::to_string(ok.refined_constant) +
             " s04_growth=" + std::to_string(flagged.growth);
  return c;
}

Criterion multiplier_inequality() {
  Criterion c;
  c.tol = 1.0 + 1e-8;
  GridSpec g(1, 16.0, 128);
  Weight k = Weight::jbracket_power(1, 2.0);
  int violations = 0;
  for (int i = 0; i < 200; ++i) {
    Field u = random_band_limited(g, mix_seed(kSeed, 1000 + i), CorpusSpec{12, 1.0, false, 0.0});
    Field phi = random_band_limited(g, mix_seed(kSeed, 2000 + i), CorpusSpec{4, 2.0, false, 0.0});
    for (double p : {1.0, 2.0, inf}) {
      auto chk = multiplier_bound_check(phi, u, k, p);
      if (!chk.pass) ++violations;
      if (chk.bound > 0.0) c.value = std::max(c.value, chk.actual / chk.bound);
    }
  }
  c.pass = violations == 0;
  c.detail = "violations=" + std::to_string(violations) + "/600";
  return c;
}

Criterion localization() {
  Criterion c;
  c.tol = 0.10;
  GridSpec g(1, 16.0, 128);
  Weight k = Weight::jbracket_power(1, 1.0);
  Window chi = Window::bump(g, {8.0}, 1.5);
  CorpusSpec spec{12, 1.0, false, 0.0};

  auto interval = [&](const GridSpec& grid, const Window& w, int count) {
    double lo = inf;
    double hi = 0.0;
    for (int i = 0; i < count; ++i) {
      Field u = random_band_limited(grid, mix_seed(kSeed, i), spec);
      double denom = bpk_norm_value(u, k, 2.0);
      if (denom == 0.0) continue;
      double r = amalgam_norm_value(u, w, k, 2.0) / denom;
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    return std::make_pair(lo, hi);
  };

  auto [lo, hi] = interval(g, chi, 200);
  auto [lo2, hi2] = interval(g, chi, 400);
  GridSpec gr(1, 16.0, 256);
  Window chir = Window::bump(gr, {8.0}, 1.5);
  auto [lom, him] = interval(gr, chir, 200);

  double corpus_drift = std::max(std::abs(lo2 / lo - 1.0), std::abs(hi2 / hi - 1.0));
  double grid_drift = std::max(std::abs(lom / lo - 1.0), std::abs(him / hi - 1.0));
  c.value = std::max(corpus_drift, grid_drift);
  c.pass = lo > 0.0 && c.value < 0.10;
  char buf[128];
  std::snprintf(buf, sizeof(buf), "interval=[%.4f,%.4f]", lo, hi);
  c.detail = buf;
  return c;
}

Criterion retraction() {
  Criterion c;
  c.tol = 1e-10;
  GridSpec g(1, 16.0, 128);
  Weight k = Weight::jbracket_power(1, 1.0);
  Window chi_z = unit_cover_window(g);
  Window cover = Window::plateau(g, chi_z.center, 0.8, 1.6);
  for (int i = 0; i < 50; ++i) {
    Field u = random_band_limited(g, mix_seed(kSeed, 3000 + i), CorpusSpec{12, 1.0, false, 0.0});
    c.value = std::max(c.value, retraction_roundtrip_residual(u, chi_z, cover, k));
  }
  c.pass = c.value <= c.tol;
  return c;
}

Criterion calderon() {
  Criterion c;
  c.tol = 1e-10;

  // (i) polynomial reproduction at Mc = 64
  GridSpec tiny(1, two_pi, 16);
  HolomorphicMap poly;
  poly.d = 1;
  poly.domain = DomainSpec::entire(1);
  poly.apply = [](const cvec& z) {
    cplx acc{0.0, 0.0};
    cplx p{1.0, 0.0};
    for (int k = 0; k <= 6; ++k) {
      acc += p * (1.0 + 0.25 * k);
      p *= z[0];
    }
    return acc;
  };
  CalderonConfig cfg;
  cfg.contour_nodes = 64;
  Rng rng(kSeed);
  double poly_err = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    cplx w = 0.95 * rng.unit_disc();
    cplx v0{0.3, -0.2};
    Field uu(tiny, Domain::space);
    Field vv(tiny, Domain::space);
    for (std::size_t i = 0; i < uu.size(); ++i) {
      uu.samples[i] = v0 + w;
      vv.samples[i] = v0;
    }
    Field h = calderon_apply(poly, {uu}, {vv}, 1.0, cfg).h;
    cvec arg{v0 + w};
    poly_err = std::max(poly_err, std::abs(h.samples[0] - poly.apply(arg)) / std::abs(poly.apply(arg)));
  }

  // (ii) invert 2 + sin against the pointwise reciprocal
  GridSpec g(1, 4.0 * pi, 256);
  Field u = Field::sample(g, [](const double* x) { return cplx{2.0 + std::sin(x[0]), 0.0}; });
  Field invu = invert(u, 1.0, cfg);
  double point_err = 0.0;
  double ident_err = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    point_err = std::max(point_err, std::abs(invu.samples[i] - 1.0 / u.samples[i]));
    ident_err = std::max(ident_err, std::abs(u.samples[i] * invu.samples[i] - 1.0));
  }

  // (iii) node doubling beyond 64 changes nothing
  CalderonConfig cfg2;
  cfg2.contour_nodes = 128;
  Field invu2 = invert(u, 1.0, cfg2);
  double drift = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i)
    drift = std::max(drift, std::abs(invu.samples[i] - invu2.samples[i]) / std::abs(invu2.samples[i]));

  c.pass = poly_err <= 1e-10 && point_err <= 1e-9 && ident_err <= 1e-8 && drift <= 1e-11;
  c.value = poly_err;
  char buf[160];
  std::snprintf(buf, sizeof(buf), "poly=%.1e inv=%.1e id=%.1e mc=%.1e", poly_err, point_err,
                ident_err, drift);
  c.detail = buf;
  return c;
}

Criterion joint_spectrum() {
  Criterion c;
  c.tol = 1e-8;
  GridSpec g(1, 4.0 * pi, 256);
  Field u = Field::sample(g, [](const double* x) { return cplx{2.0 + std::sin(x[0]), 0.0}; });
  Rng rng(kSeed ^ 0xabc);
  int resolvents = 0;
  int in_spec = 0;
  while (resolvents < 20) {
    cplx lam{8.0 * rng.symmetric(), 8.0 * rng.symmetric()};
    double dist2 = inf;
    for (double t = 1.0; t <= 3.0; t += 0.125) dist2 = std::min(dist2, std::norm(lam - t));
    if (dist2 < 1.0) continue;
    auto res = joint_spectrum_membership({u}, {lam}, 0.9);
    if (!res.in_spectrum) {
      ++resolvents;
      c.value = std::max(c.value, res.identity_residual);
    }
  }
  for (int i = 0; i < 20; ++i) {
    std::size_t idx = static_cast<std::size_t>(rng.uniform() * static_cast<double>(g.size()));
    auto res = joint_spectrum_membership({u}, {u.samples[idx]}, 0.9);
    if (res.in_spectrum) ++in_spec;
  }
  c.pass = c.value <= c.tol && in_spec == 20;
  c.detail = "onrange=" + std::to_string(in_spec) + "/20";
  return c;
}

Symbol2n acceptance_symbol(const GridSpec& base, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<cplx> cs(25);
  for (auto& z : cs) z = rng.unit_disc();
  const double L = base.L;
  return Symbol2n::sample(base, [L, cs](const double* x, const double* eta) {
    double dx = x[0] - L / 2.0;
    double envx = std::exp(-dx * dx / (2.0 * (L / 10.0) * (L / 10.0)));
    double enve = std::exp(-eta[0] * eta[0] / 8.0);
    cplx acc{0.0, 0.0};
    int idx = 0;
    for (int p = -2; p <= 2; ++p)
      for (int q = -2; q <= 2; ++q) {
        double phase = two_pi * p * x[0] / L + 0.5 * q * eta[0];
        acc += cs[static_cast<std::size_t>(idx++)] * cplx{std::cos(phase), std::sin(phase)};
      }
    return envx * enve * acc;
  });
}

Criterion hs_identity() {
  Criterion c;
  c.tol = 1e-6;
  GridSpec base(1, 16.0, 64);
  std::vector<Quantization> taus = {Quantization::kohn_nirenberg(1), Quantization::weyl(1),
                                    Quantization::adjoint_form(1)};
  double tau_dev = 0.0;
  for (int i = 0; i < 50; ++i) {
    Symbol2n a = acceptance_symbol(base, mix_seed(kSeed, 4000 + i));
    double s0 = -1.0;
    for (const auto& q : taus) {
      c.value = std::max(c.value, hs_identity_residual(a, q));
      double s2 = op_matrix(a, q).norm();
      if (s0 >= 0.0) tau_dev = std::max(tau_dev, std::abs(s2 - s0) / s0);
      s0 = s2;
    }
  }
  c.pass = c.value <= 1e-6 && tau_dev <= 1e-8;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "tau_dev=%.1e", tau_dev);
  c.detail = buf;
  return c;
}

Criterion schatten_harness() {
  Criterion c;
  c.tol = 0.15;
  const std::vector<double> plist = {1.0, 2.0, inf};
  Weight k2 = Weight::jbracket_power(2, 2.0);
  SymbolWindow win{2.0, 2.0};
  bool mono = true;
  std::vector<double> max_ratio(plist.size(), 0.0);
  std::vector<double> max_ratio2(plist.size(), 0.0);
  for (int pass = 0; pass < 2; ++pass) {
    int M = pass == 0 ? 64 : 128;
    GridSpec base(1, 16.0, M);
    auto& dst = pass == 0 ? max_ratio : max_ratio2;
    for (int i = 0; i < 30; ++i) {
      Symbol2n a = acceptance_symbol(base, mix_seed(kSeed, 5000 + i));
      auto rep = schatten_report(a, Quantization::weyl(1), k2, plist, win, M / 8, 8);
      for (std::size_t pi = 0; pi < plist.size(); ++pi)
        dst[pi] = std::max(dst[pi], rep.ratio[pi]);
      mono = mono && rep.schatten[1] <= rep.schatten[0] * (1.0 + 1e-10) &&
             rep.schatten[2] <= rep.schatten[1] * (1.0 + 1e-10);
    }
  }
  bool finite = true;
  for (std::size_t pi = 0; pi < plist.size(); ++pi) {
    finite = finite && std::isfinite(max_ratio2[pi]) && max_ratio2[pi] > 0.0;
    c.value = std::max(c.value, std::abs(max_ratio2[pi] / max_ratio[pi] - 1.0));
  }
  c.pass = finite && mono && c.value < 0.15;
  char buf[128];
  std::snprintf(buf, sizeof(buf), "ratios p=1:%.3g p=2:%.3g p=inf:%.3g mono=%d", max_ratio2[0],
                max_ratio2[1], max_ratio2[2], mono ? 1 : 0);
  c.detail = buf;
  return c;
}

Criterion embedding() {
  Criterion c;
  c.tol = 1.0 + 1e-6;
  GridSpec g(1, 16.0, 128);
  Weight k = Weight::jbracket_power(1, 2.0);
  auto [chi, chit] = embedding_window_pair(g, {8.0}, 1.5);
  int violations = 0;
  for (int i = 0; i < 200; ++i) {
    Field u = random_band_limited(g, mix_seed(kSeed, 6000 + i), CorpusSpec{12, 1.0, false, 0.0});
    for (double p : {1.0, 2.0, inf}) {
      auto chk = embedding_check(u, chi, chit, k, p);
      if (!chk.pass) ++violations;
      if (chk.bound > 0.0) c.value = std::max(c.value, chk.actual / chk.bound);
    }
  }
  c.pass = violations == 0;
  c.detail = "violations=" + std::to_string(violations) + "/600";
  return c;
}

Criterion gradient_identity() {
  Criterion c;
  c.tol = 1e-12;
  GridSpec g(1, 16.0, 128);
  Weight k = Weight::jbracket_power(1, 2.0);
  for (int i = 0; i < 100; ++i) {
    Field u = random_band_limited(g, mix_seed(kSeed, 7000 + i), CorpusSpec{16, 0.8, false, 0.3});
    c.value = std::max(c.value, gradient_decomposition_residual(u, k));
  }
  c.pass = c.value <= c.tol;
  return c;
}

}  // namespace

int main() {
  std::printf("acceptance criteria\n");
  run(1, "parseval-convention-pin", 5.0, parseval_pin);
  run(2, "moderateness-certificates", 2.0, moderateness);
  run(3, "ka-detection", 30.0, ka_detection);
  run(4, "multiplier-inequality", 20.0, multiplier_inequality);
  run(5, "localization-principle", 60.0, localization);
  run(6, "retraction-identity", 10.0, retraction);
  run(7, "calderon-formula", 10.0, calderon);
  run(8, "joint-spectrum", 20.0, joint_spectrum);
  run(9, "hilbert-schmidt-identity", 60.0, hs_identity);
  run(10, "schatten-bound-harness", 300.0, schatten_harness);
  run(11, "embedding-theorem", 60.0, embedding);
  run(12, "gradient-decomposition", 5.0, gradient_identity);
  if (failures == 0)
    std::printf("all criteria passed\n");
  else
    std::printf("%d criteria FAILED\n", failures);
  return failures == 0 ? 0 : 1;
}
