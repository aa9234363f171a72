#include "khspace/suites.hpp"
#include <limits>

#include <chrono>
#include <cmath>
#include <functional>

#include "khspace/amalgam.hpp"
#include "khspace/bspace.hpp"
#include "khspace/calculus.hpp"
#include "khspace/corpus.hpp"
#include "khspace/modwin.hpp"
#include "khspace/psido.hpp"

namespace kh {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void reject_unknown(const json& j, std::initializer_list<const char*> keys, const char* where) {
  if (!j.is_object()) throw std::invalid_argument(std::string(where) + ": expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* k : keys)
      if (it.key() == k) known = true;
    if (!known)
      throw std::invalid_argument(std::string(where) + ": unknown key '" + it.key() + "'");
  }
}

const std::vector<std::string> kSuites = {"weights",     "bspace",   "amalgam", "localization",
                                          "wiener_levy", "schatten", "embedding"};

}  // namespace

ExperimentConfig parse_config(const json& j) {
  reject_unknown(j, {"suite", "grid", "weight", "window", "corpus", "params", "smoke"}, "config");
  ExperimentConfig cfg;
  if (j.contains("suite")) {
    cfg.suite = j.at("suite").get<std::string>();
    bool ok = cfg.suite == "all";
    for (const auto& s : kSuites) ok = ok || s == cfg.suite;
    if (!ok) throw std::invalid_argument("config: unknown suite '" + cfg.suite + "'");
  }
  if (j.contains("grid")) {
    const auto& g = j.at("grid");
    reject_unknown(g, {"n", "L", "M"}, "config.grid");
    if (g.contains("n")) cfg.n = g.at("n").get<int>();
    if (g.contains("L")) cfg.L = g.at("L").get<double>();
    if (g.contains("M")) cfg.M = g.at("M").get<int>();
  }
  if (j.contains("weight")) cfg.weight = j.at("weight");
  if (j.contains("window")) {
    const auto& w = j.at("window");
    reject_unknown(w, {"center", "radius"}, "config.window");
    if (w.contains("radius")) cfg.window_radius = w.at("radius").get<double>();
    if (w.contains("center")) {
      if (w.at("center").is_array())
        cfg.window_center = w.at("center").get<std::vector<double>>();
      else
        cfg.window_center.assign(1, w.at("center").get<double>());
    }
  }
  if (j.contains("corpus")) {
    const auto& c = j.at("corpus");
    reject_unknown(c, {"seed", "count", "band", "decay"}, "config.corpus");
    if (c.contains("seed")) cfg.seed = c.at("seed").get<std::uint64_t>();
    if (c.contains("count")) cfg.count = c.at("count").get<int>();
    if (c.contains("band")) cfg.band = c.at("band").get<int>();
    if (c.contains("decay")) cfg.decay = c.at("decay").get<double>();
  }
  if (j.contains("params")) {
    if (!j.at("params").is_object()) throw std::invalid_argument("config.params: expected an object");
    cfg.params = j.at("params");
  }
  if (j.contains("smoke")) cfg.smoke = j.at("smoke").get<bool>();

  // Validate the weight tree early so schema errors precede any computation.
  (void)weight_from_json(cfg.weight, cfg.n);
  (void)GridSpec(cfg.n, cfg.L, cfg.M);
  if (cfg.count < 1) throw std::invalid_argument("config.corpus.count must be >= 1");
  return cfg;
}

namespace {

struct Ctx {
  ExperimentConfig cfg;
  GridSpec grid;
  Weight k;
  std::vector<ReportRow> rows;

  explicit Ctx(const ExperimentConfig& c)
      : cfg(apply_smoke(c)), grid(cfg.n, cfg.L, cfg.M), k(weight_from_json(cfg.weight, cfg.n)) {}

  static ExperimentConfig apply_smoke(ExperimentConfig c) {
    if (c.smoke) {
      c.M = 16;
      // keep h small enough to resolve the quarter-cell partition features
      c.L = std::min(c.L, 2.0);
      c.count = std::min(c.count, 8);
      c.band = std::min(c.band, 3);
    }
    return c;
  }

  std::vector<double> center() const {
    if (!cfg.window_center.empty() && static_cast<int>(cfg.window_center.size()) == cfg.n)
      return cfg.window_center;
    return std::vector<double>(static_cast<std::size_t>(cfg.n), cfg.L / 2.0);
  }

  Window window() const {
    double r = std::min(cfg.window_radius, 0.4 * cfg.L);
    return Window::bump(grid, center(), r);
  }

  /// Caps the band so product spectra stay within the inner half of the box.
  CorpusSpec capped(CorpusSpec spec) const {
    spec.band = std::min(spec.band == 8 ? cfg.band : spec.band, grid.M / 8);
    return spec;
  }

  std::vector<Field> corpus(int count, CorpusSpec spec = {}, std::uint64_t salt = 0) const {
    return make_corpus(grid, cfg.seed ^ salt, count, capped(spec));
  }

  void row(const std::string& suite, const std::string& check, const std::string& params,
           double bound, double actual, bool pass, double wall_ms) {
    ReportRow r;
    r.suite = suite;
    r.check_id = check;
    r.params_hash = fnv1a_hex(params);
    r.bound = bound;
    r.actual = actual;
    r.ratio = bound != 0.0 ? actual / bound : actual;
    r.pass = pass;
    r.seed = cfg.seed;
    r.wall_ms = wall_ms;
    rows.push_back(std::move(r));
  }

  /// Times `fn`, which returns (bound, actual, pass).
  void timed(const std::string& suite, const std::string& check, const std::string& params,
             const std::function<std::tuple<double, double, bool>()>& fn) {
    auto t0 = std::chrono::steady_clock::now();
    auto [bound, actual, pass] = fn();
    auto t1 = std::chrono::steady_clock::now();
    double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    row(suite, check, params, bound, actual, pass, ms);
  }
};

// ---------------------------------------------------------------- weights ---

std::vector<std::pair<std::string, Weight>> weight_catalog(int n) {
  auto jb = [n](double s) { return Weight::jbracket_power(n, s); };
  return {
      {"jb1", jb(1.0)},
      {"jb2", jb(2.0)},
      {"jbm1", jb(-1.0)},
      {"mul_jb1_jb2", mul(jb(1.0), jb(2.0))},
      {"sup_jb1_c2", sup_of(jb(1.0), Weight::constant(n, 2.0))},
      {"reflect_pow", add(jb(2.0), Weight::constant(n, 1.0)).pow(0.5).reflect()},
  };
}

void weights_suite(Ctx& ctx) {
  const int n = ctx.cfg.n;
  const int probes = ctx.cfg.smoke ? 500 : 10000;
  auto catalog = weight_catalog(n);

  std::uint64_t salt = 0;
  for (const auto& [name, w] : catalog) {
    ++salt;
    ctx.timed("weights", "moderate_" + name, std::to_string(probes), [&]() {
      Rng rng(mix_seed(ctx.cfg.seed, salt));
      std::vector<std::pair<std::vector<double>, std::vector<double>>> pairs;
      pairs.reserve(static_cast<std::size_t>(probes));
      for (int i = 0; i < probes; ++i) {
        std::vector<double> xi(static_cast<std::size_t>(n));
        std::vector<double> eta(static_cast<std::size_t>(n));
        for (int a = 0; a < n; ++a) {
          xi[static_cast<std::size_t>(a)] = 16.0 * rng.symmetric();
          eta[static_cast<std::size_t>(a)] = 16.0 * rng.symmetric();
        }
        pairs.emplace_back(std::move(xi), std::move(eta));
      }
      auto rep = verify_moderate(w, w.certificate(), pairs);
      return std::make_tuple(1.0, rep.worst_ratio, rep.pass);
    });

    ctx.timed("weights", "two_sided_" + name, std::to_string(probes), [&]() {
      GrowthCertificate cert = w.certificate();
      Rng rng(mix_seed(ctx.cfg.seed, 77));
      std::vector<double> zero(static_cast<std::size_t>(n), 0.0);
      double k0 = w.eval(zero);
      double worst = 0.0;
      for (int i = 0; i < probes; ++i) {
        std::vector<double> xi(static_cast<std::size_t>(n));
        double r2 = 0.0;
        for (int a = 0; a < n; ++a) {
          xi[static_cast<std::size_t>(a)] = 16.0 * rng.symmetric();
          r2 += xi[static_cast<std::size_t>(a)] * xi[static_cast<std::size_t>(a)];
        }
        double jbn = std::pow(std::sqrt(1.0 + r2), cert.N);
        double kv = w.eval(xi);
        worst = std::max(worst, kv / (cert.C * k0 * jbn));
        worst = std::max(worst, (k0 / (cert.C * jbn)) / kv);
      }
      return std::make_tuple(1.0, worst, worst <= 1.0);
    });
  }

  const int kaM = ctx.cfg.smoke ? 64 : 512;
  GridSpec ka_probe(1, two_pi, kaM);

  ctx.timed("weights", "ka_accept_s1", "s=1.0", [&]() {
    auto rep = verify_algebra_condition(Weight::jbracket_power(1, 1.0), ka_probe);
    double stability = std::abs(rep.refined_constant / rep.estimated_constant - 1.0);
    return std::make_tuple(0.02, stability, rep.pass && stability <= 0.02);
  });

  ctx.timed("weights", "ka_flag_s04", "s=0.4", [&]() {
    auto rep = verify_algebra_condition(Weight::jbracket_power(1, 0.4), ka_probe);
    return std::make_tuple(1.10, rep.growth, rep.divergence);
  });

  ctx.timed("weights", "ka_flag_const", "c=1", [&]() {
    auto rep = verify_algebra_condition(Weight::constant(1, 1.0), ka_probe);
    return std::make_tuple(1.10, rep.growth, rep.divergence);
  });

  ctx.timed("weights", "wl_pass", "s=2,delta=0.6", [&]() {
    auto rep = verify_wl_condition(Weight::jbracket_power(1, 2.0), 0.6, ka_probe);
    return std::make_tuple(1.0, rep.pass ? 1.0 : 0.0, rep.pass && rep.delta_above_threshold);
  });

  ctx.timed("weights", "wl_l2_fail", "s=2,delta=0.1", [&]() {
    auto rep = verify_wl_condition(Weight::jbracket_power(1, 2.0), 0.1, ka_probe);
    return std::make_tuple(1.10, rep.l2_growth, !rep.l2_ok);
  });

  ctx.timed("weights", "log_convexity", "t0=1,t1=2", [&]() {
    Weight base = Weight::jbracket_power(1, 1.0);
    double c0 = verify_algebra_condition(base.pow(1.0), ka_probe).estimated_constant;
    double c1 = verify_algebra_condition(base.pow(2.0), ka_probe).estimated_constant;
    double ct = verify_algebra_condition(base.pow(1.5), ka_probe).estimated_constant;
    double bound = std::sqrt(c0 * c1) + 1e-6;
    return std::make_tuple(bound, ct, ct <= bound);
  });

  ctx.timed("weights", "decay_shells", "s=1", [&]() {
    Weight w = Weight::jbracket_power(n, 1.0);
    double prev = 0.0;
    bool increasing = true;
    double worst = INFINITY;
    for (double R : {4.0, 8.0, 16.0, 32.0}) {
      std::vector<double> xi(static_cast<std::size_t>(n), 0.0);
      xi[0] = R;
      double mn = w.eval(xi);
      for (int a = 0; a < n; ++a) {
        std::vector<double> probe(static_cast<std::size_t>(n), 0.0);
        probe[static_cast<std::size_t>(a)] = -R;
        mn = std::min(mn, w.eval(probe));
      }
      if (prev > 0.0) {
        increasing = increasing && mn > prev;
        worst = std::min(worst, mn / prev);
      }
      prev = mn;
    }
    return std::make_tuple(1.0, worst, increasing);
  });
}

// ----------------------------------------------------------------- bspace ---

void bspace_suite(Ctx& ctx) {
  const GridSpec& g = ctx.grid;
  const Weight& k = ctx.k;
  auto fields = ctx.corpus(ctx.cfg.count);

  ctx.timed("bspace", "parseval", "count=" + std::to_string(fields.size()), [&]() {
    double worst = 0.0;
    for (const auto& u : fields) {
      double space = l2_norm(u);
      Field uhat = dft(u);
      double acc = 0.0;
      for (const auto& z : uhat.samples) acc += std::norm(z);
      double freq = std::sqrt(acc * g.freq_cell_volume() * std::pow(two_pi, -g.n));
      double scale = space * space;
      worst = std::max(worst, std::abs(space * space - freq * freq) / (scale > 0 ? scale : 1.0));
    }
    return std::make_tuple(1e-12, worst, worst <= 1e-12);
  });

  const int pairs = ctx.cfg.smoke ? 8 : 200;
  for (double p : {1.0, 2.0, kInf}) {
    std::string pname = std::isinf(p) ? "inf" : std::to_string(static_cast<int>(p));
    ctx.timed("bspace", "multiplier_p" + pname, "pairs=" + std::to_string(pairs), [&]() {
      double worst = 0.0;
      bool all = true;
      CorpusSpec phi_spec;
      phi_spec.band = 4;
      phi_spec.decay = 2.0;
      for (int i = 0; i < pairs; ++i) {
        Field u = random_band_limited(g, mix_seed(ctx.cfg.seed, 1000 + i), ctx.capped(CorpusSpec{ctx.cfg.band, 1.0, false, 0.0}));
        Field phi = random_band_limited(g, mix_seed(ctx.cfg.seed, 2000 + i), phi_spec);
        auto chk = multiplier_bound_check(phi, u, k, p);
        if (chk.bound > 0.0) worst = std::max(worst, chk.actual / chk.bound);
        all = all && chk.pass;
      }
      return std::make_tuple(1.0 + 1e-8, worst, all);
    });
  }

  ctx.timed("bspace", "gradient_decomposition", "count=" + std::to_string(fields.size()), [&]() {
    double worst = 0.0;
    for (const auto& u : fields) worst = std::max(worst, gradient_decomposition_residual(u, k));
    return std::make_tuple(1e-12, worst, worst <= 1e-12);
  });

  ctx.timed("bspace", "holder_duality", "p=2", [&]() {
    double worst = 0.0;  // most negative normalized gap
    for (std::size_t i = 0; i + 1 < fields.size(); i += 2) {
      const Field& u = fields[i];
      const Field& v = fields[i + 1];
      double scale = std::pow(two_pi, -g.n) * bpk_norm_value(u, k, 2.0) *
                     bpk_norm_value(v, k.reflect().pow(-1.0), 2.0);
      if (scale == 0.0) continue;
      worst = std::min(worst, holder_duality_gap(u, v, k, 2.0) / scale);
    }
    return std::make_tuple(-1e-10, worst, worst >= -1e-10);
  });

  ctx.timed("bspace", "holder_extremal", "one-bin", [&]() {
    // One-bin u; the extremal dual element attains equality.
    Field spectrum(g, Domain::frequency);
    int bin[max_dim] = {0, 0, 0, 0};
    bin[0] = 3;
    spectrum.samples[g.flatten(bin)] = cplx{2.0, 1.0};
    Field u = idft(spectrum);
    Field vspec(g, Domain::frequency);
    // pairing <v,u> = (2pi)^{-n} dxi^n sum vhat(-xi) uhat(xi): put mass at -bin
    int nbin[max_dim] = {0, 0, 0, 0};
    nbin[0] = g.wrap_index(-3);
    vspec.samples[g.flatten(nbin)] = cplx{1.0, 0.0};
    Field v = idft(vspec);
    double gap = holder_duality_gap(u, v, k, 2.0);
    double scale = std::pow(two_pi, -g.n) * bpk_norm_value(u, k, 2.0) *
                   bpk_norm_value(v, k.reflect().pow(-1.0), 2.0);
    double rel = scale > 0.0 ? std::abs(gap) / scale : std::abs(gap);
    return std::make_tuple(1e-10, rel, rel <= 1e-10);
  });

  ctx.timed("bspace", "monotonicity", "k2<=C*k1", [&]() {
    Weight k1 = Weight::jbracket_power(g.n, 2.0);
    Weight k2 = Weight::jbracket_power(g.n, 1.0);
    auto k1g = weight_on_grid(k1, g);
    auto k2g = weight_on_grid(k2, g);
    double C = 0.0;
    for (std::size_t i = 0; i < k1g.size(); ++i) C = std::max(C, k2g[i] / k1g[i]);
    double worst = 0.0;
    for (const auto& u : fields)
      for (double p : {1.0, 2.0, kInf}) {
        double n1 = bpk_norm_value(u, k1, p);
        if (n1 == 0.0) continue;
        worst = std::max(worst, bpk_norm_value(u, k2, p) / (C * n1));
      }
    return std::make_tuple(1.0 + 1e-12, worst, worst <= 1.0 + 1e-12);
  });

  ctx.timed("bspace", "reflection_isometry", "", [&]() {
    Weight kc = k.reflect();
    double worst = 0.0;
    for (const auto& u : fields)
      for (double p : {1.0, 2.0, kInf}) {
        double a = bpk_norm_value(u, k, p);
        double b = bpk_norm_value(reverse(u), kc, p);
        if (a > 0.0) worst = std::max(worst, std::abs(a - b) / a);
      }
    return std::make_tuple(1e-12, worst, worst <= 1e-12);
  });

  ctx.timed("bspace", "sup_norm_embedding", "", [&]() {
    double worst = 0.0;
    for (const auto& u : fields)
      for (double p : {1.0, 2.0, kInf}) {
        double pprime = std::isinf(p) ? 1.0 : (p == 1.0 ? INFINITY : p / (p - 1.0));
        auto kg = weight_on_grid(k, g);
        Field ones(g, Domain::frequency);
        for (std::size_t i = 0; i < ones.size(); ++i) ones.samples[i] = 1.0 / kg[i];
        std::vector<double> unit(kg.size(), 1.0);
        double invnorm = norm_from_spectrum(ones, unit, pprime);
        double bound = std::pow(two_pi, -g.n) * invnorm * bpk_norm_value(u, k, p);
        double actual = sup_norm(u);
        if (bound > 0.0) worst = std::max(worst, actual / bound);
      }
    return std::make_tuple(1.0 + 1e-10, worst, worst <= 1.0 + 1e-10);
  });

  ctx.timed("bspace", "periodic_multiplier", "1+cos/2", [&]() {
    Field chi = Field::sample(g, [&](const double* x) {
      double v = 1.0;
      for (int a = 0; a < g.n; ++a) v *= 1.0 + 0.5 * std::cos(two_pi * x[a]);
      return cplx{v, 0.0};
    });
    bool all = true;
    double worst = 0.0;
    for (std::size_t i = 0; i < std::min<std::size_t>(fields.size(), 16); ++i) {
      auto chk = periodic_multiplier_check(chi, fields[i], k, 2.0);
      if (chk.bound > 0.0) worst = std::max(worst, chk.actual / chk.bound);
      all = all && chk.pass;
    }
    return std::make_tuple(1.0 + 1e-8, worst, all);
  });

  ctx.timed("bspace", "product_bound", "k1=k2=k", [&]() {
    bool all = true;
    double worst = 0.0;
    Weight kk = Weight::jbracket_power(g.n, 1.0);
    for (std::size_t i = 0; i + 1 < std::min<std::size_t>(fields.size(), 12); i += 2) {
      auto chk = product_bound_check(fields[i], fields[i + 1], kk, kk, kk);
      if (chk.bound > 0.0) worst = std::max(worst, chk.actual / chk.bound);
      all = all && chk.pass;
    }
    return std::make_tuple(1.0 + 1e-6, worst, all);
  });
}

// ---------------------------------------------------------------- amalgam ---

void amalgam_suite(Ctx& ctx) {
  const GridSpec& g = ctx.grid;
  const Weight& k = ctx.k;
  auto fields = ctx.corpus(std::min(ctx.cfg.count, 50));
  Window chi = ctx.window();

  ctx.timed("amalgam", "retraction", "count=" + std::to_string(fields.size()), [&]() {
    Window chi_z = unit_cover_window(g);
    Window cover = Window::plateau(g, chi_z.center, 0.8, std::min(1.6, 0.48 * g.L));
    double worst = 0.0;
    for (const auto& u : fields)
      worst = std::max(worst, retraction_roundtrip_residual(u, chi_z, cover, k));
    // constant field reconstructs exactly by the partition property
    Field ones = Field::sample(g, [](const double*) { return cplx{1.0, 0.0}; });
    worst = std::max(worst, retraction_roundtrip_residual(ones, chi_z, cover, k));
    return std::make_tuple(1e-10, worst, worst <= 1e-10);
  });

  {
    // The partition pieces roll off on 1/12-wide bands, so the frame checks
    // run on a grid fine enough to resolve them.
    GridSpec gf(g.n, std::min(g.L, 2.0), std::max(g.M, 64));
    CorpusSpec fspec = ctx.capped(CorpusSpec{ctx.cfg.band, ctx.cfg.decay, false, 0.0});
    PartitionOfUnity P = PartitionOfUnity::build(gf);
    double lo = INFINITY;
    double hi = 0.0;
    ctx.timed("amalgam", "frame_interval", "", [&]() {
      for (std::size_t i = 0; i < fields.size(); ++i) {
        Field u = random_band_limited(gf, mix_seed(ctx.cfg.seed, i), fspec);
        double r = frame_decompose_ratio(u, P, k);
        lo = std::min(lo, r);
        hi = std::max(hi, r);
      }
      return std::make_tuple(0.0, lo, lo > 0.0 && std::isfinite(hi));
    });
    ctx.timed("amalgam", "frame_grid_stability", "M->2M", [&]() {
      GridSpec g2(gf.n, gf.L, 2 * gf.M);
      PartitionOfUnity P2 = PartitionOfUnity::build(g2);
      double lo2 = INFINITY;
      double hi2 = 0.0;
      for (std::size_t i = 0; i < fields.size(); ++i) {
        Field u2 = random_band_limited(g2, mix_seed(ctx.cfg.seed, i), fspec);
        double r = frame_decompose_ratio(u2, P2, k);
        lo2 = std::min(lo2, r);
        hi2 = std::max(hi2, r);
      }
      double drift = std::max(std::abs(lo2 / lo - 1.0), std::abs(hi2 / hi - 1.0));
      return std::make_tuple(0.10, drift, drift <= 0.10);
    });
  }

  ctx.timed("amalgam", "convolution_bound", "", [&]() {
    Field phi = mollifier_bump(g, 0.5);
    std::vector<double> half(static_cast<std::size_t>(g.n), g.spacing() * 3);
    Field phi_shifted = translate(phi, half);
    bool all = true;
    double worst = 0.0;
    for (const auto& u : fields) {
      for (const Field* f : {&phi, &phi_shifted}) {
        auto chk = convolution_bound_check(*f, u, chi, k);
        if (chk.bound > 0.0) worst = std::max(worst, chk.actual / chk.bound);
        all = all && chk.pass;
      }
    }
    return std::make_tuple(1.0 + 1e-8, worst, all);
  });

  ctx.timed("amalgam", "mollifier_convergence", "eps=1..1/64", [&]() {
    Weight kk = Weight::jbracket_power(g.n, 2.0);
    Weight kp = Weight::jbracket_power(g.n, 1.0);
    std::vector<double> eps = {1.0, 0.5, 0.25, 0.125, 0.0625, 0.03125, 0.015625};
    CorpusSpec tail_spec{ctx.cfg.band, ctx.cfg.decay, false, 1e-3};
    bool ok = true;
    double worst_drop = 0.0;
    for (int i = 0; i < std::min(ctx.cfg.count, 8); ++i) {
      Field u = random_band_limited(g, mix_seed(ctx.cfg.seed, 3000 + i), tail_spec);
      auto res = mollifier_convergence_check(u, kk, kp, eps, chi);
      for (std::size_t j = 0; j + 1 < res.errors.size(); ++j)
        ok = ok && res.errors[j + 1] <= res.errors[j] * 1.05;
      if (res.errors.front() > 0.0) {
        double drop = res.errors.back() / res.errors.front();
        worst_drop = std::max(worst_drop, drop);
        ok = ok && drop < 0.1;
      }
    }
    return std::make_tuple(0.1, worst_drop, ok);
  });

  ctx.timed("amalgam", "window_equiv_shift", "", [&]() {
    std::vector<double> a(static_cast<std::size_t>(g.n), 8 * g.spacing());
    std::vector<double> c2 = chi.center;
    for (int q = 0; q < g.n; ++q) c2[static_cast<std::size_t>(q)] += a[static_cast<std::size_t>(q)];
    Window chit = Window::bump(g, c2, chi.support_radius);
    auto rep = window_equivalence_report(fields, chi, chit, k, 2.0);
    double dev = std::max(std::abs(rep.max_ratio - 1.0), std::abs(rep.min_ratio - 1.0));
    return std::make_tuple(1e-10, dev, dev <= 1e-10);
  });

  ctx.timed("amalgam", "window_equiv_dilate", "corpus doubling", [&]() {
    Window chit = Window::bump(g, chi.center, std::min(2.0 * chi.support_radius, 0.45 * g.L));
    auto rep1 = window_equivalence_report(fields, chi, chit, k, 2.0);
    auto doubled = ctx.corpus(2 * static_cast<int>(fields.size()));
    auto rep2 = window_equivalence_report(doubled, chi, chit, k, 2.0);
    double drift = std::max(std::abs(rep2.max_ratio / rep1.max_ratio - 1.0),
                            std::abs(rep2.min_ratio / rep1.min_ratio - 1.0));
    return std::make_tuple(0.05, drift, drift <= 0.05);
  });

  ctx.timed("amalgam", "lattice_nesting", "p<=q", [&]() {
    Lattice lat = Lattice::integers(g.n);
    double worst = 0.0;
    for (const auto& u : fields) {
      double n1 = amalgam_norm_value(u, chi, k, 1.0, AmalgamMode::lattice, &lat);
      double n2 = amalgam_norm_value(u, chi, k, 2.0, AmalgamMode::lattice, &lat);
      double ni = amalgam_norm_value(u, chi, k, INFINITY, AmalgamMode::lattice, &lat);
      if (n1 > 0.0) worst = std::max(worst, n2 / n1);
      if (n2 > 0.0) worst = std::max(worst, ni / n2);
    }
    return std::make_tuple(1.0 + 1e-12, worst, worst <= 1.0 + 1e-12);
  });

  ctx.timed("amalgam", "bc_module", "psi=1+cos/2", [&]() {
    Field psi = Field::sample(g, [&](const double* x) {
      double v = 1.0;
      for (int a = 0; a < g.n; ++a) v *= 1.0 + 0.5 * std::cos(two_pi * x[a] / g.L);
      return cplx{v, 0.0};
    });
    // C_psi from the multiplier machinery: (2pi)^{-n} ||M_k psihat||_1
    GrowthCertificate cert = k.certificate();
    Field psihat = dft(psi);
    double xi[max_dim];
    double cpsi = 0.0;
    for (std::size_t i = 0; i < psihat.size(); ++i) {
      g.freqs(i, xi);
      double r2 = 0.0;
      for (int a = 0; a < g.n; ++a) r2 += xi[a] * xi[a];
      cpsi += cert.C * std::pow(std::sqrt(1.0 + r2), cert.N) * std::abs(psihat.samples[i]);
    }
    cpsi *= g.freq_cell_volume() * std::pow(two_pi, -g.n);
    double worst = 0.0;
    for (const auto& u : fields) {
      double base = amalgam_norm_value(u, chi, k, 2.0);
      if (base == 0.0) continue;
      double prod = amalgam_norm_value(pointwise_mul(psi, u), chi, k, 2.0);
      worst = std::max(worst, prod / (cpsi * base));
    }
    return std::make_tuple(1.0 + 1e-8, worst, worst <= 1.0 + 1e-8);
  });

  ctx.timed("amalgam", "frame_constant_theta", "theta probes", [&]() {
    Field phi = mollifier_bump(g, std::min(0.9, 0.4 * g.L));
    double worst = 0.0;
    std::vector<double> theta(static_cast<std::size_t>(g.n), 0.0);
    const int lattice = static_cast<int>(std::round(g.L));
    for (int m : {0, lattice / 4, lattice / 2}) {
      std::fill(theta.begin(), theta.end(), m * g.freq_step());
      worst = std::max(worst, frame_constant(phi, k, theta));
    }
    return std::make_tuple(0.0, worst, std::isfinite(worst) && worst > 0.0);
  });
}

// ------------------------------------------------------------ localization ---

void localization_suite(Ctx& ctx) {
  const GridSpec& g = ctx.grid;
  const Weight& k = ctx.k;
  Window chi = ctx.window();
  auto fields = ctx.corpus(ctx.cfg.count);

  auto interval = [&](const std::vector<Field>& corpus, const GridSpec& grid, const Window& w) {
    double lo = INFINITY;
    double hi = 0.0;
    (void)grid;
    for (const auto& u : corpus) {
      double denom = bpk_norm_value(u, k, 2.0);
      if (denom == 0.0) continue;
      double r = amalgam_norm_value(u, w, k, 2.0) / denom;
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    return std::make_pair(lo, hi);
  };

  auto [lo, hi] = interval(fields, g, chi);
  ctx.row("localization", "interval_lower", "", 0.0, lo, lo > 0.0 && std::isfinite(lo), 0.0);
  ctx.row("localization", "interval_upper", "", 0.0, hi, std::isfinite(hi), 0.0);

  ctx.timed("localization", "corpus_doubling", "2x fields", [&]() {
    auto doubled = ctx.corpus(2 * ctx.cfg.count);
    auto [lo2, hi2] = interval(doubled, g, chi);
    double drift = std::max(std::abs(lo2 / lo - 1.0), std::abs(hi2 / hi - 1.0));
    return std::make_tuple(0.10, drift, drift < 0.10);
  });

  ctx.timed("localization", "grid_doubling", "M->2M", [&]() {
    GridSpec g2(g.n, g.L, 2 * g.M);
    Window chi2 = Window::bump(g2, chi.center, chi.support_radius);
    std::vector<Field> refined;
    refined.reserve(fields.size());
    for (std::size_t i = 0; i < fields.size(); ++i)
      refined.push_back(random_band_limited(g2, mix_seed(ctx.cfg.seed, i),
                                            ctx.capped(CorpusSpec{ctx.cfg.band, ctx.cfg.decay, false, 0.0})));
    auto [lo2, hi2] = interval(refined, g2, chi2);
    double drift = std::max(std::abs(lo2 / lo - 1.0), std::abs(hi2 / hi - 1.0));
    return std::make_tuple(0.10, drift, drift < 0.10);
  });
}

// ------------------------------------------------------------- wiener_levy ---

void wiener_levy_suite(Ctx& ctx) {
  // This suite runs on its own grid so the canonical field 2 + sin(x) is
  // exactly on-grid.
  GridSpec g(1, 4.0 * pi, ctx.cfg.smoke ? 64 : 256);
  Window chi = Window::bump(g, {g.L / 2.0}, 1.5);

  Field u_sin = Field::sample(g, [](const double* x) { return cplx{2.0 + std::sin(x[0]), 0.0}; });

  ctx.timed("wiener_levy", "cauchy_polynomial", "deg<=6", [&]() {
    // Constant fields: quadrature must reproduce Phi(w + v) from scratch.
    GridSpec tiny(1, two_pi, 16);
    HolomorphicMap poly;
    poly.d = 1;
    poly.domain = DomainSpec::entire(1);
    poly.apply = [](const cvec& z) {
      cplx acc{0.0, 0.0};
      cplx p{1.0, 0.0};
      for (int kdeg = 0; kdeg <= 6; ++kdeg) {
        acc += p * (1.0 + 0.25 * kdeg);
        p *= z[0];
      }
      return acc;
    };
    double r = 1.0;
    double worst = 0.0;
    Rng rng(mix_seed(ctx.cfg.seed, 42));
    for (int trial = 0; trial < 16; ++trial) {
      double mag = 0.95 * r * rng.uniform();
      double ang = two_pi * rng.uniform();
      cplx w = mag * cplx{std::cos(ang), std::sin(ang)};
      Field uu(tiny, Domain::space);
      Field vv(tiny, Domain::space);
      cplx v0{0.3, -0.2};
      for (std::size_t i = 0; i < uu.size(); ++i) {
        uu.samples[i] = v0 + w;
        vv.samples[i] = v0;
      }
      CalderonConfig cc;
      cc.contour_nodes = 64;
      Field h = calderon_apply(poly, {uu}, {vv}, r, cc).h;
      cvec arg{v0 + w};
      cplx expect = poly.apply(arg);
      worst = std::max(worst, std::abs(h.samples[0] - expect) / std::abs(expect));
    }
    return std::make_tuple(1e-10, worst, worst <= 1e-10);
  });

  Field inv;
  ctx.timed("wiener_levy", "invert_pointwise", "u=2+sin", [&]() {
    inv = invert(u_sin, 1.0);
    double worst = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i)
      worst = std::max(worst, std::abs(inv.samples[i] - 1.0 / u_sin.samples[i]));
    return std::make_tuple(1e-9, worst, worst <= 1e-9);
  });

  ctx.timed("wiener_levy", "invert_identity", "u=2+sin", [&]() {
    double worst = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i)
      worst = std::max(worst, std::abs(u_sin.samples[i] * inv.samples[i] - 1.0));
    return std::make_tuple(1e-8, worst, worst <= 1e-8);
  });

  ctx.timed("wiener_levy", "contour_refinement", "Mc 64->128", [&]() {
    CalderonConfig c1;
    c1.contour_nodes = 64;
    CalderonConfig c2;
    c2.contour_nodes = 128;
    Field a = invert(u_sin, 1.0, c1);
    Field b = invert(u_sin, 1.0, c2);
    double worst = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i)
      worst = std::max(worst, std::abs(a.samples[i] - b.samples[i]) / std::abs(b.samples[i]));
    return std::make_tuple(1e-11, worst, worst <= 1e-11);
  });

  ctx.timed("wiener_levy", "joint_spectrum_resolvent", "20 lambdas", [&]() {
    Rng rng(mix_seed(ctx.cfg.seed, 77));
    double worst = 0.0;
    bool all = true;
    int found = 0;
    while (found < (ctx.cfg.smoke ? 5 : 20)) {
      cplx lam{8.0 * rng.symmetric(), 8.0 * rng.symmetric()};
      // range of 2+sin is [1,3] on the real axis; keep a safe margin
      double dist2 = INFINITY;
      for (double t : {1.0, 1.5, 2.0, 2.5, 3.0}) dist2 = std::min(dist2, std::norm(lam - t));
      if (dist2 < 1.0) continue;
      ++found;
      auto res = joint_spectrum_membership({u_sin}, {lam}, 0.9);
      all = all && !res.in_spectrum;
      if (!res.in_spectrum) worst = std::max(worst, res.identity_residual);
    }
    return std::make_tuple(1e-8, worst, all && worst <= 1e-8);
  });

  ctx.timed("wiener_levy", "joint_spectrum_onrange", "20 lambdas", [&]() {
    Rng rng(mix_seed(ctx.cfg.seed, 78));
    bool all = true;
    for (int i = 0; i < (ctx.cfg.smoke ? 5 : 20); ++i) {
      std::size_t idx = static_cast<std::size_t>(rng.uniform() * static_cast<double>(g.size()));
      cplx lam = u_sin.samples[idx];
      auto res = joint_spectrum_membership({u_sin}, {lam}, 0.9);
      all = all && res.in_spectrum;
    }
    return std::make_tuple(1.0, all ? 1.0 : 0.0, all);
  });

  ctx.timed("wiener_levy", "joint_spectrum_d2", "(2+sin,2+cos)", [&]() {
    Field u2 = Field::sample(g, [](const double* x) { return cplx{2.0 + std::cos(x[0]), 0.0}; });
    auto res = joint_spectrum_membership({u_sin, u2}, {cplx{0.0, 0.0}, cplx{0.0, 0.0}}, 1.0);
    return std::make_tuple(1e-8, res.identity_residual, !res.in_spectrum && res.identity_residual <= 1e-8);
  });

  ctx.timed("wiener_levy", "ideal_square", "phi=z^2", [&]() {
    Field bump = Field::sample(g, [&](const double* x) {
      double d = (x[0] - g.L / 2.0) / 2.0;
      return cplx{0.5 * std::exp(-d * d * 4.0), 0.0};
    });
    auto rep = ideal_composition_check(HolomorphicMap::by_name("square"), {bump},
                                       Weight::jbracket_power(1, 1.0), 2.0, chi);
    bool ok = rep.factorization_residual <= 1e-10 && rep.stable;
    return std::make_tuple(1e-10, rep.factorization_residual, ok);
  });

  ctx.timed("wiener_levy", "ideal_exp", "phi=e^z-1", [&]() {
    Field bump = Field::sample(g, [&](const double* x) {
      double d = (x[0] - g.L / 2.0) / 2.0;
      return cplx{0.4 * std::exp(-d * d * 4.0), 0.1 * std::exp(-d * d * 6.0)};
    });
    auto rep = ideal_composition_check(HolomorphicMap::by_name("exp_minus_one"), {bump},
                                       Weight::jbracket_power(1, 1.0), 2.0, chi);
    bool ok = rep.factorization_residual <= 1e-8 && rep.stable;
    return std::make_tuple(1e-8, rep.factorization_residual, ok);
  });

  ctx.timed("wiener_levy", "chain_rule", "phi=z^2", [&]() {
    // d_j Phi(u_eps) = sum_k dPhi/dz_k (u_eps) d_j u_eps,k for the mollified field.
    Field ue = mollify(u_sin, 0.25);
    HolomorphicMap sq = HolomorphicMap::by_name("square");
    std::vector<Field> uu{ue};
    double r = range_distance(uu, sq.domain);
    Field v = mollify(ue, 0.5);
    Field phi_u = calderon_apply(sq, uu, {v}, r).h;
    Field lhs = derivative(phi_u, 0);
    Field due = derivative(ue, 0);
    Field rhs(g, Domain::space);
    for (std::size_t i = 0; i < g.size(); ++i)
      rhs.samples[i] = 2.0 * ue.samples[i] * due.samples[i];
    double scale = sup_norm(lhs);
    double worst = sup_norm(lhs - rhs) / (scale > 0 ? scale : 1.0);
    return std::make_tuple(1e-5, worst, worst <= 1e-5);
  });
}

// ----------------------------------------------------------------- schatten ---

Symbol2n random_symbol(const GridSpec& base, std::uint64_t seed) {
  const double L = base.L;
  Rng rng(seed);
  // fixed physical content: low Fourier modes in x, analytic modes in eta
  std::vector<cplx> cx(25);
  for (auto& c : cx) c = rng.unit_disc();
  return Symbol2n::sample(base, [L, cx](const double* x, const double* eta) {
    double dx = x[0] - L / 2.0;
    double envx = std::exp(-dx * dx / (2.0 * (L / 10.0) * (L / 10.0)));
    double enve = std::exp(-eta[0] * eta[0] / (2.0 * 2.0 * 2.0));
    cplx acc{0.0, 0.0};
    int idx = 0;
    for (int p = -2; p <= 2; ++p)
      for (int q = -2; q <= 2; ++q) {
        double phase = two_pi * p * x[0] / L + 0.5 * q * eta[0];
        acc += cx[static_cast<std::size_t>(idx++)] * cplx{std::cos(phase), std::sin(phase)};
      }
    return envx * enve * acc;
  });
}

void schatten_suite(Ctx& ctx) {
  const int M = ctx.cfg.smoke ? 16 : 64;
  GridSpec base(1, 16.0, M);
  const int hs_count = ctx.cfg.smoke ? 4 : 50;
  const int sweep_count = ctx.cfg.smoke ? 3 : 30;
  std::vector<Quantization> taus = {Quantization::kohn_nirenberg(1), Quantization::weyl(1),
                                    Quantization::adjoint_form(1)};

  ctx.timed("schatten", "hs_identity", "count=" + std::to_string(hs_count), [&]() {
    double worst = 0.0;
    for (int i = 0; i < hs_count; ++i) {
      Symbol2n a = random_symbol(base, mix_seed(ctx.cfg.seed, 500 + i));
      for (const auto& q : taus) worst = std::max(worst, hs_identity_residual(a, q));
    }
    return std::make_tuple(1e-6, worst, worst <= 1e-6);
  });

  ctx.timed("schatten", "hs_tau_invariance", "tau={0,1/2,1}", [&]() {
    double worst = 0.0;
    for (int i = 0; i < hs_count; ++i) {
      Symbol2n a = random_symbol(base, mix_seed(ctx.cfg.seed, 500 + i));
      double s0 = op_matrix(a, taus[0]).norm();
      for (std::size_t t = 1; t < taus.size(); ++t) {
        double st = op_matrix(a, taus[t]).norm();
        if (s0 > 0.0) worst = std::max(worst, std::abs(st - s0) / s0);
      }
    }
    return std::make_tuple(1e-8, worst, worst <= 1e-8);
  });

  const SymbolWindow win{2.0, 2.0};
  const std::vector<double> plist = {1.0, 2.0, kInf};
  Weight k2 = Weight::jbracket_power(2, 2.0);

  std::vector<double> max_ratio(plist.size(), 0.0);
  ctx.timed("schatten", "sweep_base", "M=" + std::to_string(M), [&]() {
    bool mono = true;
    for (int i = 0; i < sweep_count; ++i) {
      Symbol2n a = random_symbol(base, mix_seed(ctx.cfg.seed, 900 + i));
      auto rep = schatten_report(a, taus[1], k2, plist, win, std::max(1, M / 8), 8);
      for (std::size_t pi = 0; pi < plist.size(); ++pi)
        max_ratio[pi] = std::max(max_ratio[pi], rep.ratio[pi]);
      // Schatten monotonicity p <= q
      mono = mono && rep.schatten[1] <= rep.schatten[0] * (1.0 + 1e-10) &&
             rep.schatten[2] <= rep.schatten[1] * (1.0 + 1e-10);
    }
    double worst = 0.0;
    for (double r : max_ratio) worst = std::max(worst, r);
    return std::make_tuple(0.0, worst, mono && std::isfinite(worst) && worst > 0.0);
  });

  ctx.timed("schatten", "sweep_refinement", "M->2M", [&]() {
    GridSpec base2(1, base.L, 2 * M);
    std::vector<double> max_ratio2(plist.size(), 0.0);
    for (int i = 0; i < sweep_count; ++i) {
      Symbol2n a = random_symbol(base2, mix_seed(ctx.cfg.seed, 900 + i));
      auto rep = schatten_report(a, taus[1], k2, plist, win, std::max(1, 2 * M / 8), 8);
      for (std::size_t pi = 0; pi < plist.size(); ++pi)
        max_ratio2[pi] = std::max(max_ratio2[pi], rep.ratio[pi]);
    }
    double drift = 0.0;
    for (std::size_t pi = 0; pi < plist.size(); ++pi)
      drift = std::max(drift, std::abs(max_ratio2[pi] / max_ratio[pi] - 1.0));
    return std::make_tuple(0.15, drift, drift < 0.15);
  });

  ctx.timed("schatten", "tau_continuity", "8 vs 16 steps", [&]() {
    Symbol2n a = random_symbol(base, mix_seed(ctx.cfg.seed, 1234));
    auto path = [&](int steps) {
      std::vector<Quantization> p;
      for (int i = 0; i <= steps; ++i) p.push_back(Quantization::scalar(1, static_cast<double>(i) / steps));
      return p;
    };
    double d8 = tau_path_max_step(a, path(8), 2.0);
    double d16 = tau_path_max_step(a, path(16), 2.0);
    double r = d16 / d8;
    return std::make_tuple(0.75, r, r >= 1.0 / 6.0 && r <= 0.75);
  });

  ctx.timed("schatten", "multiplier_fixed_point", "a=g(eta)", [&]() {
    Symbol2n a = Symbol2n::sample(base, [](const double*, const double* eta) {
      return cplx{std::exp(-eta[0] * eta[0] / 4.0), 0.0};
    });
    OperatorMatrix a0 = op_matrix(a, taus[0]);
    double worst = 0.0;
    for (std::size_t t = 1; t < taus.size(); ++t) {
      OperatorMatrix at = op_matrix(a, taus[t]);
      worst = std::max(worst, (at - a0).cwiseAbs().maxCoeff());
    }
    double scale = a0.cwiseAbs().maxCoeff();
    worst /= scale > 0 ? scale : 1.0;
    return std::make_tuple(1e-10, worst, worst <= 1e-10);
  });

  ctx.timed("schatten", "amplitude_reduction", "a(x,y,t)=b(x,t)", [&]() {
    GridSpec small(1, 16.0, std::min(M, 32));
    auto bfun = [&](double x, double theta) {
      double dx = x - small.L / 2.0;
      return cplx{std::exp(-dx * dx / 4.0) * std::exp(-theta * theta / 4.0), 0.0};
    };
    Amplitude3 a3 = Amplitude3::sample(small, [&](double x, double, double t) { return bfun(x, t); });
    Symbol2n b = Symbol2n::sample(small, [&](const double* x, const double* eta) { return bfun(x[0], eta[0]); });
    OperatorMatrix A = amplitude_op(a3);
    OperatorMatrix B = op_matrix(b, Quantization::kohn_nirenberg(1)) * std::pow(two_pi, small.n);
    double scale = B.cwiseAbs().maxCoeff();
    double worst = (A - B).cwiseAbs().maxCoeff() / (scale > 0 ? scale : 1.0);
    return std::make_tuple(1e-10, worst, worst <= 1e-10);
  });
}

// ---------------------------------------------------------------- embedding ---

void embedding_suite(Ctx& ctx) {
  const GridSpec& g = ctx.grid;
  Weight k = Weight::jbracket_power(g.n, 2.0);  // 1/k summable for n = 1
  auto [chi, chit] = embedding_window_pair(g, ctx.center(), std::min(1.5, 0.15 * g.L));
  auto fields = ctx.corpus(ctx.cfg.count);

  for (double p : {1.0, 2.0, kInf}) {
    std::string pname = std::isinf(p) ? "inf" : std::to_string(static_cast<int>(p));
    ctx.timed("embedding", "embedding_p" + pname, "count=" + std::to_string(fields.size()), [&]() {
      double worst = 0.0;
      bool all = true;
      for (const auto& u : fields) {
        auto chk = embedding_check(u, chi, chit, k, p);
        if (chk.bound > 0.0) worst = std::max(worst, chk.actual / chk.bound);
        all = all && chk.pass;
      }
      return std::make_tuple(1.0 + 1e-6, worst, all);
    });
  }

  ctx.timed("embedding", "window_translation_invariance", "", [&]() {
    std::vector<double> a(static_cast<std::size_t>(g.n), 8 * g.spacing());
    std::vector<double> c2 = chi.center;
    for (int q = 0; q < g.n; ++q) c2[static_cast<std::size_t>(q)] += a[static_cast<std::size_t>(q)];
    Window chi_shift = Window::bump(g, c2, chi.support_radius);
    double worst = 0.0;
    for (std::size_t i = 0; i < std::min<std::size_t>(fields.size(), 20); ++i) {
      for (double p : {2.0, kInf}) {
        double m1 = modulation_norm(fields[i], chi, p);
        double m2 = modulation_norm(fields[i], chi_shift, p);
        if (m1 > 0.0) worst = std::max(worst, std::abs(m2 / m1 - 1.0));
      }
    }
    return std::make_tuple(1e-10, worst, worst <= 1e-10);
  });

  ctx.timed("embedding", "profile_p_monotonicity", "counting", [&]() {
    double worst = 0.0;
    for (std::size_t i = 0; i < std::min<std::size_t>(fields.size(), 20); ++i) {
      auto u1 = modulation_profile_counting(fields[i], chi, 1.0);
      auto u2 = modulation_profile_counting(fields[i], chi, 2.0);
      auto ui = modulation_profile_counting(fields[i], chi, INFINITY);
      for (std::size_t b = 0; b < u1.size(); ++b) {
        if (u1[b] > 0.0) worst = std::max(worst, u2[b] / u1[b]);
        if (u2[b] > 0.0) worst = std::max(worst, ui[b] / u2[b]);
      }
    }
    return std::make_tuple(1.0 + 1e-12, worst, worst <= 1.0 + 1e-12);
  });

  ctx.timed("embedding", "norm_axioms", "triangle+scaling", [&]() {
    double worst = 0.0;
    for (std::size_t i = 0; i + 1 < std::min<std::size_t>(fields.size(), 16); i += 2) {
      const Field& u = fields[i];
      const Field& v = fields[i + 1];
      double nu = modulation_norm(u, chi, 2.0);
      double nv = modulation_norm(v, chi, 2.0);
      double nsum = modulation_norm(u + v, chi, 2.0);
      worst = std::max(worst, nsum - nu - nv);
      double scaled = modulation_norm(cplx{0.0, -2.5} * u, chi, 2.0);
      worst = std::max(worst, std::abs(scaled - 2.5 * nu));
    }
    return std::make_tuple(1e-10, worst, worst <= 1e-10);
  });
}

}  // namespace

SuiteResult run_suite(const ExperimentConfig& cfg) {
  Ctx ctx(cfg);
  if (cfg.suite == "weights" || cfg.suite == "all") weights_suite(ctx);
  if (cfg.suite == "bspace" || cfg.suite == "all") bspace_suite(ctx);
  if (cfg.suite == "amalgam" || cfg.suite == "all") amalgam_suite(ctx);
  if (cfg.suite == "localization" || cfg.suite == "all") localization_suite(ctx);
  if (cfg.suite == "wiener_levy" || cfg.suite == "all") wiener_levy_suite(ctx);
  if (cfg.suite == "schatten" || cfg.suite == "all") schatten_suite(ctx);
  if (cfg.suite == "embedding" || cfg.suite == "all") embedding_suite(ctx);

  SuiteResult out;
  out.rows = std::move(ctx.rows);
  for (const auto& r : out.rows) out.all_pass = out.all_pass && r.pass;
  return out;
}

json summary_json(const SuiteResult& result, const ExperimentConfig& cfg) {
  json j;
  j["suite"] = cfg.suite;
  j["all_pass"] = result.all_pass;
  j["rows"] = result.rows.size();
  int failed = 0;
  for (const auto& r : result.rows)
    if (!r.pass) ++failed;
  j["failed"] = failed;
  j["seed"] = cfg.seed;
  json env;
#if defined(__GNUC__) && !defined(__clang__)
  env["compiler"] = "gcc " + std::to_string(__GNUC__) + "." + std::to_string(__GNUC_MINOR__);
#elif defined(__clang__)
  env["compiler"] = "clang " + std::to_string(__clang_major__) + "." + std::to_string(__clang_minor__);
#else
  env["compiler"] = "unknown";
#endif
  env["sizeof_double"] = sizeof(double);
  j["environment"] = env;
  return j;
}

}  // namespace kh
