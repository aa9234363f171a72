#include <doctest.h>

#include "helpers.hpp"
#include "khspace/bspace.hpp"

using namespace kh;
using namespace kh::testing;

namespace {
constexpr double inf = std::numeric_limits<double>::infinity();
}

TEST_CASE("bpk norm reduces to Parseval for k = 1, p = 2") {
  GridSpec g(1, 16.0, 64);
  Field u = random_band_limited(g, 5);
  Weight one = Weight::constant(1, 1.0);
  double expect = std::pow(two_pi, g.n / 2.0) * l2_norm(u);
  CHECK(bpk_norm_value(u, one, 2.0) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("bpk norm of a one-bin spectrum has the closed form") {
  GridSpec g(1, 2 * pi, 64);
  Field u = character(g, {5});
  Weight k = Weight::jbracket_power(1, 1.0);
  // single bin of mass L^n at xi = 5: value = k(5) L^n (dxi)^{n/2}
  double expect = k.eval1(5.0) * std::pow(g.L, g.n) * std::pow(g.freq_cell_volume(), 0.5);
  CHECK(bpk_norm_value(u, k, 2.0) == doctest::Approx(expect).epsilon(1e-11));

  Field zero(g, Domain::space);
  for (double p : {1.0, 2.0, inf}) CHECK(bpk_norm_value(zero, k, p) == 0.0);
}

TEST_CASE("duality gap is nonnegative and tight for one-bin extremals") {
  GridSpec g(1, 16.0, 64);
  Weight k = Weight::jbracket_power(1, 2.0);

  for (std::uint64_t s = 0; s < 30; ++s) {
    Field u = random_band_limited(g, 2 * s);
    Field v = random_band_limited(g, 2 * s + 1);
    double scale = std::pow(two_pi, -g.n) * bpk_norm_value(u, k, 2.0) *
                   bpk_norm_value(v, k.reflect().pow(-1.0), 2.0);
    CHECK(holder_duality_gap(u, v, k, 2.0) >= -1e-10 * scale);
  }

  // v = 0 gives gap exactly 0
  Field u = random_band_limited(g, 3);
  Field zero(g, Domain::space);
  CHECK(holder_duality_gap(u, zero, k, 2.0) == 0.0);

  // one-bin extremal attains equality
  Field spec(g, Domain::frequency);
  spec.samples[4] = cplx{1.0, 2.0};
  Field ub = idft(spec);
  Field vspec(g, Domain::frequency);
  vspec.samples[g.wrap_index(-4)] = cplx{3.0, 0.0};
  Field vb = idft(vspec);
  double scale = std::pow(two_pi, -g.n) * bpk_norm_value(ub, k, 2.0) *
                 bpk_norm_value(vb, k.reflect().pow(-1.0), 2.0);
  CHECK(std::abs(holder_duality_gap(ub, vb, k, 2.0)) <= 1e-10 * scale);
}

TEST_CASE("multiplier bound: constants, random pairs, characters") {
  GridSpec g(1, 16.0, 128);
  Weight k = Weight::jbracket_power(1, 2.0);
  Field u = random_band_limited(g, 17, CorpusSpec{8, 1.0, false, 0.0});

  // phi = 1: bound = C ||u|| and actual = ||u||, so pass since C >= 1
  Field ones = constant_field(g, cplx{1.0, 0.0});
  for (double p : {1.0, 2.0, inf}) {
    auto chk = multiplier_bound_check(ones, u, k, p);
    CHECK(chk.pass);
    CHECK(chk.bound == doctest::Approx(k.certificate().C * bpk_norm_value(u, k, p)).epsilon(1e-9));
    CHECK(chk.actual == doctest::Approx(bpk_norm_value(u, k, p)).epsilon(1e-12));
  }

  // narrow gaussian phi, random u
  Field phi = periodized_gaussian(g, g.L / 2.0, 0.4);
  for (double p : {1.0, 2.0, inf}) CHECK(multiplier_bound_check(phi, u, k, p).pass);

  // on-grid character: actual <= C <eta>^N ||u||
  Field ch = character(g, {3});
  auto chk = multiplier_bound_check(ch, u, k, 2.0);
  CHECK(chk.pass);
  double eta = 3.0 * g.freq_step();
  double inner = k.certificate().C * std::pow(1.0 + eta * eta, k.certificate().N / 2.0) *
                 bpk_norm_value(u, k, 2.0);
  CHECK(chk.actual <= inner * (1 + 1e-9));
  CHECK(chk.bound == doctest::Approx(inner).epsilon(1e-9));
}

TEST_CASE("sobolev multiplier constant dominates the direct L1 sum") {
  GridSpec g(1, 16.0, 128);
  Field chi = periodized_gaussian(g, g.L / 2.0, 0.8);

  // n=1, N=2: m_k = [2 + 1] + 1 = 4, l_k = [2] + 1 + 2 = 5
  auto smc = sobolev_multiplier_constant(chi, Weight::jbracket_power(1, 2.0));
  CHECK(smc.m_k == 4);
  CHECK(smc.l_k == 5);

  // N=0: cross-check against the direct (2pi)^{-n} ||M_k phihat||_1
  Weight flat = Weight::constant(1, 1.0);
  auto smc0 = sobolev_multiplier_constant(chi, flat);
  Field chihat = dft(chi);
  double direct = 0.0;
  for (std::size_t i = 0; i < chihat.size(); ++i) direct += std::abs(chihat.samples[i]);
  direct *= g.freq_cell_volume() * std::pow(two_pi, -g.n);
  CHECK(direct <= smc0.value * (1 + 1e-12));  // discrete Schwarz
  CHECK(smc0.value <= 40.0 * direct);         // and not wildly loose

  Field zero(g, Domain::space);
  CHECK(sobolev_multiplier_constant(zero, flat).value == 0.0);
}

TEST_CASE("periodic multiplier bound") {
  GridSpec g(1, 16.0, 128);
  Weight k = Weight::jbracket_power(1, 2.0);
  Field u = random_band_limited(g, 23, CorpusSpec{8, 1.0, false, 0.0});

  // chi = 1: c_0 = 1, bound = C ||u||
  Field ones = constant_field(g, cplx{1.0, 0.0});
  auto c1 = periodic_multiplier_check(ones, u, k, 2.0);
  CHECK(c1.pass);
  CHECK(c1.bound == doctest::Approx(k.certificate().C * bpk_norm_value(u, k, 2.0)).epsilon(1e-9));

  // chi = 1 + cos(2 pi x)/2
  Field chi = Field::sample(g, [](const double* x) {
    return cplx{1.0 + 0.5 * std::cos(two_pi * x[0]), 0.0};
  });
  CHECK(periodic_multiplier_check(chi, u, k, 2.0).pass);

  // chi = e^{2 pi i x}: single coefficient, bound = C <2pi>^N ||u||
  Field ch = Field::sample(g, [](const double* x) {
    return cplx{std::cos(two_pi * x[0]), std::sin(two_pi * x[0])};
  });
  auto ce = periodic_multiplier_check(ch, u, k, 2.0);
  CHECK(ce.pass);
  double expect = k.certificate().C * std::pow(1.0 + two_pi * two_pi, k.certificate().N / 2.0) *
                  bpk_norm_value(u, k, 2.0);
  CHECK(ce.bound == doctest::Approx(expect).epsilon(1e-9));

  // a non-periodic multiplier is rejected
  Field bad = periodized_gaussian(g, g.L / 2.0, 0.5);
  CHECK_THROWS(periodic_multiplier_check(bad, u, k, 2.0));
}

TEST_CASE("product bound via the measured convolution constant") {
  GridSpec g(1, 16.0, 128);
  Weight k = Weight::jbracket_power(1, 1.0);

  Field u1 = periodized_gaussian(g, g.L / 2.0, 1.0);
  auto both = product_bound_check(u1, u1, k, k, k);
  CHECK(both.pass);

  // u2 = 1 reduces to a multiplier-type comparison
  Field ones = constant_field(g, cplx{1.0, 0.0});
  CHECK(product_bound_check(u1, ones, k, k, k).pass);

  // u1 = 0 gives actual = 0
  Field zero(g, Domain::space);
  auto z = product_bound_check(zero, u1, k, k, k);
  CHECK(z.actual == 0.0);
  CHECK(z.pass);

  // random pairs
  for (std::uint64_t s = 0; s < 10; ++s) {
    Field a = random_band_limited(g, 100 + s, CorpusSpec{6, 1.0, false, 0.0});
    Field b = random_band_limited(g, 200 + s, CorpusSpec{6, 1.0, false, 0.0});
    CHECK(product_bound_check(a, b, k, k, k).pass);
  }
}

TEST_CASE("gradient decomposition identity is exact per bin") {
  GridSpec g(1, 16.0, 128);
  Weight k = Weight::jbracket_power(1, 2.0);

  for (std::uint64_t s = 0; s < 20; ++s) {
    Field u = random_band_limited(g, s, CorpusSpec{10, 0.7, false, 0.0});
    CHECK(gradient_decomposition_residual(u, k) <= 1e-12);
  }

  // single-bin field
  Field u = character(g, {7});
  CHECK(gradient_decomposition_residual(u, k) <= 1e-12);

  // zero field
  Field zero(g, Domain::space);
  CHECK(gradient_decomposition_residual(zero, k) == 0.0);

  // two dimensions
  GridSpec g2(2, 16.0, 16);
  Weight k2 = Weight::jbracket_power(2, 1.0);
  Field v = random_band_limited(g2, 9, CorpusSpec{3, 1.0, false, 0.0});
  CHECK(gradient_decomposition_residual(v, k2) <= 1e-12);
}

TEST_CASE("monotonicity: pointwise domination transfers to norms") {
  GridSpec g(1, 16.0, 64);
  Weight k1 = Weight::jbracket_power(1, 2.0);
  Weight k2 = Weight::jbracket_power(1, 1.0);
  auto k1g = weight_on_grid(k1, g);
  auto k2g = weight_on_grid(k2, g);
  double C = 0.0;
  for (std::size_t i = 0; i < k1g.size(); ++i) C = std::max(C, k2g[i] / k1g[i]);
  for (std::uint64_t s = 0; s < 20; ++s) {
    Field u = random_band_limited(g, s, CorpusSpec{16, 0.4, false, 0.5});
    for (double p : {1.0, 2.0, inf})
      CHECK(bpk_norm_value(u, k2, p) <= C * bpk_norm_value(u, k1, p) * (1 + 1e-12));
  }
}

TEST_CASE("reflection isometry") {
  GridSpec g(1, 16.0, 64);
  Weight k = mul(Weight::jbracket_power(1, 1.0), Weight::constant(1, 2.0));
  for (std::uint64_t s = 0; s < 10; ++s) {
    Field u = random_band_limited(g, s, CorpusSpec{8, 1.0, false, 0.0});
    for (double p : {1.0, 2.0, inf}) {
      double a = bpk_norm_value(u, k, p);
      double b = bpk_norm_value(reverse(u), k.reflect(), p);
      CHECK(std::abs(a - b) <= 1e-12 * a);
    }
  }
}

TEST_CASE("sup-norm embedding via the dual grid norm of 1/k") {
  GridSpec g(1, 16.0, 64);
  Weight k = Weight::jbracket_power(1, 2.0);
  auto kg = weight_on_grid(k, g);
  for (std::uint64_t s = 0; s < 15; ++s) {
    Field u = random_band_limited(g, s, CorpusSpec{8, 1.0, false, 0.2});
    for (double p : {1.0, 2.0, inf}) {
      double pp = std::isinf(p) ? 1.0 : (p == 1.0 ? inf : p / (p - 1.0));
      Field invk(g, Domain::frequency);
      for (std::size_t i = 0; i < invk.size(); ++i) invk.samples[i] = 1.0 / kg[i];
      std::vector<double> unit(kg.size(), 1.0);
      double bound = std::pow(two_pi, -g.n) * norm_from_spectrum(invk, unit, pp) *
                     bpk_norm_value(u, k, p);
      CHECK(sup_norm(u) <= bound * (1 + 1e-10));
    }
  }
}
