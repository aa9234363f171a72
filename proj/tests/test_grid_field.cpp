#include <doctest.h>

#include "helpers.hpp"

using namespace kh;
using namespace kh::testing;

TEST_CASE("grid invariants") {
  GridSpec g(1, 2 * pi, 64);
  CHECK(g.spacing() * g.M == g.L);  // exact: M is a power of two
  CHECK(g.freq1(0) == 0.0);
  CHECK(g.freq1(32) == doctest::Approx(-32.0));  // signed lattice
  CHECK(g.freq1(63) == doctest::Approx(-1.0));
  CHECK_THROWS(GridSpec(1, 2 * pi, 48));  // not a power of two
  CHECK_THROWS(GridSpec(1, 2 * pi, 8));   // below 16
  CHECK_THROWS(GridSpec(0, 1.0, 16));
}

TEST_CASE("dft of constant concentrates at zero with mass (2pi)^n") {
  GridSpec g(1, 2 * pi, 64);
  Field u = constant_field(g, cplx{1.0, 0.0});
  Field uhat = dft(u);
  CHECK(std::abs(uhat.samples[0] - std::pow(two_pi, g.n)) < 1e-12);
  for (std::size_t i = 1; i < uhat.size(); ++i) CHECK(std::abs(uhat.samples[i]) < 1e-12);
}

TEST_CASE("on-grid character gives a single bin of mass L^n") {
  GridSpec g(1, 2 * pi, 64);
  Field u = character(g, {5});
  Field uhat = dft(u);
  for (std::size_t i = 0; i < uhat.size(); ++i) {
    double expect = (i == 5) ? std::pow(g.L, g.n) : 0.0;
    CHECK(std::abs(uhat.samples[i] - expect) < 1e-9);
  }
}

TEST_CASE("periodized gaussian matches the direct-summation oracle at every bin") {
  GridSpec g(1, 16 * pi, 256);
  Field u = periodized_gaussian(g, g.L / 2.0, 1.0);
  Field fast = dft(u);
  Field slow = naive_dft(u);
  double peak = sup_norm(slow);
  CHECK(max_abs_diff(fast, slow) / peak < 1e-10);

  // also against the closed form: |uhat| = sqrt(2 pi) e^{-xi^2/2}
  for (std::size_t i = 0; i < fast.size(); ++i) {
    double xi = g.freq1(static_cast<int>(i));
    double expect = std::sqrt(two_pi) * std::exp(-xi * xi / 2.0);
    CHECK(std::abs(std::abs(fast.samples[i]) - expect) < 1e-10 * peak + 1e-12);
  }
}

TEST_CASE("oracle agreement in two dimensions") {
  GridSpec g(2, 2 * pi, 16);
  Field u = random_band_limited(g, 11, CorpusSpec{3, 1.0, false, 0.0});
  CHECK(max_abs_diff(dft(u), naive_dft(u)) < 1e-11 * (1.0 + sup_norm(u)));
}

TEST_CASE("parseval pins the convention") {
  for (std::uint64_t s = 0; s < 20; ++s) {
    GridSpec g(1, 16.0, 64);
    Field u = random_band_limited(g, s, CorpusSpec{8, 1.0, false, 0.1});
    double space = 0.0;
    for (const auto& z : u.samples) space += std::norm(z);
    space *= g.cell_volume();
    Field uhat = dft(u);
    double freq = 0.0;
    for (const auto& z : uhat.samples) freq += std::norm(z);
    freq *= g.freq_cell_volume() * std::pow(two_pi, -g.n);
    CHECK(std::abs(space - freq) <= 1e-12 * space);
  }
}

TEST_CASE("idft(dft(u)) round trip") {
  GridSpec g(1, 16.0, 128);
  Field u = random_band_limited(g, 3, CorpusSpec{16, 0.5, false, 0.3});
  Field back = idft(dft(u));
  CHECK(max_abs_diff(u, back) <= 1e-12 * (1.0 + sup_norm(u)));
}

TEST_CASE("translate: zero shift, grid shift, and inverse") {
  GridSpec g(1, 16.0, 64);
  Field u = random_band_limited(g, 5);

  CHECK(max_abs_diff(translate(u, {0.0}), u) < 1e-13);

  // one grid cell equals a circular shift of the sample array
  Field shifted = translate(u, {g.spacing()});
  for (std::size_t i = 0; i < u.size(); ++i) {
    std::size_t j = (i + u.size() - 1) % u.size();
    CHECK(std::abs(shifted.samples[i] - u.samples[j]) < 1e-12);
  }

  // fractional round trip
  Field fwd = translate(u, {0.37});
  Field back = translate(fwd, {-0.37});
  CHECK(max_abs_diff(back, u) <= 1e-12 * (1.0 + sup_norm(u)));
}

TEST_CASE("derivative acts as i xi on characters and commutes with translate") {
  GridSpec g(1, 2 * pi, 64);
  Field u = character(g, {7});
  Field du = derivative(u, 0);
  for (std::size_t i = 0; i < u.size(); ++i)
    CHECK(std::abs(du.samples[i] - cplx{0.0, 7.0} * u.samples[i]) < 1e-10);

  Field v = random_band_limited(g, 9);
  Field a = derivative(translate(v, {0.5}), 0);
  Field b = translate(derivative(v, 0), {0.5});
  CHECK(max_abs_diff(a, b) <= 1e-12 * (1.0 + sup_norm(a)));
}

TEST_CASE("mollifier: mass preservation, contraction, convergence") {
  GridSpec g(1, 16.0, 128);

  Field c = constant_field(g, cplx{3.5, -1.0});
  CHECK(max_abs_diff(mollify(c, 0.5), c) < 1e-12);

  CorpusSpec band;
  band.band = 6;
  Field u = random_band_limited(g, 21, band);
  CHECK(l2_norm(mollify(u, 0.5)) <= l2_norm(u) * (1.0 + 1e-12));

  double e_coarse = l2_norm(mollify(u, 1.0) - u);
  double e_fine = l2_norm(mollify(u, 1.0 / 8.0) - u);
  CHECK(e_coarse > 1e-12);  // the coarse scale visibly smooths this band
  CHECK(e_fine < e_coarse);

  // positivity preservation on a nonnegative band-limited test field
  Field pos = Field::sample(g, [&](const double* x) {
    return cplx{1.0 + std::cos(two_pi * x[0] / g.L), 0.0};
  });
  Field smoothed = mollify(pos, 0.5);
  for (const auto& z : smoothed.samples) CHECK(z.real() >= -1e-10);

  CHECK_THROWS(mollify(u, 0.0));
  CHECK_THROWS(mollify(u, 1.5));
}

TEST_CASE("fubini identities hold discretely") {
  GridSpec g(1, 16.0, 64);

  Field ones = constant_field(g, cplx{1.0, 0.0});
  auto res = fubini_identity_check(ones, ones, ones);
  CHECK(res.tensor_identity < 1e-9);
  CHECK(res.convolution_identity < 1e-9);

  Field u = random_band_limited(g, 31);
  Field phi = random_band_limited(g, 32);
  Field psi = random_band_limited(g, 33);
  double scale = (1.0 + sup_norm(u)) * (1.0 + sup_norm(phi)) * (1.0 + sup_norm(psi)) *
                 std::pow(g.L, 2 * g.n);
  auto res2 = fubini_identity_check(u, phi, psi);
  CHECK(res2.tensor_identity <= 1e-10 * scale);
  CHECK(res2.convolution_identity <= 1e-10 * scale);

  // zero-mean psi kills the left side of the tensor identity
  Field zm = character(g, {1});
  cplx total{0.0, 0.0};
  for (const auto& z : zm.samples) total += z;
  CHECK(std::abs(total) < 1e-10);
  auto res3 = fubini_identity_check(u, phi, zm);
  CHECK(res3.tensor_identity <= 1e-10 * scale);
}

TEST_CASE("poisson periodization concentrates on the shifted lattice") {
  GridSpec g(1, 16.0, 256);
  Field bump = periodized_gaussian(g, g.L / 2.0, 0.35);

  auto rep0 = poisson_periodization_check(bump, {0.0});
  CHECK(rep0.off_lattice_max <= 1e-8);
  CHECK(rep0.on_lattice_max_err <= 1e-8);
  CHECK_FALSE(rep0.tail_warning);

  auto repi = poisson_periodization_check(bump, {pi});
  CHECK(repi.off_lattice_max <= 1e-8);
  CHECK(repi.on_lattice_max_err <= 1e-8);

  CHECK_THROWS(poisson_periodization_check(bump, {0.123}));  // off the frequency lattice
}

TEST_CASE("reverse is an exact sample permutation") {
  GridSpec g(1, 16.0, 32);
  Field u = random_band_limited(g, 2);
  Field r = reverse(reverse(u));
  CHECK(max_abs_diff(r, u) == 0.0);
  Field rev = reverse(u);
  CHECK(rev.samples[1] == u.samples[g.M - 1]);
  CHECK(rev.samples[0] == u.samples[0]);
}

TEST_CASE("convolution theorem against the definition") {
  GridSpec g(1, 16.0, 32);
  Field u = random_band_limited(g, 41, CorpusSpec{4, 1.0, false, 0.0});
  Field v = random_band_limited(g, 42, CorpusSpec{4, 1.0, false, 0.0});
  Field fast = convolve(u, v);
  Field slow(g, Domain::space);
  for (std::size_t i = 0; i < g.size(); ++i) {
    cplx acc{0.0, 0.0};
    for (std::size_t j = 0; j < g.size(); ++j) {
      std::size_t d = (i + g.size() - j) % g.size();
      acc += u.samples[j] * v.samples[d];
    }
    slow.samples[i] = acc * g.cell_volume();
  }
  CHECK(max_abs_diff(fast, slow) < 1e-11 * (1.0 + sup_norm(slow)));
}
