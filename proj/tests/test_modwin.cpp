#include <doctest.h>

#include "helpers.hpp"
#include "khspace/modwin.hpp"

using namespace kh;
using namespace kh::testing;

namespace {
constexpr double inf = std::numeric_limits<double>::infinity();
}

TEST_CASE("short-time transform of zero and of characters") {
  GridSpec g(1, 16.0, 32);
  Window chi = Window::bump(g, {8.0}, 1.5);

  Field zero(g, Domain::space);
  auto Vz = short_time_transform(zero, chi);
  for (const auto& v : Vz.values) CHECK(std::abs(v) == 0.0);

  // character e^{i x xi0}: |V(y, xi)| = |chihat(xi - xi0)| independent of y
  Field ch = character(g, {4});
  auto V = short_time_transform(ch, chi);
  for (std::size_t x = 0; x < g.size(); ++x) {
    double ref = std::abs(V.at(0, x));
    for (std::size_t y = 1; y < g.size(); ++y)
      CHECK(std::abs(V.at(y, x)) == doctest::Approx(ref).epsilon(1e-10).scale(1.0));
  }
  // and the profile is |chihat| shifted to xi0
  Field chihat = dft(chi.field);
  for (std::size_t x = 0; x < g.size(); ++x) {
    std::size_t shifted = (x + g.size() - 4) % g.size();
    CHECK(std::abs(V.at(0, x)) ==
          doctest::Approx(std::abs(chihat.samples[shifted])).epsilon(1e-9).scale(1.0));
  }
}

TEST_CASE("narrow window trades frequency concentration for spread") {
  GridSpec g(1, 16.0, 64);
  Window narrow = Window::bump(g, {8.0}, 0.8);
  Window wide = Window::bump(g, {8.0}, 3.0);
  Field u = character(g, {0});

  auto spread = [&](const Window& w) {
    auto U = modulation_profile(u, w, 2.0);
    double m0 = 0.0;
    double m2 = 0.0;
    for (std::size_t i = 0; i < U.size(); ++i) {
      double xi = g.freq1(static_cast<int>(i));
      m0 += U[i] * U[i];
      m2 += xi * xi * U[i] * U[i];
    }
    return std::sqrt(m2 / m0);
  };
  CHECK(spread(narrow) / spread(wide) > 1.0);
}

TEST_CASE("modulation norm axioms") {
  GridSpec g(1, 16.0, 32);
  Window chi = Window::bump(g, {8.0}, 1.5);
  Field u = random_band_limited(g, 5, CorpusSpec{6, 1.0, false, 0.0});
  Field v = random_band_limited(g, 6, CorpusSpec{6, 1.0, false, 0.0});

  for (double p : {1.0, 2.0, inf}) {
    double nu = modulation_norm(u, chi, p);
    CHECK(modulation_norm(cplx{0.0, 2.0} * u, chi, p) == doctest::Approx(2.0 * nu).epsilon(1e-11));
    CHECK(modulation_norm(u + v, chi, p) <=
          nu + modulation_norm(v, chi, p) + 1e-10 * (1.0 + nu));
  }
}

TEST_CASE("counting-normalized profiles nest in p") {
  GridSpec g(1, 16.0, 32);
  Window chi = Window::bump(g, {8.0}, 1.5);
  Field u = random_band_limited(g, 9, CorpusSpec{6, 1.0, false, 0.0});
  auto u1 = modulation_profile_counting(u, chi, 1.0);
  auto u2 = modulation_profile_counting(u, chi, 2.0);
  auto ui = modulation_profile_counting(u, chi, inf);
  for (std::size_t b = 0; b < u1.size(); ++b) {
    CHECK(u2[b] <= u1[b] * (1 + 1e-12));
    CHECK(ui[b] <= u2[b] * (1 + 1e-12));
  }
  // volume-normalized relation: U_inf <= h^{-n/p} U_p
  auto up = modulation_profile(u, chi, 2.0);
  double factor = std::pow(g.cell_volume(), -0.5);
  for (std::size_t b = 0; b < up.size(); ++b) CHECK(ui[b] <= factor * up[b] * (1 + 1e-12));
}

TEST_CASE("embedding inequality with the paired windows") {
  GridSpec g(1, 16.0, 64);
  auto [chi, chit] = embedding_window_pair(g, {8.0}, 1.5);
  Weight k = Weight::jbracket_power(1, 2.0);

  Field zero(g, Domain::space);
  auto z = embedding_check(zero, chi, chit, k, 2.0);
  CHECK(z.actual == 0.0);
  CHECK(z.pass);

  for (std::uint64_t s = 0; s < 25; ++s) {
    Field u = random_band_limited(g, s, CorpusSpec{6, 1.0, false, 0.0});
    for (double p : {1.0, 2.0, inf}) {
      auto chk = embedding_check(u, chi, chit, k, p);
      CHECK(chk.pass);
    }
  }

  // scaling k by 10 rescales both sides consistently
  Weight k10 = mul(Weight::constant(1, 10.0), k);
  Field u = random_band_limited(g, 99, CorpusSpec{6, 1.0, false, 0.0});
  auto a = embedding_check(u, chi, chit, k, 2.0);
  auto b = embedding_check(u, chi, chit, k10, 2.0);
  CHECK(a.pass);
  CHECK(b.pass);
  CHECK(b.actual == doctest::Approx(a.actual).epsilon(1e-12));  // actual does not see k

  // mismatched pair is rejected
  Window bad = Window::bump(g, {8.0}, 1.0);
  CHECK_THROWS(embedding_check(u, chi, bad, k, 2.0));
}

TEST_CASE("modulation norm ignores window translation") {
  GridSpec g(1, 16.0, 32);
  Window chi = Window::bump(g, {8.0}, 1.5);
  Window moved = Window::bump(g, {8.0 + 4 * g.spacing()}, 1.5);
  for (std::uint64_t s = 0; s < 6; ++s) {
    Field u = random_band_limited(g, s, CorpusSpec{5, 1.0, false, 0.0});
    for (double p : {2.0, inf}) {
      double a = modulation_norm(u, chi, p);
      double b = modulation_norm(u, moved, p);
      CHECK(std::abs(a - b) <= 1e-10 * (a + 1.0));
    }
  }
}
