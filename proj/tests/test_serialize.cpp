#include <doctest.h>

#include <cstdio>

#include "helpers.hpp"
#include "khspace/serialize.hpp"

using namespace kh;
using namespace kh::testing;

TEST_CASE("weight json schema round trip") {
  Weight w = sup_of(mul(Weight::jbracket_power(1, 2.0), Weight::constant(1, 5.0)),
                    add(Weight::jbracket_power(1, -1.0), Weight::constant(1, 1.0)).pow(0.5).reflect());
  json j = weight_to_json(w);
  Weight back = weight_from_json(j, 1);
  for (double x : {-9.0, -0.3, 0.0, 1.7, 14.0}) CHECK(back.eval1(x) == w.eval1(x));
  CHECK(back.certificate().C == w.certificate().C);
  CHECK(back.certificate().N == w.certificate().N);
}

TEST_CASE("weight json schema: exact field names and strictness") {
  CHECK_NOTHROW(weight_from_json(json{{"op", "jbpow"}, {"s", 2.0}}, 1));
  CHECK_NOTHROW(weight_from_json(json::parse(R"({"op":"mul","args":[{"op":"jbpow","s":1.0},{"op":"const","c":2.0}]})"), 1));
  CHECK_THROWS(weight_from_json(json{{"op", "jbpow"}, {"s", 2.0}, {"extra", 1}}, 1));  // unknown key
  CHECK_THROWS(weight_from_json(json{{"op", "bogus"}}, 1));
  CHECK_THROWS(weight_from_json(json{{"op", "pow"}, {"t", 1.0}}, 1));  // missing base
  CHECK_THROWS(weight_from_json(json{{"op", "const"}, {"c", -1.0}}, 1));
}

TEST_CASE("binary field container round trip at float precision") {
  GridSpec g(1, 16.0, 32);
  Field u = random_band_limited(g, 3, CorpusSpec{6, 1.0, false, 0.0});
  std::string path = "test_field_container.khsf";
  save_field(u, path);
  Field back = load_field(path);
  std::remove(path.c_str());

  CHECK(back.grid == u.grid);
  CHECK(back.domain == u.domain);
  double scale = sup_norm(u);
  for (std::size_t i = 0; i < u.size(); ++i)
    CHECK(std::abs(back.samples[i] - u.samples[i]) <= 1e-6 * scale);  // complex64 storage
}

TEST_CASE("field container rejects corrupt input") {
  std::string path = "test_field_container_bad.khsf";
  {
    FILE* f = std::fopen(path.c_str(), "wb");
    std::fputs("not a field container at all", f);
    std::fclose(f);
  }
  CHECK_THROWS(load_field(path));
  std::remove(path.c_str());
}

TEST_CASE("json field fixture round trip") {
  GridSpec g(1, 16.0, 16);
  Field u = random_band_limited(g, 9, CorpusSpec{3, 1.0, false, 0.0});
  Field back = field_from_json(field_to_json(u));
  CHECK(max_abs_diff(u, back) == 0.0);

  json j = field_to_json(u);
  j["samples"].erase(0);
  CHECK_THROWS(field_from_json(j));
}
