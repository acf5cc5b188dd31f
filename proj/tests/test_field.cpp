#include <doctest.h>

#include <array>
#include <cmath>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "nnsig/errors.hpp"
#include "nnsig/field.hpp"
#include "nnsig/rng.hpp"

using namespace nnsig;

namespace {
SeededRng make_rng(const char* domain) {
  const std::array<std::uint8_t, 4> seed{1, 2, 3, 4};
  return SeededRng(seed, domain);
}
} // namespace

TEST_CASE("modulus validation") {
  CHECK_NOTHROW(FieldParams(3));
  CHECK_NOTHROW(FieldParams(257));
  CHECK_NOTHROW(FieldParams(2305843009213693951ULL)); // 2^61 - 1
  CHECK_THROWS_AS(FieldParams(4), InvalidParameter);
  CHECK_THROWS_AS(FieldParams(2), InvalidParameter);
  CHECK_THROWS_AS(FieldParams(1), InvalidParameter);
  CHECK_THROWS_AS(FieldParams(561), InvalidParameter); // Carmichael
  CHECK_THROWS_AS(FieldParams(4611686018427387847ULL), InvalidParameter); // prime, 62 bits
  try {
    FieldParams bad(4);
    FAIL("expected rejection");
  } catch (const InvalidParameter& e) {
    CHECK(std::string(e.what()).find("not prime") != std::string::npos);
  }
}

TEST_CASE("primality agrees with trial division below 20000") {
  for (std::uint64_t n = 0; n < 20000; ++n) {
    bool prime = n >= 2;
    for (std::uint64_t d = 2; d * d <= n && prime; ++d) prime = n % d != 0;
    REQUIRE_MESSAGE(is_prime_u64(n) == prime, n);
  }
}

TEST_CASE("element width") {
  CHECK(FieldParams(257).bits_per_element() == 9);
  CHECK(FieldParams(257).bytes_per_element() == 2);
  CHECK(FieldParams(251).bits_per_element() == 8);
  CHECK(FieldParams(251).bytes_per_element() == 1);
  CHECK(FieldParams(5).bits_per_element() == 3);
  CHECK(FieldParams(7919).bits_per_element() == 13);
  for (std::uint64_t p : {3ULL, 5ULL, 7ULL, 257ULL, 65537ULL, 7919ULL}) {
    const FieldParams fp(p);
    const unsigned k = fp.bits_per_element();
    CHECK((1ULL << k) > p - 1);
    CHECK((1ULL << (k - 1)) <= p - 1);
  }
}

TEST_CASE("modular activation") {
  const FieldParams p7(7);
  CHECK(f_activate(10, p7).value == 3);
  CHECK(f_activate(-3, p7).value == 4);
  CHECK(f_activate(0, p7).value == 0);
  CHECK(f_activate(-7, p7).value == 0);
  CHECK(f_activate(-14, p7).value == 0);
  CHECK(f_activate(INT64_MIN, p7).value == static_cast<std::uint64_t>(((INT64_MIN % 7) + 7) % 7));
  CHECK(f_activate(INT64_MAX, p7).value == static_cast<std::uint64_t>(INT64_MAX % 7));

  auto rng = make_rng("activate");
  for (std::uint64_t p : {5ULL, 257ULL, 7919ULL, 2305843009213693951ULL}) {
    const FieldParams fp(p);
    const auto sp = static_cast<std::int64_t>(p);
    for (int i = 0; i < 2000; ++i) {
      const auto x = static_cast<std::int64_t>(rng());
      const auto expected = static_cast<std::uint64_t>(((x % sp) + sp) % sp);
      REQUIRE(f_activate(x, fp).value == expected);
    }
  }
}

TEST_CASE("basic arithmetic") {
  const FieldParams p7(7);
  CHECK(p7.add({3}, {5}).value == 1);
  CHECK(p7.sub({3}, {5}).value == 5);
  CHECK(p7.mul({3}, {5}).value == 1);
  CHECK(p7.inv({3}).value == 5);
  CHECK(p7.neg({0}).value == 0);
  CHECK(p7.neg({2}).value == 5);
  CHECK(p7.pow({3}, 6).value == 1);
  CHECK(p7.pow({3}, 0).value == 1);
  CHECK_THROWS_AS(p7.inv({0}), DivisionByZero);

  // exhaustive search for the inverse of 3
  std::uint64_t found = 0;
  for (std::uint64_t x = 1; x < 7; ++x) {
    if (3 * x % 7 == 1) found = x;
  }
  CHECK(found == p7.inv({3}).value);

  const FieldParams p11(11);
  for (std::uint64_t a = 1; a < 11; ++a) CHECK(p11.mul({a}, p11.inv({a})).value == 1);
}

TEST_CASE("field axioms on random triples") {
  auto rng = make_rng("axioms");
  for (std::uint64_t p : {5ULL, 257ULL, 7919ULL}) {
    const FieldParams fp(p);
    for (int i = 0; i < 10000; ++i) {
      const auto a = sample_uniform(rng, fp, false);
      const auto b = sample_uniform(rng, fp, false);
      const auto c = sample_uniform(rng, fp, false);
      REQUIRE(fp.add(a, b) == fp.add(b, a));
      REQUIRE(fp.mul(a, b) == fp.mul(b, a));
      REQUIRE(fp.add(fp.add(a, b), c) == fp.add(a, fp.add(b, c)));
      REQUIRE(fp.mul(fp.mul(a, b), c) == fp.mul(a, fp.mul(b, c)));
      REQUIRE(fp.mul(a, fp.add(b, c)) == fp.add(fp.mul(a, b), fp.mul(a, c)));
      REQUIRE(fp.sub(fp.add(a, b), b) == a);
      REQUIRE(fp.add(a, fp.neg(a)).value == 0);
      if (a.value != 0) REQUIRE(fp.mul(a, fp.inv(a)).value == 1);
    }
  }
}

TEST_CASE("61-bit products do not overflow") {
  const FieldParams fp(2305843009213693951ULL);
  const FieldElement big{fp.modulus() - 1};
  CHECK(fp.mul(big, big).value == 1);
  CHECK(fp.add(big, big).value == fp.modulus() - 2);
  CHECK(fp.mul(fp.inv({123456789}), {123456789}).value == 1);
}

TEST_CASE("sampling determinism") {
  const FieldParams fp(257);
  auto r1 = make_rng("sample");
  auto r2 = make_rng("sample");
  for (int i = 0; i < 1000; ++i) {
    REQUIRE(sample_uniform(r1, fp, false) == sample_uniform(r2, fp, false));
  }
  auto r3 = make_rng("other");
  auto r4 = make_rng("sample");
  int same = 0;
  for (int i = 0; i < 1000; ++i) {
    same += sample_uniform(r3, fp, false) == sample_uniform(r4, fp, false);
  }
  CHECK(same < 20);
}

TEST_CASE("nonzero sampling never yields zero") {
  const FieldParams fp(5);
  auto rng = make_rng("nonzero");
  std::array<int, 5> hist{};
  for (int i = 0; i < 100000; ++i) ++hist[sample_uniform(rng, fp, true).value];
  CHECK(hist[0] == 0);
  for (int v = 1; v < 5; ++v) CHECK(hist[v] > 0);
}

TEST_CASE("uniform sampling passes chi-square at 0.01") {
  const FieldParams fp(257);
  auto rng = make_rng("chi-square");
  constexpr int kDraws = 100000;
  std::vector<int> hist(257, 0);
  for (int i = 0; i < kDraws; ++i) ++hist[sample_uniform(rng, fp, false).value];
  const double expected = static_cast<double>(kDraws) / 257.0;
  double stat = 0;
  for (int h : hist) stat += (h - expected) * (h - expected) / expected;
  const boost::math::chi_squared dist(256);
  const double critical = boost::math::quantile(boost::math::complement(dist, 0.01));
  CHECK(stat < critical);
}

TEST_CASE("element encoding") {
  const FieldParams fp(257);
  ByteWriter out;
  encode_element(256, fp, out);
  encode_element(1, fp, out);
  CHECK(out.bytes() == Bytes{0x00, 0x01, 0x01, 0x00});
  ByteReader in(out.bytes());
  CHECK(decode_element(in, fp) == 256);
  CHECK(decode_element(in, fp) == 1);
  CHECK(in.at_end());

  const Bytes bad{0x01, 0x01}; // 257
  ByteReader bad_in(bad);
  CHECK_THROWS_AS(decode_element(bad_in, fp), MalformedEncoding);
  const Bytes short_buf{0x01};
  ByteReader short_in(short_buf);
  CHECK_THROWS_AS(decode_element(short_in, fp), MalformedEncoding);
}

TEST_CASE("operation counting folds into enclosing scopes") {
  const FieldParams fp(7);
  ScopedOpCount outer;
  fp.mul({2}, {3});
  {
    ScopedOpCount inner;
    fp.add({2}, {3});
    fp.add({2}, {3});
    CHECK(inner.tally().add == 2);
    CHECK(inner.tally().mul == 0);
  }
  fp.inv({3});
  CHECK(outer.tally().mul == 1);
  CHECK(outer.tally().add == 2);
  CHECK(outer.tally().inv == 1);
}
