#include <doctest.h>

#include "framefield/error.hpp"
#include "framefield/galois.hpp"

using namespace framefield;

namespace {

std::vector<std::pair<std::uint32_t, std::uint32_t>> small_fields() {
  return {{2, 1}, {3, 1}, {5, 1}, {7, 1}, {11, 1}, {13, 1}, {2, 2}, {2, 3}, {2, 4}, {3, 2}};
}

}  // namespace

TEST_CASE("primality and irreducibility") {
  CHECK(is_prime(2));
  CHECK(is_prime(65521));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(4));
  CHECK_FALSE(is_prime(91));

  CHECK(is_irreducible(2, {1, 1, 1}));        // x^2 + x + 1
  CHECK_FALSE(is_irreducible(2, {1, 0, 1}));  // (x + 1)^2
  CHECK(is_irreducible(3, {1, 0, 1}));        // x^2 + 1 has no root mod 3
  CHECK_FALSE(is_irreducible(5, {1, 0, 1}));  // 2^2 + 1 = 0 mod 5
  CHECK(is_irreducible(2, {1, 1, 0, 0, 1}));  // x^4 + x + 1
  CHECK_FALSE(is_irreducible(2, {1, 0, 1, 0, 1}));  // (x^2 + x + 1)^2
}

TEST_CASE("built-in and fallback moduli are irreducible") {
  for (std::uint32_t p : {2u, 3u, 5u, 7u})
    for (std::uint32_t c : {2u, 3u, 4u}) {
      const auto m = default_modulus(p, c);
      CHECK(m.size() == c + 1);
      CHECK(m.back() == 1);
      CHECK(is_irreducible(p, m));
    }
  CHECK(default_modulus(2, 2) == std::vector<std::uint32_t>{1, 1, 1});
  CHECK(default_modulus(3, 3) == std::vector<std::uint32_t>{1, 2, 0, 1});
  CHECK(default_modulus(5, 2) == std::vector<std::uint32_t>{2, 0, 1});
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(FieldParams::make(4, 1).validate(), ParamError);
  FieldParams bad = FieldParams::make(2, 2);
  bad.modulus = {1, 0, 1};
  CHECK_THROWS_AS(bad.validate(), ParamError);
  bad.modulus = {1, 1, 2};
  CHECK_THROWS_AS(bad.validate(), ParamError);
  CHECK_NOTHROW(FieldParams::make(3, 2).validate());
  CHECK(FieldParams::make(3, 2).q() == 9);
}

TEST_CASE("hand-computed products") {
  // GF(4) = GF(2)[z]/(z^2 + z + 1): digit 2 is z, digit 3 is 1 + z.
  const GaloisField f4(FieldParams::make(2, 2));
  CHECK(f4.to_digit(f4.mul(f4.from_digit(2), f4.from_digit(2))) == 3);
  CHECK(f4.to_digit(f4.mul(f4.from_digit(2), f4.from_digit(3))) == 1);
  CHECK(f4.to_digit(f4.add(f4.from_digit(2), f4.from_digit(3))) == 1);

  // GF(9) = GF(3)[z]/(z^2 + 1): z^2 = 2. Digit 3 is z.
  const GaloisField f9(FieldParams::make(3, 2));
  CHECK(f9.to_digit(f9.mul(f9.from_digit(3), f9.from_digit(3))) == 2);
  CHECK(f9.proj0(f9.from_digit(5)) == 2);  // 5 = 2 + 1*3

  const GaloisField f5(FieldParams::make(5, 1));
  CHECK(f5.to_digit(f5.inverse(f5.from_digit(2))) == 3);
  CHECK(f5.to_digit(f5.neg(f5.from_digit(2))) == 3);
}

TEST_CASE("field axioms hold exhaustively for q <= 16") {
  for (auto [p, c] : small_fields()) {
    const GaloisField f(FieldParams::make(p, c));
    const std::uint64_t q = f.q();
    CAPTURE(q);
    std::vector<GFElem> el;
    for (std::uint64_t d = 0; d < q; ++d) el.push_back(f.from_digit(d));
    const GFElem zero = f.zero(), one = f.one();
    bool ok = true;
    for (const auto& a : el) {
      ok &= f.add(a, zero) == a && f.mul(a, one) == a;
      ok &= f.add(a, f.neg(a)) == zero;
      if (!(a == zero)) ok &= f.mul(a, f.inverse(a)) == one;
      for (const auto& b : el) {
        ok &= f.add(a, b) == f.add(b, a) && f.mul(a, b) == f.mul(b, a);
        ok &= f.sub(f.add(a, b), b) == a;
        if (!(a == zero) && !(b == zero)) ok &= !(f.mul(a, b) == zero);
        for (const auto& c3 : el) {
          ok &= f.add(f.add(a, b), c3) == f.add(a, f.add(b, c3));
          ok &= f.mul(f.mul(a, b), c3) == f.mul(a, f.mul(b, c3));
          ok &= f.mul(a, f.add(b, c3)) == f.add(f.mul(a, b), f.mul(a, c3));
        }
      }
    }
    CHECK(ok);
  }
}

TEST_CASE("digit tables agree with element arithmetic") {
  for (auto [p, c] : small_fields()) {
    const GaloisField f(FieldParams::make(p, c));
    const std::uint64_t q = f.q();
    for (std::uint64_t a = 0; a < q; ++a)
      for (std::uint64_t b = 0; b < q; ++b) {
        const GFElem x = f.from_digit(a), y = f.from_digit(b);
        REQUIRE(f.digit_add(a, b) == f.to_digit(f.add(x, y)));
        REQUIRE(f.digit_sub(a, b) == f.to_digit(f.sub(x, y)));
        REQUIRE(f.digit_pair(a, b) == f.proj0(f.mul(x, y)));
      }
  }
}

TEST_CASE("range and parameter errors") {
  const GaloisField f(FieldParams::make(3, 1));
  CHECK_THROWS_AS(f.from_digit(3), RangeError);
  CHECK_THROWS_AS(f.inverse(f.zero()), ParamError);
  CHECK_THROWS_AS(f.add(GFElem{{7}}, f.one()), ParamError);
  CHECK_FALSE(f.is_valid(GFElem{{1, 1}}));
}
