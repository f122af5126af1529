#include <doctest.h>

#include <random>

#include "xlie/exact_real.hpp"

using xlie::ExactReal;

namespace {

ExactReal rt(long d) { return ExactReal::radical(1, static_cast<ExactReal::Radicand>(d)); }

ExactReal random_value(std::mt19937_64& rng) {
  static const long radicands[] = {1, 2, 3, 5, 6, 7, 10};
  std::uniform_int_distribution<long> num(-9, 9), den(1, 7), pick(0, 6), terms(1, 3);
  ExactReal out;
  for (long t = terms(rng); t > 0; --t) out += ExactReal::rational(num(rng), den(rng)) * rt(radicands[pick(rng)]);
  return out;
}

}  // namespace

TEST_CASE("radicals combine and reduce") {
  CHECK(rt(2) + rt(2) == ExactReal::radical(2, 2));
  CHECK(rt(6) * rt(2) == ExactReal::radical(2, 3));
  CHECK(rt(12) == ExactReal::radical(2, 3));
  CHECK(rt(2) * rt(2) == ExactReal(2));
  CHECK((rt(2) - rt(2)).is_zero());
  CHECK(ExactReal::sqrt_rational(mpq_class(9, 2)) == ExactReal::radical(mpq_class(3, 2), 2));
  CHECK(ExactReal::sqrt_rational(24) == ExactReal::radical(2, 6));
  CHECK(ExactReal::sqrt_rational(mpq_class(1, 6)) == ExactReal::radical(mpq_class(1, 6), 6));
  CHECK_THROWS_AS(ExactReal::sqrt_rational(0), std::domain_error);
  CHECK_THROWS_AS(ExactReal::sqrt_rational(-2), std::domain_error);
}

TEST_CASE("inverse of a two-term number") {
  ExactReal x = ExactReal(1) + rt(2);
  CHECK(x.inverse() == ExactReal(-1) + rt(2));
  ExactReal y = rt(2) + rt(3) + rt(5);
  CHECK(y * y.inverse() == ExactReal(1));
  CHECK_THROWS(ExactReal().inverse());
}

TEST_CASE("sign decides close calls exactly") {
  // sqrt(2) + sqrt(3) vs sqrt(10): 5 + 2 sqrt(6) < 10
  CHECK((rt(2) + rt(3) - rt(10)).sign() == -1);
  // 99/70 is just above sqrt(2)
  CHECK((rt(2) - ExactReal::rational(99, 70)).sign() == -1);
  CHECK((rt(2) - ExactReal::rational(140, 99)).sign() == 1);
  CHECK(ExactReal().sign() == 0);
  CHECK(rt(3) < ExactReal(2));
}

TEST_CASE("text form round trips") {
  CHECK(rt(3).str() == "1*sqrt(3)");
  CHECK(ExactReal::rational(-1, 2).str() == "-1/2");
  CHECK(ExactReal().str() == "0");
  CHECK(ExactReal::parse("1/2 - 3*sqrt(2)") == ExactReal::rational(1, 2) - ExactReal::radical(3, 2));
  CHECK(ExactReal::parse("sqrt(8)") == ExactReal::radical(2, 2));
  CHECK_THROWS_AS(ExactReal::parse("2 sqrt"), std::invalid_argument);
  CHECK_THROWS_AS(ExactReal::parse(""), std::invalid_argument);

  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    ExactReal x = random_value(rng);
    CHECK(ExactReal::parse(x.str()) == x);
    CHECK(ExactReal::from_json(x.to_json()) == x);
  }
}

TEST_CASE("field axioms on random values") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    ExactReal a = random_value(rng), b = random_value(rng), c = random_value(rng);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a - a).is_zero());
    if (!a.is_zero()) CHECK(a * a.inverse() == ExactReal(1));
    if (!b.is_zero()) CHECK((a / b) * b == a);
    // sign agrees with floating point away from zero
    double d = a.to_double();
    if (d > 1e-9) CHECK(a.sign() == 1);
    if (d < -1e-9) CHECK(a.sign() == -1);
  }
}

TEST_CASE("parity helper") {
  CHECK(xlie::pow_minus_one(0) == ExactReal(1));
  CHECK(xlie::pow_minus_one(3) == ExactReal(-1));
  CHECK(xlie::pow_minus_one(-2) == ExactReal(1));
}
