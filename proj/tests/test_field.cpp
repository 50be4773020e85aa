#include "doctest.h"

#include "gmorita/error.hpp"
#include "gmorita/field.hpp"

using namespace gmorita;

TEST_CASE("prime field construction rejects composites and out-of-range moduli") {
  CHECK_THROWS_AS(PrimeField(1), Error);
  CHECK_THROWS_AS(PrimeField(4), Error);
  CHECK_THROWS_AS(PrimeField((1ull << 32) + 15), Error);
  CHECK_NOTHROW(PrimeField(2));
  CHECK_NOTHROW(PrimeField(2147483647));
}

TEST_CASE("field axioms hold exhaustively for small primes") {
  for (std::uint64_t p : {2, 3, 5, 7, 11}) {
    PrimeField F(p);
    for (Scalar a = 0; a < p; ++a) {
      CHECK(F.add(a, F.neg(a)) == 0);
      if (a)
        CHECK(F.mul(a, F.inv(a)) == 1);
      CHECK(F.pow(a, p) == a);
      for (Scalar b = 0; b < p; ++b) {
        CHECK(F.sub(F.add(a, b), b) == a);
        CHECK(F.mul(a, b) == (a * b) % p);
      }
    }
  }
}

TEST_CASE("large prime arithmetic does not overflow") {
  PrimeField F(2147483647);
  Scalar a = 2147483646;
  CHECK(F.mul(a, a) == 1);
  CHECK(F.add(a, a) == 2147483645);
  CHECK(F.mul(F.inv(123456789), 123456789) == 1);
  CHECK(F.from_int(-1) == a);
  CHECK_THROWS_AS(F.inv(0), Error);
}
