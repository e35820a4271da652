#include <doctest.h>

#include "topodyn/bignat.hpp"

using namespace topodyn;

TEST_CASE("bignat decimal io and arithmetic") {
    CHECK(BigNat(0).decimal() == "0");
    CHECK(BigNat(1234567890123ULL).decimal() == "1234567890123");
    CHECK(BigNat::from_decimal("99999999999999999999") + BigNat(1) ==
          BigNat::from_decimal("100000000000000000000"));
    CHECK(BigNat::from_decimal("100000000000000000000") - BigNat(1) ==
          BigNat::from_decimal("99999999999999999999"));
    CHECK(BigNat(123456789) * BigNat(987654321) == BigNat(121932631112635269ULL));
    CHECK_THROWS_AS(BigNat(1) - BigNat(2), ArithmeticOverflow);
}

TEST_CASE("bignat pow") {
    CHECK(BigNat::pow(10, 23).decimal() == "100000000000000000000000");
    CHECK(BigNat::pow(2, 23).decimal() == "8388608");
    CHECK(BigNat::pow(2, 64).decimal() == "18446744073709551616");
    CHECK(BigNat::pow(10, 0).decimal() == "1");
    CHECK_THROWS_AS(BigNat::pow(10, 1u << 30), PrefixLimit);
}

TEST_CASE("bignat compare and digits") {
    CHECK(BigNat::from_decimal("123").compare(BigNat(124)) < 0);
    CHECK(BigNat::from_decimal("1000000000").decimal_digits() == 10);
    CHECK(BigNat(0).decimal_digits() == 1);
    CHECK(BigNat::pow(10, 23).to_u64() == std::nullopt);
    CHECK(BigNat(42).to_u64() == 42);
}

TEST_CASE("tower naturals compare lexicographically on exponents") {
    TowerNat eleven(BigNat(11));
    TowerNat m1 = eleven.add(BigNat(12)); // 23
    TowerNat a1 = TowerNat::power(10, m1);
    TowerNat b1 = a1.add(m1); // 10^23 + 23
    TowerNat v1 = b1.sub_tail(BigNat(11));
    CHECK(v1.str(10) == "100000000000000000000012");

    TowerNat m2 = b1.add(BigNat(12)); // 10^23 + 35
    TowerNat a2 = TowerNat::power(10, m2);
    TowerNat b2 = a2.add(m2);
    CHECK(b2.term_count() == 2);
    CHECK(a2.compare(b1) > 0);
    CHECK(b1.compare(b2) < 0);
    CHECK(b2.compare(b2) == 0);
    // tail comparison after equal exponent lists
    CHECK(b2.sub_tail(BigNat(1)).compare(b2) < 0);
    // structured rendering beyond the materialization cap
    CHECK(b2.str(10) == "10^(100000000000000000000035) + 100000000000000000000000 + 35");
}

TEST_CASE("tower materialization respects the digit cap") {
    TowerNat small = TowerNat::power(2, TowerNat(BigNat(23))).add(BigNat(12));
    auto m = small.materialize(2);
    REQUIRE(m.has_value());
    CHECK(m->decimal() == "8388620");
    TowerNat huge = TowerNat::power(10, TowerNat(BigNat(100000)));
    CHECK(huge.materialize(10, 64) == std::nullopt);
}
