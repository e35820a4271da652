#include <doctest.h>

#include "topodyn/rational.hpp"

using namespace topodyn;

TEST_CASE("rational arithmetic is exact and reduced") {
    CHECK(Rat(6, 8) == Rat(3, 4));
    CHECK(Rat(1, 3) + Rat(1, 6) == Rat(1, 2));
    CHECK(Rat(1, 3) * Rat(3, 5) == Rat(1, 5));
    CHECK(Rat(7, 3).mod1() == Rat(1, 3));
    CHECK(Rat(-1, 4).mod1() == Rat(3, 4));
    CHECK(Rat(-7, 2).floor() == -4);
    CHECK(Rat::from_string("610/987") == Rat(610, 987));
    CHECK(Rat::from_string("-3") == Rat(-3));
    CHECK_THROWS_AS(Rat(1, 0), ArithmeticOverflow);
}

TEST_CASE("from_double recovers exact dyadic values") {
    CHECK(Rat::from_double(0.5) == Rat(1, 2));
    CHECK(Rat::from_double(0.3) == Rat(5404319552844595LL, 18014398509481984LL));
    CHECK(Rat::from_double(-1.25) == Rat(-5, 4));
}

TEST_CASE("circle distance wraps") {
    CHECK(circle_dist(Rat(1, 10), Rat(9, 10)) == Rat(1, 5));
    CHECK(circle_dist(Rat(0), Rat(1, 2)) == Rat(1, 2));
    CHECK(circle_dist(Rat(1, 4), Rat(1, 4)) == Rat(0));
}

TEST_CASE("separation window matches the dyadic metric") {
    // d > eps iff the first disagreement lies within L(eps)+1 symbols
    CHECK(separation_window(Rat(3, 10)) == 1);
    CHECK(separation_window(Rat(1, 2)) == 0);
    CHECK(separation_window(Rat(1, 4)) == 1);
    CHECK(separation_window(Rat(2, 10)) == 2);
    CHECK_THROWS_AS(separation_window(Rat(1)), BadDelta);
}

TEST_CASE("arc overlap on the circle, half-open semantics") {
    Arc a{Rat(0), Rat(1, 8)};
    Arc b{Rat(1, 8), Rat(1, 8)};
    CHECK_FALSE(arcs_overlap(a, b)); // touch at 1/8 only, both half-open
    Arc c{Rat(15, 16), Rat(1, 8)};   // wraps into [0, 1/16)
    CHECK(arcs_overlap(a, c));
    CHECK(arcs_overlap(a, a));
    Arc full{Rat(0), Rat(1)};
    CHECK(arcs_overlap(full, b));
}

TEST_CASE("interval circle sup") {
    CHECK(interval_circle_sup(Rat(0), Rat(1, 4)) == Rat(1, 4));
    CHECK(interval_circle_sup(Rat(-1, 8), Rat(1, 8)) == Rat(1, 8));
    CHECK(interval_circle_sup(Rat(1, 4), Rat(3, 4)) == Rat(1, 2)); // contains 1/2
    CHECK(interval_circle_sup(Rat(0), Rat(2)) == Rat(1, 2));       // spans the circle
    CHECK(interval_circle_sup(Rat(3, 8), Rat(7, 16)) == Rat(7, 16));
}
