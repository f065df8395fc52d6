#include <catch2/catch.hpp>

#include <faso/grade.hpp>

using namespace faso;

TEST_CASE("grade construction rejects values outside the lattice") {
    CHECK_THROWS_AS(Grade(1.5), std::domain_error);
    CHECK_THROWS_AS(Grade(-0.1), std::domain_error);
    CHECK(Grade(0.0).value() == 0.0);
    CHECK(Grade(1.0).value() == 1.0);
}

TEST_CASE("clamped construction saturates") {
    CHECK(Grade::clamped(1.5).value() == 1.0);
    CHECK(Grade::clamped(-2.0).value() == 0.0);
    CHECK(Grade::clamped(0.25).value() == 0.25);
}

TEST_CASE("join is max and meet is min") {
    Grade a(0.3);
    Grade b(0.8);
    CHECK(join(a, b).value() == 0.8);
    CHECK(meet(a, b).value() == 0.3);
}

TEST_CASE("tolerance comparisons use the absolute epsilon") {
    Tolerance tol;
    CHECK(tol.eq(0.5, 0.5 + 1e-12));
    CHECK(tol.leq(0.5 + 1e-12, 0.5));
    CHECK_FALSE(tol.lt(0.5, 0.5 + 1e-12));
    CHECK(tol.lt(0.4, 0.5));
    CHECK(tol.gt(0.5, 0.4));
    CHECK(tol.compare(2.85, Rel::Le, 5.0));
    CHECK_FALSE(tol.compare(8.94, Rel::Le, 7.0));
    CHECK(tol.compare(5.0, Rel::Le, 5.0));
    CHECK(tol.compare(5.0, Rel::Ge, 5.0));
}
