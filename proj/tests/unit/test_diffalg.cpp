#include "doctest.h"

#include "kdvres/core/errors.hpp"
#include "kdvres/diffalg/diffalg.hpp"

using namespace kdvres;
using namespace kdvres::diffalg;

namespace {

DiffPoly S4_expected() { return u(0) * u(0) * frac(3, 8) - u(2) * frac(1, 8); }

DiffPoly S6_expected() {
    return u(0).pow(3) * frac(-5, 16) + u(0) * u(2) * frac(5, 16) + u(1) * u(1) * frac(5, 32) - u(4) * frac(1, 32);
}

}  // namespace

TEST_CASE("d1 and variational derivative") {
    CHECK(d1(u(0)) == u(1));
    CHECK(d1(u(0) * u(0)) == u(0) * u(1) * Rational(2));
    CHECK(d1(S4_expected()) == u(3) * frac(-1, 8) + u(0) * u(1) * frac(3, 4));
    CHECK(variational_derivative(u(1) * u(2)).is_zero());
    CHECK(variational_derivative(u(0) * u(0)) == u(0) * Rational(2));
    CHECK(variational_derivative(u(0) * u(2)) == u(2) * Rational(2));
}

TEST_CASE("integrate_d1") {
    CHECK(integrate_d1(u(0) * u(1)) == u(0) * u(0) * frac(1, 2));
    CHECK(integrate_d1(u(3) * frac(-1, 8) + u(0) * u(1) * frac(3, 4)) == S4_expected());
    CHECK_THROWS_AS(integrate_d1(u(0) * u(0)), NotExact);
    CHECK_THROWS_AS(integrate_d1(u(1) * u(1)), NotExact);
    CHECK_THROWS_AS(integrate_d1(one()), Error);
    CHECK(integrate_d1(zero()).is_zero());
    // round trips
    for (const auto& p : {u(0) * u(2) * u(3), u(1).pow(3) - u(5), u(0).pow(4) * u(1) + u(2) * u(2)}) {
        CHECK(integrate_d1(d1(p)) == p);
        CHECK(variational_derivative(d1(p)).is_zero());
    }
}

TEST_CASE("S polynomials") {
    auto t = gen_S(12);
    CHECK(t(2) == u(0) * frac(-1, 2));
    CHECK(t(4) == S4_expected());
    CHECK(t(6) == S6_expected());
    for (int n = 2; n <= 12; n += 2) {
        CHECK(t(n).homogeneous_degree() == n);
        CHECK(is_zero(t(n).constant_term()));
        CHECK(t(n).grade_component(n) == t(n));
    }
    CHECK_THROWS(gen_S(3));
    CHECK_THROWS_AS(t(14), InsufficientDepth);
}

TEST_CASE("flows") {
    Hierarchy h;
    CHECK(h.flow(1, u(0)) == u(1));
    CHECK(h.flow(3, u(0)) == u(3) * frac(1, 4) - u(0) * u(1) * frac(3, 2));
    CHECK((h.flow(3, h.S(2)) - h.flow(1, h.S(4))).is_zero());
    CHECK((d1(d1(h.S(2))) - h.S(4) * Rational(4) + h.S(2) * h.S(2) * Rational(6)).is_zero());
    for (int m = 1; m <= 7; m += 2)
        for (int n = m + 2; n <= 7; n += 2)
            for (int k = 0; k <= 6; ++k)
                CHECK((h.flow(m, h.flow_image(n, k)) - h.flow(n, h.flow_image(m, k))).is_zero());
    for (int a = 1; a <= 4; ++a)
        for (int b = a + 1; b <= 4; ++b) CHECK((h.flow(2 * a - 1, h.S(2 * b)) - h.flow(2 * b - 1, h.S(2 * a))).is_zero());
    CHECK_THROWS(h.flow(2, u(0)));
}

TEST_CASE("literal flow normalization") {
    Hierarchy h(Rational(1));
    // homogeneous in the flows, so a uniform rescaling keeps it
    CHECK((h.flow(3, h.S(2)) - h.flow(1, h.S(4))).is_zero());
    auto d11 = h.flow(1, h.flow(1, h.S(2)));
    CHECK_FALSE((d11 - h.S(4) * Rational(4) + h.S(2) * h.S(2) * Rational(6)).is_zero());
    CHECK(h.flow(1, u(0)) == u(1) * frac(-1, 2));
}

TEST_CASE("zeta") {
    Hierarchy h;
    CHECK(h.zeta(1, 1) == u(0) * frac(-1, 2));
    CHECK(h.zeta(1, 3) == S4_expected());
    CHECK(h.zeta(3, 3) ==
          u(4) * frac(-1, 32) + u(0) * u(2) * frac(3, 8) + u(1) * u(1) * frac(3, 32) - u(0).pow(3) * frac(3, 8));
    for (int i = 1; i <= 7; i += 2)
        for (int j = i; j <= 7; j += 2) {
            auto z = h.zeta(i, j);
            CHECK(z == h.zeta(j, i));
            CHECK(z.homogeneous_degree() == i + j);
            CHECK(z == integrate_d1(h.flow(j, h.S(i + 1))));
        }
}

TEST_CASE("omega and eta") {
    Hierarchy h;
    CHECK(h.omega(1, 1) == h.S(2));
    CHECK(h.omega(1, 3) == h.S(4));
    CHECK(h.omega(3, 1) == h.S(4) - h.S(2) * h.S(2));
    CHECK(h.check_omega_closed(1, 1, 3));
    CHECK(h.check_omega_closed(3, 1, 3));
    CHECK(h.check_omega_closed(1, 3, 3));
    CHECK(h.check_omega_closed(5, 3, 7));
    for (int n = 1; n <= 7; n += 2)
        for (int m = 1; m <= 7; m += 2) CHECK(h.omega(n, m).homogeneous_degree() == n + m);
    CHECK(h.eta_a(1).is_zero());
    CHECK(h.eta_a(3) == u(1) * frac(-1, 12));
    CHECK(h.eta_a(5).homogeneous_degree() == 5);
    for (int n = 1; n <= 5; n += 2)
        for (int m = 1; m <= 7; m += 2) CHECK(h.eta_residual(n, m).is_zero());
}

TEST_CASE("S table json") {
    auto t = gen_S(6);
    auto j = to_json(t);
    REQUIRE(j.size() == 3);
    CHECK(poly_from_json(Catalog::diff_u(), j[1]["poly"]) == t(4));
}
