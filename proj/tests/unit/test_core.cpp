#include "doctest.h"

#include "kdvres/core/errors.hpp"
#include "kdvres/core/graded_poly.hpp"
#include "kdvres/core/linalg.hpp"
#include "kdvres/core/mvseries.hpp"
#include "kdvres/core/qseries.hpp"
#include "kdvres/core/rational.hpp"

#include <random>

using namespace kdvres;

namespace {

GradedPoly random_poly(std::mt19937& rng, const Catalog& cat, int terms) {
    std::uniform_int_distribution<int> id(0, 3), ex(0, 2), num(-5, 5), den(1, 4);
    GradedPoly p(cat);
    for (int t = 0; t < terms; ++t) {
        std::vector<Monomial::Factor> f;
        for (int k = 0; k < 2; ++k) f.emplace_back(id(rng), ex(rng));
        p.add_term(Monomial(cat, f), frac(num(rng), den(rng)));
    }
    return p;
}

}  // namespace

TEST_CASE("rational parse and print") {
    CHECK(parse_rational("-6/4") == frac(-3, 2));
    CHECK(to_fraction_string(parse_rational("3")) == "3/1");
    CHECK(to_display_string(frac(-1, 2)) == "-1/2");
    CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
    CHECK_THROWS_AS(parse_rational("1/-2"), ParseError);
    CHECK_THROWS_AS(parse_rational("abc"), ParseError);
    CHECK_THROWS_AS(parse_rational(""), ParseError);
}

TEST_CASE("graded poly basics") {
    auto cat = Catalog::diff_u();
    auto u = GradedPoly::generator(cat, 0);
    auto half_u = u * frac(-1, 2);
    auto sq = half_u * half_u;
    CHECK(sq == u * u * frac(1, 4));
    CHECK(sq.homogeneous_degree() == 4);
    CHECK(sq.to_string() == "1/4 u^2");

    auto u2 = GradedPoly::generator(cat, 2);
    auto p = u * u * frac(3, 8) - u2 * frac(1, 8);
    CHECK(p.is_homogeneous());
    CHECK(p.partial(0) == u * frac(3, 4));
    CHECK(p.max_generator() == 2);
}

TEST_CASE("catalog mismatch is rejected") {
    auto a = GradedPoly::generator(Catalog::diff_u(), 0);
    auto b = GradedPoly::generator(Catalog::d_ops(), 1);
    CHECK_THROWS_AS(a + b, CatalogMismatch);
    CHECK_THROWS_AS(a * b, CatalogMismatch);
}

TEST_CASE("ring axioms on random polynomials") {
    std::mt19937 rng(1234);
    auto cat = Catalog::weighted({1, 2, 3, 5});
    for (int trial = 0; trial < 40; ++trial) {
        auto a = random_poly(rng, cat, 4), b = random_poly(rng, cat, 4), c = random_poly(rng, cat, 3);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a + b == b + a);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * b == b * a);
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a - a).is_zero());
        CHECK(poly_add_mul(a, b, '*') == a * b);
    }
    CHECK_THROWS_AS(poly_add_mul(GradedPoly(cat), GradedPoly(cat), '/'), Error);
}

TEST_CASE("json round trip") {
    std::mt19937 rng(99);
    auto cat = Catalog::weighted({1, 2, 3, 5});
    for (int trial = 0; trial < 20; ++trial) {
        auto a = random_poly(rng, cat, 5);
        auto back = poly_from_json(cat, nlohmann::json::parse(to_json(a).dump()));
        CHECK(back == a);
    }
    CHECK_THROWS_AS(poly_from_json(cat, nlohmann::json::parse(R"([{"monomial":[[0,1]],"coeff":"1/0"}])")),
                    ParseError);
    CHECK_THROWS_AS(poly_from_json(cat, nlohmann::json::parse(R"({"x":1})")), ParseError);
}

TEST_CASE("q-series products") {
    auto chA = QSeries::euler_product(6, [](int i) { return i == 1; }) *
               QSeries::inverse_euler_product(6, [](int) { return true; });
    std::vector<int> want{1, 0, 1, 1, 2, 2, 4};
    for (int k = 0; k <= 6; ++k) CHECK(chA[k] == want[static_cast<std::size_t>(k)]);

    auto even = QSeries::inverse_euler_product(4, [](int i) { return i % 2 == 0; });
    CHECK(even[0] == 1);
    CHECK(even[1] == 0);
    CHECK(even[2] == 1);
    CHECK(even[3] == 0);
    CHECK(even[4] == 2);

    auto p = QSeries::inverse_euler_product(10, [](int) { return true; });
    CHECK((p * p.inverse()).equal_through(QSeries::one(10), 10));
    CHECK(p.log().exp().equal_through(p, 10));
    CHECK_THROWS(QSeries::constant(5, 0).inverse());
}

TEST_CASE("multivariate series") {
    auto L = SeriesLayout::get(2, 6);
    auto x = MVSeries::variable(L, 0), y = MVSeries::variable(L, 1);
    MVSeries one(L, 1);
    auto f = one + x + y * y;
    auto g = f.inverse();
    CHECK((f * g).equals(one));
    CHECK(f.log().derivative(0).equals(f.derivative(0) * g));
    auto e = (x + y).exp();
    CHECK(e.log().equals(x + y));
    CHECK(x.valuation() == 1);
    auto xy = x * y;
    CHECK(xy.precision() == 6);
    CHECK(xy.coefficient({1, 1}) == 1);
    CHECK_THROWS(f.exp());
}

TEST_CASE("exact linear algebra") {
    std::vector<QVector> cols{{1, 2}, {2, 4}, {0, 1}};
    auto k = kernel_basis(cols, 2);
    REQUIRE(k.size() == 1);
    CHECK(k[0] == QVector{-2, 1, 0});
    CHECK(rank_of(cols, 2) == 2);

    Subspace s(3);
    CHECK(s.add({frac(1, 2), 1, 0}));
    CHECK_FALSE(s.add({1, 2, 0}));
    CHECK(s.contains({-3, -6, 0}));
    CHECK_FALSE(s.contains({0, 0, 1}));
    CHECK(primitive({frac(-1, 2), frac(1, 3)}) == QVector{3, -2});
}

TEST_CASE("monomials of a degree") {
    CHECK(monomials_of_degree(Catalog::diff_u(), 4).size() == 2);
    CHECK(monomials_of_degree(Catalog::diff_u(), 16).size() == 55);
    CHECK(monomials_of_degree(Catalog::d_ops(), 6).size() == 4);
    CHECK(monomials_of_degree(Catalog::bar_s(), 8).size() == 5);
    CHECK(monomials_of_degree(Catalog::bar_s(), 7).empty());
    CHECK(monomials_of_degree(Catalog::d_ops(), 0).size() == 1);
}

TEST_CASE("subspace membership with free columns before a pivot") {
    Subspace s(3);
    s.add({0, 2, 1});
    // (1, 4, 2) is not in span{(0,2,1)}; (0, 4, 2) is
    CHECK_FALSE(s.contains({1, 4, 2}));
    CHECK(s.contains({0, 4, 2}));
    s.add({1, 0, 0});
    CHECK(s.contains({3, 4, 2}));
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> x(-3, 3);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<QVector> gens;
        for (int g = 0; g < 3; ++g) gens.push_back({x(rng), x(rng), x(rng), x(rng), x(rng), x(rng)});
        Subspace t(6);
        for (const auto& g : gens) t.add(g);
        QVector comb(6);
        for (int i = 0; i < 6; ++i)
            comb[static_cast<std::size_t>(i)] = gens[0][static_cast<std::size_t>(i)] * 2 - gens[2][static_cast<std::size_t>(i)] * frac(1, 3);
        CHECK(t.contains(comb));
        auto k = kernel_basis(gens, 6);
        CHECK(static_cast<int>(k.size()) == 3 - t.rank());
    }
}
