#include "doctest.h"

#include "kdvres/core/errors.hpp"
#include "kdvres/taulab/taulab.hpp"

using namespace kdvres;
using namespace kdvres::taulab;

namespace {

const Truncation kSmall{6, 6, 3};

}  // namespace

TEST_CASE("catalog strings") {
    CHECK(parse_tau("constant").kind == TauKind::Constant);
    CHECK(parse_tau("soliton:p=1/2").p == frac(1, 2));
    CHECK(parse_tau("soliton:p=1/2").label() == "soliton:p=1/2");
    CHECK(parse_tau("adler-moser:2").k == 2);
    CHECK(parse_tau("adler-moser:k=2").label() == "adler-moser:k=2");
    CHECK_THROWS_AS(parse_tau("theta"), ParseError);
    CHECK_THROWS_AS(parse_tau("soliton:p=0"), ParseError);
    CHECK_THROWS_AS(parse_tau("soliton:q=1"), ParseError);
}

TEST_CASE("soliton dispersion is derived") {
    auto k = soliton_dispersion(Rational(1), 4);
    REQUIRE(k.size() == 4);
    CHECK(k[1] / (k[0] * k[0] * k[0]) == frac(1, 4));
    auto h = soliton_dispersion(frac(1, 2), 4);
    for (int j = 0; j < 4; ++j) {
        Rational expect(2);
        for (int e = 0; e < 2 * j + 1; ++e) expect *= frac(1, 2);
        CHECK(h[static_cast<std::size_t>(j)] == expect);
    }
}

TEST_CASE("hirota_check") {
    CHECK(hirota_check(tau_catalog(parse_tau("constant"), kSmall)));
    CHECK(hirota_check(tau_catalog(parse_tau("soliton:p=1"), kSmall)));
    CHECK(hirota_check(tau_catalog(parse_tau("adler-moser:2"), kSmall)));
    CHECK_FALSE(hirota_check(tau_catalog(parse_tau("soliton-naive:p=1"), kSmall, false)));
    CHECK_THROWS_AS(tau_catalog(parse_tau("soliton-naive:p=1"), kSmall), Error);
    CHECK_THROWS_AS(tau_catalog(parse_tau("adler-moser:3"), kSmall), Error);
}

TEST_CASE("miwa shift") {
    auto layout = SeriesLayout::get(3, 6);
    MVSeries one(layout, Rational(1));
    ZSeries c = miwa_shift(one, -1, 5);
    CHECK(c[0].equals(one));
    for (int k = 1; k <= 5; ++k) CHECK(c[k].is_zero_through_precision());

    MVSeries t1 = MVSeries::variable(layout, 0);
    ZSeries l = miwa_shift(t1, -1, 5);
    CHECK(l[0].equals(t1));
    CHECK(l[1].equals(-one));
    for (int k = 2; k <= 5; ++k) CHECK(l[k].is_zero_through_precision());

    auto tau = tau_catalog(parse_tau("soliton:p=1"), kSmall);
    ZSeries prod = miwa_shift(tau.tau, -1, 6, 6) * miwa_shift(tau.tau, +1, 6, 6);
    CHECK(prod.odd_part_vanishes());
    ZSeries wrong = miwa_shift(tau.tau, -1, 6, 6) * miwa_shift(tau.tau, -1, 6, 6);
    CHECK_FALSE(wrong.odd_part_vanishes());
}

TEST_CASE("linear tau expands about t1 = 1") {
    auto tau = tau_catalog(parse_tau("linear"), kSmall);
    CHECK(tau.expansion_point == "t1 = 1");
    // u = -2 d1^2 log(1 + t1) = 2 / (1 + t1)^2
    MVSeries u = tau.log_tau.derivative(0).derivative(0) * Rational(-2);
    CHECK(u.coefficient({0, 0, 0}) == 2);
    CHECK(u.coefficient({1, 0, 0}) == -4);
    CHECK(u.coefficient({2, 0, 0}) == 6);
    CHECK(u.coefficient({1, 1, 0}) == 0);
}

TEST_CASE("S and eta series") {
    auto c = tau_catalog(parse_tau("constant"), kSmall);
    ZSeries s = s_series(c);
    CHECK(s[0].constant_term() == 1);
    for (int k = 1; k <= 6; ++k) CHECK(s[k].is_zero_through_precision());
    auto [x, eta] = x_eta_series(c);
    for (int k = 0; k <= 6; ++k) {
        CHECK(x[k].is_zero_through_precision());
        CHECK(eta[k].is_zero_through_precision());
    }

    auto sol = tau_catalog(parse_tau("soliton:p=1"), kSmall);
    ZSeries ss = s_series(sol);
    MVSeries d11 = sol.log_tau.derivative(0).derivative(0).restricted(ss.layout());
    MVSeries lhs = ss[2];
    lhs.set_precision(4);
    d11.set_precision(4);
    CHECK(lhs.equals(d11));
    CHECK(x_eta_series(sol).second.odd_part_vanishes());
}

TEST_CASE("nabla X lemma") {
    CHECK(check_nabla_x(tau_catalog(parse_tau("constant"), kSmall), 6));
    CHECK(check_nabla_x(tau_catalog(parse_tau("soliton:p=1"), kSmall), 6));
    CHECK_FALSE(check_nabla_x(tau_catalog(parse_tau("soliton-naive:p=1"), kSmall, false), 6));
}

TEST_CASE("suite on catalog taus") {
    diffalg::Hierarchy h;
    SuiteOptions opt;
    opt.trunc = kSmall;
    opt.dictionary_max = 3;
    opt.omega_max = 2;
    for (const char* t : {"constant", "linear", "adler-moser:2", "soliton:p=1", "soliton:p=1/2"}) {
        CAPTURE(t);
        auto r = verify_tau(parse_tau(t), h, opt);
        for (const auto& c : r.checks) {
            CAPTURE(c.name);
            CAPTURE(c.detail);
            CHECK(c.passed);
        }
        auto j = to_json(r);
        CHECK(j["pass"] == true);
        CHECK(j["c_flow"] == "-2/1");
    }
}

TEST_CASE("negative controls") {
    diffalg::Hierarchy h;
    SuiteOptions opt;
    opt.trunc = kSmall;
    opt.dictionary_max = 3;
    opt.omega_max = 2;

    auto naive = verify_tau(parse_tau("soliton-naive:p=1"), h, opt);
    CHECK_FALSE(naive.find("hirota")->passed);
    CHECK_FALSE(naive.passed());

    diffalg::Hierarchy plus(Rational(1));
    auto cf = verify_tau(parse_tau("soliton:p=1"), plus, opt);
    CHECK(cf.find("dictionary S")->passed);
    CHECK_FALSE(cf.find("dictionary zeta")->passed);

    opt.flip_miwa = true;
    auto flip = verify_tau(parse_tau("soliton:p=1"), h, opt);
    CHECK_FALSE(flip.find("d eta = omega")->passed);
    CHECK(flip.find("S-tau")->passed);
}
