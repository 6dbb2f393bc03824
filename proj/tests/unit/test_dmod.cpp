#include "doctest.h"

#include "kdvres/core/errors.hpp"
#include "kdvres/dmod/dmod.hpp"

using namespace kdvres;
using namespace kdvres::dmod;
using diffalg::u;

namespace {

Engine& engine() {
    static Engine e;
    return e;
}

DFockVector plain(const FockWordDual& w, const DOp& c = d_one()) { return DFockVector::word(w, c); }

}  // namespace

TEST_CASE("P_{n,l}") {
    auto& e = engine();
    for (int l = 1; l <= 5; ++l) CHECK(e.P(1, l).is_zero());
    CHECK(e.P(2, 1) == d_op(1, 2));
    CHECK(e.P(2, 2) == d_op(1) * d_op(3));
    CHECK(e.P(3, 1) == d_op(1, 2) * frac(1, 2));
    for (int n = 1; n <= 6; ++n)
        for (int l = 1; l <= 6; ++l)
            if (!e.P(n, l).is_zero()) CHECK(e.P(n, l).homogeneous_degree() == 2 * l);
}

TEST_CASE("Q action") {
    auto& e = engine();
    auto v = plain(FockWordDual::on_vacuum(-3));
    CHECK(e.q_apply(v).words() == std::vector<std::pair<DOp, FockWordDual>>{{d_op(1), FockWordDual::on_vacuum(-1)}});
    auto v3 = plain(FockWordDual::on_vacuum(-3), d_op(3));
    CHECK(e.q_apply(v3).words() ==
          std::vector<std::pair<DOp, FockWordDual>>{{d_op(1) * d_op(3), FockWordDual::on_vacuum(-1)}});
    CHECK(e.q_apply(e.q_apply(plain(FockWordDual::on_vacuum(-5)))).is_zero());
}

TEST_CASE("Q^2 = 0 and [Q, C] = 0") {
    auto& e = engine();
    for (int vac = -1; vac >= -9; vac -= 2)
        for (int d = 0; d <= 10; ++d)
            for (const auto& w : fock::basis_enum(vac, d)) {
                auto v = plain(w);
                CHECK(e.q_apply(e.q_apply(v)).is_zero());
                auto qc = e.c_apply(e.q_apply(v));
                qc -= e.q_apply(e.c_apply(v));
                CHECK(qc.is_zero());
            }
}

TEST_CASE("C on <-5|") {
    auto& e = engine();
    auto c = e.c_apply(plain(FockWordDual::on_vacuum(-5)));
    for (int d : c.degrees()) CHECK(d == 4);
    std::map<FockWordDual, DOp> got;
    for (const auto& [coef, w] : c.words()) got.emplace(w, coef);
    CHECK(got.size() == 4);
    CHECK(got.at(FockWordDual::on_vacuum(-1)).homogeneous_degree() == 4);
    CHECK(got.at(FockWordDual(-1, {1}, {-1})).homogeneous_degree() == 2);
    CHECK(got.at(FockWordDual(-1, {3}, {-1})).homogeneous_degree() == 0);
    CHECK(e.ev1(c).is_zero());
}

TEST_CASE("ev1") {
    auto& e = engine();
    CHECK(e.ev1(plain(FockWordDual::on_vacuum(-1))) == diffalg::one());
    CHECK(e.ev1(plain(FockWordDual(-1, {1}, {-1}))) == u(0) * frac(-1, 2));
    CHECK(e.ev1(plain(FockWordDual(-1, {1}, {-1}), d_op(1, 2))) == u(2) * frac(-1, 2));
    CHECK_THROWS(e.ev1(plain(FockWordDual::on_vacuum(-3))));
}

TEST_CASE("calibration") {
    auto& e = engine();
    CHECK(e.calibrate_c0(6) == 2);
    CHECK(e.calibrate_c0(12) == 2);
    CHECK_THROWS(e.calibrate_c0(4));
    // a uniform flow rescaling only rescales the constant
    Engine plus_one(Conventions{Rational(1), Rational(2), false});
    CHECK(plus_one.calibrate_c0(8) == frac(1, 2));
    // a wrong P weight admits no constant at all
    Engine wrong_p(Conventions{Rational(-2), Rational(2), true});
    CHECK_THROWS_AS(wrong_p.calibrate_c0(8), NoConsistentCalibration);
}

TEST_CASE("literal constants break the kernel theorem at degree 4") {
    Engine lit(Conventions{Rational(1), Rational(2), false});
    bool broken = false;
    for (const auto& w : fock::basis_enum(-5, 4)) broken |= !lit.ev1(lit.c_apply(plain(w))).is_zero();
    CHECK(broken);
    CHECK_FALSE(lit.kernel_at_degree(4).image_in_kernel);
}

TEST_CASE("kernel reports") {
    auto& e = engine();
    auto r2 = e.kernel_at_degree(2);
    CHECK(r2.target_dim == 1);
    CHECK(r2.ev_rank == 1);
    auto r4 = e.kernel_at_degree(4);
    CHECK(r4.target_dim == 2);
    CHECK(r4.ev_rank == 2);
    CHECK(r4.equal);
    for (int d = 0; d <= 10; ++d) {
        auto r = e.kernel_at_degree(d);
        CHECK(r.surjective());
        CHECK(r.image_in_kernel);
        CHECK(r.equal);
    }
}

TEST_CASE("null vectors") {
    auto& e = engine();
    CHECK(e.null_vector_report(2).generators.empty());
    CHECK(e.null_vector_report(3).generators.empty());
    auto n4 = e.null_vector_report(4);
    REQUIRE(n4.generators.size() == 1);
    CHECK(n4.generators[0].text == "∂₁²S₂ − 4S₄ + 6S₂²");
    CHECK(n4.generators[0].provenance == "C-image");
    auto n5 = e.null_vector_report(5);
    REQUIRE(n5.generators.size() == 1);
    CHECK(n5.generators[0].text == "∂₃S₂ − ∂₁S₄");
    CHECK(n5.generators[0].provenance == "Q-image");
    for (int d = 2; d <= 9; ++d)
        for (const auto& g : e.null_vector_report(d).generators) CHECK(g.provenance != "unexplained");
}

TEST_CASE("tilde basis") {
    auto& e = engine();
    auto t1 = e.tilde_transform(DFockVector::word(FockWordDual(-1, {1}, {-1}), d_one(), Basis::Tilde),
                                Engine::Direction::ToPlain);
    // psi~_1 = 2 psi_1 and psi~*_{-1} = psi*_{-1}
    CHECK(t1.words() == std::vector<std::pair<DOp, FockWordDual>>{{d_one() * Rational(2), FockWordDual(-1, {1}, {-1})}});
    for (int vac = -1; vac >= -5; vac -= 2)
        for (int d = 0; d <= 8; ++d)
            for (const auto& w : fock::basis_enum(vac, d)) {
                auto v = plain(w);
                auto t = e.tilde_transform(v, Engine::Direction::ToTilde);
                CHECK(t.basis == Basis::Tilde);
                for (int dd : t.degrees()) CHECK(dd == d);
                auto back = e.tilde_transform(t, Engine::Direction::ToPlain);
                back -= v;
                CHECK(back.is_zero());
                // C in the tilde basis is sum psi~ psi~
                auto lhs = e.c_apply(t);
                auto rhs = e.tilde_transform(e.c_apply(v), Engine::Direction::ToTilde);
                lhs -= rhs;
                CHECK(lhs.is_zero());
            }
    CHECK_THROWS(e.tilde_transform(plain(FockWordDual::on_vacuum(-1)), Engine::Direction::ToPlain));
}

TEST_CASE("ev2") {
    auto& e = engine();
    auto& h = e.hierarchy();
    CHECK(e.ev2_word(0, {}, {}, d_one()) == diffalg::one());
    CHECK(e.ev2_word(1, {}, {1}, d_one()) == u(0) * frac(-1, 2));
    CHECK(e.ev2_word(2, {}, {3, 1}, d_one()) == h.zeta(1, 1) * h.zeta(3, 3) - h.zeta(1, 3) * h.zeta(1, 3));
    CHECK_THROWS(e.ev2_word(2, {5}, {1}, d_one()));
    CHECK_THROWS(e.ev2_word(2, {1}, {}, d_one()));
    // determinant formula against the exterior algebra, and level independence
    for (int N = 1; N <= 3; ++N) {
        std::vector<int> odds;
        for (int l = 2 * N - 1; l >= 1; l -= 2) odds.push_back(l);
        for (unsigned mask = 0; mask < (1u << N); ++mask) {
            std::vector<int> I;
            for (int k = 0; k < N; ++k)
                if (mask & (1u << k)) I.push_back(odds[static_cast<std::size_t>(k)]);
            int r = N - static_cast<int>(I.size());
            std::vector<std::vector<int>> Js{{}};
            if (r == 1) Js = {{1}, {3}, {5}};
            if (r == 2) Js = {{3, 1}, {5, 1}, {5, 3}};
            if (r == 3) Js = {{5, 3, 1}, {7, 3, 1}};
            for (const auto& J : Js) {
                if (static_cast<int>(J.size()) != r) continue;
                auto F = e.ev2_word(N, I, J, d_one());
                CHECK(F == e.ev2_word_oracle(N, I, J, d_one()));
                std::vector<int> I2{2 * N + 1};
                I2.insert(I2.end(), I.begin(), I.end());
                CHECK(e.ev2_word(N + 1, I2, J, d_one()) == F);
            }
        }
    }
}

TEST_CASE("ev2 kernel proposition") {
    auto& e = engine();
    auto r = e.verify_ev2_kernel(8);
    CHECK(r.q_checked > 0);
    CHECK(r.c_checked > 0);
    CHECK(r.ok());
}

TEST_CASE("equivalence and quotient") {
    auto& e = engine();
    auto r = e.ev_equivalence_check(3, 4);
    CHECK(r.ok());
    CHECK(r.a[0].second.is_zero());
    CHECK(r.a[1].second == u(1) * frac(-1, 12));
    for (int d = 2; d <= 8; ++d) CHECK(e.same_quotient(d).same);
}

TEST_CASE("characters") {
    auto r = char_report(6);
    std::vector<int> a{1, 0, 1, 1, 2, 2, 4}, dd{1, 1, 1, 2, 2, 3, 4};
    for (int k = 0; k <= 6; ++k) {
        CHECK(r.chA[k] == a[static_cast<std::size_t>(k)]);
        CHECK(r.chD[k] == dd[static_cast<std::size_t>(k)]);
    }
    CHECK(r.alternating_sum_matches);
    CHECK(r.fock_counts_match);
    CHECK(char_report(60).alternating_sum_matches);
}
