#include "kdvres/core/errors.hpp"
#include "kdvres/diffalg/diffalg.hpp"
#include "kdvres/dmod/dmod.hpp"
#include "kdvres/fock/boson.hpp"
#include "kdvres/taulab/taulab.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

using namespace kdvres;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

int failures = 0;

void criterion(int n, const char* title, const std::function<Outcome()>& body) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failures;
    std::printf("%s %2d %s (%.2fs)%s%s\n", o.pass ? "PASS" : "FAIL", n, title, secs, o.detail.empty() ? "" : ": ",
                o.detail.c_str());
    std::fflush(stdout);
}

std::string first(const std::vector<std::string>& v) { return v.empty() ? std::string() : v.front(); }

/// Partitions of d into parts >= 2.
long partitions_ge2(int d) {
    std::vector<long> p(static_cast<std::size_t>(d) + 1, 0);
    p[0] = 1;
    for (int part = 2; part <= d; ++part)
        for (int k = part; k <= d; ++k) p[static_cast<std::size_t>(k)] += p[static_cast<std::size_t>(k - part)];
    return p[static_cast<std::size_t>(d)];
}

}  // namespace

int main() {
    dmod::Engine engine;

    criterion(1, "gen_S(12) exact and homogeneous, S2 = -u/2", [] {
        auto t = diffalg::gen_S(12);
        if (t.max_index() != 12) return Outcome{false, "table stops at " + std::to_string(t.max_index())};
        if (!(t(2) == diffalg::u(0) * frac(-1, 2))) return Outcome{false, "S2 = " + t(2).to_string()};
        for (int n = 2; n <= 12; n += 2)
            if (t(n).homogeneous_degree() != n) return Outcome{false, "S" + std::to_string(n) + " not homogeneous"};
        return Outcome{true, ""};
    });

    criterion(2, "null vectors vanish in A", [&] {
        auto& h = engine.hierarchy();
        auto s2 = h.S(2), s4 = h.S(4);
        auto r1 = h.flow(3, s2) - h.flow(1, s4);
        auto r2 = h.flow(1, h.flow(1, s2)) - s4 * Rational(4) + s2 * s2 * Rational(6);
        if (!r1.is_zero()) return Outcome{false, "d3 S2 - d1 S4 = " + r1.to_string()};
        if (!r2.is_zero()) return Outcome{false, "d1^2 S2 - 4 S4 + 6 S2^2 = " + r2.to_string()};
        return Outcome{true, ""};
    });

    criterion(3, "ev1 Q = 0 (charge -3) and ev1 C = 0 (charge -5), d <= 12, calibrated c0", [&] {
        Rational c0 = engine.calibrate_c0(6);
        if (c0 != 2) return Outcome{false, "calibrated c0 = " + to_display_string(c0)};
        auto r = engine.verify_ev1_kernel(12);
        return Outcome{r.ok(), r.ok() ? std::to_string(r.checked) + " states" : first(r.failures)};
    });

    criterion(4, "ev2 Q = 0 (charge -3) and ev2 C = 0 (charge -5), d <= 12", [&] {
        auto r = engine.verify_ev2_kernel(12);
        return Outcome{r.ok(), r.ok() ? std::to_string(r.q_checked + r.c_checked) + " vectors" : first(r.failures)};
    });

    criterion(5, "Q^2 = 0 and [Q, C] = 0 on charges -1..-9, d <= 12", [&] {
        auto r = engine.verify_operator_identities(12, -9);
        return Outcome{r.ok(), r.ok() ? std::to_string(r.checked) + " states" : first(r.failures)};
    });

    criterion(6, "rank ev1 = dim A_d for d <= 16", [&] {
        for (int d = 0; d <= 16; ++d) {
            auto k = engine.kernel_at_degree(d);
            if (k.target_dim != partitions_ge2(d) || !k.surjective())
                return Outcome{false, "d = " + std::to_string(d) + ": rank " + std::to_string(k.ev_rank) +
                                          ", dim A_d " + std::to_string(partitions_ge2(d))};
        }
        return Outcome{true, ""};
    });

    criterion(7, "ker ev1 = Q-image + C-image for d <= 12", [&] {
        for (int d = 0; d <= 12; ++d) {
            auto k = engine.kernel_at_degree(d);
            if (!k.equal)
                return Outcome{false, "d = " + std::to_string(d) + ": kernel " + std::to_string(k.kernel_dim) +
                                          ", image " + std::to_string(k.image_dim)};
        }
        return Outcome{true, ""};
    });

    criterion(8, "alternating character sum = (1-q)/prod(1-q^i) through q^60", [] {
        auto r = dmod::char_report(60);
        return Outcome{r.alternating_sum_matches && r.fock_counts_match, ""};
    });

    criterion(9, "Wick matrix elements = brute-force oracle, charge -1, d <= 10", [] {
        int count = 0;
        for (int d = 0; d <= 10; ++d)
            for (const auto& w : fock::basis_enum(-1, d)) {
                ++count;
                if (!(fock::t_matrix_element(w) == fock::t_matrix_element_oracle(w, d)))
                    return Outcome{false, w.to_string()};
            }
        return Outcome{true, std::to_string(count) + " words"};
    });

    criterion(10, "tau suite: constant, linear, soliton p = 1, 1/2 at t-degree 8 / z-order 10", [&] {
        taulab::SuiteOptions opt;
        for (const char* t : {"constant", "linear", "soliton:p=1", "soliton:p=1/2"}) {
            auto r = taulab::verify_tau(taulab::parse_tau(t), engine.hierarchy(), opt);
            for (const auto& c : r.checks)
                if (!c.passed) return Outcome{false, r.tau + ": " + c.name + ": " + c.detail};
        }
        return Outcome{true, ""};
    });

    criterion(11, "a1 = 0, a3 = -u'/12, a_{2n-1} independent of m (n <= 3, m <= 4)", [&] {
        auto& h = engine.hierarchy();
        if (!h.eta_a(1).is_zero()) return Outcome{false, "a1 = " + h.eta_a(1).to_string()};
        if (!(h.eta_a(3) == diffalg::u(1) * frac(-1, 12))) return Outcome{false, "a3 = " + h.eta_a(3).to_string()};
        auto r = engine.ev_equivalence_check(3, 4);
        return Outcome{r.ok(), first(r.failures)};
    });

    criterion(12, "negative controls fail as expected", [&] {
        dmod::Engine literal(dmod::Conventions{Rational(1), Rational(2)});
        auto r = literal.verify_ev1_kernel(6);
        if (r.ok()) return Outcome{false, "c_flow = +1, c0 = 2 passes the kernel check through degree 6"};
        taulab::SuiteOptions opt;
        opt.validate = false;
        auto naive = taulab::verify_tau(taulab::parse_tau("soliton-naive:p=1"), engine.hierarchy(), opt);
        if (naive.passed()) return Outcome{false, "naive soliton dispersion passes the tau suite"};
        int broken = 0;
        for (const auto& c : naive.checks) broken += c.passed ? 0 : 1;
        return Outcome{true, "literal constants: " + std::to_string(r.failures.size()) + " kernel failures; naive soliton: " +
                                 std::to_string(broken) + " tau checks fail"};
    });

    std::printf("%s: %d of 12 criteria failed\n", failures ? "FAILED" : "OK", failures);
    return failures ? 1 : 0;
}
