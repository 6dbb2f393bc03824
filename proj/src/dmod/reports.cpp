#include "kdvres/core/errors.hpp"
#include "kdvres/dmod/dmod.hpp"

namespace kdvres::dmod {

namespace {

std::string superscript(int n) {
    static const char* digits[] = {"⁰", "¹", "²", "³", "⁴", "⁵", "⁶", "⁷", "⁸", "⁹"};
    std::string s;
    for (char ch : std::to_string(n)) s += digits[ch - '0'];
    return s;
}

std::string monomial_text(const Monomial& m, const char* symbol) {
    std::string s;
    for (const auto& [id, e] : m.factors()) {
        s += symbol + subscript(id);
        if (e > 1) s += superscript(e);
    }
    return s;
}

}  // namespace

std::string Engine::format_barS_vector(const QVector& coords, const BarSBasis& basis) const {
    std::string out;
    for (std::size_t k = 0; k < coords.size(); ++k) {
        const Rational& c = coords[k];
        if (sgn(c) == 0) continue;
        const auto& [dm, sm] = basis.elements[k];
        std::string body = monomial_text(dm, "∂") + monomial_text(sm, "S");
        Rational mag = abs(c);
        std::string coef = (mag == 1 && !body.empty()) ? "" : to_display_string(mag);
        if (out.empty()) out += sgn(c) < 0 ? "−" : "";
        else out += sgn(c) < 0 ? " − " : " + ";
        out += coef + body;
    }
    return out.empty() ? "0" : out;
}

Rational Engine::calibrate_c0(int dmax) {
    if (dmax < 6) throw Error("calibrate_c0 needs dmax >= 6");
    std::optional<Rational> c0;
    for (int d = 0; d <= dmax; ++d) {
        for (const auto& w : fock::basis_enum(-5, d)) {
            auto v = DFockVector::word(w, d_one());
            DiffPoly b = ev1(c_apply(v, Rational(0)));
            DiffPoly a = ev1(c_apply(v, Rational(1))) - b;
            if (!c0 && !a.is_zero()) {
                const auto& [m, ac] = *a.terms().begin();
                c0 = -b.coefficient(m) / ac;
            }
            if (c0) {
                if (!(a * *c0 + b).is_zero())
                    throw NoConsistentCalibration("no constant c0 makes ev1(C " + w.to_string() +
                                                  ") vanish; residual at c0 = " + to_display_string(*c0) + ": " +
                                                  (a * *c0 + b).to_string());
            } else if (!b.is_zero()) {
                throw NoConsistentCalibration("ev1(C " + w.to_string() + ") = " + b.to_string() +
                                              " cannot be cancelled by c0");
            }
        }
    }
    if (!c0) throw NoConsistentCalibration("c0 is not determined up to degree " + std::to_string(dmax));
    return *c0;
}

std::vector<QVector> Engine::kernel_basis_at(int d) {
    {
        std::lock_guard lock(mu_);
        if (auto it = kernel_cache_.find(d); it != kernel_cache_.end()) return it->second;
    }
    auto B = barS_basis(d);
    const int target = static_cast<int>(monomials_of_degree(Catalog::diff_u(), d).size());
    std::vector<QVector> cols;
    cols.reserve(B.elements.size());
    for (const auto& [dm, sm] : B.elements) cols.push_back(a_coords(ev1_barS(dm, sm), d));
    auto k = kdvres::kernel_basis(cols, target);
    std::lock_guard lock(mu_);
    kernel_cache_.emplace(d, k);
    return k;
}

KernelReport Engine::kernel_at_degree(int d) {
    KernelReport r;
    r.degree = d;
    auto B = barS_basis(d);
    r.domain_dim = static_cast<int>(B.elements.size());
    r.target_dim = static_cast<int>(monomials_of_degree(Catalog::diff_u(), d).size());
    r.kernel_basis = kernel_basis_at(d);
    r.kernel_dim = static_cast<int>(r.kernel_basis.size());
    r.ev_rank = r.domain_dim - r.kernel_dim;

    Subspace K(r.domain_dim), Im(r.domain_dim);
    for (const auto& k : r.kernel_basis) K.add(k);
    for (const auto& v : basis(-3, d)) Im.add(barS_coords(q_apply(v), B));
    for (const auto& v : basis(-5, d)) Im.add(barS_coords(c_apply(v), B));
    r.image_basis = Im.basis();
    r.image_dim = Im.rank();
    r.image_in_kernel = K.contains_all(Im);
    r.equal = r.image_in_kernel && Im.rank() == K.rank();
    return r;
}

NullVectorReport Engine::null_vector_report(int d) {
    NullVectorReport rep;
    rep.degree = d;
    auto B = barS_basis(d);
    const int n = static_cast<int>(B.elements.size());
    auto K = kernel_basis_at(d);
    rep.kernel_dim = static_cast<int>(K.size());

    auto is_trivial = [&](std::size_t k) {
        return !B.elements[k].first.is_one() && B.elements[k].second.is_one();
    };
    Subspace derived(n);
    for (std::size_t k = 0; k < B.elements.size(); ++k)
        if (is_trivial(k)) {
            QVector e(static_cast<std::size_t>(n));
            e[k] = 1;
            derived.add(e);
        }
    for (int i = 1; i <= d; i += 2) {
        auto lower = barS_basis(d - i);
        for (const auto& kv : kernel_basis_at(d - i)) {
            QVector e(static_cast<std::size_t>(n));
            for (std::size_t k = 0; k < kv.size(); ++k) {
                if (sgn(kv[k]) == 0) continue;
                const auto& [dm, sm] = lower.elements[k];
                e[static_cast<std::size_t>(B.index.at({dm * Monomial::generator(Catalog::d_ops(), i), sm}))] += kv[k];
            }
            derived.add(e);
        }
    }
    rep.derived_dim = derived.rank();

    Subspace kernel(n);
    for (const auto& k : K) kernel.add(k);
    auto consider = [&](const QVector& v, const char* provenance) {
        if (!kernel.contains(v)) return;
        if (!derived.add(v)) return;
        QVector shown = v;
        for (std::size_t k = 0; k < shown.size(); ++k)
            if (is_trivial(k)) shown[k] = 0;
        shown = primitive(shown);
        rep.generators.push_back({format_barS_vector(shown, B), provenance, shown});
    };
    for (const auto& v : basis(-3, d)) {
        if (derived.rank() == rep.kernel_dim) break;
        consider(barS_coords(q_apply(v), B), "Q-image");
    }
    for (const auto& v : basis(-5, d)) {
        if (derived.rank() == rep.kernel_dim) break;
        consider(barS_coords(c_apply(v), B), "C-image");
    }
    for (const auto& k : K) {
        if (derived.rank() == rep.kernel_dim) break;
        consider(k, "unexplained");
    }
    return rep;
}

Ev2KernelReport Engine::verify_ev2_kernel(int dmax) {
    Ev2KernelReport r;
    r.dmax = dmax;
    for (int d = 0; d <= dmax; ++d) {
        for (const auto& v : basis(-3, d, Basis::Tilde)) {
            ++r.q_checked;
            auto e = ev2(q_apply(v));
            if (!e.is_zero()) r.failures.push_back("ev2(Q " + v.to_string() + ") = " + e.to_string());
        }
        for (const auto& v : basis(-5, d, Basis::Tilde)) {
            ++r.c_checked;
            auto e = ev2(c_apply(v));
            if (!e.is_zero()) r.failures.push_back("ev2(C " + v.to_string() + ") = " + e.to_string());
        }
    }
    return r;
}

IdentityReport Engine::verify_ev1_kernel(int dmax) {
    IdentityReport r{"ev1 Q = 0, ev1 C = 0", dmax, 0, {}};
    for (int vac : {-3, -5}) {
        for (int d = fock::vacuum_degree(vac); d <= dmax; ++d) {
            for (const auto& w : fock::basis_enum(vac, d)) {
                auto v = DFockVector::word(w, d_one());
                ++r.checked;
                auto e = ev1(vac == -3 ? q_apply(v) : c_apply(v));
                if (!e.is_zero())
                    r.failures.push_back(std::string(vac == -3 ? "ev1(Q " : "ev1(C ") + w.to_string() + ") = " +
                                         e.to_string());
            }
        }
    }
    return r;
}

IdentityReport Engine::verify_operator_identities(int dmax, int min_vacuum) {
    IdentityReport r{"Q^2 = 0, [Q, C] = 0", dmax, 0, {}};
    for (int vac = -1; vac >= min_vacuum; vac -= 2) {
        for (int d = fock::vacuum_degree(vac); d <= dmax; ++d) {
            for (const auto& w : fock::basis_enum(vac, d)) {
                auto v = DFockVector::word(w, d_one());
                ++r.checked;
                auto qv = q_apply(v);
                if (!q_apply(qv).is_zero()) r.failures.push_back("Q^2 " + w.to_string() + " != 0");
                auto comm = q_apply(c_apply(v));
                comm -= c_apply(qv);
                if (!comm.is_zero()) r.failures.push_back("[Q, C] " + w.to_string() + " = " + comm.to_string());
            }
        }
    }
    return r;
}

EquivalenceReport Engine::ev_equivalence_check(int nmax, int mmax) {
    EquivalenceReport r;
    r.nmax = nmax;
    r.mmax = mmax;
    for (int n = 1; n <= nmax; ++n) {
        int odd_n = 2 * n - 1;
        r.a.emplace_back(odd_n, hier_.eta_a(odd_n));
        for (int m = 1; m <= mmax; ++m) {
            auto res = hier_.eta_residual(odd_n, 2 * m - 1);
            if (!res.is_zero())
                r.failures.push_back("n=" + std::to_string(odd_n) + " m=" + std::to_string(2 * m - 1) +
                                     ": residual " + res.to_string());
        }
    }
    return r;
}

QuotientReport Engine::same_quotient(int d) {
    QuotientReport r;
    r.degree = d;
    const auto target = monomials_of_degree(Catalog::diff_u(), d);
    const int n = static_cast<int>(target.size());
    Subspace W(n);
    for (int i = 1; i <= d; i += 2)
        for (const auto& m : monomials_of_degree(Catalog::diff_u(), d - i)) {
            if (m.is_one()) continue;
            W.add(a_coords(hier_.flow(i, GradedPoly::monomial(Catalog::diff_u(), m, Rational(1))), d));
        }
    r.derivative_rank = W.rank();
    Subspace one = W, two = W;
    for (const auto& [dm, sm] : barS_basis(d).elements) one.add(a_coords(ev1_barS(dm, sm), d));
    for (const auto& v : basis(-1, d, Basis::Tilde)) two.add(a_coords(ev2(v), d));
    r.ev1_rank = one.rank();
    r.ev2_rank = two.rank();
    r.same = one.equals(two);
    return r;
}

CharReport char_report(int order) {
    CharReport r;
    r.order = order;
    auto all = QSeries::inverse_euler_product(order, [](int) { return true; });
    r.chA = QSeries::euler_product(order, [](int i) { return i == 1; }) * all;
    r.chD = QSeries::inverse_euler_product(order, [](int i) { return i % 2 == 1; });
    auto even = QSeries::inverse_euler_product(order, [](int i) { return i % 2 == 0; });
    QSeries sum(order);
    for (int N = 0; N * N <= order; ++N) {
        auto col = r.chD * even *
                   (QSeries::monomial(order, N * N) - QSeries::monomial(order, (N + 2) * (N + 2)));
        r.columns.push_back(col);
        if (N % 2) sum -= col;
        else sum += col;
    }
    r.alternating_sum = sum;
    r.alternating_sum_matches = sum.equal_through(r.chA, order);
    r.fock_counts_match = true;
    const int fock_order = std::min(order, 16);
    for (int N = 0; N <= 3; ++N) {
        auto counts = fock::basis_counts(-2 * N - 1, fock_order);
        auto want = even * QSeries::monomial(order, N * N);
        for (int d = 0; d <= fock_order; ++d)
            if (Rational(counts[static_cast<std::size_t>(d)]) != want[d]) r.fock_counts_match = false;
    }
    return r;
}

nlohmann::json to_json(const IdentityReport& r) {
    return {{"name", r.name}, {"dmax", r.dmax}, {"checked", r.checked}, {"pass", r.ok()}, {"failures", r.failures}};
}

nlohmann::json to_json(const KernelReport& r) {
    return {{"degree", r.degree},         {"domain_dim", r.domain_dim}, {"dim_A", r.target_dim},
            {"ev1_rank", r.ev_rank},      {"kernel_dim", r.kernel_dim}, {"image_dim", r.image_dim},
            {"image_in_kernel", r.image_in_kernel}, {"kernel_equals_image", r.equal},
            {"surjective", r.surjective()}};
}

nlohmann::json to_json(const NullVectorReport& r) {
    nlohmann::json gens = nlohmann::json::array();
    for (const auto& g : r.generators) gens.push_back({{"relation", g.text}, {"provenance", g.provenance}});
    return {{"degree", r.degree}, {"kernel_dim", r.kernel_dim}, {"derived_dim", r.derived_dim}, {"generators", gens}};
}

nlohmann::json to_json(const CharReport& r) {
    nlohmann::json cols = nlohmann::json::array();
    for (const auto& c : r.columns) cols.push_back(to_json(c));
    return {{"order", r.order},
            {"chA", to_json(r.chA)},
            {"chD", to_json(r.chD)},
            {"columns", cols},
            {"alternating_sum", to_json(r.alternating_sum)},
            {"alternating_sum_matches", r.alternating_sum_matches},
            {"fock_counts_match", r.fock_counts_match}};
}

}  // namespace kdvres::dmod
