#include "kdvres/diffalg/diffalg.hpp"

#include "kdvres/core/errors.hpp"

namespace kdvres::diffalg {

namespace {

const Catalog& ucat() {
    static const Catalog cat = Catalog::diff_u();
    return cat;
}

void require_odd_positive(int n, const char* what) {
    if (n < 1 || n % 2 == 0) throw Error(std::string(what) + " must be a positive odd integer, got " + std::to_string(n));
}

}  // namespace

DiffPoly u(int k) { return GradedPoly::generator(ucat(), k); }
DiffPoly zero() { return GradedPoly(ucat()); }
DiffPoly one() { return GradedPoly(ucat(), Rational(1)); }

DiffPoly d1(const DiffPoly& p) {
    DiffPoly r(p.catalog());
    for (const auto& [m, c] : p.terms()) {
        for (const auto& [id, e] : m.factors()) {
            Monomial q = m.divide_generator(ucat(), id) * Monomial::generator(ucat(), id + 1);
            r.add_term(q, c * e);
        }
    }
    return r;
}

DiffPoly variational_derivative(const DiffPoly& p) {
    DiffPoly r(p.catalog());
    int K = p.max_generator();
    for (int m = 0; m <= K; ++m) {
        DiffPoly t = p.partial(m);
        for (int k = 0; k < m; ++k) t = d1(t);
        if (m % 2) r -= t;
        else r += t;
    }
    return r;
}

DiffPoly integrate_d1(const DiffPoly& p) {
    if (!is_zero(p.constant_term())) throw Error("integrate_d1 needs a polynomial without constant term");
    DiffPoly rest = p;
    DiffPoly result(p.catalog());
    while (!rest.is_zero()) {
        int K = rest.max_generator();
        if (K <= 0) throw NotExact("not a total derivative: remainder " + rest.to_string());
        // rest = a u^(K) + b, integrate a in u^(K-1)
        DiffPoly F(p.catalog());
        for (const auto& [m, c] : rest.terms()) {
            int e = m.exponent(K);
            if (e > 1) throw NotExact("not a total derivative: " + rest.to_string());
            if (e == 0) continue;
            Monomial a = m.divide_generator(ucat(), K);
            int f = a.exponent(K - 1);
            F.add_term(a * Monomial::generator(ucat(), K - 1), c / (f + 1));
        }
        if (F.is_zero()) throw NotExact("not a total derivative: " + rest.to_string());
        rest -= d1(F);
        result += F;
    }
    return result;
}

const DiffPoly& SPolyTable::operator()(int two_n) const {
    if (two_n < 0 || two_n % 2 || two_n > max_index())
        throw InsufficientDepth("S_" + std::to_string(two_n) + " not in table");
    return s[static_cast<std::size_t>(two_n / 2)];
}

namespace {

DiffPoly next_S(const DiffPoly& Sn) {
    DiffPoly d = d1(Sn);
    DiffPoly rhs = d1(d1(d)) * frac(1, 4) - u(0) * d - u(1) * Sn * frac(1, 2);
    return integrate_d1(rhs);
}

}  // namespace

SPolyTable gen_S(int nmax) {
    if (nmax < 2 || nmax % 2) throw Error("gen_S needs an even bound >= 2");
    SPolyTable t;
    t.s.push_back(one());
    t.s.push_back(u(0) * frac(-1, 2));
    while (t.max_index() < nmax) t.s.push_back(next_S(t.s.back()));
    return t;
}

nlohmann::json to_json(const SPolyTable& table) {
    nlohmann::json j = nlohmann::json::array();
    for (int n = 2; n <= table.max_index(); n += 2)
        j.push_back({{"index", n}, {"poly", to_json(table(n))}});
    return j;
}

Hierarchy::Hierarchy(Rational c_flow) : c_flow_(std::move(c_flow)), table_(gen_S(2)) {}

DiffPoly Hierarchy::S_locked(int two_n) {
    if (two_n < 0 || two_n % 2) throw Error("S index must be even and nonnegative");
    while (table_.max_index() < two_n) table_.s.push_back(next_S(table_.s.back()));
    return table_(two_n);
}

DiffPoly Hierarchy::S(int two_n) {
    std::lock_guard lock(mu_);
    return S_locked(two_n);
}

SPolyTable Hierarchy::s_table(int nmax) {
    std::lock_guard lock(mu_);
    S_locked(nmax);
    SPolyTable t;
    t.s.assign(table_.s.begin(), table_.s.begin() + nmax / 2 + 1);
    return t;
}

DiffPoly Hierarchy::derived_S_locked(int two_n, int j) {
    auto key = std::make_pair(two_n, j);
    if (auto it = dS_.find(key); it != dS_.end()) return it->second;
    DiffPoly v = j == 0 ? S_locked(two_n) : d1(derived_S_locked(two_n, j - 1));
    dS_.emplace(key, v);
    return v;
}

DiffPoly Hierarchy::flow_image_locked(int n, int k) {
    auto key = std::make_pair(n, k);
    if (auto it = images_.find(key); it != images_.end()) return it->second;
    DiffPoly v = derived_S_locked(n + 1, k + 1) * c_flow_;
    images_.emplace(key, v);
    return v;
}

DiffPoly Hierarchy::flow_image(int n, int k) {
    require_odd_positive(n, "flow index");
    std::lock_guard lock(mu_);
    return flow_image_locked(n, k);
}

DiffPoly Hierarchy::flow_locked(int n, const DiffPoly& p) {
    DiffPoly r = zero();
    // group terms by generator so each partial is multiplied once
    std::map<int, DiffPoly> partials;
    for (const auto& [m, c] : p.terms())
        for (const auto& [id, e] : m.factors()) {
            auto it = partials.try_emplace(id, p.catalog()).first;
            it->second.add_term(m.divide_generator(ucat(), id), c * e);
        }
    for (const auto& [id, dp] : partials) r += dp * flow_image_locked(n, id);
    return r;
}

DiffPoly Hierarchy::flow(int n, const DiffPoly& p) {
    require_odd_positive(n, "flow index");
    std::lock_guard lock(mu_);
    return flow_locked(n, p);
}

DiffPoly Hierarchy::apply_dop(const GradedPoly& op, const DiffPoly& p) {
    if (op.catalog().family() != Catalog::Family::DOp) throw CatalogMismatch("apply_dop expects a polynomial in the d_i");
    std::lock_guard lock(mu_);
    DiffPoly r = zero();
    for (const auto& [m, c] : op.terms()) {
        DiffPoly t = p;
        for (const auto& [id, e] : m.factors())
            for (int k = 0; k < e; ++k) t = flow_locked(id, t);
        r += t * c;
    }
    return r;
}

DiffPoly Hierarchy::zeta_locked(int i, int j) {
    if (i > j) std::swap(i, j);
    auto key = std::make_pair(i, j);
    if (auto it = zeta_.find(key); it != zeta_.end()) return it->second;
    DiffPoly v = i == 1 ? S_locked(j + 1) : integrate_d1(flow_locked(i, S_locked(j + 1)));
    zeta_.emplace(key, v);
    return v;
}

DiffPoly Hierarchy::zeta(int i, int j) {
    require_odd_positive(i, "zeta index");
    require_odd_positive(j, "zeta index");
    std::lock_guard lock(mu_);
    return zeta_locked(i, j);
}

DiffPoly Hierarchy::inverse_S_locked(int two_k) {
    if (inv_.empty()) inv_.push_back(one());
    while (static_cast<int>(inv_.size()) <= two_k / 2) {
        int k = static_cast<int>(inv_.size());
        DiffPoly r = zero();
        for (int j = 1; j <= k; ++j) r -= S_locked(2 * j) * inv_[static_cast<std::size_t>(k - j)];
        inv_.push_back(r);
    }
    return inv_[static_cast<std::size_t>(two_k / 2)];
}

DiffPoly Hierarchy::inverse_S(int two_k) {
    std::lock_guard lock(mu_);
    return inverse_S_locked(two_k);
}

DiffPoly Hierarchy::omega_locked(int n, int m) {
    auto key = std::make_pair(n, m);
    if (auto it = omega_.find(key); it != omega_.end()) return it->second;
    // (S(w)/S(z) - 1) z^{-2} sum_k w^{2k} z^{-2k}; coefficient of z^{-2a} w^{-2b}
    int a = (n + 1) / 2, b = (m + 1) / 2;
    DiffPoly v = zero();
    for (int k = 0; k <= a - 1; ++k) v += S_locked(2 * (b + k)) * inverse_S_locked(2 * (a - 1 - k));
    omega_.emplace(key, v);
    return v;
}

DiffPoly Hierarchy::omega(int n, int m) {
    require_odd_positive(n, "omega index");
    require_odd_positive(m, "omega index");
    std::lock_guard lock(mu_);
    return omega_locked(n, m);
}

bool Hierarchy::check_omega_closed(int n, int m1, int m2) {
    require_odd_positive(n, "omega index");
    require_odd_positive(m1, "omega index");
    require_odd_positive(m2, "omega index");
    std::lock_guard lock(mu_);
    return (flow_locked(m2, omega_locked(n, m1)) - flow_locked(m1, omega_locked(n, m2))).is_zero();
}

DiffPoly Hierarchy::eta_a_locked(int n) {
    if (auto it = a_.find(n); it != a_.end()) return it->second;
    DiffPoly v = integrate_d1(omega_locked(n, 1) - zeta_locked(n, 1) * frac(1, n));
    a_.emplace(n, v);
    return v;
}

DiffPoly Hierarchy::eta_a(int n) {
    require_odd_positive(n, "eta index");
    std::lock_guard lock(mu_);
    return eta_a_locked(n);
}

DiffPoly Hierarchy::eta_residual(int n, int m) {
    require_odd_positive(n, "eta index");
    require_odd_positive(m, "flow index");
    std::lock_guard lock(mu_);
    return flow_locked(m, eta_a_locked(n)) - (omega_locked(n, m) - zeta_locked(n, m) * frac(1, n));
}

}  // namespace kdvres::diffalg
