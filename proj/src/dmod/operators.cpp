#include "kdvres/core/errors.hpp"
#include "kdvres/dmod/dmod.hpp"

#include <algorithm>

namespace kdvres::dmod {

using fock::Mode;

Engine::Engine(Conventions conv) : conv_(std::move(conv)), hier_(conv_.c_flow) {}

DOp Engine::P(int n, int l) {
    if (n < 1 || l < 1) throw Error("P_{n,l} needs n, l >= 1");
    std::lock_guard lock(mu_);
    auto key = std::make_pair(n, l);
    if (auto it = p_cache_.find(key); it != p_cache_.end()) return it->second;
    DOp p(Catalog::d_ops());
    for (int j = 1; j < n; ++j) {
        int i = l + 1 - j;
        if (i < 1) break;
        Rational w = conv_.unweighted_p ? Rational(1) : frac(1, n - j);
        p += d_op(2 * i - 1) * d_op(2 * j - 1) * w;
    }
    p_cache_.emplace(key, p);
    return p;
}

DFockVector Engine::q_apply(const DFockVector& v) {
    DFockVector out;
    out.basis = v.basis;
    for (const auto& [s, c] : v.terms) {
        for (int k = -1; k > s.floor(); k -= 2) {
            auto r = s.psi(k);
            if (!r) continue;
            DOp coef = c * d_op(-k);
            out.add(r->second, r->first > 0 ? coef : DOp(-coef));
        }
    }
    return out;
}

DFockVector Engine::c_apply(const DFockVector& v) { return c_apply(v, conv_.c0); }

DFockVector Engine::c_apply(const DFockVector& v, const Rational& c0) {
    DFockVector out;
    out.basis = v.basis;
    auto push = [&](const BraState& s, int first, int second, const DOp& coef) {
        auto r1 = s.psi(first);
        if (!r1) return;
        auto r2 = r1->second.psi(second);
        if (!r2) return;
        out.add(r2->second, r1->first * r2->first > 0 ? coef : DOp(-coef));
    };
    for (const auto& [s, c] : v.terms) {
        for (int n = 1; -(2 * n - 1) > s.floor(); ++n) {
            const int a = 2 * n - 1;
            if (v.basis == Basis::Tilde) {
                push(s, a, -a, c);
                continue;
            }
            push(s, a, -a, c * (c0 * a));
            for (int l = 1; a - 2 * l > s.floor(); ++l) {
                DOp p = P(n, l);
                if (!p.is_zero()) push(s, a - 2 * l, -a, -(c * p));
            }
        }
    }
    return out;
}

// psi~_a = sum_{b <= a} D_{a,b} psi_b
DOp Engine::D_entry(int a, int b) {
    std::lock_guard lock(mu_);
    auto key = std::make_pair(a, b);
    if (auto it = d_cache_.find(key); it != d_cache_.end()) return it->second;
    DOp v(Catalog::d_ops());
    if (a < 0) {
        if (a == b) v = d_one();
    } else if (a == b) {
        v = d_one() * (conv_.c0 * a);
    } else if (b < a) {
        v = -P((a + 1) / 2, (a - b) / 2);
    }
    d_cache_.emplace(key, v);
    return v;
}

// E = D^{-1}, also lower triangular
DOp Engine::E_entry(int a, int b) {
    std::lock_guard lock(mu_);
    auto key = std::make_pair(a, b);
    if (auto it = e_cache_.find(key); it != e_cache_.end()) return it->second;
    DOp v(Catalog::d_ops());
    if (a < 0 || b > a) {
        if (a == b) v = d_one();
    } else if (a == b) {
        v = d_one() * (Rational(1) / (conv_.c0 * a));
    } else {
        for (int c = b; c < a; c += 2) v -= D_entry(a, c) * E_entry(c, b);
        v *= Rational(1) / (conv_.c0 * a);
    }
    e_cache_.emplace(key, v);
    return v;
}

fock::StateVector<DOp> Engine::apply_combination(const fock::StateVector<DOp>& v, Mode::Kind kind, int index,
                                                 bool to_plain) {
    // to_plain: psi~_a = sum_{b<=a} D_{a,b} psi_b,  psi~*_a = sum_{b>=a} E_{b,a} psi*_b
    // to tilde: psi_a  = sum_{b<=a} E_{a,b} psi~_b, psi*_a  = sum_{b>=a} D_{b,a} psi~*_b
    fock::StateVector<DOp> out;
    for (const auto& [s, c] : v) {
        if (kind == Mode::Kind::Psi) {
            for (int b = index; b > s.floor(); b -= 2) {
                DOp coef = to_plain ? D_entry(index, b) : E_entry(index, b);
                if (coef.is_zero()) continue;
                auto r = s.psi(b);
                if (!r) continue;
                DOp t = c * coef;
                fock::accumulate(out, r->second, r->first > 0 ? t : DOp(-t));
            }
        } else {
            for (int b = index; b <= s.top(); b += 2) {
                DOp coef = to_plain ? E_entry(b, index) : D_entry(b, index);
                if (coef.is_zero()) continue;
                auto r = s.psi_star(b);
                if (!r) continue;
                DOp t = c * coef;
                fock::accumulate(out, r->second, r->first > 0 ? t : DOp(-t));
            }
        }
    }
    return out;
}

DFockVector Engine::tilde_transform(const DFockVector& v, Direction dir) {
    const bool to_plain = dir == Direction::ToPlain;
    if ((v.basis == Basis::Tilde) != to_plain && !v.is_zero())
        throw Error("tilde_transform: vector is already in the requested basis");
    DFockVector out;
    out.basis = to_plain ? Basis::Plain : Basis::Tilde;
    for (const auto& [s, c] : v.terms) {
        // s = <b| psi_{x_1} ... psi_{x_r}, x ascending, b = min(floor, -1); the
        // vacua <b| with b <= -1 are common to both bases
        int b = std::min(s.floor(), -1);
        fock::StateVector<DOp> cur{{BraState::vacuum(b), c}};
        for (int x = b + 2; x <= s.floor(); x += 2) cur = apply_combination(cur, fock::Mode::Kind::Psi, x, to_plain);
        for (int x : s.extra()) cur = apply_combination(cur, fock::Mode::Kind::Psi, x, to_plain);
        for (const auto& [t, q] : cur) out.add(t, q);
    }
    return out;
}

std::vector<DFockVector> Engine::basis(int vacuum, int degree, Basis b) {
    std::vector<DFockVector> out;
    for (int wd = fock::vacuum_degree(vacuum); wd <= degree; ++wd) {
        auto words = fock::basis_enum(vacuum, wd);
        if (words.empty()) continue;
        auto dmonos = monomials_of_degree(Catalog::d_ops(), degree - wd);
        for (const auto& dm : dmonos)
            for (const auto& w : words) {
                auto [sign, s] = fock::to_state(w);
                (void)sign;
                out.push_back(DFockVector::state(s, DOp::monomial(Catalog::d_ops(), dm, Rational(1)), b));
            }
    }
    return out;
}

}  // namespace kdvres::dmod
