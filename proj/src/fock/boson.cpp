#include "kdvres/fock/boson.hpp"

#include "kdvres/core/errors.hpp"

#include <mutex>

namespace kdvres::fock {

namespace {

const Catalog& jcat() {
    static const Catalog c = Catalog::j_vars();
    return c;
}
const Catalog& scat() {
    static const Catalog c = Catalog::bar_s();
    return c;
}

/// Lazily grown tables shared by all callers.
class Tables {
public:
    static Tables& get() {
        static Tables t;
        return t;
    }

    JPoly barS_in_J(int k) {
        std::lock_guard lock(mu_);
        return barS_in_J_locked(k);
    }

    BarSPoly J_in_barS(int k) {
        std::lock_guard lock(mu_);
        while (static_cast<int>(j_in_s_.size()) <= k) {
            int n = static_cast<int>(j_in_s_.size());
            if (n == 0) {
                j_in_s_.emplace_back(scat());
                continue;
            }
            // n bar-S_{2n} = -sum_{k=1}^n J_{2k} bar-S_{2n-2k}
            BarSPoly r = GradedPoly::generator(scat(), 2 * n) * Rational(-n);
            for (int m = 1; m < n; ++m)
                r -= j_in_s_[static_cast<std::size_t>(m)] * GradedPoly::generator(scat(), 2 * (n - m));
            j_in_s_.push_back(r);
        }
        return j_in_s_[static_cast<std::size_t>(k)];
    }

    BarSPoly omega_barS(int i, int j) {
        std::lock_guard lock(mu_);
        auto key = std::make_pair(i, j);
        if (auto it = omega_.find(key); it != omega_.end()) return it->second;
        int a = (i + 1) / 2, b = (j + 1) / 2;
        BarSPoly v(scat());
        for (int k = 0; k <= a - 1; ++k)
            v += GradedPoly::generator(scat(), 2 * (b + k)) * inverse_locked(a - 1 - k);
        omega_.emplace(key, v);
        return v;
    }

private:
    JPoly barS_in_J_locked(int k) {
        while (static_cast<int>(s_in_j_.size()) <= k) {
            int n = static_cast<int>(s_in_j_.size());
            if (n == 0) {
                s_in_j_.emplace_back(jcat(), Rational(1));
                continue;
            }
            JPoly r(jcat());
            for (int m = 1; m <= n; ++m)
                r -= GradedPoly::generator(jcat(), 2 * m) * s_in_j_[static_cast<std::size_t>(n - m)];
            s_in_j_.push_back(r * frac(1, n));
        }
        return s_in_j_[static_cast<std::size_t>(k)];
    }

    /// Coefficient of z^{-2k} in 1/bar-S(z), in the bar-S generators.
    BarSPoly inverse_locked(int k) {
        while (static_cast<int>(inv_.size()) <= k) {
            int n = static_cast<int>(inv_.size());
            if (n == 0) {
                inv_.emplace_back(scat(), Rational(1));
                continue;
            }
            BarSPoly r(scat());
            for (int m = 1; m <= n; ++m)
                r -= GradedPoly::generator(scat(), 2 * m) * inv_[static_cast<std::size_t>(n - m)];
            inv_.push_back(r);
        }
        return inv_[static_cast<std::size_t>(k)];
    }

    std::mutex mu_;
    std::vector<JPoly> s_in_j_;
    std::vector<BarSPoly> j_in_s_;
    std::vector<BarSPoly> inv_;
    std::map<std::pair<int, int>, BarSPoly> omega_;
};

void require_positive_odd(int n) {
    if (n < 1 || n % 2 == 0) throw Error("index must be a positive odd integer, got " + std::to_string(n));
}

}  // namespace

std::vector<JPoly> barS_series(int order) {
    std::vector<JPoly> out;
    for (int k = 0; 2 * k <= order; ++k) out.push_back(Tables::get().barS_in_J(k));
    return out;
}

GradedPoly j_barS_convert(const GradedPoly& p, Direction direction) {
    if (direction == Direction::JToBarS) {
        if (!(p.catalog() == jcat())) throw CatalogMismatch("expected a polynomial in the J variables");
        return p.substitute(scat(), [](int id) { return Tables::get().J_in_barS(id / 2); });
    }
    if (!(p.catalog() == scat())) throw CatalogMismatch("expected a polynomial in the bar-S variables");
    return p.substitute(jcat(), [](int id) { return Tables::get().barS_in_J(id / 2); });
}

BarSPoly two_point_barS(int i, int j) {
    require_positive_odd(i);
    require_positive_odd(j);
    return Tables::get().omega_barS(i, j);
}

JPoly two_point(int i, int j, int order) {
    require_positive_odd(i);
    require_positive_odd(j);
    if (order < i + j)
        throw InsufficientDepth("two_point(" + std::to_string(i) + ", " + std::to_string(j) + ") needs order >= " +
                                std::to_string(i + j));
    return j_barS_convert(two_point_barS(i, j), Direction::BarSToJ);
}

GradedPoly determinant(const std::vector<std::vector<GradedPoly>>& m, const GradedPoly& one) {
    const std::size_t n = m.size();
    if (n == 0) return one;
    if (n == 1) return m[0][0];
    GradedPoly r = one * Rational(0);
    for (std::size_t c = 0; c < n; ++c) {
        if (m[0][c].is_zero()) continue;
        std::vector<std::vector<GradedPoly>> minor;
        for (std::size_t row = 1; row < n; ++row) {
            std::vector<GradedPoly> mr;
            for (std::size_t col = 0; col < n; ++col)
                if (col != c) mr.push_back(m[row][col]);
            minor.push_back(std::move(mr));
        }
        GradedPoly t = m[0][c] * determinant(minor, one);
        if (c % 2) r -= t;
        else r += t;
    }
    return r;
}

BarSPoly t_matrix_element_barS(const FockWordDual& w) {
    if (w.vacuum != -1) throw Error("T matrix elements are taken on the <-1| sector, got " + w.to_string());
    const std::size_t k = w.psi.size();
    std::vector<std::vector<GradedPoly>> g(k);
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b) g[a].push_back(two_point_barS(w.psi[a], -w.psi_star[b]));
    GradedPoly d = determinant(g, GradedPoly(scat(), Rational(1)));
    if ((k * (k - 1) / 2) % 2) d = -d;
    return d;
}

BarSPoly t_matrix_element_barS(const BraState& s) {
    auto [sign, w] = to_word(s);
    auto v = t_matrix_element_barS(w);
    return sign > 0 ? v : -v;
}

JPoly t_matrix_element(const FockWordDual& w) {
    return j_barS_convert(t_matrix_element_barS(w), Direction::BarSToJ);
}

StateVector<GradedPoly> apply_h(const StateVector<GradedPoly>& v, int k) {
    StateVector<GradedPoly> out;
    for (const auto& [s, c] : v) {
        for (int f : s.extra()) {
            int n = f - 2 * k;
            auto r1 = s.psi(n);
            if (!r1) continue;
            auto r2 = r1->second.psi_star(f);
            if (!r2) continue;
            accumulate(out, r2->second, r1->first * r2->first > 0 ? c : GradedPoly(-c));
        }
    }
    return out;
}

JPoly t_matrix_element_oracle(const FockWordDual& w, int jorder) {
    auto [sign, s0] = to_state(w);
    const BraState target = BraState::vacuum(-1);
    StateVector<GradedPoly> cur{{s0, GradedPoly(jcat(), Rational(sign))}};
    JPoly total(jcat());
    auto collect = [&] {
        if (auto it = cur.find(target); it != cur.end()) total += it->second;
    };
    collect();
    for (int r = 1; !cur.empty() && r <= jorder; ++r) {
        StateVector<GradedPoly> next;
        for (int k = 1; 2 * k <= jorder; ++k) {
            auto hv = apply_h(cur, k);
            GradedPoly factor = GradedPoly::generator(jcat(), 2 * k) * frac(-1, k * r);
            for (const auto& [s, c] : hv) {
                GradedPoly term(jcat());
                const GradedPoly full = c * factor;
                for (const auto& [m, q] : full.terms())
                    if (m.degree() <= jorder) term.add_term(m, q);
                accumulate(next, s, term);
            }
        }
        cur = std::move(next);
        collect();
    }
    return total;
}

}  // namespace kdvres::fock
