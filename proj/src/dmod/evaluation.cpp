#include "kdvres/core/errors.hpp"
#include "kdvres/dmod/dmod.hpp"

#include <algorithm>

namespace kdvres::dmod {

DiffPoly Engine::sbar_product(const Monomial& sbar) {
    std::lock_guard lock(mu_);
    if (auto it = sprod_cache_.find(sbar); it != sprod_cache_.end()) return it->second;
    DiffPoly p = diffalg::one();
    for (const auto& [id, e] : sbar.factors()) p = p * hier_.S(id).pow(e);
    sprod_cache_.emplace(sbar, p);
    return p;
}

DiffPoly Engine::ev1_barS(const Monomial& dop, const Monomial& sbar) {
    std::lock_guard lock(mu_);
    auto key = std::make_pair(dop, sbar);
    if (auto it = ev_cache_.find(key); it != ev_cache_.end()) return it->second;
    DiffPoly v = diffalg::zero();
    if (dop.is_one()) {
        v = sbar_product(sbar);
    } else {
        int i = dop.factors().back().first;
        v = hier_.flow(i, ev1_barS(dop.divide_generator(Catalog::d_ops(), i), sbar));
    }
    ev_cache_.emplace(key, v);
    return v;
}

DiffPoly Engine::ev1(const DFockVector& v) {
    if (v.basis != Basis::Plain) throw Error("ev1 expects a plain-basis vector");
    DiffPoly r = diffalg::zero();
    for (const auto& [s, c] : v.terms) {
        if (s.charge() != -1) throw Error("ev1 expects charge -1 states");
        auto t = fock::t_matrix_element_barS(s);
        for (const auto& [dm, dc] : c.terms())
            for (const auto& [sm, sc] : t.terms()) r += ev1_barS(dm, sm) * (dc * sc);
    }
    return r;
}

namespace {

/// Exterior forms in dt_1, dt_3, ...: keys are strictly descending index lists.
using Form = std::map<std::vector<int>, DiffPoly>;

Form wedge_one_form(const Form& f, const std::map<int, DiffPoly>& one_form) {
    Form out;
    for (const auto& [idx, c] : f)
        for (const auto& [l, a] : one_form) {
            if (std::find(idx.begin(), idx.end(), l) != idx.end()) continue;
            // append dt_l on the right, then sort descending counting transpositions
            std::vector<int> k = idx;
            k.push_back(l);
            int swaps = 0;
            for (std::size_t p = k.size() - 1; p > 0 && k[p] > k[p - 1]; --p) {
                std::swap(k[p], k[p - 1]);
                ++swaps;
            }
            DiffPoly t = c * a;
            if (swaps % 2) t = -t;
            auto it = out.find(k);
            if (it == out.end()) out.emplace(k, t);
            else it->second += t;
        }
    return out;
}

void check_ev2_indices(int N, const std::vector<int>& I, const std::vector<int>& J) {
    if (N < 0) throw Error("ev2: negative filtration level");
    if (static_cast<int>(I.size() + J.size()) != N) throw Error("ev2: word must have N modes in total");
    for (std::size_t k = 0; k < I.size(); ++k) {
        if (I[k] < 1 || I[k] % 2 == 0 || I[k] > 2 * N - 1) throw Error("ev2: alpha index out of range");
        if (k && I[k] >= I[k - 1]) throw Error("ev2: alpha indices must be strictly descending");
    }
    for (std::size_t k = 0; k < J.size(); ++k) {
        if (J[k] < 1 || J[k] % 2 == 0) throw Error("ev2: beta index must be positive odd");
        if (k && J[k] >= J[k - 1]) throw Error("ev2: beta indices must be strictly descending");
    }
}

}  // namespace

DiffPoly Engine::ev2_word(int N, const std::vector<int>& I, const std::vector<int>& J, const DOp& P) {
    check_ev2_indices(N, I, J);
    std::vector<int> comp;  // I^c, descending
    for (int l = 2 * N - 1; l >= 1; l -= 2)
        if (std::find(I.begin(), I.end(), l) == I.end()) comp.push_back(l);
    int inversions = 0;
    for (int x : I)
        for (int y : comp)
            if (x < y) ++inversions;
    std::vector<std::vector<GradedPoly>> m(comp.size());
    for (std::size_t a = 0; a < comp.size(); ++a)
        for (std::size_t b = 0; b < J.size(); ++b) m[a].push_back(hier_.zeta(comp[a], J[b]));
    DiffPoly F = fock::determinant(m, diffalg::one());
    if (inversions % 2) F = -F;
    return hier_.apply_dop(P, F);
}

DiffPoly Engine::ev2_word_oracle(int N, const std::vector<int>& I, const std::vector<int>& J, const DOp& P) {
    check_ev2_indices(N, I, J);
    Form f{{{}, diffalg::one()}};
    for (int i : I) f = wedge_one_form(f, {{i, diffalg::one()}});
    for (int j : J) {
        std::map<int, DiffPoly> dz;
        for (int l = 1; l <= 2 * N - 1; l += 2) dz.emplace(l, hier_.zeta(l, j));
        f = wedge_one_form(f, dz);
    }
    std::vector<int> vol;
    for (int l = 2 * N - 1; l >= 1; l -= 2) vol.push_back(l);
    auto it = f.find(vol);
    DiffPoly F = it == f.end() ? diffalg::zero() : it->second;
    return hier_.apply_dop(P, F);
}

DiffPoly Engine::ev2_state(const BraState& s) {
    if (s.charge() != -1) throw Error("ev2 expects charge -1 states");
    // s = <floor| psi~_{x_1} ... psi~_{x_r} with x ascending, sign +1;
    // reorder to alpha (|x| descending) then beta descending
    int N = (-1 - s.floor()) / 2;
    std::vector<int> I, J;
    for (int x : s.extra()) {
        if (x < 0) I.push_back(-x);
        else J.push_back(x);
    }
    // I already descending (x ascending); J ascending -> reverse costs r(r-1)/2 swaps
    std::reverse(J.begin(), J.end());
    std::size_t r = J.size();
    DiffPoly F = ev2_word(N, I, J, d_one());
    return (r * (r - 1) / 2) % 2 ? DiffPoly(-F) : F;
}

DiffPoly Engine::ev2(const DFockVector& v) {
    if (v.basis != Basis::Tilde) throw Error("ev2 expects a tilde-basis vector");
    DiffPoly r = diffalg::zero();
    for (const auto& [s, c] : v.terms) r += hier_.apply_dop(c, ev2_state(s));
    return r;
}

QVector Engine::a_coords(const DiffPoly& p, int degree) {
    std::map<Monomial, int>* idx;
    {
        std::lock_guard lock(mu_);
        auto it = a_index_.find(degree);
        if (it == a_index_.end()) {
            std::map<Monomial, int> m;
            int k = 0;
            for (const auto& mono : monomials_of_degree(Catalog::diff_u(), degree)) m.emplace(mono, k++);
            it = a_index_.emplace(degree, std::move(m)).first;
        }
        idx = &it->second;
    }
    QVector v(idx->size());
    for (const auto& [m, c] : p.terms()) {
        auto it = idx->find(m);
        if (it == idx->end()) throw Error("a_coords: term of wrong degree in " + p.to_string());
        v[static_cast<std::size_t>(it->second)] = c;
    }
    return v;
}

BarSBasis Engine::barS_basis(int degree) {
    BarSBasis b;
    b.degree = degree;
    // D-degree descending, D-monomial descending, bar-S monomial descending
    for (int dd = degree; dd >= 0; --dd) {
        auto dm = monomials_of_degree(Catalog::d_ops(), dd);
        auto sm = monomials_of_degree(Catalog::bar_s(), degree - dd);
        if (dm.empty() || sm.empty()) continue;
        for (auto x = dm.rbegin(); x != dm.rend(); ++x)
            for (auto y = sm.rbegin(); y != sm.rend(); ++y) {
                b.index.emplace(std::make_pair(*x, *y), static_cast<int>(b.elements.size()));
                b.elements.emplace_back(*x, *y);
            }
    }
    return b;
}

QVector Engine::barS_coords(const DFockVector& v, const BarSBasis& basis) {
    if (v.basis != Basis::Plain) throw Error("bar-S coordinates need a plain-basis vector");
    QVector out(basis.elements.size());
    for (const auto& [s, c] : v.terms) {
        if (s.charge() != -1) throw Error("bar-S coordinates need charge -1 states");
        auto t = fock::t_matrix_element_barS(s);
        for (const auto& [dm, dc] : c.terms())
            for (const auto& [sm, sc] : t.terms()) {
                auto it = basis.index.find({dm, sm});
                if (it == basis.index.end()) throw Error("bar-S coordinates: term of wrong degree");
                out[static_cast<std::size_t>(it->second)] += dc * sc;
            }
    }
    return out;
}

}  // namespace kdvres::dmod
