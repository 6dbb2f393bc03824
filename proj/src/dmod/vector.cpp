#include "kdvres/core/errors.hpp"
#include "kdvres/dmod/dmod.hpp"

#include <set>

namespace kdvres::dmod {

DOp d_op(int i, int exponent) { return GradedPoly::generator(Catalog::d_ops(), i, exponent); }
DOp d_one() { return GradedPoly(Catalog::d_ops(), Rational(1)); }

DFockVector DFockVector::word(const FockWordDual& w, const DOp& coef, Basis b) {
    auto [sign, s] = fock::to_state(w);
    return state(s, sign > 0 ? coef : DOp(-coef), b);
}

DFockVector DFockVector::state(const BraState& s, const DOp& coef, Basis b) {
    DFockVector v;
    v.basis = b;
    v.add(s, coef);
    return v;
}

DFockVector& DFockVector::operator+=(const DFockVector& o) {
    if (o.basis != basis && !o.is_zero() && !is_zero()) throw Error("adding vectors in different bases");
    if (is_zero()) basis = o.basis;
    for (const auto& [s, c] : o.terms) add(s, c);
    return *this;
}

DFockVector& DFockVector::operator-=(const DFockVector& o) {
    if (o.basis != basis && !o.is_zero() && !is_zero()) throw Error("subtracting vectors in different bases");
    if (is_zero()) basis = o.basis;
    for (const auto& [s, c] : o.terms) add(s, -c);
    return *this;
}

std::vector<int> DFockVector::degrees() const {
    std::set<int> ds;
    for (const auto& [s, c] : terms)
        for (const auto& [m, q] : c.terms()) ds.insert(m.degree() + s.degree());
    return {ds.begin(), ds.end()};
}

std::vector<std::pair<DOp, FockWordDual>> DFockVector::words() const {
    std::vector<std::pair<DOp, FockWordDual>> out;
    for (const auto& [s, c] : terms) {
        auto [sign, w] = fock::to_word(s);
        out.emplace_back(sign > 0 ? c : DOp(-c), w);
    }
    return out;
}

std::string DFockVector::to_string() const {
    if (terms.empty()) return "0";
    std::string out;
    for (const auto& [c, w] : words()) {
        if (!out.empty()) out += " + ";
        out += "(" + c.to_string() + ")⊗" + (basis == Basis::Tilde ? "~" : "") + w.to_string();
    }
    return out;
}

nlohmann::json to_json(const DFockVector& v) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [c, w] : v.words())
        terms.push_back({{"vacuum", w.vacuum}, {"psi", w.psi}, {"psi_star", w.psi_star}, {"coeff", to_json(c)}});
    return {{"basis", v.basis == Basis::Plain ? "plain" : "tilde"}, {"terms", terms}};
}

}  // namespace kdvres::dmod
