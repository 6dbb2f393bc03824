#include "kdvres/core/graded_poly.hpp"

#include <algorithm>

namespace kdvres {

Monomial::Monomial(const Catalog& cat, std::vector<Factor> factors) {
    std::sort(factors.begin(), factors.end());
    for (const auto& [id, e] : factors) {
        if (e == 0) continue;
        if (e < 0) throw Error("negative exponent in monomial");
        if (!factors_.empty() && factors_.back().first == id)
            factors_.back().second += e;
        else
            factors_.emplace_back(id, e);
        degree_ += cat.grade(id) * e;
    }
}

Monomial Monomial::generator(const Catalog& cat, int id, int exponent) {
    return Monomial(cat, {{id, exponent}});
}

int Monomial::exponent(int id) const {
    auto it = std::lower_bound(factors_.begin(), factors_.end(), Factor{id, 0});
    return (it != factors_.end() && it->first == id) ? it->second : 0;
}

int Monomial::total_exponent() const {
    int n = 0;
    for (const auto& f : factors_) n += f.second;
    return n;
}

Monomial Monomial::operator*(const Monomial& other) const {
    Monomial r;
    r.degree_ = degree_ + other.degree_;
    r.factors_.reserve(factors_.size() + other.factors_.size());
    auto a = factors_.begin(), b = other.factors_.begin();
    while (a != factors_.end() || b != other.factors_.end()) {
        if (b == other.factors_.end() || (a != factors_.end() && a->first < b->first)) {
            r.factors_.push_back(*a++);
        } else if (a == factors_.end() || b->first < a->first) {
            r.factors_.push_back(*b++);
        } else {
            r.factors_.emplace_back(a->first, a->second + b->second);
            ++a;
            ++b;
        }
    }
    return r;
}

Monomial Monomial::divide_generator(const Catalog& cat, int id) const {
    Monomial r = *this;
    auto it = std::lower_bound(r.factors_.begin(), r.factors_.end(), Factor{id, 0});
    if (it == r.factors_.end() || it->first != id) throw Error("monomial not divisible by generator");
    if (--it->second == 0) r.factors_.erase(it);
    r.degree_ -= cat.grade(id);
    return r;
}

bool operator<(const Monomial& a, const Monomial& b) {
    if (a.degree_ != b.degree_) return a.degree_ < b.degree_;
    return a.factors_ < b.factors_;
}

GradedPoly::GradedPoly(Catalog cat, const Rational& constant) : cat_(std::move(cat)) {
    if (!kdvres::is_zero(constant)) terms_.emplace(Monomial(), constant);
}

GradedPoly GradedPoly::generator(const Catalog& cat, int id, int exponent) {
    return monomial(cat, Monomial::generator(cat, id, exponent), Rational(1));
}

GradedPoly GradedPoly::monomial(const Catalog& cat, const Monomial& m, const Rational& c) {
    GradedPoly p(cat);
    p.add_term(m, c);
    return p;
}

Rational GradedPoly::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

Rational GradedPoly::constant_term() const { return coefficient(Monomial()); }

void GradedPoly::add_term(const Monomial& m, const Rational& c) {
    if (kdvres::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (kdvres::is_zero(it->second)) terms_.erase(it);
    }
}

void GradedPoly::require_same_catalog(const GradedPoly& other) const {
    if (!(cat_ == other.cat_))
        throw CatalogMismatch("catalog mismatch: " + cat_.name() + " vs " + other.cat_.name());
}

GradedPoly& GradedPoly::operator+=(const GradedPoly& other) {
    require_same_catalog(other);
    for (const auto& [m, c] : other.terms_) add_term(m, c);
    return *this;
}

GradedPoly& GradedPoly::operator-=(const GradedPoly& other) {
    require_same_catalog(other);
    for (const auto& [m, c] : other.terms_) add_term(m, -c);
    return *this;
}

GradedPoly& GradedPoly::operator*=(const Rational& c) {
    if (kdvres::is_zero(c)) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, v] : terms_) v *= c;
    return *this;
}

GradedPoly GradedPoly::operator-() const {
    GradedPoly r = *this;
    for (auto& [m, v] : r.terms_) v = -v;
    return r;
}

GradedPoly operator*(const GradedPoly& a, const GradedPoly& b) {
    a.require_same_catalog(b);
    GradedPoly r(a.cat_);
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
    return r;
}

GradedPoly GradedPoly::pow(int e) const {
    if (e < 0) throw Error("negative power of polynomial");
    GradedPoly result(cat_, Rational(1));
    GradedPoly base = *this;
    while (e > 0) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

GradedPoly GradedPoly::grade_component(int d) const {
    GradedPoly r(cat_);
    for (const auto& [m, c] : terms_)
        if (m.degree() == d) r.terms_.emplace_hint(r.terms_.end(), m, c);
    return r;
}

bool GradedPoly::is_homogeneous() const {
    if (terms_.empty()) return true;
    return terms_.begin()->first.degree() == terms_.rbegin()->first.degree();
}

std::optional<int> GradedPoly::homogeneous_degree() const {
    if (terms_.empty() || !is_homogeneous()) return std::nullopt;
    return terms_.begin()->first.degree();
}

int GradedPoly::max_degree() const {
    return terms_.empty() ? -1 : terms_.rbegin()->first.degree();
}

int GradedPoly::max_generator() const {
    int best = -1;
    for (const auto& [m, c] : terms_)
        if (!m.factors().empty()) best = std::max(best, m.factors().back().first);
    return best;
}

GradedPoly GradedPoly::partial(int id) const {
    GradedPoly r(cat_);
    for (const auto& [m, c] : terms_) {
        int e = m.exponent(id);
        if (e == 0) continue;
        r.add_term(m.divide_generator(cat_, id), c * e);
    }
    return r;
}

GradedPoly GradedPoly::substitute(const Catalog& target,
                                  const std::function<GradedPoly(int)>& image) const {
    std::map<int, GradedPoly> images;
    auto image_of = [&](int id) -> const GradedPoly& {
        auto it = images.find(id);
        if (it == images.end()) it = images.emplace(id, image(id)).first;
        return it->second;
    };
    GradedPoly one(target, Rational(1));
    return evaluate<GradedPoly>(*this, one, image_of);
}

std::string GradedPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        Rational mag = abs(c);
        if (first) {
            if (sgn(c) < 0) out += "-";
        } else {
            out += sgn(c) < 0 ? " - " : " + ";
        }
        first = false;
        bool unit = (mag == 1) && !m.is_one();
        if (!unit) out += to_display_string(mag);
        bool need_space = !unit;
        for (const auto& [id, e] : m.factors()) {
            if (need_space) out += " ";
            need_space = true;
            out += cat_.label(id);
            if (e > 1) out += "^" + std::to_string(e);
        }
    }
    return out;
}

std::vector<Monomial> monomials_of_degree(const Catalog& cat, int d) {
    std::vector<std::pair<int, int>> gens;  // (id, grade)
    for (int id = 0; id <= d + 2; ++id)
        if (cat.valid_id(id) && cat.grade(id) > 0 && cat.grade(id) <= d) gens.emplace_back(id, cat.grade(id));
    std::vector<Monomial> out;
    std::vector<Monomial::Factor> cur;
    auto rec = [&](auto&& self, std::size_t from, int left) -> void {
        if (left == 0) {
            out.emplace_back(cat, cur);
            return;
        }
        for (std::size_t g = from; g < gens.size(); ++g) {
            auto [id, w] = gens[g];
            for (int e = 1; e * w <= left; ++e) {
                cur.emplace_back(id, e);
                self(self, g + 1, left - e * w);
                cur.pop_back();
            }
        }
    };
    if (d >= 0) rec(rec, 0, d);
    std::sort(out.begin(), out.end());
    return out;
}

GradedPoly poly_add_mul(const GradedPoly& a, const GradedPoly& b, char op) {
    switch (op) {
        case '+': return a + b;
        case '*': return a * b;
        default: throw Error(std::string("unsupported polynomial operation '") + op + "'");
    }
}

nlohmann::json to_json(const GradedPoly& p) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [m, c] : p.terms()) {
        nlohmann::json mono = nlohmann::json::array();
        for (const auto& [id, e] : m.factors()) mono.push_back({id, e});
        arr.push_back({{"monomial", mono}, {"coeff", to_fraction_string(c)}});
    }
    return arr;
}

GradedPoly poly_from_json(const Catalog& cat, const nlohmann::json& j) {
    if (!j.is_array()) throw ParseError("polynomial JSON must be an array");
    GradedPoly p(cat);
    for (const auto& term : j) {
        if (!term.contains("monomial") || !term.contains("coeff"))
            throw ParseError("polynomial term needs 'monomial' and 'coeff'");
        std::vector<Monomial::Factor> factors;
        for (const auto& f : term.at("monomial")) {
            if (!f.is_array() || f.size() != 2) throw ParseError("monomial factor must be [id, exp]");
            int id = f[0].get<int>(), e = f[1].get<int>();
            if (e <= 0) throw ParseError("monomial exponents must be positive");
            factors.emplace_back(id, e);
        }
        p.add_term(Monomial(cat, std::move(factors)), parse_rational(term.at("coeff").get<std::string>()));
    }
    return p;
}

}  // namespace kdvres
