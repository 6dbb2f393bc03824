#pragma once

#include "kdvres/core/catalog.hpp"
#include "kdvres/core/errors.hpp"
#include "kdvres/core/rational.hpp"

#include "json.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace kdvres {

/// A product of generators with positive exponents, sorted by generator id.
/// The total degree is cached at construction from the owning catalog.
class Monomial {
public:
    using Factor = std::pair<int, int>;  // (generator id, exponent)

    Monomial() = default;
    Monomial(const Catalog& cat, std::vector<Factor> factors);

    static Monomial generator(const Catalog& cat, int id, int exponent = 1);

    const std::vector<Factor>& factors() const { return factors_; }
    int degree() const { return degree_; }
    bool is_one() const { return factors_.empty(); }
    int exponent(int id) const;
    int total_exponent() const;

    Monomial operator*(const Monomial& other) const;

    /// Removes one power of `id`; the caller guarantees exponent(id) > 0.
    Monomial divide_generator(const Catalog& cat, int id) const;

    /// Total degree first, then lexicographic on the sorted factor list.
    friend bool operator<(const Monomial& a, const Monomial& b);
    friend bool operator==(const Monomial& a, const Monomial& b) {
        return a.degree_ == b.degree_ && a.factors_ == b.factors_;
    }

private:
    std::vector<Factor> factors_;
    int degree_ = 0;
};

/// Sparse polynomial over Q in the generators of a catalog, with terms kept
/// in canonical (degree, lex) order and no zero coefficients.
class GradedPoly {
public:
    using TermMap = std::map<Monomial, Rational>;

    explicit GradedPoly(Catalog cat) : cat_(std::move(cat)) {}
    GradedPoly(Catalog cat, const Rational& constant);

    static GradedPoly generator(const Catalog& cat, int id, int exponent = 1);
    static GradedPoly monomial(const Catalog& cat, const Monomial& m, const Rational& c);

    const Catalog& catalog() const { return cat_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    Rational coefficient(const Monomial& m) const;
    Rational constant_term() const;

    void add_term(const Monomial& m, const Rational& c);

    GradedPoly& operator+=(const GradedPoly& other);
    GradedPoly& operator-=(const GradedPoly& other);
    GradedPoly& operator*=(const Rational& c);
    GradedPoly operator-() const;

    friend GradedPoly operator+(GradedPoly a, const GradedPoly& b) { return a += b; }
    friend GradedPoly operator-(GradedPoly a, const GradedPoly& b) { return a -= b; }
    friend GradedPoly operator*(GradedPoly a, const Rational& c) { return a *= c; }
    friend GradedPoly operator*(const Rational& c, GradedPoly a) { return a *= c; }
    friend GradedPoly operator*(const GradedPoly& a, const GradedPoly& b);
    friend bool operator==(const GradedPoly& a, const GradedPoly& b) {
        return a.cat_ == b.cat_ && a.terms_ == b.terms_;
    }

    GradedPoly pow(int e) const;

    /// Homogeneous part of exact degree d.
    GradedPoly grade_component(int d) const;
    bool is_homogeneous() const;
    /// Degree of a homogeneous nonzero polynomial; nullopt otherwise.
    std::optional<int> homogeneous_degree() const;
    int max_degree() const;
    /// Largest generator id occurring, or -1.
    int max_generator() const;

    /// Partial derivative with respect to one generator.
    GradedPoly partial(int id) const;

    /// Ring homomorphism sending each generator to `image(id)`; images must
    /// share `target`. Powers are cached per generator.
    GradedPoly substitute(const Catalog& target, const std::function<GradedPoly(int)>& image) const;

    std::string to_string() const;

private:
    void require_same_catalog(const GradedPoly& other) const;

    Catalog cat_;
    TermMap terms_;
};

/// All monomials of exact degree d in the catalog's generators, ascending.
std::vector<Monomial> monomials_of_degree(const Catalog& cat, int d);

GradedPoly poly_add_mul(const GradedPoly& a, const GradedPoly& b, char op);

/// Canonical wire form: [{"monomial": [[id, exp], ...], "coeff": "n/d"}, ...].
nlohmann::json to_json(const GradedPoly& p);
GradedPoly poly_from_json(const Catalog& cat, const nlohmann::json& j);

/// Generic evaluation into another commutative ring R (e.g. a truncated series).
/// `one` is the unit of R and `generator` returns the image of a generator id.
template <class R, class GeneratorImage>
R evaluate(const GradedPoly& p, const R& one, GeneratorImage&& generator) {
    std::map<std::pair<int, int>, R> powers;
    auto power = [&](int id, int e) -> const R& {
        for (int k = 1; k <= e; ++k) {
            if (powers.count({id, k})) continue;
            R value = (k == 1) ? R(generator(id)) : R(powers.at({id, k - 1}) * generator(id));
            powers.emplace(std::make_pair(id, k), std::move(value));
        }
        return powers.at({id, e});
    };
    R result = one * Rational(0);
    for (const auto& [m, c] : p.terms()) {
        R term = one * c;
        for (const auto& [id, e] : m.factors()) term = term * power(id, e);
        result = result + term;
    }
    return result;
}

}  // namespace kdvres
