#pragma once

#include "kdvres/core/rational.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace kdvres {

/// Dense index of all monomials in `nvars` variables of total degree <= max_degree,
/// ordered by degree then reverse-lex, together with precomputed product and
/// derivative tables. Layouts are interned and shared.
class SeriesLayout {
public:
    static std::shared_ptr<const SeriesLayout> get(int nvars, int max_degree);

    int nvars() const { return nvars_; }
    int max_degree() const { return max_degree_; }
    int size() const { return static_cast<int>(exps_.size()); }

    const std::vector<int>& exponents(int index) const { return exps_[static_cast<std::size_t>(index)]; }
    int degree(int index) const { return degree_[static_cast<std::size_t>(index)]; }
    /// First index of degree d (d may be max_degree + 1, giving size()).
    int degree_begin(int d) const { return degree_begin_[static_cast<std::size_t>(d)]; }
    int index_of(const std::vector<int>& exps) const;

    struct Pair {
        int other;
        int target;
    };
    /// For each monomial a: all (b, a*b) with deg b ascending and deg(a*b) <= max_degree.
    const std::vector<Pair>& products_of(int a) const { return by_left_[static_cast<std::size_t>(a)]; }
    /// For each monomial c: all (a, b) with a*b = c.
    const std::vector<std::pair<int, int>>& factorizations(int c) const {
        return by_target_[static_cast<std::size_t>(c)];
    }
    /// (source, target, factor) for d/dx_v.
    struct DerivEntry {
        int source;
        int target;
        int factor;
    };
    const std::vector<DerivEntry>& derivative(int v) const { return deriv_[static_cast<std::size_t>(v)]; }

    SeriesLayout(int nvars, int max_degree);

private:
    int nvars_;
    int max_degree_;
    std::vector<std::vector<int>> exps_;
    std::vector<int> degree_;
    std::vector<int> degree_begin_;
    std::map<std::vector<int>, int> index_;
    std::vector<std::vector<Pair>> by_left_;
    std::vector<std::vector<std::pair<int, int>>> by_target_;
    std::vector<std::vector<DerivEntry>> deriv_;
};

/// Truncated multivariate power series with rational coefficients.
///
/// Coefficients of total degree <= precision() are exact; slots above it are
/// kept at zero. Arithmetic tracks precision using
/// valuations, so a product with a series vanishing to order v loses nothing.
class MVSeries {
public:
    explicit MVSeries(std::shared_ptr<const SeriesLayout> layout);
    MVSeries(std::shared_ptr<const SeriesLayout> layout, const Rational& constant);

    static MVSeries variable(std::shared_ptr<const SeriesLayout> layout, int v);

    const std::shared_ptr<const SeriesLayout>& layout() const { return layout_; }
    int precision() const { return prec_; }
    void set_precision(int p);
    /// Lowest degree carrying a nonzero coefficient (within precision), or a
    /// large sentinel for the zero series.
    int valuation() const;

    const Rational& operator[](int index) const { return c_[static_cast<std::size_t>(index)]; }
    /// Slots above precision() must stay zero.
    Rational& at(int index) { return c_[static_cast<std::size_t>(index)]; }
    Rational coefficient(const std::vector<int>& exps) const;
    const Rational& constant_term() const { return c_[0]; }

    MVSeries& operator+=(const MVSeries& b);
    MVSeries& operator-=(const MVSeries& b);
    MVSeries& operator*=(const Rational& s);
    friend MVSeries operator+(MVSeries a, const MVSeries& b) { return a += b; }
    friend MVSeries operator-(MVSeries a, const MVSeries& b) { return a -= b; }
    friend MVSeries operator*(MVSeries a, const Rational& s) { return a *= s; }
    friend MVSeries operator*(const Rational& s, MVSeries a) { return a *= s; }
    friend MVSeries operator*(const MVSeries& a, const MVSeries& b);
    MVSeries operator-() const;

    MVSeries inverse() const;
    /// Requires constant term 1.
    MVSeries log() const;
    /// Requires zero constant term.
    MVSeries exp() const;
    MVSeries derivative(int v) const;
    /// The same series in a layout with the same variables and a lower max
    /// degree; indices of a layout are a prefix of any deeper one.
    MVSeries restricted(std::shared_ptr<const SeriesLayout> smaller) const;

    /// True when every coefficient of degree <= min(precision) vanishes.
    bool is_zero_through_precision() const;
    /// Degree-wise equality through the common precision.
    bool equals(const MVSeries& other) const;

    std::string to_string(int max_terms = 12) const;

private:
    /// Number of slots through the current precision.
    int live() const;

    std::shared_ptr<const SeriesLayout> layout_;
    std::vector<Rational> c_;
    int prec_;
};

/// Series in s = z^{-1} with MVSeries coefficients: sum_{k=0}^{order} c_k s^k.
class ZSeries {
public:
    ZSeries(std::shared_ptr<const SeriesLayout> layout, int order);

    int order() const { return static_cast<int>(c_.size()) - 1; }
    const std::shared_ptr<const SeriesLayout>& layout() const { return layout_; }
    const MVSeries& operator[](int k) const { return c_[static_cast<std::size_t>(k)]; }
    MVSeries& at(int k) { return c_[static_cast<std::size_t>(k)]; }
    /// Minimum precision across coefficients.
    int precision() const;

    ZSeries& operator+=(const ZSeries& b);
    ZSeries& operator-=(const ZSeries& b);
    ZSeries& operator*=(const Rational& s);
    friend ZSeries operator+(ZSeries a, const ZSeries& b) { return a += b; }
    friend ZSeries operator-(ZSeries a, const ZSeries& b) { return a -= b; }
    friend ZSeries operator*(ZSeries a, const Rational& s) { return a *= s; }
    friend ZSeries operator*(const ZSeries& a, const ZSeries& b);
    friend ZSeries operator*(const ZSeries& a, const MVSeries& b);

    ZSeries inverse() const;
    /// Requires the s^0 coefficient to have constant term 1.
    ZSeries log() const;
    ZSeries derivative(int v) const;
    ZSeries restricted(const std::shared_ptr<const SeriesLayout>& smaller) const;

    /// Coefficient series for each odd power of s is zero through precision.
    bool odd_part_vanishes() const;
    bool even_part_vanishes() const;

private:
    std::shared_ptr<const SeriesLayout> layout_;
    std::vector<MVSeries> c_;
};

}  // namespace kdvres
