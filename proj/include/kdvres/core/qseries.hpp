#pragma once

#include "kdvres/core/rational.hpp"

#include "json.hpp"

#include <functional>
#include <string>
#include <vector>

namespace kdvres {

/// Univariate power series c_0 + c_1 q + ... known exactly through q^order.
/// Every operation records the order to which its result is valid.
class QSeries {
public:
    explicit QSeries(int order);
    QSeries(int order, std::vector<Rational> coeffs);

    static QSeries one(int order) { return constant(order, Rational(1)); }
    static QSeries constant(int order, const Rational& c);
    static QSeries monomial(int order, int power, const Rational& c = Rational(1));
    /// 1 / prod_{i >= 1, keep(i)} (1 - q^i), truncated at `order`.
    static QSeries inverse_euler_product(int order, const std::function<bool(int)>& keep);
    /// prod_{i >= 1, keep(i)} (1 - q^i).
    static QSeries euler_product(int order, const std::function<bool(int)>& keep);

    int order() const { return order_; }
    const Rational& operator[](int k) const;
    const std::vector<Rational>& coefficients() const { return c_; }
    void set(int k, const Rational& v);

    QSeries truncated(int order) const;

    QSeries& operator+=(const QSeries& b);
    QSeries& operator-=(const QSeries& b);
    QSeries& operator*=(const Rational& s);
    friend QSeries operator+(QSeries a, const QSeries& b) { return a += b; }
    friend QSeries operator-(QSeries a, const QSeries& b) { return a -= b; }
    friend QSeries operator*(QSeries a, const Rational& s) { return a *= s; }
    friend QSeries operator*(const QSeries& a, const QSeries& b);
    friend QSeries operator/(const QSeries& a, const QSeries& b);

    QSeries inverse() const;
    /// Requires zero constant term.
    QSeries exp() const;
    /// Requires constant term 1.
    QSeries log() const;

    /// Coefficient equality through min(order, other.order).
    bool equal_through(const QSeries& other, int order) const;

    std::string to_string() const;

private:
    int order_;
    std::vector<Rational> c_;
};

QSeries qseries_arith(const QSeries& a, const QSeries& b, char op);

nlohmann::json to_json(const QSeries& s);

}  // namespace kdvres
