#include "kdvres/core/qseries.hpp"

#include "kdvres/core/errors.hpp"

#include <algorithm>

namespace kdvres {

QSeries::QSeries(int order) : order_(order), c_(static_cast<std::size_t>(std::max(order, -1) + 1)) {
    if (order < 0) throw SeriesError("series order must be non-negative");
}

QSeries::QSeries(int order, std::vector<Rational> coeffs) : QSeries(order) {
    for (std::size_t k = 0; k < coeffs.size() && k < c_.size(); ++k) c_[k] = coeffs[k];
}

QSeries QSeries::constant(int order, const Rational& c) {
    QSeries s(order);
    s.c_[0] = c;
    return s;
}

QSeries QSeries::monomial(int order, int power, const Rational& c) {
    QSeries s(order);
    if (power < 0) throw SeriesError("negative power in q-series monomial");
    if (power <= order) s.c_[static_cast<std::size_t>(power)] = c;
    return s;
}

QSeries QSeries::euler_product(int order, const std::function<bool(int)>& keep) {
    QSeries s = one(order);
    for (int i = 1; i <= order; ++i) {
        if (!keep(i)) continue;
        for (int k = order; k >= i; --k) s.c_[k] -= s.c_[k - i];
    }
    return s;
}

QSeries QSeries::inverse_euler_product(int order, const std::function<bool(int)>& keep) {
    QSeries s = one(order);
    for (int i = 1; i <= order; ++i) {
        if (!keep(i)) continue;
        for (int k = i; k <= order; ++k) s.c_[k] += s.c_[k - i];
    }
    return s;
}

const Rational& QSeries::operator[](int k) const {
    if (k < 0 || k > order_) throw SeriesError("q-series coefficient outside valid order");
    return c_[static_cast<std::size_t>(k)];
}

void QSeries::set(int k, const Rational& v) {
    if (k < 0 || k > order_) throw SeriesError("q-series coefficient outside valid order");
    c_[static_cast<std::size_t>(k)] = v;
}

QSeries QSeries::truncated(int order) const {
    QSeries s(std::min(order, order_));
    for (int k = 0; k <= s.order_; ++k) s.c_[k] = c_[k];
    return s;
}

QSeries& QSeries::operator+=(const QSeries& b) {
    *this = truncated(std::min(order_, b.order_));
    for (int k = 0; k <= order_; ++k) c_[k] += b.c_[k];
    return *this;
}

QSeries& QSeries::operator-=(const QSeries& b) {
    *this = truncated(std::min(order_, b.order_));
    for (int k = 0; k <= order_; ++k) c_[k] -= b.c_[k];
    return *this;
}

QSeries& QSeries::operator*=(const Rational& s) {
    for (auto& v : c_) v *= s;
    return *this;
}

QSeries operator*(const QSeries& a, const QSeries& b) {
    QSeries r(std::min(a.order_, b.order_));
    for (int i = 0; i <= r.order_; ++i) {
        if (sgn(a.c_[i]) == 0) continue;
        for (int j = 0; i + j <= r.order_; ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
    }
    return r;
}

QSeries QSeries::inverse() const {
    if (sgn(c_[0]) == 0) throw SeriesError("division by a series with zero constant term");
    QSeries r(order_);
    Rational inv0 = 1 / c_[0];
    r.c_[0] = inv0;
    for (int n = 1; n <= order_; ++n) {
        Rational acc;
        for (int k = 1; k <= n; ++k) acc += c_[k] * r.c_[n - k];
        r.c_[n] = -acc * inv0;
    }
    return r;
}

QSeries operator/(const QSeries& a, const QSeries& b) {
    return a.truncated(std::min(a.order_, b.order_)) * b.truncated(std::min(a.order_, b.order_)).inverse();
}

QSeries QSeries::exp() const {
    if (sgn(c_[0]) != 0) throw SeriesError("exp requires zero constant term");
    // E' = A' E
    QSeries e(order_);
    e.c_[0] = 1;
    for (int n = 1; n <= order_; ++n) {
        Rational acc;
        for (int k = 1; k <= n; ++k) acc += Rational(k) * c_[k] * e.c_[n - k];
        e.c_[n] = acc / n;
    }
    return e;
}

QSeries QSeries::log() const {
    if (c_[0] != 1) throw SeriesError("log requires constant term 1");
    // n L_n = n a_n - sum_{k<n} k L_k a_{n-k}
    QSeries l(order_);
    for (int n = 1; n <= order_; ++n) {
        Rational acc = Rational(n) * c_[n];
        for (int k = 1; k < n; ++k) acc -= Rational(k) * l.c_[k] * c_[n - k];
        l.c_[n] = acc / n;
    }
    return l;
}

bool QSeries::equal_through(const QSeries& other, int order) const {
    int lim = std::min({order, order_, other.order_});
    for (int k = 0; k <= lim; ++k)
        if (c_[k] != other.c_[k]) return false;
    return true;
}

std::string QSeries::to_string() const {
    std::string out;
    for (int k = 0; k <= order_; ++k) {
        if (sgn(c_[k]) == 0) continue;
        Rational mag = abs(c_[k]);
        if (out.empty())
            out += sgn(c_[k]) < 0 ? "-" : "";
        else
            out += sgn(c_[k]) < 0 ? " - " : " + ";
        if (k == 0 || mag != 1) out += to_display_string(mag);
        if (k > 0) out += k == 1 ? "q" : "q^" + std::to_string(k);
    }
    if (out.empty()) out = "0";
    return out + " + O(q^" + std::to_string(order_ + 1) + ")";
}

QSeries qseries_arith(const QSeries& a, const QSeries& b, char op) {
    switch (op) {
        case '+': return a + b;
        case '-': return a - b;
        case '*': return a * b;
        case '/': return a / b;
        default: throw Error(std::string("unsupported series operation '") + op + "'");
    }
}

nlohmann::json to_json(const QSeries& s) {
    nlohmann::json coeffs = nlohmann::json::array();
    for (const auto& c : s.coefficients()) coeffs.push_back(to_fraction_string(c));
    return {{"order", s.order()}, {"coefficients", coeffs}};
}

}  // namespace kdvres
