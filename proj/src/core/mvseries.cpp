#include "kdvres/core/mvseries.hpp"

#include "kdvres/core/errors.hpp"

#include <algorithm>
#include <mutex>

namespace kdvres {

namespace {

void compositions(int nvars, int total, std::vector<int>& cur, int pos, std::vector<std::vector<int>>& out) {
    if (pos == nvars - 1) {
        cur[static_cast<std::size_t>(pos)] = total;
        out.push_back(cur);
        return;
    }
    for (int e = total; e >= 0; --e) {
        cur[static_cast<std::size_t>(pos)] = e;
        compositions(nvars, total - e, cur, pos + 1, out);
    }
}

}  // namespace

SeriesLayout::SeriesLayout(int nvars, int max_degree) : nvars_(nvars), max_degree_(max_degree) {
    if (nvars < 1 || max_degree < 0) throw SeriesError("invalid series layout");
    for (int d = 0; d <= max_degree; ++d) {
        degree_begin_.push_back(static_cast<int>(exps_.size()));
        std::vector<int> cur(static_cast<std::size_t>(nvars));
        std::vector<std::vector<int>> level;
        compositions(nvars, d, cur, 0, level);
        for (auto& e : level) {
            index_.emplace(e, static_cast<int>(exps_.size()));
            exps_.push_back(std::move(e));
            degree_.push_back(d);
        }
    }
    degree_begin_.push_back(static_cast<int>(exps_.size()));

    const int n = size();
    by_left_.resize(static_cast<std::size_t>(n));
    by_target_.resize(static_cast<std::size_t>(n));
    std::vector<int> sum(static_cast<std::size_t>(nvars));
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < degree_begin(max_degree - degree(a) + 1); ++b) {
            for (int v = 0; v < nvars; ++v)
                sum[static_cast<std::size_t>(v)] = exps_[static_cast<std::size_t>(a)][static_cast<std::size_t>(v)] +
                                                   exps_[static_cast<std::size_t>(b)][static_cast<std::size_t>(v)];
            int c = index_.at(sum);
            by_left_[static_cast<std::size_t>(a)].push_back({b, c});
            by_target_[static_cast<std::size_t>(c)].emplace_back(a, b);
        }
    }
    deriv_.resize(static_cast<std::size_t>(nvars));
    for (int v = 0; v < nvars; ++v) {
        for (int a = 0; a < n; ++a) {
            int e = exps_[static_cast<std::size_t>(a)][static_cast<std::size_t>(v)];
            if (e == 0) continue;
            auto lowered = exps_[static_cast<std::size_t>(a)];
            --lowered[static_cast<std::size_t>(v)];
            deriv_[static_cast<std::size_t>(v)].push_back({a, index_.at(lowered), e});
        }
    }
}

std::shared_ptr<const SeriesLayout> SeriesLayout::get(int nvars, int max_degree) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::shared_ptr<const SeriesLayout>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{nvars, max_degree}];
    if (!slot) slot = std::make_shared<const SeriesLayout>(nvars, max_degree);
    return slot;
}

int SeriesLayout::index_of(const std::vector<int>& exps) const {
    auto it = index_.find(exps);
    return it == index_.end() ? -1 : it->second;
}

MVSeries::MVSeries(std::shared_ptr<const SeriesLayout> layout)
    : layout_(std::move(layout)), c_(static_cast<std::size_t>(layout_->size())), prec_(layout_->max_degree()) {}

MVSeries::MVSeries(std::shared_ptr<const SeriesLayout> layout, const Rational& constant) : MVSeries(std::move(layout)) {
    c_[0] = constant;
}

MVSeries MVSeries::variable(std::shared_ptr<const SeriesLayout> layout, int v) {
    MVSeries s(layout);
    if (layout->max_degree() >= 1) {
        std::vector<int> e(static_cast<std::size_t>(layout->nvars()));
        e[static_cast<std::size_t>(v)] = 1;
        s.c_[static_cast<std::size_t>(layout->index_of(e))] = 1;
    }
    return s;
}

void MVSeries::set_precision(int p) {
    int old_end = layout_->degree_begin(std::max(prec_ + 1, 0));
    prec_ = std::min(p, layout_->max_degree());
    int end = layout_->degree_begin(std::max(prec_ + 1, 0));
    for (int i = end; i < old_end; ++i) c_[static_cast<std::size_t>(i)] = 0;
}

int MVSeries::live() const { return layout_->degree_begin(std::max(prec_ + 1, 0)); }

int MVSeries::valuation() const {
    for (int i = 0; i < layout_->degree_begin(std::max(prec_ + 1, 0)); ++i)
        if (sgn(c_[static_cast<std::size_t>(i)]) != 0) return layout_->degree(i);
    return prec_ + 1;
}

Rational MVSeries::coefficient(const std::vector<int>& exps) const {
    int idx = layout_->index_of(exps);
    if (idx < 0) throw SeriesError("monomial beyond series layout");
    if (layout_->degree(idx) > prec_) throw SeriesError("coefficient beyond valid precision");
    return c_[static_cast<std::size_t>(idx)];
}

MVSeries& MVSeries::operator+=(const MVSeries& b) {
    if (layout_ != b.layout_) throw SeriesError("series layout mismatch");
    set_precision(std::min(prec_, b.prec_));
    for (int i = 0; i < live(); ++i) c_[static_cast<std::size_t>(i)] += b.c_[static_cast<std::size_t>(i)];
    return *this;
}

MVSeries& MVSeries::operator-=(const MVSeries& b) {
    if (layout_ != b.layout_) throw SeriesError("series layout mismatch");
    set_precision(std::min(prec_, b.prec_));
    for (int i = 0; i < live(); ++i) c_[static_cast<std::size_t>(i)] -= b.c_[static_cast<std::size_t>(i)];
    return *this;
}

MVSeries& MVSeries::operator*=(const Rational& s) {
    for (int i = 0; i < live(); ++i) c_[static_cast<std::size_t>(i)] *= s;
    return *this;
}

MVSeries MVSeries::operator-() const {
    MVSeries r = *this;
    for (int i = 0; i < live(); ++i) r.c_[static_cast<std::size_t>(i)] = -r.c_[static_cast<std::size_t>(i)];
    return r;
}

MVSeries operator*(const MVSeries& a, const MVSeries& b) {
    if (a.layout_ != b.layout_) throw SeriesError("series layout mismatch");
    const auto& L = *a.layout_;
    int prec = std::min({a.prec_ + b.valuation(), b.prec_ + a.valuation(), L.max_degree()});
    MVSeries r(a.layout_);
    r.prec_ = prec;
    if (prec < 0) return r;
    mpq_class tmp;
    for (int i = 0; i < L.degree_begin(prec + 1); ++i) {
        const Rational& ai = a.c_[static_cast<std::size_t>(i)];
        if (sgn(ai) == 0) continue;
        int room = prec - L.degree(i);
        for (const auto& [bj, tgt] : L.products_of(i)) {
            if (L.degree(bj) > room) break;
            const Rational& bv = b.c_[static_cast<std::size_t>(bj)];
            if (sgn(bv) == 0) continue;
            mpq_mul(tmp.get_mpq_t(), ai.get_mpq_t(), bv.get_mpq_t());
            r.c_[static_cast<std::size_t>(tgt)] += tmp;
        }
    }
    return r;
}

MVSeries MVSeries::inverse() const {
    if (sgn(c_[0]) == 0) throw SeriesError("inverse of a series with zero constant term");
    const auto& L = *layout_;
    MVSeries g(layout_);
    g.prec_ = prec_;
    if (prec_ < 0) return g;
    Rational inv0 = 1 / c_[0];
    g.c_[0] = inv0;
    for (int c = 1; c < L.degree_begin(prec_ + 1); ++c) {
        Rational acc;
        for (const auto& [fa, gb] : L.factorizations(c)) {
            if (fa == 0) continue;
            if (sgn(c_[static_cast<std::size_t>(fa)]) == 0) continue;
            acc += c_[static_cast<std::size_t>(fa)] * g.c_[static_cast<std::size_t>(gb)];
        }
        g.c_[static_cast<std::size_t>(c)] = -acc * inv0;
    }
    return g;
}

MVSeries MVSeries::log() const {
    if (c_[0] != 1) throw SeriesError("log requires constant term 1");
    const auto& L = *layout_;
    // E(log f) * f = E(f) with E the Euler operator, solved degree by degree;
    // only the nonzero coefficients of f are visited
    MVSeries out(layout_);
    out.prec_ = prec_;
    if (prec_ < 1) return out;
    std::vector<int> support;
    for (int i = 1; i < L.degree_begin(prec_ + 1); ++i)
        if (sgn(c_[static_cast<std::size_t>(i)]) != 0) support.push_back(i);
    std::vector<Rational> acc(static_cast<std::size_t>(L.degree_begin(prec_ + 1)));
    mpq_class tmp;
    for (int d = 1; d <= prec_; ++d) {
        for (int c = L.degree_begin(d); c < L.degree_begin(d + 1); ++c) {
            auto k = static_cast<std::size_t>(c);
            out.c_[k] = c_[k] - acc[k] / d;
        }
        for (int a : support) {
            if (L.degree(a) + d > prec_) break;
            const auto& prods = L.products_of(a);
            for (int b = L.degree_begin(d); b < L.degree_begin(d + 1); ++b) {
                const Rational& lb = out.c_[static_cast<std::size_t>(b)];
                if (sgn(lb) == 0) continue;
                mpq_mul(tmp.get_mpq_t(), c_[static_cast<std::size_t>(a)].get_mpq_t(), lb.get_mpq_t());
                acc[static_cast<std::size_t>(prods[static_cast<std::size_t>(b)].target)] += tmp * d;
            }
        }
    }
    return out;
}

MVSeries MVSeries::exp() const {
    if (sgn(c_[0]) != 0) throw SeriesError("exp requires zero constant term");
    const auto& L = *layout_;
    MVSeries e(layout_);
    e.prec_ = prec_;
    e.c_[0] = 1;
    for (int c = 1; c < L.degree_begin(std::max(prec_ + 1, 0)); ++c) {
        Rational acc;
        for (const auto& [ha, eb] : L.factorizations(c)) {
            if (ha == 0 || sgn(c_[static_cast<std::size_t>(ha)]) == 0) continue;
            acc += Rational(L.degree(ha)) * c_[static_cast<std::size_t>(ha)] * e.c_[static_cast<std::size_t>(eb)];
        }
        e.c_[static_cast<std::size_t>(c)] = acc / L.degree(c);
    }
    return e;
}

MVSeries MVSeries::derivative(int v) const {
    if (v < 0 || v >= layout_->nvars()) throw SeriesError("derivative variable out of range");
    MVSeries r(layout_);
    const int end = live();
    for (const auto& d : layout_->derivative(v)) {
        if (d.source >= end) break;
        const Rational& x = c_[static_cast<std::size_t>(d.source)];
        if (sgn(x) != 0) r.c_[static_cast<std::size_t>(d.target)] = x * d.factor;
    }
    r.set_precision(prec_ - 1);
    return r;
}

MVSeries MVSeries::restricted(std::shared_ptr<const SeriesLayout> smaller) const {
    if (smaller->nvars() != layout_->nvars() || smaller->max_degree() > layout_->max_degree())
        throw SeriesError("restriction needs the same variables and a lower degree");
    MVSeries r(smaller);
    r.prec_ = std::min(prec_, smaller->max_degree());
    for (int i = 0; i < r.live(); ++i) r.c_[static_cast<std::size_t>(i)] = c_[static_cast<std::size_t>(i)];
    return r;
}

bool MVSeries::is_zero_through_precision() const {
    for (int i = 0; i < layout_->degree_begin(std::max(prec_ + 1, 0)); ++i)
        if (sgn(c_[static_cast<std::size_t>(i)]) != 0) return false;
    return true;
}

bool MVSeries::equals(const MVSeries& other) const { return (*this - other).is_zero_through_precision(); }

std::string MVSeries::to_string(int max_terms) const {
    std::string out;
    int shown = 0;
    for (int i = 0; i < layout_->degree_begin(std::max(prec_ + 1, 0)); ++i) {
        const auto& v = c_[static_cast<std::size_t>(i)];
        if (sgn(v) == 0) continue;
        if (shown++ == max_terms) {
            out += " + ...";
            break;
        }
        if (!out.empty()) out += " + ";
        out += "(" + to_display_string(v) + ")";
        const auto& e = layout_->exponents(i);
        for (int k = 0; k < layout_->nvars(); ++k) {
            if (e[static_cast<std::size_t>(k)] == 0) continue;
            out += " t" + std::to_string(2 * k + 1);
            if (e[static_cast<std::size_t>(k)] > 1) out += "^" + std::to_string(e[static_cast<std::size_t>(k)]);
        }
    }
    if (out.empty()) out = "0";
    return out + " + O(t^" + std::to_string(prec_ + 1) + ")";
}

ZSeries::ZSeries(std::shared_ptr<const SeriesLayout> layout, int order) : layout_(std::move(layout)) {
    if (order < 0) throw SeriesError("z-series order must be non-negative");
    c_.assign(static_cast<std::size_t>(order + 1), MVSeries(layout_));
}

int ZSeries::precision() const {
    int p = layout_->max_degree();
    for (const auto& c : c_) p = std::min(p, c.precision());
    return p;
}

ZSeries& ZSeries::operator+=(const ZSeries& b) {
    int n = std::min(order(), b.order());
    c_.resize(static_cast<std::size_t>(n + 1), MVSeries(layout_));
    for (int k = 0; k <= n; ++k) c_[static_cast<std::size_t>(k)] += b.c_[static_cast<std::size_t>(k)];
    return *this;
}

ZSeries& ZSeries::operator-=(const ZSeries& b) {
    int n = std::min(order(), b.order());
    c_.resize(static_cast<std::size_t>(n + 1), MVSeries(layout_));
    for (int k = 0; k <= n; ++k) c_[static_cast<std::size_t>(k)] -= b.c_[static_cast<std::size_t>(k)];
    return *this;
}

ZSeries& ZSeries::operator*=(const Rational& s) {
    for (auto& c : c_) c *= s;
    return *this;
}

ZSeries operator*(const ZSeries& a, const ZSeries& b) {
    int n = std::min(a.order(), b.order());
    ZSeries r(a.layout_, n);
    for (int k = 0; k <= n; ++k) {
        MVSeries acc(a.layout_);
        bool first = true;
        for (int i = 0; i <= k; ++i) {
            const auto& ai = a.c_[static_cast<std::size_t>(i)];
            const auto& bj = b.c_[static_cast<std::size_t>(k - i)];
            MVSeries term = ai * bj;
            if (first) {
                acc = std::move(term);
                first = false;
            } else {
                acc += term;
            }
        }
        r.c_[static_cast<std::size_t>(k)] = std::move(acc);
    }
    return r;
}

ZSeries operator*(const ZSeries& a, const MVSeries& b) {
    ZSeries r = a;
    for (auto& c : r.c_) c = c * b;
    return r;
}

ZSeries ZSeries::inverse() const {
    ZSeries r(layout_, order());
    MVSeries g0 = c_[0].inverse();
    r.c_[0] = g0;
    for (int n = 1; n <= order(); ++n) {
        MVSeries acc = c_[1] * r.c_[static_cast<std::size_t>(n - 1)];
        for (int k = 2; k <= n; ++k) acc += c_[static_cast<std::size_t>(k)] * r.c_[static_cast<std::size_t>(n - k)];
        r.c_[static_cast<std::size_t>(n)] = -(acc * g0);
    }
    return r;
}

ZSeries ZSeries::log() const {
    ZSeries l(layout_, order());
    l.c_[0] = c_[0].log();
    MVSeries g0 = c_[0].inverse();
    for (int n = 1; n <= order(); ++n) {
        MVSeries acc = c_[static_cast<std::size_t>(n)];
        for (int k = 1; k < n; ++k)
            acc -= (l.c_[static_cast<std::size_t>(k)] * c_[static_cast<std::size_t>(n - k)]) * frac(k, n);
        l.c_[static_cast<std::size_t>(n)] = acc * g0;
    }
    return l;
}

ZSeries ZSeries::derivative(int v) const {
    ZSeries r(layout_, order());
    for (int k = 0; k <= order(); ++k) r.c_[static_cast<std::size_t>(k)] = c_[static_cast<std::size_t>(k)].derivative(v);
    return r;
}

ZSeries ZSeries::restricted(const std::shared_ptr<const SeriesLayout>& smaller) const {
    ZSeries r(smaller, order());
    for (int k = 0; k <= order(); ++k) r.c_[static_cast<std::size_t>(k)] = c_[static_cast<std::size_t>(k)].restricted(smaller);
    return r;
}

bool ZSeries::odd_part_vanishes() const {
    for (int k = 1; k <= order(); k += 2)
        if (!c_[static_cast<std::size_t>(k)].is_zero_through_precision()) return false;
    return true;
}

bool ZSeries::even_part_vanishes() const {
    for (int k = 0; k <= order(); k += 2)
        if (!c_[static_cast<std::size_t>(k)].is_zero_through_precision()) return false;
    return true;
}

}  // namespace kdvres
