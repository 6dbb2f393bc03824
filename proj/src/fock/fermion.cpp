#include "kdvres/fock/fermion.hpp"

#include "kdvres/core/errors.hpp"

#include <algorithm>
#include <functional>

namespace kdvres::fock {

namespace {

bool odd(int n) { return n % 2 != 0; }

void require_odd(int n) {
    if (!odd(n)) throw Error("fermion mode index must be odd, got " + std::to_string(n));
}

}  // namespace

Mode Mode::psi(int n) {
    require_odd(n);
    return {Kind::Psi, n};
}

Mode Mode::psi_star(int n) {
    require_odd(n);
    return {Kind::PsiStar, n};
}

BraState::BraState(int floor, std::vector<int> extra) : floor_(floor), extra_(std::move(extra)) { normalize(); }

void BraState::normalize() {
    std::size_t k = 0;
    while (k < extra_.size() && extra_[k] == floor_ + 2) {
        floor_ += 2;
        ++k;
    }
    if (k) extra_.erase(extra_.begin(), extra_.begin() + static_cast<long>(k));
}

BraState BraState::vacuum(int m) {
    require_odd(m);
    return BraState(m, {});
}

bool BraState::contains(int n) const {
    return n <= floor_ || std::binary_search(extra_.begin(), extra_.end(), n);
}

int vacuum_degree(int m) {
    int h = (m + 1) / 2;
    return h * h;
}

int BraState::degree() const {
    int m = charge();
    int d = vacuum_degree(m);
    for (int s : extra_)
        if (s > m) d += s;
    for (int h = floor_ + 2; h <= m; h += 2)
        if (!contains(h)) d -= h;
    return d;
}

std::optional<std::pair<int, BraState>> BraState::psi(int n) const {
    require_odd(n);
    if (contains(n)) return std::nullopt;
    auto pos = std::lower_bound(extra_.begin(), extra_.end(), n);
    long above = extra_.end() - pos;
    std::vector<int> e = extra_;
    e.insert(e.begin() + (pos - extra_.begin()), n);
    return std::make_pair(above % 2 ? -1 : 1, BraState(floor_, std::move(e)));
}

std::optional<std::pair<int, BraState>> BraState::psi_star(int n) const {
    require_odd(n);
    if (!contains(n)) return std::nullopt;
    if (n > floor_) {
        auto pos = std::lower_bound(extra_.begin(), extra_.end(), n);
        long above = extra_.end() - pos - 1;
        std::vector<int> e = extra_;
        e.erase(e.begin() + (pos - extra_.begin()));
        return std::make_pair(above % 2 ? -1 : 1, BraState(floor_, std::move(e)));
    }
    long above = (floor_ - n) / 2 + static_cast<long>(extra_.size());
    std::vector<int> e;
    for (int k = n + 2; k <= floor_; k += 2) e.push_back(k);
    e.insert(e.end(), extra_.begin(), extra_.end());
    return std::make_pair(above % 2 ? -1 : 1, BraState(n - 2, std::move(e)));
}

std::optional<std::pair<int, BraState>> BraState::apply(const Mode& m) const {
    return m.kind == Mode::Kind::Psi ? psi(m.index) : psi_star(m.index);
}

FockWordDual::FockWordDual(int vac, std::vector<int> p, std::vector<int> h)
    : vacuum(vac), psi(std::move(p)), psi_star(std::move(h)) {
    require_odd(vacuum);
    if (psi.size() != psi_star.size()) throw Error("canonical word needs equal numbers of psi and psi*");
    for (std::size_t k = 0; k < psi.size(); ++k) {
        require_odd(psi[k]);
        require_odd(psi_star[k]);
        if (psi[k] <= vacuum || psi_star[k] > vacuum) throw Error("mode outside the canonical range of the vacuum");
        if (k && (psi[k] >= psi[k - 1] || psi_star[k] <= psi_star[k - 1]))
            throw Error("canonical word modes must be strictly ordered");
    }
}

int FockWordDual::degree() const {
    int d = vacuum_degree(vacuum);
    for (int p : psi) d += p;
    for (int h : psi_star) d -= h;
    return d;
}

std::vector<Mode> FockWordDual::modes() const {
    std::vector<Mode> m;
    for (int p : psi) m.push_back(Mode::psi(p));
    for (int h : psi_star) m.push_back(Mode::psi_star(h));
    return m;
}

std::string FockWordDual::to_string() const {
    std::string s = "⟨" + std::to_string(vacuum) + "|";
    for (int p : psi) s += "ψ" + subscript(p);
    for (int h : psi_star) s += "ψ*" + subscript(h);
    return s;
}

std::pair<int, BraState> to_state(const FockWordDual& w) {
    int sign = 1;
    BraState s = BraState::vacuum(w.vacuum);
    for (const auto& m : w.modes()) {
        auto r = s.apply(m);
        if (!r) throw Error("canonical word vanishes: " + w.to_string());
        sign *= r->first;
        s = r->second;
    }
    return {sign, s};
}

std::pair<int, FockWordDual> to_word(const BraState& s) {
    int m = s.charge();
    std::vector<int> p, h;
    for (auto it = s.extra().rbegin(); it != s.extra().rend(); ++it)
        if (*it > m) p.push_back(*it);
    for (int k = s.floor() + 2; k <= m; k += 2)
        if (!s.contains(k)) h.push_back(k);
    FockWordDual w(m, std::move(p), std::move(h));
    auto [sign, back] = to_state(w);
    if (!(back == s)) throw Error("internal error: canonical word does not reproduce state");
    return {sign, w};
}

std::vector<std::pair<Rational, FockWordDual>> normal_order(const std::vector<Mode>& modes, int vacuum) {
    StateVector<Rational> v{{BraState::vacuum(vacuum), Rational(1)}};
    for (const auto& m : modes) v = apply_mode(v, m);
    std::vector<std::pair<Rational, FockWordDual>> out;
    for (const auto& [s, c] : v) {
        auto [sign, w] = to_word(s);
        out.emplace_back(c * sign, w);
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.second < b.second; });
    return out;
}

namespace {

/// Sets of distinct odd positive integers grouped by (size, sum), sum <= e.
std::map<std::pair<int, int>, std::vector<std::vector<int>>> odd_strict_parts(int e) {
    std::map<std::pair<int, int>, std::vector<std::vector<int>>> out;
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int next, int sum) {
        out[{static_cast<int>(cur.size()), sum}].push_back(cur);
        for (int x = next; sum + x <= e; x += 2) {
            cur.push_back(x);
            rec(x + 2, sum + x);
            cur.pop_back();
        }
    };
    rec(1, 0);
    return out;
}

}  // namespace

std::vector<FockWordDual> basis_enum(int vacuum, int degree) {
    require_odd(vacuum);
    int e = degree - vacuum_degree(vacuum);
    std::vector<FockWordDual> out;
    if (e < 0) return out;
    auto parts = odd_strict_parts(e);
    for (const auto& [key, xs_list] : parts) {
        auto [k, sx] = key;
        auto it = parts.find({k, e - sx});
        if (it == parts.end()) continue;
        for (const auto& xs : xs_list)
            for (const auto& ys : it->second) {
                std::vector<int> p, h;
                for (auto x = xs.rbegin(); x != xs.rend(); ++x) p.push_back(vacuum + *x + 1);
                for (auto y = ys.rbegin(); y != ys.rend(); ++y) h.push_back(vacuum - *y + 1);
                out.emplace_back(vacuum, std::move(p), std::move(h));
            }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<long> basis_counts(int vacuum, int order) {
    std::vector<long> c(static_cast<std::size_t>(order + 1));
    for (int d = 0; d <= order; ++d) c[static_cast<std::size_t>(d)] = static_cast<long>(basis_enum(vacuum, d).size());
    return c;
}

}  // namespace kdvres::fock
