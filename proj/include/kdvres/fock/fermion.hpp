#pragma once

#include "kdvres/core/graded_poly.hpp"
#include "kdvres/core/rational.hpp"

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace kdvres::fock {

struct Mode {
    enum class Kind { Psi, PsiStar };
    Kind kind;
    int index;  // odd

    static Mode psi(int n);
    static Mode psi_star(int n);
    bool operator==(const Mode&) const = default;
};

/// A dual Fock basis vector as a semi-infinite set of odd integers:
/// {odd <= floor} united with finitely many odd integers above floor + 2.
/// The vacuum <m| is the set of odd integers <= m. Right multiplication by
/// psi_n inserts n and by psi*_n removes it, with sign (-1)^#{s in set : s > n}.
class BraState {
public:
    static BraState vacuum(int m);

    int floor() const { return floor_; }
    const std::vector<int>& extra() const { return extra_; }  // ascending
    bool contains(int n) const;

    /// The vacuum index m with the same charge.
    int charge() const { return floor_ + 2 * static_cast<int>(extra_.size()); }
    int degree() const;
    int top() const { return extra_.empty() ? floor_ : extra_.back(); }

    /// <S| psi_n as (sign, state), or nullopt when it vanishes.
    std::optional<std::pair<int, BraState>> psi(int n) const;
    std::optional<std::pair<int, BraState>> psi_star(int n) const;
    std::optional<std::pair<int, BraState>> apply(const Mode& m) const;

    auto operator<=>(const BraState&) const = default;

private:
    BraState(int floor, std::vector<int> extra);
    void normalize();

    int floor_ = -1;
    std::vector<int> extra_;
};

/// Degree of the vacuum <m|: ((m+1)/2)^2, so deg <-2N-1| = N^2.
int vacuum_degree(int m);

/// Canonical word <m| psi_{p_1} ... psi_{p_k} psi*_{h_1} ... psi*_{h_k}
/// with p_1 > ... > p_k > m and h_1 < ... < h_k <= m.
struct FockWordDual {
    int vacuum = -1;
    std::vector<int> psi;       // descending, each > vacuum
    std::vector<int> psi_star;  // ascending, each <= vacuum

    FockWordDual() = default;
    FockWordDual(int vacuum, std::vector<int> psi, std::vector<int> psi_star);

    static FockWordDual on_vacuum(int m) { return FockWordDual(m, {}, {}); }

    /// N with vacuum = -2N-1 (vacuum <= -1).
    int N() const { return (-1 - vacuum) / 2; }
    int degree() const;
    std::vector<Mode> modes() const;
    std::string to_string() const;

    auto operator<=>(const FockWordDual&) const = default;
};

/// word = sign * state.
std::pair<int, BraState> to_state(const FockWordDual& w);
/// state = sign * word.
std::pair<int, FockWordDual> to_word(const BraState& s);

template <class C>
using StateVector = std::map<BraState, C>;

inline bool coefficient_is_zero(const Rational& c) { return sgn(c) == 0; }
inline bool coefficient_is_zero(const GradedPoly& c) { return c.is_zero(); }

template <class C>
void accumulate(StateVector<C>& v, const BraState& s, const C& c) {
    auto it = v.find(s);
    if (it == v.end()) {
        if (!coefficient_is_zero(c)) v.emplace(s, c);
        return;
    }
    it->second += c;
    if (coefficient_is_zero(it->second)) v.erase(it);
}

template <class C>
StateVector<C> apply_mode(const StateVector<C>& v, const Mode& m) {
    StateVector<C> out;
    for (const auto& [s, c] : v) {
        auto r = s.apply(m);
        if (!r) continue;
        accumulate(out, r->second, r->first > 0 ? c : C(-c));
    }
    return out;
}

/// Applies the modes left to right to <vacuum| and expands in canonical words.
std::vector<std::pair<Rational, FockWordDual>> normal_order(const std::vector<Mode>& modes, int vacuum);

/// All canonical words on <vacuum| of the given total degree, sorted.
std::vector<FockWordDual> basis_enum(int vacuum, int degree);

/// Number of canonical words per degree 0..order; equals the coefficients of
/// q^{N^2} / prod (1 - q^{2i}).
std::vector<long> basis_counts(int vacuum, int order);

}  // namespace kdvres::fock
