#pragma once

#include "kdvres/core/graded_poly.hpp"

#include <map>
#include <mutex>
#include <vector>

namespace kdvres::diffalg {

/// Element of A = Q[u, u', u'', ...] with deg u^(k) = k + 2.
using DiffPoly = GradedPoly;

DiffPoly u(int k = 0);
DiffPoly zero();
DiffPoly one();

/// The derivation u^(m) -> u^(m+1).
DiffPoly d1(const DiffPoly& p);

/// Euler operator sum_m (-1)^m d1^m (dp/du^(m)).
DiffPoly variational_derivative(const DiffPoly& p);

/// q with d1(q) = p and no constant term. Throws NotExact when p is not a total derivative.
DiffPoly integrate_d1(const DiffPoly& p);

/// S_2, S_4, ..., S_{2n}; index k holds S_{2k} (index 0 holds 1).
struct SPolyTable {
    std::vector<DiffPoly> s;

    int max_index() const { return 2 * (static_cast<int>(s.size()) - 1); }
    const DiffPoly& operator()(int two_n) const;
};

SPolyTable gen_S(int nmax);

nlohmann::json to_json(const SPolyTable& table);

/// The hierarchy flows and everything derived from them, with lazily grown,
/// internally synchronized caches. All accessors return values.
class Hierarchy {
public:
    static constexpr long kDefaultCFlow = -2;

    explicit Hierarchy(Rational c_flow = Rational(kDefaultCFlow));

    const Rational& c_flow() const { return c_flow_; }

    /// S_{2n}, extending the table on demand.
    DiffPoly S(int two_n);
    SPolyTable s_table(int nmax);

    /// d_n(u^(k)) = c_flow * S_{n+1}^{(k+1)}.
    DiffPoly flow_image(int n, int k);
    /// The derivation d_n (n odd) applied to p.
    DiffPoly flow(int n, const DiffPoly& p);
    /// A DOp (polynomial in the d_i, catalog d_ops) applied to p.
    DiffPoly apply_dop(const GradedPoly& op, const DiffPoly& p);

    DiffPoly zeta(int i, int j);
    /// Coefficient of z^{-n-1} w^{-m-1} in (S(w)/S(z) - 1)/(z^2 - w^2), |z| > |w|.
    DiffPoly omega(int n, int m);
    bool check_omega_closed(int n, int m1, int m2);
    /// a_n with d_m a_n = omega_{n,m} - zeta_{n,m}/n.
    DiffPoly eta_a(int n);
    /// Residual d_m a_n - (omega_{n,m} - zeta_{n,m}/n); zero when the decomposition holds.
    DiffPoly eta_residual(int n, int m);

    /// Coefficient R_{2k} of 1/S(z).
    DiffPoly inverse_S(int two_k);

private:
    DiffPoly S_locked(int two_n);
    DiffPoly derived_S_locked(int two_n, int j);
    DiffPoly flow_image_locked(int n, int k);
    DiffPoly flow_locked(int n, const DiffPoly& p);
    DiffPoly zeta_locked(int i, int j);
    DiffPoly omega_locked(int n, int m);
    DiffPoly inverse_S_locked(int two_k);
    DiffPoly eta_a_locked(int n);

    Rational c_flow_;
    std::recursive_mutex mu_;
    SPolyTable table_;
    std::map<std::pair<int, int>, DiffPoly> dS_;
    std::map<std::pair<int, int>, DiffPoly> images_;
    std::map<std::pair<int, int>, DiffPoly> zeta_;
    std::map<std::pair<int, int>, DiffPoly> omega_;
    std::vector<DiffPoly> inv_;
    std::map<int, DiffPoly> a_;
};

}  // namespace kdvres::diffalg
