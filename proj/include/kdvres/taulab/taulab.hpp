#pragma once

#include "kdvres/core/mvseries.hpp"
#include "kdvres/diffalg/diffalg.hpp"

#include "json.hpp"

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace kdvres::taulab {

enum class TauKind { Constant, Linear, AdlerMoser, Soliton, SolitonNaive };

/// A catalog entry as written on the command line, e.g. "soliton:p=1/2".
struct TauSpec {
    TauKind kind = TauKind::Constant;
    Rational p{1};
    int k = 1;

    std::string label() const;
};

TauSpec parse_tau(const std::string& text);

struct Truncation {
    int t_degree = 8;  // identities are verified through this total degree in the t's
    int z_order = 10;  // ... and through this power of 1/z
    int times = 5;     // t_1, t_3, ..., t_{2M-1}

    /// Degree of the expansion of tau itself: every z^{-k} coefficient costs
    /// up to k derivatives, so this keeps t_degree valid through z_order.
    int internal_degree() const { return t_degree + z_order; }
};

/// tau / tau(0) as a truncated series in t_1, t_3, ..., t_{2M-1}.
struct TauSeries {
    TauSpec spec;
    Truncation trunc;
    MVSeries tau;
    MVSeries log_tau;
    Rational tau0;
    std::string expansion_point;   // e.g. "t1 = 1" for polynomial taus vanishing at 0
    std::vector<Rational> kappa;   // soliton dispersion kappa_1, kappa_3, ...
};

/// Builds a catalog tau. With `validate`, a candidate failing hirota_check is
/// rejected with an Error (negative controls pass validate = false).
TauSeries tau_catalog(const TauSpec& spec, const Truncation& trunc = {}, bool validate = true);

/// kappa_1 = 2p; the higher kappa_{2j-1} are solved order by order from
/// S_{2n} = d_1 d_{2n-1} log tau on tau = 1 + exp(theta).
std::vector<Rational> soliton_dispersion(const Rational& p, int count);

/// d_1^2 zeta_11 - 4 zeta_13 + 6 zeta_11^2 = 0 with zeta_ij = d_i d_j log tau.
bool hirota_check(const TauSeries& tau);

/// f(t + sign [1/z]) as a series in s = 1/z through s^zorder; the s^k
/// coefficient is exact to t-degree min(precision, prec(f) - k).
ZSeries miwa_shift(const MVSeries& f, int sign, int zorder, int precision = 1 << 20);

/// S(z) = tau(t-[1/z]) tau(t+[1/z]) / tau^2. Throws SeriesError on odd powers.
ZSeries s_series(const TauSeries& tau);

/// (X(z) - xi(t,z), eta(z)); eta holds eta_{2n-1} at s^{2n}. Throws SeriesError on odd residue in eta.
std::pair<ZSeries, ZSeries> x_eta_series(const TauSeries& tau);

/// The nabla(w) X(z) lemma in the |w| > |z| regime, and the eta form in both regimes.
bool check_nabla_x(const TauSeries& tau, int worder);

struct Check {
    std::string name;
    bool passed = true;
    std::string detail;  // first failing coefficient, empty on pass
};

struct TauReport {
    std::string tau;
    std::string expansion_point;
    std::vector<Rational> kappa;
    Truncation trunc;
    Rational c_flow;
    bool flip_miwa = false;
    std::vector<Check> checks;

    bool passed() const;
    const Check* find(const std::string& name) const;
};

struct SuiteOptions {
    Truncation trunc;
    int omega_max = 3;           // d_{2m-1} eta_{2n-1} = omega for n, m <= omega_max
    int dictionary_max = 4;      // S_{2n}, zeta, omega, a_{2n-1} for indices up to 2n-1, n <= this
    bool flip_miwa = false;      // negative control: wave function from tau(t + [1/z])
    bool validate = true;
};

/// Runs every tau-side identity on one catalog tau.
TauReport verify_tau(const TauSpec& spec, diffalg::Hierarchy& hierarchy, const SuiteOptions& options = {});

nlohmann::json to_json(const TauReport& report);

}  // namespace kdvres::taulab
