#include "kdvres/taulab/taulab.hpp"

#include "kdvres/core/errors.hpp"
#include "kdvres/core/qseries.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace kdvres::taulab {

using diffalg::DiffPoly;

namespace {

MVSeries cut(MVSeries x, int t) {
    x.set_precision(std::min(x.precision(), t));
    return x;
}

ZSeries cut(ZSeries z, int t) {
    for (int k = 0; k <= z.order(); ++k) z.at(k) = cut(z[k], t);
    return z;
}

/// d^alpha f for multi-indices alpha, memoized.
class Derivatives {
public:
    explicit Derivatives(const MVSeries& f, std::function<int(const std::vector<int>&)> cap = {}) : cap_(std::move(cap)) {
        std::vector<int> zero(static_cast<std::size_t>(f.layout()->nvars()));
        memo_.emplace(zero, cap_ ? cut(f, cap_(zero)) : f);
    }

    const MVSeries& get(const std::vector<int>& alpha) {
        auto it = memo_.find(alpha);
        if (it != memo_.end()) return it->second;
        auto parent = alpha;
        int v = static_cast<int>(parent.size()) - 1;
        while (parent[static_cast<std::size_t>(v)] == 0) --v;
        --parent[static_cast<std::size_t>(v)];
        MVSeries d = get(parent).derivative(v);
        if (cap_) d = cut(std::move(d), cap_(alpha));
        return memo_.emplace(alpha, std::move(d)).first->second;
    }

    const MVSeries& d(int var, int times) {
        std::vector<int> alpha(memo_.begin()->first.size());
        alpha[static_cast<std::size_t>(var)] = times;
        return get(alpha);
    }

private:
    std::function<int(const std::vector<int>&)> cap_;
    std::map<std::vector<int>, MVSeries> memo_;
};

int var_of(int odd) { return (odd - 1) / 2; }

std::string first_difference(const MVSeries& a, const MVSeries& b) {
    return "difference " + (a - b).to_string(4);
}

MVSeries dense_exp_linear(const std::shared_ptr<const SeriesLayout>& layout, const std::vector<Rational>& kappa) {
    MVSeries e(layout);
    for (int i = 0; i < layout->size(); ++i) {
        Rational c(1);
        const auto& ex = layout->exponents(i);
        for (std::size_t v = 0; v < ex.size(); ++v) {
            Rational k = v < kappa.size() ? kappa[v] : Rational(0);
            for (int j = 1; j <= ex[v]; ++j) c *= k / j;
        }
        e.at(i) = c;
    }
    return e;
}

}  // namespace

std::string TauSpec::label() const {
    switch (kind) {
        case TauKind::Constant: return "constant";
        case TauKind::Linear: return "linear";
        case TauKind::AdlerMoser: return "adler-moser:k=" + std::to_string(k);
        case TauKind::Soliton: return "soliton:p=" + to_display_string(p);
        case TauKind::SolitonNaive: return "soliton-naive:p=" + to_display_string(p);
    }
    return "?";
}

TauSpec parse_tau(const std::string& text) {
    auto colon = text.find(':');
    std::string kind = text.substr(0, colon);
    std::map<std::string, std::string> params;
    if (colon != std::string::npos) {
        std::stringstream ss(text.substr(colon + 1));
        std::string item;
        while (std::getline(ss, item, ',')) {
            auto eq = item.find('=');
            if (eq == std::string::npos)
                params[kind == "adler-moser" ? "k" : "p"] = item;
            else
                params[item.substr(0, eq)] = item.substr(eq + 1);
        }
    }
    TauSpec s;
    auto take = [&](const std::string& key, const std::string& fallback) {
        auto it = params.find(key);
        std::string v = it == params.end() ? fallback : it->second;
        if (it != params.end()) params.erase(it);
        return v;
    };
    if (kind == "constant") {
        s.kind = TauKind::Constant;
    } else if (kind == "linear") {
        s.kind = TauKind::Linear;
    } else if (kind == "adler-moser") {
        s.kind = TauKind::AdlerMoser;
        try {
            s.k = std::stoi(take("k", "2"));
        } catch (const std::exception&) {
            throw ParseError("bad adler-moser index in '" + text + "'");
        }
    } else if (kind == "soliton" || kind == "soliton-naive") {
        s.kind = kind == "soliton" ? TauKind::Soliton : TauKind::SolitonNaive;
        s.p = parse_rational(take("p", "1"));
        if (sgn(s.p) == 0) throw ParseError("soliton needs p != 0");
    } else {
        throw ParseError("unknown tau kind '" + kind + "'");
    }
    if (!params.empty()) throw ParseError("unknown parameter '" + params.begin()->first + "' in '" + text + "'");
    return s;
}

std::vector<Rational> soliton_dispersion(const Rational& p, int count) {
    if (sgn(p) == 0) throw Error("soliton dispersion needs p != 0");
    // tau = 1 + e^theta gives S(z) - 1 = (e^A + e^-A - 2) g''(theta) with
    // A = sum kappa_j s^{2j-1} / (2j-1), and d_1 d_{2n-1} log tau = kappa_1 kappa_n g''.
    // The s^{2n} coefficient is linear in kappa_n through 2 a_1 a_n.
    std::vector<Rational> kappa{2 * p};
    const int order = 2 * count;
    for (int n = 2; n <= count; ++n) {
        QSeries a(order);
        for (int j = 1; j < n; ++j) a.set(2 * j - 1, kappa[static_cast<std::size_t>(j - 1)] / (2 * j - 1));
        QSeries c = a.exp() + (a * Rational(-1)).exp();
        Rational rest = c[2 * n];
        Rational lin = kappa[0] * (1 - Rational(2, 2 * n - 1));
        kappa.push_back(rest / lin);
    }
    return kappa;
}

TauSeries tau_catalog(const TauSpec& spec, const Truncation& trunc, bool validate) {
    if (trunc.t_degree < 4) throw Error("tau truncation degree must be at least 4");
    if (trunc.z_order < 1 || trunc.times < 1) throw Error("invalid tau truncation");
    if (2 * trunc.times - 1 < trunc.z_order - 1)
        throw Error("need times up to t_" + std::to_string(trunc.z_order - 1) + " for z-order " +
                    std::to_string(trunc.z_order));
    auto layout = SeriesLayout::get(trunc.times, trunc.internal_degree());
    MVSeries one(layout, Rational(1));
    MVSeries t1 = MVSeries::variable(layout, 0);
    MVSeries raw(layout);
    std::string point = "t = 0";
    std::vector<Rational> kappa;
    switch (spec.kind) {
        case TauKind::Constant: raw = one; break;
        case TauKind::Linear:
            raw = one + t1;
            point = "t1 = 1";
            break;
        case TauKind::AdlerMoser:
            if (spec.k == 1) {
                raw = one + t1;
            } else if (spec.k == 2) {
                if (trunc.times < 2) throw Error("adler-moser:k=2 needs t3");
                MVSeries x = one + t1;
                raw = x * x * x - MVSeries::variable(layout, 1) * Rational(3);
            } else {
                throw Error("adler-moser: only k = 1, 2 are in the catalog");
            }
            point = "t1 = 1";
            break;
        case TauKind::Soliton:
        case TauKind::SolitonNaive:
            if (spec.kind == TauKind::Soliton) {
                kappa = soliton_dispersion(spec.p, trunc.times);
            } else {
                Rational k1 = 2 * spec.p;
                Rational pw = k1;
                for (int j = 0; j < trunc.times; ++j, pw *= k1 * k1) kappa.push_back(pw);
            }
            raw = one + dense_exp_linear(layout, kappa);
            break;
    }
    Rational tau0 = raw.constant_term();
    MVSeries tau = raw * (1 / tau0);
    TauSeries out{spec, trunc, tau, tau.log(), tau0, point, kappa};
    if (validate && !hirota_check(out))
        throw Error("tau candidate " + spec.label() + " rejected: hirota_check failed");
    return out;
}

bool hirota_check(const TauSeries& tau) {
    const MVSeries& l = tau.log_tau;
    MVSeries l11 = cut(l.derivative(0).derivative(0), tau.trunc.t_degree);
    MVSeries expr = l11.derivative(0).derivative(0) + l11 * l11 * Rational(6);
    if (tau.trunc.times >= 2) expr -= l.derivative(0).derivative(1) * Rational(4);
    return expr.is_zero_through_precision();
}

ZSeries miwa_shift(const MVSeries& f, int sign, int zorder, int precision) {
    const int nvars = f.layout()->nvars();
    // d^alpha f is reused by derivatives of weight up to zorder
    Derivatives der(f, [&](const std::vector<int>& alpha) {
        int w = 0;
        for (std::size_t v = 0; v < alpha.size(); ++v) w += alpha[v] * static_cast<int>(2 * v + 1);
        return precision + zorder - w;
    });
    ZSeries out(f.layout(), zorder);
    for (int k = 0; k <= zorder; ++k) out.at(k).set_precision(std::min(f.precision() - k, precision));
    std::vector<int> alpha(static_cast<std::size_t>(nvars));
    std::function<void(int, int, Rational)> rec = [&](int v, int weight, Rational coeff) {
        if (v == nvars) {
            out.at(weight) += der.get(alpha) * coeff;
            return;
        }
        const int w = 2 * v + 1;
        Rational c = coeff;
        for (int e = 0; weight + e * w <= zorder; ++e) {
            alpha[static_cast<std::size_t>(v)] = e;
            rec(v + 1, weight + e * w, c);
            c *= Rational(sign, w) / (e + 1);
        }
        alpha[static_cast<std::size_t>(v)] = 0;
    };
    rec(0, 0, Rational(1));
    return out;
}

namespace {

/// Everything the suite derives from one tau, truncated to t_degree.
struct Analysis {
    const TauSeries& tau;
    int T;
    int Z;
    Derivatives logd;
    std::shared_ptr<const SeriesLayout> small;  // degree T + 1: everything after the shifts
    ZSeries tm, tp;     // tau(t -+ [1/z])
    ZSeries lm, lp;     // log tau(t -+ [1/z]), valid to T + 1
    ZSeries S;          // from the S-tau quotient
    ZSeries R;          // 1 / S(z)
    ZSeries H;          // X(z) - xi(t,z), valid to T + 1
    MVSeries one;
    MVSeries tau_t;     // tau and log tau to T
    MVSeries log_t;

    Analysis(const TauSeries& t, bool flip)
        : tau(t),
          T(t.trunc.t_degree),
          Z(t.trunc.z_order),
          logd(t.log_tau),
          small(SeriesLayout::get(t.trunc.times, T + 1)),
          tm(cut(miwa_shift(t.tau, -1, Z, T).restricted(small), T)),
          tp(cut(miwa_shift(t.tau, +1, Z, T).restricted(small), T)),
          lm(miwa_shift(t.log_tau, -1, Z, T + 1).restricted(small)),
          lp(miwa_shift(t.log_tau, +1, Z, T + 1).restricted(small)),
          S(small, 0),
          R(small, 0),
          H(small, 0),
          one(cut(MVSeries(small, Rational(1)), T)),
          tau_t(cut(t.tau.restricted(small), T)),
          log_t(cut(t.log_tau.restricted(small), T)) {
        MVSeries inv = tau_t.inverse();
        S = (tm * tp) * (inv * inv);
        R = S.inverse();
        H = (flip ? (lp - lm) : (lm - lp)) * Rational(1, 2);
    }

    MVSeries zero() const { return cut(MVSeries(small), T); }

    MVSeries dlog(const std::vector<int>& odd_indices) {
        std::vector<int> alpha(static_cast<std::size_t>(tau.trunc.times));
        for (int i : odd_indices) ++alpha[static_cast<std::size_t>(var_of(i))];
        return cut(logd.get(alpha).restricted(small), T);
    }

    MVSeries on_uA(const DiffPoly& p) {
        return evaluate<MVSeries>(p, one, [&](int k) { return cut(logd.d(0, k + 2).restricted(small), T) * Rational(-2); });
    }

    /// eta_{2n-1} = -[s^{2n-1}] H
    MVSeries eta(int n) { return -H[2 * n - 1]; }
};

struct Recorder {
    TauReport& report;
    int T;

    /// Equality through t_degree; a comparison valid to a lower precision counts as failure.
    bool equal(const MVSeries& a, const MVSeries& b, std::string& detail, const std::string& where) {
        if (std::min(a.precision(), b.precision()) < T) {
            detail = where + ": only valid to t-degree " + std::to_string(std::min(a.precision(), b.precision()));
            return false;
        }
        if (cut(a, T).equals(cut(b, T))) return true;
        detail = where + ": " + first_difference(cut(a, T), cut(b, T));
        return false;
    }

    void add(const std::string& name, const std::function<void(Check&)>& body) {
        Check c{name, true, {}};
        try {
            body(c);
        } catch (const Error& e) {
            c.passed = false;
            c.detail = e.what();
        }
        report.checks.push_back(std::move(c));
    }
};

std::string zpow(int k) { return "z^-" + std::to_string(k); }

}  // namespace

ZSeries s_series(const TauSeries& tau) {
    Analysis a(tau, false);
    if (!a.S.odd_part_vanishes()) throw SeriesError("S(z) has odd powers of z: not a KdV tau");
    return a.S;
}

std::pair<ZSeries, ZSeries> x_eta_series(const TauSeries& tau) {
    Analysis a(tau, false);
    ZSeries eta(a.small, a.Z);
    for (int k = 0; k + 1 <= a.Z; ++k) eta.at(k + 1) = -a.H[k];
    eta.at(0) = a.zero();
    if (!eta.odd_part_vanishes()) throw SeriesError("eta(z) has odd powers of z");
    return {a.H, eta};
}

namespace {

struct NablaResult {
    bool lemma = true, wz = true, zw = true;
    std::string detail;
};

NablaResult nabla_checks(Analysis& a, Recorder& rec, int worder) {
    NablaResult r;
    const int M = a.tau.trunc.times;
    const int mmax = std::min({worder / 2, M, a.Z / 2});
    std::vector<ZSeries> dH;
    for (int m = 1; m <= mmax; ++m) dH.push_back(a.H.derivative(var_of(2 * m - 1)));
    auto zero = a.zero();
    auto G = [&](int p, int q) {
        if (p < 0 || q < 0 || p > a.Z || q > a.Z) return zero;
        MVSeries g = a.S[q] * a.R[p];
        if (p == 0 && q == 0) g -= a.one;
        return g;
    };
    // nabla(w) X(z) = z / (w^2 - z^2) S(w) / S(z), |w| > |z|, coefficient of w^{-2m} z^e
    for (int m = 1; m <= mmax && r.lemma; ++m) {
        for (int e = 2 * m - 1 - a.Z; e <= 2 * m - 1; ++e) {
            MVSeries lhs = zero;
            if (e < 0) lhs += dH[static_cast<std::size_t>(m - 1)][-e];
            if (e == 2 * m - 1) lhs += a.one;
            MVSeries rhs = zero;
            for (int k = 0; k < m; ++k) {
                int idx = 2 * k + 1 - e;
                if (idx >= 0 && idx <= a.Z) rhs += a.S[2 * m - 2 * k - 2] * a.R[idx];
            }
            if (!rec.equal(lhs, rhs, r.detail, "w^-" + std::to_string(2 * m) + " z^" + std::to_string(e))) {
                r.lemma = false;
                break;
            }
        }
    }
    // nabla(w) eta(z) = (S(w)/S(z) - 1) / (z^2 - w^2)
    auto deta = [&](int n, int m) { return -dH[static_cast<std::size_t>(m - 1)][2 * n - 1]; };
    for (int m = 1; m <= mmax && r.wz; ++m) {
        for (int n = 1 - m; 2 * (n + m - 1) <= a.Z; ++n) {
            MVSeries rhs = zero;
            for (int k = 0; k < m; ++k) rhs -= G(2 * n + 2 * k, 2 * m - 2 * k - 2);
            MVSeries lhs = n >= 1 ? deta(n, m) : zero;
            std::string where = "|w|>|z| w^-" + std::to_string(2 * m) + " z^" + std::to_string(-2 * n);
            if (!rec.equal(lhs, rhs, r.detail, where)) {
                r.wz = false;
                break;
            }
        }
    }
    for (int n = 1; 2 * n <= a.Z && r.zw; ++n) {
        for (int m = 1; m <= mmax && 2 * (n + m - 1) <= a.Z; ++m) {
            MVSeries rhs = zero;
            for (int k = 0; k < n; ++k) rhs += G(2 * n - 2 * k - 2, 2 * m + 2 * k);
            std::string where = "|z|>|w| w^-" + std::to_string(2 * m) + " z^" + std::to_string(-2 * n);
            if (!rec.equal(deta(n, m), rhs, r.detail, where)) {
                r.zw = false;
                break;
            }
        }
    }
    return r;
}

}  // namespace

bool check_nabla_x(const TauSeries& tau, int worder) {
    Analysis a(tau, false);
    TauReport scratch;
    Recorder rec{scratch, a.T};
    auto r = nabla_checks(a, rec, worder);
    return r.lemma && r.wz && r.zw;
}

bool TauReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

const Check* TauReport::find(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

TauReport verify_tau(const TauSpec& spec, diffalg::Hierarchy& hierarchy, const SuiteOptions& options) {
    TauReport report;
    report.tau = spec.label();
    report.trunc = options.trunc;
    report.c_flow = hierarchy.c_flow();
    report.flip_miwa = options.flip_miwa;

    TauSeries tau = tau_catalog(spec, options.trunc, false);
    report.expansion_point = tau.expansion_point;
    report.kappa = tau.kappa;

    Analysis a(tau, options.flip_miwa);
    Recorder rec{report, a.T};
    const int Z = a.Z;
    const int M = options.trunc.times;

    rec.add("hirota", [&](Check& c) {
        c.passed = hirota_check(tau);
        if (!c.passed) c.detail = "d1^2 zeta11 - 4 zeta13 + 6 zeta11^2 != 0";
    });
    rec.add("S even", [&](Check& c) {
        for (int k = 1; k <= Z && c.passed; k += 2)
            if (!a.S[k].is_zero_through_precision()) {
                c.passed = false;
                c.detail = zpow(k) + ": " + a.S[k].to_string(4);
            }
    });
    rec.add("S-tau", [&](Check& c) {
        c.passed = rec.equal(a.S[0], a.one, c.detail, zpow(0));
        for (int n = 1; 2 * n <= Z && 2 * n - 1 <= 2 * M - 1 && c.passed; ++n)
            c.passed = rec.equal(a.S[2 * n], a.dlog({1, 2 * n - 1}), c.detail, zpow(2 * n));
    });
    rec.add("dictionary S", [&](Check& c) {
        for (int n = 1; 2 * n <= Z && c.passed; ++n)
            c.passed = rec.equal(a.S[2 * n], a.on_uA(hierarchy.S(2 * n)), c.detail, "S" + std::to_string(2 * n));
    });
    rec.add("X-tau", [&](Check& c) {
        // X - xi = -1/2 log S + (log Psi - xi), Psi = tau(t - [1/z]) / tau e^xi
        ZSeries shifted = options.flip_miwa ? a.tp : a.tm;
        ZSeries log_psi = (shifted * a.tau_t.inverse()).log();
        ZSeries x = a.S.log() * Rational(-1, 2) + log_psi;
        for (int k = 0; k <= Z && c.passed; ++k) c.passed = rec.equal(x[k], a.H[k], c.detail, zpow(k));
    });
    rec.add("wave function", [&](Check& c) {
        ZSeries shifted = options.flip_miwa ? a.tp : a.tm;
        ZSeries lshift = options.flip_miwa ? a.lp : a.lm;
        ZSeries log_psi = (shifted * a.tau_t.inverse()).log();
        for (int k = 0; k <= Z && c.passed; ++k) {
            MVSeries expect = lshift[k];
            if (k == 0) expect -= a.log_t;
            c.passed = rec.equal(log_psi[k], expect, c.detail, zpow(k));
        }
    });
    rec.add("eta even", [&](Check& c) {
        for (int k = 0; k <= Z && c.passed; k += 2)
            if (!a.H[k].is_zero_through_precision()) {
                c.passed = false;
                c.detail = zpow(k + 1) + ": " + a.H[k].to_string(4);
            }
    });
    NablaResult nabla;
    {
        TauReport scratch;
        Recorder inner{scratch, a.T};
        nabla = nabla_checks(a, inner, Z);
    }
    rec.add("nabla X lemma", [&](Check& c) {
        c.passed = nabla.lemma;
        if (!c.passed) c.detail = nabla.detail;
    });
    rec.add("nabla eta |w|>|z|", [&](Check& c) {
        c.passed = nabla.wz;
        if (!c.passed) c.detail = nabla.detail;
    });
    rec.add("nabla eta |z|>|w|", [&](Check& c) {
        c.passed = nabla.zw;
        if (!c.passed) c.detail = nabla.detail;
    });
    rec.add("d eta = omega", [&](Check& c) {
        for (int n = 1; n <= options.omega_max && c.passed; ++n)
            for (int m = 1; m <= options.omega_max && m <= M && c.passed; ++m) {
                MVSeries lhs = cut(a.eta(n).derivative(var_of(2 * m - 1)), a.T);
                c.passed = rec.equal(lhs, a.on_uA(hierarchy.omega(2 * n - 1, 2 * m - 1)), c.detail,
                                     "omega" + std::to_string(2 * n - 1) + "," + std::to_string(2 * m - 1));
            }
    });
    const int top = 2 * options.dictionary_max - 1;
    rec.add("dictionary zeta", [&](Check& c) {
        for (int i = 1; i <= top && c.passed; i += 2)
            for (int j = i; j <= top && i + j <= Z && c.passed; j += 2) {
                if (var_of(j) >= M) continue;
                c.passed = rec.equal(a.dlog({i, j}), a.on_uA(hierarchy.zeta(i, j)), c.detail,
                                     "zeta" + std::to_string(i) + "," + std::to_string(j));
            }
    });
    rec.add("dictionary omega", [&](Check& c) {
        for (int n = 1; n <= top && c.passed; n += 2)
            for (int m = 1; m <= top && n + m <= Z && c.passed; m += 2) {
                if (var_of(m) >= M) continue;
                MVSeries lhs = cut(a.eta((n + 1) / 2).derivative(var_of(m)), a.T);
                c.passed = rec.equal(lhs, a.on_uA(hierarchy.omega(n, m)), c.detail,
                                     "omega" + std::to_string(n) + "," + std::to_string(m));
            }
    });
    rec.add("dictionary a", [&](Check& c) {
        for (int n = 1; n <= options.dictionary_max && 2 * n <= Z && c.passed; ++n) {
            MVSeries lhs = a.eta(n) - a.dlog({2 * n - 1}) * Rational(1, 2 * n - 1);
            c.passed = rec.equal(lhs, a.on_uA(hierarchy.eta_a(2 * n - 1)), c.detail, "a" + std::to_string(2 * n - 1));
        }
    });
    return report;
}

nlohmann::json to_json(const TauReport& r) {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : r.checks) {
        nlohmann::json j{{"name", c.name}, {"pass", c.passed}};
        if (!c.passed) j["failure"] = c.detail;
        checks.push_back(j);
    }
    nlohmann::json kappa = nlohmann::json::array();
    for (const auto& k : r.kappa) kappa.push_back(to_fraction_string(k));
    return {{"tau", r.tau},
            {"expansion_point", r.expansion_point},
            {"kappa", kappa},
            {"t_degree", r.trunc.t_degree},
            {"z_order", r.trunc.z_order},
            {"times", r.trunc.times},
            {"c_flow", to_fraction_string(r.c_flow)},
            {"flip_miwa", r.flip_miwa},
            {"pass", r.passed()},
            {"checks", checks}};
}

}  // namespace kdvres::taulab
