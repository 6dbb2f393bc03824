#pragma once

#include "kdvres/core/graded_poly.hpp"
#include "kdvres/core/linalg.hpp"
#include "kdvres/core/qseries.hpp"
#include "kdvres/diffalg/diffalg.hpp"
#include "kdvres/fock/boson.hpp"
#include "kdvres/fock/fermion.hpp"

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace kdvres::dmod {

/// Element of D = Q[d_1, d_3, ...] (catalog d_ops).
using DOp = GradedPoly;
using diffalg::DiffPoly;
using fock::BraState;
using fock::FockWordDual;

DOp d_op(int i, int exponent = 1);
DOp d_one();

enum class Basis { Plain, Tilde };

/// Finite sum of DOp coefficients times dual Fock basis states. Tilde vectors
/// use the same set labels, read in the tilde modes.
struct DFockVector {
    Basis basis = Basis::Plain;
    fock::StateVector<DOp> terms;

    static DFockVector word(const FockWordDual& w, const DOp& coef, Basis b = Basis::Plain);
    static DFockVector state(const BraState& s, const DOp& coef, Basis b = Basis::Plain);

    void add(const BraState& s, const DOp& c) { fock::accumulate(terms, s, c); }
    DFockVector& operator+=(const DFockVector& o);
    DFockVector& operator-=(const DFockVector& o);
    bool is_zero() const { return terms.empty(); }
    /// Total degrees present (DOp degree + state degree).
    std::vector<int> degrees() const;
    /// Canonical-word expansion with signs folded into the coefficients.
    std::vector<std::pair<DOp, FockWordDual>> words() const;
    std::string to_string() const;
};

nlohmann::json to_json(const DFockVector& v);

struct Conventions {
    Rational c_flow{-2};
    Rational c0{2};
    /// Replaces the 1/(n-j) weight in P_{n,l} by 1 (a deliberately wrong variant).
    bool unweighted_p = false;
};

/// (DOp monomial, bar-S monomial) coordinates of D (x) Q[bar-S] at one degree.
struct BarSBasis {
    int degree = 0;
    std::vector<std::pair<Monomial, Monomial>> elements;
    std::map<std::pair<Monomial, Monomial>, int> index;
};

struct KernelReport {
    int degree = 0;
    int domain_dim = 0;
    int target_dim = 0;  // dim A_d
    int ev_rank = 0;
    int kernel_dim = 0;
    int image_dim = 0;  // dim (Q-image + C-image)
    bool image_in_kernel = false;
    bool equal = false;
    std::vector<QVector> kernel_basis;  // in BarSBasis coordinates
    std::vector<QVector> image_basis;

    bool surjective() const { return ev_rank == target_dim; }
};

nlohmann::json to_json(const KernelReport& r);

struct NullVector {
    std::string text;
    std::string provenance;  // "Q-image", "C-image" or "unexplained"
    QVector coords;
};

struct NullVectorReport {
    int degree = 0;
    int kernel_dim = 0;
    int derived_dim = 0;  // trivial + D-multiples of lower kernels
    std::vector<NullVector> generators;
};

nlohmann::json to_json(const NullVectorReport& r);

struct CharReport {
    int order = 0;
    QSeries chA{0};
    QSeries chD{0};
    std::vector<QSeries> columns;  // column N: chD (q^{N^2} - q^{(N+2)^2}) / prod (1 - q^{2i})
    QSeries alternating_sum{0};
    bool alternating_sum_matches = false;
    bool fock_counts_match = false;
};

nlohmann::json to_json(const CharReport& r);

struct Ev2KernelReport {
    int dmax = 0;
    int q_checked = 0;
    int c_checked = 0;
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

/// A composite identity checked on every basis state of some charges up to a
/// degree. All operators involved are D-linear, so states suffice.
struct IdentityReport {
    std::string name;
    int dmax = 0;
    int checked = 0;
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

nlohmann::json to_json(const IdentityReport& r);

struct EquivalenceReport {
    int nmax = 0;
    int mmax = 0;
    std::vector<std::pair<int, DiffPoly>> a;  // (2n-1, a_{2n-1})
    std::vector<std::string> failures;
    bool ok() const { return failures.empty(); }
};

struct QuotientReport {
    int degree = 0;
    int derivative_rank = 0;
    int ev1_rank = 0;  // of im ev1 + sum d A
    int ev2_rank = 0;
    bool same = false;
};

/// The D-module layer over a fixed set of conventions. Caches are internal
/// and synchronized; one Engine may be shared between threads.
class Engine {
public:
    explicit Engine(Conventions conv = {});

    const Conventions& conventions() const { return conv_; }
    diffalg::Hierarchy& hierarchy() { return hier_; }

    DOp P(int n, int l);

    DFockVector q_apply(const DFockVector& v);
    DFockVector c_apply(const DFockVector& v);
    DFockVector c_apply(const DFockVector& v, const Rational& c0);

    enum class Direction { ToTilde, ToPlain };
    DFockVector tilde_transform(const DFockVector& v, Direction dir);

    /// Charge -1, plain basis.
    DiffPoly ev1(const DFockVector& v);
    /// ev_1 of one (DOp monomial, bar-S monomial) pair: P(S^alpha).
    DiffPoly ev1_barS(const Monomial& dop, const Monomial& sbar);

    /// Charge -1, tilde basis.
    DiffPoly ev2(const DFockVector& v);
    /// P applied to F_{IJ} for the word <-2N-1| alpha_{I desc} beta_{J desc}.
    DiffPoly ev2_word(int N, const std::vector<int>& I, const std::vector<int>& J, const DOp& P);
    /// Same value from the exterior algebra: coefficient of dt_{2N-1}^...^dt_1 in dt_I ^ dzeta_J.
    DiffPoly ev2_word_oracle(int N, const std::vector<int>& I, const std::vector<int>& J, const DOp& P);
    /// F for a tilde basis state of charge -1.
    DiffPoly ev2_state(const BraState& s);

    /// Plain-basis basis vectors 1 (x) state for every state of the charge and degree,
    /// times every DOp monomial completing the total degree.
    std::vector<DFockVector> basis(int vacuum, int degree, Basis b = Basis::Plain);

    BarSBasis barS_basis(int degree);
    /// Coordinates of a charge -1 plain vector in the BarSBasis of its degree.
    QVector barS_coords(const DFockVector& v, const BarSBasis& basis);
    QVector a_coords(const DiffPoly& p, int degree);

    Rational calibrate_c0(int dmax);
    KernelReport kernel_at_degree(int d);
    NullVectorReport null_vector_report(int d);
    Ev2KernelReport verify_ev2_kernel(int dmax);
    /// ev_1 Q = 0 on charge -3 and ev_1 C = 0 on charge -5.
    IdentityReport verify_ev1_kernel(int dmax);
    /// Q^2 = 0 and [Q, C] = 0 on the charges with vacua -1, -3, ..., min_vacuum.
    IdentityReport verify_operator_identities(int dmax, int min_vacuum = -9);
    EquivalenceReport ev_equivalence_check(int nmax, int mmax);
    QuotientReport same_quotient(int d);

    std::string format_barS_vector(const QVector& coords, const BarSBasis& basis) const;

private:
    DOp D_entry(int a, int b);
    DOp E_entry(int a, int b);
    fock::StateVector<DOp> apply_combination(const fock::StateVector<DOp>& v, fock::Mode::Kind kind,
                                             int index, bool to_plain);
    std::vector<QVector> kernel_basis_at(int d);
    DiffPoly sbar_product(const Monomial& sbar);

    Conventions conv_;
    diffalg::Hierarchy hier_;
    std::recursive_mutex mu_;
    std::map<std::pair<int, int>, DOp> p_cache_;
    std::map<std::pair<int, int>, DOp> d_cache_;
    std::map<std::pair<int, int>, DOp> e_cache_;
    std::map<std::pair<Monomial, Monomial>, DiffPoly> ev_cache_;
    std::map<Monomial, DiffPoly> sprod_cache_;
    std::map<int, std::map<Monomial, int>> a_index_;
    std::map<int, std::vector<QVector>> kernel_cache_;
};

CharReport char_report(int order);

}  // namespace kdvres::dmod
