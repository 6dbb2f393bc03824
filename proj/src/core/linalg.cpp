#include "kdvres/core/linalg.hpp"

#include "kdvres/core/errors.hpp"

#include <algorithm>

namespace kdvres {

namespace {

std::vector<Integer> to_integer_row(const QVector& v) {
    Integer l = 1;
    for (const auto& x : v)
        if (sgn(x) != 0) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    std::vector<Integer> r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (sgn(v[i]) == 0) continue;
        r[i] = v[i].get_num() * (l / v[i].get_den());
    }
    return r;
}

void make_primitive(std::vector<Integer>& v) {
    Integer g = 0;
    for (const auto& x : v)
        if (sgn(x) != 0) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 0) return;
    auto lead = std::find_if(v.begin(), v.end(), [](const Integer& x) { return sgn(x) != 0; });
    if (sgn(*lead) < 0) g = -g;
    if (g != 1)
        for (auto& x : v)
            if (sgn(x) != 0) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

int first_nonzero(const std::vector<Integer>& v) {
    for (std::size_t i = 0; i < v.size(); ++i)
        if (sgn(v[i]) != 0) return static_cast<int>(i);
    return -1;
}

}  // namespace

std::vector<Integer> Subspace::eliminate(std::vector<Integer> v) const {
    for (const auto& row : rows_) {
        const Integer& a = v[static_cast<std::size_t>(row.pivot)];
        if (sgn(a) == 0) continue;
        const Integer p = row.v[static_cast<std::size_t>(row.pivot)];
        const Integer c = a;
        // v <- p*v - c*row, then strip content
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (sgn(v[i]) == 0 && sgn(row.v[i]) == 0) continue;
            v[i] *= p;
            if (sgn(row.v[i]) != 0) v[i] -= c * row.v[i];
        }
        make_primitive(v);
    }
    return v;
}

bool Subspace::add(const QVector& v) {
    if (static_cast<int>(v.size()) != dim_) throw Error("subspace dimension mismatch");
    auto r = eliminate(to_integer_row(v));
    int piv = first_nonzero(r);
    if (piv < 0) return false;
    make_primitive(r);
    Row row{piv, std::move(r)};
    auto pos = std::lower_bound(rows_.begin(), rows_.end(), piv, [](const Row& x, int p) { return x.pivot < p; });
    rows_.insert(pos, std::move(row));
    return true;
}

bool Subspace::contains(const QVector& v) const {
    if (static_cast<int>(v.size()) != dim_) throw Error("subspace dimension mismatch");
    return first_nonzero(eliminate(to_integer_row(v))) < 0;
}

std::vector<Integer> Subspace::reduce(const QVector& v) const {
    auto r = eliminate(to_integer_row(v));
    make_primitive(r);
    return r;
}

bool Subspace::contains_all(const Subspace& other) const {
    for (const auto& b : other.basis())
        if (!contains(b)) return false;
    return true;
}

std::vector<QVector> Subspace::basis() const {
    std::vector<QVector> out;
    for (const auto& row : rows_) {
        QVector q(row.v.size());
        for (std::size_t i = 0; i < q.size(); ++i) q[i] = Rational(row.v[i]);
        out.push_back(std::move(q));
    }
    return out;
}

std::vector<QVector> kernel_basis(const std::vector<QVector>& columns, int target_dim) {
    const int n = static_cast<int>(columns.size());
    // rows of M: M[r][j] = columns[j][r]
    std::vector<std::vector<Integer>> rows;
    rows.reserve(static_cast<std::size_t>(target_dim));
    for (int r = 0; r < target_dim; ++r) {
        QVector row(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) {
            if (static_cast<int>(columns[static_cast<std::size_t>(j)].size()) != target_dim)
                throw Error("kernel_basis: column dimension mismatch");
            row[static_cast<std::size_t>(j)] = columns[static_cast<std::size_t>(j)][static_cast<std::size_t>(r)];
        }
        rows.push_back(to_integer_row(row));
    }
    // fraction-free reduced echelon form
    std::vector<int> pivots;
    int lead_row = 0;
    for (int col = 0; col < n && lead_row < target_dim; ++col) {
        int sel = -1;
        for (int r = lead_row; r < target_dim; ++r)
            if (sgn(rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)]) != 0) {
                sel = r;
                break;
            }
        if (sel < 0) continue;
        std::swap(rows[static_cast<std::size_t>(sel)], rows[static_cast<std::size_t>(lead_row)]);
        auto& prow = rows[static_cast<std::size_t>(lead_row)];
        make_primitive(prow);
        for (int r = 0; r < target_dim; ++r) {
            if (r == lead_row) continue;
            auto& row = rows[static_cast<std::size_t>(r)];
            if (sgn(row[static_cast<std::size_t>(col)]) == 0) continue;
            Integer a = row[static_cast<std::size_t>(col)];
            Integer p = prow[static_cast<std::size_t>(col)];
            for (int j = 0; j < n; ++j) {
                row[static_cast<std::size_t>(j)] *= p;
                if (sgn(prow[static_cast<std::size_t>(j)]) != 0)
                    row[static_cast<std::size_t>(j)] -= a * prow[static_cast<std::size_t>(j)];
            }
            make_primitive(row);
        }
        pivots.push_back(col);
        ++lead_row;
    }
    std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
    for (int c : pivots) is_pivot[static_cast<std::size_t>(c)] = true;
    std::vector<QVector> basis;
    for (int f = 0; f < n; ++f) {
        if (is_pivot[static_cast<std::size_t>(f)]) continue;
        QVector x(static_cast<std::size_t>(n));
        x[static_cast<std::size_t>(f)] = 1;
        for (std::size_t k = 0; k < pivots.size(); ++k) {
            const auto& row = rows[k];
            int p = pivots[k];
            if (sgn(row[static_cast<std::size_t>(f)]) == 0) continue;
            Rational val(row[static_cast<std::size_t>(f)], row[static_cast<std::size_t>(p)]);
            val.canonicalize();
            x[static_cast<std::size_t>(p)] = -val;
        }
        basis.push_back(std::move(x));
    }
    return basis;
}

int rank_of(const std::vector<QVector>& vectors, int dim) {
    Subspace s(dim);
    for (const auto& v : vectors) s.add(v);
    return s.rank();
}

QVector primitive(const QVector& v) {
    auto r = to_integer_row(v);
    make_primitive(r);
    QVector out(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) out[i] = Rational(r[i]);
    return out;
}

bool is_zero_vector(const QVector& v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return sgn(x) == 0; });
}

}  // namespace kdvres
