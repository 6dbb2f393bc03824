#pragma once

#include "kdvres/core/rational.hpp"

#include <vector>

namespace kdvres {

using QVector = std::vector<Rational>;

/// Incrementally built subspace of Q^n.
///
/// Rows are stored as primitive integer vectors in echelon form (pivot = first
/// nonzero entry, positive); all updates are fraction-free. Insertion order
/// fixes the basis, so results are reproducible.
class Subspace {
public:
    explicit Subspace(int dim) : dim_(dim) {}

    int dim() const { return dim_; }
    int rank() const { return static_cast<int>(rows_.size()); }

    /// Returns true when v was independent of the current span.
    bool add(const QVector& v);
    bool contains(const QVector& v) const;
    /// Remainder of v after elimination against the basis, as a primitive
    /// integer vector with positive leading entry (zero vector if v is in span).
    std::vector<Integer> reduce(const QVector& v) const;

    bool contains_all(const Subspace& other) const;
    bool equals(const Subspace& other) const { return rank() == other.rank() && contains_all(other); }

    std::vector<QVector> basis() const;

private:
    struct Row {
        int pivot;
        std::vector<Integer> v;
    };
    std::vector<Integer> eliminate(std::vector<Integer> v) const;

    int dim_;
    std::vector<Row> rows_;  // sorted by pivot
};

/// Basis of {x : sum_j x_j columns[j] = 0} in reduced form: one vector per
/// free column (in increasing column order), with a 1 in that column.
std::vector<QVector> kernel_basis(const std::vector<QVector>& columns, int target_dim);

int rank_of(const std::vector<QVector>& vectors, int dim);

/// Scales to a primitive integer vector whose first nonzero entry is positive.
QVector primitive(const QVector& v);

bool is_zero_vector(const QVector& v);

}  // namespace kdvres
