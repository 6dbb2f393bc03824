#pragma once

#include <string>
#include <vector>

namespace kdvres {

/// Assigns each generator id an integer grade and a printable label.
///
/// The families used by the engine:
///   - DiffU:  id k  <-> u^(k),        grade k + 2
///   - DOp:    id i  <-> d_i (i odd),  grade i
///   - J:      id 2k <-> J_{2k},       grade 2k
///   - BarS:   id 2k <-> bar-S_{2k},   grade 2k
///   - Times:  id i  <-> t_i (i odd),  grade i
///   - Weighted: explicit grade table, labels x0, x1, ...
class Catalog {
public:
    enum class Family { DiffU, DOp, J, BarS, Times, Weighted };

    static Catalog diff_u() { return Catalog(Family::DiffU); }
    static Catalog d_ops() { return Catalog(Family::DOp); }
    static Catalog j_vars() { return Catalog(Family::J); }
    static Catalog bar_s() { return Catalog(Family::BarS); }
    static Catalog times() { return Catalog(Family::Times); }
    static Catalog weighted(std::vector<int> grades);

    Family family() const { return family_; }
    std::string name() const;

    int grade(int id) const;
    bool valid_id(int id) const;

    /// Unicode label used in reports, e.g. "u''", "∂₃", "J₄", "S₄".
    std::string label(int id) const;

    bool operator==(const Catalog& other) const = default;

private:
    explicit Catalog(Family f) : family_(f) {}

    Family family_;
    std::vector<int> weights_;
};

/// "₁₂" etc.
std::string subscript(int n);

}  // namespace kdvres
