#include "kdvres/core/catalog.hpp"

#include "kdvres/core/errors.hpp"

namespace kdvres {

std::string subscript(int n) {
    static const char* digits[] = {"₀", "₁", "₂", "₃", "₄", "₅", "₆", "₇", "₈", "₉"};
    std::string s = n < 0 ? "₋" : "";
    for (char ch : std::to_string(n < 0 ? -n : n)) s += digits[ch - '0'];
    return s;
}

Catalog Catalog::weighted(std::vector<int> grades) {
    Catalog c(Family::Weighted);
    c.weights_ = std::move(grades);
    return c;
}

std::string Catalog::name() const {
    switch (family_) {
        case Family::DiffU: return "A";
        case Family::DOp: return "D";
        case Family::J: return "J";
        case Family::BarS: return "barS";
        case Family::Times: return "t";
        case Family::Weighted: return "weighted";
    }
    return "?";
}

bool Catalog::valid_id(int id) const {
    switch (family_) {
        case Family::DiffU: return id >= 0;
        case Family::DOp:
        case Family::Times: return id >= 1 && id % 2 == 1;
        case Family::J:
        case Family::BarS: return id >= 2 && id % 2 == 0;
        case Family::Weighted: return id >= 0 && id < static_cast<int>(weights_.size());
    }
    return false;
}

int Catalog::grade(int id) const {
    if (!valid_id(id)) throw Error("generator id " + std::to_string(id) + " not in catalog " + name());
    switch (family_) {
        case Family::DiffU: return id + 2;
        case Family::Weighted: return weights_[static_cast<std::size_t>(id)];
        default: return id;
    }
}

std::string Catalog::label(int id) const {
    switch (family_) {
        case Family::DiffU:
            if (id <= 3) return "u" + std::string(static_cast<std::size_t>(id), '\'');
            return "u^(" + std::to_string(id) + ")";
        case Family::DOp: return "∂" + subscript(id);
        case Family::J: return "J" + subscript(id);
        case Family::BarS: return "S" + subscript(id);
        case Family::Times: return "t" + subscript(id);
        case Family::Weighted: return "x" + std::to_string(id);
    }
    return "?";
}

}  // namespace kdvres
