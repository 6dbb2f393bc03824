#pragma once

#include "kdvres/core/graded_poly.hpp"
#include "kdvres/fock/fermion.hpp"

#include <vector>

namespace kdvres::fock {

/// Polynomial in J_2, J_4, ... (catalog j_vars).
using JPoly = GradedPoly;
/// Polynomial in bar-S_2, bar-S_4, ... (catalog bar_s).
using BarSPoly = GradedPoly;

/// bar-S_0 ... bar-S_{order} from exp(-sum J_{2k} z^{-2k} / k); entry k is bar-S_{2k}.
std::vector<JPoly> barS_series(int order);

enum class Direction { JToBarS, BarSToJ };

GradedPoly j_barS_convert(const GradedPoly& p, Direction direction);

/// bar-omega_{i,j}: coefficient of z^{-i-1} w^{-j-1} in
/// (bar-S(w)/bar-S(z) - 1)/(z^2 - w^2), |z| > |w|. Equal to <-1|psi_i psi*_{-j} T|-1>.
JPoly two_point(int i, int j, int order);
BarSPoly two_point_barS(int i, int j);

/// <-1| word T |-1> by Wick's theorem: (-1)^{k(k-1)/2} det G(p_a, -h_b).
JPoly t_matrix_element(const FockWordDual& w);
BarSPoly t_matrix_element_barS(const FockWordDual& w);
/// Same for a bra state (includes the state-to-word sign).
BarSPoly t_matrix_element_barS(const BraState& s);

/// Brute force: expand T = exp(-sum J_{2k} h_{-2k} / k) to J-degree jorder and pair with |-1>.
JPoly t_matrix_element_oracle(const FockWordDual& w, int jorder);

/// <S| h_{-2k} with h_{-2k} = sum_n psi_n psi*_{n+2k}.
StateVector<GradedPoly> apply_h(const StateVector<GradedPoly>& v, int k);

GradedPoly determinant(const std::vector<std::vector<GradedPoly>>& m, const GradedPoly& one);

}  // namespace kdvres::fock
