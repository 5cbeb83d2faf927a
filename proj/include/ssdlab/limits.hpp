#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "ssdlab/dense.hpp"
#include "ssdlab/ss_matrix.hpp"

namespace ssd {

struct CounterexampleReport {
    std::string name;
    std::size_t steps = 0;
    std::string claim;
    /// Named measurements in the order they were taken.
    std::vector<std::pair<std::string, double>> measurements;
    /// False when the requested size lies outside the construction's scope.
    bool applicable = true;
    bool verdict = false;

    double measurement(const std::string& key) const;
};

/// V(i, j) = i * j for 1-based i, j.
Matrix outer_product_scores(std::size_t steps);

/// Row-wise softmax, evaluated with the row maximum subtracted.
Matrix row_softmax(const Matrix& scores);

/// log |det softmax(V)| from the Vandermonde structure of exp(i j):
///
///     det = prod_i Z_i^{-1} * prod_j e^j * prod_{i<j} (e^j - e^i),
///
/// with Z_i the row normalisers, evaluated entirely in log space.
double softmax_log_abs_det_closed_form(std::size_t steps);

/// log |det| of a square matrix through partially pivoted LU.
double log_abs_det(const Matrix& m);

inline constexpr std::size_t softmax_max_steps = 8;
inline constexpr std::size_t submatrix_check_max_steps = 5;

/// Rank-one scores whose softmax is nonsingular. Throws size-exceeded
/// unless 2 <= T <= 8.
CounterexampleReport softmax_counterexample(std::size_t steps);

/// I_T + E^{T,1}: identity plus a unit in the bottom-left corner. T >= 3.
LowerTriangularMatrix non_dualizable_matrix(std::size_t steps);

/// Checks that I_T + E^{T,1} has no 1-SS masked attention dual of width
/// `state_dim` while still admitting a 2-dimensional SSS realization.
/// Inapplicable unless T >= state_dim + 2.
CounterexampleReport verify_non_dualizable(std::size_t steps, std::size_t state_dim);

}  // namespace ssd
