#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ssdlab/dense.hpp"
#include "ssdlab/ss_matrix.hpp"

namespace ssd {

/// General state-space (SSS) representation
///
///     M(j, i) = c_j^T A^j A^{j-1} ... A^{i+1} b_i,   j >= i,
///
/// with full N x N transitions. `transitions[0]` is the identity by
/// convention. `ranks[t]` is the rank carried at step t; A^t is nonzero only
/// in its leading ranks[t] x ranks[t-1] block, and b_t, c_t only in their
/// leading ranks[t] entries.
struct GeneralSssRepresentation {
    std::vector<Matrix> transitions;  ///< T matrices, N x N
    Matrix in_weights;                ///< T x N, row t is b_t^T
    Matrix out_weights;               ///< T x N, row t is c_t^T
    std::vector<std::size_t> ranks;   ///< T entries

    std::size_t steps() const noexcept { return transitions.size(); }
    std::size_t state_dim() const noexcept { return in_weights.cols(); }
};

/// Throws shape-mismatch if the arrays disagree on T or N.
void check_representation(const GeneralSssRepresentation& rep);

/// Column-by-column evaluation with running products, O(T^2 N^2).
LowerTriangularMatrix materialize_sss(const GeneralSssRepresentation& rep);

/// Balanced rank factorization of the block M[t:, :t+1] = W U, zero padded
/// to width `state_dim`.
struct RankFactor {
    Matrix w;           ///< (T - t) x N
    Matrix u;           ///< N x (t + 1)
    std::size_t rank = 0;
};

/// Truncated SVD with sqrt(sigma) absorbed on both sides. Throws
/// rank-exceeds-N if the block's numerical rank exceeds `state_dim`.
RankFactor rank_factor_step(const LowerTriangularMatrix& m, std::size_t t, std::size_t state_dim,
                            double eps = linalg::default_eps);

/// Solves W_next * A = W_trunc for the transition A (N x N), keeping only the
/// leading next_rank x cur_rank block. Throws inconsistent-transition when the
/// residual exceeds eps * ||W_trunc||_F.
Matrix solve_transition(const Matrix& w_next, const Matrix& w_trunc, std::size_t next_rank,
                        std::size_t cur_rank, double eps = linalg::default_eps);

/// Relative residual ||A * u_cur - u_next_trunc||_F / ||u_next_trunc||_F of
/// the row-side transition condition.
double row_side_residual(const Matrix& transition, const Matrix& u_cur, const Matrix& u_next_trunc);

/// Constructive N-SSS extraction from an N-semiseparable matrix.
///
/// Throws rank-exceeds-N if some block has rank above `state_dim`,
/// inconsistent-transition if a transition fails either side condition, and
/// reconstruction-failure if the result misses M by more than
/// eps * ||M||_F.
GeneralSssRepresentation extract_sss(const LowerTriangularMatrix& m, std::size_t state_dim,
                                     double eps = linalg::default_eps);

/// Random representation with full rank N at every interior step.
/// Transitions are orthogonal matrices scaled by factors in [0.7, 1.3];
/// weights are uniform in [-1, 1].
GeneralSssRepresentation random_sss_representation(std::uint64_t seed, std::size_t steps,
                                                   std::size_t state_dim);

}  // namespace ssd
