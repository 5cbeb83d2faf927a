#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ssdlab/dense.hpp"
#include "ssdlab/ss_matrix.hpp"
#include "ssdlab/ssm.hpp"

namespace ssd {

/// One mode of a diagonal SSM: 1SS(gains) ⊙ (out_weights * in_weights^T).
struct RankOneMaskedTerm {
    std::size_t mode = 0;
    std::vector<double> gains;        ///< a^n
    std::vector<double> out_weights;  ///< c^n, row (query) side
    std::vector<double> in_weights;   ///< b^n, column (key) side
};

/// Masked attention L ⊙ (Q K^T) with L = 1SS(mask).
struct MaskedAttentionFactors {
    std::vector<double> mask;
    Matrix queries;  ///< T x N
    Matrix keys;     ///< T x N

    std::size_t steps() const noexcept { return mask.size(); }
};

/// Throws shape-mismatch unless mask, Q and K agree on T and Q, K on N.
void check_factors(const MaskedAttentionFactors& f);

/// one_ss(mask) ⊙ (Q K^T).
LowerTriangularMatrix materialize_factors(const MaskedAttentionFactors& f);

/// Dual of a scalar-identity model: mask = shared gains, Q = C, K = B.
/// Throws not-scalar-identity if the N gains of any step t >= 2 differ.
MaskedAttentionFactors scalar_identity_dual(const DiagonalSsm& ssm);

/// The N rank-one masked terms whose sum is the kernel.
std::vector<RankOneMaskedTerm> attention_like_decomposition(const DiagonalSsm& ssm);

LowerTriangularMatrix materialize_term(const RankOneMaskedTerm& term);

/// Largest allowed max/min ratio of the cumulative gain products of one mode.
inline constexpr double max_scaling_ratio = 1e12;

/// 1-SS dual with an all-ones mask for models whose gains a_t (t >= 2) are
/// all nonzero: with P_t = a_2 ... a_t, Q(t, n) = c_t,n P_t and
/// K(s, n) = b_s,n / P_s.
///
/// Throws zero-gain if some gain is zero and unstable-scaling if the
/// cumulative products of a mode span more than `max_scaling_ratio`.
MaskedAttentionFactors full_rank_one_ss_dual(const DiagonalSsm& ssm);

/// Y = (1SS(mask) ⊙ Q K^T) X.
SequenceData masked_attention_forward(const MaskedAttentionFactors& f, const SequenceData& x);

/// New-column tally of one diagonal block.
struct BlockNewColumns {
    BlockInterval block;
    /// Block-local 0-based indices of the new columns.
    std::vector<std::size_t> new_columns;
    /// Block-local columns whose verdict was within 10x of the threshold.
    std::vector<std::size_t> borderline;

    std::size_t count() const noexcept { return new_columns.size(); }
};

std::vector<BlockNewColumns> count_block_new_columns(const LowerTriangularMatrix& m,
                                                     double eps = linalg::default_eps);

/// Outcome of the representability test for a given state width.
struct RepresentabilityReport {
    std::size_t state_dim = 0;
    std::vector<BlockNewColumns> blocks;
    bool representable = false;
    std::vector<std::string> warnings;
};

RepresentabilityReport check_one_ss_dual(const LowerTriangularMatrix& m, std::size_t state_dim,
                                         double eps = linalg::default_eps);

/// True iff every diagonal block has at most `state_dim` new columns.
bool has_one_ss_dual(const LowerTriangularMatrix& m, std::size_t state_dim,
                     double eps = linalg::default_eps);

/// Builds mask, Q, K with 1SS(mask) ⊙ (Q K^T) = M. The mask is 0 at each
/// block start and 1 elsewhere; Q and K have exactly `state_dim` columns.
///
/// Throws not-representable when has_one_ss_dual is false and
/// reconstruction-failure when the result misses M by more than
/// eps * ||M||_F.
MaskedAttentionFactors construct_one_ss_dual(const LowerTriangularMatrix& m, std::size_t state_dim,
                                             double eps = linalg::default_eps);

}  // namespace ssd
