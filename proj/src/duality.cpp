#include "ssdlab/duality.hpp"

#include <algorithm>
#include <cmath>

namespace ssd {

void check_factors(const MaskedAttentionFactors& f)
{
    const std::size_t T = f.mask.size();
    if (T == 0 || f.queries.rows() != T || f.keys.rows() != T ||
        f.queries.cols() != f.keys.cols() || f.queries.cols() == 0) {
        throw Error(Errc::shape_mismatch, "mask, Q and K must share T and Q, K must share N >= 1");
    }
}

LowerTriangularMatrix materialize_factors(const MaskedAttentionFactors& f)
{
    check_factors(f);
    const std::size_t T = f.steps();
    const std::size_t N = f.queries.cols();
    LowerTriangularMatrix out = one_ss(MaskVector{f.mask});
    for (std::size_t t = 0; t < T; ++t) {
        for (std::size_t s = 0; s <= t; ++s) {
            double score = 0.0;
            for (std::size_t n = 0; n < N; ++n) {
                score += f.queries(t, n) * f.keys(s, n);
            }
            out.set(t, s, out(t, s) * score);
        }
    }
    return out;
}

MaskedAttentionFactors scalar_identity_dual(const DiagonalSsm& ssm)
{
    const std::size_t T = ssm.steps();
    const std::size_t N = ssm.state_dim();
    MaskedAttentionFactors f;
    f.mask.resize(T);
    for (std::size_t t = 0; t < T; ++t) {
        const double shared = ssm.gains()(t, 0);
        for (std::size_t n = 1; n < N && t > 0; ++n) {
            if (ssm.gains()(t, n) != shared) {
                throw Error(Errc::not_scalar_identity,
                            "gains differ within step " + std::to_string(t + 1));
            }
        }
        f.mask[t] = shared;
    }
    f.queries = ssm.out_weights();
    f.keys = ssm.in_weights();
    return f;
}

std::vector<RankOneMaskedTerm> attention_like_decomposition(const DiagonalSsm& ssm)
{
    const std::size_t T = ssm.steps();
    std::vector<RankOneMaskedTerm> terms(ssm.state_dim());
    for (std::size_t n = 0; n < terms.size(); ++n) {
        RankOneMaskedTerm& term = terms[n];
        term.mode = n;
        term.gains.resize(T);
        term.out_weights.resize(T);
        term.in_weights.resize(T);
        for (std::size_t t = 0; t < T; ++t) {
            term.gains[t] = ssm.gains()(t, n);
            term.out_weights[t] = ssm.out_weights()(t, n);
            term.in_weights[t] = ssm.in_weights()(t, n);
        }
    }
    return terms;
}

LowerTriangularMatrix materialize_term(const RankOneMaskedTerm& term)
{
    const std::size_t T = term.gains.size();
    if (T == 0 || term.out_weights.size() != T || term.in_weights.size() != T) {
        throw Error(Errc::shape_mismatch, "term vectors must share a positive length");
    }
    LowerTriangularMatrix out = one_ss(MaskVector{term.gains});
    for (std::size_t t = 0; t < T; ++t) {
        for (std::size_t s = 0; s <= t; ++s) {
            out.set(t, s, out(t, s) * term.out_weights[t] * term.in_weights[s]);
        }
    }
    return out;
}

MaskedAttentionFactors full_rank_one_ss_dual(const DiagonalSsm& ssm)
{
    const std::size_t T = ssm.steps();
    const std::size_t N = ssm.state_dim();
    Matrix cumulative(T, N, 1.0);
    for (std::size_t n = 0; n < N; ++n) {
        double lo = 1.0;
        double hi = 1.0;
        for (std::size_t t = 1; t < T; ++t) {
            const double a = ssm.gains()(t, n);
            if (a == 0.0) {
                throw Error(Errc::zero_gain, "gain of mode " + std::to_string(n + 1) +
                                                 " at step " + std::to_string(t + 1) +
                                                 " is zero");
            }
            cumulative(t, n) = cumulative(t - 1, n) * a;
            const double mag = std::abs(cumulative(t, n));
            lo = std::min(lo, mag);
            hi = std::max(hi, mag);
        }
        if (!(hi <= max_scaling_ratio * lo)) {
            throw Error(Errc::unstable_scaling, "cumulative gains of mode " + std::to_string(n + 1) +
                                                    " span a ratio above 1e12");
        }
    }

    MaskedAttentionFactors f;
    f.mask.assign(T, 1.0);
    f.queries = Matrix(T, N);
    f.keys = Matrix(T, N);
    for (std::size_t t = 0; t < T; ++t) {
        for (std::size_t n = 0; n < N; ++n) {
            f.queries(t, n) = ssm.out_weights()(t, n) * cumulative(t, n);
            f.keys(t, n) = ssm.in_weights()(t, n) / cumulative(t, n);
        }
    }
    return f;
}

SequenceData masked_attention_forward(const MaskedAttentionFactors& f, const SequenceData& x)
{
    check_factors(f);
    if (x.rows() != f.steps() || x.cols() == 0) {
        throw Error(Errc::shape_mismatch, "sequence rows must match the mask length");
    }
    return kernels::lower_matmul(materialize_factors(f).dense(), x);
}

std::vector<BlockNewColumns> count_block_new_columns(const LowerTriangularMatrix& m, double eps)
{
    std::vector<BlockNewColumns> out;
    for (const BlockInterval& block : diagonal_block_partition(m, eps).blocks) {
        BlockNewColumns tally;
        tally.block = block;
        for (const ColumnNewness& c : analyze_new_columns(diagonal_block(m, block), eps)) {
            if (c.is_new) {
                tally.new_columns.push_back(c.column);
            }
            if (c.borderline) {
                tally.borderline.push_back(c.column);
            }
        }
        out.push_back(std::move(tally));
    }
    return out;
}

RepresentabilityReport check_one_ss_dual(const LowerTriangularMatrix& m, std::size_t state_dim,
                                         double eps)
{
    if (state_dim == 0) {
        throw Error(Errc::invalid_argument, "state dimension must be at least 1");
    }
    RepresentabilityReport report;
    report.state_dim = state_dim;
    report.blocks = count_block_new_columns(m, eps);
    report.representable = std::all_of(report.blocks.begin(), report.blocks.end(),
                                       [&](const BlockNewColumns& b) { return b.count() <= state_dim; });
    for (const BlockNewColumns& b : report.blocks) {
        for (std::size_t local : b.borderline) {
            report.warnings.push_back("column " + std::to_string(b.block.begin + local + 1) +
                                      " is within 10x of the new-column threshold");
        }
    }
    return report;
}

bool has_one_ss_dual(const LowerTriangularMatrix& m, std::size_t state_dim, double eps)
{
    return check_one_ss_dual(m, state_dim, eps).representable;
}

namespace {

/// Completes the strictly-upper part of one block so that every non-new
/// column is the same combination of earlier completed columns as its lower
/// part is of theirs. The completed block has rank <= #new columns.
Eigen::MatrixXd complete_block(const LowerTriangularMatrix& block, double eps)
{
    const auto m = static_cast<Eigen::Index>(block.size());
    Eigen::MatrixXd full = linalg::to_eigen(block.dense());
    for (Eigen::Index t = 1; t < m; ++t) {
        const Eigen::MatrixXd left = full.bottomLeftCorner(m - t, t);
        const Eigen::VectorXd column = full.col(t).tail(m - t);
        const double residual = linalg::span_residual(left, column, eps);
        if (residual > eps * column.norm()) {
            continue;  // new column: upper part stays zero
        }
        const Eigen::VectorXd gamma = linalg::least_squares(left, column, eps);
        full.col(t).head(t) = full.topLeftCorner(t, t) * gamma;
    }
    return full;
}

}  // namespace

MaskedAttentionFactors construct_one_ss_dual(const LowerTriangularMatrix& m, std::size_t state_dim,
                                             double eps)
{
    const RepresentabilityReport report = check_one_ss_dual(m, state_dim, eps);
    if (!report.representable) {
        throw Error(Errc::not_representable,
                    "some diagonal block has more than " + std::to_string(state_dim) +
                        " new columns");
    }

    const std::size_t T = m.size();
    MaskedAttentionFactors f;
    f.mask.assign(T, 1.0);
    f.queries = Matrix(T, state_dim);
    f.keys = Matrix(T, state_dim);

    for (const BlockNewColumns& tally : report.blocks) {
        const BlockInterval block = tally.block;
        f.mask[block.begin] = 0.0;
        const Eigen::MatrixXd completed = complete_block(diagonal_block(m, block), eps);
        const linalg::Svd svd = linalg::thin_svd(completed);
        const std::size_t rank = std::min(linalg::numerical_rank(svd.s, eps), state_dim);
        for (std::size_t k = 0; k < rank; ++k) {
            const auto ki = static_cast<Eigen::Index>(k);
            const double root = std::sqrt(svd.s(ki));
            for (std::size_t r = 0; r < block.size(); ++r) {
                const auto ri = static_cast<Eigen::Index>(r);
                f.queries(block.begin + r, k) = svd.u(ri, ki) * root;
                f.keys(block.begin + r, k) = svd.v(ri, ki) * root;
            }
        }
    }

    const double miss = frobenius_norm([&] {
        Matrix diff = materialize_factors(f).dense();
        for (std::size_t i = 0; i < diff.size(); ++i) {
            diff.values()[i] -= m.dense().values()[i];
        }
        return diff;
    }());
    if (miss > eps * frobenius_norm(m.dense())) {
        throw Error(Errc::reconstruction_failure,
                    "factors miss the matrix by " + std::to_string(miss) + " in Frobenius norm");
    }
    return f;
}

}  // namespace ssd
