#include "ssdlab/ss_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace ssd {

LowerTriangularMatrix::LowerTriangularMatrix(std::size_t size) : m_(size, size)
{
    if (size == 0) {
        throw Error(Errc::invalid_argument, "matrix order must be positive");
    }
}

LowerTriangularMatrix LowerTriangularMatrix::from_dense(Matrix dense)
{
    if (dense.rows() == 0 || dense.rows() != dense.cols()) {
        throw Error(Errc::shape_mismatch, "lower-triangular matrix must be square and non-empty");
    }
    for (std::size_t t = 0; t < dense.rows(); ++t) {
        for (std::size_t s = t + 1; s < dense.cols(); ++s) {
            if (dense(t, s) != 0.0) {
                throw Error(Errc::invalid_argument, "nonzero entry above the diagonal");
            }
        }
    }
    return LowerTriangularMatrix(std::move(dense));
}

void LowerTriangularMatrix::set(std::size_t t, std::size_t s, double value)
{
    if (s > t) {
        throw Error(Errc::invalid_argument, "cannot write above the diagonal");
    }
    m_(t, s) = value;
}

LowerTriangularMatrix identity_matrix(std::size_t size)
{
    LowerTriangularMatrix m(size);
    for (std::size_t t = 0; t < size; ++t) {
        m.set(t, t, 1.0);
    }
    return m;
}

LowerTriangularMatrix one_ss(const MaskVector& mask)
{
    const std::size_t T = mask.size();
    LowerTriangularMatrix m(T);
    for (std::size_t s = 0; s < T; ++s) {
        double running = 1.0;
        m.set(s, s, 1.0);
        for (std::size_t t = s + 1; t < T; ++t) {
            running *= mask.a[t];
            m.set(t, s, running);
        }
    }
    return m;
}

namespace {

Eigen::MatrixXd lower_left_block(const LowerTriangularMatrix& m, std::size_t row0,
                                 std::size_t col_end)
{
    const std::size_t T = m.size();
    Eigen::MatrixXd block(T - row0, col_end);
    for (std::size_t r = row0; r < T; ++r) {
        for (std::size_t c = 0; c < col_end; ++c) {
            block(r - row0, c) = m(r, c);
        }
    }
    return block;
}

}  // namespace

std::size_t semiseparable_rank(const LowerTriangularMatrix& m, double eps)
{
    std::size_t rank = 0;
    for (std::size_t t = 0; t < m.size(); ++t) {
        rank = std::max(rank, linalg::numerical_rank(lower_left_block(m, t, t + 1), eps));
    }
    return rank;
}

std::size_t submatrix_rank_oracle(const LowerTriangularMatrix& m, double eps)
{
    const std::size_t T = m.size();
    if (T > oracle_max_size) {
        throw Error(Errc::size_exceeded, "brute-force rank oracle supports T <= 12");
    }
    std::vector<std::size_t> rows;
    std::vector<std::size_t> cols;
    std::size_t best = 0;
    const std::uint32_t all = (1u << T) - 1u;
    for (std::uint32_t col_set = 1; col_set <= all; ++col_set) {
        cols.clear();
        for (std::size_t c = 0; c < T; ++c) {
            if (col_set & (1u << c)) {
                cols.push_back(c);
            }
        }
        // Rows must all lie at or below the last chosen column.
        const std::size_t min_row = cols.back();
        for (std::uint32_t row_set = 1; row_set <= all; ++row_set) {
            if ((row_set & ((1u << min_row) - 1u)) != 0u) {
                continue;
            }
            rows.clear();
            for (std::size_t r = min_row; r < T; ++r) {
                if (row_set & (1u << r)) {
                    rows.push_back(r);
                }
            }
            if (std::min(rows.size(), cols.size()) <= best) {
                continue;
            }
            Eigen::MatrixXd sub(rows.size(), cols.size());
            for (std::size_t i = 0; i < rows.size(); ++i) {
                for (std::size_t j = 0; j < cols.size(); ++j) {
                    sub(i, j) = m(rows[i], cols[j]);
                }
            }
            best = std::max(best, linalg::numerical_rank(sub, eps));
        }
    }
    return best;
}

std::vector<ColumnNewness> analyze_new_columns(const LowerTriangularMatrix& m, double eps)
{
    const std::size_t T = m.size();
    std::vector<ColumnNewness> out;
    out.reserve(T);
    for (std::size_t t = 0; t < T; ++t) {
        const Eigen::MatrixXd left = lower_left_block(m, t, t);
        Eigen::VectorXd column(T - t);
        for (std::size_t r = t; r < T; ++r) {
            column(r - t) = m(r, t);
        }
        ColumnNewness verdict;
        verdict.column = t;
        verdict.residual = linalg::span_residual(left, column, eps);
        verdict.threshold = eps * column.norm();
        verdict.is_new = verdict.residual > verdict.threshold;
        verdict.borderline = verdict.threshold > 0.0 && verdict.residual > 0.1 * verdict.threshold &&
                             verdict.residual < 10.0 * verdict.threshold;
        out.push_back(verdict);
    }
    return out;
}

std::vector<std::size_t> new_columns(const LowerTriangularMatrix& m, double eps)
{
    std::vector<std::size_t> out;
    for (const ColumnNewness& c : analyze_new_columns(m, eps)) {
        if (c.is_new) {
            out.push_back(c.column);
        }
    }
    return out;
}

BlockPartition diagonal_block_partition(const LowerTriangularMatrix& m, double eps)
{
    const std::size_t T = m.size();
    double scale = 0.0;
    for (double v : m.dense().values()) {
        scale = std::max(scale, std::abs(v));
    }
    const double tol = eps * scale;

    // below[c] = max_{r >= t} |M(r, c)|, swept upward from the last row.
    // lower_left[t] = max over M[t:, :t].
    std::vector<double> below(T, 0.0);
    std::vector<double> lower_left(T, 0.0);
    for (std::size_t t = T; t-- > 1;) {
        for (std::size_t c = 0; c < t; ++c) {
            below[c] = std::max(below[c], std::abs(m(t, c)));
        }
        double peak = 0.0;
        for (std::size_t c = 0; c < t; ++c) {
            peak = std::max(peak, below[c]);
        }
        lower_left[t] = peak;
    }

    BlockPartition out;
    std::size_t start = 0;
    for (std::size_t t = 1; t < T; ++t) {
        if (lower_left[t] <= tol) {
            out.cuts.push_back(t);
            out.blocks.push_back({start, t});
            start = t;
        }
    }
    out.blocks.push_back({start, T});
    return out;
}

bool is_fine_mask(const MaskVector& mask)
{
    return std::all_of(mask.a.begin() + std::min<std::size_t>(1, mask.a.size()), mask.a.end(),
                       [](double v) { return v != 0.0; });
}

LowerTriangularMatrix diagonal_block(const LowerTriangularMatrix& m, BlockInterval block)
{
    if (block.begin >= block.end || block.end > m.size()) {
        throw Error(Errc::invalid_argument, "block interval out of range");
    }
    LowerTriangularMatrix out(block.size());
    for (std::size_t t = block.begin; t < block.end; ++t) {
        for (std::size_t s = block.begin; s <= t; ++s) {
            out.set(t - block.begin, s - block.begin, m(t, s));
        }
    }
    return out;
}

}  // namespace ssd
