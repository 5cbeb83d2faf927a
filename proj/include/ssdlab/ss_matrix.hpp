#pragma once

#include <cstddef>
#include <vector>

#include "ssdlab/dense.hpp"
#include "ssdlab/linalg.hpp"

namespace ssd {

/// Dense T x T causal matrix. Strictly-upper entries are identically zero.
///
/// Indices are 0-based: entry (t, s) couples output step t to input step s.
class LowerTriangularMatrix {
public:
    /// Zero matrix of order `size` (size >= 1).
    explicit LowerTriangularMatrix(std::size_t size);

    /// Throws shape-mismatch if `dense` is not square or empty, and
    /// invalid-argument if any strictly-upper entry is nonzero.
    static LowerTriangularMatrix from_dense(Matrix dense);

    std::size_t size() const noexcept { return m_.rows(); }

    double operator()(std::size_t t, std::size_t s) const { return m_(t, s); }

    /// Writes entry (t, s); throws invalid-argument for s > t.
    void set(std::size_t t, std::size_t s, double value);

    const Matrix& dense() const noexcept { return m_; }

    friend bool operator==(const LowerTriangularMatrix&, const LowerTriangularMatrix&) = default;

private:
    explicit LowerTriangularMatrix(Matrix m) : m_(std::move(m)) {}

    Matrix m_;
};

LowerTriangularMatrix identity_matrix(std::size_t size);

/// Gain vector (a_1, ..., a_T). a_1 is carried but never enters a 1SS entry.
struct MaskVector {
    std::vector<double> a;

    std::size_t size() const noexcept { return a.size(); }
};

/// The 1SS operator: entry (t, s) = a_t * a_{t-1} * ... * a_{s+1} for t >= s.
LowerTriangularMatrix one_ss(const MaskVector& mask);

/// Maximum numerical rank over the maximal on-or-below-diagonal blocks
/// M[t:, :t+1]. Every on-or-below-diagonal submatrix with row set R and column
/// set C has max(C) <= min(R) and therefore sits inside the block for
/// t = min(R), so the maximum over these T blocks is the semiseparable rank.
std::size_t semiseparable_rank(const LowerTriangularMatrix& m, double eps = linalg::default_eps);

/// Brute-force semiseparable rank over every (row set, column set) pair with
/// max(columns) <= min(rows). Test oracle only; throws size-exceeded for T > 12.
std::size_t submatrix_rank_oracle(const LowerTriangularMatrix& m, double eps = linalg::default_eps);

inline constexpr std::size_t oracle_max_size = 12;

/// Per-column verdict of the new-column test.
struct ColumnNewness {
    std::size_t column = 0;
    double residual = 0.0;   ///< distance of M[t:, t] from span(M[t:, :t])
    double threshold = 0.0;  ///< eps * ||M[t:, t]||
    bool is_new = false;
    /// Residual within a factor 10 of the threshold (either side).
    bool borderline = false;
};

/// Runs the new-column test on every column, in order.
std::vector<ColumnNewness> analyze_new_columns(const LowerTriangularMatrix& m,
                                               double eps = linalg::default_eps);

/// Sorted 0-based indices t for which M[t:, t] is not in the column space of
/// M[t:, :t]. A nonzero column with nothing to its left is new.
std::vector<std::size_t> new_columns(const LowerTriangularMatrix& m, double eps = linalg::default_eps);

/// Half-open range [begin, end) of consecutive indices.
struct BlockInterval {
    std::size_t begin = 0;
    std::size_t end = 0;

    std::size_t size() const noexcept { return end - begin; }
    friend bool operator==(const BlockInterval&, const BlockInterval&) = default;
};

/// Finest split into diagonal blocks holding every nonzero entry.
struct BlockPartition {
    /// Row index at which a new block starts, excluding 0. A cut at t means
    /// every entry of M[t:, :t] is at most eps * max|M|.
    std::vector<std::size_t> cuts;
    std::vector<BlockInterval> blocks;
};

BlockPartition diagonal_block_partition(const LowerTriangularMatrix& m,
                                        double eps = linalg::default_eps);

/// True iff a_2, ..., a_T are all nonzero (a_1 never enters the mask).
bool is_fine_mask(const MaskVector& mask);

/// Copy of rows/columns [block.begin, block.end) as a standalone matrix.
LowerTriangularMatrix diagonal_block(const LowerTriangularMatrix& m, BlockInterval block);

}  // namespace ssd
