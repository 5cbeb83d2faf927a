#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ssdlab/dense.hpp"
#include "ssdlab/kernels.hpp"
#include "ssdlab/ss_matrix.hpp"

namespace ssd {

/// T x d sequence; row t is the token x_t (or output y_t).
using SequenceData = Matrix;

/// Time-varying diagonal state-space model
///
///     h_t = diag(A_t) h_{t-1} + b_t x_t,   y_t = c_t^T h_t,   h_0 = 0.
///
/// `gains(t, n)` is the n-th diagonal entry of A^t. Row 0 of the gains is
/// stored but never read by any kernel entry; generated models keep it at 1.
class DiagonalSsm {
public:
    /// Throws invalid-argument for T == 0 or N == 0 and shape-mismatch when
    /// the three arrays differ in shape.
    DiagonalSsm(Matrix gains, Matrix in_weights, Matrix out_weights);

    std::size_t steps() const noexcept { return gains_.rows(); }
    std::size_t state_dim() const noexcept { return gains_.cols(); }

    const Matrix& gains() const noexcept { return gains_; }
    const Matrix& in_weights() const noexcept { return in_; }
    const Matrix& out_weights() const noexcept { return out_; }

    kernels::DiagonalParams<double> params() const { return {gains_, in_, out_}; }

private:
    Matrix gains_;
    Matrix in_;
    Matrix out_;
};

/// Throws shape-mismatch unless X is T x d with T == ssm.steps() and d >= 1.
void check_sequence(const DiagonalSsm& ssm, const SequenceData& x);

/// O(TNd) left-to-right scan of the recurrence.
SequenceData forward_recurrence(const DiagonalSsm& ssm, const SequenceData& x);

/// T x T kernel: M(t, s) = c_t^T A^t ... A^{s+1} b_s for t >= s.
LowerTriangularMatrix materialize_kernel(const DiagonalSsm& ssm);

/// Y = M X through the materialized kernel, O(T^2 (N + d)).
SequenceData forward_materialized(const DiagonalSsm& ssm, const SequenceData& x);

/// Row-scaling primitive f(x, Y).
Matrix scale_rows(const std::vector<double>& x, const Matrix& y);

/// Weighted prefix scan g(x, Y); x[0] is never read.
Matrix scan(const std::vector<double>& x, const Matrix& y);

struct SsdOptions {
    kernels::SsdSchedule schedule = kernels::SsdSchedule::staged;
    /// Worker threads for the N*d independent pipelines; 0 or 1 runs inline.
    std::size_t workers = 1;
};

/// Diagonal SSD, Theta(NTd) work. Bitwise equal to forward_recurrence for
/// any schedule and worker count.
SequenceData forward_ssd(const DiagonalSsm& ssm, const SequenceData& x, SsdOptions options = {});

/// Sampling ranges for random instances. Gains are drawn with magnitude
/// uniform in [gain_min_abs, gain_max_abs] and, if `signed_gains`, a random
/// sign. Weights and inputs are uniform in [-1, 1].
struct InstanceSpec {
    std::size_t steps = 16;
    std::size_t state_dim = 4;
    std::size_t channels = 1;
    double gain_min_abs = 0.0;
    double gain_max_abs = 1.0;
    bool signed_gains = true;
    /// All N gains equal within each step (A^t = a_t I).
    bool scalar_identity = false;
};

/// Deterministic (per platform) random model; row 0 of the gains is all ones.
DiagonalSsm random_diagonal_ssm(std::uint64_t seed, const InstanceSpec& spec);

/// Deterministic random T x d sequence with entries uniform in [-1, 1].
SequenceData random_sequence(std::uint64_t seed, std::size_t steps, std::size_t channels);

}  // namespace ssd
