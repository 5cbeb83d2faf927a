#include "ssdlab/ssm.hpp"

#include <random>

namespace ssd {

DiagonalSsm::DiagonalSsm(Matrix gains, Matrix in_weights, Matrix out_weights)
    : gains_(std::move(gains)), in_(std::move(in_weights)), out_(std::move(out_weights))
{
    if (gains_.rows() == 0 || gains_.cols() == 0) {
        throw Error(Errc::invalid_argument, "diagonal SSM needs T >= 1 and N >= 1");
    }
    if (in_.rows() != gains_.rows() || in_.cols() != gains_.cols() ||
        out_.rows() != gains_.rows() || out_.cols() != gains_.cols()) {
        throw Error(Errc::shape_mismatch, "A_diag, b and c must share shape T x N");
    }
}

void check_sequence(const DiagonalSsm& ssm, const SequenceData& x)
{
    if (x.rows() != ssm.steps() || x.cols() == 0) {
        throw Error(Errc::shape_mismatch,
                    "sequence is " + std::to_string(x.rows()) + "x" + std::to_string(x.cols()) +
                        ", model expects " + std::to_string(ssm.steps()) + "xd with d >= 1");
    }
}

SequenceData forward_recurrence(const DiagonalSsm& ssm, const SequenceData& x)
{
    check_sequence(ssm, x);
    return kernels::recurrence(ssm.params(), x);
}

LowerTriangularMatrix materialize_kernel(const DiagonalSsm& ssm)
{
    return LowerTriangularMatrix::from_dense(kernels::kernel_matrix(ssm.params()));
}

SequenceData forward_materialized(const DiagonalSsm& ssm, const SequenceData& x)
{
    check_sequence(ssm, x);
    return kernels::lower_matmul(kernels::kernel_matrix(ssm.params()), x);
}

namespace {

void check_length(const std::vector<double>& x, const Matrix& y)
{
    if (x.size() != y.rows()) {
        throw Error(Errc::shape_mismatch, "vector length " + std::to_string(x.size()) +
                                              " does not match " + std::to_string(y.rows()) +
                                              " rows");
    }
}

}  // namespace

Matrix scale_rows(const std::vector<double>& x, const Matrix& y)
{
    check_length(x, y);
    Matrix out(y.rows(), y.cols());
    for (std::size_t k = 0; k < y.cols(); ++k) {
        kernels::scale_rows(x, y, out, k);
    }
    return out;
}

Matrix scan(const std::vector<double>& x, const Matrix& y)
{
    check_length(x, y);
    Matrix out(y.rows(), y.cols());
    for (std::size_t k = 0; k < y.cols(); ++k) {
        kernels::scan(x, y, out, k);
    }
    return out;
}

SequenceData forward_ssd(const DiagonalSsm& ssm, const SequenceData& x, SsdOptions options)
{
    check_sequence(ssm, x);
    return kernels::ssd(ssm.params(), x, options.schedule, options.workers);
}

DiagonalSsm random_diagonal_ssm(std::uint64_t seed, const InstanceSpec& spec)
{
    if (spec.steps == 0 || spec.state_dim == 0) {
        throw Error(Errc::invalid_argument, "random instance needs T >= 1 and N >= 1");
    }
    if (!(spec.gain_min_abs >= 0.0) || !(spec.gain_max_abs >= spec.gain_min_abs)) {
        throw Error(Errc::invalid_argument, "gain range must satisfy 0 <= min <= max");
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> magnitude(spec.gain_min_abs, spec.gain_max_abs);
    std::uniform_real_distribution<double> weight(-1.0, 1.0);
    std::bernoulli_distribution negative(0.5);

    const std::size_t T = spec.steps;
    const std::size_t N = spec.state_dim;
    auto draw_gain = [&] {
        const double a = magnitude(rng);
        return spec.signed_gains && negative(rng) ? -a : a;
    };

    Matrix gains(T, N, 1.0);
    for (std::size_t t = 1; t < T; ++t) {
        if (spec.scalar_identity) {
            const double a = draw_gain();
            for (std::size_t n = 0; n < N; ++n) {
                gains(t, n) = a;
            }
        } else {
            for (std::size_t n = 0; n < N; ++n) {
                gains(t, n) = draw_gain();
            }
        }
    }
    Matrix b(T, N);
    Matrix c(T, N);
    for (double& v : b.values()) {
        v = weight(rng);
    }
    for (double& v : c.values()) {
        v = weight(rng);
    }
    return DiagonalSsm(std::move(gains), std::move(b), std::move(c));
}

SequenceData random_sequence(std::uint64_t seed, std::size_t steps, std::size_t channels)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> value(-1.0, 1.0);
    SequenceData x(steps, channels);
    for (double& v : x.values()) {
        v = value(rng);
    }
    return x;
}

}  // namespace ssd
