#include "ssdlab/bench.hpp"

#include <chrono>
#include <cmath>

#include <Eigen/Dense>

#include "ssdlab/counting.hpp"
#include "ssdlab/ssm.hpp"

namespace ssd::bench {

std::string_view to_string(ExecutionPath path) noexcept
{
    switch (path) {
    case ExecutionPath::recurrence: return "recurrence";
    case ExecutionPath::ssd: return "ssd";
    case ExecutionPath::materialized: return "materialized";
    }
    return "unknown";
}

ExecutionPath parse_path(std::string_view name)
{
    for (ExecutionPath p : {ExecutionPath::recurrence, ExecutionPath::ssd, ExecutionPath::materialized}) {
        if (name == to_string(p)) {
            return p;
        }
    }
    throw Error(Errc::invalid_argument, "unknown execution path '" + std::string(name) + "'");
}

namespace {

void check_dims(const Dims& dims)
{
    if (dims.steps == 0 || dims.state_dim == 0 || dims.channels == 0) {
        throw Error(Errc::invalid_argument, "T, N and d must be positive");
    }
}

DenseMatrix<Counted> to_counted(const Matrix& m)
{
    DenseMatrix<Counted> out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.size(); ++i) {
        out.values()[i] = Transient{m.values()[i]};
    }
    return out;
}

template <class S>
DenseMatrix<S> run_path(ExecutionPath path, const kernels::DiagonalParams<S>& p,
                        const DenseMatrix<S>& x, kernels::SsdSchedule schedule)
{
    switch (path) {
    case ExecutionPath::recurrence: return kernels::recurrence(p, x);
    case ExecutionPath::ssd: return kernels::ssd(p, x, schedule);
    case ExecutionPath::materialized: return kernels::lower_matmul(kernels::kernel_matrix(p), x);
    }
    return {};
}

InstanceSpec bench_spec(const Dims& dims)
{
    InstanceSpec spec;
    spec.steps = dims.steps;
    spec.state_dim = dims.state_dim;
    spec.channels = dims.channels;
    spec.gain_min_abs = 0.0;
    spec.gain_max_abs = 1.0;
    return spec;
}

}  // namespace

FlopReport count_flops(ExecutionPath path, Dims dims, std::uint64_t seed,
                       kernels::SsdSchedule schedule, bool measure_time)
{
    check_dims(dims);
    const DiagonalSsm ssm = random_diagonal_ssm(seed, bench_spec(dims));
    const SequenceData x = random_sequence(seed + 1, dims.steps, dims.channels);

    FlopReport report;
    report.path = path;
    report.schedule = schedule;
    report.dims = dims;
    report.parameter_elements = 3 * dims.steps * dims.state_dim;

    {
        const DenseMatrix<Counted> gains = to_counted(ssm.gains());
        const DenseMatrix<Counted> in = to_counted(ssm.in_weights());
        const DenseMatrix<Counted> out = to_counted(ssm.out_weights());
        const DenseMatrix<Counted> cx = to_counted(x);
        const kernels::DiagonalParams<Counted> params{gains, in, out};

        const OpTally before = tally;
        tally.multiplications = 0;
        tally.additions = 0;
        tally.copies = 0;
        tally.peak_live = tally.live;
        const std::int64_t baseline = tally.live;
        {
            const DenseMatrix<Counted> y = run_path(path, params, cx, schedule);
            (void)y;
        }
        report.multiplications = tally.multiplications;
        report.additions = tally.additions;
        report.copies = tally.copies;
        report.peak_live_elements = static_cast<std::uint64_t>(tally.peak_live - baseline);
        report.multiply_adds = report.multiplications + report.additions;
        tally.multiplications = before.multiplications;
        tally.additions = before.additions;
        tally.copies = before.copies;
        tally.peak_live = std::max(before.peak_live, tally.peak_live);
    }

    if (measure_time) {
        const auto start = std::chrono::steady_clock::now();
        const Matrix y = run_path(path, ssm.params(), x, schedule);
        const auto stop = std::chrono::steady_clock::now();
        (void)y;
        report.wall_seconds = std::chrono::duration<double>(stop - start).count();
    }
    return report;
}

bool within_ssd_band(const FlopReport& report)
{
    const std::uint64_t ntd = report.dims.steps * report.dims.state_dim * report.dims.channels;
    return report.multiply_adds >= 3 * ntd && report.multiply_adds <= 5 * ntd;
}

bool within_ssd_memory(const FlopReport& report)
{
    const std::uint64_t nt = report.dims.steps * report.dims.state_dim;
    const std::uint64_t ntd = nt * report.dims.channels;
    return report.peak_live_elements + report.parameter_elements <= 4 * ntd + 3 * nt;
}

namespace {

bool varied(const std::vector<std::size_t>& axis, const char* name)
{
    if (axis.empty()) {
        throw Error(Errc::degenerate_grid, std::string("axis ") + name + " has no values");
    }
    for (std::size_t v : axis) {
        if (v == 0) {
            throw Error(Errc::degenerate_grid, std::string("axis ") + name + " contains zero");
        }
    }
    if (axis.size() == 2) {
        throw Error(Errc::degenerate_grid, std::string("axis ") + name + " needs 1 or >= 3 values");
    }
    return axis.size() >= 3;
}

}  // namespace

ScalingResult scaling_experiment(const ScalingGrid& grid, ExecutionPath path, std::uint64_t seed)
{
    const bool vary_t = varied(grid.steps, "T");
    const bool vary_n = varied(grid.state_dims, "N");
    const bool vary_d = varied(grid.channels, "d");
    if (!vary_t && !vary_n && !vary_d) {
        throw Error(Errc::degenerate_grid, "no axis is varied");
    }

    ScalingResult result;
    result.path = path;
    for (std::size_t t : grid.steps) {
        for (std::size_t n : grid.state_dims) {
            for (std::size_t d : grid.channels) {
                result.rows.push_back(count_flops(path, {t, n, d}, seed));
            }
        }
    }

    // log(count) = c0 + sum over varied axes of slope * log(dim)
    const auto rows = static_cast<Eigen::Index>(result.rows.size());
    const Eigen::Index cols = 1 + vary_t + vary_n + vary_d;
    Eigen::MatrixXd design(rows, cols);
    Eigen::VectorXd target(rows);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const FlopReport& r = result.rows[static_cast<std::size_t>(i)];
        Eigen::Index c = 0;
        design(i, c++) = 1.0;
        if (vary_t) design(i, c++) = std::log(static_cast<double>(r.dims.steps));
        if (vary_n) design(i, c++) = std::log(static_cast<double>(r.dims.state_dim));
        if (vary_d) design(i, c++) = std::log(static_cast<double>(r.dims.channels));
        target(i) = std::log(static_cast<double>(r.multiply_adds));
    }
    const Eigen::VectorXd coef = design.colPivHouseholderQr().solve(target);
    Eigen::Index c = 1;
    if (vary_t) result.slope_steps = coef(c++);
    if (vary_n) result.slope_state_dim = coef(c++);
    if (vary_d) result.slope_channels = coef(c++);
    return result;
}

bool slopes_within_bounds(const ScalingResult& result)
{
    auto near = [](const std::optional<double>& slope, double target, double tol) {
        return !slope || std::abs(*slope - target) <= tol;
    };
    switch (result.path) {
    case ExecutionPath::ssd:
        return near(result.slope_steps, 1.0, 0.05) && near(result.slope_state_dim, 1.0, 0.05) &&
               near(result.slope_channels, 1.0, 0.05);
    case ExecutionPath::materialized:
        return near(result.slope_steps, 2.0, 0.1);
    case ExecutionPath::recurrence:
        return true;
    }
    return false;
}

SpeedupProbe parallel_speedup_probe(Dims dims, std::size_t workers, std::uint64_t seed)
{
    check_dims(dims);
    if (workers == 0 || workers > dims.state_dim * dims.channels) {
        throw Error(Errc::invalid_argument, "workers must lie in [1, N*d]");
    }
    const DiagonalSsm ssm = random_diagonal_ssm(seed, bench_spec(dims));
    const SequenceData x = random_sequence(seed + 1, dims.steps, dims.channels);

    auto timed = [&](std::size_t k, Matrix& out) {
        const auto start = std::chrono::steady_clock::now();
        out = forward_ssd(ssm, x, {kernels::SsdSchedule::staged, k});
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    };

    SpeedupProbe probe;
    probe.dims = dims;
    probe.workers = workers;
    Matrix sequential;
    Matrix parallel;
    probe.sequential_seconds = timed(1, sequential);
    probe.parallel_seconds = timed(workers, parallel);
    probe.speedup = probe.parallel_seconds > 0.0 ? probe.sequential_seconds / probe.parallel_seconds : 0.0;
    probe.max_relative_difference = relative_error(parallel, sequential);
    probe.equivalent = probe.max_relative_difference <= 1e-12;
    return probe;
}

}  // namespace ssd::bench
