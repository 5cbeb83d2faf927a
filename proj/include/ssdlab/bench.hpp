#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ssdlab/kernels.hpp"

namespace ssd::bench {

enum class ExecutionPath { recurrence, ssd, materialized };

std::string_view to_string(ExecutionPath path) noexcept;
/// Throws invalid-argument for an unknown name.
ExecutionPath parse_path(std::string_view name);

struct Dims {
    std::size_t steps = 0;
    std::size_t state_dim = 0;
    std::size_t channels = 0;
};

/// Exact operation and memory tallies of one instrumented forward pass.
///
/// Cost model: every scalar multiplication and every scalar addition on the
/// data path counts one unit of `multiply_adds`; `multiplications` and
/// `additions` are the two parts. `peak_live_elements` is the peak number of
/// scalars allocated by the pass itself (intermediates and output), not
/// counting the caller-owned parameters (`parameter_elements` = 3NT) and input.
struct FlopReport {
    ExecutionPath path = ExecutionPath::ssd;
    kernels::SsdSchedule schedule = kernels::SsdSchedule::staged;
    Dims dims;
    std::uint64_t multiply_adds = 0;
    std::uint64_t multiplications = 0;
    std::uint64_t additions = 0;
    std::uint64_t copies = 0;
    std::uint64_t peak_live_elements = 0;
    std::uint64_t parameter_elements = 0;
    /// Wall time of a separate uninstrumented run, when requested.
    std::optional<double> wall_seconds;
};

/// Instrumented run of one path on a seeded random instance (gains in
/// [-1, 1]). Counts depend only on (path, schedule, dims).
FlopReport count_flops(ExecutionPath path, Dims dims, std::uint64_t seed,
                       kernels::SsdSchedule schedule = kernels::SsdSchedule::staged,
                       bool measure_time = false);

/// Multiply-add band [3NTd, 5NTd] for the ssd path.
bool within_ssd_band(const FlopReport& report);

/// Memory bound peak + parameters <= 4 NTd + 3 NT for the staged ssd path.
bool within_ssd_memory(const FlopReport& report);

/// Cartesian grid of dimensions. An axis with one value is held fixed; a
/// varied axis needs at least three values.
struct ScalingGrid {
    std::vector<std::size_t> steps;
    std::vector<std::size_t> state_dims;
    std::vector<std::size_t> channels;
};

struct ScalingResult {
    ExecutionPath path = ExecutionPath::ssd;
    std::vector<FlopReport> rows;
    /// Log-log least-squares exponent of multiply_adds per varied axis.
    std::optional<double> slope_steps;
    std::optional<double> slope_state_dim;
    std::optional<double> slope_channels;
};

/// Throws degenerate-grid for an empty axis, a zero dimension, an axis with
/// exactly two values, or a grid with no varied axis.
ScalingResult scaling_experiment(const ScalingGrid& grid, ExecutionPath path, std::uint64_t seed);

/// Slope windows: ssd 1.0 +- 0.05 on every varied axis, materialized
/// 2.0 +- 0.1 on T. Other slopes are informational.
bool slopes_within_bounds(const ScalingResult& result);

struct SpeedupProbe {
    Dims dims;
    std::size_t workers = 1;
    double sequential_seconds = 0.0;
    double parallel_seconds = 0.0;
    double speedup = 0.0;
    double max_relative_difference = 0.0;
    bool equivalent = false;  ///< max relative difference <= 1e-12
};

/// Times the ssd path with 1 and `workers` threads on the same instance.
/// Throws invalid-argument unless 1 <= workers <= N*d.
SpeedupProbe parallel_speedup_probe(Dims dims, std::size_t workers, std::uint64_t seed);

}  // namespace ssd::bench
