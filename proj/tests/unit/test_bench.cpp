#include <doctest.h>

#include "ssdlab/bench.hpp"
#include "ssdlab/counting.hpp"

using namespace ssd;
using bench::Dims;
using bench::ExecutionPath;

TEST_CASE("counted scalar tallies only data-path arithmetic")
{
    bench::tally = {};
    {
        bench::Counted a(2.0);
        bench::Counted b(3.0);
        bench::Counted c = a * b + a;
        CHECK(c.value() == 8.0);
        CHECK(bench::tally.multiplications == 1);
        CHECK(bench::tally.additions == 1);
        CHECK(bench::tally.live == 3);
        bench::Counted d = c;
        CHECK(bench::tally.copies == 1);
        CHECK(bench::tally.peak_live == 4);
        CHECK(d.value() == 8.0);
    }
    CHECK(bench::tally.live == 0);
}

TEST_CASE("ssd and recurrence counts")
{
    for (std::size_t T : {1u, 7u, 64u}) {
        for (std::size_t N : {1u, 3u}) {
            for (std::size_t d : {1u, 2u}) {
                const Dims dims{T, N, d};
                const auto ssd = bench::count_flops(ExecutionPath::ssd, dims, 1);
                const auto rec = bench::count_flops(ExecutionPath::recurrence, dims, 1);
                CHECK(ssd.multiply_adds == 5 * N * T * d - 2 * N * d);
                CHECK(ssd.multiply_adds == ssd.multiplications + ssd.additions);
                CHECK(rec.multiply_adds == ssd.multiply_adds);
                CHECK(ssd.parameter_elements == 3 * N * T);
                if (T > 1) CHECK(bench::within_ssd_band(ssd));
                CHECK(bench::within_ssd_memory(ssd));
                CHECK(ssd.peak_live_elements == 3 * N * T * d + T * d);
            }
        }
    }

    const auto example = bench::count_flops(ExecutionPath::ssd, {64, 4, 2}, 3);
    CHECK(example.multiply_adds >= 3 * 512);
    CHECK(example.multiply_adds <= 5 * 512);

    const auto stream = bench::count_flops(ExecutionPath::ssd, {64, 4, 2}, 3, kernels::SsdSchedule::streaming);
    CHECK(stream.multiply_adds == example.multiply_adds);
    CHECK(stream.peak_live_elements < example.peak_live_elements);
}

TEST_CASE("counts depend only on path, schedule and dims")
{
    for (auto path : {ExecutionPath::recurrence, ExecutionPath::ssd, ExecutionPath::materialized}) {
        const auto a = bench::count_flops(path, {20, 3, 2}, 1);
        const auto b = bench::count_flops(path, {20, 3, 2}, 987654321);
        CHECK(a.multiply_adds == b.multiply_adds);
        CHECK(a.copies == b.copies);
        CHECK(a.peak_live_elements == b.peak_live_elements);
    }
}

TEST_CASE("ssd counts are linear in T up to the scan's first row")
{
    for (std::size_t T : {16u, 64u, 256u}) {
        const std::size_t N = 4;
        const std::size_t d = 2;
        const auto one = bench::count_flops(ExecutionPath::ssd, {T, N, d}, 0);
        const auto two = bench::count_flops(ExecutionPath::ssd, {2 * T, N, d}, 0);
        CHECK(two.multiply_adds - 2 * one.multiply_adds == 2 * N * d);
    }
}

TEST_CASE("materialized counts grow quadratically")
{
    const auto small = bench::count_flops(ExecutionPath::materialized, {64, 4, 2}, 0);
    const auto large = bench::count_flops(ExecutionPath::materialized, {128, 4, 2}, 0);
    const double ratio = static_cast<double>(large.multiply_adds) / static_cast<double>(small.multiply_adds);
    CHECK(ratio >= 3.6);
    CHECK(ratio <= 4.4);
}

TEST_CASE("scaling experiment")
{
    const auto t = bench::scaling_experiment({{64, 128, 256, 512}, {4}, {2}}, ExecutionPath::ssd, 0);
    REQUIRE(t.slope_steps);
    CHECK(*t.slope_steps == doctest::Approx(1.0).epsilon(0.05));
    CHECK_FALSE(t.slope_state_dim);
    CHECK(bench::slopes_within_bounds(t));

    const auto n = bench::scaling_experiment({{64}, {1, 2, 4, 8}, {2}}, ExecutionPath::ssd, 0);
    REQUIRE(n.slope_state_dim);
    CHECK(std::abs(*n.slope_state_dim - 1.0) <= 0.05);

    const auto m = bench::scaling_experiment({{64, 128, 256}, {4}, {2}}, ExecutionPath::materialized, 0);
    REQUIRE(m.slope_steps);
    CHECK(std::abs(*m.slope_steps - 2.0) <= 0.1);

    auto degenerate = [](const bench::ScalingGrid& g) {
        try {
            bench::scaling_experiment(g, ExecutionPath::ssd, 0);
        } catch (const Error& e) {
            return e.code() == Errc::degenerate_grid;
        }
        return false;
    };
    CHECK(degenerate({{64, 128}, {4}, {2}}));
    CHECK(degenerate({{64}, {4}, {2}}));
    CHECK(degenerate({{}, {4}, {2}}));
    CHECK(degenerate({{0, 64, 128}, {4}, {2}}));
}

TEST_CASE("parallel speedup probe")
{
    for (std::size_t workers : {1u, 4u, 8u}) {
        const auto probe = bench::parallel_speedup_probe({64, 4, 2}, workers, 5);
        CHECK(probe.equivalent);
        CHECK(probe.max_relative_difference <= 1e-12);
    }
    CHECK_THROWS_AS(bench::parallel_speedup_probe({64, 4, 2}, 9, 5), Error);
    CHECK_THROWS_AS(bench::parallel_speedup_probe({64, 4, 2}, 0, 5), Error);
}

TEST_CASE("path names")
{
    CHECK(bench::parse_path("materialized") == ExecutionPath::materialized);
    CHECK(bench::to_string(ExecutionPath::recurrence) == "recurrence");
    CHECK_THROWS_AS(bench::parse_path("gpu"), Error);
}
