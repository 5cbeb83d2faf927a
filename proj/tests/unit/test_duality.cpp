#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "ssdlab/duality.hpp"
#include "ssdlab/limits.hpp"

using namespace ssd;

namespace {

DiagonalSsm seeded(std::uint64_t seed, std::size_t T, std::size_t N, double lo, double hi, bool scalar = false)
{
    InstanceSpec spec;
    spec.steps = T;
    spec.state_dim = N;
    spec.gain_min_abs = lo;
    spec.gain_max_abs = hi;
    spec.scalar_identity = scalar;
    return random_diagonal_ssm(seed, spec);
}

LowerTriangularMatrix all_ones(std::size_t T) { return one_ss(MaskVector{std::vector<double>(T, 1.0)}); }

Errc code_of(auto&& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an Error");
    return Errc::invalid_argument;
}

}  // namespace

TEST_CASE("scalar identity dual")
{
    const DiagonalSsm ssm(Matrix{{1, 1}, {0.5, 0.5}, {0.5, 0.5}}, Matrix(3, 2, 1.0), Matrix(3, 2, 1.0));
    const MaskedAttentionFactors f = scalar_identity_dual(ssm);
    CHECK(materialize_factors(f).dense() == Matrix{{2, 0, 0}, {1, 2, 0}, {0.5, 1, 2}});
    CHECK(materialize_kernel(ssm).dense() == Matrix{{2, 0, 0}, {1, 2, 0}, {0.5, 1, 2}});
    CHECK(f.queries == ssm.out_weights());
    CHECK(f.keys == ssm.in_weights());

    const DiagonalSsm mixed(Matrix{{1, 1}, {0.5, 0.25}, {0.5, 0.5}}, Matrix(3, 2, 1.0), Matrix(3, 2, 1.0));
    CHECK(code_of([&] { scalar_identity_dual(mixed); }) == Errc::not_scalar_identity);

    // The A^1 slot is never read, so differing entries there are accepted.
    const DiagonalSsm first_slot(Matrix{{3, 1}, {0.5, 0.5}}, Matrix(2, 2, 1.0), Matrix(2, 2, 1.0));
    CHECK_NOTHROW(scalar_identity_dual(first_slot));

    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const DiagonalSsm one = seeded(seed, 12, 1, 0.0, 1.5);
        CHECK(relative_error(materialize_factors(scalar_identity_dual(one)).dense(), oracle::kernel(one)) <= 1e-14);
        const DiagonalSsm shared = seeded(seed, 16, 4, 0.0, 1.5, true);
        const Matrix x = random_sequence(seed, 16, 2);
        CHECK(relative_error(masked_attention_forward(scalar_identity_dual(shared), x),
                             forward_recurrence(shared, x)) <= 1e-10);
    }
}

TEST_CASE("attention-like decomposition sums to the kernel")
{
    const RankOneMaskedTerm ones{0, {1, 1, 1}, {1, 1, 1}, {1, 1, 1}};
    CHECK(materialize_term(ones) == all_ones(3));
    const RankOneMaskedTerm products{0, {9, 2, 3}, {1, 1, 1}, {1, 1, 1}};
    CHECK(materialize_term(products).dense() == Matrix{{1, 0, 0}, {2, 1, 0}, {6, 3, 1}});
    const RankOneMaskedTerm zero_row{0, {1, 2, 3}, {1, 0, 1}, {1, 1, 1}};
    const LowerTriangularMatrix zr = materialize_term(zero_row);
    CHECK(zr(1, 0) == 0.0);
    CHECK(zr(1, 1) == 0.0);

    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const DiagonalSsm ssm = seeded(seed, 8, 4, 0.0, 2.0);
        const auto terms = attention_like_decomposition(ssm);
        REQUIRE(terms.size() == 4);
        Matrix sum(8, 8);
        for (const auto& term : terms) {
            const LowerTriangularMatrix m = materialize_term(term);
            for (std::size_t i = 0; i < sum.size(); ++i) sum.values()[i] += m.dense().values()[i];
        }
        CHECK(relative_error(sum, materialize_kernel(ssm).dense()) <= 1e-12);
    }

    DiagonalSsm base = seeded(3, 6, 2, 0.0, 1.0);
    Matrix b = base.in_weights();
    for (std::size_t t = 0; t < 6; ++t) b(t, 1) = 0.0;
    const auto terms = attention_like_decomposition(DiagonalSsm(base.gains(), b, base.out_weights()));
    CHECK(materialize_term(terms[1]).dense() == Matrix(6, 6));
}

TEST_CASE("full-rank dual")
{
    const DiagonalSsm ssm(Matrix{{1}, {2}, {3}}, Matrix(3, 1, 1.0), Matrix(3, 1, 1.0));
    const MaskedAttentionFactors f = full_rank_one_ss_dual(ssm);
    CHECK(f.mask == std::vector<double>{1, 1, 1});
    CHECK(f.queries == Matrix{{1}, {2}, {6}});
    CHECK(f.keys(0, 0) == 1.0);
    CHECK(f.keys(1, 0) == 0.5);
    CHECK(f.keys(2, 0) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
    CHECK(materialize_factors(f)(2, 1) == doctest::Approx(3.0).epsilon(1e-15));

    const DiagonalSsm zero(Matrix{{1}, {2}, {0}}, Matrix(3, 1, 1.0), Matrix(3, 1, 1.0));
    CHECK(code_of([&] { full_rank_one_ss_dual(zero); }) == Errc::zero_gain);

    Matrix tiny(40, 1, 1e-2);
    tiny(0, 0) = 1.0;
    CHECK(code_of([&] { full_rank_one_ss_dual(DiagonalSsm(tiny, Matrix(40, 1, 1.0), Matrix(40, 1, 1.0))); }) ==
          Errc::unstable_scaling);

    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const DiagonalSsm s = seeded(seed, 32, 4, 0.5, 2.0);
        const LowerTriangularMatrix m = materialize_factors(full_rank_one_ss_dual(s));
        CHECK(relative_error(m.dense(), oracle::kernel(s)) <= 1e-8);
        CHECK(has_one_ss_dual(m, 4));
    }
}

TEST_CASE("scalar-identity and full-rank duals materialize the same matrix")
{
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const DiagonalSsm s = seeded(seed, 20, 3, 0.5, 1.5, true);
        const MaskedAttentionFactors a = scalar_identity_dual(s);
        const MaskedAttentionFactors b = full_rank_one_ss_dual(s);
        CHECK(relative_error(materialize_factors(a).dense(), materialize_factors(b).dense()) <= 1e-10);
    }
}

TEST_CASE("masked attention forward")
{
    MaskedAttentionFactors f{{0, 0, 0}, Matrix{{1}, {2}, {3}}, Matrix{{4}, {5}, {6}}};
    const Matrix y = masked_attention_forward(f, Matrix{{1}, {1}, {1}});
    CHECK(y == Matrix{{4}, {10}, {18}});
    CHECK(masked_attention_forward(f, Matrix(3, 2)) == Matrix(3, 2));
    CHECK_THROWS_AS(masked_attention_forward(f, Matrix(2, 1)), Error);
    MaskedAttentionFactors bad{{0, 0}, Matrix(3, 1), Matrix(3, 1)};
    CHECK_THROWS_AS(check_factors(bad), Error);
}

TEST_CASE("block new-column counts")
{
    const auto identity = count_block_new_columns(identity_matrix(3));
    REQUIRE(identity.size() == 3);
    for (const auto& b : identity) CHECK(b.count() == 1);

    const auto corner = count_block_new_columns(non_dualizable_matrix(5));
    REQUIRE(corner.size() == 1);
    CHECK(corner[0].count() == 4);

    const auto ones = count_block_new_columns(all_ones(6));
    REQUIRE(ones.size() == 1);
    CHECK(ones[0].count() == 1);
}

TEST_CASE("representability decisions")
{
    CHECK_FALSE(has_one_ss_dual(non_dualizable_matrix(5), 2));
    CHECK(has_one_ss_dual(non_dualizable_matrix(5), 4));
    CHECK(code_of([] { construct_one_ss_dual(non_dualizable_matrix(5), 2); }) == Errc::not_representable);

    for (std::size_t T = 3; T <= 16; ++T) {
        for (std::size_t N = 2; N + 2 <= T; ++N) {
            CHECK_FALSE(has_one_ss_dual(non_dualizable_matrix(T), N));
        }
    }

    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t T = 10;
        const Matrix m = oracle::random_matrix(rng, T, T);
        Matrix low(T, T);
        for (std::size_t t = 0; t < T; ++t)
            for (std::size_t s = 0; s <= t; ++s) low(t, s) = m(t, s);
        const LowerTriangularMatrix lt = oracle::lower(low);
        bool previous = false;
        for (std::size_t N = 1; N <= T; ++N) {
            const bool now = has_one_ss_dual(lt, N);
            if (previous) CHECK(now);
            previous = now;
        }
        CHECK(previous);
    }
}

TEST_CASE("new-column count characterizes fine-mask duals of width N")
{
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> gain(0.5, 1.5);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t T = 8;
        const std::size_t N = 1 + trial % 3;
        std::vector<double> mask(T);
        for (double& p : mask) p = (trial % 2 ? -1.0 : 1.0) * gain(rng);
        const Matrix m = oracle::masked_low_rank(mask, oracle::random_matrix(rng, T, N), oracle::random_matrix(rng, T, N));
        CHECK(new_columns(oracle::lower(m)).size() <= N);
        CHECK(has_one_ss_dual(oracle::lower(m), N));

        // Leading N+1 columns made independent on their lower parts.
        Matrix forced = m;
        for (std::size_t s = 0; s <= N; ++s) forced(T - 1 - (N - s), s) += 3.0 + s;
        CHECK_FALSE(has_one_ss_dual(oracle::lower(forced), N));
    }
}

TEST_CASE("constructed duals reproduce the matrix")
{
    const MaskedAttentionFactors ones = construct_one_ss_dual(all_ones(5), 1);
    CHECK(relative_error(materialize_factors(ones).dense(), all_ones(5).dense()) <= 1e-9);
    CHECK(ones.mask[1] == 1.0);

    const MaskedAttentionFactors id = construct_one_ss_dual(identity_matrix(3), 1);
    CHECK(id.mask == std::vector<double>{0, 0, 0});
    CHECK(relative_error(materialize_factors(id).dense(), identity_matrix(3).dense()) <= 1e-9);

    const LowerTriangularMatrix corner = non_dualizable_matrix(5);
    const MaskedAttentionFactors c4 = construct_one_ss_dual(corner, 4);
    CHECK(c4.queries.cols() == 4);
    CHECK(relative_error(materialize_factors(c4).dense(), corner.dense()) <= 1e-9);

    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> gain(0.5, 1.5);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t T = 12;
        const std::size_t N = 1 + trial % 4;
        std::vector<double> mask(T);
        for (double& p : mask) p = gain(rng);
        mask[4 + trial % 5] = 0.0;
        const Matrix m = oracle::masked_low_rank(mask, oracle::random_matrix(rng, T, N), oracle::random_matrix(rng, T, N));
        const LowerTriangularMatrix lt = oracle::lower(m);
        REQUIRE(has_one_ss_dual(lt, N));
        const MaskedAttentionFactors f = construct_one_ss_dual(lt, N);
        CHECK(f.queries.cols() == N);
        CHECK(relative_error(materialize_factors(f).dense(), m) <= 1e-8);
        for (const BlockInterval& b : diagonal_block_partition(lt).blocks) {
            CHECK(f.mask[b.begin] == 0.0);
            for (std::size_t t = b.begin + 1; t < b.end; ++t) CHECK(f.mask[t] == 1.0);
        }
    }
}
