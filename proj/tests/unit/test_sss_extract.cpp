#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "ssdlab/limits.hpp"
#include "ssdlab/sss_extract.hpp"

using namespace ssd;

namespace {

Matrix identity(std::size_t n)
{
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

/// Entry (j, i) from the defining product, one fresh chain per entry.
Matrix sss_oracle(const GeneralSssRepresentation& rep)
{
    const std::size_t T = rep.steps();
    const std::size_t N = rep.state_dim();
    Matrix m(T, T);
    for (std::size_t j = 0; j < T; ++j) {
        for (std::size_t i = 0; i <= j; ++i) {
            Eigen::VectorXd v(N);
            for (std::size_t n = 0; n < N; ++n) v(n) = rep.in_weights(i, n);
            for (std::size_t r = i + 1; r <= j; ++r) v = linalg::to_eigen(rep.transitions[r]) * v;
            double s = 0.0;
            for (std::size_t n = 0; n < N; ++n) s += rep.out_weights(j, n) * v(n);
            m(j, i) = s;
        }
    }
    return m;
}

void check_padding(const GeneralSssRepresentation& rep)
{
    const std::size_t N = rep.state_dim();
    for (std::size_t t = 1; t < rep.steps(); ++t) {
        const Matrix& a = rep.transitions[t];
        for (std::size_t r = 0; r < N; ++r) {
            for (std::size_t c = 0; c < N; ++c) {
                if (r >= rep.ranks[t] || c >= rep.ranks[t - 1]) CHECK(a(r, c) == 0.0);
            }
        }
    }
    for (std::size_t t = 0; t < rep.steps(); ++t) {
        for (std::size_t n = rep.ranks[t]; n < N; ++n) {
            CHECK(rep.in_weights(t, n) == 0.0);
            CHECK(rep.out_weights(t, n) == 0.0);
        }
    }
}

}  // namespace

TEST_CASE("materialize_sss examples")
{
    GeneralSssRepresentation ident{{identity(1), identity(1), identity(1)},
                                   Matrix{{2}, {3}, {4}},
                                   Matrix{{1}, {-1}, {5}},
                                   {1, 1, 1}};
    const LowerTriangularMatrix m = materialize_sss(ident);
    for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t i = 0; i <= j; ++i) CHECK(m(j, i) == ident.out_weights(j, 0) * ident.in_weights(i, 0));

    GeneralSssRepresentation swap{{identity(2), Matrix{{0, 1}, {1, 0}}},
                                  Matrix{{1, 0}, {0, 0}},
                                  Matrix{{0, 0}, {1, 0}},
                                  {1, 1}};
    CHECK(materialize_sss(swap)(1, 0) == 0.0);

    InstanceSpec spec;
    spec.steps = 9;
    spec.state_dim = 3;
    spec.gain_max_abs = 1.5;
    const DiagonalSsm ssm = random_diagonal_ssm(4, spec);
    GeneralSssRepresentation diag{{}, ssm.in_weights(), ssm.out_weights(), std::vector<std::size_t>(9, 3)};
    for (std::size_t t = 0; t < 9; ++t) {
        Matrix a(3, 3);
        for (std::size_t n = 0; n < 3; ++n) a(n, n) = ssm.gains()(t, n);
        diag.transitions.push_back(a);
    }
    diag.transitions[0] = identity(3);
    CHECK(relative_error(materialize_sss(diag).dense(), materialize_kernel(ssm).dense()) <= 1e-14);

    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const GeneralSssRepresentation rep = random_sss_representation(seed, 14, 1 + seed % 4);
        CHECK(relative_error(materialize_sss(rep).dense(), sss_oracle(rep)) <= 1e-13);
        CHECK(semiseparable_rank(materialize_sss(rep)) <= rep.state_dim());
    }
}

TEST_CASE("rank factor step")
{
    const LowerTriangularMatrix zero(5);
    const RankFactor z = rank_factor_step(zero, 2, 2);
    CHECK(z.rank == 0);
    CHECK(z.w == Matrix(3, 2));
    CHECK(z.u == Matrix(2, 3));

    const LowerTriangularMatrix ones = one_ss(MaskVector{std::vector<double>(6, 1.0)});
    const RankFactor o = rank_factor_step(ones, 3, 2);
    CHECK(o.rank == 1);
    const Matrix wu = linalg::from_eigen(linalg::to_eigen(o.w) * linalg::to_eigen(o.u));
    CHECK(relative_error(wu, Matrix(3, 4, 1.0)) <= 1e-14);
    for (std::size_t r = 0; r < o.w.rows(); ++r) CHECK(o.w(r, 1) == 0.0);

    CHECK(rank_factor_step(non_dualizable_matrix(5), 2, 2).rank == 2);
    CHECK_THROWS_AS(rank_factor_step(non_dualizable_matrix(5), 2, 1), Error);
}

TEST_CASE("solve transition")
{
    std::mt19937_64 rng(2);
    const Matrix w = oracle::random_matrix(rng, 6, 3);
    const Matrix a = solve_transition(w, w, 3, 3);
    CHECK(relative_error(a, identity(3)) <= 1e-12);

    Matrix twice = w;
    for (double& v : twice.values()) v *= 2.0;
    const Matrix a2 = solve_transition(w, twice, 3, 3);
    Matrix expected = identity(3);
    for (double& v : expected.values()) v *= 2.0;
    CHECK(relative_error(a2, expected) <= 1e-12);

    Matrix padded = w;
    for (std::size_t r = 0; r < 6; ++r) padded(r, 2) = 0.0;
    const Matrix a3 = solve_transition(padded, padded, 2, 2);
    CHECK(a3(2, 2) == 0.0);
    CHECK(a3(0, 2) == 0.0);

    const Matrix unrelated = oracle::random_matrix(rng, 6, 3);
    Matrix narrow = w;
    for (std::size_t r = 0; r < 6; ++r) narrow(r, 1) = narrow(r, 2) = 0.0;
    CHECK_THROWS_AS(solve_transition(narrow, unrelated, 1, 3), Error);

    // A random consistent pair: W_trunc = W_next * A for a known A.
    const Matrix known = oracle::random_matrix(rng, 3, 3);
    const Matrix target = linalg::from_eigen(linalg::to_eigen(w) * linalg::to_eigen(known));
    CHECK(relative_error(solve_transition(w, target, 3, 3), known) <= 1e-8);
}

TEST_CASE("extraction round trips")
{
    InstanceSpec spec;
    spec.steps = 12;
    spec.state_dim = 3;
    spec.gain_max_abs = 1.2;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const LowerTriangularMatrix m = materialize_kernel(random_diagonal_ssm(seed, spec));
        const GeneralSssRepresentation rep = extract_sss(m, 3);
        CHECK(relative_error(materialize_sss(rep).dense(), m.dense()) <= 1e-6);
        check_padding(rep);
    }

    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> u(0.3, 1.7);
    MaskVector a;
    for (int t = 0; t < 10; ++t) a.a.push_back(u(rng));
    const GeneralSssRepresentation one = extract_sss(one_ss(a), 1);
    CHECK(relative_error(materialize_sss(one).dense(), one_ss(a).dense()) <= 1e-8);
    for (std::size_t r : one.ranks) CHECK(r == 1);

    const GeneralSssRepresentation corner = extract_sss(non_dualizable_matrix(5), 2);
    CHECK(relative_error(materialize_sss(corner).dense(), non_dualizable_matrix(5).dense()) <= 1e-9);
    CHECK_THROWS_AS(extract_sss(non_dualizable_matrix(5), 1), Error);
}

TEST_CASE("extracted ranks equal independent block ranks")
{
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const std::size_t T = 10 + seed;
        const std::size_t N = 1 + seed % 4;
        const LowerTriangularMatrix m = materialize_sss(random_sss_representation(seed, T, N));
        const GeneralSssRepresentation rep = extract_sss(m, N);
        for (std::size_t t = 0; t < T; ++t) {
            CHECK(rep.ranks[t] == oracle::lu_rank(oracle::block(m.dense(), t, T, 0, t + 1), 1e-9));
        }
        CHECK(relative_error(materialize_sss(rep).dense(), m.dense()) <= 1e-6);
        check_padding(rep);
    }
}
