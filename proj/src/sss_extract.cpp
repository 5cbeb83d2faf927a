#include "ssdlab/sss_extract.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "ssdlab/linalg.hpp"

namespace ssd {

void check_representation(const GeneralSssRepresentation& rep)
{
    const std::size_t T = rep.steps();
    const std::size_t N = rep.state_dim();
    if (T == 0 || N == 0 || rep.in_weights.rows() != T || rep.out_weights.rows() != T ||
        rep.out_weights.cols() != N || rep.ranks.size() != T) {
        throw Error(Errc::shape_mismatch, "representation arrays disagree on T or N");
    }
    for (const Matrix& a : rep.transitions) {
        if (a.rows() != N || a.cols() != N) {
            throw Error(Errc::shape_mismatch, "every transition must be N x N");
        }
    }
}

LowerTriangularMatrix materialize_sss(const GeneralSssRepresentation& rep)
{
    check_representation(rep);
    const std::size_t T = rep.steps();
    const std::size_t N = rep.state_dim();
    LowerTriangularMatrix out(T);
    std::vector<double> carried(N);
    std::vector<double> next(N);
    for (std::size_t i = 0; i < T; ++i) {
        for (std::size_t n = 0; n < N; ++n) {
            carried[n] = rep.in_weights(i, n);
        }
        for (std::size_t j = i; j < T; ++j) {
            if (j > i) {
                const Matrix& a = rep.transitions[j];
                for (std::size_t r = 0; r < N; ++r) {
                    double acc = 0.0;
                    for (std::size_t k = 0; k < N; ++k) {
                        acc += a(r, k) * carried[k];
                    }
                    next[r] = acc;
                }
                std::swap(carried, next);
            }
            double entry = 0.0;
            for (std::size_t n = 0; n < N; ++n) {
                entry += rep.out_weights(j, n) * carried[n];
            }
            out.set(j, i, entry);
        }
    }
    return out;
}

RankFactor rank_factor_step(const LowerTriangularMatrix& m, std::size_t t, std::size_t state_dim,
                            double eps)
{
    const std::size_t T = m.size();
    if (t >= T) {
        throw Error(Errc::invalid_argument, "step index out of range");
    }
    Eigen::MatrixXd block(T - t, t + 1);
    for (std::size_t r = t; r < T; ++r) {
        for (std::size_t c = 0; c <= t; ++c) {
            block(r - t, c) = m(r, c);
        }
    }
    const linalg::Svd svd = linalg::thin_svd(block);
    RankFactor out;
    out.rank = linalg::numerical_rank(svd.s, eps);
    if (out.rank > state_dim) {
        throw Error(Errc::rank_exceeds_n, "block at step " + std::to_string(t + 1) + " has rank " +
                                              std::to_string(out.rank) + " > " +
                                              std::to_string(state_dim));
    }
    out.w = Matrix(T - t, state_dim);
    out.u = Matrix(state_dim, t + 1);
    for (std::size_t k = 0; k < out.rank; ++k) {
        const auto ki = static_cast<Eigen::Index>(k);
        const double root = std::sqrt(svd.s(ki));
        for (std::size_t r = 0; r < T - t; ++r) {
            out.w(r, k) = svd.u(static_cast<Eigen::Index>(r), ki) * root;
        }
        for (std::size_t c = 0; c <= t; ++c) {
            out.u(k, c) = svd.v(static_cast<Eigen::Index>(c), ki) * root;
        }
    }
    return out;
}

Matrix solve_transition(const Matrix& w_next, const Matrix& w_trunc, std::size_t next_rank,
                        std::size_t cur_rank, double eps)
{
    if (w_next.rows() != w_trunc.rows() || w_next.cols() != w_trunc.cols()) {
        throw Error(Errc::shape_mismatch, "W factors must share shape");
    }
    const std::size_t N = w_next.cols();
    if (next_rank > N || cur_rank > N) {
        throw Error(Errc::invalid_argument, "ranks exceed the state dimension");
    }
    const Eigen::MatrixXd next = linalg::to_eigen(w_next);
    const Eigen::MatrixXd trunc = linalg::to_eigen(w_trunc);
    Eigen::MatrixXd a = linalg::least_squares(next, trunc, eps);
    Eigen::MatrixXd kept = Eigen::MatrixXd::Zero(N, N);
    kept.topLeftCorner(next_rank, cur_rank) = a.topLeftCorner(next_rank, cur_rank);

    const double residual = (next * kept - trunc).norm();
    if (residual > eps * trunc.norm()) {
        throw Error(Errc::inconsistent_transition,
                    "column-side residual " + std::to_string(residual) + " exceeds tolerance");
    }
    return linalg::from_eigen(kept);
}

double row_side_residual(const Matrix& transition, const Matrix& u_cur, const Matrix& u_next_trunc)
{
    const Eigen::MatrixXd diff =
        linalg::to_eigen(transition) * linalg::to_eigen(u_cur) - linalg::to_eigen(u_next_trunc);
    const double ref = frobenius_norm(u_next_trunc);
    return ref == 0.0 ? diff.norm() : diff.norm() / ref;
}

namespace {

Matrix drop_first_row(const Matrix& w)
{
    Matrix out(w.rows() - 1, w.cols());
    for (std::size_t r = 1; r < w.rows(); ++r) {
        for (std::size_t c = 0; c < w.cols(); ++c) {
            out(r - 1, c) = w(r, c);
        }
    }
    return out;
}

Matrix drop_last_column(const Matrix& u)
{
    Matrix out(u.rows(), u.cols() - 1);
    for (std::size_t r = 0; r < u.rows(); ++r) {
        for (std::size_t c = 0; c + 1 < u.cols(); ++c) {
            out(r, c) = u(r, c);
        }
    }
    return out;
}

}  // namespace

GeneralSssRepresentation extract_sss(const LowerTriangularMatrix& m, std::size_t state_dim,
                                     double eps)
{
    if (state_dim == 0) {
        throw Error(Errc::invalid_argument, "state dimension must be at least 1");
    }
    const std::size_t T = m.size();
    const std::size_t N = state_dim;

    std::vector<RankFactor> factors;
    factors.reserve(T);
    for (std::size_t t = 0; t < T; ++t) {
        factors.push_back(rank_factor_step(m, t, N, eps));
    }

    GeneralSssRepresentation rep;
    rep.transitions.reserve(T);
    rep.in_weights = Matrix(T, N);
    rep.out_weights = Matrix(T, N);
    rep.ranks.resize(T);

    Matrix identity(N, N);
    for (std::size_t n = 0; n < N; ++n) {
        identity(n, n) = 1.0;
    }
    rep.transitions.push_back(identity);

    for (std::size_t t = 0; t + 1 < T; ++t) {
        const RankFactor& cur = factors[t];
        const RankFactor& next = factors[t + 1];
        Matrix a = solve_transition(next.w, drop_first_row(cur.w), next.rank, cur.rank, eps);
        const double row_miss = row_side_residual(a, cur.u, drop_last_column(next.u));
        if (row_miss > eps) {
            throw Error(Errc::inconsistent_transition,
                        "row-side residual " + std::to_string(row_miss) + " at step " +
                            std::to_string(t + 2));
        }
        rep.transitions.push_back(std::move(a));
    }

    // Rows of M are the query (c) side: c_t is the first row of W^t and b_t
    // the last column of U^t.
    for (std::size_t t = 0; t < T; ++t) {
        rep.ranks[t] = factors[t].rank;
        for (std::size_t n = 0; n < N; ++n) {
            rep.out_weights(t, n) = factors[t].w(0, n);
            rep.in_weights(t, n) = factors[t].u(n, t);
        }
    }

    const double miss = relative_error(materialize_sss(rep).dense(), m.dense());
    if (miss > eps) {
        throw Error(Errc::reconstruction_failure,
                    "extracted representation misses M by relative " + std::to_string(miss));
    }
    return rep;
}

GeneralSssRepresentation random_sss_representation(std::uint64_t seed, std::size_t steps,
                                                   std::size_t state_dim)
{
    if (steps == 0 || state_dim == 0) {
        throw Error(Errc::invalid_argument, "random representation needs T >= 1 and N >= 1");
    }
    const std::size_t N = state_dim;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> scale(0.7, 1.3);
    std::uniform_real_distribution<double> weight(-1.0, 1.0);

    GeneralSssRepresentation rep;
    rep.transitions.reserve(steps);
    rep.in_weights = Matrix(steps, N);
    rep.out_weights = Matrix(steps, N);
    rep.ranks.resize(steps);
    for (std::size_t t = 0; t < steps; ++t) {
        if (t == 0) {
            rep.transitions.push_back(linalg::from_eigen(Eigen::MatrixXd::Identity(N, N)));
        } else {
            Eigen::MatrixXd g(N, N);
            for (Eigen::Index i = 0; i < g.size(); ++i) {
                g.data()[i] = gauss(rng);
            }
            const Eigen::MatrixXd q = Eigen::HouseholderQR<Eigen::MatrixXd>(g).householderQ();
            Eigen::VectorXd s(N);
            for (Eigen::Index i = 0; i < s.size(); ++i) {
                s(i) = scale(rng);
            }
            rep.transitions.push_back(linalg::from_eigen(q * s.asDiagonal()));
        }
        for (std::size_t n = 0; n < N; ++n) {
            rep.in_weights(t, n) = weight(rng);
            rep.out_weights(t, n) = weight(rng);
        }
        rep.ranks[t] = std::min({N, t + 1, steps - t});
    }
    return rep;
}

}  // namespace ssd
