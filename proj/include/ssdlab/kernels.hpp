#pragma once

// Scalar-generic execution kernels shared by the public double-precision API
// and the FLOP-counting harness. Every kernel evaluates a*h + b*x as two
// multiplies and an add, in the same order, so the recurrence and the
// scale/scan/scale pipeline produce bitwise-identical results.

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

#include "ssdlab/dense.hpp"

namespace ssd::kernels {

/// Diagonal SSM parameters over an arbitrary scalar; each array is T x N.
template <class S>
struct DiagonalParams {
    const DenseMatrix<S>& gains;
    const DenseMatrix<S>& in_weights;
    const DenseMatrix<S>& out_weights;
};

/// f(x, Y): row t of the result is x_t * (row t of Y).
template <class S, class Vec>
void scale_rows(const Vec& x, const DenseMatrix<S>& y, DenseMatrix<S>& out, std::size_t col)
{
    for (std::size_t t = 0; t < y.rows(); ++t) {
        out(t, col) = x[t] * y(t, col);
    }
}

/// g(x, Y): out_1 = Y_1, out_{t+1} = x_{t+1} * out_t + Y_{t+1}. x_1 is not read.
template <class S, class Vec>
void scan(const Vec& x, const DenseMatrix<S>& y, DenseMatrix<S>& out, std::size_t col)
{
    if (y.rows() == 0) {
        return;
    }
    out(0, col) = y(0, col);
    for (std::size_t t = 1; t < y.rows(); ++t) {
        out(t, col) = x[t] * out(t - 1, col) + y(t, col);
    }
}

/// h_t = A^t h_{t-1} + b_t x_t with h_0 = 0, y_t = c_t^T h_t.
template <class S>
DenseMatrix<S> recurrence(const DiagonalParams<S>& p, const DenseMatrix<S>& x)
{
    const std::size_t T = x.rows();
    const std::size_t N = p.gains.cols();
    const std::size_t d = x.cols();
    DenseMatrix<S> state(N, d);
    DenseMatrix<S> y(T, d);
    for (std::size_t t = 0; t < T; ++t) {
        for (std::size_t n = 0; n < N; ++n) {
            for (std::size_t k = 0; k < d; ++k) {
                if (t == 0) {
                    state(n, k) = p.in_weights(t, n) * x(t, k);
                } else {
                    state(n, k) = p.gains(t, n) * state(n, k) + p.in_weights(t, n) * x(t, k);
                }
            }
        }
        for (std::size_t k = 0; k < d; ++k) {
            for (std::size_t n = 0; n < N; ++n) {
                y(t, k) = y(t, k) + p.out_weights(t, n) * state(n, k);
            }
        }
    }
    return y;
}

enum class SsdSchedule {
    /// Every per-mode intermediate Z^n, H^n, Y^n is held until the reduction.
    staged,
    /// One mode at a time; its intermediates are released after accumulation.
    streaming,
};

namespace detail {

/// Runs `task(i)` for i in [0, count) on up to `workers` threads.
template <class Task>
void run_tasks(std::size_t count, std::size_t workers, Task&& task)
{
    workers = std::max<std::size_t>(1, std::min(workers, count));
    if (workers == 1) {
        for (std::size_t i = 0; i < count; ++i) {
            task(i);
        }
        return;
    }
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < count; i += workers) {
                task(i);
            }
        });
    }
}

/// One (mode, channel) pipeline: Z = f(b^n, X), H = g(a^n, Z), Y^n = f(c^n, H).
template <class S>
void mode_channel(const DiagonalParams<S>& p, const DenseMatrix<S>& x, std::size_t n,
                  std::size_t k, DenseMatrix<S>& z, DenseMatrix<S>& h, DenseMatrix<S>& y_mode)
{
    scale_rows(ColumnView<S>(p.in_weights, n), x, z, k);
    scan(ColumnView<S>(p.gains, n), z, h, k);
    scale_rows(ColumnView<S>(p.out_weights, n), h, y_mode, k);
}

template <class S>
void accumulate(DenseMatrix<S>& y, const DenseMatrix<S>& y_mode)
{
    for (std::size_t t = 0; t < y.rows(); ++t) {
        for (std::size_t k = 0; k < y.cols(); ++k) {
            y(t, k) = y(t, k) + y_mode(t, k);
        }
    }
}

}  // namespace detail

/// Diagonal SSD: Y = sum_n f(c^n, g(a^n, f(b^n, X))), reduced over ascending n.
///
/// The N*d mode/channel pipelines are independent and may run on `workers`
/// threads; the reduction order is fixed, so the result does not depend on
/// the worker count.
template <class S>
DenseMatrix<S> ssd(const DiagonalParams<S>& p, const DenseMatrix<S>& x,
                   SsdSchedule schedule = SsdSchedule::staged, std::size_t workers = 1)
{
    const std::size_t T = x.rows();
    const std::size_t N = p.gains.cols();
    const std::size_t d = x.cols();
    DenseMatrix<S> y(T, d);

    if (schedule == SsdSchedule::streaming) {
        for (std::size_t n = 0; n < N; ++n) {
            DenseMatrix<S> z(T, d);
            DenseMatrix<S> h(T, d);
            DenseMatrix<S> y_mode(T, d);
            detail::run_tasks(d, workers, [&](std::size_t k) {
                detail::mode_channel(p, x, n, k, z, h, y_mode);
            });
            detail::accumulate(y, y_mode);
        }
        return y;
    }

    std::vector<DenseMatrix<S>> z;
    std::vector<DenseMatrix<S>> h;
    std::vector<DenseMatrix<S>> y_mode;
    z.reserve(N);
    h.reserve(N);
    y_mode.reserve(N);
    for (std::size_t n = 0; n < N; ++n) {
        z.emplace_back(T, d);
        h.emplace_back(T, d);
        y_mode.emplace_back(T, d);
    }
    detail::run_tasks(N * d, workers, [&](std::size_t task) {
        const std::size_t n = task / d;
        const std::size_t k = task % d;
        detail::mode_channel(p, x, n, k, z[n], h[n], y_mode[n]);
    });
    for (std::size_t n = 0; n < N; ++n) {
        detail::accumulate(y, y_mode[n]);
    }
    return y;
}

/// Kernel matrix M(j, i) = sum_n c_j,n * (a_j,n ... a_{i+1},n) * b_i,n for
/// j >= i, built column by column with running products.
template <class S>
DenseMatrix<S> kernel_matrix(const DiagonalParams<S>& p)
{
    const std::size_t T = p.gains.rows();
    const std::size_t N = p.gains.cols();
    DenseMatrix<S> m(T, T);
    for (std::size_t i = 0; i < T; ++i) {
        for (std::size_t n = 0; n < N; ++n) {
            S running = p.in_weights(i, n);
            m(i, i) = m(i, i) + p.out_weights(i, n) * running;
            for (std::size_t j = i + 1; j < T; ++j) {
                running = p.gains(j, n) * running;
                m(j, i) = m(j, i) + p.out_weights(j, n) * running;
            }
        }
    }
    return m;
}

/// Y = M X for lower-triangular M, touching only s <= t.
template <class S>
DenseMatrix<S> lower_matmul(const DenseMatrix<S>& m, const DenseMatrix<S>& x)
{
    const std::size_t T = x.rows();
    const std::size_t d = x.cols();
    DenseMatrix<S> y(T, d);
    for (std::size_t t = 0; t < T; ++t) {
        for (std::size_t s = 0; s <= t; ++s) {
            for (std::size_t k = 0; k < d; ++k) {
                y(t, k) = y(t, k) + m(t, s) * x(s, k);
            }
        }
    }
    return y;
}

}  // namespace ssd::kernels
