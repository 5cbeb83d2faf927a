#pragma once

#include <cstddef>

#include <Eigen/Dense>

#include "ssdlab/dense.hpp"

namespace ssd::linalg {

/// Default relative tolerance for every rank, span and pseudo-inverse decision.
inline constexpr double default_eps = 1e-9;

Eigen::MatrixXd to_eigen(const Matrix& m);
Matrix from_eigen(const Eigen::MatrixXd& m);

/// Thin SVD `a = u * diag(s) * v^T` with singular values in descending order.
///
/// Signs are normalised so that the largest-magnitude entry of every left
/// singular vector is positive; this makes factorizations reproducible.
struct Svd {
    Eigen::MatrixXd u;
    Eigen::VectorXd s;
    Eigen::MatrixXd v;
};

Svd thin_svd(const Eigen::MatrixXd& a);

/// #{ sigma_i > eps * sigma_1 }; zero for an empty or all-zero matrix.
std::size_t numerical_rank(const Eigen::VectorXd& singular_values, double eps);
std::size_t numerical_rank(const Eigen::MatrixXd& a, double eps);

/// Minimum-norm least-squares solution of `a * x = rhs` with singular values
/// below eps * sigma_1 discarded.
Eigen::MatrixXd least_squares(const Eigen::MatrixXd& a, const Eigen::MatrixXd& rhs, double eps);

/// Euclidean norm of the component of `v` orthogonal to the numerical column
/// space of `a`. An `a` without columns spans {0}.
double span_residual(const Eigen::MatrixXd& a, const Eigen::VectorXd& v, double eps);

}  // namespace ssd::linalg
