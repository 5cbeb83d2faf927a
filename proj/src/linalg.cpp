#include "ssdlab/linalg.hpp"

#include <cmath>

namespace ssd {

std::string_view to_string(Errc code) noexcept
{
    switch (code) {
    case Errc::invalid_argument: return "invalid-argument";
    case Errc::shape_mismatch: return "shape-mismatch";
    case Errc::size_exceeded: return "size-exceeded";
    case Errc::parse_error: return "parse-error";
    case Errc::not_scalar_identity: return "not-scalar-identity";
    case Errc::zero_gain: return "zero-gain";
    case Errc::unstable_scaling: return "unstable-scaling";
    case Errc::not_representable: return "not-representable";
    case Errc::reconstruction_failure: return "reconstruction-failure";
    case Errc::rank_exceeds_n: return "rank-exceeds-N";
    case Errc::inconsistent_transition: return "inconsistent-transition";
    case Errc::degenerate_grid: return "degenerate-grid";
    }
    return "unknown";
}

}  // namespace ssd

namespace ssd::linalg {

Eigen::MatrixXd to_eigen(const Matrix& m)
{
    Eigen::MatrixXd out(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            out(r, c) = m(r, c);
        }
    }
    return out;
}

Matrix from_eigen(const Eigen::MatrixXd& m)
{
    Matrix out(m.rows(), m.cols());
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            out(r, c) = m(r, c);
        }
    }
    return out;
}

Svd thin_svd(const Eigen::MatrixXd& a)
{
    Svd out;
    if (a.size() == 0) {
        out.u.resize(a.rows(), 0);
        out.v.resize(a.cols(), 0);
        return out;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    out.u = svd.matrixU();
    out.s = svd.singularValues();
    out.v = svd.matrixV();
    for (Eigen::Index k = 0; k < out.s.size(); ++k) {
        Eigen::Index pivot = 0;
        out.u.col(k).cwiseAbs().maxCoeff(&pivot);
        if (out.u(pivot, k) < 0.0) {
            out.u.col(k) *= -1.0;
            out.v.col(k) *= -1.0;
        }
    }
    return out;
}

std::size_t numerical_rank(const Eigen::VectorXd& singular_values, double eps)
{
    if (singular_values.size() == 0 || !(singular_values(0) > 0.0)) {
        return 0;
    }
    const double cut = eps * singular_values(0);
    std::size_t rank = 0;
    for (Eigen::Index k = 0; k < singular_values.size(); ++k) {
        if (singular_values(k) > cut) {
            ++rank;
        }
    }
    return rank;
}

std::size_t numerical_rank(const Eigen::MatrixXd& a, double eps)
{
    if (a.size() == 0) {
        return 0;
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
    return numerical_rank(svd.singularValues(), eps);
}

Eigen::MatrixXd least_squares(const Eigen::MatrixXd& a, const Eigen::MatrixXd& rhs, double eps)
{
    Eigen::MatrixXd x = Eigen::MatrixXd::Zero(a.cols(), rhs.cols());
    if (a.size() == 0) {
        return x;
    }
    const Svd svd = thin_svd(a);
    const std::size_t rank = numerical_rank(svd.s, eps);
    for (std::size_t k = 0; k < rank; ++k) {
        const auto ki = static_cast<Eigen::Index>(k);
        x += svd.v.col(ki) * ((svd.u.col(ki).transpose() * rhs) / svd.s(ki));
    }
    return x;
}

double span_residual(const Eigen::MatrixXd& a, const Eigen::VectorXd& v, double eps)
{
    if (a.cols() == 0) {
        return v.norm();
    }
    const Svd svd = thin_svd(a);
    const std::size_t rank = numerical_rank(svd.s, eps);
    Eigen::VectorXd r = v;
    for (std::size_t k = 0; k < rank; ++k) {
        const auto ki = static_cast<Eigen::Index>(k);
        r -= svd.u.col(ki) * svd.u.col(ki).dot(v);
    }
    return r.norm();
}

}  // namespace ssd::linalg
