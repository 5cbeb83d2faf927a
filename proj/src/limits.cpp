#include "ssdlab/limits.hpp"

#include <cmath>
#include <limits>

#include "ssdlab/duality.hpp"
#include "ssdlab/linalg.hpp"
#include "ssdlab/sss_extract.hpp"

namespace ssd {

double CounterexampleReport::measurement(const std::string& key) const
{
    for (const auto& [name, value] : measurements) {
        if (name == key) {
            return value;
        }
    }
    throw Error(Errc::invalid_argument, "no measurement named " + key);
}

Matrix outer_product_scores(std::size_t steps)
{
    Matrix v(steps, steps);
    for (std::size_t i = 0; i < steps; ++i) {
        for (std::size_t j = 0; j < steps; ++j) {
            v(i, j) = static_cast<double>((i + 1) * (j + 1));
        }
    }
    return v;
}

Matrix row_softmax(const Matrix& scores)
{
    Matrix out(scores.rows(), scores.cols());
    for (std::size_t i = 0; i < scores.rows(); ++i) {
        double peak = -std::numeric_limits<double>::infinity();
        for (double v : scores.row(i)) {
            peak = std::max(peak, v);
        }
        double total = 0.0;
        for (std::size_t j = 0; j < scores.cols(); ++j) {
            out(i, j) = std::exp(scores(i, j) - peak);
            total += out(i, j);
        }
        for (double& v : out.row(i)) {
            v /= total;
        }
    }
    return out;
}

double softmax_log_abs_det_closed_form(std::size_t steps)
{
    const std::size_t T = steps;
    double log_det = 0.0;
    for (std::size_t i = 1; i <= T; ++i) {
        // log Z_i = log sum_j exp(i j), shifted by the largest exponent i*T.
        const double top = static_cast<double>(i * T);
        double shifted = 0.0;
        for (std::size_t j = 1; j <= T; ++j) {
            shifted += std::exp(static_cast<double>(i * j) - top);
        }
        log_det -= top + std::log(shifted);
    }
    for (std::size_t j = 1; j <= T; ++j) {
        log_det += static_cast<double>(j);
        for (std::size_t i = 1; i < j; ++i) {
            // log(e^j - e^i) = j + log(1 - e^{i-j})
            log_det += static_cast<double>(j) + std::log1p(-std::exp(static_cast<double>(i) - static_cast<double>(j)));
        }
    }
    return log_det;
}

double log_abs_det(const Matrix& m)
{
    if (m.rows() != m.cols()) {
        throw Error(Errc::shape_mismatch, "determinant needs a square matrix");
    }
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(linalg::to_eigen(m));
    const Eigen::MatrixXd& packed = lu.matrixLU();
    double out = 0.0;
    for (Eigen::Index k = 0; k < packed.rows(); ++k) {
        out += std::log(std::abs(packed(k, k)));
    }
    return out;
}

namespace {

/// True iff every contiguous square submatrix has full numerical rank.
bool contiguous_squares_full_rank(const Matrix& m, double eps)
{
    const std::size_t T = m.rows();
    for (std::size_t size = 1; size <= T; ++size) {
        for (std::size_t r0 = 0; r0 + size <= T; ++r0) {
            for (std::size_t c0 = 0; c0 + size <= T; ++c0) {
                Eigen::MatrixXd sub(size, size);
                for (std::size_t i = 0; i < size; ++i) {
                    for (std::size_t j = 0; j < size; ++j) {
                        sub(i, j) = m(r0 + i, c0 + j);
                    }
                }
                if (linalg::numerical_rank(sub, eps) != size) {
                    return false;
                }
            }
        }
    }
    return true;
}

bool integer_rank_one(std::size_t steps)
{
    // Every 2x2 minor of V vanishes in exact integer arithmetic.
    for (std::size_t i = 1; i <= steps; ++i) {
        for (std::size_t k = i + 1; k <= steps; ++k) {
            for (std::size_t j = 1; j <= steps; ++j) {
                for (std::size_t l = j + 1; l <= steps; ++l) {
                    if ((i * j) * (k * l) != (i * l) * (k * j)) {
                        return false;
                    }
                }
            }
        }
    }
    return true;
}

}  // namespace

CounterexampleReport softmax_counterexample(std::size_t steps)
{
    if (steps < 2 || steps > softmax_max_steps) {
        throw Error(Errc::size_exceeded, "softmax counterexample supports 2 <= T <= 8");
    }
    const double eps = linalg::default_eps;
    CounterexampleReport report;
    report.name = "softmax-rank-explosion";
    report.steps = steps;
    report.claim = "V(i,j) = i*j has rank 1 while row-softmax(V) has full rank T";

    const Matrix scores = outer_product_scores(steps);
    const bool exact_rank_one = integer_rank_one(steps);
    const std::size_t score_rank = linalg::numerical_rank(linalg::to_eigen(scores), eps);

    const Matrix probs = row_softmax(scores);
    double worst_row_sum = 0.0;
    for (std::size_t i = 0; i < steps; ++i) {
        double total = 0.0;
        for (double v : probs.row(i)) {
            total += v;
        }
        worst_row_sum = std::max(worst_row_sum, std::abs(total - 1.0));
    }
    const std::size_t softmax_rank = linalg::numerical_rank(linalg::to_eigen(probs), eps);
    const double closed_form = softmax_log_abs_det_closed_form(steps);
    const double direct = log_abs_det(probs);
    const double log_det_gap = std::abs(closed_form - direct) / std::max(1.0, std::abs(direct));

    report.measurements = {
        {"score_rank_exact", exact_rank_one ? 1.0 : 0.0},
        {"score_rank_numerical", static_cast<double>(score_rank)},
        {"softmax_rank_numerical", static_cast<double>(softmax_rank)},
        {"log_abs_det_closed_form", closed_form},
        {"log_abs_det_direct", direct},
        {"log_abs_det_relative_gap", log_det_gap},
        {"max_row_sum_error", worst_row_sum},
    };
    bool verdict = exact_rank_one && score_rank == 1 && softmax_rank == steps &&
                   std::isfinite(closed_form) && std::isfinite(direct) && log_det_gap <= 1e-6 &&
                   worst_row_sum <= 1e-12;
    if (steps <= submatrix_check_max_steps) {
        const bool all_full = contiguous_squares_full_rank(probs, eps);
        report.measurements.emplace_back("contiguous_square_submatrices_full_rank", all_full ? 1.0 : 0.0);
        verdict = verdict && all_full;
    }
    report.verdict = verdict;
    return report;
}

LowerTriangularMatrix non_dualizable_matrix(std::size_t steps)
{
    if (steps < 3) {
        throw Error(Errc::invalid_argument, "I_T + E^{T,1} needs T >= 3");
    }
    LowerTriangularMatrix m = identity_matrix(steps);
    m.set(steps - 1, 0, 1.0);
    return m;
}

CounterexampleReport verify_non_dualizable(std::size_t steps, std::size_t state_dim)
{
    CounterexampleReport report;
    report.name = "low-state-ssm-without-attention-dual";
    report.steps = steps;
    report.claim = "I_T + E^{T,1} is 2-semiseparable yet has no 1-SS masked attention dual of width N";
    report.measurements.emplace_back("state_dim", static_cast<double>(state_dim));
    if (steps < 3 || state_dim == 0 || steps < state_dim + 2) {
        report.applicable = false;
        report.verdict = false;
        return report;
    }

    const LowerTriangularMatrix m = non_dualizable_matrix(steps);
    const RepresentabilityReport dual = check_one_ss_dual(m, state_dim);
    std::size_t most_new = 0;
    for (const BlockNewColumns& b : dual.blocks) {
        most_new = std::max(most_new, b.count());
    }
    report.measurements.emplace_back("semiseparable_rank", static_cast<double>(semiseparable_rank(m)));
    report.measurements.emplace_back("diagonal_blocks", static_cast<double>(dual.blocks.size()));
    report.measurements.emplace_back("max_block_new_columns", static_cast<double>(most_new));
    report.measurements.emplace_back("representable", dual.representable ? 1.0 : 0.0);

    bool realized = false;
    double residual = std::numeric_limits<double>::infinity();
    try {
        const GeneralSssRepresentation rep = extract_sss(m, 2);
        residual = relative_error(materialize_sss(rep).dense(), m.dense());
        realized = true;
    } catch (const Error&) {
        realized = false;
    }
    report.measurements.emplace_back("sss_extracted_at_2", realized ? 1.0 : 0.0);
    report.measurements.emplace_back("sss_relative_residual", residual);
    report.verdict = !dual.representable && realized;
    return report;
}

}  // namespace ssd
