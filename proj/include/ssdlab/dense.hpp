#pragma once

#include <cassert>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "ssdlab/error.hpp"

namespace ssd {

/// Row-major dense matrix over an arbitrary scalar type.
///
/// The element type is a template parameter so the execution kernels can run
/// unchanged over `double` and over the instrumented scalar used for FLOP
/// counting.
template <class T>
class DenseMatrix {
public:
    using value_type = T;

    DenseMatrix() = default;

    DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    DenseMatrix(std::size_t rows, std::size_t cols, const T& fill)
        : rows_(rows), cols_(cols), data_(rows * cols, fill)
    {
    }

    DenseMatrix(std::initializer_list<std::initializer_list<T>> rows)
        : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0)
    {
        data_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            if (r.size() != cols_) {
                throw Error(Errc::shape_mismatch, "ragged initializer rows");
            }
            data_.insert(data_.end(), r.begin(), r.end());
        }
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return data_.size(); }
    bool empty() const noexcept { return data_.empty(); }

    T& operator()(std::size_t r, std::size_t c)
    {
        assert(r < rows_ && c < cols_);
        return data_[r * cols_ + c];
    }

    const T& operator()(std::size_t r, std::size_t c) const
    {
        assert(r < rows_ && c < cols_);
        return data_[r * cols_ + c];
    }

    std::span<T> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const T> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    std::span<T> values() { return data_; }
    std::span<const T> values() const { return data_; }

    friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using Matrix = DenseMatrix<double>;

/// Read-only view of one column of a row-major matrix, indexable like a vector.
template <class T>
class ColumnView {
public:
    ColumnView(const DenseMatrix<T>& m, std::size_t col) : m_(&m), col_(col) {}

    const T& operator[](std::size_t r) const { return (*m_)(r, col_); }
    std::size_t size() const noexcept { return m_->rows(); }

private:
    const DenseMatrix<T>* m_;
    std::size_t col_;
};

inline double frobenius_norm(const Matrix& m)
{
    double s = 0.0;
    for (double v : m.values()) {
        s += v * v;
    }
    return std::sqrt(s);
}

/// ||a - b||_F / ||b||_F, with 0/0 taken as 0 and x/0 as ||a - b||_F.
inline double relative_error(const Matrix& a, const Matrix& b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw Error(Errc::shape_mismatch, "relative_error operands differ in shape");
    }
    double diff = 0.0;
    double ref = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a.values()[i] - b.values()[i];
        diff += d * d;
        ref += b.values()[i] * b.values()[i];
    }
    if (ref == 0.0) {
        return std::sqrt(diff);
    }
    return std::sqrt(diff / ref);
}

}  // namespace ssd
