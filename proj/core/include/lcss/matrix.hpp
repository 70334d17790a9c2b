#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "lcss/integer.hpp"

namespace lcss {

/// Dense row-major matrix over the integers.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols);
    IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

    static IntMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    bool is_zero() const;
    bool is_identity() const;

    IntMatrix transpose() const;
    IntMatrix select_rows(const std::vector<std::size_t>& rows) const;
    IntMatrix select_cols(const std::vector<std::size_t>& cols) const;

    /// Horizontal concatenation [*this | rhs]; row counts must agree.
    IntMatrix hconcat(const IntMatrix& rhs) const;

    void swap_rows(std::size_t a, std::size_t b);
    void swap_cols(std::size_t a, std::size_t b);
    /// row[target] += factor * row[source]
    void add_row_multiple(std::size_t target, std::size_t source, const Integer& factor);
    /// col[target] += factor * col[source]
    void add_col_multiple(std::size_t target, std::size_t source, const Integer& factor);
    void negate_row(std::size_t r);
    void negate_col(std::size_t c);

    std::string to_string() const;

    friend bool operator==(const IntMatrix& a, const IntMatrix& b);
    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Integer> data_;
};

}  // namespace lcss
