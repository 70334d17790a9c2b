#include "lcss/matrix.hpp"

#include <sstream>
#include <stdexcept>

namespace lcss {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Integer(0))
{
}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows)
{
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
        if (row.size() != cols_)
            throw std::invalid_argument("IntMatrix: ragged initializer");
        for (long v : row)
            data_.emplace_back(v);
    }
}

IntMatrix IntMatrix::identity(std::size_t n)
{
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

bool IntMatrix::is_zero() const
{
    for (const auto& v : data_)
        if (v != 0)
            return false;
    return true;
}

bool IntMatrix::is_identity() const
{
    if (rows_ != cols_)
        return false;
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            if ((*this)(r, c) != (r == c ? 1 : 0))
                return false;
    return true;
}

IntMatrix IntMatrix::transpose() const
{
    IntMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            t(c, r) = (*this)(r, c);
    return t;
}

IntMatrix IntMatrix::select_rows(const std::vector<std::size_t>& rows) const
{
    IntMatrix m(rows.size(), cols_);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t c = 0; c < cols_; ++c)
            m(i, c) = (*this)(rows[i], c);
    return m;
}

IntMatrix IntMatrix::select_cols(const std::vector<std::size_t>& cols) const
{
    IntMatrix m(rows_, cols.size());
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t j = 0; j < cols.size(); ++j)
            m(r, j) = (*this)(r, cols[j]);
    return m;
}

IntMatrix IntMatrix::hconcat(const IntMatrix& rhs) const
{
    if (rhs.rows_ != rows_)
        throw std::invalid_argument("IntMatrix::hconcat: row count mismatch");
    IntMatrix m(rows_, cols_ + rhs.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c)
            m(r, c) = (*this)(r, c);
        for (std::size_t c = 0; c < rhs.cols_; ++c)
            m(r, cols_ + c) = rhs(r, c);
    }
    return m;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b)
{
    if (a == b)
        return;
    for (std::size_t c = 0; c < cols_; ++c)
        std::swap((*this)(a, c), (*this)(b, c));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b)
{
    if (a == b)
        return;
    for (std::size_t r = 0; r < rows_; ++r)
        std::swap((*this)(r, a), (*this)(r, b));
}

void IntMatrix::add_row_multiple(std::size_t target, std::size_t source, const Integer& factor)
{
    if (factor == 0)
        return;
    for (std::size_t c = 0; c < cols_; ++c)
        if ((*this)(source, c) != 0)
            (*this)(target, c) += factor * (*this)(source, c);
}

void IntMatrix::add_col_multiple(std::size_t target, std::size_t source, const Integer& factor)
{
    if (factor == 0)
        return;
    for (std::size_t r = 0; r < rows_; ++r)
        if ((*this)(r, source) != 0)
            (*this)(r, target) += factor * (*this)(r, source);
}

void IntMatrix::negate_row(std::size_t r)
{
    for (std::size_t c = 0; c < cols_; ++c)
        (*this)(r, c) = -(*this)(r, c);
}

void IntMatrix::negate_col(std::size_t c)
{
    for (std::size_t r = 0; r < rows_; ++r)
        (*this)(r, c) = -(*this)(r, c);
}

std::string IntMatrix::to_string() const
{
    std::ostringstream os;
    os << '[';
    for (std::size_t r = 0; r < rows_; ++r) {
        os << (r == 0 ? "[" : ",[");
        for (std::size_t c = 0; c < cols_; ++c)
            os << (c == 0 ? "" : ",") << (*this)(r, c).get_str();
        os << ']';
    }
    os << ']';
    return os.str();
}

bool operator==(const IntMatrix& a, const IntMatrix& b)
{
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b)
{
    if (a.cols_ != b.rows_)
        throw std::invalid_argument("IntMatrix: dimension mismatch in product");
    IntMatrix m(a.rows_, b.cols_);
    for (std::size_t r = 0; r < a.rows_; ++r)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Integer& x = a(r, k);
            if (x == 0)
                continue;
            for (std::size_t c = 0; c < b.cols_; ++c)
                if (b(k, c) != 0)
                    m(r, c) += x * b(k, c);
        }
    return m;
}

}  // namespace lcss
