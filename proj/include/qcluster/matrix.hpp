#ifndef QCLUSTER_MATRIX_HPP
#define QCLUSTER_MATRIX_HPP

#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "error.hpp"

namespace qcluster {

using IntVector = std::vector<std::int64_t>;

/// Small dense integer matrix, row-major.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}
    IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows)
    {
        rows_ = rows.size();
        cols_ = rows_ == 0 ? 0 : rows.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto& row : rows) {
            if (row.size() != cols_)
                throw error(errc::dimension_mismatch, "ragged matrix literal");
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static IntMatrix from_rows(const std::vector<IntVector>& rows)
    {
        IntMatrix out(rows.size(), rows.empty() ? 0 : rows.front().size());
        for (std::size_t r = 0; r < out.rows_; ++r) {
            if (rows[r].size() != out.cols_)
                throw error(errc::dimension_mismatch, "ragged matrix rows");
            for (std::size_t c = 0; c < out.cols_; ++c)
                out(r, c) = rows[r][c];
        }
        return out;
    }

    static IntMatrix identity(std::size_t n)
    {
        IntMatrix out(n, n);
        for (std::size_t i = 0; i < n; ++i)
            out(i, i) = 1;
        return out;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    std::int64_t& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    std::int64_t operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    IntVector column(std::size_t c) const
    {
        IntVector out(rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            out[r] = (*this)(r, c);
        return out;
    }

    IntVector row(std::size_t r) const
    {
        return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                         data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
    }

    IntMatrix transpose() const
    {
        IntMatrix out(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c)
                out(c, r) = (*this)(r, c);
        return out;
    }

    std::vector<IntVector> to_rows() const
    {
        std::vector<IntVector> out;
        for (std::size_t r = 0; r < rows_; ++r)
            out.push_back(row(r));
        return out;
    }

    bool is_skew_symmetric() const
    {
        if (rows_ != cols_)
            return false;
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c <= r; ++c)
                if ((*this)(r, c) != -(*this)(c, r))
                    return false;
        return true;
    }

    bool operator==(const IntMatrix&) const = default;

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b)
    {
        if (a.cols_ != b.rows_)
            throw error(errc::dimension_mismatch, "matrix product shape");
        IntMatrix out(a.rows_, b.cols_);
        for (std::size_t r = 0; r < a.rows_; ++r)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const auto x = a(r, k);
                if (x == 0)
                    continue;
                for (std::size_t c = 0; c < b.cols_; ++c)
                    out(r, c) += x * b(k, c);
            }
        return out;
    }

    /// Exact rank via fraction-free elimination.
    std::size_t rank() const
    {
        using boost::multiprecision::cpp_int;
        std::vector<std::vector<cpp_int>> a(rows_, std::vector<cpp_int>(cols_));
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c)
                a[r][c] = (*this)(r, c);
        std::size_t rank = 0;
        for (std::size_t c = 0; c < cols_ && rank < rows_; ++c) {
            std::size_t pivot = rank;
            while (pivot < rows_ && a[pivot][c] == 0)
                ++pivot;
            if (pivot == rows_)
                continue;
            std::swap(a[pivot], a[rank]);
            for (std::size_t r = rank + 1; r < rows_; ++r) {
                if (a[r][c] == 0)
                    continue;
                const cpp_int f = a[r][c];
                const cpp_int p = a[rank][c];
                for (std::size_t k = c; k < cols_; ++k)
                    a[r][k] = a[r][k] * p - a[rank][k] * f;
            }
            ++rank;
        }
        return rank;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::int64_t> data_;
};

inline std::string to_string(const IntVector& v)
{
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i != 0)
            out += ',';
        out += std::to_string(v[i]);
    }
    return out + ")";
}

inline std::string to_string(const IntMatrix& m)
{
    std::string out = "[";
    for (std::size_t r = 0; r < m.rows(); ++r) {
        if (r != 0)
            out += ',';
        out += '[';
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (c != 0)
                out += ',';
            out += std::to_string(m(r, c));
        }
        out += ']';
    }
    return out + "]";
}

inline std::ostream& operator<<(std::ostream& os, const IntMatrix& m) { return os << to_string(m); }

/// Entrywise [x]_+ = max(x, 0).
inline IntVector positive_part(const IntVector& v)
{
    IntVector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        out[i] = v[i] > 0 ? v[i] : 0;
    return out;
}

inline IntVector operator+(IntVector a, const IntVector& b)
{
    if (a.size() != b.size())
        throw error(errc::dimension_mismatch, "vector sum");
    for (std::size_t i = 0; i < a.size(); ++i)
        a[i] += b[i];
    return a;
}

inline IntVector operator-(IntVector a, const IntVector& b)
{
    if (a.size() != b.size())
        throw error(errc::dimension_mismatch, "vector difference");
    for (std::size_t i = 0; i < a.size(); ++i)
        a[i] -= b[i];
    return a;
}

inline IntVector operator-(IntVector a)
{
    for (auto& x : a)
        x = -x;
    return a;
}

inline IntVector operator*(std::int64_t s, IntVector a)
{
    for (auto& x : a)
        x *= s;
    return a;
}

inline IntVector unit_vector(std::size_t m, std::size_t k)
{
    IntVector out(m, 0);
    out.at(k) = 1;
    return out;
}

} // namespace qcluster

#endif // QCLUSTER_MATRIX_HPP
