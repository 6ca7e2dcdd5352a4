#pragma once

#include "sgeom/superalgebra.hpp"

#include <optional>

namespace sgeom {

template <class T> class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, const T &fill) : rows_(rows), cols_(cols), a_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    T &operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const T &operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
    void swap_rows(std::size_t i, std::size_t k) {
        for (std::size_t j = 0; j < cols_; ++j)
            std::swap((*this)(i, j), (*this)(k, j));
    }
    friend bool operator==(const Matrix &x, const Matrix &y) {
        if (x.rows_ != y.rows_ || x.cols_ != y.cols_)
            return false;
        for (std::size_t i = 0; i < x.a_.size(); ++i)
            if (!(x.a_[i] == y.a_[i]))
                return false;
        return true;
    }

  private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<T> a_;
};

using RationalMatrix = Matrix<Rational>;
using SuperMatrix = Matrix<SuperElement>;

std::size_t rank(RationalMatrix m);
std::optional<RationalMatrix> inverse(const RationalMatrix &m);
RationalMatrix multiply(const RationalMatrix &a, const RationalMatrix &b);

SuperMatrix identity_matrix(const ChartPtr &chart, std::size_t n);
SuperMatrix multiply(const SuperMatrix &a, const SuperMatrix &b);
// Gauss-Jordan with left row operations; pivot is the first unit entry of the column.
// Throws NotAUnit when no pivot exists.
SuperMatrix inverse(const SuperMatrix &m);
// determinant of the entrywise body (a matrix over a commutative Laurent ring)
SuperElement body_determinant(const SuperMatrix &m);

} // namespace sgeom
