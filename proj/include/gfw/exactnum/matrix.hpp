#ifndef GFW_EXACTNUM_MATRIX_HPP
#define GFW_EXACTNUM_MATRIX_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "gfw/exactnum/integer.hpp"

namespace gfw {

/// Row-major dense matrix.
template <class T>
class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, const T& fill = T(0))
        : rows_(rows), cols_(cols), a_(rows * cols, fill) {}
    Matrix(std::initializer_list<std::initializer_list<T>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        for (const auto& r : init) a_.insert(a_.end(), r.begin(), r.end());
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    T& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    std::vector<T> column(std::size_t j) const {
        std::vector<T> v(rows_);
        for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
        return v;
    }
    void set_column(std::size_t j, const std::vector<T>& v) {
        for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        Matrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k)
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
        return c;
    }
    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }

  private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<T> a_;
};

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;

Rational determinant(RatMatrix m);
Integer determinant(const IntMatrix& m);
std::size_t rank(RatMatrix m);

/// Solve m x = b for square invertible m; nullopt when singular.
std::optional<std::vector<Rational>> solve(RatMatrix m, std::vector<Rational> b);

/// Column-style Hermite normal form: H = A U with U unimodular, the
/// columns of A (read as lattice vectors) spanning the same Z-module as
/// those of H. For a square matrix H is upper triangular with a positive
/// diagonal and 0 <= H(i, j) < H(i, i) for j > i.
struct HnfResult {
    IntMatrix h;
    IntMatrix transform;
};

/// Requires full column rank; throws DomainError otherwise.
HnfResult hnf(const IntMatrix& basis);

/// HNF basis (square, rows() columns) of the lattice spanned by an
/// arbitrary generating set given as columns. Throws if the generators do
/// not span a full-rank lattice.
IntMatrix lattice_basis(const IntMatrix& generators);

/// Coordinates of v in the basis given by an upper-triangular HNF, or
/// nullopt when v is not in the lattice.
std::optional<std::vector<Integer>> lattice_coordinates(const IntMatrix& hnf_basis,
                                                        const std::vector<Integer>& v);

}  // namespace gfw

#endif
