#pragma once

#include "puremin/ring.hpp"

#include <functional>
#include <string>
#include <vector>

namespace puremin {

/// Dense exact matrix over one of the supported rings. Immutable use is the
/// norm; the mutating accessors exist for construction code.
class Matrix {
  public:
    Matrix() : Matrix(RingSpec(), 0, 0) {}
    Matrix(RingSpec ring, int rows, int cols);

    static Matrix identity(const RingSpec& ring, int n);
    static Matrix from_int_rows(const RingSpec& ring,
                                const std::vector<std::vector<long long>>& rows);

    const RingSpec& ring() const { return ring_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }

    const RingElem& at(int r, int c) const { return e_[index(r, c)]; }
    void set(int r, int c, RingElem v) { e_[index(r, c)] = std::move(v); }

    Matrix operator*(const Matrix& o) const;
    Matrix operator+(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    Matrix negated() const;
    Matrix scaled(const RingElem& s) const;
    Matrix transposed() const;

    bool is_zero() const;
    bool is_identity() const;
    bool operator==(const Matrix& o) const;
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    Matrix hstack(const Matrix& right) const;
    Matrix vstack(const Matrix& below) const;
    Matrix take_rows(int first, int count) const;
    Matrix take_cols(int first, int count) const;
    Matrix select_rows(const std::vector<int>& idx) const;
    Matrix select_cols(const std::vector<int>& idx) const;
    Matrix without_row_col(int r, int c) const;

    /// Kronecker product; vec(A X B) == kron(B^T, A) vec(X) for column-major vec.
    static Matrix kron(const Matrix& a, const Matrix& b);
    /// Column-major vectorization as a (rows*cols) x 1 matrix.
    Matrix vec() const;
    static Matrix unvec(const RingSpec& ring, const Matrix& v, int rows, int cols);

    std::string to_string() const;

  private:
    int index(int r, int c) const;

    RingSpec ring_;
    int rows_;
    int cols_;
    std::vector<RingElem> e_;
};

}  // namespace puremin
