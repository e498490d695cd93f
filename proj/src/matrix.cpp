#include "puremin/matrix.hpp"

#include <sstream>
#include <stdexcept>

namespace puremin {

Matrix::Matrix(RingSpec ring, int rows, int cols)
    : ring_(std::move(ring)), rows_(rows), cols_(cols) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix shape");
    e_.assign(static_cast<size_t>(rows) * cols, ring_.zero());
}

int Matrix::index(int r, int c) const {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
        throw std::out_of_range("matrix index");
    return r * cols_ + c;
}

Matrix Matrix::identity(const RingSpec& ring, int n) {
    Matrix m(ring, n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, ring.one());
    return m;
}

Matrix Matrix::from_int_rows(const RingSpec& ring,
                             const std::vector<std::vector<long long>>& rows) {
    int r = static_cast<int>(rows.size());
    int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
    Matrix m(ring, r, c);
    for (int i = 0; i < r; ++i) {
        if (static_cast<int>(rows[i].size()) != c)
            throw std::invalid_argument("ragged matrix rows");
        for (int j = 0; j < c; ++j) m.set(i, j, ring.from_int(rows[i][j]));
    }
    return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
    if (ring_ != o.ring_) throw std::invalid_argument("ring mismatch in product");
    if (cols_ != o.rows_) throw std::invalid_argument("shape mismatch in product");
    Matrix out(ring_, rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const RingElem& a = at(i, k);
            if (ring_.is_zero(a)) continue;
            for (int j = 0; j < o.cols_; ++j) {
                const RingElem& b = o.at(k, j);
                if (ring_.is_zero(b)) continue;
                out.set(i, j, ring_.add(out.at(i, j), ring_.mul(a, b)));
            }
        }
    return out;
}

Matrix Matrix::operator+(const Matrix& o) const {
    if (ring_ != o.ring_ || rows_ != o.rows_ || cols_ != o.cols_)
        throw std::invalid_argument("shape/ring mismatch in sum");
    Matrix out(ring_, rows_, cols_);
    for (size_t i = 0; i < e_.size(); ++i) out.e_[i] = ring_.add(e_[i], o.e_[i]);
    return out;
}

Matrix Matrix::operator-(const Matrix& o) const {
    if (ring_ != o.ring_ || rows_ != o.rows_ || cols_ != o.cols_)
        throw std::invalid_argument("shape/ring mismatch in difference");
    Matrix out(ring_, rows_, cols_);
    for (size_t i = 0; i < e_.size(); ++i) out.e_[i] = ring_.sub(e_[i], o.e_[i]);
    return out;
}

Matrix Matrix::negated() const {
    Matrix out(ring_, rows_, cols_);
    for (size_t i = 0; i < e_.size(); ++i) out.e_[i] = ring_.neg(e_[i]);
    return out;
}

Matrix Matrix::scaled(const RingElem& s) const {
    Matrix out(ring_, rows_, cols_);
    for (size_t i = 0; i < e_.size(); ++i) out.e_[i] = ring_.mul(e_[i], s);
    return out;
}

Matrix Matrix::transposed() const {
    Matrix out(ring_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) out.set(j, i, at(i, j));
    return out;
}

bool Matrix::is_zero() const {
    for (const auto& v : e_)
        if (!ring_.is_zero(v)) return false;
    return true;
}

bool Matrix::is_identity() const {
    if (rows_ != cols_) return false;
    return *this == identity(ring_, rows_);
}

bool Matrix::operator==(const Matrix& o) const {
    return ring_ == o.ring_ && rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
}

Matrix Matrix::hstack(const Matrix& right) const {
    if (ring_ != right.ring_ || rows_ != right.rows_)
        throw std::invalid_argument("hstack shape mismatch");
    Matrix out(ring_, rows_, cols_ + right.cols_);
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) out.set(i, j, at(i, j));
        for (int j = 0; j < right.cols_; ++j) out.set(i, cols_ + j, right.at(i, j));
    }
    return out;
}

Matrix Matrix::vstack(const Matrix& below) const {
    if (ring_ != below.ring_ || cols_ != below.cols_)
        throw std::invalid_argument("vstack shape mismatch");
    Matrix out(ring_, rows_ + below.rows_, cols_);
    for (int j = 0; j < cols_; ++j) {
        for (int i = 0; i < rows_; ++i) out.set(i, j, at(i, j));
        for (int i = 0; i < below.rows_; ++i) out.set(rows_ + i, j, below.at(i, j));
    }
    return out;
}

Matrix Matrix::take_rows(int first, int count) const {
    std::vector<int> idx;
    for (int i = 0; i < count; ++i) idx.push_back(first + i);
    return select_rows(idx);
}

Matrix Matrix::take_cols(int first, int count) const {
    std::vector<int> idx;
    for (int i = 0; i < count; ++i) idx.push_back(first + i);
    return select_cols(idx);
}

Matrix Matrix::select_rows(const std::vector<int>& idx) const {
    Matrix out(ring_, static_cast<int>(idx.size()), cols_);
    for (size_t i = 0; i < idx.size(); ++i)
        for (int j = 0; j < cols_; ++j) out.set(static_cast<int>(i), j, at(idx[i], j));
    return out;
}

Matrix Matrix::select_cols(const std::vector<int>& idx) const {
    Matrix out(ring_, rows_, static_cast<int>(idx.size()));
    for (int i = 0; i < rows_; ++i)
        for (size_t j = 0; j < idx.size(); ++j) out.set(i, static_cast<int>(j), at(i, idx[j]));
    return out;
}

Matrix Matrix::without_row_col(int r, int c) const {
    std::vector<int> ri, ci;
    for (int i = 0; i < rows_; ++i)
        if (i != r) ri.push_back(i);
    for (int j = 0; j < cols_; ++j)
        if (j != c) ci.push_back(j);
    return select_rows(ri).select_cols(ci);
}

Matrix Matrix::kron(const Matrix& a, const Matrix& b) {
    if (a.ring_ != b.ring_) throw std::invalid_argument("ring mismatch in kron");
    Matrix out(a.ring_, a.rows_ * b.rows_, a.cols_ * b.cols_);
    for (int i = 0; i < a.rows_; ++i)
        for (int j = 0; j < a.cols_; ++j) {
            const RingElem& v = a.at(i, j);
            if (a.ring_.is_zero(v)) continue;
            for (int k = 0; k < b.rows_; ++k)
                for (int l = 0; l < b.cols_; ++l)
                    out.set(i * b.rows_ + k, j * b.cols_ + l, a.ring_.mul(v, b.at(k, l)));
        }
    return out;
}

Matrix Matrix::vec() const {
    Matrix out(ring_, rows_ * cols_, 1);
    for (int j = 0; j < cols_; ++j)
        for (int i = 0; i < rows_; ++i) out.set(j * rows_ + i, 0, at(i, j));
    return out;
}

Matrix Matrix::unvec(const RingSpec& ring, const Matrix& v, int rows, int cols) {
    if (v.rows() != rows * cols || v.cols() != 1)
        throw std::invalid_argument("unvec shape mismatch");
    Matrix out(ring, rows, cols);
    for (int j = 0; j < cols; ++j)
        for (int i = 0; i < rows; ++i) out.set(i, j, v.at(j * rows + i, 0));
    return out;
}

std::string Matrix::to_string() const {
    std::ostringstream s;
    s << "[";
    for (int i = 0; i < rows_; ++i) {
        s << (i ? "; " : "");
        for (int j = 0; j < cols_; ++j) s << (j ? " " : "") << ring_.to_string(at(i, j));
    }
    s << "]";
    return s.str();
}

}  // namespace puremin
