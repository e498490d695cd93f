#include "puremin/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace puremin {

namespace {

Int abs_int(const Int& a) { return a < 0 ? Int(-a) : a; }

// Integer matrices with explicit transform bookkeeping. The invariant
// maintained by every operation is cur == U * original * V.
struct IntSnfState {
    int rows, cols;
    std::vector<std::vector<Int>> a, u, u_inv, v, v_inv;

    IntSnfState(const std::vector<std::vector<Int>>& m, int nrows, int ncols) {
        rows = nrows;
        cols = ncols;
        a = m;
        auto ident = [](int n) {
            std::vector<std::vector<Int>> id(n, std::vector<Int>(n, 0));
            for (int i = 0; i < n; ++i) id[i][i] = 1;
            return id;
        };
        u = ident(rows);
        u_inv = ident(rows);
        v = ident(cols);
        v_inv = ident(cols);
    }

    void swap_rows(int i, int k) {
        if (i == k) return;
        std::swap(a[i], a[k]);
        std::swap(u[i], u[k]);
        for (int r = 0; r < rows; ++r) std::swap(u_inv[r][i], u_inv[r][k]);
    }

    void swap_cols(int j, int k) {
        if (j == k) return;
        for (int r = 0; r < rows; ++r) std::swap(a[r][j], a[r][k]);
        for (int r = 0; r < cols; ++r) std::swap(v[r][j], v[r][k]);
        std::swap(v_inv[j], v_inv[k]);
    }

    // row_i += q * row_k
    void row_axpy(int i, int k, const Int& q) {
        if (q == 0) return;
        for (int j = 0; j < cols; ++j) a[i][j] += q * a[k][j];
        for (int j = 0; j < rows; ++j) u[i][j] += q * u[k][j];
        for (int r = 0; r < rows; ++r) u_inv[r][k] -= q * u_inv[r][i];
    }

    // col_j += q * col_k
    void col_axpy(int j, int k, const Int& q) {
        if (q == 0) return;
        for (int i = 0; i < rows; ++i) a[i][j] += q * a[i][k];
        for (int i = 0; i < cols; ++i) v[i][j] += q * v[i][k];
        for (int c = 0; c < cols; ++c) v_inv[k][c] -= q * v_inv[j][c];
    }

    void negate_row(int i) {
        for (int j = 0; j < cols; ++j) a[i][j] = -a[i][j];
        for (int j = 0; j < rows; ++j) u[i][j] = -u[i][j];
        for (int r = 0; r < rows; ++r) u_inv[r][i] = -u_inv[r][i];
    }
};

// quotient minimizing |a - q*b|
Int balanced_quotient(const Int& a, const Int& b) {
    Int q = a / b;
    Int r = a - q * b;
    if (2 * abs_int(r) > abs_int(b)) q += (r < 0) == (b < 0) ? 1 : -1;
    return q;
}

void integer_smith(IntSnfState& s) {
    const int n = std::min(s.rows, s.cols);
    for (int t = 0; t < n; ++t) {
        for (;;) {
            // smallest nonzero pivot in the trailing block, lexicographic ties
            int pi = -1, pj = -1;
            Int best = 0;
            for (int i = t; i < s.rows; ++i)
                for (int j = t; j < s.cols; ++j) {
                    if (s.a[i][j] == 0) continue;
                    Int m = abs_int(s.a[i][j]);
                    if (pi < 0 || m < best) {
                        best = m;
                        pi = i;
                        pj = j;
                    }
                }
            if (pi < 0) return;  // trailing block already zero
            s.swap_rows(t, pi);
            s.swap_cols(t, pj);

            bool restart = false;
            for (int i = t + 1; i < s.rows; ++i) {
                if (s.a[i][t] == 0) continue;
                s.row_axpy(i, t, -balanced_quotient(s.a[i][t], s.a[t][t]));
                if (s.a[i][t] != 0) restart = true;
            }
            if (restart) continue;
            for (int j = t + 1; j < s.cols; ++j) {
                if (s.a[t][j] == 0) continue;
                s.col_axpy(j, t, -balanced_quotient(s.a[t][j], s.a[t][t]));
                if (s.a[t][j] != 0) restart = true;
            }
            if (restart) continue;

            // pivot must divide the trailing block
            bool fixed = false;
            for (int i = t + 1; i < s.rows && !fixed; ++i)
                for (int j = t + 1; j < s.cols && !fixed; ++j)
                    if (s.a[i][j] % s.a[t][t] != 0) {
                        s.row_axpy(t, i, 1);
                        fixed = true;
                    }
            if (!fixed) break;
        }
        if (s.a[t][t] < 0) s.negate_row(t);
    }
}

Matrix to_ring_matrix(const RingSpec& ring, const std::vector<std::vector<Int>>& m, int r,
                      int c) {
    Matrix out(ring, r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) out.set(i, j, ring.from_int(m[i][j]));
    return out;
}

}  // namespace

SmithResult smith_normal_form(const Matrix& A) {
    const RingSpec& ring = A.ring();
    const int rows = A.rows(), cols = A.cols();

    // Lift to an integer matrix. Residues use canonical representatives; the
    // localizations clear denominators with a single unit scalar.
    Int scale = 1;
    if (ring.kind() == RingKind::invert_primes || ring.kind() == RingKind::local_at) {
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) {
                const Int& d = A.at(i, j).den;
                scale = scale / boost::multiprecision::gcd(scale, d) * d;
            }
    }
    std::vector<std::vector<Int>> lifted(rows, std::vector<Int>(cols, 0));
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            const RingElem& e = A.at(i, j);
            lifted[i][j] = e.num * (scale / e.den);
        }

    IntSnfState st(lifted, rows, cols);
    integer_smith(st);

    SmithResult res{to_ring_matrix(ring, st.u, rows, rows),
                    to_ring_matrix(ring, st.u_inv, rows, rows), Matrix(ring, rows, cols),
                    to_ring_matrix(ring, st.v, cols, cols),
                    to_ring_matrix(ring, st.v_inv, cols, cols), {}};

    RingElem inv_scale =
        scale == 1 ? ring.one() : ring.inverse_of_unit(ring.from_int(scale));
    const int n = std::min(rows, cols);
    for (int i = 0; i < n; ++i) {
        RingElem d = ring.mul(ring.from_int(st.a[i][i]), inv_scale);
        RingElem assoc = ring.canonical_associate(d);
        if (d != assoc) {
            // absorb the unit into row i of U
            RingElem w = ring.inverse_of_unit(ring.unit_for_associate(d));
            for (int j = 0; j < rows; ++j) {
                res.U.set(i, j, ring.mul(res.U.at(i, j), w));
                res.U_inv.set(j, i, ring.mul(res.U_inv.at(j, i), ring.inverse_of_unit(w)));
            }
            d = assoc;
        }
        res.D.set(i, i, d);
        res.divisors.push_back(d);
    }
    return res;
}

std::vector<RingElem> elementary_divisors(const Matrix& A) {
    return smith_normal_form(A).divisors;
}

std::optional<Matrix> solve_linear(const Matrix& A, const Matrix& B) {
    const RingSpec& ring = A.ring();
    if (ring != B.ring() || A.rows() != B.rows())
        throw std::invalid_argument("solve_linear: shape mismatch");
    SmithResult s = smith_normal_form(A);
    Matrix C = s.U * B;
    Matrix Y(ring, A.cols(), B.cols());
    const int n = std::min(A.rows(), A.cols());
    for (int i = 0; i < A.rows(); ++i) {
        const RingElem d = i < n ? s.D.at(i, i) : ring.zero();
        for (int j = 0; j < B.cols(); ++j) {
            if (ring.is_zero(d)) {
                if (!ring.is_zero(C.at(i, j))) return std::nullopt;
                continue;  // free coordinate, keep zero
            }
            auto y = ring.try_divide(C.at(i, j), d);
            if (!y) return std::nullopt;
            Y.set(i, j, *y);
        }
    }
    return s.V * Y;
}

Matrix kernel(const Matrix& A) {
    const RingSpec& ring = A.ring();
    SmithResult s = smith_normal_form(A);
    const int n = std::min(A.rows(), A.cols());
    std::vector<Matrix> cols;
    for (int i = 0; i < A.cols(); ++i) {
        RingElem gen = i < n ? ring.annihilator_gen(s.D.at(i, i)) : ring.one();
        if (ring.is_zero(gen)) continue;
        Matrix col(ring, A.cols(), 1);
        col.set(i, 0, gen);
        cols.push_back(s.V * col);
    }
    Matrix K(ring, A.cols(), static_cast<int>(cols.size()));
    for (size_t j = 0; j < cols.size(); ++j)
        for (int i = 0; i < A.cols(); ++i) K.set(i, static_cast<int>(j), cols[j].at(i, 0));
    return K;
}

bool in_column_span(const Matrix& A, const Matrix& B) {
    return solve_linear(A, B).has_value();
}

int MatEqSystem::add_unknown(int rows, int cols) {
    shapes_.emplace_back(rows, cols);
    return static_cast<int>(shapes_.size()) - 1;
}

void MatEqSystem::add_equation(std::vector<Term> terms, Matrix rhs) {
    for (const Term& t : terms) {
        if (t.var < 0 || t.var >= static_cast<int>(shapes_.size()))
            throw std::invalid_argument("MatEqSystem: unknown variable");
        auto [vr, vc] = shapes_[t.var];
        int lr = t.left ? t.left->rows() : vr;
        int lc = t.left ? t.left->cols() : vr;
        int rr = t.right ? t.right->rows() : vc;
        int rc = t.right ? t.right->cols() : vc;
        if (lc != vr || rr != vc || lr != rhs.rows() || rc != rhs.cols())
            throw std::invalid_argument("MatEqSystem: term shape mismatch");
    }
    eqs_.push_back(Equation{std::move(terms), std::move(rhs)});
}

void MatEqSystem::add_simple(int var, std::optional<Matrix> left,
                             std::optional<Matrix> right, Matrix rhs) {
    add_equation({Term{var, std::move(left), std::move(right)}}, std::move(rhs));
}

Matrix MatEqSystem::stacked_matrix(std::vector<int>* offsets, int* total) const {
    *total = 0;
    for (auto [r, c] : shapes_) {
        offsets->push_back(*total);
        *total += r * c;
    }
    int eq_rows = 0;
    for (const auto& e : eqs_) eq_rows += e.rhs.rows() * e.rhs.cols();
    Matrix big(ring_, eq_rows, *total);
    int row0 = 0;
    for (const auto& e : eqs_) {
        for (const Term& t : e.terms) {
            auto [vr, vc] = shapes_[t.var];
            Matrix L = t.left ? *t.left : Matrix::identity(ring_, vr);
            Matrix R = t.right ? *t.right : Matrix::identity(ring_, vc);
            Matrix block = Matrix::kron(R.transposed(), L);
            for (int i = 0; i < block.rows(); ++i)
                for (int j = 0; j < block.cols(); ++j)
                    big.set(row0 + i, (*offsets)[t.var] + j,
                            ring_.add(big.at(row0 + i, (*offsets)[t.var] + j), block.at(i, j)));
        }
        row0 += e.rhs.rows() * e.rhs.cols();
    }
    return big;
}

std::optional<std::vector<Matrix>> MatEqSystem::solve() const {
    std::vector<int> offsets;
    int total = 0;
    Matrix big = stacked_matrix(&offsets, &total);
    Matrix rhs(ring_, big.rows(), 1);
    int row0 = 0;
    for (const auto& e : eqs_) {
        Matrix v = e.rhs.vec();
        for (int i = 0; i < v.rows(); ++i) rhs.set(row0 + i, 0, v.at(i, 0));
        row0 += v.rows();
    }
    auto sol = solve_linear(big, rhs);
    if (!sol) return std::nullopt;
    std::vector<Matrix> out;
    for (size_t v = 0; v < shapes_.size(); ++v) {
        auto [r, c] = shapes_[v];
        Matrix piece(ring_, r * c, 1);
        for (int i = 0; i < r * c; ++i) piece.set(i, 0, sol->at(offsets[v] + i, 0));
        out.push_back(Matrix::unvec(ring_, piece, r, c));
    }
    return out;
}

std::vector<std::vector<Matrix>> MatEqSystem::null_space() const {
    std::vector<int> offsets;
    int total = 0;
    Matrix big = stacked_matrix(&offsets, &total);
    Matrix K = kernel(big);
    std::vector<std::vector<Matrix>> out;
    for (int col = 0; col < K.cols(); ++col) {
        std::vector<Matrix> entry;
        for (size_t v = 0; v < shapes_.size(); ++v) {
            auto [r, c] = shapes_[v];
            Matrix piece(ring_, r * c, 1);
            for (int i = 0; i < r * c; ++i) piece.set(i, 0, K.at(offsets[v] + i, col));
            entry.push_back(Matrix::unvec(ring_, piece, r, c));
        }
        out.push_back(std::move(entry));
    }
    return out;
}

}  // namespace puremin
