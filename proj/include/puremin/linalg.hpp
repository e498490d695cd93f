#pragma once

#include "puremin/matrix.hpp"

#include <optional>
#include <vector>

namespace puremin {

/// Smith normal form data: U*A*V == D with U, V invertible over the ring,
/// D diagonal with canonically associated entries d1 | d2 | ... . The inverse
/// transforms are carried along so invertibility is certified by multiplication.
struct SmithResult {
    Matrix U, U_inv, D, V, V_inv;
    std::vector<RingElem> divisors;  // diagonal of D, length min(rows, cols)
};

SmithResult smith_normal_form(const Matrix& A);

/// Elementary divisors of A (diagonal of its Smith form).
std::vector<RingElem> elementary_divisors(const Matrix& A);

/// Exact solution X of A*X == B, or nullopt when none exists over the ring.
std::optional<Matrix> solve_linear(const Matrix& A, const Matrix& B);

/// Columns generating {x : A*x == 0}. Every solution is a combination of the
/// returned columns.
Matrix kernel(const Matrix& A);

/// True when every column of B lies in the column span of A.
bool in_column_span(const Matrix& A, const Matrix& B);

/// Simultaneous linear matrix equations: each equation is a sum of sandwich
/// terms L * X[v] * R (with optional L, R) equated to a constant. Used for
/// retraction, homotopy, chain-map and lifting searches; solved exactly by
/// flattening through Kronecker products.
class MatEqSystem {
  public:
    explicit MatEqSystem(RingSpec ring) : ring_(std::move(ring)) {}

    struct Term {
        int var;
        std::optional<Matrix> left;
        std::optional<Matrix> right;
    };

    int add_unknown(int rows, int cols);
    void add_equation(std::vector<Term> terms, Matrix rhs);
    /// Convenience: L * X[v] * R == rhs as a single-term equation.
    void add_simple(int var, std::optional<Matrix> left, std::optional<Matrix> right,
                    Matrix rhs);

    std::optional<std::vector<Matrix>> solve() const;

    /// Basis of the homogeneous solution space (right-hand sides ignored);
    /// each basis vector is one matrix per unknown.
    std::vector<std::vector<Matrix>> null_space() const;

  private:
    Matrix stacked_matrix(std::vector<int>* offsets, int* total) const;
    struct Equation {
        std::vector<Term> terms;
        Matrix rhs;
    };

    RingSpec ring_;
    std::vector<std::pair<int, int>> shapes_;
    std::vector<Equation> eqs_;
};

}  // namespace puremin
