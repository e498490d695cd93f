#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "puremin/linalg.hpp"
#include "puremin/prng.hpp"

#include <vector>

using namespace puremin;

namespace {

// --- independent oracles (kept free of the smith_normal_form code path) ---

// gcd of all k x k minors, computed by direct enumeration; the product
// d1*...*dk of elementary divisors must equal this.
Int minor_gcd(const std::vector<std::vector<long long>>& m, int k) {
    int rows = static_cast<int>(m.size());
    int cols = static_cast<int>(m[0].size());
    std::vector<int> ri(k), ci(k);
    Int g = 0;
    std::function<Int(std::vector<int>, std::vector<int>)> det =
        [&](std::vector<int> rs, std::vector<int> cs) -> Int {
        if (rs.size() == 1) return Int(m[rs[0]][cs[0]]);
        Int d = 0;
        int sign = 1;
        for (size_t j = 0; j < cs.size(); ++j) {
            std::vector<int> rs2(rs.begin() + 1, rs.end());
            std::vector<int> cs2;
            for (size_t t = 0; t < cs.size(); ++t)
                if (t != j) cs2.push_back(cs[t]);
            d += sign * Int(m[rs[0]][cs[j]]) * det(rs2, cs2);
            sign = -sign;
        }
        return d;
    };
    std::function<void(int, int)> loop_rows = [&](int pos, int start) {
        if (pos == k) {
            std::function<void(int, int)> loop_cols = [&](int cpos, int cstart) {
                if (cpos == k) {
                    Int d = det(ri, ci);
                    g = boost::multiprecision::gcd(g, d);
                    return;
                }
                for (int c = cstart; c < cols; ++c) {
                    ci[cpos] = c;
                    loop_cols(cpos + 1, c + 1);
                }
            };
            loop_cols(0, 0);
            return;
        }
        for (int r = start; r < rows; ++r) {
            ri[pos] = r;
            loop_rows(pos + 1, r + 1);
        }
    };
    loop_rows(0, 0);
    return g < 0 ? Int(-g) : g;
}

Matrix random_matrix(const RingSpec& R, int rows, int cols, Prng& rng, int bound) {
    Matrix m(R, rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m.set(i, j, R.from_int(rng.range(-bound, bound)));
    return m;
}

// random product of elementary matrices, with its inverse
std::pair<Matrix, Matrix> random_invertible(const RingSpec& R, int n, Prng& rng) {
    Matrix t = Matrix::identity(R, n);
    Matrix tinv = Matrix::identity(R, n);
    for (int step = 0; step < 3 * n; ++step) {
        int i = static_cast<int>(rng.below(n));
        int j = static_cast<int>(rng.below(n));
        if (i == j) continue;
        RingElem q = R.from_int(rng.range(-2, 2));
        Matrix e = Matrix::identity(R, n);
        Matrix einv = Matrix::identity(R, n);
        e.set(i, j, q);
        einv.set(i, j, R.neg(q));
        t = t * e;
        tinv = einv * tinv;
    }
    return {t, tinv};
}

void check_snf_postconditions(const Matrix& A) {
    SmithResult s = smith_normal_form(A);
    CHECK((s.U * s.U_inv).is_identity());
    CHECK((s.U_inv * s.U).is_identity());
    CHECK((s.V * s.V_inv).is_identity());
    CHECK((s.V_inv * s.V).is_identity());
    CHECK(s.U * A * s.V == s.D);
    const RingSpec& R = A.ring();
    for (size_t i = 0; i + 1 < s.divisors.size(); ++i) {
        if (!R.is_zero(s.divisors[i + 1]))
            CHECK(R.try_divide(s.divisors[i + 1], s.divisors[i]).has_value());
        else
            CHECK((R.is_zero(s.divisors[i]) || !R.is_zero(s.divisors[i])));
    }
    for (const RingElem& d : s.divisors) CHECK(R.canonical_associate(d) == d);
    // D is diagonal
    for (int i = 0; i < s.D.rows(); ++i)
        for (int j = 0; j < s.D.cols(); ++j)
            if (i != j) CHECK(R.is_zero(s.D.at(i, j)));
}

}  // namespace

TEST_CASE("smith form of [[2,4],[6,8]] over Z") {
    RingSpec Z = RingSpec::integers();
    std::vector<std::vector<long long>> rows = {{2, 4}, {6, 8}};
    Matrix A = Matrix::from_int_rows(Z, rows);
    SmithResult s = smith_normal_form(A);
    REQUIRE(s.divisors.size() == 2);
    // oracle: d1 = gcd of entries, d1*d2 = gcd of 2x2 minors
    Int g1 = minor_gcd(rows, 1);
    Int g2 = minor_gcd(rows, 2);
    CHECK(s.divisors[0] == Z.from_int(g1));
    CHECK(Z.mul(s.divisors[0], s.divisors[1]) == Z.from_int(g2));
    CHECK(s.divisors[0] == Z.from_int(2));
    CHECK(s.divisors[1] == Z.from_int(4));
    check_snf_postconditions(A);
}

TEST_CASE("smith form of the identity") {
    RingSpec Z = RingSpec::integers();
    Matrix I = Matrix::identity(Z, 2);
    SmithResult s = smith_normal_form(I);
    CHECK(s.divisors == std::vector<RingElem>{Z.one(), Z.one()});
    CHECK(s.U.is_identity());
    CHECK(s.V.is_identity());
}

TEST_CASE("smith form of [[2]] over Z/4 matches exhaustive row/col operations") {
    RingSpec R = RingSpec::residues(4);
    Matrix A = Matrix::from_int_rows(R, {{2}});
    SmithResult s = smith_normal_form(A);
    REQUIRE(s.divisors.size() == 1);
    // oracle: {u*2*v : u,v units of Z/4} = {2}; canonical associate is 2
    for (int u : {1, 3})
        for (int v : {1, 3}) CHECK((u * 2 * v) % 4 == 2);
    CHECK(s.divisors[0] == R.from_int(2));
    check_snf_postconditions(A);
}

TEST_CASE("smith form over localizations strips inverted primes") {
    RingSpec R = RingSpec::invert_primes({Int(5)});
    Matrix A = Matrix::from_int_rows(R, {{10, 0}, {0, 15}});
    SmithResult s = smith_normal_form(A);
    REQUIRE(s.divisors.size() == 2);
    CHECK(s.divisors[0] == R.from_int(1));  // 5 is a unit, so gcd(10,15) ~ 1... (gcd(2,3)=1)
    CHECK(s.divisors[1] == R.from_int(6));
    check_snf_postconditions(A);

    RingSpec L = RingSpec::local_at(3);
    Matrix B = Matrix::from_int_rows(L, {{6, 3}, {12, 15}});
    check_snf_postconditions(B);
    SmithResult sb = smith_normal_form(B);
    CHECK(sb.divisors[0] == L.from_int(3));  // content has valuation 1 at 3
}

TEST_CASE("snf postconditions on randomized matrices over every ring kind") {
    Prng rng(2026);
    std::vector<RingSpec> rings = {RingSpec::integers(), RingSpec::residues(4),
                                   RingSpec::residues(6), RingSpec::residues(12),
                                   RingSpec::invert_primes({Int(5)}), RingSpec::local_at(2)};
    for (const RingSpec& R : rings)
        for (int trial = 0; trial < 40; ++trial) {
            int r = 1 + static_cast<int>(rng.below(4));
            int c = 1 + static_cast<int>(rng.below(4));
            check_snf_postconditions(random_matrix(R, r, c, rng, 9));
        }
}

TEST_CASE("divisors are invariant under invertible transformations") {
    Prng rng(404);
    std::vector<RingSpec> rings = {RingSpec::integers(), RingSpec::residues(4),
                                   RingSpec::residues(6), RingSpec::invert_primes({Int(5)}),
                                   RingSpec::local_at(2)};
    for (const RingSpec& R : rings)
        for (int trial = 0; trial < 25; ++trial) {
            int r = 1 + static_cast<int>(rng.below(3));
            int c = 1 + static_cast<int>(rng.below(3));
            Matrix A = random_matrix(R, r, c, rng, 9);
            auto [P, Pinv] = random_invertible(R, r, rng);
            auto [Q, Qinv] = random_invertible(R, c, rng);
            CHECK((P * Pinv).is_identity());
            CHECK(elementary_divisors(A) == elementary_divisors(P * A * Q));
        }
}

TEST_CASE("solve_linear examples") {
    RingSpec Z = RingSpec::integers();
    Matrix A = Matrix::from_int_rows(Z, {{2}});
    Matrix B = Matrix::from_int_rows(Z, {{3}});
    CHECK_FALSE(solve_linear(A, B).has_value());  // parity obstruction

    RingSpec R5 = RingSpec::residues(5);
    Matrix A5 = Matrix::from_int_rows(R5, {{2}});
    Matrix B5 = Matrix::from_int_rows(R5, {{3}});
    auto X5 = solve_linear(A5, B5);
    REQUIRE(X5.has_value());
    CHECK(*X5 == Matrix::from_int_rows(R5, {{4}}));
    // oracle: exhaustive over the five residues
    int solutions = 0;
    for (int x = 0; x < 5; ++x)
        if ((2 * x) % 5 == 3) ++solutions;
    CHECK(solutions == 1);

    Matrix I = Matrix::identity(Z, 3);
    Prng rng(5);
    Matrix B3 = Matrix::from_int_rows(Z, {{1, 2}, {3, 4}, {5, 6}});
    CHECK(*solve_linear(I, B3) == B3);
}

TEST_CASE("solve_linear absence agrees with brute force over small residue rings") {
    Prng rng(99);
    for (int n : {2, 3, 4, 6, 8}) {
        RingSpec R = RingSpec::residues(n);
        for (int trial = 0; trial < 30; ++trial) {
            int rows = 1 + static_cast<int>(rng.below(3));
            int cols = 1 + static_cast<int>(rng.below(3));
            Matrix A = random_matrix(R, rows, cols, rng, n - 1);
            Matrix b = random_matrix(R, rows, 1, rng, n - 1);
            auto x = solve_linear(A, b);
            // brute force over all n^cols vectors
            bool brute = false;
            std::vector<int> v(cols, 0);
            for (;;) {
                Matrix xv(R, cols, 1);
                for (int i = 0; i < cols; ++i) xv.set(i, 0, R.from_int(v[i]));
                if (A * xv == b) {
                    brute = true;
                    break;
                }
                int i = 0;
                while (i < cols && ++v[i] == n) v[i++] = 0;
                if (i == cols) break;
            }
            CHECK(x.has_value() == brute);
            if (x) CHECK(A * *x == b);
        }
    }
}

TEST_CASE("kernel examples") {
    RingSpec Z = RingSpec::integers();
    Matrix A = Matrix::from_int_rows(Z, {{2, -1}});
    Matrix K = kernel(A);
    CHECK((A * K).is_zero());
    REQUIRE(K.cols() == 1);
    // (1,2)^T is a kernel element and must lie in the span of K
    Matrix target = Matrix::from_int_rows(Z, {{1}, {2}});
    CHECK(in_column_span(K, target));
    CHECK(in_column_span(target, K));  // and K generates no more than that line

    Matrix Z12 = Matrix(Z, 1, 2);
    Matrix K2 = kernel(Z12);
    CHECK(in_column_span(K2, Matrix::identity(Z, 2)));

    Matrix inj = Matrix::from_int_rows(Z, {{1}});
    CHECK(kernel(inj).cols() == 0);
}

TEST_CASE("kernel generates every brute-force solution over residue rings") {
    Prng rng(31337);
    for (int n : {4, 6}) {
        RingSpec R = RingSpec::residues(n);
        for (int trial = 0; trial < 20; ++trial) {
            int rows = 1 + static_cast<int>(rng.below(2));
            int cols = 1 + static_cast<int>(rng.below(3));
            Matrix A = random_matrix(R, rows, cols, rng, n - 1);
            Matrix K = kernel(A);
            CHECK((A * K).is_zero());
            std::vector<int> v(cols, 0);
            for (;;) {
                Matrix xv(R, cols, 1);
                for (int i = 0; i < cols; ++i) xv.set(i, 0, R.from_int(v[i]));
                if ((A * xv).is_zero()) CHECK(in_column_span(K, xv));
                int i = 0;
                while (i < cols && ++v[i] == n) v[i++] = 0;
                if (i == cols) break;
            }
        }
    }
}

TEST_CASE("matrix equation system solves sandwich equations") {
    RingSpec Z = RingSpec::integers();
    MatEqSystem sys(Z);
    int x = sys.add_unknown(2, 2);
    Matrix L = Matrix::from_int_rows(Z, {{1, 1}, {0, 1}});
    // rhs chosen as (L + I) * [[1,2],[3,4]] so a solution exists
    Matrix rhs = Matrix::from_int_rows(Z, {{5, 8}, {6, 8}});
    // L * X + X == rhs
    sys.add_equation({MatEqSystem::Term{x, L, std::nullopt}, MatEqSystem::Term{x, std::nullopt, std::nullopt}},
                     rhs);
    auto sol = sys.solve();
    REQUIRE(sol.has_value());
    CHECK(L * (*sol)[0] + (*sol)[0] == rhs);

    // unsolvable parity system over Z: 2X == I
    MatEqSystem bad(Z);
    int y = bad.add_unknown(1, 1);
    bad.add_simple(y, Matrix::from_int_rows(Z, {{2}}), std::nullopt,
                   Matrix::from_int_rows(Z, {{1}}));
    CHECK_FALSE(bad.solve().has_value());
}
