#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "cotlab/ring_core.hpp"
#include "cotlab/rng.hpp"

using namespace cotlab;

namespace {

Matrix mat(const Ring& r, int rows, int cols, std::vector<i64> e) {
    return Matrix(r, rows, cols, std::move(e));
}

// Brute-force row span: all Z/n-combinations of the rows.
std::set<std::vector<i64>> enumerate_span(const Matrix& m) {
    const i64 n = m.ring().modulus();
    std::set<std::vector<i64>> span;
    std::vector<i64> coeff(m.rows(), 0);
    for (;;) {
        std::vector<i64> v(m.cols(), 0);
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) v[j] = (v[j] + coeff[i] * m.at(i, j)) % n;
        span.insert(v);
        int i = 0;
        for (; i < m.rows(); ++i) {
            if (++coeff[i] < n) break;
            coeff[i] = 0;
        }
        if (i == m.rows()) break;
    }
    return span;
}

Matrix random_matrix(Rng& rng, const Ring& r, int rows, int cols) {
    std::vector<i64> e(static_cast<size_t>(rows) * cols);
    for (auto& v : e) v = rng.below(r.modulus());
    return Matrix(r, rows, cols, std::move(e));
}

Matrix pad_rows(const Matrix& m, int total_rows) {
    return Matrix::vstack(m, Matrix::zero(m.ring(), total_rows - m.rows(), m.cols()));
}

}  // namespace

TEST_CASE("ring factorization and residues") {
    Ring z12(12);
    CHECK(z12.factorization() ==
          std::vector<std::pair<i64, int>>{{2, 2}, {3, 1}});
    CHECK(z12.divisors() == std::vector<i64>{1, 2, 3, 4, 6, 12});
    Residue a(z12, 7), b(z12, 8);
    CHECK((a + b).value() == 3);
    CHECK((a * b).value() == 8);
    CHECK((-a).value() == 5);
    CHECK_THROWS(Ring(1));
}

TEST_CASE("unit_multiplier normalizes to the canonical divisor") {
    for (i64 n : {4, 6, 12, 16, 36}) {
        for (i64 a = 1; a < n; ++a) {
            i64 u = unit_multiplier(a, n);
            CHECK(gcd64(u, n) == 1);
            CHECK((u * a) % n == gcd64(a, n));
        }
    }
}

TEST_CASE("howell form of the worked examples") {
    Ring z4(4);
    SUBCASE("already in form") {
        Matrix m = mat(z4, 2, 2, {2, 0, 0, 2});
        CHECK(howell_form(m).h == m);
    }
    SUBCASE("reduction with zero divisors") {
        Matrix m = mat(z4, 2, 2, {1, 1, 1, 3});
        Matrix h = howell_form(m).h;
        CHECK(h == mat(z4, 2, 2, {1, 1, 0, 2}));
        CHECK(enumerate_span(m) == enumerate_span(h));
    }
    SUBCASE("zero matrix prunes to no rows") {
        Matrix m = Matrix::zero(z4, 3, 2);
        CHECK(howell_form(m).h.rows() == 0);
    }
    SUBCASE("span may need more rows than the input") {
        Matrix m = mat(z4, 1, 2, {2, 1});
        Matrix h = howell_form(m).h;
        CHECK(h.rows() == 2);
        CHECK(enumerate_span(m) == enumerate_span(h));
    }
}

TEST_CASE("howell form: idempotence, span soundness, transform validity") {
    Rng rng(2024);
    for (i64 n : {4, 6}) {
        Ring ring(n);
        for (int trial = 0; trial < 60; ++trial) {
            int rows = 1 + static_cast<int>(rng.below(3));
            int cols = 1 + static_cast<int>(rng.below(3));
            Matrix m = random_matrix(rng, ring, rows, cols);
            HowellResult hr = howell_form(m);
            CHECK(enumerate_span(m) == enumerate_span(hr.h));
            CHECK(howell_form(hr.h).h == hr.h);
            CHECK(is_invertible(hr.u));
            CHECK(hr.u * pad_rows(m, hr.padded_rows) == pad_rows(hr.h, hr.padded_rows));
        }
    }
}

TEST_CASE("howell form is a canonical span representative") {
    // Two generating sets of the same span must produce identical forms.
    Rng rng(99);
    Ring z6(6);
    for (int trial = 0; trial < 40; ++trial) {
        Matrix m = random_matrix(rng, z6, 2, 2);
        // Shuffle generators: append a random combination, permute rows.
        Matrix comb(z6, 1, 2);
        i64 c0 = rng.below(6), c1 = rng.below(6);
        for (int j = 0; j < 2; ++j) comb.set(0, j, c0 * m.at(0, j) + c1 * m.at(1, j));
        Matrix m2 = Matrix::vstack(comb, m);
        CHECK(howell_form(m).h == howell_form(m2).h);
    }
}

TEST_CASE("smith form worked examples") {
    SUBCASE("Z/12 diagonal") {
        Ring z12(12);
        SmithResult s = smith_form(mat(z12, 2, 2, {2, 0, 0, 2}));
        CHECK(s.diag == std::vector<i64>{2, 2});
    }
    SUBCASE("Z/4 upper triangular") {
        Ring z4(4);
        SmithResult s = smith_form(mat(z4, 2, 2, {2, 2, 0, 2}));
        CHECK(s.diag == std::vector<i64>{2, 2});
    }
    SUBCASE("Z/6 single entry") {
        Ring z6(6);
        SmithResult s = smith_form(mat(z6, 1, 1, {3}));
        CHECK(s.diag == std::vector<i64>{3});
    }
}

TEST_CASE("smith form: divisibility chain and transform identity") {
    Rng rng(7);
    for (i64 n : {4, 6, 12}) {
        Ring ring(n);
        for (int trial = 0; trial < 80; ++trial) {
            int rows = 1 + static_cast<int>(rng.below(4));
            int cols = 1 + static_cast<int>(rng.below(4));
            Matrix m = random_matrix(rng, ring, rows, cols);
            SmithResult s = smith_form(m);
            CHECK(is_invertible(s.l));
            CHECK(is_invertible(s.r));
            Matrix d = s.l * m * s.r;
            for (int i = 0; i < d.rows(); ++i)
                for (int j = 0; j < d.cols(); ++j) {
                    if (i == j && i < static_cast<int>(s.diag.size()))
                        CHECK(d.at(i, j) == s.diag[i]);
                    else
                        CHECK(d.at(i, j) == 0);
                }
            for (size_t i = 0; i + 1 < s.diag.size(); ++i) {
                i64 a = s.diag[i] == 0 ? n : s.diag[i];
                i64 b = s.diag[i + 1] == 0 ? n : s.diag[i + 1];
                CHECK(b % a == 0);
            }
            for (i64 dv : s.diag)
                if (dv != 0) CHECK(n % dv == 0);
        }
    }
}

TEST_CASE("solve_linear worked examples over Z/4") {
    Ring z4(4);
    SUBCASE("2x = 2 has solution 1 with kernel (2)") {
        RightSolve s = solve_linear(mat(z4, 1, 1, {2}), mat(z4, 1, 1, {2}));
        REQUIRE(s.solvable);
        CHECK(mat(z4, 1, 1, {2}) * s.x == mat(z4, 1, 1, {2}));
        // kernel of x |-> 2x is {0, 2}
        std::set<i64> ker;
        for (int i = 0; i < s.kernel.rows(); ++i)
            for (i64 c = 0; c < 4; ++c) ker.insert((c * s.kernel.at(i, 0)) % 4);
        CHECK(ker == std::set<i64>{0, 2});
    }
    SUBCASE("2x = 1 unsolvable") {
        CHECK_FALSE(solve_linear(mat(z4, 1, 1, {2}), mat(z4, 1, 1, {1})).solvable);
    }
    SUBCASE("identity system") {
        Matrix b = mat(z4, 2, 1, {3, 1});
        RightSolve s = solve_linear(Matrix::identity(z4, 2), b);
        REQUIRE(s.solvable);
        CHECK(s.x == b);
        CHECK(howell_form(s.kernel).h.rows() == 0);
    }
}

TEST_CASE("solve_left: substitution check and complete kernels") {
    Rng rng(31);
    for (i64 n : {4, 6}) {
        Ring ring(n);
        for (int trial = 0; trial < 60; ++trial) {
            int rows = 1 + static_cast<int>(rng.below(3));
            int cols = 1 + static_cast<int>(rng.below(3));
            Matrix a = random_matrix(rng, ring, rows, cols);
            Matrix x0 = random_matrix(rng, ring, 1, rows);
            Matrix b = x0 * a;
            LeftSolve s = solve_left(a, b);
            REQUIRE(s.solvable);
            CHECK(s.x * a == b);
            for (int i = 0; i < s.kernel.rows(); ++i) CHECK((s.kernel.row(i) * a).is_zero());
            // Kernel generators generate the brute-force kernel.
            auto spanned = enumerate_span(s.kernel);
            std::set<std::vector<i64>> brute;
            std::vector<i64> v(rows, 0);
            for (;;) {
                Matrix vm(ring, 1, rows, std::vector<i64>(v.begin(), v.end()));
                if ((vm * a).is_zero()) brute.insert(vm.entries());
                int i = 0;
                for (; i < rows; ++i) {
                    if (++v[i] < n) break;
                    v[i] = 0;
                }
                if (i == rows) break;
            }
            CHECK(spanned == brute);
        }
    }
}

TEST_CASE("degenerate shapes: empty matrices behave") {
    Ring z4(4);
    Matrix empty_rows(z4, 0, 3);
    Matrix empty_cols(z4, 3, 0);
    CHECK(howell_form(empty_rows).h.rows() == 0);
    CHECK(smith_form(empty_cols).diag.empty());
    LeftSolve s = solve_left(empty_rows, Matrix::zero(z4, 1, 3));
    CHECK(s.solvable);
    Matrix prod = empty_cols * Matrix(z4, 0, 2);
    CHECK(prod.rows() == 3);
    CHECK(prod.cols() == 2);
}

TEST_CASE("howell form is invariant under generating-set changes") {
    // canonical span representative: scrambled, unit-scaled and extended
    // generating sets of the same span must produce identical forms
    Rng rng(2027);
    for (i64 n : {4, 6, 8, 12}) {
        Ring ring(n);
        for (int trial = 0; trial < 30; ++trial) {
            int rows = 1 + static_cast<int>(rng.below(3));
            int cols = 1 + static_cast<int>(rng.below(3));
            Matrix m = random_matrix(rng, ring, rows, cols);
            Matrix h = howell_form(m).h;

            // unit-scale each row and append random combinations
            Matrix m2 = m;
            for (int i = 0; i < rows; ++i) {
                i64 u = 1 + rng.below(n - 1);
                while (gcd64(u, n) != 1) u = 1 + rng.below(n - 1);
                for (int j = 0; j < cols; ++j) m2.set(i, j, m2.at(i, j) * u);
            }
            for (int extra = 0; extra < 2; ++extra) {
                Matrix comb(ring, 1, cols);
                for (int i = 0; i < rows; ++i) {
                    i64 c = rng.below(n);
                    for (int j = 0; j < cols; ++j)
                        comb.set(0, j, comb.at(0, j) + c * m.at(i, j));
                }
                m2 = Matrix::vstack(comb, m2);
            }
            CHECK(howell_form(m2).h == h);
        }
    }
}
