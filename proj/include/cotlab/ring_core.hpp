#pragma once

// Exact arithmetic and matrix normal forms over Z/nZ. Everything downstream
// (modules, functors, checkers) reduces to the three primitives in this file:
// Howell form, Smith form and exact linear solving.

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cotlab {

using i64 = std::int64_t;

// Default cap on moduli; keeps element enumeration feasible.
inline constexpr i64 kMaxModulus = 1 << 16;

[[noreturn]] void fail(const std::string& msg);

inline void require(bool cond, const char* msg) {
    if (!cond) fail(msg);
}

i64 gcd64(i64 a, i64 b);
// g = a*x + b*y with g = gcd(|a|,|b|).
i64 xgcd64(i64 a, i64 b, i64& x, i64& y);
// Inverse of a modulo n; requires gcd(a, n) = 1.
i64 mod_inverse(i64 a, i64 n);
// A unit u mod n with u*a = gcd(a, n) (mod n).
i64 unit_multiplier(i64 a, i64 n);

class Ring {
public:
    Ring() = default;
    explicit Ring(i64 modulus);

    i64 modulus() const { return rep_->modulus; }
    // (prime, exponent) pairs, ascending primes.
    const std::vector<std::pair<i64, int>>& factorization() const { return rep_->factors; }
    const std::vector<i64>& divisors() const { return rep_->divisors; }

    i64 reduce(i64 v) const {
        i64 n = rep_->modulus;
        v %= n;
        return v < 0 ? v + n : v;
    }

    bool valid() const { return rep_ != nullptr; }
    friend bool operator==(const Ring& a, const Ring& b) { return a.modulus() == b.modulus(); }
    friend bool operator!=(const Ring& a, const Ring& b) { return !(a == b); }

private:
    struct Rep {
        i64 modulus = 0;
        std::vector<std::pair<i64, int>> factors;
        std::vector<i64> divisors;
    };
    std::shared_ptr<const Rep> rep_;
};

class Residue {
public:
    Residue(Ring ring, i64 v) : ring_(std::move(ring)), v_(ring_.reduce(v)) {}

    i64 value() const { return v_; }
    const Ring& ring() const { return ring_; }

    Residue operator+(const Residue& o) const { return {ring_, v_ + o.v_}; }
    Residue operator-(const Residue& o) const { return {ring_, v_ - o.v_}; }
    Residue operator*(const Residue& o) const { return {ring_, v_ * o.v_}; }
    Residue operator-() const { return {ring_, -v_}; }
    friend bool operator==(const Residue& a, const Residue& b) {
        return a.ring_ == b.ring_ && a.v_ == b.v_;
    }

private:
    Ring ring_;
    i64 v_;
};

// Dense row-major matrix of residues. Value type, immutable by convention
// after construction (mutating accessors are used only while building).
class Matrix {
public:
    Matrix() = default;
    Matrix(Ring ring, int rows, int cols);
    Matrix(Ring ring, int rows, int cols, std::vector<i64> entries);

    static Matrix identity(const Ring& ring, int n);
    static Matrix zero(const Ring& ring, int rows, int cols) { return Matrix(ring, rows, cols); }
    static Matrix row_vector(const Ring& ring, std::vector<i64> entries);
    static Matrix vstack(const Matrix& a, const Matrix& b);
    static Matrix hstack(const Matrix& a, const Matrix& b);
    static Matrix block_diag(const std::vector<Matrix>& blocks, const Ring& ring);

    const Ring& ring() const { return ring_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }

    i64 at(int i, int j) const { return e_[static_cast<size_t>(i) * cols_ + j]; }
    void set(int i, int j, i64 v) { e_[static_cast<size_t>(i) * cols_ + j] = ring_.reduce(v); }
    const std::vector<i64>& entries() const { return e_; }

    Matrix operator*(const Matrix& o) const;
    Matrix operator+(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    Matrix scaled(i64 c) const;
    Matrix transposed() const;
    // Kronecker product with row-major index convention:
    // (a⊗b)[(i,k),(j,l)] = a[i,j]*b[k,l].
    Matrix kron(const Matrix& o) const;

    Matrix row(int i) const;
    Matrix rows_slice(int from, int count) const;
    Matrix cols_slice(int from, int count) const;
    Matrix without_zero_rows() const;

    bool is_zero() const;
    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.ring_ == b.ring_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

    std::string to_string() const;

private:
    Ring ring_;
    int rows_ = 0;
    int cols_ = 0;
    std::vector<i64> e_;
};

// U * pad(m) = pad(H) where pad appends cols(m) zero rows; U is square and
// invertible over Z/nZ, H is the unique Howell form of the row span of m
// (zero rows pruned).
struct HowellResult {
    Matrix h;
    Matrix u;
    int padded_rows = 0;
};

HowellResult howell_form(const Matrix& m);

// Canonical span membership test: rowspan(a) == rowspan(b).
bool same_row_span(const Matrix& a, const Matrix& b);

// l * m * r = diag(d_1,...,d_k) over Z/nZ with d_i | d_{i+1}; the d_i are
// normalized to divisors of n (free positions reported as 0, i.e. n).
// Computed by lifting to Z, running integer SNF and reducing.
struct SmithResult {
    std::vector<i64> diag;
    Matrix l;
    Matrix r;
};

SmithResult smith_form(const Matrix& m);

// One solution of x*a = b plus generators of {y : y*a = 0}. Row convention:
// all downstream morphisms act on row vectors.
struct LeftSolve {
    bool solvable = false;
    Matrix x;
    Matrix kernel;
};

LeftSolve solve_left(const Matrix& a, const Matrix& b);
LeftSolve solve_left_homogeneous(const Matrix& a, int lhs_rows = 1);

// Column-convention front end: a*x = b, kernel rows g satisfy a*g^T = 0.
struct RightSolve {
    bool solvable = false;
    Matrix x;
    Matrix kernel;
};

RightSolve solve_linear(const Matrix& a, const Matrix& b);

// True iff v (1 x cols) lies in the row span of m.
bool in_row_span(const Matrix& m, const Matrix& v);

// True iff u is invertible over Z/nZ.
bool is_invertible(const Matrix& u);
Matrix inverse_of(const Matrix& u);

}  // namespace cotlab
