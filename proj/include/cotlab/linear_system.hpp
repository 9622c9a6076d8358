#pragma once

// Builder for block linear systems over Z/nZ. Unknowns are matrix blocks X_b;
// every equation is a sum of terms L·X_b·R with a matrix right-hand side.
// Row-major flattening is used throughout: vec(L·X·R) = vec(X)·(Lᵀ ⊗ R).

#include <vector>

#include "cotlab/ring_core.hpp"

namespace cotlab {

class BlockSystem {
public:
    explicit BlockSystem(Ring ring) : ring_(std::move(ring)) {}

    int add_unknown(int rows, int cols) {
        blocks_.push_back({var_count_, rows, cols});
        var_count_ += rows * cols;
        return static_cast<int>(blocks_.size()) - 1;
    }

    int add_equation(int rows, int cols) {
        eqs_.push_back({eq_count_, rows, cols, Matrix::zero(ring_, rows, cols)});
        eq_count_ += rows * cols;
        return static_cast<int>(eqs_.size()) - 1;
    }

    void add_term(int eq, int block, const Matrix& left, const Matrix& right) {
        const Block& b = blocks_[block];
        const Equation& e = eqs_[eq];
        require(left.rows() == e.rows && left.cols() == b.rows, "term left shape");
        require(right.rows() == b.cols && right.cols() == e.cols, "term right shape");
        terms_.push_back({eq, block, left, right});
    }

    // Term X_b·R (left identity elided).
    void add_term_right(int eq, int block, const Matrix& right) {
        add_term(eq, block, Matrix::identity(ring_, blocks_[block].rows), right);
    }
    // Term L·X_b.
    void add_term_left(int eq, int block, const Matrix& left) {
        add_term(eq, block, left, Matrix::identity(ring_, blocks_[block].cols));
    }
    void add_term_plain(int eq, int block) {
        add_term(eq, block, Matrix::identity(ring_, blocks_[block].rows),
                 Matrix::identity(ring_, blocks_[block].cols));
    }

    void set_rhs(int eq, const Matrix& rhs) {
        require(rhs.rows() == eqs_[eq].rows && rhs.cols() == eqs_[eq].cols, "rhs shape");
        eqs_[eq].rhs = rhs;
    }

    struct Solution {
        bool solvable = false;
        Matrix particular;  // 1 x var_count
        Matrix kernel;      // generators of the homogeneous solution space
    };

    Solution solve() const {
        Matrix m(ring_, var_count_, eq_count_);
        for (const auto& t : terms_) {
            const Block& b = blocks_[t.block];
            const Equation& e = eqs_[t.eq];
            // vec(L·X·R) coefficient of X[(j,k)] on output (i,l) is L[i,j]·R[k,l].
            for (int j = 0; j < b.rows; ++j)
                for (int k = 0; k < b.cols; ++k) {
                    int vr = b.offset + j * b.cols + k;
                    for (int i = 0; i < e.rows; ++i) {
                        i64 lij = t.left.at(i, j);
                        if (lij == 0) continue;
                        for (int l = 0; l < e.cols; ++l) {
                            i64 v = m.at(vr, e.offset + i * e.cols + l);
                            m.set(vr, e.offset + i * e.cols + l, v + lij * t.right.at(k, l));
                        }
                    }
                }
        }
        std::vector<i64> rhs(eq_count_, 0);
        for (const auto& e : eqs_)
            for (int i = 0; i < e.rows; ++i)
                for (int l = 0; l < e.cols; ++l) rhs[e.offset + i * e.cols + l] = e.rhs.at(i, l);

        LeftSolve ls = solve_left(m, Matrix(ring_, 1, eq_count_, std::move(rhs)));
        Solution s;
        s.solvable = ls.solvable;
        if (ls.solvable) {
            s.particular = ls.x;
            s.kernel = ls.kernel;
        }
        return s;
    }

    // Reshape the block part of a flat solution row back into a matrix.
    Matrix extract(const Matrix& flat_row, int block, int which_row = 0) const {
        const Block& b = blocks_[block];
        Matrix m(ring_, b.rows, b.cols);
        for (int j = 0; j < b.rows; ++j)
            for (int k = 0; k < b.cols; ++k) m.set(j, k, flat_row.at(which_row, b.offset + j * b.cols + k));
        return m;
    }

    int var_count() const { return var_count_; }

private:
    struct Block {
        int offset, rows, cols;
    };
    struct Equation {
        int offset, rows, cols;
        Matrix rhs;
    };
    struct Term {
        int eq, block;
        Matrix left, right;
    };

    Ring ring_;
    int var_count_ = 0;
    int eq_count_ = 0;
    std::vector<Block> blocks_;
    std::vector<Equation> eqs_;
    std::vector<Term> terms_;
};

}  // namespace cotlab
