#include "cotlab/ring_core.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace cotlab {

void fail(const std::string& msg) { throw std::invalid_argument(msg); }

i64 gcd64(i64 a, i64 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        i64 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

i64 xgcd64(i64 a, i64 b, i64& x, i64& y) {
    i64 x0 = 1, y0 = 0, x1 = 0, y1 = 1;
    i64 r0 = a, r1 = b;
    while (r1 != 0) {
        i64 q = r0 / r1;
        i64 r2 = r0 - q * r1;
        i64 x2 = x0 - q * x1;
        i64 y2 = y0 - q * y1;
        r0 = r1; r1 = r2;
        x0 = x1; x1 = x2;
        y0 = y1; y1 = y2;
    }
    if (r0 < 0) {
        r0 = -r0;
        x0 = -x0;
        y0 = -y0;
    }
    x = x0;
    y = y0;
    return r0;
}

i64 mod_inverse(i64 a, i64 n) {
    i64 x, y;
    i64 g = xgcd64(a, n, x, y);
    require(g == 1, "mod_inverse: element is not a unit");
    x %= n;
    return x < 0 ? x + n : x;
}

i64 unit_multiplier(i64 a, i64 n) {
    a %= n;
    if (a < 0) a += n;
    if (a == 0) return 1;
    i64 g = gcd64(a, n);
    i64 ap = a / g;
    i64 np = n / g;
    // Invert a/g modulo n/g, then lift until coprime to n. Some lift in the
    // arithmetic progression u + k*(n/g) is a unit mod n.
    i64 u = (np == 1) ? 1 : mod_inverse(ap % np, np);
    while (gcd64(u, n) != 1) u += np;
    return u % n;
}

Ring::Ring(i64 modulus) {
    require(modulus >= 2, "ring modulus must be >= 2");
    require(modulus <= kMaxModulus, "ring modulus exceeds configured cap");
    auto rep = std::make_shared<Rep>();
    rep->modulus = modulus;
    i64 m = modulus;
    for (i64 p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            int e = 0;
            while (m % p == 0) {
                m /= p;
                ++e;
            }
            rep->factors.emplace_back(p, e);
        }
    }
    if (m > 1) rep->factors.emplace_back(m, 1);
    for (i64 d = 1; d <= modulus; ++d)
        if (modulus % d == 0) rep->divisors.push_back(d);
    rep_ = std::move(rep);
}

Matrix::Matrix(Ring ring, int rows, int cols)
    : ring_(std::move(ring)), rows_(rows), cols_(cols),
      e_(static_cast<size_t>(rows) * cols, 0) {
    require(rows >= 0 && cols >= 0, "negative matrix shape");
}

Matrix::Matrix(Ring ring, int rows, int cols, std::vector<i64> entries)
    : ring_(std::move(ring)), rows_(rows), cols_(cols), e_(std::move(entries)) {
    require(e_.size() == static_cast<size_t>(rows) * cols, "entry count does not match shape");
    for (auto& v : e_) v = ring_.reduce(v);
}

Matrix Matrix::identity(const Ring& ring, int n) {
    Matrix m(ring, n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

Matrix Matrix::row_vector(const Ring& ring, std::vector<i64> entries) {
    int c = static_cast<int>(entries.size());
    return Matrix(ring, 1, c, std::move(entries));
}

Matrix Matrix::vstack(const Matrix& a, const Matrix& b) {
    require(a.ring_ == b.ring_ && a.cols_ == b.cols_, "vstack shape mismatch");
    Matrix m(a.ring_, a.rows_ + b.rows_, a.cols_);
    std::copy(a.e_.begin(), a.e_.end(), m.e_.begin());
    std::copy(b.e_.begin(), b.e_.end(), m.e_.begin() + a.e_.size());
    return m;
}

Matrix Matrix::hstack(const Matrix& a, const Matrix& b) {
    require(a.ring_ == b.ring_ && a.rows_ == b.rows_, "hstack shape mismatch");
    Matrix m(a.ring_, a.rows_, a.cols_ + b.cols_);
    for (int i = 0; i < a.rows_; ++i) {
        for (int j = 0; j < a.cols_; ++j) m.set(i, j, a.at(i, j));
        for (int j = 0; j < b.cols_; ++j) m.set(i, a.cols_ + j, b.at(i, j));
    }
    return m;
}

Matrix Matrix::block_diag(const std::vector<Matrix>& blocks, const Ring& ring) {
    int r = 0, c = 0;
    for (const auto& b : blocks) {
        require(b.ring() == ring, "block_diag ring mismatch");
        r += b.rows();
        c += b.cols();
    }
    Matrix m(ring, r, c);
    int ro = 0, co = 0;
    for (const auto& b : blocks) {
        for (int i = 0; i < b.rows(); ++i)
            for (int j = 0; j < b.cols(); ++j) m.set(ro + i, co + j, b.at(i, j));
        ro += b.rows();
        co += b.cols();
    }
    return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
    require(ring_ == o.ring_, "matrix product ring mismatch");
    require(cols_ == o.rows_, "matrix product shape mismatch");
    i64 n = ring_.modulus();
    Matrix m(ring_, rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            i64 a = at(i, k);
            if (a == 0) continue;
            for (int j = 0; j < o.cols_; ++j)
                m.e_[static_cast<size_t>(i) * o.cols_ + j] =
                    (m.e_[static_cast<size_t>(i) * o.cols_ + j] + a * o.at(k, j)) % n;
        }
    return m;
}

Matrix Matrix::operator+(const Matrix& o) const {
    require(ring_ == o.ring_ && rows_ == o.rows_ && cols_ == o.cols_, "matrix sum shape mismatch");
    Matrix m(ring_, rows_, cols_);
    for (size_t i = 0; i < e_.size(); ++i) m.e_[i] = ring_.reduce(e_[i] + o.e_[i]);
    return m;
}

Matrix Matrix::operator-(const Matrix& o) const {
    require(ring_ == o.ring_ && rows_ == o.rows_ && cols_ == o.cols_, "matrix diff shape mismatch");
    Matrix m(ring_, rows_, cols_);
    for (size_t i = 0; i < e_.size(); ++i) m.e_[i] = ring_.reduce(e_[i] - o.e_[i]);
    return m;
}

Matrix Matrix::scaled(i64 c) const {
    Matrix m(ring_, rows_, cols_);
    c = ring_.reduce(c);
    for (size_t i = 0; i < e_.size(); ++i) m.e_[i] = ring_.reduce(e_[i] * c);
    return m;
}

Matrix Matrix::transposed() const {
    Matrix m(ring_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) m.set(j, i, at(i, j));
    return m;
}

Matrix Matrix::kron(const Matrix& o) const {
    require(ring_ == o.ring_, "kron ring mismatch");
    Matrix m(ring_, rows_ * o.rows_, cols_ * o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) {
            i64 a = at(i, j);
            if (a == 0) continue;
            for (int k = 0; k < o.rows_; ++k)
                for (int l = 0; l < o.cols_; ++l)
                    m.set(i * o.rows_ + k, j * o.cols_ + l, a * o.at(k, l));
        }
    return m;
}

Matrix Matrix::row(int i) const { return rows_slice(i, 1); }

Matrix Matrix::rows_slice(int from, int count) const {
    require(from >= 0 && from + count <= rows_, "row slice out of range");
    Matrix m(ring_, count, cols_);
    std::copy(e_.begin() + static_cast<size_t>(from) * cols_,
              e_.begin() + static_cast<size_t>(from + count) * cols_, m.e_.begin());
    return m;
}

Matrix Matrix::cols_slice(int from, int count) const {
    require(from >= 0 && from + count <= cols_, "column slice out of range");
    Matrix m(ring_, rows_, count);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < count; ++j) m.set(i, j, at(i, from + j));
    return m;
}

Matrix Matrix::without_zero_rows() const {
    std::vector<i64> kept;
    int r = 0;
    for (int i = 0; i < rows_; ++i) {
        bool zero = true;
        for (int j = 0; j < cols_; ++j)
            if (at(i, j) != 0) {
                zero = false;
                break;
            }
        if (!zero) {
            ++r;
            for (int j = 0; j < cols_; ++j) kept.push_back(at(i, j));
        }
    }
    return Matrix(ring_, r, cols_, std::move(kept));
}

bool Matrix::is_zero() const {
    return std::all_of(e_.begin(), e_.end(), [](i64 v) { return v == 0; });
}

std::string Matrix::to_string() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < rows_; ++i) {
        os << (i ? ", [" : "[");
        for (int j = 0; j < cols_; ++j) os << (j ? "," : "") << at(i, j);
        os << "]";
    }
    os << "]";
    return os.str();
}

namespace {

// Row operations on a working matrix with a square transform tracked mod n.
struct RowWorkspace {
    Matrix a;
    Matrix u;

    void swap_rows(int i, int j) {
        if (i == j) return;
        for (int c = 0; c < a.cols(); ++c) {
            i64 t = a.at(i, c);
            a.set(i, c, a.at(j, c));
            a.set(j, c, t);
        }
        for (int c = 0; c < u.cols(); ++c) {
            i64 t = u.at(i, c);
            u.set(i, c, u.at(j, c));
            u.set(j, c, t);
        }
    }

    void scale_row(int i, i64 s) {
        for (int c = 0; c < a.cols(); ++c) a.set(i, c, a.at(i, c) * s);
        for (int c = 0; c < u.cols(); ++c) u.set(i, c, u.at(i, c) * s);
    }

    // row_i += s * row_j
    void add_multiple(int i, int j, i64 s) {
        if (s == 0) return;
        for (int c = 0; c < a.cols(); ++c) a.set(i, c, a.at(i, c) + s * a.at(j, c));
        for (int c = 0; c < u.cols(); ++c) u.set(i, c, u.at(i, c) + s * u.at(j, c));
    }

    // Combined unimodular transform bringing gcd into row i at column c and
    // zero into row j at column c. Coefficients come from an integer xgcd, so
    // the 2x2 block has determinant 1.
    void gcd_rows(int i, int j, int c) {
        i64 av = a.at(i, c), bv = a.at(j, c);
        if (bv == 0) return;
        if (av == 0) {
            swap_rows(i, j);
            return;
        }
        i64 s, t;
        i64 g = xgcd64(av, bv, s, t);
        i64 p = av / g, q = bv / g;
        const Ring& ring = a.ring();
        for (int col = 0; col < a.cols(); ++col) {
            i64 x = a.at(i, col), y = a.at(j, col);
            a.set(i, col, ring.reduce(s * x + t * y));
            a.set(j, col, ring.reduce(p * y - q * x));
        }
        for (int col = 0; col < u.cols(); ++col) {
            i64 x = u.at(i, col), y = u.at(j, col);
            u.set(i, col, ring.reduce(s * x + t * y));
            u.set(j, col, ring.reduce(p * y - q * x));
        }
    }
};

// Echelonize rows [0, rows); returns pivot columns in order.
std::vector<int> echelonize(RowWorkspace& w) {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < w.a.cols() && r < w.a.rows(); ++c) {
        int found = -1;
        for (int i = r; i < w.a.rows(); ++i)
            if (w.a.at(i, c) != 0) {
                found = i;
                break;
            }
        if (found < 0) continue;
        w.swap_rows(r, found);
        for (int i = r + 1; i < w.a.rows(); ++i)
            if (w.a.at(i, c) != 0) w.gcd_rows(r, i, c);
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

HowellResult howell_form(const Matrix& m) {
    const Ring& ring = m.ring();
    const i64 n = ring.modulus();
    const int pad = m.cols();
    RowWorkspace w{Matrix::vstack(m, Matrix::zero(ring, pad, m.cols())),
                   Matrix::identity(ring, m.rows() + pad)};

    auto pivots = echelonize(w);
    // Howell closure: the annihilator multiple of each pivot row must lie in
    // the span of the rows below it. Insert what is missing and re-echelonize.
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t pi = 0; pi < pivots.size(); ++pi) {
            int i = static_cast<int>(pi);
            i64 pivot = w.a.at(i, pivots[pi]);
            i64 g = gcd64(pivot, n);
            i64 t = n / g;
            if (t % n == 0) continue;
            // Reduce t*row_i against the rows below.
            std::vector<i64> v(m.cols());
            for (int c = 0; c < m.cols(); ++c) v[c] = ring.reduce(t * w.a.at(i, c));
            for (size_t pj = pi + 1; pj < pivots.size(); ++pj) {
                int j = static_cast<int>(pj);
                i64 pv = w.a.at(j, pivots[pj]);
                i64 cur = v[pivots[pj]];
                if (cur == 0) continue;
                i64 gg = gcd64(pv, n);
                if (cur % gg == 0) {
                    // pv generates the same ideal as gg; solve q*pv = cur.
                    i64 u = unit_multiplier(pv, n);
                    i64 q = ring.reduce((cur / gg) * u);
                    for (int c = 0; c < m.cols(); ++c) v[c] = ring.reduce(v[c] - q * w.a.at(j, c));
                }
            }
            bool nonzero = false;
            for (i64 x : v)
                if (x) nonzero = true;
            if (!nonzero) continue;
            // Place the remainder into a spare zero row; one always exists
            // because the echelon rank is at most cols and we padded by cols.
            int spare = -1;
            for (int r = static_cast<int>(pivots.size()); r < w.a.rows(); ++r) {
                bool zero = true;
                for (int c = 0; c < m.cols(); ++c)
                    if (w.a.at(r, c) != 0) zero = false;
                if (zero) {
                    spare = r;
                    break;
                }
            }
            require(spare >= 0, "howell_form: no spare row (internal)");
            // spare row of U currently holds some invertible combination; add
            // t*row_i minus the used multiples so U stays consistent: easier
            // to rebuild via explicit ops: spare += t*row_i then reduce again.
            w.add_multiple(spare, i, t);
            for (size_t pj = pi + 1; pj < pivots.size(); ++pj) {
                int j = static_cast<int>(pj);
                i64 pv = w.a.at(j, pivots[pj]);
                i64 cur = w.a.at(spare, pivots[pj]);
                if (cur == 0) continue;
                i64 gg = gcd64(pv, n);
                if (cur % gg == 0) {
                    i64 u = unit_multiplier(pv, n);
                    i64 q = ring.reduce((cur / gg) * u);
                    w.add_multiple(spare, j, -q);
                }
            }
            pivots = echelonize(w);
            changed = true;
            break;
        }
    }

    // Normalize pivots to divisors of n, then reduce the entries above.
    for (size_t pi = 0; pi < pivots.size(); ++pi) {
        int i = static_cast<int>(pi);
        i64 pivot = w.a.at(i, pivots[pi]);
        i64 u = unit_multiplier(pivot, n);
        if (u != 1) w.scale_row(i, u);
    }
    for (size_t pi = 0; pi < pivots.size(); ++pi) {
        int i = static_cast<int>(pi);
        i64 pivot = w.a.at(i, pivots[pi]);
        for (int k = 0; k < i; ++k) {
            i64 v = w.a.at(k, pivots[pi]);
            i64 q = v / pivot;
            if (q) w.add_multiple(k, i, -q);
        }
    }

    HowellResult res{w.a.without_zero_rows(), w.u, w.a.rows()};
    return res;
}

bool same_row_span(const Matrix& a, const Matrix& b) {
    return howell_form(a).h == howell_form(b).h;
}

bool in_row_span(const Matrix& m, const Matrix& v) {
    return solve_left(m, v).solvable;
}

namespace {

using i128 = __int128;

struct SmithWorkspace {
    // Exact integer working matrix; transforms tracked mod n.
    std::vector<i128> d;
    int rows, cols;
    Matrix l, r;
    const Ring& ring;

    i128& at(int i, int j) { return d[static_cast<size_t>(i) * cols + j]; }

    void swap_rows(int i, int j) {
        if (i == j) return;
        for (int c = 0; c < cols; ++c) std::swap(at(i, c), at(j, c));
        for (int c = 0; c < l.cols(); ++c) {
            i64 t = l.at(i, c);
            l.set(i, c, l.at(j, c));
            l.set(j, c, t);
        }
    }
    void swap_cols(int i, int j) {
        if (i == j) return;
        for (int rr = 0; rr < rows; ++rr) std::swap(at(rr, i), at(rr, j));
        for (int rr = 0; rr < r.rows(); ++rr) {
            i64 t = r.at(rr, i);
            r.set(rr, i, r.at(rr, j));
            r.set(rr, j, t);
        }
    }
    void add_row_multiple(int i, int j, i128 q) {  // row_i -= q*row_j
        for (int c = 0; c < cols; ++c) at(i, c) -= q * at(j, c);
        i64 qm = ring.reduce(static_cast<i64>(((q % ring.modulus()) + ring.modulus()) % ring.modulus()));
        for (int c = 0; c < l.cols(); ++c) l.set(i, c, l.at(i, c) - qm * l.at(j, c));
    }
    void add_col_multiple(int i, int j, i128 q) {  // col_i -= q*col_j
        for (int rr = 0; rr < rows; ++rr) at(rr, i) -= q * at(rr, j);
        i64 qm = ring.reduce(static_cast<i64>(((q % ring.modulus()) + ring.modulus()) % ring.modulus()));
        for (int rr = 0; rr < r.rows(); ++rr) r.set(rr, i, r.at(rr, i) - qm * r.at(rr, j));
    }
    void negate_row(int i) {
        for (int c = 0; c < cols; ++c) at(i, c) = -at(i, c);
        for (int c = 0; c < l.cols(); ++c) l.set(i, c, -l.at(i, c));
    }
};

i128 iabs(i128 v) { return v < 0 ? -v : v; }

}  // namespace

SmithResult smith_form(const Matrix& m) {
    const Ring& ring = m.ring();
    const i64 n = ring.modulus();
    SmithWorkspace w{std::vector<i128>(static_cast<size_t>(m.rows()) * m.cols()),
                     m.rows(),
                     m.cols(),
                     Matrix::identity(ring, m.rows()),
                     Matrix::identity(ring, m.cols()),
                     ring};
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) w.at(i, j) = m.at(i, j);

    int mindim = std::min(m.rows(), m.cols());
    for (int t = 0; t < mindim; ++t) {
        for (;;) {
            // Locate the minimal nonzero entry in the trailing block.
            int bi = -1, bj = -1;
            i128 best = 0;
            for (int i = t; i < w.rows; ++i)
                for (int j = t; j < w.cols; ++j) {
                    i128 v = iabs(w.at(i, j));
                    if (v != 0 && (bi < 0 || v < best)) {
                        best = v;
                        bi = i;
                        bj = j;
                    }
                }
            if (bi < 0) { t = mindim; break; }
            w.swap_rows(t, bi);
            w.swap_cols(t, bj);
            bool clean = true;
            for (int i = t + 1; i < w.rows; ++i) {
                i128 q = w.at(i, t) / w.at(t, t);
                if (q) w.add_row_multiple(i, t, q);
                if (w.at(i, t) != 0) clean = false;
            }
            for (int j = t + 1; j < w.cols; ++j) {
                i128 q = w.at(t, j) / w.at(t, t);
                if (q) w.add_col_multiple(j, t, q);
                if (w.at(t, j) != 0) clean = false;
            }
            if (!clean) continue;
            // Pivot must divide the remaining block for the divisor chain.
            bool divides = true;
            for (int i = t + 1; i < w.rows && divides; ++i)
                for (int j = t + 1; j < w.cols; ++j)
                    if (w.at(i, j) % w.at(t, t) != 0) {
                        w.add_row_multiple(t, i, -1);
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        if (t >= mindim) break;
    }

    SmithResult res;
    res.diag.assign(mindim, 0);
    for (int t = 0; t < mindim; ++t) {
        i128 v = w.at(t, t);
        if (v < 0) {
            w.negate_row(t);
            v = -v;
        }
        i64 g = (v == 0) ? 0 : gcd64(static_cast<i64>(v % n == 0 && v != 0 ? n : v % n), n);
        if (v != 0 && v % n == 0) g = n;
        // Scale the row of L by the unit taking the pivot to gcd(pivot, n).
        if (v != 0) {
            i64 vm = static_cast<i64>(v % n);
            i64 u = unit_multiplier(vm, n);
            if (u != 1)
                for (int c = 0; c < w.l.cols(); ++c) w.l.set(t, c, w.l.at(t, c) * u);
            g = gcd64(vm == 0 ? n : vm, n);
        }
        res.diag[t] = ring.reduce(g);
    }
    res.l = w.l;
    res.r = w.r;
    return res;
}

namespace {

// Solve y*d = c coordinatewise for diagonal d (entries already divisors of n
// or 0), with per-coordinate kernel annihilators.
struct DiagSolve {
    bool ok = true;
    std::vector<i64> y;
};

DiagSolve solve_diag_row(const std::vector<i64>& diag, int m, int k, const std::vector<i64>& c, i64 n) {
    DiagSolve s;
    s.y.assign(m, 0);
    int mind = static_cast<int>(diag.size());
    for (int j = 0; j < k; ++j) {
        i64 cj = c[j];
        if (j < mind && j < m) {
            i64 d = diag[j] == 0 ? n : diag[j];
            if (cj % gcd64(d, n) != 0) {
                s.ok = false;
                return s;
            }
            i64 g = gcd64(d, n);
            // d = unit*g mod n after normalization, so y = (c/g) * unit^{-1}.
            i64 u = unit_multiplier(d % n == 0 ? n : d, n);
            (void)u;
            // diag entries are canonical divisors: d == g, so y = c/g works.
            s.y[j] = (cj / g) % n;
        } else if (cj != 0) {
            s.ok = false;
            return s;
        }
    }
    return s;
}

}  // namespace

LeftSolve solve_left(const Matrix& a, const Matrix& b) {
    require(a.ring() == b.ring(), "solve_left ring mismatch");
    require(a.cols() == b.cols(), "solve_left shape mismatch");
    const Ring& ring = a.ring();
    const i64 n = ring.modulus();
    SmithResult sm = smith_form(a);
    int m = a.rows(), k = a.cols();
    int mind = std::min(m, k);

    LeftSolve out;
    // x*a = b  <=>  (x*l^{-1}) * d = b*r, with x = y*l.
    Matrix c = b * sm.r;
    std::vector<i64> xs;
    for (int row = 0; row < b.rows(); ++row) {
        std::vector<i64> cr(k);
        for (int j = 0; j < k; ++j) cr[j] = c.at(row, j);
        DiagSolve ds = solve_diag_row(sm.diag, m, k, cr, n);
        if (!ds.ok) {
            out.solvable = false;
            out.x = Matrix::zero(ring, b.rows(), m);
            out.kernel = Matrix::zero(ring, 0, m);
            return out;
        }
        for (i64 v : ds.y) xs.push_back(v);
    }
    Matrix y(ring, b.rows(), m, std::move(xs));
    out.solvable = true;
    out.x = y * sm.l;

    // Kernel of y |-> y*d, pushed through l.
    std::vector<std::vector<i64>> gens;
    for (int j = 0; j < m; ++j) {
        i64 ann;
        if (j < mind) {
            i64 d = sm.diag[j] == 0 ? n : sm.diag[j];
            ann = n / gcd64(d, n);
        } else {
            ann = 1;  // row of d is zero: coordinate is free
        }
        ann %= n;
        if (j >= mind) ann = 1;
        if (j < mind && ann % n == 0) continue;  // unit pivot: no kernel here
        std::vector<i64> g(m, 0);
        g[j] = ann == 0 ? 1 : ann;
        gens.push_back(std::move(g));
    }
    std::vector<i64> ke;
    for (auto& g : gens)
        for (i64 v : g) ke.push_back(v);
    Matrix kergens(ring, static_cast<int>(gens.size()), m, std::move(ke));
    out.kernel = kergens * sm.l;
    return out;
}

LeftSolve solve_left_homogeneous(const Matrix& a, int lhs_rows) {
    return solve_left(a, Matrix::zero(a.ring(), lhs_rows, a.cols()));
}

RightSolve solve_linear(const Matrix& a, const Matrix& b) {
    LeftSolve ls = solve_left(a.transposed(), b.transposed());
    RightSolve rs;
    rs.solvable = ls.solvable;
    if (ls.solvable) {
        rs.x = ls.x.transposed();
        rs.kernel = ls.kernel;
    } else {
        rs.x = Matrix::zero(a.ring(), a.cols(), b.cols());
        rs.kernel = Matrix::zero(a.ring(), 0, a.cols());
    }
    return rs;
}

bool is_invertible(const Matrix& u) {
    if (u.rows() != u.cols()) return false;
    return solve_left(u, Matrix::identity(u.ring(), u.rows())).solvable;
}

Matrix inverse_of(const Matrix& u) {
    LeftSolve s = solve_left(u, Matrix::identity(u.ring(), u.rows()));
    require(s.solvable, "matrix is not invertible");
    return s.x;
}

}  // namespace cotlab
