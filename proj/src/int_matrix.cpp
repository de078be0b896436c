#include "qhtk/int_matrix.hpp"

#include "qhtk/errors.hpp"

#include <algorithm>
#include <utility>

namespace qhtk {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, std::vector<Int> entries)
    : rows_(rows), cols_(cols), e_(std::move(entries)) {
    if (e_.size() != rows_ * cols_) throw invalid_input("entry count does not match matrix shape");
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<Int>>& rows) {
    std::size_t r = rows.size();
    std::size_t c = r == 0 ? 0 : rows[0].size();
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
        if (rows[i].size() != c) throw invalid_input("ragged rows in matrix");
        for (std::size_t j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

bool IntMatrix::is_zero() const {
    return std::all_of(e_.begin(), e_.end(), [](const Int& x) { return x == 0; });
}

bool IntMatrix::is_symmetric() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i + 1; j < cols_; ++j)
            if (at(i, j) != at(j, i)) return false;
    return true;
}

std::vector<Int> IntMatrix::column(std::size_t j) const {
    std::vector<Int> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = at(i, j);
    return c;
}

std::vector<Int> IntMatrix::apply(const std::vector<Int>& x) const {
    if (x.size() != cols_) throw invalid_input("vector length does not match matrix columns");
    std::vector<Int> y(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        Int acc = 0;
        for (std::size_t j = 0; j < cols_; ++j) acc += at(i, j) * x[j];
        y[i] = std::move(acc);
    }
    return y;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols() != b.rows()) throw invalid_input("matrix product shape mismatch");
    IntMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a.at(i, k) == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c.at(i, j) += a.at(i, k) * b.at(k, j);
        }
    return c;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw invalid_input("matrix sum shape mismatch");
    IntMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.e_.size(); ++i) c.e_[i] = a.e_[i] + b.e_[i];
    return c;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw invalid_input("matrix diff shape mismatch");
    IntMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.e_.size(); ++i) c.e_[i] = a.e_[i] - b.e_[i];
    return c;
}

Int determinant(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw invalid_input("determinant of non-square matrix");
    std::size_t n = m.rows();
    if (n == 0) return 1;
    // Bareiss fraction-free elimination; divisions are exact.
    IntMatrix a = m;
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a.at(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && a.at(p, k) == 0) ++p;
            if (p == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(a.at(k, j), a.at(p, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                a.at(i, j) = (a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j)) / prev;
        prev = a.at(k, k);
    }
    return sign > 0 ? a.at(n - 1, n - 1) : Int(-a.at(n - 1, n - 1));
}

std::vector<Int> SnfResult::diagonal() const {
    std::size_t k = std::min(s.rows(), s.cols());
    std::vector<Int> d(k);
    for (std::size_t i = 0; i < k; ++i) d[i] = s.at(i, i);
    return d;
}

std::size_t SnfResult::rank() const {
    std::size_t r = 0;
    for (const Int& d : diagonal())
        if (d != 0) ++r;
    return r;
}

namespace {

struct SnfWork {
    IntMatrix a, u, v;

    void swap_rows(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a.at(i, c), a.at(j, c));
        for (std::size_t c = 0; c < u.cols(); ++c) std::swap(u.at(i, c), u.at(j, c));
    }
    void swap_cols(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t r = 0; r < a.rows(); ++r) std::swap(a.at(r, i), a.at(r, j));
        for (std::size_t r = 0; r < v.rows(); ++r) std::swap(v.at(r, i), v.at(r, j));
    }
    // row i -= q * row t
    void row_sub(std::size_t i, std::size_t t, const Int& q) {
        if (q == 0) return;
        for (std::size_t c = 0; c < a.cols(); ++c) a.at(i, c) -= q * a.at(t, c);
        for (std::size_t c = 0; c < u.cols(); ++c) u.at(i, c) -= q * u.at(t, c);
    }
    // col j -= q * col t
    void col_sub(std::size_t j, std::size_t t, const Int& q) {
        if (q == 0) return;
        for (std::size_t r = 0; r < a.rows(); ++r) a.at(r, j) -= q * a.at(r, t);
        for (std::size_t r = 0; r < v.rows(); ++r) v.at(r, j) -= q * v.at(r, t);
    }
    void negate_row(std::size_t i) {
        for (std::size_t c = 0; c < a.cols(); ++c) a.at(i, c) = -a.at(i, c);
        for (std::size_t c = 0; c < u.cols(); ++c) u.at(i, c) = -u.at(i, c);
    }

    // Smallest nonzero |entry| in the submatrix starting at (t,t); row-major
    // scan, first occurrence wins ties, so the output is reproducible.
    bool find_pivot(std::size_t t, std::size_t& pi, std::size_t& pj) const {
        bool found = false;
        Int best;
        for (std::size_t i = t; i < a.rows(); ++i)
            for (std::size_t j = t; j < a.cols(); ++j) {
                const Int& x = a.at(i, j);
                if (x == 0) continue;
                Int ax = abs_int(x);
                if (!found || ax < best) {
                    found = true;
                    best = std::move(ax);
                    pi = i;
                    pj = j;
                }
            }
        return found;
    }

    // Clears row t and column t (beyond the pivot) by unimodular operations.
    void clear_cross(std::size_t t) {
        for (;;) {
            std::size_t pi = t, pj = t;
            // restrict the pivot search to row t / column t once the cross is
            // the only place where nonzero entries can interfere
            bool found = false;
            Int best;
            auto consider = [&](std::size_t i, std::size_t j) {
                const Int& x = a.at(i, j);
                if (x == 0) return;
                Int ax = abs_int(x);
                if (!found || ax < best) {
                    found = true;
                    best = std::move(ax);
                    pi = i;
                    pj = j;
                }
            };
            consider(t, t);
            for (std::size_t i = t + 1; i < a.rows(); ++i) consider(i, t);
            for (std::size_t j = t + 1; j < a.cols(); ++j) consider(t, j);
            if (!found) return;  // whole cross is zero (pivot included)
            swap_rows(t, pi);
            swap_cols(t, pj);

            bool clean = true;
            for (std::size_t i = t + 1; i < a.rows(); ++i) {
                if (a.at(i, t) == 0) continue;
                row_sub(i, t, div_round(a.at(i, t), a.at(t, t)));
                if (a.at(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < a.cols(); ++j) {
                if (a.at(t, j) == 0) continue;
                col_sub(j, t, div_round(a.at(t, j), a.at(t, t)));
                if (a.at(t, j) != 0) clean = false;
            }
            if (clean) return;
            // remainders are strictly smaller than the old pivot, so the loop
            // terminates
        }
    }

    void diagonalize() {
        std::size_t k = std::min(a.rows(), a.cols());
        for (std::size_t t = 0; t < k; ++t) {
            std::size_t pi, pj;
            if (!find_pivot(t, pi, pj)) break;
            swap_rows(t, pi);
            swap_cols(t, pj);
            clear_cross(t);
        }
    }
};

}  // namespace

SnfResult smith_normal_form(const IntMatrix& m) {
    SnfWork w{m, IntMatrix::identity(m.rows()), IntMatrix::identity(m.cols())};
    w.diagonalize();

    std::size_t k = std::min(m.rows(), m.cols());
    for (;;) {
        for (std::size_t i = 0; i < k; ++i)
            if (w.a.at(i, i) < 0) w.negate_row(i);
        // move zero diagonal entries to the end
        bool changed = false;
        for (std::size_t i = 0; i + 1 < k; ++i) {
            if (w.a.at(i, i) == 0 && w.a.at(i + 1, i + 1) != 0) {
                w.swap_rows(i, i + 1);
                w.swap_cols(i, i + 1);
                changed = true;
            }
        }
        if (changed) continue;
        // enforce the divisibility chain
        bool fixed = true;
        for (std::size_t i = 0; i + 1 < k && fixed; ++i) {
            const Int& di = w.a.at(i, i);
            if (di == 0) break;
            for (std::size_t j = i + 1; j < k; ++j) {
                const Int& dj = w.a.at(j, j);
                if (dj == 0) continue;
                if (dj % di != 0) {
                    // fold column j into column i and re-diagonalize the pair
                    w.col_sub(i, j, Int(-1));
                    w.clear_cross(i);
                    fixed = false;
                    break;
                }
            }
        }
        if (fixed) break;
    }
    return SnfResult{w.a, w.u, w.v};
}

bool CoeffRing::is_field() const {
    switch (kind) {
        case Kind::rationals: return true;
        case Kind::mod_n: return modulus == 2;  // the only modular field used here
        case Kind::integers: return false;
    }
    return false;
}

namespace {

// Primitive representative: divide by the gcd, make the first nonzero entry
// positive.
void make_primitive(std::vector<Int>& v) {
    Int g = 0;
    for (const Int& x : v) g = gcd_int(g, x);
    if (g == 0) return;
    for (Int& x : v) x /= g;
    for (const Int& x : v)
        if (x != 0) {
            if (x < 0)
                for (Int& y : v) y = -y;
            break;
        }
}

std::vector<std::vector<Int>> kernel_mod2(const IntMatrix& m) {
    std::size_t rows = m.rows(), cols = m.cols();
    std::vector<std::vector<int>> a(rows, std::vector<int>(cols));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) a[i][j] = static_cast<int>(abs_int(m.at(i, j) % 2).convert_to<int>());
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        for (std::size_t i = 0; i < rows; ++i)
            if (i != r && a[i][c])
                for (std::size_t j = 0; j < cols; ++j) a[i][j] ^= a[r][j];
        pivot_col.push_back(c);
        ++r;
    }
    std::vector<std::vector<Int>> basis;
    std::size_t pi = 0;
    std::vector<bool> is_pivot(cols, false);
    for (std::size_t c : pivot_col) is_pivot[c] = true;
    for (std::size_t c = 0; c < cols; ++c) {
        if (is_pivot[c]) continue;
        std::vector<Int> v(cols, Int(0));
        v[c] = 1;
        for (std::size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = a[i][c];
        basis.push_back(std::move(v));
    }
    (void)pi;
    return basis;
}

}  // namespace

std::size_t rank_q(const IntMatrix& m) { return smith_normal_form(m).rank(); }

std::vector<std::vector<Int>> kernel_basis(const IntMatrix& m, const CoeffRing& coeff) {
    using Kind = CoeffRing::Kind;
    if (coeff.kind == Kind::mod_n && coeff.modulus == 2) return kernel_mod2(m);

    if (coeff.kind == Kind::integers || coeff.kind == Kind::rationals) {
        // Columns of V paired with zero diagonal entries of the SNF span
        // ker_Q(M) together with a basis of the saturated kernel lattice:
        // M(Ve_j) = U^{-1} S e_j = d_j * (...), and V is unimodular.
        SnfResult snf = smith_normal_form(m);
        std::size_t k = std::min(m.rows(), m.cols());
        std::vector<std::vector<Int>> basis;
        for (std::size_t j = 0; j < m.cols(); ++j) {
            bool zero_diag = j >= k || snf.s.at(j, j) == 0;
            if (!zero_diag) continue;
            std::vector<Int> v = snf.v.column(j);
            if (coeff.kind == Kind::rationals) make_primitive(v);
            basis.push_back(std::move(v));
        }
        return basis;
    }

    // Z/m: generating set of { x : Mx ≡ 0 (mod m) }, computed as the
    // projection of ker_Z [ M | m·I ] to the first block of coordinates.
    const Int& mod = coeff.modulus;
    if (mod < 2) throw invalid_input("modulus must be >= 2");
    IntMatrix ext(m.rows(), m.cols() + m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) ext.at(i, j) = m.at(i, j);
        ext.at(i, m.cols() + i) = mod;
    }
    auto lattice = kernel_basis(ext, CoeffRing::Z());
    std::vector<std::vector<Int>> gens;
    for (auto& w : lattice) {
        std::vector<Int> v(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(m.cols()));
        bool nonzero = false;
        for (Int& x : v) {
            x %= mod;
            if (x < 0) x += mod;
            if (x != 0) nonzero = true;
        }
        if (nonzero) gens.push_back(std::move(v));
    }
    return gens;
}

namespace {

std::optional<std::vector<Rat>> solve_rational(const IntMatrix& m, const std::vector<Rat>& b) {
    std::size_t rows = m.rows(), cols = m.cols();
    std::vector<std::vector<Rat>> a(rows, std::vector<Rat>(cols + 1));
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) a[i][j] = Rat(m.at(i, j));
        a[i][cols] = b[i];
    }
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        Rat inv = a[r][c];
        for (std::size_t j = c; j <= cols; ++j) a[r][j] /= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            Rat f = a[i][c];
            for (std::size_t j = c; j <= cols; ++j) a[i][j] -= f * a[r][j];
        }
        pivot_col.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < rows; ++i)
        if (a[i][cols] != 0) return std::nullopt;
    std::vector<Rat> x(cols, Rat(0));
    for (std::size_t i = 0; i < pivot_col.size(); ++i) x[pivot_col[i]] = a[i][cols];
    return x;
}

}  // namespace

std::optional<std::vector<Int>> solve_integer(const IntMatrix& m, const std::vector<Int>& b) {
    if (b.size() != m.rows()) throw invalid_input("solve: rhs length mismatch");
    SnfResult snf = smith_normal_form(m);
    std::vector<Int> c = snf.u.apply(b);
    std::size_t k = std::min(m.rows(), m.cols());
    std::vector<Int> y(m.cols(), Int(0));
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Int d = i < k ? snf.s.at(i, i) : Int(0);
        if (d == 0) {
            if (c[i] != 0) return std::nullopt;
        } else {
            if (c[i] % d != 0) return std::nullopt;
            y[i] = c[i] / d;
        }
    }
    return snf.v.apply(y);
}

std::optional<std::vector<Rat>> solve(const IntMatrix& m, const std::vector<Rat>& b,
                                      const CoeffRing& coeff) {
    using Kind = CoeffRing::Kind;
    if (b.size() != m.rows()) throw invalid_input("solve: rhs length mismatch");
    if (coeff.kind == Kind::rationals) return solve_rational(m, b);

    std::vector<Int> bi(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (!is_integer(b[i])) throw invalid_input("solve: non-integer rhs over an integral ring");
        bi[i] = num(b[i]);
    }
    if (coeff.kind == Kind::integers) {
        auto x = solve_integer(m, bi);
        if (!x) return std::nullopt;
        std::vector<Rat> out(x->size());
        for (std::size_t i = 0; i < x->size(); ++i) out[i] = Rat((*x)[i]);
        return out;
    }

    // Z/m via the Smith form: S y ≡ U b (mod m), then x = V y.
    const Int& mod = coeff.modulus;
    if (mod < 2) throw invalid_input("modulus must be >= 2");
    SnfResult snf = smith_normal_form(m);
    std::vector<Int> c = snf.u.apply(bi);
    std::size_t k = std::min(m.rows(), m.cols());
    std::vector<Int> y(m.cols(), Int(0));
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Int d = i < k ? snf.s.at(i, i) : Int(0);
        Int ci = c[i] % mod;
        if (ci < 0) ci += mod;
        if (d == 0) {
            if (ci != 0) return std::nullopt;
            continue;
        }
        Int g = gcd_int(d, mod);
        if (ci % g != 0) return std::nullopt;
        // d/g is invertible mod mod/g
        Int mg = mod / g;
        if (mg == 1) {
            y[i] = 0;
            continue;
        }
        Int dg = (d / g) % mg;
        // extended gcd for the inverse
        Int t0 = 0, t1 = 1, r0 = mg, r1 = dg;
        while (r1 != 0) {
            Int q = r0 / r1;
            Int tmp = r0 - q * r1;
            r0 = r1;
            r1 = tmp;
            tmp = t0 - q * t1;
            t0 = t1;
            t1 = tmp;
        }
        Int inv = t0 % mg;
        if (inv < 0) inv += mg;
        y[i] = ((ci / g) % mg) * inv % mg;
    }
    std::vector<Int> x = snf.v.apply(y);
    std::vector<Rat> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        Int xi = x[i] % mod;
        if (xi < 0) xi += mod;
        out[i] = Rat(xi);
    }
    return out;
}

}  // namespace qhtk
