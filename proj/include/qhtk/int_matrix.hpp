#pragma once

#include "qhtk/numeric.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace qhtk {

// Dense integer matrix, row-major, exact entries.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), e_(rows * cols) {}
    IntMatrix(std::size_t rows, std::size_t cols, std::vector<Int> entries);

    static IntMatrix identity(std::size_t n);
    static IntMatrix from_rows(const std::vector<std::vector<Int>>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    const Int& at(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }
    Int& at(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }

    const std::vector<Int>& entries() const { return e_; }

    IntMatrix transpose() const;
    bool is_zero() const;
    bool is_symmetric() const;

    std::vector<Int> column(std::size_t j) const;
    std::vector<Int> apply(const std::vector<Int>& x) const;  // M * x

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
    friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
    friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
    friend bool operator==(const IntMatrix& a, const IntMatrix& b) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Int> e_;
};

// Exact determinant (Bareiss fraction-free elimination).
Int determinant(const IntMatrix& m);

// U * M * V == S with S diagonal, nonnegative, d1 | d2 | ..., |det U| = |det V| = 1.
struct SnfResult {
    IntMatrix s;
    IntMatrix u;
    IntMatrix v;
    std::vector<Int> diagonal() const;
    std::size_t rank() const;  // number of nonzero diagonal entries
};

SnfResult smith_normal_form(const IntMatrix& m);

// Coefficient ring for kernel/solve/homology: Z, Q, or Z/m (Z2 = mod(2)).
struct CoeffRing {
    enum class Kind { integers, rationals, mod_n };
    Kind kind = Kind::integers;
    Int modulus = 0;

    static CoeffRing Z() { return {Kind::integers, 0}; }
    static CoeffRing Q() { return {Kind::rationals, 0}; }
    static CoeffRing Z2() { return {Kind::mod_n, 2}; }
    static CoeffRing Zm(Int m) { return {Kind::mod_n, std::move(m)}; }

    bool is_field() const;
    friend bool operator==(const CoeffRing&, const CoeffRing&) = default;
};

// Kernel of M over the given ring.
//  - Q: basis of the rational kernel, scaled to primitive integer vectors.
//  - Z: basis of the saturated kernel lattice ker_Q(M) ∩ Z^n.
//  - Z/m: generating set of { x : Mx ≡ 0 (mod m) }, entries reduced to [0, m).
//    For m = 2 this is a basis.
std::vector<std::vector<Int>> kernel_basis(const IntMatrix& m, const CoeffRing& coeff);

// Some x with M x == b over the ring, or nullopt when no solution exists.
// Entries are integral except over Q.
std::optional<std::vector<Rat>> solve(const IntMatrix& m, const std::vector<Rat>& b,
                                      const CoeffRing& coeff);
std::optional<std::vector<Int>> solve_integer(const IntMatrix& m, const std::vector<Int>& b);

// Rank over Q (== rank over Z as a lattice map).
std::size_t rank_q(const IntMatrix& m);

}  // namespace qhtk
