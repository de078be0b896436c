#pragma once

#include "qhtk/int_matrix.hpp"

#include <optional>
#include <vector>

namespace qhtk {

// Dense r-dimensional array of exact rationals with format (k1+1) x ... x (kr+1).
class Hypermatrix {
public:
    Hypermatrix() = default;
    explicit Hypermatrix(std::vector<std::size_t> format);

    const std::vector<std::size_t>& format() const { return format_; }
    std::size_t order() const { return format_.size(); }
    std::size_t size() const { return entries_.size(); }

    const Rat& at(const std::vector<std::size_t>& idx) const { return entries_[offset(idx)]; }
    Rat& at(const std::vector<std::size_t>& idx) { return entries_[offset(idx)]; }
    const std::vector<Rat>& entries() const { return entries_; }
    std::vector<Rat>& entries() { return entries_; }

    std::size_t offset(const std::vector<std::size_t>& idx) const;
    std::vector<std::size_t> index_of(std::size_t offset) const;

    bool is_format(std::initializer_list<std::size_t> f) const;
    bool is_zero() const;

    friend bool operator==(const Hypermatrix&, const Hypermatrix&) = default;

private:
    std::vector<std::size_t> format_;
    std::vector<Rat> entries_;
};

Hypermatrix hypermatrix_222(std::initializer_list<Rat> entries);  // a000..a111 row-major

// Sub-array with index of the given axis fixed (axes are 0-based).
Hypermatrix slice(const Hypermatrix& a, std::size_t axis, std::size_t index);

// (M *_j A)(.., i_j = s, ..) = sum_l M(l, s) A(.., l, ..). With this
// convention acting twice composes as group_act(group_act(A,N,j),M,j) ==
// group_act(A, N*M, j).
Hypermatrix group_act(const Hypermatrix& a, const IntMatrix& m, std::size_t axis);
Hypermatrix group_act(const Hypermatrix& a, const std::vector<IntMatrix>& ms);

// The closed degree-4 hyperdeterminant polynomial for format 2x2x2.
Rat det222(const Hypermatrix& a);

// Gradient of det222, as a 2x2x2 hypermatrix of partial derivatives.
Hypermatrix det222_gradient(const Hypermatrix& a);

// Binary form sum c_j x0^(d-j) x1^j.
struct BinaryForm {
    std::vector<Rat> coeffs;  // size degree+1
    std::size_t degree() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
    bool is_zero() const;
};

// det(x0 A0 + x1 A1) for the two slices of a 2x2x2 hypermatrix along axis 0.
BinaryForm schlafli_pencil(const Hypermatrix& a);

// Degree 2 gives literally b^2 - 4ac; higher degrees use the Sylvester
// resultant normalization (-1)^(d(d-1)/2) Res(f, f') / lc(f).
Rat binary_discriminant(const BinaryForm& f);

// binary_discriminant(schlafli_pencil(A)); agrees with det222 on every input.
Rat hyperdet_schlafli(const Hypermatrix& a);

// One nonzero integer vector per tensor slot, each defined up to scale.
struct KernelPoint {
    std::vector<std::vector<Int>> factors;
    friend bool operator==(const KernelPoint&, const KernelPoint&) = default;
};

// True iff contracting every slot but one against the point gives zero, for
// each slot. Works for any format.
bool kernel_certify(const Hypermatrix& a, const KernelPoint& p);

struct KernelSearchResult {
    enum class Status { nondegenerate, found, not_certified } status;
    std::optional<KernelPoint> point;
    bool smooth = false;  // gradient of det222 nonzero at the input
};

// Format 2x2x2 only. If det222 == 0 and the gradient is nonzero, factors the
// gradient as a decomposable tensor; otherwise falls back to rational pencil
// roots. A degenerate input without a rational certificate reports
// not_certified.
KernelSearchResult kernel_search(const Hypermatrix& a);

}  // namespace qhtk
