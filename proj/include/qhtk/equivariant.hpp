#pragma once

#include "qhtk/chain_complex.hpp"

#include <vector>

namespace qhtk {

// Matrix over the group ring Z[G], G = Z/2 = {1, g}. Entry (i,j) is
// a(i,j) + b(i,j)·g.
struct GroupRingMatrix {
    IntMatrix a;
    IntMatrix b;

    std::size_t rows() const { return a.rows(); }
    std::size_t cols() const { return a.cols(); }

    friend GroupRingMatrix operator*(const GroupRingMatrix& x, const GroupRingMatrix& y);
    friend bool operator==(const GroupRingMatrix&, const GroupRingMatrix&) = default;
    bool is_zero() const { return a.is_zero() && b.is_zero(); }
};

// Bounded complex of free Z[Z/2]-modules plus the G-action on a coefficient
// module. boundaries[k] maps degree k to degree k-1.
struct GroupRingComplex {
    std::vector<std::size_t> ranks;           // free Z[G]-rank per degree
    std::vector<GroupRingMatrix> boundaries;  // boundaries.size() == ranks.size()
    IntMatrix action = IntMatrix::identity(1);  // involution on the coefficient module
};

void validate(const GroupRingComplex& e);

// C ⊗_{Z[G]} M: each Z[G]-generator contributes rank(M) integer generators and
// a boundary entry a + b·g becomes the block a·Id + b·action.
ChainComplex equivariant_collapse(const GroupRingComplex& e);

// Free Z[Z/2] cellular complex of S^i with one generator per degree; boundary
// entries (1+g) in even degrees and (1-g) in odd degrees, from the cell
// orientation convention that the deck transformation sends E^k_+ to E^k_-.
GroupRingComplex build_antipodal_sphere(std::size_t i);

// Total complex of the tensor product over Z with Koszul signs
// d(x⊗y) = dx⊗y + (-1)^|x| x⊗dy, carried as a free Z[G]-complex for the
// diagonal action; per bidegree the basis is {x⊗y, x⊗gy}.
GroupRingComplex tensor_diagonal(const GroupRingComplex& e1, const GroupRingComplex& e2);

// Integral homology of (S^i x S^{n-i})/Z2 with the free diagonal involution,
// computed through the cellular route above. n must be even.
std::vector<HomologyGroup> homology_k(std::size_t n, std::size_t i);

bool is_orientable(std::size_t n, std::size_t i);

}  // namespace qhtk
