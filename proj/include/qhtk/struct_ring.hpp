#pragma once

#include "qhtk/hypermatrix.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qhtk {

// Free module with a distinguished unit and product gamma_i * gamma_j =
// sum_k mu(i,j,k) gamma_k stored as a cubical hypermatrix.
struct StructRing {
    std::size_t rank = 0;
    std::size_t unit = 0;
    std::vector<std::string> labels;  // optional; defaults g0..g{rank-1}
    Hypermatrix mu;                   // format rank x rank x rank

    std::vector<Rat> multiply(const std::vector<Rat>& x, const std::vector<Rat>& y) const;
    std::vector<Rat> basis_product(std::size_t i, std::size_t j) const;  // coordinates of gi*gj
};

// Unit law: mu(e,j,k) = delta_jk and mu(i,e,k) = delta_ik.
void check_unit_law(const StructRing& r);

// Optional check: sum_m mu(i,j,m) mu(m,k,l) == sum_m mu(j,k,m) mu(i,m,l).
bool is_associative(const StructRing& r);

// x^2 = sigma x + tau e on the basis {e, x}.
struct QuadraticAlgebra {
    Int sigma;
    Int tau;
};

Int quadratic_algebra_discriminant(const QuadraticAlgebra& q);  // sigma^2 + 4 tau

// The algebra in the basis {e, u x + m e}; u must be +-1. Discriminant is
// preserved.
QuadraticAlgebra quadratic_change_of_lift(const QuadraticAlgebra& q, int u, const Int& m);

// Rank-2 ring with unit index 0 and mu(1,1,0) = tau, mu(1,1,1) = sigma.
StructRing embed_rank2(const QuadraticAlgebra& q);

struct DiscriminantResult {
    enum class Kind { value, zero_certified, unknown } kind;
    Rat value;                          // for Kind::value
    std::optional<KernelPoint> witness;  // for Kind::zero_certified
};

// Rank 2: exact hyperdeterminant value. Rank >= 3: kernel certification from
// supplied candidates and a basis-triple search; zero_certified or unknown.
DiscriminantResult ring_discriminant(const StructRing& r,
                                     const std::vector<KernelPoint>& candidates = {});

// Structure constants in the basis given by the columns of T (|det T| = 1).
// The unit must map to a basis vector of the new basis.
StructRing base_change(const StructRing& r, const IntMatrix& t);

// Declared splitting {e} + V + W by basis index sets.
struct SplitDecl {
    std::vector<std::size_t> v_block;
    std::vector<std::size_t> w_block;
};

// Checks the split conditions (V-products stay in span{e}+V, W likewise,
// cross products vanish), certifies p on the V-block restriction, and returns
// the zero-padded kernel point certified on the full hypermatrix.
KernelPoint split_kernel_extend(const StructRing& r, const SplitDecl& split, const KernelPoint& p);

}  // namespace qhtk
