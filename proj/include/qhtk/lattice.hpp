#pragma once

#include "qhtk/cobordism.hpp"  // Check, CheckStatus
#include "qhtk/int_matrix.hpp"

#include <string>
#include <vector>

namespace qhtk {

// Intersection lattice with designated Lagrangian-sphere classes. Every
// designated class s (sphere or surgery) must satisfy
// s.s == 2*(-1)^(n(n-1)/2) for the even ambient dimension n.
struct Lattice {
    std::size_t rank = 0;
    IntMatrix gram;
    int n = 2;
    std::vector<std::vector<Int>> spheres;
    std::vector<std::vector<Int>> surgery_classes;

    Int pair(const std::vector<Int>& a, const std::vector<Int>& b) const;
    std::vector<std::vector<Int>> designated() const;  // spheres then surgery classes
};

void validate(const Lattice& l);

Int sphere_self_intersection(int n);  // 2*(-1)^(n(n-1)/2)
int twist_sign(int n);                // epsilon = (-1)^(n(n+1)/2)

// Matrix of a -> a - epsilon (a.s) s; s must be a designated class.
IntMatrix dehn_twist(const Lattice& l, const std::vector<Int>& s);
IntMatrix dehn_twist(const Lattice& l, std::size_t sphere_index);

// Symmetric trilinear functional on the span of the designated classes,
// stored by coefficients on unordered basis triples (i <= j <= k, lex order).
struct GWFunctional {
    std::vector<std::vector<Int>> basis;  // span basis, vectors in lattice coordinates
    std::vector<Rat> coeffs;              // one per unordered triple

    std::size_t dim() const { return basis.size(); }
    std::size_t coeff_count() const;
    static std::size_t triple_index(std::size_t m, std::size_t i, std::size_t j, std::size_t k);

    // arguments in lattice coordinates; they must lie in the span
    Rat eval(const std::vector<Int>& a, const std::vector<Int>& b, const std::vector<Int>& c) const;
};

// The linear constraint system on the Sym^3 coefficients:
//  (a) twist invariance G(phi a, phi b, phi c) = G(a,b,c) for every designated
//      class and every unordered basis triple,
//  (b) G(s, t, .) = 0 for designated pairs with s.t == 0.
struct GWSystem {
    std::vector<std::vector<Int>> span_basis;
    IntMatrix constraints;  // rows: equations, cols: unordered-triple coefficients
};

GWSystem gw_constraints(const Lattice& l);

struct GWPairVerdict {
    std::size_t i = 0, j = 0;  // sphere indices with |s_i . s_j| == 1
    bool forced_zero = false;  // G(s_i, s_i, s_j) vanishes on the whole solution space
};

struct GWReport {
    GWSystem system;
    std::vector<GWFunctional> solution_basis;
    std::vector<Check> identities;         // gw.item1 .. gw.item4
    std::vector<GWPairVerdict> pair_discs;

    std::size_t solution_dim() const { return solution_basis.size(); }
};

GWReport gw_solve(const Lattice& l);

// G(s1,s1,s2)^2 for classes with s1.s2 == 1; also checks the squared symmetry
// G(s1,s1,s2)^2 == G(s2,s2,s1)^2.
Rat discriminant_from_gw(const Lattice& l, const GWFunctional& g, const std::vector<Int>& s1,
                         const std::vector<Int>& s2);

// Q(a,a) even for all integer a, i.e. all diagonal entries even.
bool is_even_form(const IntMatrix& q);

}  // namespace qhtk
