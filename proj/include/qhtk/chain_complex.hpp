#pragma once

#include "qhtk/int_matrix.hpp"

#include <string>
#include <vector>

namespace qhtk {

// Bounded chain complex with integer boundary matrices interpreted over a
// coefficient ring. boundaries[k] maps degree k to degree k-1 and has shape
// dims[k-1] x dims[k]; boundaries[0] is the zero map out of degree 0.
struct ChainComplex {
    CoeffRing coeff = CoeffRing::Z();
    std::vector<std::size_t> dims;
    std::vector<IntMatrix> boundaries;  // boundaries.size() == dims.size()
    std::vector<std::vector<std::string>> basis_labels;  // optional, per degree

    std::size_t top_degree() const { return dims.empty() ? 0 : dims.size() - 1; }
};

ChainComplex make_complex(CoeffRing coeff, std::vector<std::size_t> dims,
                          std::vector<IntMatrix> boundaries);

// Confirms d∘d == 0 over the coefficient ring and shape coherence.
// Throws invalid_input naming the first offending degree.
void validate(const ChainComplex& c);

struct HomologyGroup {
    std::size_t free_rank = 0;
    std::vector<Int> torsion;  // entries >= 2, divisibility order

    friend bool operator==(const HomologyGroup&, const HomologyGroup&) = default;
};

std::string to_string(const HomologyGroup& h);

// Homology by degree. Over Z the torsion comes from the Smith form of the
// boundary restricted to the saturated kernel; over Q/Z2 ranks only.
std::vector<HomologyGroup> homology(const ChainComplex& c);

}  // namespace qhtk
