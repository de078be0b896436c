#pragma once

#include "qhtk/chain_complex.hpp"

#include <map>
#include <utility>
#include <vector>

namespace qhtk {

// Field-coefficient chain complex with a bounded increasing filtration level
// per generator. A generator of chain degree n at level p sits in bidegree
// (p, q = n - p).
struct FilteredComplex {
    ChainComplex base;                    // coeff must be Q or Z2
    std::vector<std::vector<int>> levels;  // per degree, per generator
};

// Checks shapes, field coefficients, and that d respects the filtration;
// names the first offending generator otherwise.
void validate(const FilteredComplex& f);

using Bidegree = std::pair<int, int>;  // (p, q)

struct Page {
    int r = 0;
    std::map<Bidegree, std::size_t> groups;  // nonzero dimensions only
    // d_r at (p,q), a matrix E^r_{p,q} -> E^r_{p-r,q+r-1}; zero maps omitted
    std::map<Bidegree, std::vector<std::vector<Rat>>> differentials;

    // page content equality: same groups and same differentials
    friend bool operator==(const Page& a, const Page& b) {
        return a.groups == b.groups && a.differentials == b.differentials;
    }
};

Page page(const FilteredComplex& f, int r);

// Smallest r with Page(r) == Page(r') for all r' >= r. At most
// (number of distinct levels) + 1.
int collapse_page(const FilteredComplex& f);

struct ConvergenceReport {
    bool consistent = true;
    // (p,q) -> {dim E^inf, dim F_p H / F_{p-1} H}
    std::map<Bidegree, std::pair<std::size_t, std::size_t>> graded;
    // n -> {sum of E^inf dims on the diagonal, dim H_n}
    std::map<int, std::pair<std::size_t, std::size_t>> totals;
};

// Compares E^inf with the filtration induced on the homology of the base
// complex. A mismatch means an internal bug, reflected by consistent=false.
ConvergenceReport verify_convergence(const FilteredComplex& f);

}  // namespace qhtk
