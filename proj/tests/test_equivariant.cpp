#include "qhtk/equivariant.hpp"

#include "doctest.h"
#include "qhtk/errors.hpp"
#include "test_support.hpp"

using namespace qhtk;

namespace {

HomologyGroup grp(std::size_t free_rank, std::initializer_list<long long> torsion = {}) {
    HomologyGroup h;
    h.free_rank = free_rank;
    for (long long t : torsion) h.torsion.emplace_back(t);
    return h;
}

// Oracle for the trivial-action collapse: the quotient complex of S^i by the
// antipodal map is the standard cellular complex of RP^i with boundary maps
// alternating 0, 2, 0, 2, ...
ChainComplex rp_complex(std::size_t i) {
    std::vector<std::size_t> dims(i + 1, 1);
    std::vector<IntMatrix> bnd(i + 1);
    bnd[0] = IntMatrix(0, 1);
    for (std::size_t k = 1; k <= i; ++k) {
        bnd[k] = IntMatrix(1, 1);
        bnd[k].at(0, 0) = (k % 2 == 0) ? 2 : 0;
    }
    return make_complex(CoeffRing::Z(), dims, bnd);
}

// Closed-form homology of RP^i with integer coefficients.
std::vector<HomologyGroup> rp_homology(std::size_t i) {
    std::vector<HomologyGroup> h(i + 1);
    h[0] = grp(1);
    for (std::size_t k = 1; k <= i; ++k) {
        if (k % 2 == 1 && k < i) h[k] = grp(0, {2});
        else if (k == i && i % 2 == 1) h[k] = grp(1);
        else h[k] = grp(0);
    }
    return h;
}

IntMatrix minus_one() {
    IntMatrix m(1, 1);
    m.at(0, 0) = -1;
    return m;
}

}  // namespace

TEST_CASE("group ring matrix product") {
    // (1+g)(1-g) = 1 - g + g - g^2 = 0
    GroupRingMatrix even{qhtest::mat({{1}}), qhtest::mat({{1}})};
    GroupRingMatrix odd{qhtest::mat({{1}}), qhtest::mat({{-1}})};
    CHECK((even * odd).is_zero());
    CHECK((odd * even).is_zero());
}

TEST_CASE("antipodal sphere complexes are valid") {
    for (std::size_t i = 0; i <= 8; ++i) CHECK_NOTHROW(validate(build_antipodal_sphere(i)));
}

TEST_CASE("S^0 has a single generator and no boundaries") {
    auto e = build_antipodal_sphere(0);
    CHECK(e.ranks == std::vector<std::size_t>{1});
    auto h = homology(equivariant_collapse(e));
    CHECK(h[0] == grp(1));  // quotient of two points is a point
}

TEST_CASE("trivial-action collapse equals the quotient complex oracle") {
    for (std::size_t i = 1; i <= 6; ++i) {
        auto collapsed = equivariant_collapse(build_antipodal_sphere(i));
        auto oracle = rp_complex(i);
        CHECK(collapsed.dims == oracle.dims);
        for (std::size_t k = 0; k <= i; ++k) CHECK(collapsed.boundaries[k] == oracle.boundaries[k]);
        CHECK(homology(collapsed) == rp_homology(i));
    }
}

TEST_CASE("RP^1 and RP^2 homology through the collapse") {
    auto h1 = homology(equivariant_collapse(build_antipodal_sphere(1)));
    CHECK(h1[0] == grp(1));
    CHECK(h1[1] == grp(1));

    auto h2 = homology(equivariant_collapse(build_antipodal_sphere(2)));
    CHECK(h2[0] == grp(1));
    CHECK(h2[1] == grp(0, {2}));
    CHECK(h2[2] == grp(0));
}

TEST_CASE("twisted coefficients on the antipodal sphere") {
    // action -1 turns the boundary pattern into 2, 0, 2, ... so for S^2 the
    // homology reads Z/2, 0, Z
    GroupRingComplex e = build_antipodal_sphere(2);
    e.action = minus_one();
    auto h = homology(equivariant_collapse(e));
    CHECK(h[0] == grp(0, {2}));
    CHECK(h[1] == grp(0));
    CHECK(h[2] == grp(1));
}

TEST_CASE("twisted line pattern for all i <= 7") {
    // Z/2 at even degrees < i, 0 at odd degrees, Z at degree i iff i is even
    for (std::size_t i = 1; i <= 7; ++i) {
        GroupRingComplex e = build_antipodal_sphere(i);
        e.action = minus_one();
        auto h = homology(equivariant_collapse(e));
        for (std::size_t k = 0; k <= i; ++k) {
            if (k == i && i % 2 == 0) CHECK(h[k] == grp(1));
            else if (k % 2 == 0 && k < i) CHECK(h[k] == grp(0, {2}));
            else CHECK(h[k] == grp(0));
        }
    }
}

TEST_CASE("collapse rejects a non-involutive action") {
    GroupRingComplex e = build_antipodal_sphere(1);
    e.action = qhtest::mat({{2}});
    CHECK_THROWS_AS(equivariant_collapse(e), invalid_input);
}

TEST_CASE("tensor of two S^0 collapses to two points") {
    // four points with a free involution leave two orbits
    auto t = tensor_diagonal(build_antipodal_sphere(0), build_antipodal_sphere(0));
    auto h = homology(equivariant_collapse(t));
    REQUIRE(h.size() == 1);
    CHECK(h[0] == grp(2));
}

TEST_CASE("S^0 x S^n diagonal quotient is S^n") {
    for (std::size_t n : {1u, 2u, 3u}) {
        auto t = tensor_diagonal(build_antipodal_sphere(0), build_antipodal_sphere(n));
        auto h = homology(equivariant_collapse(t));
        REQUIRE(h.size() == n + 1);
        CHECK(h[0] == grp(1));
        CHECK(h[n] == grp(1));
        for (std::size_t k = 1; k < n; ++k) CHECK(h[k] == grp(0));
    }
}

TEST_CASE("S^1 x S^1 diagonal quotient is the torus") {
    auto t = tensor_diagonal(build_antipodal_sphere(1), build_antipodal_sphere(1));
    auto h = homology(equivariant_collapse(t));
    REQUIRE(h.size() == 3);
    CHECK(h[0] == grp(1));
    CHECK(h[1] == grp(2));
    CHECK(h[2] == grp(1));
}

TEST_CASE("S^2 x S^2 diagonal quotient") {
    auto t = tensor_diagonal(build_antipodal_sphere(2), build_antipodal_sphere(2));
    auto h = homology(equivariant_collapse(t));
    REQUIRE(h.size() == 5);
    CHECK(h[0] == grp(1));
    CHECK(h[1] == grp(0, {2}));
    CHECK(h[2] == grp(0, {2}));
    CHECK(h[3] == grp(0));
    CHECK(h[4] == grp(1));
}

TEST_CASE("homology_k frozen tables") {
    CHECK(homology_k(2, 1) ==
          std::vector<HomologyGroup>{grp(1), grp(2), grp(1)});
    CHECK(homology_k(4, 2) ==
          std::vector<HomologyGroup>{grp(1), grp(0, {2}), grp(0, {2}), grp(0), grp(1)});
    CHECK(homology_k(6, 3) == std::vector<HomologyGroup>{grp(1), grp(0, {2}), grp(0), grp(2),
                                                         grp(0, {2}), grp(0), grp(1)});
}

TEST_CASE("homology_k symmetry in i and n-i") {
    for (std::size_t n : {2u, 4u, 6u})
        for (std::size_t i = 0; i <= n; ++i) CHECK(homology_k(n, i) == homology_k(n, n - i));
}

TEST_CASE("homology_k top and bottom groups; orientability") {
    for (std::size_t n : {2u, 4u, 6u, 8u})
        for (std::size_t i = 0; i <= n; ++i) {
            auto h = homology_k(n, i);
            CHECK(h[0] == grp(1));
            CHECK(h[n] == grp(1));
            CHECK(is_orientable(n, i));
        }
}

TEST_CASE("homology_k refuses odd n") {
    CHECK_THROWS_AS(homology_k(3, 1), invalid_input);
}
