#include "qhtk/chain_complex.hpp"

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

}  // namespace

TEST_CASE("validate accepts zero and all-zero complexes") {
    ChainComplex zero = make_complex(CoeffRing::Z(), {}, {});
    CHECK_NOTHROW(validate(zero));

    ChainComplex flat = make_complex(CoeffRing::Z(), {2, 2},
                                     {IntMatrix(0, 2), IntMatrix(2, 2)});
    CHECK_NOTHROW(validate(flat));
}

TEST_CASE("validate rejects d∘d != 0 and reports degree 2") {
    ChainComplex c = make_complex(CoeffRing::Z(), {1, 1, 1},
                                  {qhtest::mat({{1}}), qhtest::mat({{1}})});
    CHECK_THROWS_WITH_AS(validate(c), doctest::Contains("degree 2"), invalid_input);
}

TEST_CASE("validate rejects shape mismatch") {
    ChainComplex c;
    c.coeff = CoeffRing::Z();
    c.dims = {2, 1};
    c.boundaries = {IntMatrix(0, 2), IntMatrix(1, 1)};
    CHECK_THROWS_AS(validate(c), invalid_input);
}

TEST_CASE("homology of RP^2 quotient complex") {
    // cellular complex of RP^2: Z <-0- Z <-2- Z
    ChainComplex c = make_complex(CoeffRing::Z(), {1, 1, 1},
                                  {qhtest::mat({{0}}), qhtest::mat({{2}})});
    auto h = homology(c);
    CHECK(h[0] == grp(1));
    CHECK(h[1] == grp(0, {2}));
    CHECK(h[2] == grp(0));
}

TEST_CASE("homology of the circle") {
    ChainComplex c = make_complex(CoeffRing::Z(), {1, 1}, {qhtest::mat({{0}})});
    auto h = homology(c);
    CHECK(h[0] == grp(1));
    CHECK(h[1] == grp(1));
}

TEST_CASE("acyclic two-term complex") {
    ChainComplex c = make_complex(CoeffRing::Z(), {1, 1}, {qhtest::mat({{1}})});
    auto h = homology(c);
    CHECK(h[0] == grp(0));
    CHECK(h[1] == grp(0));
}

TEST_CASE("torsion order and divisibility") {
    // d2 = diag(2, 6) into the 2-dim cycle space
    ChainComplex c = make_complex(CoeffRing::Z(), {2, 2},
                                  {qhtest::mat({{2, 0}, {0, 6}})});
    auto h = homology(c);
    CHECK(h[0] == grp(0, {2, 6}));
}

TEST_CASE("field coefficients give ranks") {
    ChainComplex c = make_complex(CoeffRing::Q(), {1, 1, 1},
                                  {qhtest::mat({{0}}), qhtest::mat({{2}})});
    auto h = homology(c);
    CHECK(h[0] == grp(1));
    CHECK(h[1] == grp(0));  // multiplication by 2 is invertible over Q
    CHECK(h[2] == grp(0));

    ChainComplex c2 = make_complex(CoeffRing::Z2(), {1, 1, 1},
                                   {qhtest::mat({{0}}), qhtest::mat({{2}})});
    auto h2 = homology(c2);
    CHECK(h2[0] == grp(1));
    CHECK(h2[1] == grp(1));  // x2 is the zero map mod 2
    CHECK(h2[2] == grp(1));
}

TEST_CASE("to_string of homology groups") {
    CHECK(to_string(grp(0)) == "0");
    CHECK(to_string(grp(1)) == "Z");
    CHECK(to_string(grp(2, {2})) == "Z^2 + Z/2");
}
