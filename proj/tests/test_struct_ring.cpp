#include "qhtk/struct_ring.hpp"

#include "doctest.h"
#include "qhtk/errors.hpp"
#include "test_support.hpp"

#include <random>

using namespace qhtk;

namespace {

StructRing split_pair_ring(long long sv, long long tv, long long sw, long long tw) {
    // rank 3: {e, v, w} with v^2 = sv v + tv e, w^2 = sw w + tw e, vw = wv = 0
    StructRing r;
    r.rank = 3;
    r.unit = 0;
    r.labels = {"e", "v", "w"};
    r.mu = Hypermatrix({3, 3, 3});
    for (std::size_t j = 0; j < 3; ++j) {
        r.mu.at({0, j, j}) = 1;
        if (j != 0) r.mu.at({j, 0, j}) = 1;
    }
    r.mu.at({1, 1, 0}) = Rat(tv);
    r.mu.at({1, 1, 1}) = Rat(sv);
    r.mu.at({2, 2, 0}) = Rat(tw);
    r.mu.at({2, 2, 2}) = Rat(sw);
    return r;
}

}  // namespace

TEST_CASE("quadratic discriminant values") {
    CHECK(quadratic_algebra_discriminant({Int(0), Int(1)}) == 4);
    CHECK(quadratic_algebra_discriminant({Int(0), Int(0)}) == 0);
    CHECK(quadratic_algebra_discriminant({Int(2), Int(-1)}) == 0);
}

TEST_CASE("change of lift preserves the discriminant, frozen case") {
    QuadraticAlgebra q{Int(1), Int(0)};
    QuadraticAlgebra r = quadratic_change_of_lift(q, -1, Int(1));
    CHECK(r.sigma == 1);
    CHECK(r.tau == 0);
    CHECK(quadratic_algebra_discriminant(r) == 1);

    QuadraticAlgebra s = quadratic_change_of_lift(q, 1, Int(0));
    CHECK(s.sigma == q.sigma);
    CHECK(s.tau == q.tau);

    QuadraticAlgebra t = quadratic_change_of_lift({Int(5), Int(-3)}, -1, Int(0));
    CHECK(t.sigma == -5);
    CHECK(t.tau == -3);
    CHECK_THROWS_AS(quadratic_change_of_lift(q, 2, Int(0)), invalid_input);
}

TEST_CASE("change of lift invariance, exhaustive over the stated box") {
    for (long long sg = -10; sg <= 10; ++sg)
        for (long long tu = -10; tu <= 10; ++tu) {
            QuadraticAlgebra q{Int(sg), Int(tu)};
            Int d = quadratic_algebra_discriminant(q);
            for (int u : {1, -1})
                for (long long m = -10; m <= 10; ++m)
                    CHECK(quadratic_algebra_discriminant(quadratic_change_of_lift(q, u, Int(m))) ==
                          d);
        }
}

TEST_CASE("embed_rank2 reproduces sigma^2 + 4 tau") {
    CHECK_NOTHROW(check_unit_law(embed_rank2({Int(0), Int(1)})));
    CHECK(det222(embed_rank2({Int(0), Int(1)}).mu) == Rat(4));
    CHECK(det222(embed_rank2({Int(3), Int(1)}).mu) == Rat(13));
    CHECK(det222(embed_rank2({Int(2), Int(-1)}).mu) == Rat(0));
    CHECK(is_associative(embed_rank2({Int(7), Int(-5)})));
}

TEST_CASE("ring_discriminant on rank 2") {
    auto res = ring_discriminant(embed_rank2({Int(0), Int(1)}));
    CHECK(res.kind == DiscriminantResult::Kind::value);
    CHECK(res.value == Rat(4));
}

TEST_CASE("ring_discriminant unknown on an honest inconclusive rank-3 ring") {
    // v^2 = e, w^2 = e, vw = 0: no basis triple certifies, no candidate given
    StructRing r = split_pair_ring(0, 1, 0, 1);
    auto res = ring_discriminant(r);
    CHECK(res.kind == DiscriminantResult::Kind::unknown);
}

TEST_CASE("ring_discriminant certifies with a supplied witness") {
    // v^2 = 0 inside the V block: (e - v) squares to ... use sigma=2, tau=-1
    StructRing r = split_pair_ring(2, -1, 0, 1);
    KernelPoint p;
    p.factors = {qhtest::vec({1, -1, 0}), qhtest::vec({1, -1, 0}), qhtest::vec({1, 1, 0})};
    auto res = ring_discriminant(r, {p});
    CHECK(res.kind == DiscriminantResult::Kind::zero_certified);
    REQUIRE(res.witness.has_value());
    CHECK(kernel_certify(r.mu, *res.witness));
}

TEST_CASE("unit law violations are rejected") {
    StructRing r = embed_rank2({Int(0), Int(1)});
    r.mu.at({0, 1, 1}) = 2;
    CHECK_THROWS_AS(check_unit_law(r), invalid_input);
}

TEST_CASE("base_change identity and the two rank-2 frozen cases") {
    StructRing r = embed_rank2({Int(3), Int(1)});
    StructRing same = base_change(r, IntMatrix::identity(2));
    CHECK(same.mu == r.mu);

    // T = [[1,1],[0,1]]: new lift x' = x + e, matching change of lift m=1
    StructRing shifted = base_change(r, qhtest::mat({{1, 1}, {0, 1}}));
    QuadraticAlgebra q = quadratic_change_of_lift({Int(3), Int(1)}, 1, Int(1));
    CHECK(shifted.unit == 0);
    CHECK(shifted.mu.at({1, 1, 1}) == Rat(q.sigma));
    CHECK(shifted.mu.at({1, 1, 0}) == Rat(q.tau));
    CHECK(det222(shifted.mu) == det222(r.mu));

    // T = diag(1,-1): u = -1 substitution
    StructRing negated = base_change(r, qhtest::mat({{1, 0}, {0, -1}}));
    QuadraticAlgebra qn = quadratic_change_of_lift({Int(3), Int(1)}, -1, Int(0));
    CHECK(negated.mu.at({1, 1, 1}) == Rat(qn.sigma));
    CHECK(negated.mu.at({1, 1, 0}) == Rat(qn.tau));
    CHECK(det222(negated.mu) == det222(r.mu));
}

TEST_CASE("base_change rejects non-unimodular and unit-breaking matrices") {
    StructRing r = embed_rank2({Int(0), Int(1)});
    CHECK_THROWS_AS(base_change(r, qhtest::mat({{2, 0}, {0, 1}})), invalid_input);
    // columns (x, e): the unit is still a basis vector (second), allowed
    StructRing swapped = base_change(r, qhtest::mat({{0, 1}, {1, 0}}));
    CHECK(swapped.unit == 1);
    // columns (e+x, x): unit = first - second, not a basis vector
    CHECK_THROWS_AS(base_change(r, qhtest::mat({{1, 0}, {1, 1}})), invalid_input);
}

TEST_CASE("rank-2 discriminant is invariant under 100 random unimodular changes") {
    std::mt19937_64 rng(321);
    std::uniform_int_distribution<int> shear(-3, 3);
    std::uniform_int_distribution<int> pick(0, 2);
    StructRing r = embed_rank2({Int(3), Int(-2)});
    Rat d = det222(r.mu);
    int done = 0;
    while (done < 100) {
        // products of elementary matrices fixing the unit as a basis vector:
        // [[1, m], [0, ±1]] keeps column 0 = e
        IntMatrix t = IntMatrix::identity(2);
        t.at(0, 1) = shear(rng);
        t.at(1, 1) = pick(rng) == 0 ? -1 : 1;
        StructRing s = base_change(r, t);
        CHECK(det222(s.mu) == d);
        auto res = ring_discriminant(s);
        CHECK(res.value == d);
        ++done;
    }
}

TEST_CASE("split ring: kernel extends from the degenerate V block") {
    StructRing r = split_pair_ring(2, -1, 0, 1);
    SplitDecl split{{1}, {2}};
    KernelPoint p;  // certifies embed_rank2(2,-1) on {e, v}
    p.factors = {qhtest::vec({1, -1}), qhtest::vec({1, -1}), qhtest::vec({1, 1})};
    KernelPoint ext = split_kernel_extend(r, split, p);
    CHECK(ext.factors[0] == qhtest::vec({1, -1, 0}));
    CHECK(kernel_certify(r.mu, ext));
}

TEST_CASE("split ring: nondegenerate V block fails the precondition") {
    StructRing r = split_pair_ring(0, 1, 2, -1);
    SplitDecl split{{1}, {2}};
    KernelPoint p;
    p.factors = {qhtest::vec({1, -1}), qhtest::vec({1, -1}), qhtest::vec({1, 1})};
    CHECK_THROWS_AS(split_kernel_extend(r, split, p), invalid_input);
}

TEST_CASE("split ring: degenerate W block extends from the mirrored declaration") {
    StructRing r = split_pair_ring(0, 1, 2, -1);
    SplitDecl mirrored{{2}, {1}};  // treat the W block as the certified side
    KernelPoint p;
    p.factors = {qhtest::vec({1, -1}), qhtest::vec({1, -1}), qhtest::vec({1, 1})};
    KernelPoint ext = split_kernel_extend(r, mirrored, p);
    CHECK(ext.factors[0] == qhtest::vec({1, 0, -1}));
    CHECK(kernel_certify(r.mu, ext));
}

TEST_CASE("split conditions are enforced") {
    StructRing r = split_pair_ring(2, -1, 0, 1);
    r.mu.at({1, 2, 0}) = 1;  // nonzero V*W product
    SplitDecl split{{1}, {2}};
    KernelPoint p;
    p.factors = {qhtest::vec({1, -1}), qhtest::vec({1, -1}), qhtest::vec({1, 1})};
    CHECK_THROWS_AS(split_kernel_extend(r, split, p), invalid_input);
}
