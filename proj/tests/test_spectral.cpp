#include "qhtk/spectral.hpp"

#include "doctest.h"
#include "qhtk/errors.hpp"
#include "test_support.hpp"

#include <random>

using namespace qhtk;

namespace {

FilteredComplex two_generator_acyclic() {
    // d(a) = x, d(b) = x + y over Z2; levels: a,x -> 0; b,y -> 1
    FilteredComplex f;
    f.base = make_complex(CoeffRing::Z2(), {2, 2}, {qhtest::mat({{1, 1}, {0, 1}})});
    f.levels = {{0, 1}, {0, 1}};
    return f;
}

// direct homology dimensions of the base complex (oracle path)
std::vector<std::size_t> homology_dims(const ChainComplex& c) {
    auto h = homology(c);
    std::vector<std::size_t> out(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) out[i] = h[i].free_rank;
    return out;
}

FilteredComplex random_filtered(std::mt19937_64& rng, bool mod2) {
    std::uniform_int_distribution<std::size_t> degree_count(1, 4);
    std::uniform_int_distribution<std::size_t> gen_count(0, 4);
    std::uniform_int_distribution<int> level(0, 2);
    std::uniform_int_distribution<int> entry(-2, 2);

    for (;;) {
        std::size_t degs = degree_count(rng);
        std::vector<std::size_t> dims(degs);
        std::size_t total = 0;
        for (auto& d : dims) {
            d = gen_count(rng);
            total += d;
        }
        if (total == 0 || total > 12) continue;
        std::vector<std::vector<int>> levels(degs);
        for (std::size_t n = 0; n < degs; ++n) {
            levels[n].resize(dims[n]);
            for (auto& l : levels[n]) l = level(rng);
        }
        // random filtration-respecting boundaries with d∘d = 0: build d as a
        // random strictly-triangular-by-level map, then correct by zeroing
        // compositions via rejection
        std::vector<IntMatrix> bnd(degs);
        bnd[0] = IntMatrix(0, dims[0]);
        for (std::size_t n = 1; n < degs; ++n) {
            bnd[n] = IntMatrix(dims[n - 1], dims[n]);
            for (std::size_t j = 0; j < dims[n]; ++j)
                for (std::size_t i = 0; i < dims[n - 1]; ++i)
                    if (levels[n - 1][i] <= levels[n][j]) bnd[n].at(i, j) = entry(rng);
        }
        FilteredComplex f;
        f.base.coeff = mod2 ? CoeffRing::Z2() : CoeffRing::Q();
        f.base.dims = dims;
        f.base.boundaries = bnd;
        f.levels = levels;
        try {
            validate(f);
        } catch (const invalid_input&) {
            continue;  // d∘d != 0; resample
        }
        return f;
    }
}

}  // namespace

TEST_CASE("trivial filtration: E^1 carries the homology and later pages repeat") {
    // RP^2-style complex over Q with all levels 0
    FilteredComplex f;
    f.base = make_complex(CoeffRing::Q(), {1, 1, 1}, {qhtest::mat({{0}}), qhtest::mat({{2}})});
    f.levels = {{0}, {0}, {0}};
    auto h = homology_dims(f.base);
    Page p1 = page(f, 1);
    for (std::size_t n = 0; n < h.size(); ++n) {
        auto it = p1.groups.find({0, static_cast<int>(n)});
        std::size_t dim = it == p1.groups.end() ? 0 : it->second;
        CHECK(dim == h[n]);
    }
    CHECK(page(f, 2) == page(f, 7));
    CHECK(p1.differentials.empty());
}

TEST_CASE("two-generator acyclic example: E^1 vanishes, collapse at 1") {
    FilteredComplex f = two_generator_acyclic();
    Page p1 = page(f, 1);
    CHECK(p1.groups.empty());
    CHECK(collapse_page(f) == 1);
    auto rep = verify_convergence(f);
    CHECK(rep.consistent);
    for (const auto& [n, pair] : rep.totals) {
        CHECK(pair.first == 0);
        CHECK(pair.second == 0);
    }
}

TEST_CASE("zero differential: every page equals E^0, collapse 0") {
    FilteredComplex f;
    f.base = make_complex(CoeffRing::Q(), {2, 1}, {IntMatrix(2, 1)});
    f.levels = {{0, 1}, {1}};
    Page p0 = page(f, 0);
    CHECK(p0.differentials.empty());
    for (int r = 1; r <= 4; ++r) CHECK(page(f, r).groups == p0.groups);
    CHECK(collapse_page(f) == 0);
}

TEST_CASE("trivial filtration with nonzero d collapses at 1") {
    FilteredComplex f;
    f.base = make_complex(CoeffRing::Q(), {1, 1}, {qhtest::mat({{1}})});
    f.levels = {{0}, {0}};
    CHECK(collapse_page(f) == 1);
}

TEST_CASE("filtration violation is reported with the offending generator") {
    FilteredComplex f;
    f.base = make_complex(CoeffRing::Q(), {1, 1}, {qhtest::mat({{1}})});
    f.levels = {{1}, {0}};  // d of the level-0 generator hits level 1
    CHECK_THROWS_AS(validate(f), invalid_input);
}

TEST_CASE("field coefficients are required") {
    FilteredComplex f;
    f.base = make_complex(CoeffRing::Z(), {1}, {IntMatrix(0, 1)});
    f.levels = {{0}};
    CHECK_THROWS_AS(validate(f), invalid_input);
}

TEST_CASE("a two-level complex with a nonzero d_1") {
    // degree 1 generator at level 1 mapping to a degree 0 generator at level 0:
    // d_0 = 0 on graded pieces, d_1 kills both groups on page 2
    FilteredComplex f;
    f.base = make_complex(CoeffRing::Q(), {1, 1}, {qhtest::mat({{1}})});
    f.levels = {{0}, {1}};
    Page p0 = page(f, 0);
    CHECK(p0.differentials.empty());
    Page p1 = page(f, 1);
    REQUIRE(p1.groups.size() == 2);
    CHECK(p1.differentials.size() == 1);
    Page p2 = page(f, 2);
    CHECK(p2.groups.empty());
    CHECK(collapse_page(f) == 2);
    CHECK(verify_convergence(f).consistent);
}

TEST_CASE("page dimensions never increase with r") {
    std::mt19937_64 rng(424242);
    for (int trial = 0; trial < 40; ++trial) {
        FilteredComplex f = random_filtered(rng, trial % 2 == 0);
        Page prev = page(f, 0);
        for (int r = 1; r <= 4; ++r) {
            Page cur = page(f, r);
            for (const auto& [pq, dim] : cur.groups) {
                auto it = prev.groups.find(pq);
                std::size_t before = it == prev.groups.end() ? 0 : it->second;
                CHECK(dim <= before);
            }
            prev = cur;
        }
    }
}

TEST_CASE("d_r o d_r = 0 on every computed page") {
    std::mt19937_64 rng(31337);
    for (int trial = 0; trial < 30; ++trial) {
        FilteredComplex f = random_filtered(rng, trial % 2 == 1);
        for (int r = 0; r <= 3; ++r) {
            Page pg = page(f, r);
            for (const auto& [pq, m] : pg.differentials) {
                Bidegree target{pq.first - r, pq.second + r - 1};
                auto it = pg.differentials.find(target);
                if (it == pg.differentials.end()) continue;
                const auto& m2 = it->second;
                // compose m2 * m and check zero
                for (std::size_t i = 0; i < m2.size(); ++i)
                    for (std::size_t j = 0; j < m[0].size(); ++j) {
                        Rat acc = 0;
                        for (std::size_t k = 0; k < m.size(); ++k) acc += m2[i][k] * m[k][j];
                        if (f.base.coeff == CoeffRing::Z2()) {
                            REQUIRE(is_integer(acc));
                            CHECK(num(acc) % 2 == 0);
                        } else {
                            CHECK(acc == 0);
                        }
                    }
            }
        }
    }
}

TEST_CASE("convergence against the direct homology oracle") {
    std::mt19937_64 rng(90210);
    for (int trial = 0; trial < 60; ++trial) {
        FilteredComplex f = random_filtered(rng, trial % 2 == 0);
        auto rep = verify_convergence(f);
        CHECK(rep.consistent);
        auto h = homology_dims(f.base);
        for (const auto& [n, pair] : rep.totals) {
            std::size_t hn = (n >= 0 && static_cast<std::size_t>(n) < h.size())
                                 ? h[static_cast<std::size_t>(n)]
                                 : 0;
            CHECK(pair.second == hn);
            CHECK(pair.first == hn);
        }
    }
}

TEST_CASE("collapse index is bounded by distinct levels + 1") {
    std::mt19937_64 rng(1729);
    for (int trial = 0; trial < 40; ++trial) {
        FilteredComplex f = random_filtered(rng, trial % 2 == 0);
        std::set<int> levels;
        for (const auto& per : f.levels)
            for (int l : per) levels.insert(l);
        CHECK(collapse_page(f) <= static_cast<int>(levels.size()) + 1);
    }
}
