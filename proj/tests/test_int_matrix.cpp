#include "qhtk/int_matrix.hpp"

#include "doctest.h"
#include "test_support.hpp"

#include <random>

using namespace qhtk;

namespace {

// Independent SNF oracle: d_k = gcd(k x k minors) / gcd((k-1) x (k-1) minors),
// by brute force over all index subsets.
Int minor_gcd(const IntMatrix& m, std::size_t k) {
    if (k == 0) return 1;
    std::vector<std::size_t> ri(k), ci(k);
    Int g = 0;

    auto det_sub = [&](const std::vector<std::size_t>& rs, const std::vector<std::size_t>& cs) {
        IntMatrix sub(k, k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) sub.at(i, j) = m.at(rs[i], cs[j]);
        return determinant(sub);
    };

    std::vector<std::vector<std::size_t>> row_sets, col_sets;
    auto enumerate = [](std::size_t n, std::size_t k) {
        std::vector<std::vector<std::size_t>> sets;
        std::vector<std::size_t> idx(k);
        for (std::size_t i = 0; i < k; ++i) idx[i] = i;
        if (k > n) return sets;
        for (;;) {
            sets.push_back(idx);
            std::size_t i = k;
            while (i > 0) {
                --i;
                if (idx[i] != i + n - k) break;
                if (i == 0) return sets;
            }
            ++idx[i];
            for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
        }
    };
    row_sets = enumerate(m.rows(), k);
    col_sets = enumerate(m.cols(), k);
    for (const auto& rs : row_sets)
        for (const auto& cs : col_sets) g = gcd_int(g, det_sub(rs, cs));
    return g;
}

std::vector<Int> snf_diagonal_oracle(const IntMatrix& m) {
    std::size_t k = std::min(m.rows(), m.cols());
    std::vector<Int> d(k);
    Int prev = 1;
    for (std::size_t i = 1; i <= k; ++i) {
        Int g = minor_gcd(m, i);
        if (g == 0) {
            for (std::size_t j = i - 1; j < k; ++j) d[j] = 0;
            return d;
        }
        d[i - 1] = g / prev;
        prev = g;
    }
    return d;
}

void check_snf_contract(const IntMatrix& m) {
    SnfResult r = smith_normal_form(m);
    CHECK(r.u * m * r.v == r.s);
    CHECK(abs_int(determinant(r.u)) == 1);
    CHECK(abs_int(determinant(r.v)) == 1);
    auto d = r.diagonal();
    for (std::size_t i = 0; i < d.size(); ++i) {
        CHECK(d[i] >= 0);
        if (i + 1 < d.size() && d[i] != 0) {
            if (d[i + 1] != 0) CHECK(d[i + 1] % d[i] == 0);
        }
        if (d[i] == 0 && i + 1 < d.size()) CHECK(d[i + 1] == 0);
    }
    // off-diagonal of S is zero
    for (std::size_t i = 0; i < r.s.rows(); ++i)
        for (std::size_t j = 0; j < r.s.cols(); ++j)
            if (i != j) CHECK(r.s.at(i, j) == 0);
}

}  // namespace

TEST_CASE("snf identity") {
    IntMatrix id = IntMatrix::identity(2);
    SnfResult r = smith_normal_form(id);
    CHECK(r.s == id);
    CHECK(r.u == id);
    CHECK(r.v == id);
}

TEST_CASE("snf frozen example [[2,4],[6,8]]") {
    auto m = qhtest::mat({{2, 4}, {6, 8}});
    SnfResult r = smith_normal_form(m);
    CHECK(r.diagonal() == std::vector<Int>{2, 4});
    check_snf_contract(m);
    CHECK(snf_diagonal_oracle(m) == std::vector<Int>{2, 4});
}

TEST_CASE("snf zero 1x1") {
    auto m = qhtest::mat({{0}});
    SnfResult r = smith_normal_form(m);
    CHECK(r.diagonal() == std::vector<Int>{0});
}

TEST_CASE("snf random matrices satisfy the contract") {
    std::mt19937_64 rng(20240811);
    std::uniform_int_distribution<int> entry(-9, 9);
    std::uniform_int_distribution<std::size_t> dim(1, 6);
    for (int trial = 0; trial < 200; ++trial) {
        IntMatrix m(dim(rng), dim(rng));
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) m.at(i, j) = entry(rng);
        check_snf_contract(m);
    }
}

TEST_CASE("snf diagonal matches the minor-gcd oracle") {
    std::mt19937_64 rng(987654);
    std::uniform_int_distribution<int> entry(-3, 3);
    std::uniform_int_distribution<std::size_t> dim(1, 4);
    for (int trial = 0; trial < 500; ++trial) {
        IntMatrix m(dim(rng), dim(rng));
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) m.at(i, j) = entry(rng);
        CHECK(smith_normal_form(m).diagonal() == snf_diagonal_oracle(m));
    }
}

TEST_CASE("kernel over Q: injective map has empty kernel") {
    CHECK(kernel_basis(IntMatrix::identity(3), CoeffRing::Q()).empty());
}

TEST_CASE("kernel over Z2 of [[1,1]]") {
    auto k = kernel_basis(qhtest::mat({{1, 1}}), CoeffRing::Z2());
    REQUIRE(k.size() == 1);
    CHECK(k[0] == std::vector<Int>{1, 1});
}

TEST_CASE("kernel over Z/4 of [[2]] matches enumeration") {
    auto gens = kernel_basis(qhtest::mat({{2}}), CoeffRing::Zm(4));
    // oracle: enumerate all four residues
    std::vector<Int> expected;
    for (int x = 0; x < 4; ++x)
        if ((2 * x) % 4 == 0 && x != 0) expected.push_back(x);
    // returned generators must generate exactly {0, 2}
    std::vector<bool> generated(4, false);
    generated[0] = true;
    for (int rep = 0; rep < 4; ++rep)
        for (const auto& g : gens)
            for (int x = 0; x < 4; ++x)
                if (generated[x]) {
                    Int y = (x + g[0]) % 4;
                    generated[y.convert_to<int>()] = true;
                }
    for (int x = 0; x < 4; ++x) {
        bool in_kernel = (2 * x) % 4 == 0;
        CHECK(generated[x] == in_kernel);
    }
    REQUIRE(gens.size() == 1);
    CHECK(gens[0] == std::vector<Int>{2});
}

TEST_CASE("kernel vectors annihilate the matrix; Q count is cols - rank") {
    std::mt19937_64 rng(5150);
    std::uniform_int_distribution<int> entry(-9, 9);
    std::uniform_int_distribution<std::size_t> dim(1, 6);
    for (int trial = 0; trial < 100; ++trial) {
        IntMatrix m(dim(rng), dim(rng));
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) m.at(i, j) = entry(rng);
        for (auto coeff : {CoeffRing::Z(), CoeffRing::Q(), CoeffRing::Z2()}) {
            auto k = kernel_basis(m, coeff);
            for (const auto& v : k) {
                auto mv = m.apply(v);
                for (const Int& x : mv) {
                    if (coeff.kind == CoeffRing::Kind::mod_n)
                        CHECK(x % 2 == 0);
                    else
                        CHECK(x == 0);
                }
            }
            if (coeff.kind == CoeffRing::Kind::rationals) CHECK(k.size() == m.cols() - rank_q(m));
        }
    }
}

TEST_CASE("integer kernel is saturated") {
    // the row space kills (1,1); the saturated kernel is generated by (1,-1),
    // not by a proper multiple of it
    auto m = qhtest::mat({{2, 2}});
    auto k = kernel_basis(m, CoeffRing::Z());
    REQUIRE(k.size() == 1);
    Int g = gcd_int(k[0][0], k[0][1]);
    CHECK(abs_int(g) == 1);
}

TEST_CASE("solve examples") {
    auto id = IntMatrix::identity(2);
    auto x = solve(id, {Rat(3), Rat(-5)}, CoeffRing::Z());
    REQUIRE(x.has_value());
    CHECK(*x == std::vector<Rat>{Rat(3), Rat(-5)});

    auto two = qhtest::mat({{2}});
    CHECK_FALSE(solve(two, {Rat(1)}, CoeffRing::Z()).has_value());

    auto hx = solve(two, {Rat(1)}, CoeffRing::Q());
    REQUIRE(hx.has_value());
    CHECK((*hx)[0] == Rat(1, 2));
}

TEST_CASE("solve over Z/m") {
    auto m = qhtest::mat({{2}});
    auto x = solve(m, {Rat(2)}, CoeffRing::Zm(4));
    REQUIRE(x.has_value());
    CHECK((2 * num((*x)[0])) % 4 == 2 % 4);
    CHECK_FALSE(solve(m, {Rat(1)}, CoeffRing::Zm(4)).has_value());
}

TEST_CASE("solve random instances verify") {
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<int> entry(-5, 5);
    std::uniform_int_distribution<std::size_t> dim(1, 5);
    for (int trial = 0; trial < 100; ++trial) {
        IntMatrix m(dim(rng), dim(rng));
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) m.at(i, j) = entry(rng);
        // build solvable instances by applying M to a random vector
        std::vector<Int> x0(m.cols());
        for (auto& v : x0) v = entry(rng);
        auto b = m.apply(x0);
        std::vector<Rat> br(b.size());
        for (std::size_t i = 0; i < b.size(); ++i) br[i] = Rat(b[i]);
        for (auto coeff : {CoeffRing::Z(), CoeffRing::Q(), CoeffRing::Z2(), CoeffRing::Zm(6)}) {
            auto x = solve(m, br, coeff);
            REQUIRE(x.has_value());
            for (std::size_t i = 0; i < m.rows(); ++i) {
                Rat acc = 0;
                for (std::size_t j = 0; j < m.cols(); ++j) acc += Rat(m.at(i, j)) * (*x)[j];
                Rat diff = acc - br[i];
                if (coeff.kind == CoeffRing::Kind::mod_n) {
                    REQUIRE(is_integer(diff));
                    CHECK(num(diff) % coeff.modulus == 0);
                } else {
                    CHECK(diff == 0);
                }
            }
        }
    }
}

TEST_CASE("determinant basics") {
    CHECK(determinant(IntMatrix::identity(4)) == 1);
    CHECK(determinant(qhtest::mat({{2, 4}, {6, 8}})) == -8);
    CHECK(determinant(qhtest::mat({{0, 1}, {1, 0}})) == -1);
}
