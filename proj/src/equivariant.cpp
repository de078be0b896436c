#include "qhtk/equivariant.hpp"

#include "qhtk/errors.hpp"

#include <sstream>

namespace qhtk {

GroupRingMatrix operator*(const GroupRingMatrix& x, const GroupRingMatrix& y) {
    // (a1 + b1 g)(a2 + b2 g) = (a1 a2 + b1 b2) + (a1 b2 + b1 a2) g
    return GroupRingMatrix{x.a * y.a + x.b * y.b, x.a * y.b + x.b * y.a};
}

void validate(const GroupRingComplex& e) {
    if (e.ranks.size() != e.boundaries.size())
        throw invalid_input("group-ring complex: boundaries list must match ranks list");
    if (e.action.rows() != e.action.cols())
        throw invalid_input("group-ring complex: action matrix must be square");
    if (!(e.action * e.action == IntMatrix::identity(e.action.rows())))
        throw invalid_input("group-ring complex: action matrix is not an involution");
    for (std::size_t k = 0; k < e.ranks.size(); ++k) {
        std::size_t expect_rows = k == 0 ? 0 : e.ranks[k - 1];
        if (e.boundaries[k].rows() != expect_rows || e.boundaries[k].cols() != e.ranks[k]) {
            std::ostringstream os;
            os << "group-ring complex: boundary shape mismatch at degree " << k;
            throw invalid_input(os.str());
        }
        if (e.boundaries[k].a.rows() != e.boundaries[k].b.rows() ||
            e.boundaries[k].a.cols() != e.boundaries[k].b.cols())
            throw invalid_input("group-ring complex: entry pair matrices disagree in shape");
    }
    for (std::size_t k = 1; k + 1 < e.boundaries.size(); ++k) {
        if (!(e.boundaries[k] * e.boundaries[k + 1]).is_zero()) {
            std::ostringstream os;
            os << "group-ring complex: d∘d != 0 at degree " << k + 1;
            throw invalid_input(os.str());
        }
    }
}

ChainComplex equivariant_collapse(const GroupRingComplex& e) {
    validate(e);
    std::size_t m = e.action.rows();
    ChainComplex c;
    c.coeff = CoeffRing::Z();
    c.dims.resize(e.ranks.size());
    for (std::size_t k = 0; k < e.ranks.size(); ++k) c.dims[k] = e.ranks[k] * m;
    c.boundaries.resize(e.ranks.size());
    for (std::size_t k = 0; k < e.ranks.size(); ++k) {
        const GroupRingMatrix& d = e.boundaries[k];
        IntMatrix blk(d.rows() * m, d.cols() * m);
        for (std::size_t i = 0; i < d.rows(); ++i)
            for (std::size_t j = 0; j < d.cols(); ++j) {
                const Int& a = d.a.at(i, j);
                const Int& b = d.b.at(i, j);
                if (a == 0 && b == 0) continue;
                for (std::size_t u = 0; u < m; ++u)
                    for (std::size_t v = 0; v < m; ++v) {
                        Int val = b * e.action.at(u, v);
                        if (u == v) val += a;
                        blk.at(i * m + u, j * m + v) = std::move(val);
                    }
            }
        c.boundaries[k] = std::move(blk);
    }
    return c;
}

GroupRingComplex build_antipodal_sphere(std::size_t i) {
    GroupRingComplex e;
    e.ranks.assign(i + 1, 1);
    e.boundaries.resize(i + 1);
    e.boundaries[0] = GroupRingMatrix{IntMatrix(0, 1), IntMatrix(0, 1)};
    for (std::size_t k = 1; k <= i; ++k) {
        GroupRingMatrix d{IntMatrix(1, 1), IntMatrix(1, 1)};
        d.a.at(0, 0) = 1;
        d.b.at(0, 0) = (k % 2 == 0) ? Int(1) : Int(-1);  // (1+g) even, (1-g) odd
        e.boundaries[k] = std::move(d);
    }
    e.action = IntMatrix::identity(1);
    return e;
}

namespace {

// index of generator (alpha, beta, type) within the bidegree block
struct TensorLayout {
    const GroupRingComplex& e1;
    const GroupRingComplex& e2;
    // per total degree: list of (p, q) with p+q = degree and ranks nonzero
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> bidegrees;
    // offset of block (p,q) within the degree p+q
    std::vector<std::vector<std::size_t>> offsets;

    std::size_t block_size(std::size_t p, std::size_t q) const {
        return e1.ranks[p] * e2.ranks[q] * 2;
    }
    // position of (alpha, beta, type) inside block (p,q)
    std::size_t local(std::size_t p, std::size_t q, std::size_t alpha, std::size_t beta,
                      int type) const {
        (void)p;
        return (alpha * e2.ranks[q] + beta) * 2 + static_cast<std::size_t>(type);
    }
};

}  // namespace

GroupRingComplex tensor_diagonal(const GroupRingComplex& e1, const GroupRingComplex& e2) {
    validate(e1);
    validate(e2);
    std::size_t n1 = e1.ranks.size();  // degrees 0..n1-1
    std::size_t n2 = e2.ranks.size();
    std::size_t n = n1 + n2 - 1;

    TensorLayout lay{e1, e2, {}, {}};
    lay.bidegrees.resize(n);
    lay.offsets.resize(n);
    std::vector<std::size_t> ranks(n, 0);
    for (std::size_t deg = 0; deg < n; ++deg) {
        std::size_t off = 0;
        for (std::size_t p = 0; p < n1; ++p) {
            if (deg < p || deg - p >= n2) continue;
            std::size_t q = deg - p;
            lay.bidegrees[deg].emplace_back(p, q);
            lay.offsets[deg].push_back(off);
            off += lay.block_size(p, q);
        }
        ranks[deg] = off;  // block_size counts Z[G]-generators (two per pair)
    }

    GroupRingComplex t;
    t.ranks = ranks;
    t.action = IntMatrix::identity(1);
    t.boundaries.resize(n);
    t.boundaries[0] = GroupRingMatrix{IntMatrix(0, ranks[0]), IntMatrix(0, ranks[0])};

    auto offset_of = [&](std::size_t deg, std::size_t p) -> std::size_t {
        for (std::size_t b = 0; b < lay.bidegrees[deg].size(); ++b)
            if (lay.bidegrees[deg][b].first == p) return lay.offsets[deg][b];
        throw internal_error("tensor_diagonal: missing bidegree block");
    };

    for (std::size_t deg = 1; deg < n; ++deg) {
        GroupRingMatrix d{IntMatrix(ranks[deg - 1], ranks[deg]),
                          IntMatrix(ranks[deg - 1], ranks[deg])};
        for (std::size_t b = 0; b < lay.bidegrees[deg].size(); ++b) {
            auto [p, q] = lay.bidegrees[deg][b];
            std::size_t src_off = lay.offsets[deg][b];
            for (std::size_t alpha = 0; alpha < e1.ranks[p]; ++alpha)
                for (std::size_t beta = 0; beta < e2.ranks[q]; ++beta)
                    for (int type = 0; type < 2; ++type) {
                        std::size_t col = src_off + lay.local(p, q, alpha, beta, type);
                        // d1 x ⊗ y part: lands in bidegree (p-1, q)
                        if (p >= 1 && e1.ranks[p - 1] > 0) {
                            std::size_t dst = offset_of(deg - 1, p - 1);
                            const GroupRingMatrix& d1 = e1.boundaries[p];
                            for (std::size_t g = 0; g < e1.ranks[p - 1]; ++g) {
                                const Int& a1 = d1.a.at(g, alpha);
                                const Int& b1 = d1.b.at(g, alpha);
                                // type 0 = x⊗y: a1·(x'⊗y)[same type] + b1·g·(x'⊗gy)[other]
                                // type 1 = x⊗gy: a1·(x'⊗gy)[same]    + b1·g·(x'⊗y)[other]
                                std::size_t same =
                                    dst + lay.local(p - 1, q, g, beta, type);
                                std::size_t other =
                                    dst + lay.local(p - 1, q, g, beta, 1 - type);
                                d.a.at(same, col) += a1;
                                d.b.at(other, col) += b1;
                            }
                        }
                        // (-1)^p x ⊗ d2 y part: lands in bidegree (p, q-1)
                        if (q >= 1 && e2.ranks[q - 1] > 0) {
                            std::size_t dst = offset_of(deg - 1, p);
                            const GroupRingMatrix& d2 = e2.boundaries[q];
                            Int sgn = (p % 2 == 0) ? Int(1) : Int(-1);
                            for (std::size_t g = 0; g < e2.ranks[q - 1]; ++g) {
                                const Int& a2 = d2.a.at(g, beta);
                                const Int& b2 = d2.b.at(g, beta);
                                // type 0: a2·(x⊗y') + b2·(x⊗gy')   (no g factor)
                                // type 1: x⊗d2(gy) = x⊗g d2 y: a2·(x⊗gy') + b2·(x⊗y')
                                std::size_t same = dst + lay.local(p, q - 1, alpha, g, type);
                                std::size_t other =
                                    dst + lay.local(p, q - 1, alpha, g, 1 - type);
                                d.a.at(same, col) += sgn * a2;
                                d.a.at(other, col) += sgn * b2;
                            }
                        }
                    }
        }
        t.boundaries[deg] = std::move(d);
    }
    validate(t);  // d∘d == 0 by construction; fail loudly if not
    return t;
}

std::vector<HomologyGroup> homology_k(std::size_t n, std::size_t i) {
    if (n % 2 != 0) throw invalid_input("homology_k: n must be even");
    if (i > n) throw invalid_input("homology_k: index i must satisfy 0 <= i <= n");
    if (i > n - i) i = n - i;
    GroupRingComplex s1 = build_antipodal_sphere(i);
    GroupRingComplex s2 = build_antipodal_sphere(n - i);
    GroupRingComplex prod = tensor_diagonal(s1, s2);
    return homology(equivariant_collapse(prod));
}

bool is_orientable(std::size_t n, std::size_t i) {
    auto h = homology_k(n, i);
    const HomologyGroup& top = h.at(n);
    return top.free_rank == 1 && top.torsion.empty();
}

}  // namespace qhtk
