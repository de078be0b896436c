#include "qhtk/hypermatrix.hpp"

#include "qhtk/errors.hpp"

#include <algorithm>
#include <array>
#include <numeric>

namespace qhtk {

Hypermatrix::Hypermatrix(std::vector<std::size_t> format) : format_(std::move(format)) {
    std::size_t n = 1;
    for (std::size_t k : format_) {
        if (k == 0) throw invalid_input("hypermatrix: zero-length axis");
        n *= k;
    }
    entries_.assign(format_.empty() ? 1 : n, Rat(0));
}

std::size_t Hypermatrix::offset(const std::vector<std::size_t>& idx) const {
    if (idx.size() != format_.size()) throw invalid_input("hypermatrix: index arity mismatch");
    std::size_t off = 0;
    for (std::size_t d = 0; d < idx.size(); ++d) {
        if (idx[d] >= format_[d]) throw invalid_input("hypermatrix: index out of range");
        off = off * format_[d] + idx[d];
    }
    return off;
}

std::vector<std::size_t> Hypermatrix::index_of(std::size_t offset) const {
    std::vector<std::size_t> idx(format_.size());
    for (std::size_t d = format_.size(); d-- > 0;) {
        idx[d] = offset % format_[d];
        offset /= format_[d];
    }
    return idx;
}

bool Hypermatrix::is_format(std::initializer_list<std::size_t> f) const {
    return std::equal(format_.begin(), format_.end(), f.begin(), f.end());
}

bool Hypermatrix::is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const Rat& x) { return x == 0; });
}

Hypermatrix hypermatrix_222(std::initializer_list<Rat> entries) {
    if (entries.size() != 8) throw invalid_input("hypermatrix_222 needs 8 entries");
    Hypermatrix a({2, 2, 2});
    std::copy(entries.begin(), entries.end(), a.entries().begin());
    return a;
}

Hypermatrix slice(const Hypermatrix& a, std::size_t axis, std::size_t index) {
    if (axis >= a.order()) throw invalid_input("slice: axis out of range");
    if (index >= a.format()[axis]) throw invalid_input("slice: index out of range");
    std::vector<std::size_t> fmt = a.format();
    fmt.erase(fmt.begin() + static_cast<std::ptrdiff_t>(axis));
    Hypermatrix s(fmt);
    for (std::size_t off = 0; off < s.size(); ++off) {
        std::vector<std::size_t> idx = s.index_of(off);
        idx.insert(idx.begin() + static_cast<std::ptrdiff_t>(axis), index);
        s.entries()[off] = a.at(idx);
    }
    return s;
}

Hypermatrix group_act(const Hypermatrix& a, const IntMatrix& m, std::size_t axis) {
    if (axis >= a.order()) throw invalid_input("group_act: axis out of range");
    std::size_t k = a.format()[axis];
    if (m.rows() != k || m.cols() != k) throw invalid_input("group_act: matrix shape mismatch");
    Hypermatrix b(a.format());
    for (std::size_t off = 0; off < b.size(); ++off) {
        std::vector<std::size_t> idx = b.index_of(off);
        std::size_t s = idx[axis];
        Rat acc = 0;
        for (std::size_t l = 0; l < k; ++l) {
            if (m.at(l, s) == 0) continue;
            idx[axis] = l;
            acc += Rat(m.at(l, s)) * a.at(idx);
        }
        b.entries()[off] = std::move(acc);
    }
    return b;
}

Hypermatrix group_act(const Hypermatrix& a, const std::vector<IntMatrix>& ms) {
    if (ms.size() != a.order()) throw invalid_input("group_act: one matrix per axis required");
    Hypermatrix b = a;
    for (std::size_t axis = 0; axis < ms.size(); ++axis) b = group_act(b, ms[axis], axis);
    return b;
}

namespace {

struct Mono {
    int coeff;
    std::array<int, 4> idx;  // offsets of the four factors a_{ijk}
};

// Det(A) = (a000^2 a111^2 + a001^2 a110^2 + a010^2 a101^2 + a011^2 a100^2)
//        - 2(a000 a001 a110 a111 + a000 a010 a101 a111 + a000 a011 a100 a111
//           + a001 a010 a101 a110 + a001 a011 a110 a100 + a010 a011 a101 a100)
//        + 4(a000 a011 a101 a110 + a001 a010 a100 a111)
// offsets: a_ijk at 4i + 2j + k
constexpr std::array<Mono, 12> kDet222{{
    {1, {0, 0, 7, 7}},
    {1, {1, 1, 6, 6}},
    {1, {2, 2, 5, 5}},
    {1, {3, 3, 4, 4}},
    {-2, {0, 1, 6, 7}},
    {-2, {0, 2, 5, 7}},
    {-2, {0, 3, 4, 7}},
    {-2, {1, 2, 5, 6}},
    {-2, {1, 3, 6, 4}},
    {-2, {2, 3, 5, 4}},
    {4, {0, 3, 5, 6}},
    {4, {1, 2, 4, 7}},
}};

void require_222(const Hypermatrix& a, const char* who) {
    if (!a.is_format({2, 2, 2}))
        throw invalid_input(std::string(who) + ": hypermatrix must have format 2x2x2");
}

Rat det2(const Rat& a, const Rat& b, const Rat& c, const Rat& d) { return a * d - b * c; }

Rat pencil_det(const Hypermatrix& a, const Rat& x0, const Rat& x1) {
    const auto& e = a.entries();
    Rat m00 = x0 * e[0] + x1 * e[4];
    Rat m01 = x0 * e[1] + x1 * e[5];
    Rat m10 = x0 * e[2] + x1 * e[6];
    Rat m11 = x0 * e[3] + x1 * e[7];
    return det2(m00, m01, m10, m11);
}

void make_primitive_signed(std::vector<Int>& v) {
    Int g = 0;
    for (const Int& x : v) g = gcd_int(g, x);
    if (g == 0) return;
    for (Int& x : v) x /= g;
    for (const Int& x : v)
        if (x != 0) {
            if (x < 0)
                for (Int& y : v) y = -y;
            break;
        }
}

std::vector<Int> primitive_from_rats(const std::vector<Rat>& v) {
    Int lcm = 1;
    for (const Rat& x : v) lcm = lcm / gcd_int(lcm, den(x)) * den(x);
    std::vector<Int> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = num(v[i]) * (lcm / den(v[i]));
    make_primitive_signed(out);
    return out;
}

}  // namespace

Rat det222(const Hypermatrix& a) {
    require_222(a, "det222");
    const auto& e = a.entries();
    Rat total = 0;
    for (const Mono& m : kDet222)
        total += Rat(m.coeff) * e[m.idx[0]] * e[m.idx[1]] * e[m.idx[2]] * e[m.idx[3]];
    return total;
}

Hypermatrix det222_gradient(const Hypermatrix& a) {
    require_222(a, "det222_gradient");
    const auto& e = a.entries();
    Hypermatrix g({2, 2, 2});
    for (const Mono& m : kDet222)
        for (int slot = 0; slot < 4; ++slot) {
            Rat prod(m.coeff);
            for (int other = 0; other < 4; ++other)
                if (other != slot) prod *= e[m.idx[other]];
            g.entries()[m.idx[slot]] += prod;
        }
    return g;
}

bool BinaryForm::is_zero() const {
    return std::all_of(coeffs.begin(), coeffs.end(), [](const Rat& c) { return c == 0; });
}

BinaryForm schlafli_pencil(const Hypermatrix& a) {
    require_222(a, "schlafli_pencil");
    // det(x0 A0 + x1 A1) = c0 x0^2 + c1 x0 x1 + c2 x1^2
    Rat c0 = pencil_det(a, 1, 0);
    Rat c2 = pencil_det(a, 0, 1);
    Rat c1 = pencil_det(a, 1, 1) - c0 - c2;
    return BinaryForm{{c0, c1, c2}};
}

namespace {

// Sylvester resultant of two univariate polynomials (coefficients high to low
// degree would be conventional; here low index = highest power of x).
Rat sylvester_resultant(const std::vector<Rat>& p, const std::vector<Rat>& q) {
    std::size_t dp = p.size() - 1, dq = q.size() - 1;
    std::size_t n = dp + dq;
    if (n == 0) return Rat(1);
    // build the Sylvester matrix over Q and take an exact determinant via
    // rational Gaussian elimination
    std::vector<std::vector<Rat>> s(n, std::vector<Rat>(n, Rat(0)));
    for (std::size_t r = 0; r < dq; ++r)
        for (std::size_t j = 0; j <= dp; ++j) s[r][r + j] = p[j];
    for (std::size_t r = 0; r < dp; ++r)
        for (std::size_t j = 0; j <= dq; ++j) s[dq + r][r + j] = q[j];
    Rat det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && s[piv][c] == 0) ++piv;
        if (piv == n) return Rat(0);
        if (piv != c) {
            std::swap(s[piv], s[c]);
            det = -det;
        }
        det *= s[c][c];
        for (std::size_t i = c + 1; i < n; ++i) {
            if (s[i][c] == 0) continue;
            Rat f = s[i][c] / s[c][c];
            for (std::size_t j = c; j < n; ++j) s[i][j] -= f * s[c][j];
        }
    }
    return det;
}

}  // namespace

Rat binary_discriminant(const BinaryForm& f) {
    if (f.is_zero()) throw invalid_input("binary_discriminant: zero form");
    std::size_t d = f.degree();
    if (d < 2) throw invalid_input("binary_discriminant: degree must be >= 2");
    if (d == 2) {
        const Rat& a = f.coeffs[0];
        const Rat& b = f.coeffs[1];
        const Rat& c = f.coeffs[2];
        return b * b - 4 * a * c;
    }
    // root multiplicity at [1:0] / [0:1] beyond 1 forces discriminant zero
    std::size_t lead_zeros = 0;
    while (lead_zeros < f.coeffs.size() && f.coeffs[lead_zeros] == 0) ++lead_zeros;
    std::size_t trail_zeros = 0;
    while (trail_zeros < f.coeffs.size() && f.coeffs[f.coeffs.size() - 1 - trail_zeros] == 0)
        ++trail_zeros;
    if (lead_zeros >= 2 || trail_zeros >= 2) return Rat(0);

    // dehomogenize on the side with a nonzero leading coefficient; swapping
    // x0 and x1 rescales the discriminant by det^(d(d-1)) = +1
    std::vector<Rat> p;  // highest power of t first
    if (trail_zeros == 0) {
        // q(t) = f(1, t), leading coefficient c_d
        p.assign(f.coeffs.rbegin(), f.coeffs.rend());
    } else {
        // c_d == 0, c_0 != 0: q(t) = f(t, 1), leading coefficient c_0
        p = f.coeffs;
    }
    const Rat& lc = p[0];
    std::vector<Rat> dp(d);
    for (std::size_t j = 0; j < d; ++j) dp[j] = p[j] * Rat(static_cast<int>(d - j));
    Rat res = sylvester_resultant(p, dp);
    Rat sign = (d * (d - 1) / 2) % 2 == 0 ? Rat(1) : Rat(-1);
    return sign * res / lc;
}

Rat hyperdet_schlafli(const Hypermatrix& a) {
    require_222(a, "hyperdet_schlafli");
    BinaryForm f = schlafli_pencil(a);
    if (f.is_zero()) {
        // the pencil determinant vanishes identically only on degenerate input
        return Rat(0);
    }
    return binary_discriminant(f);
}

bool kernel_certify(const Hypermatrix& a, const KernelPoint& p) {
    if (p.factors.size() != a.order()) throw invalid_input("kernel_certify: slot count mismatch");
    for (std::size_t j = 0; j < p.factors.size(); ++j) {
        if (p.factors[j].size() != a.format()[j])
            throw invalid_input("kernel_certify: factor length mismatch");
        bool nonzero = std::any_of(p.factors[j].begin(), p.factors[j].end(),
                                   [](const Int& x) { return x != 0; });
        if (!nonzero) throw invalid_input("kernel_certify: zero factor");
    }
    // for each free slot j, contract all others and require the zero vector
    for (std::size_t j = 0; j < a.order(); ++j) {
        std::vector<Rat> contraction(a.format()[j], Rat(0));
        for (std::size_t off = 0; off < a.size(); ++off) {
            const Rat& v = a.entries()[off];
            if (v == 0) continue;
            std::vector<std::size_t> idx = a.index_of(off);
            Rat prod = v;
            for (std::size_t s = 0; s < a.order(); ++s)
                if (s != j) prod *= Rat(p.factors[s][idx[s]]);
            contraction[idx[j]] += prod;
        }
        for (const Rat& c : contraction)
            if (c != 0) return false;
    }
    return true;
}

namespace {

std::optional<KernelPoint> try_pencil_direction(const Hypermatrix& a, std::size_t axis) {
    // candidates x for which the contracted 2x2 matrix M(x) is singular
    Hypermatrix s0 = slice(a, axis, 0);
    Hypermatrix s1 = slice(a, axis, 1);
    auto matrix_at = [&](const Rat& x0, const Rat& x1) {
        std::array<Rat, 4> m;
        for (int i = 0; i < 4; ++i) m[static_cast<std::size_t>(i)] =
            x0 * s0.entries()[static_cast<std::size_t>(i)] + x1 * s1.entries()[static_cast<std::size_t>(i)];
        return m;
    };
    Rat c0 = det2(s0.entries()[0], s0.entries()[1], s0.entries()[2], s0.entries()[3]);
    Rat c2 = det2(s1.entries()[0], s1.entries()[1], s1.entries()[2], s1.entries()[3]);
    auto m11 = matrix_at(1, 1);
    Rat c1 = det2(m11[0], m11[1], m11[2], m11[3]) - c0 - c2;

    std::vector<std::pair<Rat, Rat>> candidates;
    bool identically_zero = c0 == 0 && c1 == 0 && c2 == 0;
    if (identically_zero) {
        candidates = {{1, 0}, {0, 1}, {1, 1}, {1, -1}, {2, 1}, {1, 2}};
    } else if (c2 == 0) {
        candidates.emplace_back(0, 1);  // root at infinity
        if (c1 != 0) candidates.emplace_back(Rat(-c0 / c1), Rat(1));
        else if (c0 == 0) candidates.emplace_back(1, 0);
    } else {
        // rational roots of c2 t^2 + c1 t + c0 (t = x0/x1)
        Rat disc = c1 * c1 - 4 * c0 * c2;
        Rat sq;
        if (is_perfect_square(disc, &sq)) {
            candidates.emplace_back((-c1 + sq) / (2 * c2), Rat(1));
            candidates.emplace_back((-c1 - sq) / (2 * c2), Rat(1));
        }
    }

    std::size_t ax2 = axis == 0 ? 1 : 0;
    std::size_t ax3 = axis == 2 ? 1 : 2;
    for (const auto& [x0, x1] : candidates) {
        auto m = matrix_at(x0, x1);
        if (det2(m[0], m[1], m[2], m[3]) != 0) continue;
        // kernel vectors of M and M^T, plus small combinations when M == 0
        auto kernels_of = [&](bool transpose) {
            std::vector<std::vector<Rat>> ks;
            Rat a00 = m[0], a01 = transpose ? m[2] : m[1];
            Rat a10 = transpose ? m[1] : m[2], a11 = m[3];
            if (a00 == 0 && a01 == 0 && a10 == 0 && a11 == 0) {
                ks = {{Rat(1), Rat(0)}, {Rat(0), Rat(1)}, {Rat(1), Rat(1)}, {Rat(1), Rat(-1)}};
            } else if (a00 == 0 && a10 == 0) {
                ks = {{Rat(1), Rat(0)}};
            } else if (a00 != 0) {
                ks = {{-a01, a00}};
            } else {
                ks = {{-a11, a10}};
            }
            return ks;
        };
        std::vector<Rat> xv = {x0, x1};
        for (const auto& right : kernels_of(false))     // M * v = 0, slot ax3
            for (const auto& left : kernels_of(true)) {  // M^T * w = 0, slot ax2
                if ((right[0] == 0 && right[1] == 0) || (left[0] == 0 && left[1] == 0)) continue;
                KernelPoint p;
                p.factors.resize(3);
                p.factors[axis] = primitive_from_rats(xv);
                p.factors[ax2] = primitive_from_rats(left);
                p.factors[ax3] = primitive_from_rats(right);
                bool ok = true;
                for (const auto& f : p.factors)
                    if (std::all_of(f.begin(), f.end(), [](const Int& x) { return x == 0; }))
                        ok = false;
                if (ok && kernel_certify(a, p)) return p;
            }
    }
    return std::nullopt;
}

}  // namespace

KernelSearchResult kernel_search(const Hypermatrix& a) {
    require_222(a, "kernel_search");
    if (det222(a) != 0) return {KernelSearchResult::Status::nondegenerate, std::nullopt, false};

    Hypermatrix g = det222_gradient(a);
    if (!g.is_zero()) {
        // the gradient of a smooth degenerate point is decomposable: check all
        // 2x2 minors of each flattening vanish, then read off the factors
        bool rank_one = true;
        for (std::size_t axis = 0; axis < 3 && rank_one; ++axis) {
            Hypermatrix g0 = slice(g, axis, 0);
            Hypermatrix g1 = slice(g, axis, 1);
            // flattening minors: g0[i] g1[j] - g0[j] g1[i]
            for (std::size_t i = 0; i < 4 && rank_one; ++i)
                for (std::size_t j = i + 1; j < 4; ++j)
                    if (g0.entries()[i] * g1.entries()[j] != g0.entries()[j] * g1.entries()[i]) {
                        rank_one = false;
                        break;
                    }
        }
        if (rank_one) {
            // pick a nonzero entry (p,q,r); factor slots from the lines through it
            std::size_t base = 0;
            while (base < 8 && g.entries()[base] == 0) ++base;
            auto bidx = g.index_of(base);
            KernelPoint p;
            p.factors.resize(3);
            for (std::size_t axis = 0; axis < 3; ++axis) {
                std::vector<Rat> f(2);
                for (std::size_t v = 0; v < 2; ++v) {
                    auto idx = bidx;
                    idx[axis] = v;
                    f[v] = g.at(idx);
                }
                p.factors[axis] = primitive_from_rats(f);
            }
            if (kernel_certify(a, p)) return {KernelSearchResult::Status::found, p, true};
            // decomposable gradient that fails certification cannot happen for
            // an exact rank-one gradient of a degenerate matrix
            throw internal_error("kernel_search: gradient factor failed certification");
        }
        // nonzero gradient that is not rank one: fall through to the pencil
    }

    for (std::size_t axis = 0; axis < 3; ++axis)
        if (auto p = try_pencil_direction(a, axis))
            return {KernelSearchResult::Status::found, p, false};
    return {KernelSearchResult::Status::not_certified, std::nullopt, false};
}

}  // namespace qhtk
