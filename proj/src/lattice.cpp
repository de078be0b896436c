#include "qhtk/lattice.hpp"

#include "qhtk/errors.hpp"

#include <algorithm>
#include <array>
#include <sstream>

namespace qhtk {

Int Lattice::pair(const std::vector<Int>& a, const std::vector<Int>& b) const {
    if (a.size() != rank || b.size() != rank) throw invalid_input("lattice: vector length mismatch");
    Int acc = 0;
    for (std::size_t i = 0; i < rank; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < rank; ++j) acc += a[i] * gram.at(i, j) * b[j];
    }
    return acc;
}

std::vector<std::vector<Int>> Lattice::designated() const {
    std::vector<std::vector<Int>> all = spheres;
    all.insert(all.end(), surgery_classes.begin(), surgery_classes.end());
    return all;
}

Int sphere_self_intersection(int n) {
    // 2*(-1)^(n(n-1)/2)
    return ((static_cast<long long>(n) * (n - 1) / 2) % 2 == 0) ? Int(2) : Int(-2);
}

int twist_sign(int n) {
    return ((static_cast<long long>(n) * (n + 1) / 2) % 2 == 0) ? 1 : -1;
}

void validate(const Lattice& l) {
    if (l.gram.rows() != l.rank || l.gram.cols() != l.rank)
        throw invalid_input("lattice: gram matrix must be rank x rank");
    if (!l.gram.is_symmetric()) throw invalid_input("lattice: gram matrix must be symmetric");
    if (l.n % 2 != 0 || l.n <= 0) throw invalid_input("lattice: ambient dimension n must be even");
    Int want = sphere_self_intersection(l.n);
    auto check_class = [&](const std::vector<Int>& s, const char* what, std::size_t idx) {
        if (s.size() != l.rank) throw invalid_input("lattice: class length mismatch");
        Int ss = l.pair(s, s);
        if (ss != want) {
            std::ostringstream os;
            os << "lattice: " << what << " " << idx << " has self-intersection " << ss.str()
               << ", expected " << want.str();
            throw invalid_input(os.str());
        }
    };
    for (std::size_t i = 0; i < l.spheres.size(); ++i) check_class(l.spheres[i], "sphere class", i);
    for (std::size_t i = 0; i < l.surgery_classes.size(); ++i)
        check_class(l.surgery_classes[i], "surgery class", i);
}

IntMatrix dehn_twist(const Lattice& l, const std::vector<Int>& s) {
    validate(l);
    auto all = l.designated();
    bool designated = std::any_of(all.begin(), all.end(), [&](const std::vector<Int>& t) {
        if (t == s) return true;
        std::vector<Int> neg(t.size());
        for (std::size_t i = 0; i < t.size(); ++i) neg[i] = -t[i];
        return neg == s;
    });
    if (!designated) throw invalid_input("dehn_twist: class is not designated");
    int eps = twist_sign(l.n);
    std::vector<Int> gs(l.rank);
    for (std::size_t v = 0; v < l.rank; ++v) {
        Int acc = 0;
        for (std::size_t u = 0; u < l.rank; ++u) acc += l.gram.at(v, u) * s[u];
        gs[v] = std::move(acc);
    }
    IntMatrix phi = IntMatrix::identity(l.rank);
    for (std::size_t u = 0; u < l.rank; ++u)
        for (std::size_t v = 0; v < l.rank; ++v) phi.at(u, v) -= eps * s[u] * gs[v];
    return phi;
}

IntMatrix dehn_twist(const Lattice& l, std::size_t sphere_index) {
    if (sphere_index >= l.spheres.size()) throw invalid_input("dehn_twist: sphere index out of range");
    return dehn_twist(l, l.spheres[sphere_index]);
}

std::size_t GWFunctional::coeff_count() const {
    std::size_t m = dim();
    return m * (m + 1) * (m + 2) / 6;
}

std::size_t GWFunctional::triple_index(std::size_t m, std::size_t i, std::size_t j, std::size_t k) {
    std::array<std::size_t, 3> t{i, j, k};
    std::sort(t.begin(), t.end());
    // lex rank of (t0 <= t1 <= t2) among the multisets over {0..m-1}
    std::size_t idx = 0;
    for (std::size_t a = 0; a < t[0]; ++a) idx += (m - a) * (m - a + 1) / 2;
    for (std::size_t b = t[0]; b < t[1]; ++b) idx += m - b;
    idx += t[2] - t[1];
    return idx;
}

namespace {

// span coordinates of a lattice vector relative to the chosen basis
std::vector<Rat> span_coords(const std::vector<std::vector<Int>>& basis, const std::vector<Int>& v) {
    if (basis.empty()) throw invalid_input("gw: empty span");
    std::size_t rank = basis[0].size();
    IntMatrix m(rank, basis.size());
    for (std::size_t c = 0; c < basis.size(); ++c)
        for (std::size_t r = 0; r < rank; ++r) m.at(r, c) = basis[c][r];
    std::vector<Rat> b(rank);
    for (std::size_t r = 0; r < rank; ++r) b[r] = Rat(v[r]);
    auto x = solve(m, b, CoeffRing::Q());
    if (!x) throw invalid_input("gw: vector does not lie in the span of the designated classes");
    return *x;
}

// Row of the equation G(a,b,c) = 0 in unordered-triple coordinates.
std::vector<Rat> triple_row(std::size_t m, const std::vector<Rat>& a, const std::vector<Rat>& b,
                            const std::vector<Rat>& c) {
    std::vector<Rat> row(m * (m + 1) * (m + 2) / 6, Rat(0));
    for (std::size_t i = 0; i < m; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < m; ++j) {
            if (b[j] == 0) continue;
            Rat ab = a[i] * b[j];
            for (std::size_t k = 0; k < m; ++k) {
                if (c[k] == 0) continue;
                row[GWFunctional::triple_index(m, i, j, k)] += ab * c[k];
            }
        }
    }
    return row;
}

IntMatrix rows_to_int_matrix(const std::vector<std::vector<Rat>>& rows, std::size_t cols) {
    IntMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        Int lcm = 1;
        for (const Rat& x : rows[r]) lcm = lcm / gcd_int(lcm, den(x)) * den(x);
        for (std::size_t c = 0; c < cols; ++c)
            m.at(r, c) = num(rows[r][c]) * (lcm / den(rows[r][c]));
    }
    return m;
}

}  // namespace

Rat GWFunctional::eval(const std::vector<Int>& a, const std::vector<Int>& b,
                       const std::vector<Int>& c) const {
    std::vector<Rat> ca = span_coords(basis, a);
    std::vector<Rat> cb = span_coords(basis, b);
    std::vector<Rat> cc = span_coords(basis, c);
    std::vector<Rat> row = triple_row(dim(), ca, cb, cc);
    Rat acc = 0;
    for (std::size_t t = 0; t < row.size(); ++t) acc += row[t] * coeffs[t];
    return acc;
}

GWSystem gw_constraints(const Lattice& l) {
    validate(l);
    auto classes = l.designated();
    if (classes.empty()) throw invalid_input("gw: no designated classes");

    // span basis: greedy independent subset of the designated classes
    GWSystem sys;
    {
        IntMatrix probe(l.rank, 0);
        std::vector<std::vector<Int>> chosen;
        for (const auto& s : classes) {
            std::vector<std::vector<Int>> trial = chosen;
            trial.push_back(s);
            IntMatrix m(l.rank, trial.size());
            for (std::size_t c = 0; c < trial.size(); ++c)
                for (std::size_t r = 0; r < l.rank; ++r) m.at(r, c) = trial[c][r];
            if (rank_q(m) == trial.size()) chosen = std::move(trial);
        }
        sys.span_basis = std::move(chosen);
    }
    std::size_t m = sys.span_basis.size();

    std::vector<std::vector<Rat>> rows;
    // (a) twist invariance
    for (const auto& s : classes) {
        IntMatrix phi = dehn_twist(l, s);
        // phi of each basis vector, in span coordinates
        std::vector<std::vector<Rat>> phib(m);
        std::vector<std::vector<Rat>> idb(m);
        for (std::size_t u = 0; u < m; ++u) {
            phib[u] = span_coords(sys.span_basis, phi.apply(sys.span_basis[u]));
            idb[u].assign(m, Rat(0));
            idb[u][u] = 1;
        }
        for (std::size_t u = 0; u < m; ++u)
            for (std::size_t v = u; v < m; ++v)
                for (std::size_t w = v; w < m; ++w) {
                    std::vector<Rat> row = triple_row(m, phib[u], phib[v], phib[w]);
                    std::vector<Rat> base = triple_row(m, idb[u], idb[v], idb[w]);
                    for (std::size_t t = 0; t < row.size(); ++t) row[t] -= base[t];
                    rows.push_back(std::move(row));
                }
    }
    // (b) orthogonality vanishing
    for (std::size_t i = 0; i < classes.size(); ++i)
        for (std::size_t j = i + 1; j < classes.size(); ++j) {
            if (l.pair(classes[i], classes[j]) != 0) continue;
            std::vector<Rat> ci = span_coords(sys.span_basis, classes[i]);
            std::vector<Rat> cj = span_coords(sys.span_basis, classes[j]);
            for (std::size_t w = 0; w < m; ++w) {
                std::vector<Rat> cw(m, Rat(0));
                cw[w] = 1;
                rows.push_back(triple_row(m, ci, cj, cw));
            }
        }

    sys.constraints = rows_to_int_matrix(rows, m * (m + 1) * (m + 2) / 6);
    return sys;
}

GWReport gw_solve(const Lattice& l) {
    GWReport rep;
    rep.system = gw_constraints(l);
    std::size_t m = rep.system.span_basis.size();

    auto null = kernel_basis(rep.system.constraints, CoeffRing::Q());
    for (const auto& v : null) {
        GWFunctional g;
        g.basis = rep.system.span_basis;
        g.coeffs.resize(v.size());
        for (std::size_t t = 0; t < v.size(); ++t) g.coeffs[t] = Rat(v[t]);
        rep.solution_basis.push_back(std::move(g));
    }

    // a linear functional in triple coordinates vanishes on the whole solution
    // space iff it kills every nullspace basis vector
    auto forced_zero = [&](const std::vector<Rat>& row) {
        for (const auto& g : rep.solution_basis) {
            Rat acc = 0;
            for (std::size_t t = 0; t < row.size(); ++t) acc += row[t] * g.coeffs[t];
            if (acc != 0) return false;
        }
        return true;
    };
    auto coords = [&](const std::vector<Int>& v) { return span_coords(rep.system.span_basis, v); };

    auto classes = l.designated();
    int eps = twist_sign(l.n);

    // item 1: G(s,s,s) forced to zero for every designated class
    {
        bool ok = true;
        for (const auto& s : classes) {
            auto cs = coords(s);
            if (!forced_zero(triple_row(m, cs, cs, cs))) ok = false;
        }
        rep.identities.push_back(Check{"gw.item1", ok ? CheckStatus::pass : CheckStatus::fail,
                                       ok ? "G(s,s,s) = 0 for every designated class" : ""});
    }
    // item 2: for |s.t| = 1, G(s,s,t) = eps * (s.t) * G(s,t,t)
    {
        bool ok = true;
        bool any = false;
        for (std::size_t i = 0; i < classes.size(); ++i)
            for (std::size_t j = 0; j < classes.size(); ++j) {
                if (i == j) continue;
                Int st = l.pair(classes[i], classes[j]);
                if (st != 1 && st != -1) continue;
                any = true;
                auto ci = coords(classes[i]);
                auto cj = coords(classes[j]);
                auto row = triple_row(m, ci, ci, cj);
                auto row2 = triple_row(m, ci, cj, cj);
                Rat f = Rat(eps) * Rat(st);
                for (std::size_t t = 0; t < row.size(); ++t) row[t] -= f * row2[t];
                if (!forced_zero(row)) ok = false;
            }
        rep.identities.push_back(Check{"gw.item2",
                                       !any ? CheckStatus::inconclusive
                                            : ok ? CheckStatus::pass : CheckStatus::fail,
                                       any ? "" : "no once-intersecting pair in the data"});
    }
    // item 3: chains s - t - u with s.t = t.u = 1, s.u = 0:
    // G(s,t,t) + G(u,t,t) = 0
    {
        bool ok = true;
        bool any = false;
        for (std::size_t a = 0; a < classes.size(); ++a)
            for (std::size_t b = 0; b < classes.size(); ++b)
                for (std::size_t c = 0; c < classes.size(); ++c) {
                    if (a == b || b == c || a == c) continue;
                    if (l.pair(classes[a], classes[b]) != 1) continue;
                    if (l.pair(classes[b], classes[c]) != 1) continue;
                    if (l.pair(classes[a], classes[c]) != 0) continue;
                    any = true;
                    auto ca = coords(classes[a]);
                    auto cb = coords(classes[b]);
                    auto cc = coords(classes[c]);
                    auto row = triple_row(m, ca, cb, cb);
                    auto row2 = triple_row(m, cc, cb, cb);
                    for (std::size_t t = 0; t < row.size(); ++t) row[t] += row2[t];
                    if (!forced_zero(row)) ok = false;
                }
        rep.identities.push_back(Check{"gw.item3",
                                       !any ? CheckStatus::inconclusive
                                            : ok ? CheckStatus::pass : CheckStatus::fail,
                                       any ? "" : "no chain configuration in the data"});
    }
    // item 4: G(s,u,.) = 0 for disjoint designated pairs
    {
        bool ok = true;
        bool any = false;
        for (std::size_t i = 0; i < classes.size(); ++i)
            for (std::size_t j = i + 1; j < classes.size(); ++j) {
                if (l.pair(classes[i], classes[j]) != 0) continue;
                any = true;
                auto ci = coords(classes[i]);
                auto cj = coords(classes[j]);
                for (std::size_t w = 0; w < m; ++w) {
                    std::vector<Rat> cw(m, Rat(0));
                    cw[w] = 1;
                    if (!forced_zero(triple_row(m, ci, cj, cw))) ok = false;
                }
            }
        rep.identities.push_back(Check{"gw.item4",
                                       !any ? CheckStatus::inconclusive
                                            : ok ? CheckStatus::pass : CheckStatus::fail,
                                       any ? "" : "no disjoint pair in the data"});
    }

    // discriminant forcing per once-intersecting sphere pair
    for (std::size_t i = 0; i < l.spheres.size(); ++i)
        for (std::size_t j = 0; j < l.spheres.size(); ++j) {
            if (i == j) continue;
            Int st = l.pair(l.spheres[i], l.spheres[j]);
            if (st != 1 && st != -1) continue;
            auto ci = coords(l.spheres[i]);
            auto cj = coords(l.spheres[j]);
            GWPairVerdict v;
            v.i = i;
            v.j = j;
            v.forced_zero = forced_zero(triple_row(m, ci, ci, cj));
            rep.pair_discs.push_back(v);
        }
    return rep;
}

Rat discriminant_from_gw(const Lattice& l, const GWFunctional& g, const std::vector<Int>& s1,
                         const std::vector<Int>& s2) {
    if (l.pair(s1, s2) != 1) throw invalid_input("discriminant_from_gw: s1.s2 must equal 1");
    Rat k = g.eval(s1, s1, s2);
    Rat other = g.eval(s2, s2, s1);
    if (k * k != other * other)
        throw invalid_input("discriminant_from_gw: G(s1,s1,s2)^2 != G(s2,s2,s1)^2");
    return k * k;
}

bool is_even_form(const IntMatrix& q) {
    if (!q.is_symmetric()) throw invalid_input("is_even_form: matrix must be symmetric");
    for (std::size_t i = 0; i < q.rows(); ++i)
        if (q.at(i, i) % 2 != 0) return false;
    return true;
}

}  // namespace qhtk
