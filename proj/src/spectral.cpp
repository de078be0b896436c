#include "qhtk/spectral.hpp"

#include "qhtk/errors.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace qhtk {

namespace {

// Exact scalar arithmetic over Q or F2, chosen at runtime.
struct Field {
    bool mod2;

    Rat reduce(const Rat& x) const {
        if (!mod2) return x;
        Int n = num(x) % 2;
        return Rat(n < 0 ? n + 2 : n);
    }
    Rat add(const Rat& a, const Rat& b) const { return reduce(a + b); }
    Rat sub(const Rat& a, const Rat& b) const { return reduce(a - b); }
    Rat mul(const Rat& a, const Rat& b) const { return reduce(a * b); }
    Rat div(const Rat& a, const Rat& b) const {
        if (!mod2) return a / b;
        // over F2 the only invertible scalar is 1
        if (reduce(b) == 0) throw internal_error("field: division by zero");
        return reduce(a);
    }
};

using Vec = std::vector<Rat>;

// Row-echelon store of independent vectors; supports residue computation.
struct Subspace {
    const Field& fld;
    std::vector<Vec> basis;           // echelonized, pivot normalized to 1
    std::vector<std::size_t> pivots;  // pivot index per basis vector

    explicit Subspace(const Field& f) : fld(f) {}

    Vec residue(Vec v) const {
        for (std::size_t b = 0; b < basis.size(); ++b) {
            const Rat& c = v[pivots[b]];
            if (c == 0) continue;
            Rat f = c;
            for (std::size_t j = 0; j < v.size(); ++j)
                v[j] = fld.sub(v[j], fld.mul(f, basis[b][j]));
        }
        return v;
    }

    bool contains(const Vec& v) const {
        Vec r = residue(v);
        return std::all_of(r.begin(), r.end(), [](const Rat& x) { return x == 0; });
    }

    // Inserts v if independent; returns true when the dimension grew.
    bool insert(Vec v) {
        v = residue(std::move(v));
        std::size_t piv = v.size();
        for (std::size_t j = 0; j < v.size(); ++j)
            if (v[j] != 0) {
                piv = j;
                break;
            }
        if (piv == v.size()) return false;
        Rat inv = v[piv];
        for (auto& x : v) x = fld.div(x, inv);
        basis.push_back(std::move(v));
        pivots.push_back(piv);
        return true;
    }

    std::size_t dim() const { return basis.size(); }
};

// Quotient N / D presented by lifted representatives.
struct Quotient {
    std::vector<Vec> lifts;   // representatives of a basis of N/D
    Subspace denom;           // echelon basis of D
    Subspace full;            // echelon basis of D + lifts
    std::vector<std::size_t> lift_rows;  // index of each lift's row in `full`

    Quotient(const Field& f, const std::vector<Vec>& numerators, const std::vector<Vec>& denominators)
        : denom(f), full(f) {
        for (const auto& d : denominators) denom.insert(d);
        for (const auto& d : denom.basis) {
            full.basis.push_back(d);
            full.pivots.push_back(denom.pivots[&d - denom.basis.data()]);
        }
        for (const auto& v : numerators) {
            std::size_t before = full.dim();
            if (full.insert(v)) {
                lifts.push_back(v);
                lift_rows.push_back(before);
            }
        }
    }

    std::size_t dim() const { return lifts.size(); }

    // Coordinates of w (which must lie in N) relative to the lift basis mod D.
    Vec coordinates(const Vec& w) const {
        // Reduce w against `full`, recording the coefficient used at each lift row.
        Vec v = w;
        Vec coeffs(lifts.size(), Rat(0));
        for (std::size_t b = 0; b < full.basis.size(); ++b) {
            const Rat& c = v[full.pivots[b]];
            if (c == 0) continue;
            for (std::size_t k = 0; k < lift_rows.size(); ++k)
                if (lift_rows[k] == b) coeffs[k] = c;
            Rat f = c;
            for (std::size_t j = 0; j < v.size(); ++j)
                v[j] = full.fld.sub(v[j], full.fld.mul(f, full.basis[b][j]));
        }
        for (const Rat& x : v)
            if (x != 0) throw internal_error("spectral: vector not in the expected span");
        return coeffs;
    }
};

struct Context {
    const FilteredComplex& f;
    Field fld;
    int min_level = 0;
    int max_level = 0;
    int top = 0;  // top chain degree

    explicit Context(const FilteredComplex& fc) : f(fc), fld{fc.base.coeff == CoeffRing::Z2()} {
        bool seen = false;
        for (const auto& per_degree : f.levels)
            for (int l : per_degree) {
                if (!seen) {
                    min_level = max_level = l;
                    seen = true;
                } else {
                    min_level = std::min(min_level, l);
                    max_level = std::max(max_level, l);
                }
            }
        top = f.base.dims.empty() ? -1 : static_cast<int>(f.base.dims.size()) - 1;
    }

    std::size_t dim_of(int n) const {
        if (n < 0 || n > top) return 0;
        return f.base.dims[static_cast<std::size_t>(n)];
    }

    // Standard basis vectors of F_p in chain degree n.
    std::vector<Vec> filtration_basis(int p, int n) const {
        std::vector<Vec> out;
        std::size_t dn = dim_of(n);
        if (dn == 0) return out;
        const auto& lev = f.levels[static_cast<std::size_t>(n)];
        for (std::size_t j = 0; j < dn; ++j)
            if (lev[j] <= p) {
                Vec e(dn, Rat(0));
                e[j] = 1;
                out.push_back(std::move(e));
            }
        return out;
    }

    Vec apply_d(int n, const Vec& x) const {
        std::size_t rows = dim_of(n - 1);
        Vec y(rows, Rat(0));
        if (n <= 0 || n > top) return y;
        const IntMatrix& d = f.base.boundaries[static_cast<std::size_t>(n)];
        for (std::size_t i = 0; i < rows; ++i) {
            Rat acc = 0;
            for (std::size_t j = 0; j < d.cols(); ++j)
                if (x[j] != 0) acc += Rat(d.at(i, j)) * x[j];
            y[i] = fld.reduce(acc);
        }
        return y;
    }

    bool in_filtration(int p, int n, const Vec& v) const {
        if (dim_of(n) == 0) return true;
        const auto& lev = f.levels[static_cast<std::size_t>(n)];
        for (std::size_t j = 0; j < v.size(); ++j)
            if (v[j] != 0 && lev[j] > p) return false;
        return true;
    }

    // Z^r_{p,q} = { x in F_p C_{p+q} : dx in F_{p-r} C_{p+q-1} }, spanned.
    // r = -1 is read as Z^{-1} := F_p C_{p+q}.
    std::vector<Vec> cycle_span(int r, int p, int q) const {
        int n = p + q;
        std::vector<Vec> fp = filtration_basis(p, n);
        if (r < 0 || fp.empty()) return fp;
        // kernel of F_p -> C_{n-1} / F_{p-r}
        std::size_t dn1 = dim_of(n - 1);
        std::vector<std::size_t> bad_rows;
        if (dn1 > 0) {
            const auto& lev = f.levels[static_cast<std::size_t>(n - 1)];
            for (std::size_t i = 0; i < dn1; ++i)
                if (lev[i] > p - r) bad_rows.push_back(i);
        }
        if (bad_rows.empty() || n <= 0 || n > top) return fp;

        // solve the homogeneous system on coefficients of the fp basis
        std::size_t cols = fp.size();
        std::vector<Vec> sys(bad_rows.size(), Vec(cols, Rat(0)));
        for (std::size_t c = 0; c < cols; ++c) {
            Vec dx = apply_d(n, fp[c]);
            for (std::size_t rr = 0; rr < bad_rows.size(); ++rr) sys[rr][c] = dx[bad_rows[rr]];
        }
        // nullspace of sys by elimination
        std::vector<Vec> a = sys;
        std::vector<std::size_t> pivot_col;
        std::size_t rank = 0;
        for (std::size_t c = 0; c < cols && rank < a.size(); ++c) {
            std::size_t pr = rank;
            while (pr < a.size() && a[pr][c] == 0) ++pr;
            if (pr == a.size()) continue;
            std::swap(a[pr], a[rank]);
            Rat inv = a[rank][c];
            for (auto& x : a[rank]) x = fld.div(x, inv);
            for (std::size_t i = 0; i < a.size(); ++i) {
                if (i == rank || a[i][c] == 0) continue;
                Rat fc = a[i][c];
                for (std::size_t j = 0; j < cols; ++j)
                    a[i][j] = fld.sub(a[i][j], fld.mul(fc, a[rank][j]));
            }
            pivot_col.push_back(c);
            ++rank;
        }
        std::vector<bool> is_pivot(cols, false);
        for (auto c : pivot_col) is_pivot[c] = true;
        std::vector<Vec> out;
        std::size_t dn = dim_of(n);
        for (std::size_t c = 0; c < cols; ++c) {
            if (is_pivot[c]) continue;
            Vec coeff(cols, Rat(0));
            coeff[c] = 1;
            for (std::size_t i = 0; i < pivot_col.size(); ++i)
                coeff[pivot_col[i]] = fld.sub(Rat(0), a[i][c]);
            Vec x(dn, Rat(0));
            for (std::size_t k = 0; k < cols; ++k)
                if (coeff[k] != 0)
                    for (std::size_t j = 0; j < dn; ++j)
                        x[j] = fld.add(x[j], fld.mul(coeff[k], fp[k][j]));
            out.push_back(std::move(x));
        }
        return out;
    }

    Quotient page_entry(int r, int p, int q) const {
        std::vector<Vec> numer = cycle_span(r, p, q);
        std::vector<Vec> denom = cycle_span(r - 1, p - 1, q + 1);
        for (const Vec& z : cycle_span(r - 1, p + r - 1, q - r + 2)) {
            Vec dz = apply_d(p + q + 1, z);
            if (!dz.empty()) denom.push_back(std::move(dz));
        }
        return Quotient(fld, numer, denom);
    }
};

}  // namespace

void validate(const FilteredComplex& f) {
    if (!(f.base.coeff == CoeffRing::Q()) && !(f.base.coeff == CoeffRing::Z2()))
        throw invalid_input("filtered complex: coefficients must be Q or Z2");
    validate(f.base);
    if (f.levels.size() != f.base.dims.size())
        throw invalid_input("filtered complex: levels list must match dims list");
    for (std::size_t n = 0; n < f.base.dims.size(); ++n)
        if (f.levels[n].size() != f.base.dims[n])
            throw invalid_input("filtered complex: level count mismatch at degree " +
                                std::to_string(n));
    // d must respect the filtration
    for (std::size_t n = 1; n < f.base.dims.size(); ++n) {
        const IntMatrix& d = f.base.boundaries[n];
        for (std::size_t j = 0; j < d.cols(); ++j)
            for (std::size_t i = 0; i < d.rows(); ++i) {
                Int e = d.at(i, j);
                if (f.base.coeff == CoeffRing::Z2()) e %= 2;
                if (e != 0 && f.levels[n - 1][i] > f.levels[n][j]) {
                    std::ostringstream os;
                    os << "filtered complex: d of generator " << j << " in degree " << n
                       << " (level " << f.levels[n][j] << ") hits level " << f.levels[n - 1][i];
                    throw invalid_input(os.str());
                }
            }
    }
}

Page page(const FilteredComplex& f, int r) {
    validate(f);
    if (r < 0) throw invalid_input("page index must be >= 0");
    Context ctx(f);
    Page out;
    out.r = r;
    if (ctx.top < 0) return out;
    for (int n = 0; n <= ctx.top; ++n)
        for (int p = ctx.min_level; p <= ctx.max_level; ++p) {
            int q = n - p;
            Quotient e = ctx.page_entry(r, p, q);
            if (e.dim() == 0) continue;
            out.groups[{p, q}] = e.dim();
        }
    // differentials: only between nonzero groups
    for (const auto& [pq, dim] : out.groups) {
        auto [p, q] = pq;
        Bidegree target{p - r, q + r - 1};
        auto it = out.groups.find(target);
        if (it == out.groups.end()) continue;
        Quotient src = ctx.page_entry(r, p, q);
        Quotient dst = ctx.page_entry(r, p - r, q + r - 1);
        std::vector<std::vector<Rat>> m(it->second, std::vector<Rat>(dim, Rat(0)));
        bool nonzero = false;
        for (std::size_t c = 0; c < src.lifts.size(); ++c) {
            Vec dx = ctx.apply_d(p + q, src.lifts[c]);
            Vec coords = dst.coordinates(dx);
            for (std::size_t i = 0; i < coords.size(); ++i) {
                if (coords[i] != 0) nonzero = true;
                m[i][c] = coords[i];
            }
        }
        if (nonzero) out.differentials[pq] = std::move(m);
    }
    return out;
}

int collapse_page(const FilteredComplex& f) {
    validate(f);
    Context ctx(f);
    int width = ctx.max_level - ctx.min_level;
    int last_nonzero = -1;
    for (int r = 0; r <= width; ++r) {
        Page pg = page(f, r);
        if (!pg.differentials.empty()) last_nonzero = r;
    }
    return last_nonzero + 1;
}

ConvergenceReport verify_convergence(const FilteredComplex& f) {
    validate(f);
    Context ctx(f);
    ConvergenceReport rep;
    if (ctx.top < 0) return rep;
    int rinf = ctx.max_level - ctx.min_level + 1;
    Page einf = page(f, rinf);
    if (!einf.differentials.empty())
        throw internal_error("spectral: differentials beyond the filtration width");

    Field fld = ctx.fld;
    for (int n = 0; n <= ctx.top; ++n) {
        // cycles and boundaries in degree n
        std::vector<Vec> cycles = ctx.cycle_span(rinf + ctx.max_level + 1, ctx.max_level, n - ctx.max_level);
        // (filtration at max level = everything; large r forces dx = 0 only if
        // p - r is below every level, which the shift above guarantees)
        Subspace boundaries(fld);
        for (const Vec& x : ctx.filtration_basis(ctx.max_level, n + 1)) {
            Vec dx = ctx.apply_d(n + 1, x);
            if (!dx.empty()) boundaries.insert(dx);
        }
        std::size_t dim_b = boundaries.dim();
        Subspace cyc(fld);
        for (const Vec& z : cycles) cyc.insert(z);
        std::size_t h_n = cyc.dim() - dim_b;

        // induced filtration on homology: dim F_p H_n = dim((Z ∩ F_p) + B) - dim B
        std::map<int, std::size_t> filt_dim;
        for (int p = ctx.min_level - 1; p <= ctx.max_level; ++p) {
            std::vector<Vec> zp = ctx.cycle_span(rinf + ctx.max_level + 1, p, n - p);
            Subspace s(fld);
            for (const auto& b : boundaries.basis) s.insert(b);
            for (const auto& z : zp) s.insert(z);
            filt_dim[p] = s.dim() - dim_b;
        }

        std::size_t total = 0;
        for (int p = ctx.min_level; p <= ctx.max_level; ++p) {
            std::size_t graded = filt_dim[p] - filt_dim[p - 1];
            std::size_t e = 0;
            auto it = einf.groups.find({p, n - p});
            if (it != einf.groups.end()) e = it->second;
            if (e != 0 || graded != 0) rep.graded[{p, n - p}] = {e, graded};
            if (e != graded) rep.consistent = false;
            total += e;
        }
        rep.totals[n] = {total, h_n};
        if (total != h_n) rep.consistent = false;
    }
    return rep;
}

}  // namespace qhtk
