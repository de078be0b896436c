#include "qhtk/struct_ring.hpp"

#include "qhtk/errors.hpp"

#include <algorithm>
#include <sstream>

namespace qhtk {

std::vector<Rat> StructRing::multiply(const std::vector<Rat>& x, const std::vector<Rat>& y) const {
    if (x.size() != rank || y.size() != rank) throw invalid_input("ring multiply: length mismatch");
    std::vector<Rat> out(rank, Rat(0));
    for (std::size_t i = 0; i < rank; ++i) {
        if (x[i] == 0) continue;
        for (std::size_t j = 0; j < rank; ++j) {
            if (y[j] == 0) continue;
            Rat f = x[i] * y[j];
            for (std::size_t k = 0; k < rank; ++k) {
                const Rat& m = mu.at({i, j, k});
                if (m != 0) out[k] += f * m;
            }
        }
    }
    return out;
}

std::vector<Rat> StructRing::basis_product(std::size_t i, std::size_t j) const {
    std::vector<Rat> out(rank);
    for (std::size_t k = 0; k < rank; ++k) out[k] = mu.at({i, j, k});
    return out;
}

void check_unit_law(const StructRing& r) {
    if (r.rank == 0) throw invalid_input("ring: rank must be positive");
    if (r.unit >= r.rank) throw invalid_input("ring: unit index out of range");
    if (!(r.mu.format() == std::vector<std::size_t>{r.rank, r.rank, r.rank}))
        throw invalid_input("ring: mu format must be rank^3");
    for (std::size_t j = 0; j < r.rank; ++j)
        for (std::size_t k = 0; k < r.rank; ++k) {
            Rat expect = j == k ? Rat(1) : Rat(0);
            if (r.mu.at({r.unit, j, k}) != expect) {
                std::ostringstream os;
                os << "ring: unit law fails at e*g" << j;
                throw invalid_input(os.str());
            }
            if (r.mu.at({j, r.unit, k}) != expect) {
                std::ostringstream os;
                os << "ring: unit law fails at g" << j << "*e";
                throw invalid_input(os.str());
            }
        }
}

bool is_associative(const StructRing& r) {
    for (std::size_t i = 0; i < r.rank; ++i)
        for (std::size_t j = 0; j < r.rank; ++j)
            for (std::size_t k = 0; k < r.rank; ++k)
                for (std::size_t l = 0; l < r.rank; ++l) {
                    Rat lhs = 0, rhs = 0;
                    for (std::size_t m = 0; m < r.rank; ++m) {
                        lhs += r.mu.at({i, j, m}) * r.mu.at({m, k, l});
                        rhs += r.mu.at({j, k, m}) * r.mu.at({i, m, l});
                    }
                    if (lhs != rhs) return false;
                }
    return true;
}

Int quadratic_algebra_discriminant(const QuadraticAlgebra& q) {
    return q.sigma * q.sigma + 4 * q.tau;
}

QuadraticAlgebra quadratic_change_of_lift(const QuadraticAlgebra& q, int u, const Int& m) {
    if (u != 1 && u != -1) throw invalid_input("change of lift: u must be +1 or -1");
    QuadraticAlgebra out;
    out.sigma = u * q.sigma + 2 * m;
    out.tau = q.tau - u * m * q.sigma - m * m;
    return out;
}

StructRing embed_rank2(const QuadraticAlgebra& q) {
    StructRing r;
    r.rank = 2;
    r.unit = 0;
    r.labels = {"e", "x"};
    r.mu = Hypermatrix({2, 2, 2});
    r.mu.at({0, 0, 0}) = 1;
    r.mu.at({0, 1, 1}) = 1;
    r.mu.at({1, 0, 1}) = 1;
    r.mu.at({1, 1, 0}) = Rat(q.tau);
    r.mu.at({1, 1, 1}) = Rat(q.sigma);
    return r;
}

DiscriminantResult ring_discriminant(const StructRing& r,
                                     const std::vector<KernelPoint>& candidates) {
    check_unit_law(r);
    if (r.rank == 2) {
        return DiscriminantResult{DiscriminantResult::Kind::value, det222(r.mu), std::nullopt};
    }
    for (const KernelPoint& p : candidates)
        if (kernel_certify(r.mu, p))
            return DiscriminantResult{DiscriminantResult::Kind::zero_certified, Rat(0), p};
    // search basis-vector triples over the non-unit part
    for (std::size_t i = 0; i < r.rank; ++i) {
        if (i == r.unit) continue;
        for (std::size_t j = 0; j < r.rank; ++j) {
            if (j == r.unit) continue;
            for (std::size_t k = 0; k < r.rank; ++k) {
                if (k == r.unit) continue;
                KernelPoint p;
                p.factors.assign(3, std::vector<Int>(r.rank, Int(0)));
                p.factors[0][i] = 1;
                p.factors[1][j] = 1;
                p.factors[2][k] = 1;
                if (kernel_certify(r.mu, p))
                    return DiscriminantResult{DiscriminantResult::Kind::zero_certified, Rat(0), p};
            }
        }
    }
    return DiscriminantResult{DiscriminantResult::Kind::unknown, Rat(0), std::nullopt};
}

StructRing base_change(const StructRing& r, const IntMatrix& t) {
    check_unit_law(r);
    if (t.rows() != r.rank || t.cols() != r.rank)
        throw invalid_input("base change: matrix must be rank x rank");
    Int dt = determinant(t);
    if (dt != 1 && dt != -1) throw invalid_input("base change: matrix must be unimodular");

    // new basis vectors are the columns of t; mu'(i,j,v) =
    // sum_{s,t,u} T(s,i) T(t,j) Tinv(v,u) mu(s,t,u)
    auto tinv_sol = [&]() {
        IntMatrix inv(r.rank, r.rank);
        for (std::size_t c = 0; c < r.rank; ++c) {
            std::vector<Int> e(r.rank, Int(0));
            e[c] = 1;
            auto col = solve_integer(t, e);
            if (!col) throw internal_error("base change: unimodular matrix failed to invert");
            for (std::size_t i = 0; i < r.rank; ++i) inv.at(i, c) = (*col)[i];
        }
        return inv;
    };
    IntMatrix tinv = tinv_sol();

    // the unit must be one of the new basis vectors
    std::vector<Int> unit_new(r.rank);
    for (std::size_t i = 0; i < r.rank; ++i) unit_new[i] = tinv.at(i, r.unit);
    std::size_t new_unit = r.rank;
    for (std::size_t i = 0; i < r.rank; ++i) {
        if (unit_new[i] == 0) continue;
        if (unit_new[i] == 1 && new_unit == r.rank) {
            new_unit = i;
        } else {
            new_unit = r.rank + 1;
            break;
        }
    }
    if (new_unit >= r.rank)
        throw invalid_input("base change: the unit is not a basis vector of the new basis");

    StructRing out;
    out.rank = r.rank;
    out.unit = new_unit;
    out.labels.resize(r.rank);
    for (std::size_t i = 0; i < r.rank; ++i) out.labels[i] = "h" + std::to_string(i);
    out.mu = Hypermatrix({r.rank, r.rank, r.rank});
    for (std::size_t i = 0; i < r.rank; ++i)
        for (std::size_t j = 0; j < r.rank; ++j) {
            // product of new basis vectors in old coordinates
            std::vector<Rat> gi(r.rank), gj(r.rank);
            for (std::size_t s = 0; s < r.rank; ++s) {
                gi[s] = Rat(t.at(s, i));
                gj[s] = Rat(t.at(s, j));
            }
            std::vector<Rat> prod = r.multiply(gi, gj);
            // convert to new coordinates via tinv
            for (std::size_t v = 0; v < r.rank; ++v) {
                Rat acc = 0;
                for (std::size_t u = 0; u < r.rank; ++u) acc += Rat(tinv.at(v, u)) * prod[u];
                out.mu.at({i, j, v}) = std::move(acc);
            }
        }
    check_unit_law(out);
    return out;
}

namespace {

Hypermatrix restrict_mu(const StructRing& r, const std::vector<std::size_t>& indices) {
    Hypermatrix sub({indices.size(), indices.size(), indices.size()});
    for (std::size_t i = 0; i < indices.size(); ++i)
        for (std::size_t j = 0; j < indices.size(); ++j)
            for (std::size_t k = 0; k < indices.size(); ++k)
                sub.at({i, j, k}) = r.mu.at({indices[i], indices[j], indices[k]});
    return sub;
}

}  // namespace

KernelPoint split_kernel_extend(const StructRing& r, const SplitDecl& split, const KernelPoint& p) {
    check_unit_law(r);
    std::vector<bool> in_v(r.rank, false), in_w(r.rank, false);
    for (std::size_t i : split.v_block) {
        if (i >= r.rank || i == r.unit) throw invalid_input("split: bad V index");
        in_v[i] = true;
    }
    for (std::size_t i : split.w_block) {
        if (i >= r.rank || i == r.unit || in_v[i]) throw invalid_input("split: bad W index");
        in_w[i] = true;
    }
    for (std::size_t i = 0; i < r.rank; ++i)
        if (i != r.unit && !in_v[i] && !in_w[i])
            throw invalid_input("split: every non-unit basis index must lie in V or W");

    auto block_of = [&](std::size_t i) { return in_v[i] ? 1 : in_w[i] ? 2 : 0; };
    for (std::size_t i = 0; i < r.rank; ++i)
        for (std::size_t j = 0; j < r.rank; ++j) {
            int bi = block_of(i), bj = block_of(j);
            for (std::size_t k = 0; k < r.rank; ++k) {
                if (r.mu.at({i, j, k}) == 0) continue;
                int bk = block_of(k);
                if (bi == 1 && bj == 2) throw invalid_input("split: V*W product is nonzero");
                if (bi == 2 && bj == 1) throw invalid_input("split: W*V product is nonzero");
                bool v_side = (bi == 1 || bj == 1) && bi != 2 && bj != 2;
                bool w_side = (bi == 2 || bj == 2) && bi != 1 && bj != 1;
                if (v_side && bk == 2)
                    throw invalid_input("split: product of the V block leaves span{e}+V");
                if (w_side && bk == 1)
                    throw invalid_input("split: product of the W block leaves span{e}+W");
            }
        }

    // restriction of mu to {e} + V in the order (unit, then V indices)
    std::vector<std::size_t> vidx{r.unit};
    vidx.insert(vidx.end(), split.v_block.begin(), split.v_block.end());
    Hypermatrix fv = restrict_mu(r, vidx);
    if (p.factors.size() != 3) throw invalid_input("split: kernel point must have three factors");
    for (const auto& f : p.factors)
        if (f.size() != vidx.size())
            throw invalid_input("split: kernel point length must match the V block plus unit");
    if (!kernel_certify(fv, p))
        throw invalid_input("split: supplied point does not certify the V-block restriction");

    KernelPoint ext;
    ext.factors.assign(3, std::vector<Int>(r.rank, Int(0)));
    for (std::size_t s = 0; s < 3; ++s)
        for (std::size_t i = 0; i < vidx.size(); ++i) ext.factors[s][vidx[i]] = p.factors[s][i];
    if (!kernel_certify(r.mu, ext))
        throw internal_error("split: extension failed certification despite valid split data");
    return ext;
}

}  // namespace qhtk
