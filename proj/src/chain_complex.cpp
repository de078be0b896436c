#include "qhtk/chain_complex.hpp"

#include "qhtk/errors.hpp"

#include <sstream>

namespace qhtk {

ChainComplex make_complex(CoeffRing coeff, std::vector<std::size_t> dims,
                          std::vector<IntMatrix> boundaries) {
    ChainComplex c;
    c.coeff = coeff;
    c.dims = std::move(dims);
    if (boundaries.size() == c.dims.size()) {
        c.boundaries = std::move(boundaries);
    } else if (boundaries.size() + 1 == c.dims.size()) {
        // caller provided maps for degrees 1..n only
        c.boundaries.emplace_back(0, c.dims.empty() ? 0 : c.dims[0]);
        for (auto& b : boundaries) c.boundaries.push_back(std::move(b));
    } else {
        throw invalid_input("boundary list length does not match dims");
    }
    return c;
}

namespace {

bool zero_over(const IntMatrix& m, const CoeffRing& coeff) {
    if (coeff.kind == CoeffRing::Kind::mod_n) {
        for (const Int& x : m.entries())
            if (x % coeff.modulus != 0) return false;
        return true;
    }
    return m.is_zero();
}

}  // namespace

void validate(const ChainComplex& c) {
    if (c.dims.size() != c.boundaries.size())
        throw invalid_input("chain complex: boundaries list must match dims list");
    for (std::size_t k = 0; k < c.dims.size(); ++k) {
        const IntMatrix& d = c.boundaries[k];
        std::size_t expect_rows = k == 0 ? 0 : c.dims[k - 1];
        if (d.cols() != c.dims[k] || d.rows() != expect_rows) {
            std::ostringstream os;
            os << "chain complex: boundary at degree " << k << " has shape " << d.rows() << "x"
               << d.cols() << ", expected " << expect_rows << "x" << c.dims[k];
            throw invalid_input(os.str());
        }
    }
    for (std::size_t k = 1; k + 1 < c.boundaries.size(); ++k) {
        IntMatrix dd = c.boundaries[k] * c.boundaries[k + 1];
        if (!zero_over(dd, c.coeff)) {
            std::ostringstream os;
            os << "chain complex: d∘d != 0 at degree " << k + 1;
            throw invalid_input(os.str());
        }
    }
}

std::string to_string(const HomologyGroup& h) {
    std::ostringstream os;
    bool first = true;
    auto sep = [&]() {
        if (!first) os << " + ";
        first = false;
    };
    if (h.free_rank == 1) {
        sep();
        os << "Z";
    } else if (h.free_rank > 1) {
        sep();
        os << "Z^" << h.free_rank;
    }
    for (const Int& t : h.torsion) {
        sep();
        os << "Z/" << t.str();
    }
    if (first) os << "0";
    return os.str();
}

std::vector<HomologyGroup> homology(const ChainComplex& c) {
    validate(c);
    std::size_t n = c.dims.size();
    std::vector<HomologyGroup> out(n);
    if (n == 0) return out;

    if (c.coeff.kind == CoeffRing::Kind::integers) {
        for (std::size_t k = 0; k < n; ++k) {
            // saturated basis of Z_k = ker d_k
            std::vector<std::vector<Int>> zk;
            if (k == 0) {
                for (std::size_t j = 0; j < c.dims[0]; ++j) {
                    std::vector<Int> e(c.dims[0], Int(0));
                    e[j] = 1;
                    zk.push_back(std::move(e));
                }
            } else {
                zk = kernel_basis(c.boundaries[k], CoeffRing::Z());
            }
            std::size_t z = zk.size();
            if (k + 1 >= n || c.dims[k + 1] == 0) {
                out[k] = HomologyGroup{z, {}};
                continue;
            }
            // express im d_{k+1} in the kernel basis: K * Y = d_{k+1}
            IntMatrix kmat(c.dims[k], z);
            for (std::size_t j = 0; j < z; ++j)
                for (std::size_t i = 0; i < c.dims[k]; ++i) kmat.at(i, j) = zk[j][i];
            const IntMatrix& dnext = c.boundaries[k + 1];
            IntMatrix y(z, dnext.cols());
            for (std::size_t col = 0; col < dnext.cols(); ++col) {
                auto sol = solve_integer(kmat, dnext.column(col));
                if (!sol)
                    throw internal_error("homology: boundary image is not inside the cycle lattice");
                for (std::size_t i = 0; i < z; ++i) y.at(i, col) = (*sol)[i];
            }
            auto d = smith_normal_form(y).diagonal();
            HomologyGroup h;
            std::size_t nonzero = 0;
            for (const Int& di : d) {
                if (di == 0) continue;
                ++nonzero;
                if (di >= 2) h.torsion.push_back(di);
            }
            h.free_rank = z - nonzero;
            out[k] = std::move(h);
        }
        return out;
    }

    // field coefficients: ranks only
    CoeffRing f = c.coeff;
    if (!f.is_field()) throw invalid_input("homology: coefficient ring must be Z, Q or Z2");
    auto rank_f = [&](const IntMatrix& m) -> std::size_t {
        if (m.rows() == 0 || m.cols() == 0) return 0;
        if (f.kind == CoeffRing::Kind::rationals) return rank_q(m);
        return m.cols() - kernel_basis(m, CoeffRing::Z2()).size();
    };
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t rk = k == 0 ? 0 : rank_f(c.boundaries[k]);
        std::size_t rk1 = k + 1 < n ? rank_f(c.boundaries[k + 1]) : 0;
        out[k] = HomologyGroup{c.dims[k] - rk - rk1, {}};
    }
    return out;
}

}  // namespace qhtk
