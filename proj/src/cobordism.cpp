#include "qhtk/cobordism.hpp"

#include "qhtk/errors.hpp"

#include <algorithm>
#include <sstream>

namespace qhtk {

bool CobordismReport::all_checks_pass() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const Check& c) { return c.status != CheckStatus::fail; });
}

namespace {

struct Pairing {
    bool has_distinguished = false;
    // paired[k] = basis index of the k-th paired end; end index is
    // paired_end_index(k)
    std::vector<std::size_t> paired;

    std::size_t paired_end_index(std::size_t k) const { return has_distinguished ? k + 1 : k; }
};

Pairing make_pairing(const CobordismData& c) {
    std::size_t rank = c.ring.rank;
    Pairing p;
    if (c.ends.size() == rank) {
        p.has_distinguished = true;
    } else if (c.ends.size() + 1 == rank) {
        p.has_distinguished = false;
    } else {
        throw invalid_input("cobordism: number of ends must equal the ring rank or rank-1");
    }
    for (std::size_t b = 1; b < rank; ++b) p.paired.push_back(b);
    return p;
}

std::vector<Rat> push(const CobordismEnd& e, const std::vector<Rat>& x) {
    std::vector<Rat> out(2, Rat(0));
    for (std::size_t j = 0; j < x.size(); ++j) {
        if (x[j] == 0) continue;
        out[0] += e.delta[0][j] * x[j];
        out[1] += e.delta[1][j] * x[j];
    }
    return out;
}

// sigma, tau with (a e + c p)^2 = (a^2 + c^2 tau) e + (2ac + c^2 sigma) p
// matched against the pushforward w of gamma^2; c must be nonzero.
std::pair<Rat, Rat> extract_sigma_tau(const std::vector<Rat>& v, const std::vector<Rat>& w) {
    const Rat& a = v[0];
    const Rat& c = v[1];
    Rat c2 = c * c;
    Rat sigma = (w[1] - 2 * a * c) / c2;
    Rat tau = (w[0] - a * a) / c2;
    return {sigma, tau};
}

void validate_data(const CobordismData& c, const Pairing& pr) {
    std::vector<std::string> problems;
    auto complain = [&](const std::string& s) { problems.push_back(s); };

    try {
        check_unit_law(c.ring);
    } catch (const invalid_input& e) {
        complain(e.what());
    }
    if (c.ring.unit != 0) complain("cobordism: the unit must be basis index 0");
    for (const Rat& m : c.ring.mu.entries())
        if (!is_integer(m)) {
            complain("cobordism: structure constants must be integers (Z-basis)");
            break;
        }

    std::size_t rank = c.ring.rank;
    for (std::size_t i = 0; i < c.ends.size(); ++i) {
        const CobordismEnd& e = c.ends[i];
        if (e.delta.size() != 2 || e.delta[0].size() != rank || e.delta[1].size() != rank) {
            std::ostringstream os;
            os << "cobordism: end " << i << " pushforward must be a 2x" << rank << " matrix";
            complain(os.str());
            continue;
        }
        if (e.unit_sign != 1 && e.unit_sign != -1) {
            std::ostringstream os;
            os << "cobordism: end " << i << " unit sign must be +1 or -1";
            complain(os.str());
        }
        if (e.delta[0][0] != Rat(e.unit_sign) || e.delta[1][0] != 0) {
            std::ostringstream os;
            os << "cobordism: end " << i << " does not send the unit to "
               << (e.unit_sign == 1 ? "+" : "-") << "e_L";
            complain(os.str());
        }
    }
    if (!problems.empty()) {
        std::ostringstream os;
        for (std::size_t k = 0; k < problems.size(); ++k) {
            if (k) os << "; ";
            os << problems[k];
        }
        throw invalid_input(os.str());
    }

    // pairing constraints
    for (std::size_t k = 0; k < pr.paired.size(); ++k) {
        std::size_t b = pr.paired[k];
        const CobordismEnd& e = c.ends[pr.paired_end_index(k)];
        if (e.delta[1][b] == 0) {
            std::ostringstream os;
            os << "cobordism: pi_" << k + 1 << "(gamma_" << b
               << ") has no point component; the end does not detect its class";
            complain(os.str());
        }
        for (std::size_t k2 = 0; k2 < pr.paired.size(); ++k2) {
            if (k2 == k) continue;
            std::size_t b2 = pr.paired[k2];
            if (e.delta[1][b2] != 0) {
                std::ostringstream os;
                os << "cobordism: pi_" << k + 1 << "(gamma_" << b2
                   << ") must have zero point component (i=" << k + 1 << ", j=" << k2 + 1 << ")";
                complain(os.str());
            }
        }
    }
    if (pr.has_distinguished) {
        const CobordismEnd& e0 = c.ends[0];
        for (std::size_t b : pr.paired)
            if (e0.delta[1][b] == 0) {
                std::ostringstream os;
                os << "cobordism: pi_0(gamma_" << b << ") has no point component";
                complain(os.str());
            }
    }
    if (!problems.empty()) {
        std::ostringstream os;
        for (std::size_t k = 0; k < problems.size(); ++k) {
            if (k) os << "; ";
            os << problems[k];
        }
        throw invalid_input(os.str());
    }
}

}  // namespace

CobordismReport cobordism_report(const CobordismData& c) {
    Pairing pr = make_pairing(c);
    validate_data(c, pr);

    CobordismReport rep;
    rep.r = pr.paired.size();
    auto add = [&](const std::string& name, CheckStatus st, const std::string& detail) {
        rep.checks.push_back(Check{name, st, detail});
    };

    // per-end extraction
    std::vector<Rat> discs;
    bool all_integral = true;
    for (std::size_t k = 0; k < pr.paired.size(); ++k) {
        std::size_t b = pr.paired[k];
        const CobordismEnd& e = c.ends[pr.paired_end_index(k)];
        std::vector<Rat> v = {e.delta[0][b], e.delta[1][b]};
        std::vector<Rat> sq = c.ring.basis_product(b, b);
        std::vector<Rat> w = push(e, sq);
        auto [sigma, tau] = extract_sigma_tau(v, w);
        EndSummary s;
        s.name = e.name.empty() ? "L" + std::to_string(k + 1) : e.name;
        s.sigma = sigma;
        s.tau = tau;
        s.disc = sigma * sigma + 4 * tau;
        s.integral = is_integer(sigma) && is_integer(tau);
        all_integral = all_integral && s.integral;
        discs.push_back(s.disc);
        rep.ends.push_back(std::move(s));
    }

    if (pr.has_distinguished) {
        const CobordismEnd& e0 = c.ends[0];
        std::optional<std::pair<Rat, Rat>> first;
        bool consistent = true;
        std::string offending;
        for (std::size_t k = 0; k < pr.paired.size(); ++k) {
            std::size_t b = pr.paired[k];
            std::vector<Rat> v = {e0.delta[0][b], e0.delta[1][b]};
            std::vector<Rat> w = push(e0, c.ring.basis_product(b, b));
            auto st = extract_sigma_tau(v, w);
            if (!first) {
                first = st;
            } else if (*first != st) {
                consistent = false;
                std::ostringstream os;
                os << "delta-bar is not multiplicative through the distinguished end: gamma_"
                   << pr.paired[0] << " and gamma_" << b << " disagree (index pair 0," << k + 1
                   << ")";
                offending = os.str();
            }
        }
        add("end0.consistent", consistent ? CheckStatus::pass : CheckStatus::fail, offending);
        if (first && consistent) {
            EndSummary s;
            s.name = e0.name.empty() ? "L0" : e0.name;
            s.sigma = first->first;
            s.tau = first->second;
            s.disc = s.sigma * s.sigma + 4 * s.tau;
            s.integral = is_integer(s.sigma) && is_integer(s.tau);
            all_integral = all_integral && s.integral;
            discs.push_back(s.disc);
            rep.ends.push_back(std::move(s));
        }
    }

    // structure-constant consequences of the basis lemma
    {
        bool ok = true;
        std::string detail;
        for (std::size_t i : pr.paired)
            for (std::size_t j : pr.paired) {
                if (i == j) continue;
                if (c.ring.mu.at({i, i, j}) != 0) {
                    ok = false;
                    std::ostringstream os;
                    os << "mu(" << i << "," << i << "," << j << ") != 0";
                    detail = os.str();
                }
            }
        add("thmB.mu_iij_zero", ok ? CheckStatus::pass : CheckStatus::fail, detail);
    }
    if (rep.r >= 2) {
        bool ok = true;
        std::string detail;
        for (std::size_t i : pr.paired)
            if (c.ring.mu.at({i, i, 0}) != 0) {
                ok = false;
                detail = "mu(" + std::to_string(i) + "," + std::to_string(i) + ",e) != 0";
            }
        add("thmB.mu_iie_zero", ok ? CheckStatus::pass : CheckStatus::fail, detail);
    }

    // discriminant equality across every end
    {
        bool equal = std::all_of(discs.begin(), discs.end(),
                                 [&](const Rat& d) { return d == discs.front(); });
        std::string detail;
        if (!discs.empty() && equal) {
            rep.common_disc = discs.front();
            detail = "common value " + to_string(discs.front());
        } else if (!equal) {
            std::ostringstream os;
            os << "end discriminants differ:";
            for (const auto& s : rep.ends) os << " " << s.name << "=" << to_string(s.disc);
            detail = os.str();
        }
        add("thmB.equal", equal ? CheckStatus::pass : CheckStatus::fail, detail);
    }

    if (rep.r >= 2 && rep.common_disc) {
        Rat root;
        bool sq = is_perfect_square(*rep.common_disc, &root);
        if (sq) rep.square_root = root;
        add("thmB.square", sq ? CheckStatus::pass : CheckStatus::fail,
            sq ? "square of " + to_string(root) : "value is not a perfect square");
    }

    add("disc.integral", all_integral ? CheckStatus::pass : CheckStatus::inconclusive,
        all_integral ? "" : "some extracted sigma/tau are not integers");

    // kernel equality of the two pushforwards (two-end data only)
    if (c.ends.size() == 2) {
        auto to_int_matrix = [&](const CobordismEnd& e) {
            // clear denominators row-wise for an integer kernel computation
            IntMatrix m(2, c.ring.rank);
            for (std::size_t row = 0; row < 2; ++row) {
                Int lcm = 1;
                for (const Rat& x : e.delta[row]) lcm = lcm / gcd_int(lcm, den(x)) * den(x);
                for (std::size_t j = 0; j < c.ring.rank; ++j)
                    m.at(row, j) = num(e.delta[row][j]) * (lcm / den(e.delta[row][j]));
            }
            return m;
        };
        IntMatrix m0 = to_int_matrix(c.ends[0]);
        IntMatrix m1 = to_int_matrix(c.ends[1]);
        auto k0 = kernel_basis(m0, CoeffRing::Q());
        auto k1 = kernel_basis(m1, CoeffRing::Q());
        bool equal = k0.size() == k1.size();
        if (equal) {
            for (const auto& v : k0) {
                std::vector<Rat> mv(m1.rows());
                auto app = m1.apply(v);
                if (!std::all_of(app.begin(), app.end(), [](const Int& x) { return x == 0; }))
                    equal = false;
            }
        }
        add("deltaGeneral.kernel_eq", equal ? CheckStatus::pass : CheckStatus::fail,
            equal ? "ker(pi_0) == ker(pi_1)" : "the two pushforwards have different kernels");
    }

    // discriminant of the cobordism ring itself
    rep.ring_disc = ring_discriminant(c.ring);
    switch (rep.ring_disc.kind) {
        case DiscriminantResult::Kind::value:
            add("ring.disc", CheckStatus::pass, "value " + to_string(rep.ring_disc.value));
            break;
        case DiscriminantResult::Kind::zero_certified:
            add("ring.disc", CheckStatus::pass, "zero certified by a kernel point");
            break;
        case DiscriminantResult::Kind::unknown:
            add("ring.disc", CheckStatus::inconclusive,
                "no kernel certificate found; discriminant not determined");
            break;
    }
    return rep;
}

CobordismData three_sphere_example(const Int& sigma, const Int& alpha) {
    CobordismData c;
    StructRing& r = c.ring;
    r.rank = 4;
    r.unit = 0;
    r.labels = {"e", "x1", "x2", "x3"};
    r.mu = Hypermatrix({4, 4, 4});
    for (std::size_t j = 0; j < 4; ++j) {
        r.mu.at({0, j, j}) = 1;
        if (j != 0) r.mu.at({j, 0, j}) = 1;
    }
    // sigma_1 = -sigma, sigma_2 = sigma, sigma_3 = -sigma; x_i^2 = -4 sigma_i x_i
    r.mu.at({1, 1, 1}) = Rat(4 * sigma);
    r.mu.at({2, 2, 2}) = Rat(-4 * sigma);
    r.mu.at({3, 3, 3}) = Rat(4 * sigma);
    r.mu.at({2, 3, 3}) = Rat(4 * alpha);
    r.mu.at({3, 2, 3}) = Rat(4 * alpha);

    for (std::size_t i = 1; i <= 3; ++i) {
        CobordismEnd e;
        e.name = "L" + std::to_string(i);
        e.unit_sign = 1;
        e.delta.assign(2, std::vector<Rat>(4, Rat(0)));
        e.delta[0][0] = 1;        // unit to +e_L
        e.delta[1][i] = Rat(-4);  // pi_i(x_i) = -4 p_i
        if (i == 3) e.delta[0][2] = Rat(4 * alpha);  // pi_3(x_2) = 4 alpha e_3
        c.ends.push_back(std::move(e));
    }
    return c;
}

CobordismData two_end_example(const QuadraticAlgebra& q) {
    CobordismData c;
    c.ring = embed_rank2(q);
    for (int i = 0; i < 2; ++i) {
        CobordismEnd e;
        e.name = i == 0 ? "L0" : "L1";
        e.unit_sign = 1;
        e.delta = {{Rat(1), Rat(0)}, {Rat(0), Rat(1)}};
        c.ends.push_back(std::move(e));
    }
    return c;
}

}  // namespace qhtk
