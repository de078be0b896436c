#include "qhtk/json_io.hpp"

#include "qhtk/errors.hpp"

#include <sstream>

namespace qhtk::json_io {

Rat rat_from_json(const json& v) {
    if (v.is_string()) return parse_rat(v.get<std::string>());
    if (v.is_number_integer()) return Rat(Int(v.get<long long>()));
    throw invalid_input("expected an integer or a rational string, got " + v.dump());
}

json rat_to_json(const Rat& r) { return to_string(r); }
json int_to_json(const Int& v) { return v.str(); }

IntMatrix int_matrix_from_json(const json& v) {
    if (!v.is_array()) throw invalid_input("matrix must be an array of rows");
    std::vector<std::vector<Int>> rows;
    for (const auto& row : v) {
        if (!row.is_array()) throw invalid_input("matrix row must be an array");
        std::vector<Int> r;
        for (const auto& x : row) {
            Rat q = rat_from_json(x);
            if (!is_integer(q)) throw invalid_input("matrix entries must be integers");
            r.push_back(num(q));
        }
        rows.push_back(std::move(r));
    }
    return IntMatrix::from_rows(rows);
}

json int_matrix_to_json(const IntMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j).str());
        rows.push_back(std::move(row));
    }
    return rows;
}

namespace {

CoeffRing coeff_from_json(const json& v) {
    std::string s = v.get<std::string>();
    if (s == "Z") return CoeffRing::Z();
    if (s == "Q") return CoeffRing::Q();
    if (s == "Z2") return CoeffRing::Z2();
    throw invalid_input("coeff must be one of \"Z\", \"Q\", \"Z2\"");
}

std::string coeff_to_string(const CoeffRing& c) {
    if (c == CoeffRing::Z()) return "Z";
    if (c == CoeffRing::Q()) return "Q";
    if (c == CoeffRing::Z2()) return "Z2";
    return "Z/" + c.modulus.str();
}

const json& require(const json& v, const char* key) {
    auto it = v.find(key);
    if (it == v.end()) throw invalid_input(std::string("missing field \"") + key + "\"");
    return *it;
}

}  // namespace

ChainComplex chain_complex_from_json(const json& v) {
    ChainComplex c;
    c.coeff = coeff_from_json(require(v, "coeff"));
    for (const auto& d : require(v, "dims")) c.dims.push_back(d.get<std::size_t>());
    std::vector<IntMatrix> bnd;
    for (const auto& b : require(v, "boundaries")) bnd.push_back(int_matrix_from_json(b));
    if (v.contains("labels"))
        for (const auto& per : v["labels"]) {
            std::vector<std::string> names;
            for (const auto& l : per) names.push_back(l.get<std::string>());
            c.basis_labels.push_back(std::move(names));
        }
    // empty arrays stand in for boundaries of/to zero-dimensional degrees
    auto fix = [&](IntMatrix m, std::size_t rows, std::size_t cols) {
        if (m.rows() == rows && m.cols() == cols) return m;
        if (m.rows() == 0 || m.cols() == 0) return IntMatrix(rows, cols);
        return m;  // let validate() report the mismatch
    };
    if (bnd.size() + 1 == c.dims.size() || bnd.size() == c.dims.size()) {
        std::size_t off = bnd.size() == c.dims.size() ? 1 : 0;
        for (std::size_t k = off; k < bnd.size(); ++k) {
            std::size_t deg = k + 1 - off;
            bnd[k] = fix(std::move(bnd[k]), c.dims[deg - 1], c.dims[deg]);
        }
    }
    ChainComplex out = make_complex(c.coeff, c.dims, std::move(bnd));
    out.basis_labels = std::move(c.basis_labels);
    return out;
}

json chain_complex_to_json(const ChainComplex& c) {
    json out;
    out["coeff"] = coeff_to_string(c.coeff);
    out["dims"] = c.dims;
    json bnd = json::array();
    for (std::size_t k = 1; k < c.boundaries.size(); ++k)
        bnd.push_back(int_matrix_to_json(c.boundaries[k]));
    out["boundaries"] = std::move(bnd);
    return out;
}

GroupRingComplex group_ring_from_json(const json& v) {
    GroupRingComplex e;
    for (const auto& d : require(v, "dims")) e.ranks.push_back(d.get<std::size_t>());
    if (v.contains("action")) e.action = int_matrix_from_json(v["action"]);
    const json& bnds = require(v, "boundaries");
    if (bnds.size() + 1 != e.ranks.size() && !(bnds.empty() && e.ranks.size() <= 1))
        throw invalid_input("group-ring boundaries must cover degrees 1..top");
    e.boundaries.resize(e.ranks.size());
    e.boundaries[0] = GroupRingMatrix{IntMatrix(0, e.ranks.empty() ? 0 : e.ranks[0]),
                                      IntMatrix(0, e.ranks.empty() ? 0 : e.ranks[0])};
    for (std::size_t k = 1; k < e.ranks.size(); ++k) {
        const json& b = bnds[k - 1];
        GroupRingMatrix m{IntMatrix(e.ranks[k - 1], e.ranks[k]),
                          IntMatrix(e.ranks[k - 1], e.ranks[k])};
        if (!b.is_array() || b.size() != e.ranks[k - 1])
            throw invalid_input("group-ring boundary row count mismatch at degree " +
                                std::to_string(k));
        for (std::size_t i = 0; i < e.ranks[k - 1]; ++i) {
            if (!b[i].is_array() || b[i].size() != e.ranks[k])
                throw invalid_input("group-ring boundary column count mismatch");
            for (std::size_t j = 0; j < e.ranks[k]; ++j) {
                const json& pair = b[i][j];
                if (!pair.is_array() || pair.size() != 2)
                    throw invalid_input("group-ring entries must be [a, b] pairs");
                Rat a = rat_from_json(pair[0]), bb = rat_from_json(pair[1]);
                if (!is_integer(a) || !is_integer(bb))
                    throw invalid_input("group-ring entries must be integers");
                m.a.at(i, j) = num(a);
                m.b.at(i, j) = num(bb);
            }
        }
        e.boundaries[k] = std::move(m);
    }
    return e;
}

FilteredComplex filtered_from_json(const json& v) {
    FilteredComplex f;
    f.base = chain_complex_from_json(v);
    for (const auto& per : require(v, "levels")) {
        std::vector<int> lev;
        for (const auto& l : per) lev.push_back(l.get<int>());
        f.levels.push_back(std::move(lev));
    }
    return f;
}

Hypermatrix hypermatrix_from_json(const json& v) {
    std::vector<std::size_t> format;
    for (const auto& k : require(v, "format")) format.push_back(k.get<std::size_t>());
    Hypermatrix a(format);
    if (v.contains("entries")) {
        const json& entries = v["entries"];
        if (!entries.is_object()) throw invalid_input("hypermatrix entries must be an object");
        for (auto it = entries.begin(); it != entries.end(); ++it) {
            const std::string& key = it.key();
            if (key.size() != format.size())
                throw invalid_input("hypermatrix entry key '" + key + "' has wrong arity");
            std::vector<std::size_t> idx;
            for (char ch : key) {
                if (ch < '0' || ch > '9') throw invalid_input("bad index digit in '" + key + "'");
                idx.push_back(static_cast<std::size_t>(ch - '0'));
            }
            a.at(idx) = rat_from_json(it.value());
        }
    }
    return a;
}

json hypermatrix_to_json(const Hypermatrix& a) {
    json out;
    out["format"] = a.format();
    json entries = json::object();
    for (std::size_t off = 0; off < a.size(); ++off) {
        if (a.entries()[off] == 0) continue;
        auto idx = a.index_of(off);
        std::string key;
        for (std::size_t d : idx) key += static_cast<char>('0' + d);
        entries[key] = rat_to_json(a.entries()[off]);
    }
    out["entries"] = std::move(entries);
    return out;
}

StructRing ring_from_json(const json& v) {
    StructRing r;
    r.rank = require(v, "rank").get<std::size_t>();
    r.unit = v.contains("unit") ? v["unit"].get<std::size_t>() : 0;
    if (v.contains("labels"))
        for (const auto& l : v["labels"]) r.labels.push_back(l.get<std::string>());
    r.mu = hypermatrix_from_json(require(v, "mu"));
    if (!(r.mu.format() == std::vector<std::size_t>{r.rank, r.rank, r.rank}))
        throw invalid_input("ring: mu format must equal rank^3");
    return r;
}

json ring_to_json(const StructRing& r) {
    json out;
    out["rank"] = r.rank;
    out["unit"] = r.unit;
    out["labels"] = r.labels;
    out["mu"] = hypermatrix_to_json(r.mu);
    return out;
}

CobordismData cobordism_from_json(const json& v) {
    CobordismData c;
    c.ring = ring_from_json(v);
    for (const auto& e : require(v, "ends")) {
        CobordismEnd end;
        if (e.contains("name")) end.name = e["name"].get<std::string>();
        end.unit_sign = e.contains("unit_sign") ? e["unit_sign"].get<int>() : 1;
        const json& delta = require(e, "delta");
        if (!delta.is_array() || delta.size() != 2)
            throw invalid_input("end delta must have two rows (e and p coordinates)");
        for (const auto& row : delta) {
            std::vector<Rat> r;
            for (const auto& x : row) r.push_back(rat_from_json(x));
            end.delta.push_back(std::move(r));
        }
        c.ends.push_back(std::move(end));
    }
    return c;
}

json cobordism_to_json(const CobordismData& c) {
    json out = ring_to_json(c.ring);
    json ends = json::array();
    for (const auto& e : c.ends) {
        json je;
        je["name"] = e.name;
        je["unit_sign"] = e.unit_sign;
        json delta = json::array();
        for (const auto& row : e.delta) {
            json jr = json::array();
            for (const auto& x : row) jr.push_back(rat_to_json(x));
            delta.push_back(std::move(jr));
        }
        je["delta"] = std::move(delta);
        ends.push_back(std::move(je));
    }
    out["ends"] = std::move(ends);
    return out;
}

Lattice lattice_from_json(const json& v) {
    Lattice l;
    l.n = require(v, "n").get<int>();
    l.gram = int_matrix_from_json(require(v, "gram"));
    l.rank = l.gram.rows();
    auto read_classes = [&](const char* key, std::vector<std::vector<Int>>& out) {
        if (!v.contains(key)) return;
        for (const auto& row : v[key]) {
            std::vector<Int> s;
            for (const auto& x : row) {
                Rat q = rat_from_json(x);
                if (!is_integer(q)) throw invalid_input("lattice classes must be integer vectors");
                s.push_back(num(q));
            }
            out.push_back(std::move(s));
        }
    };
    read_classes("spheres", l.spheres);
    read_classes("surgery_classes", l.surgery_classes);
    return l;
}

json homology_to_json(const std::vector<HomologyGroup>& h) {
    json out = json::array();
    for (const auto& g : h) {
        json jg;
        jg["free_rank"] = g.free_rank;
        json tor = json::array();
        for (const Int& t : g.torsion) tor.push_back(t.str());
        jg["torsion"] = std::move(tor);
        jg["pretty"] = to_string(g);
        out.push_back(std::move(jg));
    }
    return out;
}

json checks_to_json(const std::vector<Check>& checks) {
    json out = json::array();
    for (const auto& c : checks) {
        json jc;
        jc["name"] = c.name;
        jc["status"] = c.status == CheckStatus::pass     ? "pass"
                       : c.status == CheckStatus::fail   ? "fail"
                                                         : "inconclusive";
        jc["detail"] = c.detail;
        out.push_back(std::move(jc));
    }
    return out;
}

json page_to_json(const Page& p) {
    json out;
    out["r"] = p.r;
    json groups = json::object();
    for (const auto& [pq, dim] : p.groups) {
        std::string key = std::to_string(pq.first) + "," + std::to_string(pq.second);
        groups[key] = dim;
    }
    out["groups"] = std::move(groups);
    json diffs = json::object();
    for (const auto& [pq, m] : p.differentials) {
        std::string key = std::to_string(pq.first) + "," + std::to_string(pq.second);
        json rows = json::array();
        for (const auto& row : m) {
            json jr = json::array();
            for (const auto& x : row) jr.push_back(rat_to_json(x));
            rows.push_back(std::move(jr));
        }
        diffs[key] = std::move(rows);
    }
    out["differentials"] = std::move(diffs);
    return out;
}

json convergence_to_json(const ConvergenceReport& r) {
    json out;
    out["consistent"] = r.consistent;
    json graded = json::object();
    for (const auto& [pq, pair] : r.graded) {
        std::string key = std::to_string(pq.first) + "," + std::to_string(pq.second);
        graded[key] = json{{"einf", pair.first}, {"graded", pair.second}};
    }
    out["graded"] = std::move(graded);
    json totals = json::object();
    for (const auto& [n, pair] : r.totals)
        totals[std::to_string(n)] = json{{"einf_total", pair.first}, {"homology", pair.second}};
    out["totals"] = std::move(totals);
    return out;
}

json kernel_point_to_json(const KernelPoint& p) {
    json out = json::array();
    for (const auto& f : p.factors) {
        json jf = json::array();
        for (const Int& x : f) jf.push_back(x.str());
        out.push_back(std::move(jf));
    }
    return out;
}

json gw_report_to_json(const GWReport& r) {
    json out;
    json basis = json::array();
    for (const auto& b : r.system.span_basis) {
        json jb = json::array();
        for (const Int& x : b) jb.push_back(x.str());
        basis.push_back(std::move(jb));
    }
    out["span_basis"] = std::move(basis);
    out["solution_dim"] = r.solution_dim();
    json sols = json::array();
    for (const auto& g : r.solution_basis) {
        json jc = json::array();
        for (const auto& c : g.coeffs) jc.push_back(rat_to_json(c));
        sols.push_back(std::move(jc));
    }
    out["solution_basis"] = std::move(sols);
    json pairs = json::array();
    for (const auto& p : r.pair_discs) {
        pairs.push_back(json{{"i", p.i}, {"j", p.j}, {"forced_zero", p.forced_zero}});
    }
    out["pair_discriminants"] = std::move(pairs);
    return out;
}

json cobordism_report_to_json(const CobordismReport& r) {
    json out;
    json ends = json::array();
    for (const auto& e : r.ends) {
        ends.push_back(json{{"name", e.name},
                            {"sigma", rat_to_json(e.sigma)},
                            {"tau", rat_to_json(e.tau)},
                            {"discriminant", rat_to_json(e.disc)},
                            {"integral", e.integral}});
    }
    out["ends"] = std::move(ends);
    out["r"] = r.r;
    if (r.common_disc) out["common_discriminant"] = rat_to_json(*r.common_disc);
    if (r.square_root) out["square_root"] = rat_to_json(*r.square_root);
    switch (r.ring_disc.kind) {
        case DiscriminantResult::Kind::value:
            out["ring_discriminant"] = json{{"kind", "value"}, {"value", rat_to_json(r.ring_disc.value)}};
            break;
        case DiscriminantResult::Kind::zero_certified:
            out["ring_discriminant"] =
                json{{"kind", "zero_certified"}, {"witness", kernel_point_to_json(*r.ring_disc.witness)}};
            break;
        case DiscriminantResult::Kind::unknown:
            out["ring_discriminant"] = json{{"kind", "unknown"}};
            break;
    }
    return out;
}

}  // namespace qhtk::json_io
