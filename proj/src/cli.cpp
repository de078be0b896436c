#include "qhtk/cli.hpp"

#include "qhtk/errors.hpp"
#include "qhtk/json_io.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

namespace qhtk::cli {

namespace {

using json_io::json;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitInternal = 3;

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw invalid_input("cannot open input file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

json parse_json(const std::string& bytes) {
    try {
        return json::parse(bytes);
    } catch (const json::parse_error& e) {
        throw invalid_input(std::string("malformed JSON: ") + e.what());
    }
}

struct Invocation {
    std::string command;      // echoed argv
    std::string input_bytes;  // for the digest
    json result;
    std::vector<Check> checks;
    bool pretty = false;
    std::string pretty_text;
    int exit_code = kExitOk;
};

void emit(const Invocation& inv, std::ostream& out) {
    if (inv.pretty && !inv.pretty_text.empty()) {
        out << inv.pretty_text;
        return;
    }
    json report;
    report["command"] = inv.command;
    report["input_digest"] = "fnv1a:" + fnv1a_hex(inv.input_bytes);
    report["result"] = inv.result;
    report["checks"] = json_io::checks_to_json(inv.checks);
    out << report.dump() << "\n";
}

// check failures on user data are input-level problems
int data_exit(const std::vector<Check>& checks) {
    for (const auto& c : checks)
        if (c.status == CheckStatus::fail) return kExitInput;
    return kExitOk;
}

std::string render_homology_table(const std::vector<HomologyGroup>& h) {
    std::ostringstream os;
    for (std::size_t k = 0; k < h.size(); ++k) os << "H_" << k << " = " << to_string(h[k]) << "\n";
    return os.str();
}

std::string render_page_table(const Page& p) {
    std::ostringstream os;
    os << "page r = " << p.r << "\n";
    for (const auto& [pq, dim] : p.groups)
        os << "  E[" << pq.first << "," << pq.second << "] dim " << dim << "\n";
    for (const auto& [pq, m] : p.differentials)
        os << "  d_r at (" << pq.first << "," << pq.second << "): " << m.size() << "x"
           << (m.empty() ? 0 : m[0].size()) << " nonzero matrix\n";
    return os.str();
}

void cmd_hyperdet(Invocation& inv, const std::string& path, const std::string& method) {
    inv.input_bytes = read_file(path);
    Hypermatrix a = json_io::hypermatrix_from_json(parse_json(inv.input_bytes));
    json result;
    std::optional<Rat> formula, schlafli;
    if (method == "formula" || method == "both") {
        formula = det222(a);
        result["formula"] = json_io::rat_to_json(*formula);
    }
    if (method == "schlafli" || method == "both") {
        schlafli = hyperdet_schlafli(a);
        result["schlafli"] = json_io::rat_to_json(*schlafli);
    }
    if (formula && schlafli) {
        bool ok = *formula == *schlafli;
        inv.checks.push_back(Check{"formula_vs_schlafli",
                                   ok ? CheckStatus::pass : CheckStatus::fail,
                                   ok ? "" : "the two computation paths disagree"});
        if (!ok) inv.exit_code = kExitInternal;
    }
    Rat value = formula ? *formula : *schlafli;
    result["value"] = json_io::rat_to_json(value);
    if (value == 0) {
        auto found = kernel_search(a);
        if (found.point) result["kernel_point"] = json_io::kernel_point_to_json(*found.point);
        result["kernel_status"] = found.point ? "certified" : "degenerate, not rationally certified";
    }
    inv.result = std::move(result);
}

void cmd_ring_disc(Invocation& inv, const std::string& path, bool check_assoc) {
    inv.input_bytes = read_file(path);
    StructRing r = json_io::ring_from_json(parse_json(inv.input_bytes));
    check_unit_law(r);
    if (check_assoc) {
        bool ok = is_associative(r);
        inv.checks.push_back(Check{"ring.associative", ok ? CheckStatus::pass : CheckStatus::fail,
                                   ok ? "" : "structure constants are not associative"});
    }
    DiscriminantResult res = ring_discriminant(r);
    json result;
    switch (res.kind) {
        case DiscriminantResult::Kind::value:
            result["kind"] = "value";
            result["value"] = json_io::rat_to_json(res.value);
            inv.checks.push_back(Check{"ring.disc", CheckStatus::pass, "exact value"});
            break;
        case DiscriminantResult::Kind::zero_certified:
            result["kind"] = "zero_certified";
            result["witness"] = json_io::kernel_point_to_json(*res.witness);
            inv.checks.push_back(Check{"ring.disc", CheckStatus::pass, "kernel point certified"});
            break;
        case DiscriminantResult::Kind::unknown:
            result["kind"] = "unknown";
            inv.checks.push_back(
                Check{"ring.disc", CheckStatus::inconclusive, "no certificate found"});
            break;
    }
    inv.result = std::move(result);
    inv.exit_code = data_exit(inv.checks);
}

void cmd_cobordism_check(Invocation& inv, const std::string& path) {
    inv.input_bytes = read_file(path);
    CobordismData c = json_io::cobordism_from_json(parse_json(inv.input_bytes));
    CobordismReport rep = cobordism_report(c);
    inv.result = json_io::cobordism_report_to_json(rep);
    inv.checks = rep.checks;
    inv.exit_code = data_exit(inv.checks);
}

void cmd_cobordism_surgery(Invocation& inv, long long sigma, long long alpha) {
    inv.input_bytes = "sigma=" + std::to_string(sigma) + ",alpha=" + std::to_string(alpha);
    CobordismData c = three_sphere_example(Int(sigma), Int(alpha));
    CobordismReport rep = cobordism_report(c);
    inv.result = json{{"data", json_io::cobordism_to_json(c)},
                      {"report", json_io::cobordism_report_to_json(rep)}};
    inv.checks = rep.checks;
    inv.exit_code = data_exit(inv.checks);
}

void cmd_homology(Invocation& inv, const std::string& path) {
    inv.input_bytes = read_file(path);
    ChainComplex c = json_io::chain_complex_from_json(parse_json(inv.input_bytes));
    validate(c);
    inv.checks.push_back(Check{"complex.valid", CheckStatus::pass, "d∘d = 0"});
    auto h = homology(c);
    inv.result = json{{"homology", json_io::homology_to_json(h)}};
    inv.pretty_text = render_homology_table(h);
}

void cmd_equivariant_ki(Invocation& inv, long long n, long long i) {
    inv.input_bytes = "n=" + std::to_string(n) + ",i=" + std::to_string(i);
    if (n < 0 || i < 0 || i > n) throw invalid_input("require 0 <= i <= n");
    auto h = homology_k(static_cast<std::size_t>(n), static_cast<std::size_t>(i));
    bool orientable = is_orientable(static_cast<std::size_t>(n), static_cast<std::size_t>(i));
    inv.result = json{{"homology", json_io::homology_to_json(h)}, {"orientable", orientable}};
    inv.checks.push_back(Check{"lemmaK.orientable",
                               orientable ? CheckStatus::pass : CheckStatus::fail,
                               "top homology is Z for even n"});
    if (!orientable) inv.exit_code = kExitInternal;
    inv.pretty_text = render_homology_table(h);
}

void cmd_equivariant_custom(Invocation& inv, const std::string& path) {
    inv.input_bytes = read_file(path);
    GroupRingComplex e = json_io::group_ring_from_json(parse_json(inv.input_bytes));
    ChainComplex c = equivariant_collapse(e);
    inv.checks.push_back(Check{"complex.valid", CheckStatus::pass, "collapse produced d∘d = 0"});
    auto h = homology(c);
    inv.result = json{{"homology", json_io::homology_to_json(h)},
                      {"collapsed", json_io::chain_complex_to_json(c)}};
    inv.pretty_text = render_homology_table(h);
}

void cmd_specseq(Invocation& inv, const std::string& path, std::optional<int> page_r, bool verify) {
    inv.input_bytes = read_file(path);
    FilteredComplex f = json_io::filtered_from_json(parse_json(inv.input_bytes));
    validate(f);
    json result;
    int collapse = collapse_page(f);
    result["collapse_at"] = collapse;
    Page p = page(f, page_r ? *page_r : collapse);
    result["page"] = json_io::page_to_json(p);
    if (verify) {
        ConvergenceReport rep = verify_convergence(f);
        result["convergence"] = json_io::convergence_to_json(rep);
        inv.checks.push_back(Check{"specseq.einf_vs_graded",
                                   rep.consistent ? CheckStatus::pass : CheckStatus::fail,
                                   rep.consistent ? "E^inf matches the graded homology"
                                                  : "dimension mismatch"});
        if (!rep.consistent) inv.exit_code = kExitInternal;
    }
    inv.result = std::move(result);
    inv.pretty_text = render_page_table(p);
}

void cmd_pl_twist(Invocation& inv, const std::string& path, std::size_t sphere) {
    inv.input_bytes = read_file(path);
    Lattice l = json_io::lattice_from_json(parse_json(inv.input_bytes));
    IntMatrix phi = dehn_twist(l, sphere);
    bool isometry = phi.transpose() * l.gram * phi == l.gram;
    bool involution = phi * phi == IntMatrix::identity(l.rank);
    auto img = phi.apply(l.spheres[sphere]);
    bool reflects = true;
    for (std::size_t c = 0; c < l.rank; ++c)
        if (img[c] != -l.spheres[sphere][c]) reflects = false;
    inv.checks.push_back(
        Check{"pl.isometry", isometry ? CheckStatus::pass : CheckStatus::fail, ""});
    inv.checks.push_back(
        Check{"pl.involution", involution ? CheckStatus::pass : CheckStatus::fail, ""});
    inv.checks.push_back(
        Check{"pl.reflects_sphere", reflects ? CheckStatus::pass : CheckStatus::fail, ""});
    if (!isometry || !involution || !reflects) inv.exit_code = kExitInternal;
    inv.result = json{{"twist", json_io::int_matrix_to_json(phi)}};
}

void cmd_pl_solve(Invocation& inv, const std::string& path) {
    inv.input_bytes = read_file(path);
    Lattice l = json_io::lattice_from_json(parse_json(inv.input_bytes));
    GWReport rep = gw_solve(l);
    inv.result = json_io::gw_report_to_json(rep);
    inv.checks = rep.identities;
    for (const auto& c : inv.checks)
        if (c.status == CheckStatus::fail) inv.exit_code = kExitInternal;
}

void cmd_form_even(Invocation& inv, const std::string& path) {
    inv.input_bytes = read_file(path);
    json v = parse_json(inv.input_bytes);
    IntMatrix q = json_io::int_matrix_from_json(v.contains("matrix") ? v["matrix"] : v);
    bool even = is_even_form(q);
    inv.result = json{{"even", even}};
    inv.checks.push_back(Check{"wu.even", CheckStatus::pass,
                               even ? "all diagonal entries even" : "an odd diagonal entry exists"});
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact discriminants, homology and spectral sequences"};
    app.require_subcommand(1);

    Invocation inv;
    {
        std::ostringstream os;
        for (std::size_t i = 0; i < args.size(); ++i) {
            if (i) os << ' ';
            os << args[i];
        }
        inv.command = os.str();
    }

    std::string input;
    std::string method = "both";
    bool assoc = false;
    long long sigma = 0, alpha = 0, n = 0, i = 0;
    std::optional<int> page_r;
    bool verify = false;
    std::size_t sphere = 0;
    bool pretty = false;
    app.add_flag("--pretty", pretty, "human-readable tables where available");

    auto* hyperdet = app.add_subcommand("hyperdet", "hyperdeterminant of a 2x2x2 hypermatrix");
    hyperdet->add_option("--input", input)->required();
    hyperdet->add_option("--method", method)->check(CLI::IsMember({"formula", "schlafli", "both"}));

    auto* ring = app.add_subcommand("ring", "structure-constant rings");
    auto* ring_disc = ring->add_subcommand("disc", "ring discriminant");
    ring_disc->add_option("--input", input)->required();
    ring_disc->add_flag("--assoc", assoc, "check associativity");

    auto* cob = app.add_subcommand("cobordism", "end-discriminant pipeline");
    auto* cob_check = cob->add_subcommand("check", "validate data and compare end discriminants");
    cob_check->add_option("--input", input)->required();
    auto* cob_surgery = cob->add_subcommand("surgery", "three-sphere surgery example");
    cob_surgery->add_option("--sigma", sigma)->required();
    cob_surgery->add_option("--alpha", alpha)->required();

    auto* hom = app.add_subcommand("homology", "homology of a chain complex");
    hom->add_option("--input", input)->required();

    auto* equi = app.add_subcommand("equivariant", "equivariant homology");
    auto* equi_ki = equi->add_subcommand("ki", "sphere-product quotients");
    equi_ki->add_option("--n", n)->required();
    equi_ki->add_option("--i", i)->required();
    auto* equi_custom = equi->add_subcommand("custom", "collapse a group-ring complex");
    equi_custom->add_option("--input", input)->required();

    auto* spec = app.add_subcommand("specseq", "spectral sequence of a filtered complex");
    spec->add_option("--input", input)->required();
    spec->add_option("--page", [&page_r](const std::vector<std::string>& vals) {
        page_r = std::stoi(vals.at(0));
        return true;
    }, "page index");
    spec->add_flag("--verify", verify, "check E^inf against the graded homology");

    auto* pl = app.add_subcommand("pl", "intersection lattices and twists");
    auto* pl_twist = pl->add_subcommand("twist", "Picard-Lefschetz reflection matrix");
    pl_twist->add_option("--input", input)->required();
    pl_twist->add_option("--sphere", sphere)->required();
    auto* pl_solve = pl->add_subcommand("solve", "solve the GW constraint system");
    pl_solve->add_option("--input", input)->required();

    auto* form = app.add_subcommand("form", "intersection forms");
    auto* form_even = form->add_subcommand("even", "evenness criterion");
    form_even->add_option("--input", input)->required();

    for (auto* sub : {hyperdet, ring, ring_disc, cob, cob_check, cob_surgery, hom, equi,
                      equi_ki, equi_custom, spec, pl, pl_twist, pl_solve, form, form_even})
        sub->fallthrough();

    try {
        std::vector<std::string> argv = args;
        std::reverse(argv.begin(), argv.end());
        app.parse(argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n" << app.help();
        return kExitInput;
    }

    inv.pretty = pretty;
    try {
        if (hyperdet->parsed()) cmd_hyperdet(inv, input, method);
        else if (ring_disc->parsed()) cmd_ring_disc(inv, input, assoc);
        else if (cob_check->parsed()) cmd_cobordism_check(inv, input);
        else if (cob_surgery->parsed()) cmd_cobordism_surgery(inv, sigma, alpha);
        else if (hom->parsed()) cmd_homology(inv, input);
        else if (equi_ki->parsed()) cmd_equivariant_ki(inv, n, i);
        else if (equi_custom->parsed()) cmd_equivariant_custom(inv, input);
        else if (spec->parsed()) cmd_specseq(inv, input, page_r, verify);
        else if (pl_twist->parsed()) cmd_pl_twist(inv, input, sphere);
        else if (pl_solve->parsed()) cmd_pl_solve(inv, input);
        else if (form_even->parsed()) cmd_form_even(inv, input);
        else {
            err << "no subcommand given\n" << app.help();
            return kExitInput;
        }
    } catch (const invalid_input& e) {
        err << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const internal_error& e) {
        err << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    emit(inv, out);
    return inv.exit_code;
}

}  // namespace qhtk::cli
