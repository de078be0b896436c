#include "qhtk/cli.hpp"
#include "qhtk/cobordism.hpp"
#include "qhtk/errors.hpp"
#include "qhtk/equivariant.hpp"
#include "qhtk/json_io.hpp"
#include "qhtk/lattice.hpp"
#include "qhtk/spectral.hpp"
#include "qhtk/struct_ring.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace qhtk;

namespace {

Int int_from_py(const py::handle& h) {
    return Int(py::str(h).cast<std::string>());
}

py::object int_to_py(const Int& v) {
    return py::module_::import("builtins").attr("int")(v.str());
}

Rat rat_from_py(const py::handle& h) {
    if (py::isinstance<py::int_>(h)) return Rat(int_from_py(h));
    return parse_rat(py::str(h).cast<std::string>());
}

py::object rat_to_py(const Rat& r) {
    auto fractions = py::module_::import("fractions");
    return fractions.attr("Fraction")(int_to_py(num(r)), int_to_py(den(r)));
}

IntMatrix matrix_from_py(const py::sequence& rows) {
    std::vector<std::vector<Int>> data;
    for (const auto& row : rows) {
        std::vector<Int> r;
        for (const auto& x : py::cast<py::sequence>(row)) r.push_back(int_from_py(x));
        data.push_back(std::move(r));
    }
    return IntMatrix::from_rows(data);
}

py::list matrix_to_py(const IntMatrix& m) {
    py::list rows;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        py::list row;
        for (std::size_t j = 0; j < m.cols(); ++j) row.append(int_to_py(m.at(i, j)));
        rows.append(row);
    }
    return rows;
}

py::list vector_to_py(const std::vector<Int>& v) {
    py::list out;
    for (const Int& x : v) out.append(int_to_py(x));
    return out;
}

Hypermatrix hypermatrix_from_py(const py::handle& h) {
    // nested 2x2x2 lists of ints / Fractions / strings
    Hypermatrix a({2, 2, 2});
    auto outer = py::cast<py::sequence>(h);
    for (std::size_t i = 0; i < 2; ++i) {
        auto mid = py::cast<py::sequence>(outer[i]);
        for (std::size_t j = 0; j < 2; ++j) {
            auto inner = py::cast<py::sequence>(mid[j]);
            for (std::size_t k = 0; k < 2; ++k) a.at({i, j, k}) = rat_from_py(inner[k]);
        }
    }
    return a;
}

CoeffRing coeff_from_name(const std::string& name) {
    if (name == "Z") return CoeffRing::Z();
    if (name == "Q") return CoeffRing::Q();
    if (name == "Z2") return CoeffRing::Z2();
    if (name.rfind("Z/", 0) == 0) return CoeffRing::Zm(Int(name.substr(2)));
    throw invalid_input("unknown coefficient ring: " + name);
}

py::list homology_to_py(const std::vector<HomologyGroup>& h) {
    py::list out;
    for (const auto& g : h) {
        py::dict d;
        d["free_rank"] = g.free_rank;
        py::list tor;
        for (const Int& t : g.torsion) tor.append(int_to_py(t));
        d["torsion"] = tor;
        d["pretty"] = to_string(g);
        out.append(d);
    }
    return out;
}

ChainComplex complex_from_py(const std::string& coeff, const std::vector<std::size_t>& dims,
                             const py::sequence& boundaries) {
    std::vector<IntMatrix> bnd;
    for (const auto& b : boundaries) bnd.push_back(matrix_from_py(py::cast<py::sequence>(b)));
    // allow [] placeholders for empty boundaries
    for (std::size_t k = 0; k < bnd.size(); ++k) {
        std::size_t deg = k + 1;
        if (bnd[k].rows() == 0 && bnd[k].cols() == 0 && deg < dims.size())
            bnd[k] = IntMatrix(dims[deg - 1], dims[deg]);
    }
    return make_complex(coeff_from_name(coeff), dims, std::move(bnd));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "exact linear algebra, discriminants and homology";

    py::register_exception<invalid_input>(m, "InvalidInput", PyExc_ValueError);
    py::register_exception<internal_error>(m, "InternalError", PyExc_RuntimeError);

    m.def("smith_normal_form", [](const py::sequence& rows) {
        SnfResult r = smith_normal_form(matrix_from_py(rows));
        return py::make_tuple(matrix_to_py(r.s), matrix_to_py(r.u), matrix_to_py(r.v));
    });

    m.def(
        "kernel_basis",
        [](const py::sequence& rows, const std::string& coeff) {
            auto k = kernel_basis(matrix_from_py(rows), coeff_from_name(coeff));
            py::list out;
            for (const auto& v : k) out.append(vector_to_py(v));
            return out;
        },
        py::arg("matrix"), py::arg("coeff") = "Q");

    m.def(
        "solve",
        [](const py::sequence& rows, const py::sequence& rhs, const std::string& coeff) -> py::object {
            std::vector<Rat> b;
            for (const auto& x : rhs) b.push_back(rat_from_py(x));
            auto x = solve(matrix_from_py(rows), b, coeff_from_name(coeff));
            if (!x) return py::none();
            py::list out;
            for (const Rat& v : *x) out.append(rat_to_py(v));
            return out;
        },
        py::arg("matrix"), py::arg("rhs"), py::arg("coeff") = "Q");

    m.def("det222", [](const py::handle& a) { return rat_to_py(det222(hypermatrix_from_py(a))); });
    m.def("hyperdet_schlafli",
          [](const py::handle& a) { return rat_to_py(hyperdet_schlafli(hypermatrix_from_py(a))); });
    m.def("kernel_search", [](const py::handle& a) -> py::object {
        auto res = kernel_search(hypermatrix_from_py(a));
        if (!res.point) return py::none();
        py::list out;
        for (const auto& f : res.point->factors) out.append(vector_to_py(f));
        return out;
    });

    m.def("quadratic_discriminant", [](const py::handle& sigma, const py::handle& tau) {
        return int_to_py(
            quadratic_algebra_discriminant({int_from_py(sigma), int_from_py(tau)}));
    });

    m.def("embed_rank2", [](const py::handle& sigma, const py::handle& tau) {
        StructRing r = embed_rank2({int_from_py(sigma), int_from_py(tau)});
        py::list out;
        for (std::size_t i = 0; i < 2; ++i) {
            py::list mid;
            for (std::size_t j = 0; j < 2; ++j) {
                py::list inner;
                for (std::size_t k = 0; k < 2; ++k) inner.append(rat_to_py(r.mu.at({i, j, k})));
                mid.append(inner);
            }
            out.append(mid);
        }
        return out;
    });

    m.def(
        "homology",
        [](const std::string& coeff, const std::vector<std::size_t>& dims,
           const py::sequence& boundaries) {
            ChainComplex c = complex_from_py(coeff, dims, boundaries);
            return homology_to_py(homology(c));
        },
        py::arg("coeff"), py::arg("dims"), py::arg("boundaries"));

    m.def("homology_k", [](std::size_t n, std::size_t i) { return homology_to_py(homology_k(n, i)); });
    m.def("is_orientable", [](std::size_t n, std::size_t i) { return is_orientable(n, i); });

    m.def(
        "spectral_page",
        [](const std::string& coeff, const std::vector<std::size_t>& dims,
           const py::sequence& boundaries, const std::vector<std::vector<int>>& levels, int r) {
            FilteredComplex f;
            f.base = complex_from_py(coeff, dims, boundaries);
            f.levels = levels;
            Page p = page(f, r);
            py::dict groups;
            for (const auto& [pq, dim] : p.groups)
                groups[py::make_tuple(pq.first, pq.second)] = dim;
            return groups;
        },
        py::arg("coeff"), py::arg("dims"), py::arg("boundaries"), py::arg("levels"), py::arg("r"));

    m.def("collapse_page", [](const std::string& coeff, const std::vector<std::size_t>& dims,
                              const py::sequence& boundaries,
                              const std::vector<std::vector<int>>& levels) {
        FilteredComplex f;
        f.base = complex_from_py(coeff, dims, boundaries);
        f.levels = levels;
        return collapse_page(f);
    });

    m.def("verify_convergence", [](const std::string& coeff, const std::vector<std::size_t>& dims,
                                   const py::sequence& boundaries,
                                   const std::vector<std::vector<int>>& levels) {
        FilteredComplex f;
        f.base = complex_from_py(coeff, dims, boundaries);
        f.levels = levels;
        return verify_convergence(f).consistent;
    });

    m.def(
        "dehn_twist",
        [](int n, const py::sequence& gram, const py::sequence& spheres, std::size_t index) {
            Lattice l;
            l.n = n;
            l.gram = matrix_from_py(gram);
            l.rank = l.gram.rows();
            for (const auto& s : spheres) {
                std::vector<Int> v;
                for (const auto& x : py::cast<py::sequence>(s)) v.push_back(int_from_py(x));
                l.spheres.push_back(std::move(v));
            }
            return matrix_to_py(dehn_twist(l, index));
        },
        py::arg("n"), py::arg("gram"), py::arg("spheres"), py::arg("index"));

    m.def(
        "gw_solve",
        [](int n, const py::sequence& gram, const py::sequence& spheres,
           const py::sequence& surgery) {
            Lattice l;
            l.n = n;
            l.gram = matrix_from_py(gram);
            l.rank = l.gram.rows();
            auto read = [&](const py::sequence& src, std::vector<std::vector<Int>>& dst) {
                for (const auto& s : src) {
                    std::vector<Int> v;
                    for (const auto& x : py::cast<py::sequence>(s)) v.push_back(int_from_py(x));
                    dst.push_back(std::move(v));
                }
            };
            read(spheres, l.spheres);
            read(surgery, l.surgery_classes);
            GWReport rep = gw_solve(l);
            py::dict out;
            out["solution_dim"] = rep.solution_dim();
            py::list pairs;
            for (const auto& p : rep.pair_discs)
                pairs.append(py::make_tuple(p.i, p.j, p.forced_zero));
            out["pair_discriminants"] = pairs;
            py::dict idents;
            for (const auto& c : rep.identities)
                idents[py::str(c.name)] = c.status == CheckStatus::pass          ? "pass"
                                          : c.status == CheckStatus::fail        ? "fail"
                                                                                 : "inconclusive";
            out["identities"] = idents;
            return out;
        },
        py::arg("n"), py::arg("gram"), py::arg("spheres"), py::arg("surgery") = py::list());

    m.def("is_even_form",
          [](const py::sequence& rows) { return is_even_form(matrix_from_py(rows)); });

    m.def("three_sphere_example", [](const py::handle& sigma, const py::handle& alpha) {
        auto data = three_sphere_example(int_from_py(sigma), int_from_py(alpha));
        return json_io::cobordism_to_json(data).dump();
    });

    m.def("cobordism_check", [](const std::string& json_text) {
        auto data = json_io::cobordism_from_json(nlohmann::json::parse(json_text));
        auto rep = cobordism_report(data);
        py::dict out;
        out["report"] = json_io::cobordism_report_to_json(rep).dump();
        out["all_checks_pass"] = rep.all_checks_pass();
        if (rep.common_disc) out["common_discriminant"] = rat_to_py(*rep.common_disc);
        return out;
    });

    m.def("run_cli", [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
    });
}
