// Python bindings. Rationals cross the boundary as "p/q" strings so the
// exactness guarantee survives; vectors and matrices are lists of those.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "leibniz/classify.hpp"
#include "leibniz/io.hpp"

namespace py = pybind11;
using namespace leibniz;

namespace {

Vec to_vec(const std::vector<std::string>& v) {
    Vec out;
    for (const auto& s : v) out.push_back(parse_rational(s));
    return out;
}

std::vector<std::string> from_vec(const Vec& v) {
    std::vector<std::string> out;
    for (const Rat& x : v) out.push_back(to_string(x));
    return out;
}

std::vector<std::vector<std::string>> from_matrix(const Matrix& m) {
    std::vector<std::vector<std::string>> out;
    for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(from_vec(m.row(i)));
    return out;
}

std::vector<std::vector<std::string>> from_subspace(const Subspace& s) {
    return from_matrix(s.basis());
}

Subspace span_from(const LeibnizAlgebra& L, const std::vector<std::vector<std::string>>& rows) {
    std::vector<Vec> vecs;
    for (const auto& r : rows) vecs.push_back(to_vec(r));
    return Subspace::span(L.dim(), vecs);
}

py::dict certificate_dict(const SimplicityCertificate& c) {
    py::dict d;
    d["simple"] = c.simple;
    d["ann_action_nonzero"] = c.ann_action_nonzero;
    d["factor_simple"] = c.factor_simple;
    d["ann_irreducible"] = c.ann_irreducible;
    d["perfect"] = c.perfect;
    d["detail"] = c.detail;
    return d;
}

} // namespace

PYBIND11_MODULE(pyleibniz, m) {
    m.doc() = "exact-arithmetic toolkit for finite-dimensional Leibniz algebras";

    py::register_exception<Undecidable>(m, "UndecidableError");
    py::register_exception<SplittingFailure>(m, "SplittingFailureError");
    static py::exception<Error> base_exc(m, "LeibnizError");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Undecidable&) {
            throw; // handled by the dedicated translator
        } catch (const SplittingFailure&) {
            throw;
        } catch (const Error& e) {
            base_exc(e.what());
        }
    });

    py::class_<LeibnizAlgebra>(m, "Algebra")
        .def_property_readonly("dim", &LeibnizAlgebra::dim)
        .def_property_readonly("labels",
                               [](const LeibnizAlgebra& L) { return L.labels(); })
        .def("constant",
             [](const LeibnizAlgebra& L, std::size_t i, std::size_t j, std::size_t k) {
                 return to_string(L.c(i, j, k));
             })
        .def("bracket",
             [](const LeibnizAlgebra& L, const std::vector<std::string>& x,
                const std::vector<std::string>& y) {
                 return from_vec(L.bracket(to_vec(x), to_vec(y)));
             })
        .def("verify",
             [](const LeibnizAlgebra& L) -> py::object {
                 auto w = verify_leibniz(L);
                 if (!w) return py::none();
                 return py::make_tuple(w->i, w->j, w->k);
             })
        .def("annihilator",
             [](const LeibnizAlgebra& L) { return from_subspace(annihilator(L).space); })
        .def("lie_factor_constants",
             [](const LeibnizAlgebra& L) {
                 LieFactor f = lie_factor(L);
                 py::dict out;
                 out["dim"] = f.algebra.dim();
                 out["constants"] = [&] {
                     std::vector<std::string> c;
                     for (const Rat& x : f.algebra.constants()) c.push_back(to_string(x));
                     return c;
                 }();
                 return out;
             })
        .def("is_solvable", [](const LeibnizAlgebra& L) { return is_solvable(L); })
        .def("is_right_nilpotent",
             [](const LeibnizAlgebra& L) { return is_right_nilpotent(L); })
        .def("is_simple",
             [](const LeibnizAlgebra& L) { return certificate_dict(is_simple(L)); })
        .def("find_cartan",
             [](const LeibnizAlgebra& L, std::uint64_t seed) {
                 return from_subspace(find_cartan(L, seed));
             },
             py::arg("seed") = 0)
        .def("roots",
             [](const LeibnizAlgebra& L, std::uint64_t seed) {
                 RootDatum rd = root_decomposition(L, find_cartan(L, seed));
                 py::list out;
                 for (const Root& r : rd.roots) {
                     py::dict d;
                     d["functional"] = from_vec(r.functional);
                     d["dim"] = r.space.dim();
                     d["parity"] = r.parity == Parity::odd ? "odd" : "even";
                     d["space"] = from_subspace(r.space);
                     d["ann_part"] = from_subspace(r.ann_part);
                     out.append(std::move(d));
                 }
                 return out;
             },
             py::arg("seed") = 0)
        .def("classify",
             [](const LeibnizAlgebra& L) {
                 ClassificationResult r = classify(L);
                 py::dict d;
                 d["variant"] = r.variant == ClassificationVariant::Template   ? "Template"
                                : r.variant == ClassificationVariant::Standard ? "Standard"
                                                                               : "NotApplicable";
                 d["n"] = r.n;
                 d["alpha"] = to_string(r.alpha);
                 d["beta"] = to_string(r.beta);
                 d["note"] = r.note;
                 if (r.variant != ClassificationVariant::NotApplicable)
                     d["basis_change"] = from_matrix(r.basis_change);
                 return d;
             })
        .def("change_basis",
             [](const LeibnizAlgebra& L, const std::vector<std::vector<std::string>>& rows) {
                 std::vector<Vec> vecs;
                 for (const auto& r : rows) vecs.push_back(to_vec(r));
                 return change_basis(L, Matrix::from_rows(vecs, L.dim()));
             })
        .def("adjoint_weights",
             [](const LeibnizAlgebra& L,
                const std::vector<std::vector<std::string>>& restrict_rows) {
                 auto shared = std::make_shared<LeibnizAlgebra>(L);
                 LeibnizModule M = adjoint_module(shared);
                 if (!restrict_rows.empty()) M = restrict_module(M, span_from(L, restrict_rows));
                 py::list out;
                 for (WeightDatum& w : weight_decomposition(M)) {
                     py::dict d;
                     d["functional"] = from_vec(w.functional);
                     d["dim"] = w.space.dim();
                     d["space"] = from_subspace(w.space);
                     out.append(std::move(d));
                 }
                 return out;
             },
             py::arg("restrict_rows") = std::vector<std::vector<std::string>>{})
        .def("adjoint_extended_lie",
             [](const LeibnizAlgebra& L,
                const std::vector<std::vector<std::string>>& restrict_rows) {
                 auto shared = std::make_shared<LeibnizAlgebra>(L);
                 LeibnizModule M = adjoint_module(shared);
                 if (!restrict_rows.empty()) M = restrict_module(M, span_from(L, restrict_rows));
                 EigenvectorDatum e = extended_lie_eigenvector(M);
                 py::dict d;
                 d["phi"] = from_vec(e.phi);
                 d["psi"] = from_vec(e.psi);
                 d["vector"] = from_vec(e.v);
                 return d;
             },
             py::arg("restrict_rows") = std::vector<std::vector<std::string>>{})
        .def("adjoint_three_irreducible",
             [](const LeibnizAlgebra& L) {
                 auto shared = std::make_shared<LeibnizAlgebra>(L);
                 return is_3_irreducible(adjoint_module(shared));
             })
        .def("to_json", &serialize_algebra)
        .def("__eq__", [](const LeibnizAlgebra& a, const LeibnizAlgebra& b) { return a == b; });

    m.def("from_json", &parse_algebra);
    m.def("load", &load_algebra);
    m.def("save", &save_algebra);
    m.def(
        "construct_sl22",
        [](const std::string& alpha, const std::string& beta) {
            return construct_sl22(parse_rational(alpha), parse_rational(beta));
        },
        py::arg("alpha") = "0", py::arg("beta") = "0");
    m.def(
        "construct_sl2n",
        [](long n, const std::string& alpha, const std::string& beta) {
            return construct_sl2n(n, parse_rational(alpha), parse_rational(beta));
        },
        py::arg("n"), py::arg("alpha") = "0", py::arg("beta") = "0");
    m.def("construct_standard", &construct_standard, py::arg("n"));
}
