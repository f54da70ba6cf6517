#include <sstream>

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "intertwine/checks.hpp"
#include "intertwine/cli.hpp"
#include "intertwine/errors.hpp"
#include "intertwine/field_io.hpp"
#include "intertwine/rewrite.hpp"

namespace py = pybind11;
using namespace intertwine;

namespace {

// Reports, words and certificates cross the boundary as JSON text; the
// Python package turns them into dicts.
std::string dump(const nlohmann::json& j) { return j.dump(); }

ParameterPoint sigma_point(Complex p, Complex q, Complex r, Complex theta, Complex tau) {
    return {p, q, r, theta, tau, DomainTag::SigmaUnitary};
}

}  // namespace

PYBIND11_MODULE(_intertwine, m) {
    m.doc() = "Spectral operators on tori: intertwiners, R-matrices and identity checks";

    static py::exception<Error> base(m, "IntertwineError", PyExc_RuntimeError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::set_error(base, (std::string(e.kind()) + ": " + e.what()).c_str());
        }
    });

    m.def("log_gamma", &log_gamma);
    m.def("gamma", &intertwine::gamma);
    m.def("c_factor", &c_factor);
    m.def("lambda_n", &lambda_n, py::arg("n"), py::arg("p"));
    m.def("lambda_n_alt", &lambda_n_alt, py::arg("n"), py::arg("p"));
    m.def("circle_power_coeff", &circle_power_coeff, py::arg("n"), py::arg("alpha"));
    m.def("beta_closed_form", &beta_closed_form);
    m.def("beta_closed_form_ratio", &beta_closed_form_ratio);
    m.def("kernel_eigenvalue_quadrature", [](long n, Complex p, int nodes) {
        QuadratureConfig q;
        q.node_count = nodes;
        return kernel_eigenvalue_quadrature(n, p, q);
    }, py::arg("n"), py::arg("p"), py::arg("nodes") = 480);

    py::class_<SpectralField>(m, "SpectralField")
        .def(py::init<int, int>(), py::arg("m"), py::arg("N"))
        .def(py::init<int, int, std::vector<Complex>>(), py::arg("m"), py::arg("N"), py::arg("coeffs"))
        .def_property_readonly("dim", &SpectralField::dim)
        .def_property_readonly("band", &SpectralField::band)
        .def_property_readonly("coeffs", [](const SpectralField& f) { return f.coeffs(); })
        .def("norm", &SpectralField::norm)
        .def("band_edge_energy", &SpectralField::band_edge_energy)
        .def("evaluate", &SpectralField::evaluate)
        .def("rebanded", &SpectralField::rebanded)
        .def("to_json", [](const SpectralField& f) { return dump(field_to_json(f)); })
        .def_static("from_json", [](const std::string& s) { return field_from_json(nlohmann::json::parse(s)); })
        .def("__sub__", [](const SpectralField& a, const SpectralField& b) { return a - b; })
        .def("__add__", [](const SpectralField& a, const SpectralField& b) { return a + b; });

    m.def("inner_product", &inner_product);
    m.def("modulated_bump_field", &modulated_bump_field, py::arg("m"), py::arg("N"), py::arg("pairs"),
          py::arg("gap"), py::arg("seed"), py::arg("smoothness") = kDefaultBumpSmoothness);
    m.def("random_band_limited", &random_band_limited, py::arg("m"), py::arg("N"), py::arg("decay"),
          py::arg("seed"));
    m.def("default_test_field", &default_test_field, py::arg("m"), py::arg("N"), py::arg("seed"));

    m.def("apply_J", &apply_J, py::arg("k"), py::arg("alpha"), py::arg("field"));
    m.def("apply_A", [](int k, int l, Complex alpha, const SpectralField& f) { return apply_A(k, l, alpha, f); },
          py::arg("k"), py::arg("l"), py::arg("alpha"), py::arg("field"));
    m.def("apply_T", [](int k, Complex p, Complex a, Complex b, const SpectralField& f) {
        return apply_T(k, p, MoebiusElement{a, b}, f);
    }, py::arg("k"), py::arg("p"), py::arg("a"), py::arg("b"), py::arg("field"));
    m.def("r_matrix_word_json", [](Complex sigma, Complex p, Complex q, int k, int l) {
        return dump(word_to_json(r_matrix_word(sigma, p, q, k, l)));
    });
    m.def("yang_baxter_lhs_json", [] { return dump(word_to_json(yang_baxter_lhs())); });
    m.def("yang_baxter_rhs_json", [] { return dump(word_to_json(yang_baxter_rhs())); });
    m.def("apply_word_json", [](const std::string& word, const SpectralField& f,
                                std::optional<std::vector<Complex>> symbols) {
        const OperatorWord w = word_from_json(nlohmann::json::parse(word));
        if (!symbols) return apply_word(w, f);
        if (static_cast<int>(symbols->size()) != kSymbolCount) throw DomainError("symbol values: expected p, q, r, theta, tau");
        SymbolValues v;
        for (int i = 0; i < kSymbolCount; ++i) v.values[i] = (*symbols)[i];
        return apply_word(w, f, &v);
    }, py::arg("word"), py::arg("field"), py::arg("symbols") = py::none());

    m.def("check_beta_json", [](Complex alpha, Complex beta, Complex a, Complex b, Complex c, int nodes) {
        QuadratureConfig q;
        q.node_count = nodes;
        return dump(report_to_json(check_beta(alpha, beta, 1.0 - alpha - beta, a, b, c, q)));
    }, py::arg("alpha"), py::arg("beta"), py::arg("a"), py::arg("b"), py::arg("c"), py::arg("nodes") = 480);
    m.def("check_eigen_json", [](long n, Complex p) {
        return dump(report_to_json(check_eigen(n, p, QuadratureConfig{})));
    });
    m.def("check_star_triangle_json", [](Complex alpha, Complex beta, std::vector<int> Ns, int trials,
                                         std::uint64_t seed) {
        return dump(report_to_json(check_star_triangle(alpha, beta, Ns, trials, seed)));
    });
    m.def("weak_star_triangle_json", [](Complex alpha, Complex beta, int N, std::uint64_t seed) {
        return dump(report_to_json(weak_star_triangle(alpha, beta, N, seed)));
    });
    m.def("check_yang_baxter_json", [](Complex p, Complex q, Complex r, Complex theta, Complex tau,
                                       std::vector<int> Ns, int trials, std::uint64_t seed) {
        return dump(report_to_json(check_yang_baxter(sigma_point(p, q, r, theta, tau), Ns, trials, seed)));
    });

    m.def("yang_baxter_derivation_json", [] { return dump(certificate_to_json(yang_baxter_derivation())); });
    m.def("verify_certificate", [](const std::string& cert) {
        const VerificationResult v = verify_certificate(certificate_from_json(nlohmann::json::parse(cert)));
        return py::make_tuple(v.accepted, v.failed_step, v.reason);
    });
    m.def("search_derivation_json", [](const std::string& from, const std::string& to, int depth) -> py::object {
        const SearchResult r = search_derivation(word_from_json(nlohmann::json::parse(from)),
                                                 word_from_json(nlohmann::json::parse(to)), depth);
        if (!r.found) return py::none();
        return py::str(dump(certificate_to_json(*r.certificate)));
    });

    m.def("run_cli", [](const std::vector<std::string>& args) {
        std::ostringstream out;
        std::ostringstream err;
        const int code = run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
    });
    m.def("parse_complex", &parse_complex);
}
