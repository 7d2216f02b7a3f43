// Python bindings for the core operations: estimation, the derived
// parameter transform, phantom sampling, contour morphometrics and ROC.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nakascan/morpho.hpp"
#include "nakascan/nakagami.hpp"
#include "nakascan/phantom.hpp"
#include "nakascan/svm.hpp"

namespace py = pybind11;
using namespace nakascan;

namespace {

Polygon to_polygon(const std::vector<std::pair<double, double>>& pts) {
    Polygon p;
    p.reserve(pts.size());
    for (const auto& [x, y] : pts) p.push_back({x, y});
    return p;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "nakascan core operations";

    py::class_<NakagamiParams>(m, "NakagamiParams")
        .def(py::init<>())
        .def(py::init([](double shape, double omega) {
                 return NakagamiParams{shape, omega};
             }),
             py::arg("m"), py::arg("omega"))
        .def_readwrite("m", &NakagamiParams::m)
        .def_readwrite("omega", &NakagamiParams::omega)
        .def("__repr__", [](const NakagamiParams& p) {
            return "NakagamiParams(m=" + std::to_string(p.m) +
                   ", omega=" + std::to_string(p.omega) + ")";
        });

    py::class_<AlphaComponents>(m, "AlphaComponents")
        .def_readonly("pre_alpha", &AlphaComponents::pre_alpha)
        .def_readonly("alpha_real", &AlphaComponents::alpha_real)
        .def_readonly("alpha_imag", &AlphaComponents::alpha_imag)
        .def_readonly("alpha_abs", &AlphaComponents::alpha_abs)
        .def_readonly("alpha_phase", &AlphaComponents::alpha_phase);

    m.def(
        "estimate_nakagami",
        [](const std::vector<double>& samples) {
            return estimate_nakagami(samples);
        },
        py::arg("samples"), "Moment estimate of (m, omega) from envelope samples.");

    m.def(
        "nakagami_pdf",
        [](double r, double shape, double omega) {
            return nakagami_pdf(r, {shape, omega});
        },
        py::arg("r"), py::arg("m"), py::arg("omega"));

    m.def(
        "nakagami_cdf",
        [](double r, double shape, double omega) {
            return nakagami_cdf(r, {shape, omega});
        },
        py::arg("r"), py::arg("m"), py::arg("omega"));

    m.def(
        "derive_alpha_set",
        [](double shape, double omega) { return derive_alpha_set({shape, omega}); },
        py::arg("m"), py::arg("omega"));

    m.def(
        "sample_nakagami_envelope",
        [](double shape, double omega, std::size_t n, std::uint64_t seed) {
            return sample_nakagami_envelope({shape, omega}, n, seed);
        },
        py::arg("m"), py::arg("omega"), py::arg("n"), py::arg("seed"),
        "Deterministic exact Nakagami envelope samples.");

    m.def(
        "morphometric_features",
        [](const std::vector<std::pair<double, double>>& contour) {
            return morphometric_features(to_polygon(contour));
        },
        py::arg("contour"),
        "Nine contour features: six shape ratios, three fractal dimensions.");

    m.def(
        "roc_auc",
        [](const std::vector<double>& scores, const std::vector<int>& labels) {
            return roc_auc(scores, labels).auc;
        },
        py::arg("scores"), py::arg("labels"),
        "Trapezoidal AUC; labels are +1 (malignant) / -1 (benign).");
}
