#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "acctraj/efficiency.hpp"
#include "acctraj/errors.hpp"
#include "acctraj/emissions.hpp"
#include "acctraj/kinematics.hpp"
#include "acctraj/pipeline.hpp"
#include "acctraj/safety.hpp"
#include "acctraj/similarity.hpp"

namespace py = pybind11;
using namespace acctraj;

PYBIND11_MODULE(_acctraj, m) {
    m.doc() = "Car-following trajectory analytics: DTW similarity, efficiency, "
              "safety and emission metrics";

    py::register_exception<ConfigError>(m, "ConfigError");
    py::register_exception<DataError>(m, "DataError");

    // kinematics
    m.def("smooth_speed", &smooth_speed, py::arg("u"), py::arg("window") = 10);
    m.def("compute_acceleration", &compute_acceleration, py::arg("v"), py::arg("t"));

    // similarity
    py::class_<DtwResult>(m, "DtwResult")
        .def_readonly("distance", &DtwResult::distance)
        .def_readonly("normalized", &DtwResult::normalized)
        .def_readonly("path_length", &DtwResult::path_length);
    m.def("dtw_distance", &dtw_distance, py::arg("x"), py::arg("y"),
          py::arg("band") = py::none());
    m.def("dtw_normalized", &dtw_normalized, py::arg("x"), py::arg("y"),
          py::arg("band") = py::none());
    m.def("downsample", &downsample, py::arg("series"), py::arg("native_hz"),
          py::arg("target_hz"));
    py::class_<SimilarityMatrix>(m, "SimilarityMatrix")
        .def_readonly("ids", &SimilarityMatrix::ids)
        .def_readonly("dist", &SimilarityMatrix::dist)
        .def_readonly("medians", &SimilarityMatrix::medians);
    m.def("pairwise_matrix", &pairwise_matrix, py::arg("trajectories"),
          py::arg("band") = py::none(), py::arg("threads") = 1);

    // efficiency
    py::class_<AsvResult>(m, "AsvResult")
        .def_readonly("v_star", &AsvResult::v_star)
        .def_readonly("asv", &AsvResult::asv)
        .def_readonly("t1", &AsvResult::t1)
        .def_readonly("t2", &AsvResult::t2);
    m.def("compute_asv", &compute_asv, py::arg("v"), py::arg("t"), py::arg("v_star"),
          py::arg("window") = py::none());
    m.def("estimate_v_star", &estimate_v_star, py::arg("v"));
    py::class_<VsFit>(m, "VsFit")
        .def_readonly("jam_spacing", &VsFit::jam_spacing)
        .def_readonly("desired_speed", &VsFit::desired_speed)
        .def_readonly("critical_spacing", &VsFit::critical_spacing)
        .def_readonly("slope", &VsFit::slope)
        .def_readonly("residual_rmse", &VsFit::residual_rmse)
        .def_readonly("n_points", &VsFit::n_points)
        .def_readonly("boundary_warning", &VsFit::boundary_warning)
        .def("evaluate", &VsFit::evaluate, py::arg("s"));
    m.def("fit_vs_curve", &fit_vs_curve, py::arg("points"), py::arg("jam_spacing"),
          py::arg("desired_speed"));
    py::class_<FiveNumberSummary>(m, "FiveNumberSummary")
        .def_readonly("min", &FiveNumberSummary::min)
        .def_readonly("p25", &FiveNumberSummary::p25)
        .def_readonly("median", &FiveNumberSummary::median)
        .def_readonly("p75", &FiveNumberSummary::p75)
        .def_readonly("max", &FiveNumberSummary::max);
    m.def("summarize_group", &summarize_group, py::arg("values"));

    // safety
    m.def("compute_ttc", &compute_ttc, py::arg("s"), py::arg("dv"));
    m.def("compute_drac", &compute_drac, py::arg("s"), py::arg("dv"));

    // emissions
    py::enum_<EmissionType>(m, "EmissionType")
        .value("Fuel", EmissionType::Fuel)
        .value("HC", EmissionType::HC)
        .value("CO", EmissionType::CO)
        .value("NOx", EmissionType::NOx);
    py::enum_<EmissionForm>(m, "EmissionForm")
        .value("LogLinear", EmissionForm::LogLinear)
        .value("LiteralPolynomial", EmissionForm::LiteralPolynomial);
    py::class_<EmissionCoefficientTable>(m, "EmissionCoefficientTable")
        .def_static("load", &EmissionCoefficientTable::load, py::arg("path"));
    m.def("instantaneous_moe", &instantaneous_moe, py::arg("v_ms"), py::arg("a_ms2"),
          py::arg("table"), py::arg("emission_type"),
          py::arg("form") = EmissionForm::LogLinear);
}
