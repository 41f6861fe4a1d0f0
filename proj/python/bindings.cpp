//
// Python bindings for the core operations: instance generation, the four
// solvers, the thresholding operators, the ellipsoid projection and
// matrix file I/O.
//

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "torp/ellipsoid.hpp"
#include "torp/harness.hpp"
#include "torp/io.hpp"
#include "torp/linalg.hpp"
#include "torp/solvers.hpp"
#include "torp/synth.hpp"
#include "torp/threshold.hpp"

namespace py = pybind11;
using namespace torp;

namespace {

std::vector<Index> as_list(const ColumnIndexSet& s) { return s.indices(); }

RecoveryResult run_torp(const DenseMatrix& m, const TorpConfig& cfg,
                        std::optional<DenseMatrix> reference) {
    return torp::torp(m, cfg, reference ? &*reference : nullptr);
}
RecoveryResult run_torp_n(const DenseMatrix& m, const TorpNConfig& cfg,
                          std::optional<DenseMatrix> reference) {
    return torp::torp_n(m, cfg, reference ? &*reference : nullptr);
}
RecoveryResult run_torp_bin(const DenseMatrix& m, const TorpNConfig& cfg,
                            std::optional<DenseMatrix> reference) {
    return torp::torp_bin(m, cfg, reference ? &*reference : nullptr);
}
RecoveryResult run_torp_g(const DenseMatrix& m, const TorpGConfig& cfg,
                          std::optional<DenseMatrix> reference) {
    return torp::torp_g(m, cfg, reference ? &*reference : nullptr);
}

}  // namespace

PYBIND11_MODULE(_torp, mod) {
    mod.doc() = "Thresholding-based outlier robust PCA";

    py::enum_<NoiseModel>(mod, "NoiseModel")
        .value("none", NoiseModel::none)
        .value("gaussian_iid", NoiseModel::gaussian_iid);

    py::enum_<InlierModel>(mod, "InlierModel")
        .value("gaussian", InlierModel::gaussian)
        .value("unit_sphere", InlierModel::unit_sphere);

    py::enum_<Termination>(mod, "Termination")
        .value("completed", Termination::completed)
        .value("early_stop_n_thres", Termination::early_stop_n_thres)
        .value("support_converged", Termination::support_converged)
        .value("iteration_cap", Termination::iteration_cap)
        .value("degenerate", Termination::degenerate);

    py::class_<InstanceParams>(mod, "InstanceParams")
        .def(py::init<>())
        .def_readwrite("d", &InstanceParams::d)
        .def_readwrite("n", &InstanceParams::n)
        .def_readwrite("r", &InstanceParams::r)
        .def_readwrite("alpha", &InstanceParams::alpha)
        .def_readwrite("outlier_scale", &InstanceParams::outlier_scale)
        .def_readwrite("noise_sigma", &InstanceParams::noise_sigma)
        .def_readwrite("noise_model", &InstanceParams::noise_model)
        .def_readwrite("inlier_model", &InstanceParams::inlier_model)
        .def_readwrite("seed", &InstanceParams::seed);

    py::class_<ProblemInstance>(mod, "ProblemInstance")
        .def_readonly("m_star", &ProblemInstance::m_star)
        .def_readonly("l_star", &ProblemInstance::l_star)
        .def_readonly("c_star", &ProblemInstance::c_star)
        .def_readonly("n_star", &ProblemInstance::n_star)
        .def_property_readonly(
            "true_support",
            [](const ProblemInstance& p) { return as_list(p.true_support); })
        .def_readonly("measured_mu", &ProblemInstance::measured_mu)
        .def_readonly("params", &ProblemInstance::params);

    py::class_<TorpConfig>(mod, "TorpConfig")
        .def(py::init<>())
        .def_readwrite("target_rank", &TorpConfig::target_rank)
        .def_readwrite("threshold_fraction", &TorpConfig::threshold_fraction)
        .def_readwrite("iterations", &TorpConfig::iterations)
        .def_readwrite("epsilon", &TorpConfig::epsilon)
        .def_static("theorem_fraction", &TorpConfig::theorem_fraction);

    py::class_<TorpNConfig>(mod, "TorpNConfig")
        .def(py::init<>())
        .def_readwrite("target_rank", &TorpNConfig::target_rank)
        .def_readwrite("expressivity", &TorpNConfig::expressivity)
        .def_readwrite("threshold_fraction", &TorpNConfig::threshold_fraction)
        .def_readwrite("inner_iterations", &TorpNConfig::inner_iterations)
        .def_readwrite("epsilon", &TorpNConfig::epsilon)
        .def_static("theorem_fraction", &TorpNConfig::theorem_fraction)
        .def_static("theorem_expressivity", &TorpNConfig::theorem_expressivity);

    py::class_<TorpGConfig>(mod, "TorpGConfig")
        .def(py::init<>())
        .def_readwrite("target_rank", &TorpGConfig::target_rank)
        .def_readwrite("incoherence", &TorpGConfig::incoherence)
        .def_readwrite("noise_sigma", &TorpGConfig::noise_sigma)
        .def_readwrite("c1", &TorpGConfig::c1)
        .def_readwrite("c2", &TorpGConfig::c2)
        .def_readwrite("max_iterations", &TorpGConfig::max_iterations)
        .def_readwrite("projection_tolerance", &TorpGConfig::projection_tolerance);

    py::class_<TraceRow>(mod, "TraceRow")
        .def_readonly("iteration", &TraceRow::iteration)
        .def_readonly("rank", &TraceRow::rank)
        .def_readonly("support_size", &TraceRow::support_size)
        .def_readonly("n_thres", &TraceRow::n_thres)
        .def_readonly("reference_residual", &TraceRow::reference_residual);

    py::class_<RecoveryResult>(mod, "RecoveryResult")
        .def_readonly("subspace", &RecoveryResult::subspace)
        .def_property_readonly(
            "estimated_support",
            [](const RecoveryResult& r) { return as_list(r.estimated_support); })
        .def_readonly("trace", &RecoveryResult::trace)
        .def_readonly("termination", &RecoveryResult::termination)
        .def_readonly("rank_degenerate", &RecoveryResult::rank_degenerate);

    mod.def("generate", &generate, py::arg("params"));
    mod.def("measure_incoherence", &measure_incoherence, py::arg("l"), py::arg("r"));
    mod.def("gaussian_tail_census", &gaussian_tail_census, py::arg("d"), py::arg("n"),
            py::arg("threshold"), py::arg("seed"));

    mod.def(
        "truncated_svd",
        [](const DenseMatrix& m, Index k) {
            const TruncatedSvd svd = truncated_svd(m, k);
            return py::make_tuple(svd.u, svd.sigma, svd.v);
        },
        py::arg("m"), py::arg("k"), "Top-k singular triple (u, sigma, v)");
    mod.def("residual_projection", &residual_projection, py::arg("u"), py::arg("m"));
    mod.def("subspace_residual", &subspace_residual, py::arg("u"), py::arg("l"));
    mod.def("operator_norm", &operator_norm, py::arg("m"));

    mod.def("ht_fraction",
            [](const DenseMatrix& s, double rho) { return as_list(ht_fraction(s, rho)); },
            py::arg("scores"), py::arg("rho"));
    mod.def("ht_value",
            [](const DenseMatrix& s, double zeta) { return as_list(ht_value(s, zeta)); },
            py::arg("scores"), py::arg("zeta"));
    mod.def("ht_longest_count",
            [](const DenseMatrix& s, double a) { return as_list(ht_longest_count(s, a)); },
            py::arg("scores"), py::arg("alpha_prime"));

    mod.def(
        "fast_pr",
        [](const DenseMatrix& u, const Vector& sigma, double bound, const Vector& x,
           double eps) { return fast_pr(EllipsoidSpec{u, sigma, bound}, x, eps); },
        py::arg("u"), py::arg("sigma"), py::arg("bound"), py::arg("x"),
        py::arg("eps") = 1e-10);

    mod.def("torp", &run_torp, py::arg("m"), py::arg("config"),
            py::arg("reference_subspace") = py::none());
    mod.def("torp_n", &run_torp_n, py::arg("m"), py::arg("config"),
            py::arg("reference_subspace") = py::none());
    mod.def("torp_bin", &run_torp_bin, py::arg("m"), py::arg("config"),
            py::arg("reference_subspace") = py::none());
    mod.def("torp_g", &run_torp_g, py::arg("m"), py::arg("config"),
            py::arg("reference_subspace") = py::none());

    mod.def("save_matrix", &save_matrix, py::arg("path"), py::arg("m"));
    mod.def("load_matrix", &load_matrix, py::arg("path"));
    mod.def("save_instance", &save_instance, py::arg("dir"), py::arg("instance"));
    mod.def("load_instance", &load_instance, py::arg("dir"));
}
