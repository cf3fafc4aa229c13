#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ncmaj/serialization.hpp"

namespace py = pybind11;
using namespace ncmaj;

namespace {

py::object json_to_py(const json& j) {
    py::module_ pyjson = py::module_::import("json");
    return pyjson.attr("loads")(j.dump());
}

json py_to_json(const py::dict& d) {
    py::module_ pyjson = py::module_::import("json");
    const std::string dumped = py::cast<std::string>(pyjson.attr("dumps")(d));
    return json::parse(dumped);
}

}  // namespace

PYBIND11_MODULE(_ncmaj, m) {
    m.doc() = "matrix-valued Boolean analysis, moment majorization and noncommutative "
              "Grothendieck optimization";

    py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);

    // linear algebra
    m.def("op_norm", &op_norm, py::arg("a"));
    m.def("abs_matrix", &abs_matrix, py::arg("a"));
    m.def("chop_general", &chop_general, py::arg("a"));
    m.def("embed_iota", &embed_iota, py::arg("a"), py::arg("p"));
    m.def("partial_trace_2", &partial_trace_2, py::arg("x"));
    m.def("odot", &odot, py::arg("u_components"), py::arg("v_components"));

    // cube functions
    py::class_<CubeFunction>(m, "CubeFunction")
        .def(py::init<int, int>(), py::arg("m"), py::arg("n"))
        .def_readonly("m", &CubeFunction::m)
        .def_readonly("n", &CubeFunction::n)
        .def("coeff", &CubeFunction::coeff, py::arg("mask"))
        .def("set_coeff", &CubeFunction::set_coeff, py::arg("mask"), py::arg("matrix"))
        .def("masks", [](const CubeFunction& f) {
            std::vector<std::uint32_t> out;
            for (const auto& [mask, c] : f.coeffs) out.push_back(mask);
            return out;
        })
        .def_static("dictator", &CubeFunction::dictator, py::arg("m"), py::arg("i"), py::arg("n"))
        .def_static("constant", &CubeFunction::constant, py::arg("m"), py::arg("value"));

    m.def("fourier_transform", &fourier_transform, py::arg("values"), py::arg("m"));
    m.def("inverse_transform",
          py::overload_cast<const CubeFunction&, const std::vector<int>&>(&inverse_transform),
          py::arg("f"), py::arg("sigma"));
    m.def("influence", py::overload_cast<const CubeFunction&, int>(&influence), py::arg("f"),
          py::arg("i"));
    m.def("max_influence", py::overload_cast<const CubeFunction&>(&max_influence), py::arg("f"));
    m.def("apply_Trho", &apply_Trho, py::arg("f"), py::arg("rho"));
    m.def("convolve", &convolve, py::arg("f"), py::arg("h"));
    m.def("project_levels", [](const CubeFunction& f, const std::vector<int>& levels) {
        return project_levels(f, [&levels](int d) {
            return std::find(levels.begin(), levels.end(), d) != levels.end();
        });
    }, py::arg("f"), py::arg("levels"));
    m.def("noise_stability_exact", &noise_stability_exact, py::arg("f"), py::arg("rho"));

    // polynomials
    py::class_<NCPoly>(m, "NCPoly")
        .def_readonly("m", &NCPoly::m)
        .def_readonly("n_coeff", &NCPoly::n_coeff)
        .def_readonly("n_var", &NCPoly::n_var)
        .def_readonly("embedded", &NCPoly::embedded)
        .def("degree", &NCPoly::degree)
        .def("coeff", &NCPoly::coeff, py::arg("mask"));

    m.def("from_cube_function", &from_cube_function, py::arg("f"));
    m.def("evaluate",
          py::overload_cast<const NCPoly&, const std::vector<Matrix>&>(&evaluate), py::arg("q"),
          py::arg("inputs"));
    m.def("embed", &embed, py::arg("q"), py::arg("p"));
    m.def("variance", &variance, py::arg("q"));
    m.def("poly_max_influence", py::overload_cast<const NCPoly&>(&max_influence), py::arg("q"));

    // ensembles
    py::class_<EnsembleSpec>(m, "EnsembleSpec")
        .def_static("rademacher", &EnsembleSpec::rademacher)
        .def_static("haar_unitary", &EnsembleSpec::haar_unitary, py::arg("p"))
        .def_static("gaussian_frame", &EnsembleSpec::gaussian_frame, py::arg("frame"))
        .def_static("wigner_gue", &EnsembleSpec::wigner_gue, py::arg("n"))
        .def_static("embed_rotate", &EnsembleSpec::embed_rotate, py::arg("inner"), py::arg("p"))
        .def("kind_name", &EnsembleSpec::kind_name)
        .def_readonly("dim", &EnsembleSpec::dim);

    m.def("sample", [](const EnsembleSpec& spec, std::uint64_t seed, std::uint64_t stream) {
        Rng rng({seed, stream});
        return sample(spec, rng);
    }, py::arg("spec"), py::arg("seed"), py::arg("stream") = 0);

    py::class_<MCEstimate>(m, "MCEstimate")
        .def_readonly("mean", &MCEstimate::mean)
        .def_property_readonly("stderr", [](const MCEstimate& e) { return e.stderr_; })
        .def_readonly("samples", &MCEstimate::samples)
        .def_readonly("label", &MCEstimate::label)
        .def("__repr__", [](const MCEstimate& e) {
            return "<MCEstimate " + e.label + " mean=" + std::to_string(e.mean) +
                   " stderr=" + std::to_string(e.stderr_) + ">";
        });

    m.def("check_moment_bound",
          [](const EnsembleSpec& spec, int K, long long samples, std::uint64_t seed, int workers) {
              return check_moment_bound(spec, K, samples, {seed, 0}, workers);
          },
          py::arg("spec"), py::arg("K"), py::arg("samples"), py::arg("seed"),
          py::arg("workers") = 0);
    m.def("haar_block_damping_check",
          [](const Matrix& a, const Matrix& b, int p, long long samples, std::uint64_t seed,
             int workers) { return haar_block_damping_check(a, b, p, samples, {seed, 0}, workers); },
          py::arg("a"), py::arg("b"), py::arg("p"), py::arg("samples"), py::arg("seed"),
          py::arg("workers") = 0);

    // estimators
    m.def("trace_moment_boolean_exact",
          [](const NCPoly& q, int K, bool normalized) {
              return trace_moment_boolean_exact(
                  q, K, normalized ? TraceNorm::Normalized : TraceNorm::Unnormalized);
          },
          py::arg("q"), py::arg("K"), py::arg("normalized") = true);
    m.def("trace_moment_mc",
          [](const NCPoly& q, const std::vector<EnsembleSpec>& specs, int K, long long samples,
             std::uint64_t seed, bool normalized, int workers) {
              return trace_moment_mc(q, specs, K, samples, {seed, 0},
                                     normalized ? TraceNorm::Normalized : TraceNorm::Unnormalized,
                                     workers);
          },
          py::arg("q"), py::arg("specs"), py::arg("K"), py::arg("samples"), py::arg("seed"),
          py::arg("normalized") = true, py::arg("workers") = 0);
    m.def("chop_distance_mc",
          [](const CubeFunction& f, double rho, int p, long long samples, std::uint64_t seed,
             int workers) { return chop_distance_mc(f, rho, p, samples, {seed, 0}, workers); },
          py::arg("f"), py::arg("rho"), py::arg("p"), py::arg("samples"), py::arg("seed"),
          py::arg("workers") = 0);

    // optimization
    py::class_<Tensor4>(m, "Tensor4")
        .def_readonly("n", &Tensor4::n)
        .def_readonly("matrix", &Tensor4::matrix);
    m.def("build_psd_tensor", &build_psd_tensor, py::arg("factors"));

    m.def("opt_unitary_ascent",
          [](const Tensor4& t, int restarts, std::uint64_t seed) {
              AscentOptions opts;
              opts.restarts = restarts;
              const AscentResult r = opt_unitary_ascent(t, opts, {seed, 0});
              return py::make_tuple(r.value, r.x, r.y);
          },
          py::arg("tensor"), py::arg("restarts") = 20, py::arg("seed") = 0);
    m.def("opt_symmetric_ascent",
          [](const Tensor4& t, int restarts, std::uint64_t seed) {
              AscentOptions opts;
              opts.restarts = restarts;
              const AscentResult r = opt_symmetric_ascent(t, opts, {seed, 0});
              return py::make_tuple(r.value, r.x);
          },
          py::arg("tensor"), py::arg("restarts") = 20, py::arg("seed") = 0);
    m.def("psd_variant_solve",
          [](int n, int d, const Matrix& mat, bool constrained, int restarts,
             std::uint64_t seed) {
              const PsdBlockInstance inst = PsdBlockInstance::from_matrix(n, d, mat);
              AscentOptions opts;
              opts.restarts = restarts;
              const PsdVariantResult r = psd_variant_solve(inst, constrained, opts, {seed, 0});
              return py::make_tuple(r.value, r.tuple);
          },
          py::arg("n"), py::arg("d"), py::arg("matrix"), py::arg("constrained") = true,
          py::arg("restarts") = 20, py::arg("seed") = 0);
    m.def("estimate_Kd",
          [](int d, long long samples, std::uint64_t seed, int workers) {
              return estimate_Kd(d, samples, {seed, 0}, workers);
          },
          py::arg("d"), py::arg("samples"), py::arg("seed"), py::arg("workers") = 0);

    // experiments
    m.def("list_experiments", []() {
        py::list out;
        for (const auto& info : experiment_registry()) {
            py::dict d;
            d["name"] = info.name;
            d["summary"] = info.summary;
            d["defaults"] = json_to_py(info.defaults);
            out.append(d);
        }
        return out;
    });
    m.def("run_experiment",
          [](const std::string& name, const py::dict& params, std::uint64_t seed, int workers) {
              const ExperimentReport rep =
                  run_experiment(name, py_to_json(params), seed, workers);
              return json_to_py(report_to_json(rep));
          },
          py::arg("name"), py::arg("params"), py::arg("seed"), py::arg("workers") = 0);
}
