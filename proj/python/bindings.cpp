#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <string>

#include "latllt/latllt.hpp"

namespace py = pybind11;
using namespace latllt;

namespace {

py::array_t<double> to_array(std::span<const double> xs) {
    py::array_t<double> out(static_cast<py::ssize_t>(xs.size()));
    std::copy(xs.begin(), xs.end(), out.mutable_data());
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact lattice convolutions, local limit errors and correlation diagnostics.";
    m.attr("__version__") = version;

    static const py::handle error_type = py::exception<Error>(m, "LatlltError", PyExc_ValueError).release();
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::object err = error_type(py::str(e.what()));
            err.attr("code") = std::string(e.name());
            PyErr_SetObject(error_type.ptr(), err.ptr());
        }
    });

    py::class_<LatticePmf>(m, "LatticePmf")
        .def(py::init<double, double, const std::map<std::int64_t, double>&>(), py::arg("v0"),
             py::arg("span"), py::arg("probs"))
        .def_property_readonly("v0", &LatticePmf::v0)
        .def_property_readonly("span", &LatticePmf::span)
        .def_property_readonly("min_offset", &LatticePmf::min_offset)
        .def_property_readonly("max_offset", &LatticePmf::max_offset)
        .def("mass", &LatticePmf::mass)
        .def("value_at", &LatticePmf::value_at)
        .def("to_dict", &LatticePmf::to_map)
        .def("__len__", &LatticePmf::support_size)
        .def("__repr__", [](const LatticePmf& p) {
            return "LatticePmf(v0=" + std::to_string(p.v0()) + ", span=" + std::to_string(p.span()) +
                   ", atoms=" + std::to_string(p.support_size()) + ")";
        });

    py::class_<DistStats>(m, "DistStats")
        .def_readonly("mu", &DistStats::mu)
        .def_readonly("sigma2", &DistStats::sigma2)
        .def_readonly("vartheta", &DistStats::vartheta)
        .def_readonly("basber", &DistStats::basber)
        .def_property_readonly("sigma", &DistStats::sigma);

    m.def("validate", &validate, py::arg("pmf"));
    m.def("normalize_span", &normalize_span, py::arg("pmf"));
    m.def("parse_pmf_json", [](const std::string& text) { return parse_pmf_json(text); }, py::arg("text"));
    m.def("load_pmf_json", &load_pmf_json, py::arg("path"));
    m.def("to_pmf_json", &to_pmf_json, py::arg("pmf"));

    py::enum_<ConvolutionStrategy>(m, "ConvolutionStrategy")
        .value("direct", ConvolutionStrategy::direct)
        .value("binary_power", ConvolutionStrategy::binary_power);

    py::class_<SumDistribution>(m, "SumDistribution")
        .def_property_readonly("n", &SumDistribution::n)
        .def_property_readonly("v0", &SumDistribution::v0)
        .def_property_readonly("span", &SumDistribution::span)
        .def_property_readonly("min_offset", &SumDistribution::min_offset)
        .def_property_readonly("max_offset", &SumDistribution::max_offset)
        .def_property_readonly("probs", [](const SumDistribution& d) { return to_array(d.probs()); })
        .def("at_offset", &SumDistribution::at_offset)
        .def("value_at", &SumDistribution::value_at)
        .def("total_mass", &SumDistribution::total_mass);

    m.def("convolve_n", &convolve_n, py::arg("pmf"), py::arg("n"),
          py::arg("strategy") = ConvolutionStrategy::binary_power, py::arg("cap") = default_support_cap,
          py::call_guard<py::gil_scoped_release>());
    m.def("prob_at", &prob_at, py::arg("dist"), py::arg("target"));
    m.def("joint_prob", &joint_prob, py::arg("pmf"), py::arg("n"), py::arg("m"), py::arg("kn"),
          py::arg("km"), py::arg("cap") = default_support_cap, py::call_guard<py::gil_scoped_release>());

    py::class_<TauSequence>(m, "TauSequence")
        .def(py::init<const std::map<std::int64_t, double>&>(), py::arg("entries"))
        .def("at", &TauSequence::at)
        .def_property_readonly("total", &TauSequence::total)
        .def_property_readonly("entries", [](const TauSequence& t) { return t.entries(); });
    m.def("canonical_tau", &canonical_tau, py::arg("pmf"));

    py::class_<BernoulliPart>(m, "BernoulliPart")
        .def_property_readonly("vartheta", &BernoulliPart::vartheta)
        .def_property_readonly("min_offset", &BernoulliPart::min_offset)
        .def_property_readonly("max_offset", &BernoulliPart::max_offset)
        .def("with_bit", &BernoulliPart::with_bit)
        .def("without_bit", &BernoulliPart::without_bit)
        .def("v_marginal", &BernoulliPart::v_marginal)
        .def("eps_probability", &BernoulliPart::eps_probability)
        .def("atoms", [](const BernoulliPart& b) {
            py::list out;
            for (const auto& a : b.atoms()) out.append(py::make_tuple(a.offset, a.eps, a.prob));
            return out;
        });
    m.def("build_part", [](const LatticePmf& pmf, const TauSequence& tau) { return build_part(pmf, tau); },
          py::arg("pmf"), py::arg("tau"));
    m.def("reconstructed_law", &reconstructed_law, py::arg("part"));
    m.def("reconstruction_residual", &reconstruction_residual, py::arg("part"));

    m.def("binomial_cdf", &binomial_cdf, py::arg("n"), py::arg("p"), py::arg("cutoff"));
    m.def("psi", &psi, py::arg("theta"), py::arg("vartheta"));
    m.def("solve_theta", &solve_theta, py::arg("rho"), py::arg("vartheta"));
    py::class_<ChernoffCheck>(m, "ChernoffCheck")
        .def_readonly("exact", &ChernoffCheck::exact)
        .def_readonly("bound", &ChernoffCheck::bound)
        .def_readonly("cutoff", &ChernoffCheck::cutoff)
        .def_readonly("holds", &ChernoffCheck::holds);
    m.def("verify_chernoff", &verify_chernoff, py::arg("vartheta"), py::arg("theta"), py::arg("n"));

    m.def("gauss_local", &gauss_local, py::arg("n"), py::arg("point"), py::arg("mu"), py::arg("sigma2"),
          py::arg("span"));
    m.def(
        "llt_error",
        [](const LatticePmf& pmf, const std::vector<std::int64_t>& ns) {
            const auto curve = [&] {
                py::gil_scoped_release release;
                return llt_error(pmf, ns);
            }();
            py::list points;
            for (const auto& p : curve.points) points.append(py::make_tuple(p.n, p.delta, p.argmax));
            py::dict out;
            out["points"] = points;
            out["alpha_hat"] = curve.alpha_hat;
            out["alpha_stderr"] = curve.alpha_stderr;
            return out;
        },
        py::arg("pmf"), py::arg("ns"));

    py::class_<KappaSequence>(m, "KappaSequence")
        .def_property_readonly("kappa", &KappaSequence::kappa)
        .def_property_readonly("on_lattice", &KappaSequence::on_lattice)
        .def("offset", &KappaSequence::offset)
        .def("value", &KappaSequence::value);
    m.def("kappa_sequence", &kappa_sequence, py::arg("pmf"), py::arg("stats"), py::arg("kappa"));
    m.def("off_lattice_sequence", &off_lattice_sequence, py::arg("pmf"), py::arg("stats"), py::arg("kappa"),
          py::arg("fraction") = 0.5);
    m.def("exact_cov", &exact_cov, py::arg("pmf"), py::arg("seq"), py::arg("n"), py::arg("m"),
          py::arg("cap") = default_support_cap, py::call_guard<py::gil_scoped_release>());
    m.def("dyadic_grid", &dyadic_grid, py::arg("n_min"), py::arg("n_max"));
    m.def("decade_grid", &decade_grid, py::arg("n_max"));
    m.def(
        "bound_scan",
        [](const LatticePmf& pmf, const KappaSequence& seq, const std::vector<GridPair>& grid, double c,
           double alpha) {
            const auto scan = [&] {
                py::gil_scoped_release release;
                return bound_scan(pmf, seq, grid, c, alpha);
            }();
            py::list rows;
            for (const auto& r : scan.records) {
                rows.append(py::make_tuple(r.n, r.m, r.exact_cov, r.thm1_shape, r.cor1_shape, r.gw_shape));
            }
            py::dict out;
            out["records"] = rows;
            out["c_hat"] = scan.c_hat;
            out["cc_hat"] = scan.cc_hat;
            out["gw_hat"] = scan.gw_hat;
            return out;
        },
        py::arg("pmf"), py::arg("seq"), py::arg("grid"), py::arg("c") = 0.5, py::arg("alpha") = 0.5);

    m.def("asllt_limit", &asllt_limit, py::arg("stats"), py::arg("span"), py::arg("kappa"));
    m.def("default_checkpoints", &default_checkpoints, py::arg("n_max"));
    m.def(
        "run_ensemble",
        [](const LatticePmf& pmf, const KappaSequence& seq, std::int64_t n_max,
           const std::vector<std::int64_t>& checkpoints, std::int64_t paths, std::uint64_t seed,
           unsigned threads) {
            const auto e = [&] {
                py::gil_scoped_release release;
                return run_ensemble(pmf, seq, n_max, checkpoints, paths, seed, threads);
            }();
            py::list summary;
            for (const auto& c : e.checkpoints) summary.append(py::make_tuple(c.n, c.mean, c.sd, c.min, c.max));
            py::list runs;
            for (const auto& r : e.runs) runs.append(py::make_tuple(r.seed, r.averages));
            py::dict out;
            out["checkpoints"] = summary;
            out["runs"] = runs;
            out["limit"] = e.limit;
            return out;
        },
        py::arg("pmf"), py::arg("seq"), py::arg("n_max"), py::arg("checkpoints"), py::arg("paths"),
        py::arg("seed"), py::arg("threads") = 1);
    m.def(
        "run_interval_path",
        [](const LatticePmf& pmf, const KappaSequence& seq, std::int64_t n_max,
           const std::vector<std::int64_t>& checkpoints, std::uint64_t seed, double lo, double hi) {
            const auto run = [&] {
                py::gil_scoped_release release;
                return run_interval_path(pmf, seq, n_max, checkpoints, seed, lo, hi);
            }();
            return py::make_tuple(run.averages, run.limit);
        },
        py::arg("pmf"), py::arg("seq"), py::arg("n_max"), py::arg("checkpoints"), py::arg("seed"),
        py::arg("lo"), py::arg("hi"));
    m.def("expected_average", &expected_average, py::arg("pmf"), py::arg("seq"), py::arg("n"),
          py::arg("cap") = default_support_cap, py::call_guard<py::gil_scoped_release>());
}
