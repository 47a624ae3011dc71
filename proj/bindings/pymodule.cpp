// Python face of the library: the four pressure prescriptions with the
// bundled correction stack, the synthetic-campaign verdict pipeline, and the
// hypothetical-force coupling limits. Thin wrappers returning plain Python
// types; heavy lifting stays in the C++ core.
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <memory>

#include "casimir/config.hpp"
#include "casimir/constants.hpp"
#include "casimir/csv.hpp"
#include "casimir/errors.hpp"
#include "casimir/instrument.hpp"
#include "casimir/lifshitz.hpp"
#include "casimir/metrology.hpp"
#include "casimir/pipeline.hpp"
#include "casimir/yukawa.hpp"

namespace py = pybind11;
using namespace casimir;
using materials::Approach;

namespace {

py::dict verdict_dict(const pipeline::ComparisonResult& r) {
    py::list rows;
    for (const auto& row : r.verdict.rows) {
        py::dict d;
        d["z_nm"] = row.z_nm;
        d["mean_diff_Pa"] = row.mean_diff_Pa;
        d["half_width_Pa"] = row.band_Pa;
        d["inside"] = row.inside;
        rows.append(d);
    }
    py::dict out;
    out["excluded"] = r.excluded;
    out["consistent"] = r.verdict.consistent;
    out["fraction_points_outside"] = r.verdict.fraction_points_outside;
    out["dropped_sets"] = r.dropped_sets;
    out["ninety_nine"] = r.ninety_nine;
    out["rows"] = rows;
    return out;
}

std::vector<instrument::MeasurementSet>
make_sets(const pipeline::TheoryStack& stack, int n_sets, std::uint64_t seed,
          int outlier_set) {
    auto opt = pipeline::canonical_synthesis();
    opt.n_sets = n_sets;
    opt.seed = seed;
    opt.outlier_set = outlier_set;
    return instrument::synthesize_measurement_sets(
        stack.corrected_curve(Approach::impedance), opt);
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Thermal fluctuation pressure between coated surfaces: four "
              "zero-frequency prescriptions, correction stack, error budgets, "
              "and hypothetical-force constraints";
    m.attr("__version__") = pipeline::tool_version;

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
    py::register_exception<NumericError>(m, "NumericError", PyExc_RuntimeError);

    py::enum_<Approach>(m, "Approach")
        .value("drude", Approach::drude)
        .value("ideal_metal", Approach::ideal_metal)
        .value("plasma", Approach::plasma)
        .value("impedance", Approach::impedance);

    py::class_<lifshitz::PressureResult>(m, "PressureResult")
        .def_readonly("total", &lifshitz::PressureResult::total)
        .def_readonly("zero_freq", &lifshitz::PressureResult::zero_freq)
        .def_readonly("positive_sum", &lifshitz::PressureResult::positive_sum)
        .def_readonly("truncation_order",
                      &lifshitz::PressureResult::truncation_order)
        .def("__repr__", [](const lifshitz::PressureResult& p) {
            return "PressureResult(total=" + std::to_string(p.total) +
                   " Pa, zero_freq=" + std::to_string(p.zero_freq) +
                   ", positive_sum=" + std::to_string(p.positive_sum) +
                   ", truncation_order=" + std::to_string(p.truncation_order) +
                   ")";
        });

    py::class_<pipeline::TheoryStack>(m, "Theory")
        .def(py::init([](double temp_K, const std::string& data_dir) {
                 pipeline::ExperimentParams p;
                 p.temp_K = temp_K;
                 p.data_dir = data_dir;
                 return std::make_unique<pipeline::TheoryStack>(p);
             }),
             py::arg("temp_K") = 300.0, py::arg("data_dir") = "",
             "Canonical theory stack: bundled optical, roughness, and patch "
             "data; empty data_dir selects the packaged directory")
        .def(
            "pressure",
            [](const pipeline::TheoryStack& s, Approach a, double z_m) {
                return s.engine(a).pressure(z_m);
            },
            py::arg("approach"), py::arg("z_m"),
            "Flat-surface pressure (Pa) with the thermal-sum breakdown")
        .def("bare", &pipeline::TheoryStack::bare, py::arg("approach"),
             py::arg("z_m"))
        .def("eta_roughness", &pipeline::TheoryStack::eta_roughness,
             py::arg("z_m"), "Multiplicative roughness factor")
        .def("patch", &pipeline::TheoryStack::patch, py::arg("z_m"),
             "Electrostatic patch pressure (Pa)")
        .def("corrected", &pipeline::TheoryStack::corrected, py::arg("approach"),
             py::arg("z_m"), "bare * eta_roughness + patch")
        .def("sigma_v2", &pipeline::TheoryStack::sigma_v2,
             "Contact-potential variance (V^2)")
        .def(
            "synthesize",
            [](const pipeline::TheoryStack& s, int n_sets, std::uint64_t seed,
               int outlier_set) {
                py::list out;
                for (const auto& set : make_sets(s, n_sets, seed, outlier_set)) {
                    py::list pts;
                    for (const auto& p : set.points)
                        pts.append(py::make_tuple(p.z_nm, p.P_Pa));
                    out.append(pts);
                }
                return out;
            },
            py::arg("n_sets") = 15, py::arg("seed") = 20260101,
            py::arg("outlier_set") = 7,
            "Deterministic synthetic measurement sets around the corrected "
            "impedance curve; returns [[(z_nm, P_Pa), ...], ...]")
        .def(
            "compare",
            [](const pipeline::TheoryStack& s, Approach a, bool ninety_nine,
               int n_sets, std::uint64_t seed, int outlier_set) {
                auto sets = make_sets(s, n_sets, seed, outlier_set);
                return verdict_dict(pipeline::compare_sets(s, sets, a, ninety_nine));
            },
            py::arg("approach"), py::arg("ninety_nine") = false,
            py::arg("n_sets") = 15, py::arg("seed") = 20260101,
            py::arg("outlier_set") = 7,
            "Full verdict pipeline on the synthetic campaign: outlier "
            "screening, error budget, windowed comparison");

    m.def("published_grid", [] { return pipeline::published_grid(); },
          "Separations (nm) of the published comparison grid");
    m.def(
        "zero_frequency_pressure",
        [](Approach a, double z_m, double temp_K, double omega_p_ev) {
            return lifshitz::zero_frequency_pressure(a, z_m, temp_K,
                                                     ev_to_omega(omega_p_ev));
        },
        py::arg("approach"), py::arg("z_m"), py::arg("temp_K") = 300.0,
        py::arg("omega_p_ev") = 9.0,
        "Zero-frequency term of the thermal sum for one prescription (Pa)");
    m.def("compose_uniform", &metrology::compose_uniform, py::arg("e1"),
          py::arg("e2"),
          "Conservative combination of two uniform-distributed errors");
    m.def("total_experimental_error", &metrology::total_experimental_error,
          py::arg("random_err"), py::arg("syst_err"), py::arg("s_mean"),
          "Regime-blended total experimental error");
    m.def(
        "constrain",
        [](const std::vector<double>& lambdas_nm, const std::string& data_dir) {
            std::string dir = data_dir.empty() ? default_data_dir() : data_dir;
            auto band = csv::read_file(dir + "/golden/comparison_band.csv");
            int zc = band.column("z_nm"), bc = band.column("band_mpa");
            if (zc < 0 || bc < 0)
                throw InputError("envelope needs columns z_nm and band_mpa");
            std::map<double, double> env;
            for (const auto& row : band.rows) env[row[zc]] = row[bc] * 1e-3;
            std::vector<double> grid;
            for (const auto& [zn, hw] : env) grid.push_back(zn);
            std::vector<double> lams;
            for (double l : lambdas_nm) lams.push_back(l * 1e-9);
            py::list out;
            for (const auto& p : yukawa::constrain_alpha(
                     [&env](double zn) { return env.at(zn); }, grid, lams)) {
                py::dict d;
                d["lambda_nm"] = p.lambda_m * 1e9;
                d["alpha_max"] = p.alpha_max;
                d["z_star_nm"] = p.z_best_nm;
                out.append(d);
            }
            return out;
        },
        py::arg("lambdas_nm"), py::arg("data_dir") = "",
        "Largest hypothetical-force coupling compatible with the bundled "
        "95% comparison envelope, per interaction range (nm)");
}
