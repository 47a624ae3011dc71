// Acceptance gate: reruns every published-number reproduction the library
// promises and prints one PASS/FAIL line per item, with the realized values
// and margins underneath. Two items are documented expected failures: the
// bundled optical table is a synthetic stand-in for unavailable handbook
// data, and two published zero-frequency digits are quantized coarser than
// the stated tolerance (see the notes printed with each). The process exits
// nonzero only when an item deviates from its documented status, so a
// regression anywhere turns the gate red while the known data-availability
// gaps stay visible but expected.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "casimir/config.hpp"
#include "casimir/constants.hpp"
#include "casimir/corrections.hpp"
#include "casimir/csv.hpp"
#include "casimir/dielectric.hpp"
#include "casimir/errors.hpp"
#include "casimir/lifshitz.hpp"
#include "casimir/metrology.hpp"
#include "casimir/pipeline.hpp"
#include "casimir/yukawa.hpp"

using namespace casimir;
namespace fs = std::filesystem;

namespace {

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

struct Criterion {
    std::string name;
    bool expect_pass = true;
    std::string documented;  // why a failure is expected, when it is
    bool ok = true;
    double seconds = 0.0;
    std::vector<std::string> lines;

    void check(bool cond, const std::string& what) {
        lines.push_back(std::string(cond ? "      ok   " : "      BAD  ") + what);
        if (!cond) ok = false;
    }
    // relative comparison; prints value, reference, deviation, tolerance
    void close(double got, double want, double rtol, const std::string& label) {
        double dev = std::abs(got / want - 1.0);
        check(dev <= rtol, fmt("%s: got %.6g want %.6g (dev %.3f%%, tol %.3f%%)",
                               label.c_str(), got, want, dev * 100, rtol * 100));
    }
    void close_abs(double got, double want, double atol, const std::string& label) {
        double dev = std::abs(got - want);
        check(dev <= atol, fmt("%s: got %.6g want %.6g +- %.3g", label.c_str(),
                               got, want, atol));
    }
    void note(const std::string& what) { lines.push_back("           " + what); }
};

double ref_at(const csv::Table& t, int zcol, int col, double z_nm) {
    for (const auto& row : t.rows)
        if (std::abs(row[zcol] - z_nm) < 1e-9) return row[col];
    throw InputError(fmt("reference table lacks a %g nm row", z_nm));
}

// worst relative deviation of calc(z) against a reference column
struct Worst {
    double dev = 0.0;
    double z_nm = 0.0;
};
Worst worst_dev(const csv::Table& t, const std::string& col,
                const std::function<double(double)>& calc) {
    int zc = t.column("z_nm"), c = t.column(col);
    Worst w;
    for (const auto& row : t.rows) {
        double dev = std::abs(calc(row[zc]) / row[c] - 1.0);
        if (dev >= w.dev) w = {dev, row[zc]};
    }
    return w;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<double> geometric(double lo, double hi, int n) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i)
        g[i] = lo * std::pow(hi / lo, double(i) / (n - 1));
    return g;
}

} // namespace

int main() {
    std::vector<Criterion> gate;
    auto run = [&gate](Criterion c, const std::function<void(Criterion&)>& body) {
        auto t0 = std::chrono::steady_clock::now();
        try {
            body(c);
        } catch (const std::exception& e) {
            c.check(false, std::string("exception: ") + e.what());
        }
        c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                        .count();
        gate.push_back(std::move(c));
    };

    pipeline::ExperimentParams par;
    pipeline::TheoryStack stack(par);
    const std::string dir = default_data_dir();
    const auto t1 = csv::read_file(dir + "/golden/table1_reference.csv");
    const auto t2 = csv::read_file(dir + "/golden/table2_reference.csv");
    const double wp = ev_to_omega(par.omega_p_ev);
    const double T = par.temp_K;
    using materials::Approach;

    // ------------------------------------------------------------------ 1
    Criterion c1;
    c1.name = "zero-frequency closed forms vs the published four-point column";
    c1.expect_pass = false;
    c1.documented =
        "the published digits at 200 and 500 nm are quantized coarser than the "
        "0.2% gate (the 200 nm entry is a truncation, the 500 nm entry has a "
        "0.32% half-digit); the exact closed form itself is frozen in the unit "
        "suite";
    run(c1, [&](Criterion& c) {
        int zc = t2.column("z_nm"), p1c = t2.column("p1_l0_pa");
        for (double z : {160.0, 200.0, 300.0, 500.0}) {
            double got = lifshitz::zero_frequency_pressure(Approach::drude,
                                                           z * 1e-9, T, wp);
            c.close(got, ref_at(t2, zc, p1c, z), 2e-3,
                    fmt("free-electron l=0 term at %g nm", z));
            double twice = lifshitz::zero_frequency_pressure(
                Approach::ideal_metal, z * 1e-9, T, wp);
            c.check(std::abs(twice / (2.0 * got) - 1.0) < 1e-12,
                    fmt("ideal-boundary l=0 term is exactly double at %g nm", z));
        }
        c.note("exact -kT zeta(3)/(8 pi z^3) vs the printed -0.0247 (truncated "
               "from -0.024763) and -0.00158 (half-digit 0.32%)");
    });

    // ------------------------------------------------------------------ 2
    Criterion c2;
    c2.name = "fully analytic free-electron (no relaxation) table columns";
    run(c2, [&](Criterion& c) {
        const auto& eng = stack.engine(Approach::plasma);
        std::map<double, lifshitz::PressureResult> p;
        int zc = t1.column("z_nm");
        for (const auto& row : t1.rows) p[row[zc]] = eng.pressure(row[zc] * 1e-9);
        for (auto [col, pick] : std::initializer_list<
                 std::pair<const char*, double lifshitz::PressureResult::*>>{
                 {"p3_l0_pa", &lifshitz::PressureResult::zero_freq},
                 {"p3_lge1_pa", &lifshitz::PressureResult::positive_sum},
                 {"p3_pa", &lifshitz::PressureResult::total}}) {
            Worst w = worst_dev(t1, col, [&](double zn) { return p[zn].*pick; });
            c.check(w.dev <= 3e-3, fmt("%s: worst dev %.3f%% at %g nm (tol 0.3%%)",
                                       col, w.dev * 100, w.z_nm));
        }
        c.note(fmt("spot values: %.5g Pa at 160 nm, %.5g Pa at 300 nm",
                   p[160.0].total, p[300.0].total));
    });

    // ------------------------------------------------------------------ 3
    Criterion c3;
    c3.name = "impedance-boundary zero-frequency column";
    run(c3, [&](Criterion& c) {
        Worst w = worst_dev(t1, "p4_l0_pa", [&](double zn) {
            return lifshitz::zero_frequency_pressure(Approach::impedance,
                                                     zn * 1e-9, T, wp);
        });
        c.check(w.dev <= 5e-3, fmt("impedance l=0 column: worst dev %.3f%% at "
                                   "%g nm (tol 0.5%%)",
                                   w.dev * 100, w.z_nm));
        c.note(fmt("value at 160 nm: %.6g Pa (published -0.0715)",
                   lifshitz::zero_frequency_pressure(Approach::impedance, 160e-9,
                                                     T, wp)));
    });

    // ------------------------------------------------------------------ 4
    Criterion c4;
    c4.name = "tabulated-data columns with the bundled synthetic optical table";
    c4.expect_pass = false;
    c4.documented =
        "the bundled table is a synthetic stand-in for handbook optical data "
        "that cannot be redistributed; its thermal sums run ~4% weak at 160 nm, "
        "decaying to ~0.4% at 700 nm, so the 1% gate only holds from 400 nm up";
    run(c4, [&](Criterion& c) {
        auto total = [&](Approach a) {
            return std::function<double(double)>(
                [&, a](double zn) { return stack.engine(a).pressure(zn * 1e-9).total; });
        };
        auto lge1 = [&](Approach a) {
            return std::function<double(double)>([&, a](double zn) {
                return stack.engine(a).pressure(zn * 1e-9).positive_sum;
            });
        };
        struct Col {
            const csv::Table& t;
            const char* col;
            std::function<double(double)> calc;
        };
        std::vector<Col> cols = {
            {t1, "p4_lge1_pa", lge1(Approach::impedance)},
            {t1, "p4_pa", total(Approach::impedance)},
            {t1, "pl_lge1_pa", lge1(Approach::drude)},
            {t2, "p1_pa", total(Approach::drude)},
            {t2, "p2_pa", total(Approach::ideal_metal)},
        };
        double worst_all = 0.0, worst_far = 0.0;
        for (const auto& k : cols) {
            Worst w = worst_dev(k.t, k.col, k.calc);
            worst_all = std::max(worst_all, w.dev);
            c.check(w.dev <= 1e-2, fmt("%s: worst dev %.3f%% at %g nm (tol 1%%)",
                                       k.col, w.dev * 100, w.z_nm));
            int zc = k.t.column("z_nm"), rc = k.t.column(k.col);
            for (const auto& row : k.t.rows)
                if (row[zc] >= 400.0)
                    worst_far = std::max(
                        worst_far, std::abs(k.calc(row[zc]) / row[rc] - 1.0));
        }
        c.check(worst_far <= 1e-2,
                fmt("rows from 400 nm up meet the gate: worst dev %.3f%%",
                    worst_far * 100));
        c.check(worst_all <= 6e-2,
                fmt("synthetic-table deficit stays bounded: worst dev %.3f%% "
                    "(alarm at 6%%)",
                    worst_all * 100));
    });

    // ------------------------------------------------------------------ 5
    Criterion c5;
    c5.name = "Kramers-Kronig transform against the analytic response";
    run(c5, [&](Criterion& c) {
        auto table = std::make_shared<materials::OpticalTable>(
            materials::OpticalTable::load_csv(dir + "/au_drude_synthetic.csv"));
        auto tab = materials::DielectricModel::tabulated(Approach::impedance, table,
                                                         par.omega_p_ev,
                                                         par.gamma_ev);
        auto ana = materials::DielectricModel::analytic(
            Approach::impedance, materials::DielectricSource::analytic_drude,
            par.omega_p_ev, par.gamma_ev);
        double xi1 = matsubara_xi(1, T);
        double worst = 0.0, worst_xi = xi1;
        for (double xi : geometric(xi1, 100.0 * xi1, 41)) {
            double dev = std::abs(materials::epsilon_imag_axis(tab, xi) /
                                      materials::epsilon_imag_axis(ana, xi) -
                                  1.0);
            if (dev > worst) worst = dev, worst_xi = xi;
        }
        c.check(worst <= 1e-4,
                fmt("eps(i xi) from the transform vs closed form: worst dev "
                    "%.2e at xi/xi1 = %.1f (tol 1e-4)",
                    worst, worst_xi / xi1));
    });

    // ------------------------------------------------------------------ 6
    Criterion c6;
    c6.name = "thermal-sum truncation at the shortest separation";
    run(c6, [&](Criterion& c) {
        const auto& eng = stack.engine(Approach::impedance);
        auto terms = eng.term_breakdown(160e-9, 36);
        double partial = 0.0;
        for (double t : terms) partial += t;
        double total = eng.pressure(160e-9).total;
        double carried = partial / total;
        c.check(carried >= 0.999,
                fmt("first 36 terms carry %.4f%% of the converged pressure at "
                    "160 nm (floor 99.9%%)",
                    carried * 100));
    });

    // ------------------------------------------------------------------ 7
    Criterion c7;
    c7.name = "roughness correction routes agree to lowest order";
    run(c7, [&](Criterion& c) {
        lifshitz::PressureEngine eng(
            materials::DielectricModel::analytic(
                Approach::impedance, materials::DielectricSource::analytic_drude,
                par.omega_p_ev, par.gamma_ev),
            T);
        auto pfn = [&](double z) { return eng.pressure(z).total; };
        const auto& plate = stack.plate_histogram();
        const auto& sphere = stack.sphere_histogram();
        double dp = plate.stochastic_sigma_nm() * 1e-9;
        double ds = sphere.stochastic_sigma_nm() * 1e-9;
        struct Win {
            double z_nm, lo_pct, hi_pct;
        };
        for (Win w : {Win{160.0, 0.09, 0.19}, Win{200.0, 0.03, 0.13}}) {
            double z = w.z_nm * 1e-9;
            double avg = corrections::roughness_average(pfn, z, plate, sphere);
            double mult = corrections::roughness_multiplicative(pfn(z), z, dp, ds);
            double diff = std::abs(mult / avg - 1.0) * 100;
            c.check(diff >= w.lo_pct && diff <= w.hi_pct,
                    fmt("route difference at %g nm: %.3f%% (window %.2f-%.2f%%)",
                        w.z_nm, diff, w.lo_pct, w.hi_pct));
            c.note(fmt("  averaged %.5g Pa, multiplicative %.5g Pa", avg, mult));
        }
        c.close_abs(corrections::roughness_eta(300e-9, dp, ds), 1.0022, 2e-4,
                    "lowest-order factor at 300 nm");
    });

    // ------------------------------------------------------------------ 8
    Criterion c8;
    c8.name = "patch-potential variance, pressure, and relative size";
    run(c8, [&](Criterion& c) {
        double s2 = corrections::patch_variance(par.work_functions_V);
        c.close(s2 * 1e6, 6529.0, 1e-2, "contact-potential variance (mV^2)");
        c.close(std::abs(stack.patch(160e-9)) * 1e3, 0.42, 5e-2,
                "|patch pressure| at 160 nm (mPa)");
        double worst = 0.0, worst_z = 0.0;
        for (double zn : geometric(160.0, 750.0, 60)) {
            double ratio = std::abs(stack.patch(zn * 1e-9) /
                                    stack.bare(Approach::impedance, zn * 1e-9));
            if (ratio > worst) worst = ratio, worst_z = zn;
        }
        c.check(worst <= 4e-4,
                fmt("patch / fluctuation-pressure ratio peaks at %.4f%% at %g nm "
                    "(cap 0.04%%)",
                    worst * 100, worst_z));
    });

    // shared canonical campaign for the two metrology items
    auto truth = stack.corrected_curve(Approach::impedance);
    auto sets = instrument::synthesize_measurement_sets(
        truth, pipeline::canonical_synthesis());

    // ------------------------------------------------------------------ 9
    Criterion c9;
    c9.name = "error composition rules and the comparison half-width";
    pipeline::ComparisonResult r4;
    run(c9, [&](Criterion& c) {
        c.close_abs(metrology::compose_uniform(0.2, 0.5), 0.59, 5e-3,
                    "uniform composition of 0.2 and 0.5 nm");
        struct Regime {
            double rnd, sys, s, want;
        };
        for (Regime r : {Regime{2.4, 0.5, 1.0, 2.4}, Regime{2.4, 9.0, 1.0, 9.0},
                         Regime{2.4, 2.0, 1.0, 3.52}})
            c.close(metrology::total_experimental_error(r.rnd, r.sys, r.s), r.want,
                    1e-9, fmt("total error for (%.1f, %.1f)", r.rnd, r.sys));
        double widen = metrology::comparison_band(1.0, 0.0, true) /
                       metrology::comparison_band(1.0, 0.0, false);
        c.close_abs(widen, 2.31, 1e-2, "99% widening factor");

        r4 = pipeline::compare_sets(stack, sets, Approach::impedance);
        for (const auto& b : r4.budget)
            if (b.z_nm == 300.0)
                c.close(b.band_Pa * 1e3, 1.59, 0.10,
                        "comparison half-width at 300 nm (mPa)");
    });

    // ----------------------------------------------------------------- 10
    Criterion c10;
    c10.name = "synthetic-campaign verdicts for all four prescriptions";
    run(c10, [&](Criterion& c) {
        auto r1 = pipeline::compare_sets(stack, sets, Approach::drude);
        auto r2 = pipeline::compare_sets(stack, sets, Approach::ideal_metal);
        auto r3 = pipeline::compare_sets(stack, sets, Approach::plasma);
        auto r1_99 = pipeline::compare_sets(stack, sets, Approach::drude, true);

        c.check(r4.dropped_sets == std::vector<int>{7},
                "outlier screening drops exactly the planted set");
        c.check(r3.verdict.consistent && !r3.excluded,
                "relaxation-free prescription stays inside the 95% band at "
                "every separation");
        c.check(r4.verdict.consistent && !r4.excluded,
                "impedance prescription stays inside the 95% band at every "
                "separation");

        auto outside = [](const pipeline::ComparisonResult& r) {
            std::set<double> zs;
            for (const auto& row : r.verdict.rows)
                if (!row.inside) zs.insert(row.z_nm);
            return zs;
        };
        auto joined = [](const std::set<double>& zs) {
            std::string s;
            for (double z : zs) s += fmt("%g ", z);
            return s;
        };
        auto out1 = outside(r1);
        c.check(out1.size() == r1.verdict.rows.size() && r1.excluded,
                "dissipative prescription excluded at every separation at 95%");
        auto out199 = outside(r1_99);
        bool all99 = true;
        for (double z : {300.0, 350.0, 400.0, 450.0, 500.0})
            all99 = all99 && out199.count(z);
        c.check(all99 && r1_99.excluded,
                "dissipative prescription still excluded across 300-500 nm at "
                "99%");
        c.note("  99% exclusions: " + joined(out199));
        auto out2 = outside(r2);
        bool band_170_350 = true;
        for (double z : {170.0, 180.0, 200.0, 210.0, 250.0, 300.0, 350.0})
            band_170_350 = band_170_350 && out2.count(z);
        c.check(band_170_350 && r2.excluded,
                "ideal-boundary prescription excluded across 170-350 nm at 95%");
        c.note("  95% exclusions: " + joined(out2));
        double frac = r4.verdict.fraction_points_outside;
        c.check(frac >= 0.03 && frac <= 0.07,
                fmt("%.2f%% of individual points fall outside the pointwise "
                    "band (accept 3-7%%)",
                    frac * 100));
    });

    // ----------------------------------------------------------------- 11
    Criterion c11;
    c11.name = "hypothetical-force density brackets and coupling limits";
    run(c11, [&](Criterion& c) {
        auto sphere = yukawa::gold_coated_sphere();
        auto plate = yukawa::gold_coated_plate();
        c.close(sphere.bracket(1e8), 4100.0, 1e-9,
                "sphere bracket, long-range limit -> substrate density");
        c.close(plate.bracket(1e8), 2330.0, 1e-9,
                "plate bracket, long-range limit -> substrate density");
        c.close(sphere.bracket(1e-12), 19280.0, 1e-9,
                "sphere bracket, short-range limit -> coating density");
        c.close(plate.bracket(1e-12), 19280.0, 1e-9,
                "plate bracket, short-range limit -> coating density");

        auto band = csv::read_file(dir + "/golden/comparison_band.csv");
        int zc = band.column("z_nm"), bc = band.column("band_mpa");
        std::map<double, double> env;
        for (const auto& row : band.rows) env[row[zc]] = row[bc] * 1e-3;
        c.close(env.at(210.0) * 1e3, 6.89, 1e-12, "envelope anchor at 210 nm (mPa)");
        c.close(env.at(450.0) * 1e3, 0.53, 1e-12, "envelope anchor at 450 nm (mPa)");
        std::vector<double> grid;
        for (const auto& [zn, hw] : env) grid.push_back(zn);

        std::vector<double> lams;
        for (double l : geometric(40.0, 370.0, 67)) lams.push_back(l * 1e-9);
        auto pts = yukawa::constrain_alpha(
            [&env](double zn) { return env.at(zn); }, grid, lams);
        bool finite = true, z_in_range = true, saturates = true, respects = true;
        double worst_step = 0.0;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const auto& p = pts[i];
            finite = finite && std::isfinite(p.alpha_max) && p.alpha_max > 0.0;
            z_in_range =
                z_in_range && p.z_best_nm >= grid.front() && p.z_best_nm <= grid.back();
            for (double zn : grid) {
                double load = p.alpha_max * std::abs(yukawa::hypothetical_pressure(
                                  zn * 1e-9, p.lambda_m, sphere, plate));
                respects = respects && load <= env.at(zn) * (1.0 + 1e-9);
                if (zn == p.z_best_nm)
                    saturates = saturates && std::abs(load / env.at(zn) - 1.0) < 1e-9;
            }
            if (i > 0)
                worst_step = std::max(
                    worst_step, std::abs(std::log(pts[i].alpha_max /
                                                  pts[i - 1].alpha_max)));
        }
        c.check(finite, "coupling limit finite and positive across 40-370 nm");
        c.check(z_in_range, "strongest-constraint separation stays on the grid");
        c.check(respects, "limit keeps the hypothesis inside the envelope "
                          "everywhere (anchors at 210 and 450 nm included)");
        c.check(saturates, "limit saturates the envelope at the reported "
                           "separation");
        c.check(worst_step <= 0.5,
                fmt("log-continuity of the limit curve: max step %.3f (cap 0.5)",
                    worst_step));
        c.note(fmt("  limit spans %.3g at 40 nm to %.3g at 370 nm",
                   pts.front().alpha_max, pts.back().alpha_max));
    });

    // ----------------------------------------------------------------- 12
    Criterion c12;
    c12.name = "command-line determinism (same config, same bytes)";
    run(c12, [&](Criterion& c) {
        fs::path base = fs::temp_directory_path() / "casimir_acceptance_det";
        fs::remove_all(base);
        fs::create_directories(base);
        auto cli = [&](const std::string& args) {
            std::string cmd = std::string(CASIMIR_CLI_PATH) + " " + args + " > " +
                              (base / "log.txt").string() + " 2>&1";
            int rc = std::system(cmd.c_str());
            return rc == -1 || !WIFEXITED(rc) ? -1 : WEXITSTATUS(rc);
        };
        for (const char* item :
             {"compare --approach 4|v", "constrain --points 6|y"}) {
            std::string s(item);
            auto bar = s.find('|');
            std::string args = s.substr(0, bar), tag = s.substr(bar + 1);
            fs::path live = base / tag, kept = base / (tag + "_first");
            c.check(cli(args + " --out-dir " + live.string()) == 0,
                    "first run of '" + args + "' succeeds");
            fs::copy(live, kept, fs::copy_options::recursive);
            c.check(cli(args + " --out-dir " + live.string()) == 0,
                    "second run of '" + args + "' succeeds");
            int files = 0;
            bool same = true;
            for (const auto& e : fs::directory_iterator(kept)) {
                ++files;
                same = same &&
                       slurp(e.path()) == slurp(live / e.path().filename());
            }
            c.check(same && files > 0,
                    fmt("'%s': %d artifact files byte-identical across reruns",
                        args.c_str(), files));
        }
        fs::remove_all(base);
    });

    // ------------------------------------------------------------ verdict
    int green = 0, documented_red = 0, unexpected = 0;
    for (std::size_t i = 0; i < gate.size(); ++i) {
        const auto& c = gate[i];
        std::string status;
        if (c.ok && c.expect_pass) {
            status = "PASS";
            ++green;
        } else if (!c.ok && !c.expect_pass) {
            status = "FAIL (documented)";
            ++documented_red;
        } else if (!c.ok) {
            status = "FAIL";
            ++unexpected;
        } else {
            status = "PASS (unexpected: documented as failing)";
            ++unexpected;
        }
        std::printf("[%2zu] %s  %s  (%.2f s)\n", i + 1, status.c_str(),
                    c.name.c_str(), c.seconds);
        if (!c.documented.empty())
            std::printf("           why expected: %s\n", c.documented.c_str());
        for (const auto& l : c.lines) std::printf("%s\n", l.c_str());
    }
    std::printf("\ngate: %d passed, %d failed as documented, %d unexpected\n",
                green, documented_red, unexpected);
    return unexpected == 0 ? 0 : 1;
}
