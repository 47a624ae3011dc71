#include "casimir/instrument.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "casimir/constants.hpp"
#include "casimir/csv.hpp"
#include "casimir/errors.hpp"

namespace casimir::instrument {

double absolute_separation(double z_meas, double D, double b_arm, double theta) {
    return z_meas - D - b_arm * theta;
}

double angular_noise_floor(double bandwidth_hz, const BridgeParams& p) {
    double C_o = constants::eps0 * p.w * p.w_prime / p.d_g;
    return p.dV_per_rtHz * std::sqrt(bandwidth_hz) / p.V_dc * (p.C_T / C_o) *
           (2.0 * p.d_g / p.w_prime);
}

double electrostatic_force(double z, double R, double V_applied, double V_0) {
    if (!(z > 0.0) || !(R > 0.0))
        throw InputError("electrostatic force needs z > 0 and R > 0");
    double dV = V_applied - V_0;
    double u = std::acosh(1.0 + z / R);
    double coth_u = 1.0 / std::tanh(u);
    double sum = 0.0;
    for (int n = 1; n < 200000; ++n) {
        double nu = n * u;
        double t = (coth_u - n / std::tanh(nu)) / std::sinh(nu);
        sum += t;
        if (n > 10 && std::abs(t) < 1e-16 * std::abs(sum)) {
            return 2.0 * constants::pi * constants::eps0 * dV * dV * sum;
        }
    }
    throw NumericError("electrostatic series did not converge");
}

double pressure_from_frequency_shift(double omega_r, const OscillatorParams& p) {
    return -(p.omega0 * p.omega0 - omega_r * omega_r) /
           (p.b2_over_I * 2.0 * constants::pi * p.R);
}

double min_resolvable_pressure(const OscillatorParams& p) {
    return 2.0 * p.omega0 * p.delta_omega_r /
           (p.b2_over_I * 2.0 * constants::pi * p.R);
}

void save_sets_csv(const std::string& path,
                   const std::vector<MeasurementSet>& sets) {
    std::vector<std::vector<double>> rows;
    for (const auto& s : sets)
        for (const auto& pt : s.points)
            rows.push_back({static_cast<double>(s.set_id), pt.z_nm, pt.P_Pa});
    csv::write_file(path, {"set_id", "z_nm", "P_Pa"}, rows);
}

std::vector<MeasurementSet> load_sets_csv(const std::string& path) {
    auto t = csv::read_file(path);
    int ci = t.column("set_id"), cz = t.column("z_nm"), cp = t.column("P_Pa");
    if (ci < 0 || cz < 0 || cp < 0)
        throw InputError(path + ": expected columns set_id,z_nm,P_Pa");
    std::map<int, MeasurementSet> by_id;
    for (const auto& r : t.rows) {
        int id = static_cast<int>(r[ci]);
        auto& s = by_id[id];
        s.set_id = id;
        s.points.push_back({r[cz], r[cp]});
    }
    std::vector<MeasurementSet> out;
    out.reserve(by_id.size());
    for (auto& [id, s] : by_id) out.push_back(std::move(s));
    return out;
}

double synthetic_noise_sigma(double z_nm) {
    // Anchors (nm -> mPa) calibrated so that the metrology pipeline built on
    // these sets reproduces the published error-budget scale: the total error
    // plateaus near 0.4 mPa at large separation and a few percent of points
    // fall outside the 95% comparison band.
    static const std::vector<std::pair<double, double>> anchors = {
        {160.0, 1.70}, {170.0, 1.50}, {180.0, 1.30}, {200.0, 1.10},
        {250.0, 0.60}, {300.0, 0.44}, {350.0, 0.42}, {400.0, 0.36},
        {450.0, 0.33}, {500.0, 0.26}, {600.0, 0.24}, {700.0, 0.22},
        {750.0, 0.21},
    };
    if (z_nm <= anchors.front().first) return anchors.front().second * 1e-3;
    if (z_nm >= anchors.back().first) return anchors.back().second * 1e-3;
    auto it = std::upper_bound(anchors.begin(), anchors.end(), z_nm,
                               [](double v, const auto& a) { return v < a.first; });
    const auto& [x1, y1] = *(it - 1);
    const auto& [x2, y2] = *it;
    double t = std::log(z_nm / x1) / std::log(x2 / x1);
    return 1e-3 * y1 * std::pow(y2 / y1, t);
}

namespace {

// Deterministic uniforms/normals: the C++ standard pins mt19937_64 output but
// not the distribution adapters, so map to doubles by hand.
struct Rng {
    std::mt19937_64 gen;
    explicit Rng(std::seed_seq& sseq) : gen(sseq) {}
    double uniform01() { // (0, 1]
        return (static_cast<double>(gen() >> 11) + 1.0) * 0x1p-53;
    }
    double uniform(double a, double b) { return a + (b - a) * uniform01(); }
    double normal() {
        double u1 = uniform01();
        double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * constants::pi * u2);
    }
};

} // namespace

std::vector<MeasurementSet>
synthesize_measurement_sets(const std::function<double(double)>& truth_Pa,
                            const SynthesisOptions& opt) {
    if (opt.n_sets < 1) throw ConfigError("need at least one measurement set");
    if (!(opt.z_max_nm > opt.z_min_nm))
        throw ConfigError("separation range is empty");
    std::vector<MeasurementSet> sets;
    sets.reserve(static_cast<std::size_t>(opt.n_sets));
    for (int id = 1; id <= opt.n_sets; ++id) {
        std::vector<double> grid;
        int attempt = 0;
        for (;; ++attempt) {
            if (attempt > 200)
                throw NumericError("could not draw a grid with the requested "
                                   "point count");
            std::seed_seq sseq{opt.seed, static_cast<std::uint64_t>(id),
                               static_cast<std::uint64_t>(attempt)};
            Rng rng(sseq);
            grid.clear();
            double z = opt.z_min_nm + rng.uniform(0.0, 2.0);
            while (z <= opt.z_max_nm) {
                grid.push_back(z);
                z += rng.uniform(1.75, 2.32);
            }
            int n = static_cast<int>(grid.size());
            if (n < opt.points_min || n > opt.points_max) continue;
            MeasurementSet s;
            s.set_id = id;
            s.points.reserve(grid.size());
            bool shifted = id == opt.outlier_set;
            for (double zn : grid) {
                double sigma = synthetic_noise_sigma(zn);
                double p = truth_Pa(zn * 1e-9) + sigma * rng.normal();
                if (shifted) p += opt.outlier_shift_sigma * sigma;
                s.points.push_back({zn, p});
            }
            sets.push_back(std::move(s));
            break;
        }
    }
    return sets;
}

} // namespace casimir::instrument
