#include "casimir/pipeline.hpp"

#include <algorithm>
#include <cmath>

#include "casimir/config.hpp"
#include "casimir/constants.hpp"
#include "casimir/errors.hpp"

namespace casimir::pipeline {

using materials::Approach;

SmoothCurve::SmoothCurve(std::vector<double> x, std::vector<double> values) {
    if (x.size() != values.size() || x.size() < 2)
        throw InputError("curve needs at least two nodes");
    sign_ = values.front() < 0.0 ? -1.0 : 1.0;
    ln_x_.reserve(x.size());
    ln_v_.reserve(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(sign_ * values[i] > 0.0))
            throw InputError("curve nodes must be positive and one-signed");
        if (i > 0 && !(x[i] > x[i - 1]))
            throw InputError("curve nodes must increase");
        ln_x_.push_back(std::log(x[i]));
        ln_v_.push_back(std::log(sign_ * values[i]));
    }
}

double SmoothCurve::operator()(double x) const {
    if (ln_x_.empty()) throw InputError("curve is empty");
    if (!(x > 0.0)) throw InputError("curve query must be positive");
    double lx = std::log(x);
    std::size_t hi = std::upper_bound(ln_x_.begin(), ln_x_.end(), lx) - ln_x_.begin();
    if (hi == 0) hi = 1;                       // extrapolate along first segment
    if (hi == ln_x_.size()) hi = ln_x_.size() - 1;  // or the last
    std::size_t lo = hi - 1;
    double t = (lx - ln_x_[lo]) / (ln_x_[hi] - ln_x_[lo]);
    return sign_ * std::exp(ln_v_[lo] + t * (ln_v_[hi] - ln_v_[lo]));
}

namespace {

int idx(Approach a) { return static_cast<int>(a) - 1; }

} // namespace

TheoryStack::TheoryStack(ExperimentParams params) : par_(std::move(params)) {
    std::string dir = par_.data_dir.empty() ? default_data_dir() : par_.data_dir;
    plate_ = corrections::RoughnessHistogram::load_csv(dir + "/plate_roughness.csv");
    sphere_ = corrections::RoughnessHistogram::load_csv(dir + "/sphere_roughness.csv");
    corr_ = corrections::CorrCurve::load_csv(dir + "/c_corr.csv");
    delta_p_ = plate_.stochastic_sigma_nm() * 1e-9;
    delta_s_ = sphere_.stochastic_sigma_nm() * 1e-9;
    sigma_v2_ = corrections::patch_variance(par_.work_functions_V);
    patch_k_min_ = 2.0 * constants::pi / par_.patch_wavelength_max;
    patch_k_max_ = 2.0 * constants::pi / par_.patch_wavelength_min;

    auto table = std::make_shared<const materials::OpticalTable>(
        materials::OpticalTable::load_csv(dir + "/au_drude_synthetic.csv"));
    for (Approach a : {Approach::drude, Approach::ideal_metal, Approach::plasma,
                       Approach::impedance}) {
        materials::DielectricModel m =
            a == Approach::plasma
                ? materials::DielectricModel::analytic(
                      a, materials::DielectricSource::analytic_plasma,
                      par_.omega_p_ev, par_.gamma_ev)
                : materials::DielectricModel::tabulated(a, table, par_.omega_p_ev,
                                                        par_.gamma_ev);
        engines_[idx(a)] =
            std::make_unique<lifshitz::PressureEngine>(m, par_.temp_K);
    }
}

const lifshitz::PressureEngine& TheoryStack::engine(Approach a) const {
    return *engines_[idx(a)];
}

double TheoryStack::bare(Approach a, double z) const {
    return engine(a).pressure(z).total;
}

double TheoryStack::eta_roughness(double z) const {
    return corrections::roughness_diffraction_factor(z, delta_p_, delta_s_, corr_,
                                                     par_.l_corr);
}

double TheoryStack::patch(double z) const {
    return corrections::patch_pressure(z, sigma_v2_, patch_k_min_, patch_k_max_);
}

double TheoryStack::roughness_averaged(Approach a, double z) const {
    const auto& eng = engine(a);
    return corrections::roughness_average(
        [&eng](double zz) { return eng.pressure(zz).total; }, z, plate_, sphere_);
}

double TheoryStack::corrected(Approach a, double z) const {
    return bare(a, z) * eta_roughness(z) + patch(z);
}

std::function<double(double)> TheoryStack::corrected_curve(Approach a) const {
    std::shared_ptr<SmoothCurve> curve;
    {
        std::lock_guard<std::mutex> lock(mu_);
        curve = curves_[idx(a)];
    }
    if (!curve) {
        // fixed geometric grid spanning the measurement range with headroom
        const double z_lo = 140e-9, z_hi = 820e-9;
        const std::size_t n = 200;
        std::vector<double> zs(n), ps(n);
        for (std::size_t i = 0; i < n; ++i) {
            zs[i] = z_lo * std::pow(z_hi / z_lo,
                                    static_cast<double>(i) / (n - 1));
            ps[i] = corrected(a, zs[i]);
        }
        curve = std::make_shared<SmoothCurve>(std::move(zs), std::move(ps));
        std::lock_guard<std::mutex> lock(mu_);
        curves_[idx(a)] = curve;
    }
    return [curve](double z) { return (*curve)(z); };
}

const std::vector<double>& published_grid() {
    static const std::vector<double> grid = {170.0, 180.0, 200.0, 210.0,
                                             250.0, 300.0, 350.0, 400.0,
                                             450.0, 500.0, 600.0, 700.0};
    return grid;
}

instrument::SynthesisOptions canonical_synthesis() {
    instrument::SynthesisOptions opt;
    opt.n_sets = 15;
    opt.seed = 20260101;
    opt.outlier_set = 7;
    return opt;
}

std::function<double(double)>
band_interpolant(const std::vector<metrology::BudgetRow>& budget, bool ninety_nine) {
    std::vector<double> zs, bs;
    zs.reserve(budget.size());
    bs.reserve(budget.size());
    for (const auto& row : budget) {
        zs.push_back(row.z_nm);
        bs.push_back(ninety_nine ? row.band99_Pa : row.band_Pa);
    }
    auto curve = std::make_shared<SmoothCurve>(std::move(zs), std::move(bs));
    return [curve](double z_nm) { return (*curve)(z_nm); };
}

ComparisonResult compare_sets(const TheoryStack& stack,
                              const std::vector<instrument::MeasurementSet>& sets,
                              Approach a, bool ninety_nine,
                              const std::vector<double>& grid_nm) {
    ComparisonResult res;
    res.ninety_nine = ninety_nine;

    auto report = metrology::detect_outlier_sets(sets);
    res.dropped_sets = report.flagged_sets;
    std::vector<instrument::MeasurementSet> kept;
    kept.reserve(sets.size());
    for (const auto& s : sets)
        if (std::find(res.dropped_sets.begin(), res.dropped_sets.end(), s.set_id) ==
            res.dropped_sets.end())
            kept.push_back(s);
    if (kept.size() < 3)
        throw InputError("outlier screening left fewer than three sets");

    auto theory = stack.corrected_curve(a);
    const auto& par = stack.params();
    res.budget = metrology::error_budget(kept, theory, grid_nm, par.R, par.dz,
                                         instrument::min_resolvable_pressure(),
                                         par.dR_over_R);
    auto band = band_interpolant(res.budget, ninety_nine);
    res.verdict = metrology::compare_theory(kept, theory, band, grid_nm);
    res.excluded = !res.verdict.consistent;
    return res;
}

} // namespace casimir::pipeline
