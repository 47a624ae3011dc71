#include "casimir/corrections.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "casimir/constants.hpp"
#include "casimir/csv.hpp"
#include "casimir/errors.hpp"
#include "casimir/quadrature.hpp"

namespace casimir::corrections {

RoughnessHistogram RoughnessHistogram::load_csv(const std::string& path) {
    auto t = csv::read_file(path);
    int ch = t.column("h_nm"), cv = t.column("v_fraction");
    if (ch < 0 || cv < 0)
        throw InputError(path + ": expected columns h_nm,v_fraction");
    RoughnessHistogram hist;
    for (const auto& r : t.rows) {
        hist.h_nm.push_back(r[ch]);
        hist.v.push_back(r[cv]);
    }
    hist.validate();
    return hist;
}

void RoughnessHistogram::validate() const {
    if (h_nm.empty() || h_nm.size() != v.size())
        throw InputError("roughness histogram: empty or mismatched columns");
    if (h_nm.front() != 0.0)
        throw InputError("roughness histogram: heights must start at 0");
    double sum = 0.0;
    for (std::size_t i = 0; i < h_nm.size(); ++i) {
        if (i && !(h_nm[i] > h_nm[i - 1]))
            throw InputError("roughness histogram: heights must increase");
        if (!(v[i] >= 0.0))
            throw InputError("roughness histogram: negative weight");
        sum += v[i];
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw InputError("roughness histogram: weights sum to " +
                         std::to_string(sum) + ", expected 1");
}

double RoughnessHistogram::zero_level_nm() const {
    double H0 = 0.0;
    for (std::size_t i = 0; i < h_nm.size(); ++i) H0 += h_nm[i] * v[i];
    return H0;
}

double RoughnessHistogram::stochastic_sigma_nm() const {
    double H0 = zero_level_nm(), s2 = 0.0;
    for (std::size_t i = 0; i < h_nm.size(); ++i)
        s2 += (H0 - h_nm[i]) * (H0 - h_nm[i]) * v[i];
    return std::sqrt(s2);
}

double roughness_average(const std::function<double(double)>& pressure_fn,
                         double z, const RoughnessHistogram& plate,
                         const RoughnessHistogram& sphere) {
    plate.validate();
    sphere.validate();
    double H0 = (plate.zero_level_nm() + sphere.zero_level_nm()) * 1e-9;
    // Many (k, j) pairs shift the separation by identical amounts when the
    // histograms share a height grid; evaluate the pressure once per distinct
    // shift and accumulate the combined weights.
    std::map<double, double> weight_at;
    for (std::size_t k = 0; k < plate.h_nm.size(); ++k)
        for (std::size_t j = 0; j < sphere.h_nm.size(); ++j) {
            double zs = z + H0 - (plate.h_nm[k] + sphere.h_nm[j]) * 1e-9;
            if (!(zs > 0.0))
                throw InputError("roughness average: peaks touch at z = " +
                                 std::to_string(z));
            weight_at[zs] += plate.v[k] * sphere.v[j];
        }
    double acc = 0.0;
    for (const auto& [zs, w] : weight_at) acc += w * pressure_fn(zs);
    return acc;
}

double roughness_eta(double z, double delta_p, double delta_s) {
    double rp = delta_p / z, rs = delta_s / z;
    return 1.0 + 10.0 * (rp * rp + rs * rs);
}

double roughness_multiplicative(double pressure, double z, double delta_p,
                                double delta_s) {
    return pressure * roughness_eta(z, delta_p, delta_s);
}

CorrCurve CorrCurve::load_csv(const std::string& path) {
    auto t = csv::read_file(path);
    int cx = t.column("z_over_l"), cc = t.column("c_corr");
    if (cx < 0 || cc < 0) throw InputError(path + ": expected columns z_over_l,c_corr");
    CorrCurve curve;
    for (const auto& r : t.rows) {
        curve.x.push_back(r[cx]);
        curve.c.push_back(r[cc]);
    }
    if (curve.x.size() < 3) throw InputError(path + ": need at least 3 rows");
    for (std::size_t i = 1; i < curve.x.size(); ++i)
        if (!(curve.x[i] > curve.x[i - 1]))
            throw InputError(path + ": z_over_l must increase");
    return curve;
}

double CorrCurve::c_tilde(double x_query) const {
    std::size_t n = x.size();
    auto interp = [&](const std::vector<double>& ys, double xq) {
        if (xq <= x.front()) return ys.front();
        if (xq >= x.back()) return ys.back();
        auto it = std::upper_bound(x.begin(), x.end(), xq);
        std::size_t i = static_cast<std::size_t>(it - x.begin());
        double t = (xq - x[i - 1]) / (x[i] - x[i - 1]);
        return ys[i - 1] + t * (ys[i] - ys[i - 1]);
    };
    std::vector<double> dc(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t a = i ? i - 1 : 0;
        std::size_t b = i + 1 < n ? i + 1 : n - 1;
        dc[i] = (c[b] - c[a]) / (x[b] - x[a]);
    }
    return interp(c, x_query) - x_query / 5.0 * interp(dc, x_query);
}

double roughness_diffraction_factor(double z, double delta_p, double delta_s,
                                    const CorrCurve& curve, double l_corr) {
    double rp = delta_p / z, rs = delta_s / z;
    return 1.0 + 10.0 * curve.c_tilde(z / l_corr) * (rp * rp + rs * rs);
}

double patch_variance(const std::vector<double>& potentials_V) {
    if (potentials_V.size() < 2)
        throw InputError("patch variance needs at least two potentials");
    double mean = 0.0;
    for (double p : potentials_V) mean += p;
    mean /= static_cast<double>(potentials_V.size());
    double s2 = 0.0;
    for (double p : potentials_V) s2 += (p - mean) * (p - mean);
    return s2 / static_cast<double>(potentials_V.size() - 1);
}

double patch_pressure(double z, double sigma_v2, double k_min, double k_max) {
    if (!(k_max > k_min) || !(k_min > 0.0))
        throw InputError("patch pressure needs 0 < k_min < k_max");
    auto f = [&](double k) {
        double sh = std::sinh(k * z);
        return k * k * k / (sh * sh);
    };
    double integral = quad::integrate(f, k_min, k_max, 1e-10);
    return -2.0 * constants::eps0 * sigma_v2 / (k_max * k_max - k_min * k_min) *
           integral;
}

} // namespace casimir::corrections
