#include "casimir/lifshitz.hpp"

#include <cmath>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"
#include "casimir/quadrature.hpp"

namespace casimir::lifshitz {

using materials::Approach;

ReflectionPair reflection_fresnel(double eps, double xi, double k_perp) {
    double xc2 = xi * xi / (constants::c * constants::c);
    double q = std::sqrt(k_perp * k_perp + xc2);
    double kl = std::sqrt(k_perp * k_perp + eps * xc2);
    double rp = (kl + eps * q) / (kl - eps * q);
    double rs = (kl + q) / (kl - q);
    return {rp * rp, rs * rs};
}

ReflectionPair reflection_impedance(double Z, double xi, double k_perp) {
    double c = constants::c;
    double q = std::sqrt(k_perp * k_perp + xi * xi / (c * c));
    double rp = (Z * xi + c * q) / (Z * xi - c * q);
    double rs = (Z * c * q + xi) / (Z * c * q - xi);
    return {rp * rp, rs * rs};
}

double ideal_pressure(double z) {
    double z2 = z * z;
    return -constants::pi * constants::pi * constants::hbar * constants::c /
           (240.0 * z2 * z2);
}

namespace {

// The two polarization contributions to the pressure integrand,
// 1/(r^-2 e^y - 1) summed over polarizations, guarded against overflow of
// r^-2 e^y for strongly reflecting channels.
double pol_sum(const ReflectionPair& r, double y) {
    double ey = std::exp(y);
    double a = r.r_par_inv2 * ey - 1.0;
    double b = r.r_perp_inv2 * ey - 1.0;
    return 1.0 / a + 1.0 / b;
}

} // namespace

double zero_frequency_pressure(Approach a, double z, double temp_K,
                               double omega_p) {
    double kBT = constants::k_B * temp_K;
    double z3 = z * z * z;
    double tm_ideal = -kBT * constants::zeta3 / (8.0 * constants::pi * z3);
    switch (a) {
    case Approach::drude:
        return tm_ideal; // TE vanishes, TM reflects perfectly
    case Approach::ideal_metal:
        return 2.0 * tm_ideal;
    case Approach::plasma: {
        double w = 2.0 * z * omega_p / constants::c; // y-scaled plasma frequency
        auto f = [&](double y) {
            double s = std::sqrt(y * y + w * w);
            double r = (y + s) / (y - s); // (ck + s)/(ck - s) scaled by 2z
            return y * y / (r * r * std::exp(y) - 1.0);
        };
        double te = -kBT / (16.0 * constants::pi * z3) *
                    quad::integrate(f, 0.0, 80.0, 1e-10);
        return tm_ideal + te;
    }
    case Approach::impedance: {
        double w = 2.0 * z * omega_p / constants::c;
        auto f = [&](double y) {
            double r = (y + w) / (y - w); // (ck + wp)/(ck - wp) scaled by 2z
            return y * y / (r * r * std::exp(y) - 1.0);
        };
        // integrand touches zero at y = w: split the quadrature there
        double upper = std::max(80.0, w + 40.0);
        double i1 = quad::integrate(f, 0.0, std::min(w, upper), 1e-10);
        double i2 = w < upper ? quad::integrate(f, w, upper, 1e-10) : 0.0;
        double te = -kBT / (16.0 * constants::pi * z3) * (i1 + i2);
        return tm_ideal + te;
    }
    }
    throw NumericError("unreachable zero-frequency prescription");
}

PressureEngine::PressureEngine(materials::DielectricModel model, double temp_K,
                               double sum_rel_tol, double quad_rel_tol,
                               int max_order)
    : model_(std::move(model)), temp_(temp_K), sum_tol_(sum_rel_tol),
      quad_tol_(quad_rel_tol), max_order_(max_order) {
    if (!(temp_K > 0.0)) throw ConfigError("temperature must be positive");
}

double PressureEngine::eps_at(int l) const {
    std::lock_guard<std::mutex> lock(mu_);
    while (static_cast<int>(eps_cache_.size()) < l)
        eps_cache_.push_back(
            materials::epsilon_imag_axis(model_, matsubara_xi(
                static_cast<int>(eps_cache_.size()) + 1, temp_)));
    return eps_cache_[static_cast<std::size_t>(l - 1)];
}

double PressureEngine::term(double z, int l, double eps) const {
    double xi = matsubara_xi(l, temp_);
    double yl = 2.0 * xi * z / constants::c;
    bool use_impedance = model_.approach == Approach::impedance;
    double Z = use_impedance ? 1.0 / std::sqrt(eps) : 0.0;
    auto f = [&](double y) {
        double k_perp = std::sqrt(y * y - yl * yl) / (2.0 * z);
        ReflectionPair r = use_impedance ? reflection_impedance(Z, xi, k_perp)
                                         : reflection_fresnel(eps, xi, k_perp);
        return y * y * pol_sum(r, y);
    };
    double upper = yl + 80.0;
    double integral;
    if (use_impedance) {
        // TE reflection changes sign of (Z c q - xi) at y* = 2 z xi sqrt(eps)/c;
        // the integrand touches zero there, so integrate each side separately
        double ystar = yl * std::sqrt(eps);
        if (ystar > yl && ystar < upper)
            integral = quad::integrate(f, yl, ystar, quad_tol_) +
                       quad::integrate(f, ystar, upper, quad_tol_);
        else
            integral = quad::integrate(f, yl, upper, quad_tol_);
    } else {
        integral = quad::integrate(f, yl, upper, quad_tol_);
    }
    double kBT = constants::k_B * temp_;
    return -kBT / (8.0 * constants::pi * z * z * z) * integral;
}

PressureResult PressureEngine::pressure(double z) const {
    if (!(z > 0.0)) throw InputError("separation must be positive");
    PressureResult res{};
    res.zero_freq =
        zero_frequency_pressure(model_.approach, z, temp_, model_.drude.omega_p);
    double acc = res.zero_freq;
    double sum_pos = 0.0;
    double prev = 0.0, last = 0.0;
    int below = 0;
    int l = 0;
    while (below < 3) {
        if (++l > max_order_)
            throw NumericError("Matsubara sum did not converge by order " +
                               std::to_string(max_order_));
        prev = last;
        last = term(z, l, eps_at(l));
        sum_pos += last;
        acc += last;
        below = std::abs(last) < sum_tol_ * std::abs(acc) ? below + 1 : 0;
    }
    // geometric estimate of the truncated tail
    if (prev != 0.0) {
        double ratio = last / prev;
        if (ratio > 0.0 && ratio < 0.999)
            sum_pos += last * ratio / (1.0 - ratio);
    }
    res.positive_sum = sum_pos;
    res.total = res.zero_freq + sum_pos;
    res.truncation_order = l;
    return res;
}

std::vector<double> PressureEngine::term_breakdown(double z, int count) const {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int l = 0; l < count; ++l)
        out.push_back(l == 0 ? zero_frequency_pressure(model_.approach, z, temp_,
                                                       model_.drude.omega_p)
                             : term(z, l, eps_at(l)));
    return out;
}

PressureResult casimir_pressure(const materials::DielectricModel& model, double z,
                                double temp_K, double rel_tol) {
    return PressureEngine(model, temp_K, rel_tol, rel_tol).pressure(z);
}

std::vector<CurvePoint> pressure_curve(const PressureEngine& eng,
                                       const std::vector<double>& z_values) {
    std::vector<CurvePoint> out;
    out.reserve(z_values.size());
    for (double z : z_values) out.push_back({z, eng.pressure(z)});
    return out;
}

CurveInterpolant::CurveInterpolant(const PressureEngine& eng, double z_min,
                                   double z_max, std::size_t points) {
    if (!(z_min > 0.0) || !(z_max > z_min) || points < 2)
        throw ConfigError("interpolant needs 0 < z_min < z_max and >= 2 points");
    ln_z_.reserve(points);
    ln_p_.reserve(points);
    double l0 = std::log(z_min), l1 = std::log(z_max);
    for (std::size_t i = 0; i < points; ++i) {
        double lz = l0 + (l1 - l0) * static_cast<double>(i) /
                             static_cast<double>(points - 1);
        double p = eng.pressure(std::exp(lz)).total;
        if (!(p < 0.0))
            throw NumericError("interpolant expects attractive pressures");
        ln_z_.push_back(lz);
        ln_p_.push_back(std::log(-p));
    }
}

double CurveInterpolant::operator()(double z) const {
    double lz = std::log(z);
    std::size_t n = ln_z_.size();
    std::size_t i = 1;
    if (lz > ln_z_[n - 2]) {
        i = n - 1; // linear continuation beyond the last segment
    } else {
        while (i + 1 < n && ln_z_[i] < lz) ++i;
    }
    double t = (lz - ln_z_[i - 1]) / (ln_z_[i] - ln_z_[i - 1]);
    return -std::exp(ln_p_[i - 1] + t * (ln_p_[i] - ln_p_[i - 1]));
}

} // namespace casimir::lifshitz
