#include "casimir/dielectric.hpp"

#include <cmath>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"
#include "casimir/quadrature.hpp"

namespace casimir::materials {

DielectricModel DielectricModel::analytic(Approach a, DielectricSource s,
                                          double omega_p_ev, double gamma_ev) {
    if (s == DielectricSource::tabulated_kk)
        throw ConfigError("analytic model cannot use a tabulated source");
    DielectricModel m;
    m.approach = a;
    m.source = s;
    m.drude = {ev_to_omega(omega_p_ev), ev_to_omega(gamma_ev)};
    return m;
}

DielectricModel DielectricModel::tabulated(Approach a,
                                           std::shared_ptr<const OpticalTable> t,
                                           double omega_p_ev, double gamma_ev,
                                           double kk_rel_tol) {
    if (!t) throw ConfigError("tabulated model needs an optical table");
    DielectricModel m;
    m.approach = a;
    m.source = DielectricSource::tabulated_kk;
    m.drude = {ev_to_omega(omega_p_ev), ev_to_omega(gamma_ev)};
    m.table = std::move(t);
    m.kk_rel_tol = kk_rel_tol;
    return m;
}

namespace {

// Int_0^W w ImepsDrude(w) / (w^2 + xi^2) dw with
// ImepsDrude = wp^2 gamma / (w (w^2 + gamma^2)), in closed form.
double kk_below_table(double W, double xi, double wp, double g) {
    double d = xi * xi - g * g;
    if (std::abs(d) < 1e-9 * xi * xi) {
        // xi ~ gamma limit of the partial-fraction form
        return wp * wp * g *
               (W / (2.0 * g * g * (W * W + g * g)) +
                std::atan(W / g) / (2.0 * g * g * g));
    }
    return wp * wp * g / d * (std::atan(W / g) / g - std::atan(W / xi) / xi);
}

// Int over the tabulated range, segment by segment in t = ln w, with the
// table's own log-log power law inside each segment.
double kk_table_range(const OpticalTable& tab, double xi) {
    const auto& w = tab.omega();
    double total = 0.0;
    double xi2 = xi * xi;
    for (std::size_t i = 0; i + 1 < tab.size(); ++i) {
        double lw0 = std::log(w[i]), lw1 = std::log(w[i + 1]);
        double im0 = 2.0 * tab.n()[i] * tab.k()[i];
        double slope = std::log(2.0 * tab.n()[i + 1] * tab.k()[i + 1] / im0) /
                       (lw1 - lw0);
        auto f = [&](double t) {
            double om = std::exp(t);
            double im = im0 * std::exp(slope * (t - lw0));
            return om * om * im / (om * om + xi2);
        };
        total += quad::integrate(f, lw0, lw1, 1e-10);
    }
    return total;
}

// Tail above the table: Imeps ~ A w^s fitted from the last two rows.
// u = W/w turns Int_W^inf w^{1+s}/(w^2+xi^2) dw into a finite integral.
double kk_tail(const OpticalTable& tab, double xi) {
    double W = tab.omega_max();
    double s = tab.tail_exponent();
    if (s > -1.5)
        throw NumericError("optical table tail falls too slowly for the "
                           "dispersion integral (exponent " + std::to_string(s) + ")");
    double A = tab.im_eps(W) * std::pow(W, -s);
    double xi2 = xi * xi;
    auto f = [&](double u) {
        return std::pow(u, -1.0 - s) / (W * W + xi2 * u * u);
    };
    return A * std::pow(W, 2.0 + s) * quad::integrate(f, 0.0, 1.0, 1e-10);
}

} // namespace

double epsilon_imag_axis(const DielectricModel& m, double xi) {
    if (!(xi > 0.0)) throw NumericError("epsilon_imag_axis needs xi > 0");
    switch (m.source) {
    case DielectricSource::analytic_drude:
        return 1.0 + m.drude.omega_p * m.drude.omega_p / (xi * (xi + m.drude.gamma));
    case DielectricSource::analytic_plasma:
        return 1.0 + m.drude.omega_p * m.drude.omega_p / (xi * xi);
    case DielectricSource::tabulated_kk: {
        const auto& tab = *m.table;
        double integral = kk_below_table(tab.omega_min(), xi, m.drude.omega_p,
                                         m.drude.gamma) +
                          kk_table_range(tab, xi) + kk_tail(tab, xi);
        return 1.0 + 2.0 / constants::pi * integral;
    }
    }
    throw NumericError("unreachable dielectric source");
}

double impedance_imag_axis(const DielectricModel& m, double xi) {
    if (m.source == DielectricSource::analytic_plasma) {
        double wp = m.drude.omega_p;
        return xi / std::sqrt(wp * wp + xi * xi);
    }
    return 1.0 / std::sqrt(epsilon_imag_axis(m, xi));
}

ImpedancePair exact_impedances(double eps, double xi, double k_perp) {
    double c = constants::c;
    double ckl = std::sqrt(eps * xi * xi + c * c * k_perp * k_perp);
    return {ckl / (xi * eps), xi / ckl};
}

} // namespace casimir::materials
