#pragma once

#include <functional>
#include <string>
#include <vector>

namespace casimir::corrections {

/// Surface-height histogram: bin heights h (nm, h.front() == 0) and fractional
/// weights v summing to 1.
struct RoughnessHistogram {
    std::vector<double> h_nm;
    std::vector<double> v;

    static RoughnessHistogram load_csv(const std::string& path); // h_nm,v_fraction
    void validate() const;

    double zero_level_nm() const;          // H0 = sum h_i v_i
    double stochastic_sigma_nm() const;    // sqrt(sum (H0 - h_i)^2 v_i)
};

/// Geometric average of the pressure over both height distributions:
/// sum_{k,j} v^p_k v^s_j P(z + H0p + H0s - h^p_k - h^s_j).
/// pressure_fn is evaluated once per distinct shifted separation.
double roughness_average(const std::function<double(double)>& pressure_fn,
                         double z, const RoughnessHistogram& plate,
                         const RoughnessHistogram& sphere);

/// Lowest-order multiplicative factor eta_r = 1 + 10 [(dp/z)^2 + (ds/z)^2].
double roughness_eta(double z, double delta_p, double delta_s);
double roughness_multiplicative(double pressure, double z, double delta_p,
                                double delta_s);

/// Tabulated diffraction-correction coefficient c_corr(z / l_corr).
struct CorrCurve {
    std::vector<double> x;   // z / l_corr
    std::vector<double> c;

    static CorrCurve load_csv(const std::string& path); // z_over_l,c_corr

    /// c_tilde = c_corr - (x/5) dc/dx, central differences on the grid.
    double c_tilde(double x_query) const;
};

/// eta including the finite-correlation-length coefficient:
/// 1 + 10 c_tilde(z/l_corr) [(dp/z)^2 + (ds/z)^2].
double roughness_diffraction_factor(double z, double delta_p, double delta_s,
                                    const CorrCurve& curve, double l_corr);

/// Sample variance of the contact potentials (V^2); equals (1/2) sum (V-Vbar)^2
/// for three values.
double patch_variance(const std::vector<double>& potentials_V);

/// Electrostatic patch pressure
/// P = -2 eps0 sigma_v^2 / (k_max^2 - k_min^2) * Int k^3 / sinh^2(k z) dk.
double patch_pressure(double z, double sigma_v2, double k_min, double k_max);

} // namespace casimir::corrections
