#pragma once

#include <functional>
#include <mutex>
#include <string>
#include <vector>

#include "dielectric.hpp"

namespace casimir::lifshitz {

/// Inverse-square reflection coefficients (r_par^-2, r_perp^-2) as they enter
/// the Lifshitz integrand 1 / (r^-2 e^y - 1).
struct ReflectionPair {
    double r_par_inv2;
    double r_perp_inv2;
};

/// Fresnel-type coefficients from eps(i xi) at transverse wavenumber k.
ReflectionPair reflection_fresnel(double eps, double xi, double k_perp);

/// Impedance-boundary coefficients from the Leontovich Z(i xi).
ReflectionPair reflection_impedance(double Z, double xi, double k_perp);

/// Zero-frequency (l = 0) term of the Lifshitz pressure, by prescription:
/// drude       -k_B T zeta(3) / (8 pi z^3)
/// ideal_metal -k_B T zeta(3) / (4 pi z^3)
/// plasma      TM ideal + TE with r_perp^-2 = ((ck+s)/(ck-s))^2, s = sqrt(c^2k^2+wp^2)
/// impedance   TM ideal + TE with r_perp^-2 = ((ck+wp)/(ck-wp))^2
double zero_frequency_pressure(materials::Approach a, double z, double temp_K,
                               double omega_p);

/// Ideal-metal zero-temperature pressure -pi^2 hbar c / (240 z^4).
double ideal_pressure(double z);

struct PressureResult {
    double total;          // Pa
    double zero_freq;      // l = 0 term, Pa
    double positive_sum;   // l >= 1 sum incl. tail estimate, Pa
    int truncation_order;  // highest l evaluated
};

/// Lifshitz pressure between identical plates at separation z. Shares the
/// eps(i xi) evaluations across calls (they depend on T and l only), so curve
/// and roughness evaluations reuse a single engine. Thread safe.
class PressureEngine {
public:
    PressureEngine(materials::DielectricModel model, double temp_K,
                   double sum_rel_tol = 1e-9, double quad_rel_tol = 1e-9,
                   int max_order = 20000);

    PressureResult pressure(double z) const;

    /// Contributions of terms l = 0 .. count-1 (no tail estimate).
    std::vector<double> term_breakdown(double z, int count) const;

    const materials::DielectricModel& model() const { return model_; }
    double temperature() const { return temp_; }

private:
    double eps_at(int l) const;   // memoized eps(i xi_l)
    double term(double z, int l, double eps) const;

    materials::DielectricModel model_;
    double temp_;
    double sum_tol_, quad_tol_;
    int max_order_;
    mutable std::vector<double> eps_cache_;
    mutable std::mutex mu_;
};

/// One-shot convenience wrapper around PressureEngine.
PressureResult casimir_pressure(const materials::DielectricModel& model, double z,
                                double temp_K, double rel_tol = 1e-9);

struct CurvePoint {
    double z;
    PressureResult p;
};

/// Pressure on a grid of separations (evaluated independently per point).
std::vector<CurvePoint> pressure_curve(const PressureEngine& eng,
                                       const std::vector<double>& z_values);

/// Log-log interpolant of |P(z)| built on a geometric grid; used where many
/// nearby separations are needed (per-point comparisons, Yukawa scans).
class CurveInterpolant {
public:
    CurveInterpolant(const PressureEngine& eng, double z_min, double z_max,
                     std::size_t points = 160);
    double operator()(double z) const;

private:
    std::vector<double> ln_z_, ln_p_;
};

} // namespace casimir::lifshitz
