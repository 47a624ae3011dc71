#pragma once

#include <memory>
#include <optional>

#include "optical_table.hpp"

namespace casimir::materials {

struct DrudeParams {
    double omega_p; // rad/s
    double gamma;   // rad/s
};

/// How the zero-frequency term of the Lifshitz sum is prescribed.
enum class Approach {
    drude = 1,       // TM perfect, TE absent
    ideal_metal = 2, // both polarizations perfect
    plasma = 3,      // TE from the plasma-model reflection coefficient
    impedance = 4,   // TE from the infrared-optics surface impedance
};

/// Where eps(i xi) comes from for the positive Matsubara frequencies.
enum class DielectricSource {
    analytic_drude,
    analytic_plasma,
    tabulated_kk, // Kramers-Kronig transform of an optical table
};

/// Immutable description of the plate material response. Pure evaluation
/// functions; safe to share across threads.
struct DielectricModel {
    Approach approach = Approach::impedance;
    DielectricSource source = DielectricSource::analytic_drude;
    DrudeParams drude{};                    // always set (zero-frequency terms use omega_p)
    std::shared_ptr<const OpticalTable> table; // for tabulated_kk
    double kk_rel_tol = 1e-7;

    static DielectricModel analytic(Approach a, DielectricSource s,
                                    double omega_p_ev = 9.0, double gamma_ev = 0.035);
    static DielectricModel tabulated(Approach a, std::shared_ptr<const OpticalTable> t,
                                     double omega_p_ev = 9.0, double gamma_ev = 0.035,
                                     double kk_rel_tol = 1e-7);
};

/// eps(i xi), xi > 0. Analytic forms or the KK transform
/// eps(i xi) = 1 + (2/pi) Int_0^inf w Im eps(w) / (w^2 + xi^2) dw
/// with a Drude continuation below the table and a fitted power-law tail above.
double epsilon_imag_axis(const DielectricModel& m, double xi);

/// Leontovich impedance Z(i xi) = 1/sqrt(eps(i xi)); for the analytic plasma
/// source the exact closed form xi / sqrt(omega_p^2 + xi^2) is used.
double impedance_imag_axis(const DielectricModel& m, double xi);

/// Exact (k-dependent) surface impedances evaluated on the imaginary axis:
/// Z_par = sqrt(eps xi^2 + c^2 k^2) / (xi eps), Z_perp = xi / sqrt(eps xi^2 + c^2 k^2).
/// Z_par * Z_perp = 1/eps.
struct ImpedancePair {
    double z_par;
    double z_perp;
};
ImpedancePair exact_impedances(double eps, double xi, double k_perp);

} // namespace casimir::materials
