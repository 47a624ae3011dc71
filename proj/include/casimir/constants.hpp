#pragma once

namespace casimir {

// Fundamental constants, SI. Values follow the NIST set used throughout;
// they are deliberately frozen here rather than taken from a library so that
// published reference numbers reproduce bit-for-bit.
namespace constants {

inline constexpr double c = 2.997924e8;        // m/s
inline constexpr double hbar = 1.05457e-34;    // J s
inline constexpr double k_B = 1.38065e-23;     // J/K
inline constexpr double e_charge = 1.602176e-19;  // C
inline constexpr double eps0 = 8.854187817e-12;   // F/m
inline constexpr double G_newton = 6.674e-11;     // m^3/(kg s^2)
inline constexpr double ev_to_rad_s = 1.51927e15; // rad/s per eV
inline constexpr double pi = 3.141592653589793;
inline constexpr double zeta3 = 1.2020569031595943;

} // namespace constants

/// eV <-> angular frequency conversions (identity round trip).
inline double ev_to_omega(double ev) { return ev * constants::ev_to_rad_s; }
inline double omega_to_ev(double omega) { return omega / constants::ev_to_rad_s; }

/// Matsubara frequency xi_l = 2 pi k_B T l / hbar.
inline double matsubara_xi(int l, double temp_K)
{
    return 2.0 * constants::pi * constants::k_B * temp_K * l / constants::hbar;
}

} // namespace casimir
