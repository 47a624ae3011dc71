#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace casimir::instrument {

/// Micromechanical torsional oscillator and sphere geometry.
struct OscillatorParams {
    double omega0 = 2.0 * 3.141592653589793 * 702.92; // rad/s, unperturbed
    double b2_over_I = 1.2579e9;   // 1/kg, lever arm^2 over inertia
    double R = 148.7e-6;           // m, sphere radius
    double D = 9349.7e-9;          // m, closest-approach offset
    double b_arm = 210e-6;         // m, lever arm
    double delta_omega_r = 2.0 * 3.141592653589793 * 6e-3; // rad/s resolution
};

/// Static-angle capacitance bridge (angular readout).
struct BridgeParams {
    double dV_per_rtHz = 10e-9; // V/sqrt(Hz)
    double V_dc = 1.0;          // V
    double C_T = 20e-12;        // F, parasitic
    double w = 250e-6;          // m, plate width
    double w_prime = 190e-6;    // m, plate length
    double d_g = 2e-6;          // m, gap
};

/// Absolute sphere-plate separation z = z_meas - D - b*theta.
double absolute_separation(double z_meas, double D, double b_arm, double theta);

/// Angular noise floor dTheta = (dV/V)(C_T/C_o)(2 d_g / w') over bandwidth nu.
double angular_noise_floor(double bandwidth_hz, const BridgeParams& p = {});

/// Sphere-plate electrostatic force at potential difference V_applied - V_0,
/// exact image-charge series; terms summed until below 1e-12 of the partial.
double electrostatic_force(double z, double R, double V_applied, double V_0);

/// Pressure from the shifted resonance: P = -(omega0^2 - omega_r^2) I/(2 pi R b^2).
double pressure_from_frequency_shift(double omega_r, const OscillatorParams& p = {});

/// Smallest pressure change resolvable by the frequency-shift readout.
double min_resolvable_pressure(const OscillatorParams& p = {});

struct MeasurementPoint {
    double z_nm;
    double P_Pa;
};

struct MeasurementSet {
    int set_id = 0;
    std::vector<MeasurementPoint> points;
};

/// save: one CSV (set_id,z_nm,P_Pa) holding all sets; load reverses it.
void save_sets_csv(const std::string& path, const std::vector<MeasurementSet>& sets);
std::vector<MeasurementSet> load_sets_csv(const std::string& path);

/// Per-point pressure noise (Pa) used by the synthetic generator; a log-log
/// interpolation between calibrated anchors chosen to reproduce the published
/// error-budget scale (see README).
double synthetic_noise_sigma(double z_nm);

struct SynthesisOptions {
    int n_sets = 15;
    std::uint64_t seed = 20260101;
    int outlier_set = -1;      // 1-based id; < 1 disables
    double outlier_shift_sigma = 5.0;
    double z_min_nm = 160.0;
    double z_max_nm = 750.0;
    int points_min = 288;
    int points_max = 293;
};

/// Deterministic synthetic measurement sets around a truth curve (Pa vs m).
/// Mutually misaligned non-uniform grids; Gaussian pressure noise with
/// z-dependent sigma; optional set shifted by a constant multiple of sigma.
std::vector<MeasurementSet>
synthesize_measurement_sets(const std::function<double(double)>& truth_Pa,
                            const SynthesisOptions& opt = {});

} // namespace casimir::instrument
