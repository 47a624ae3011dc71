#pragma once

#include <functional>
#include <vector>

namespace casimir::yukawa {

struct Layer {
    double thickness = 0.0; // m; the innermost layer treats this as infinite
    double density = 0.0;   // kg/m^3
};

/// Coating stack listed from the vacuum-facing layer inward; the last entry is
/// the substrate (thickness ignored).
struct LayerStack {
    std::vector<Layer> layers;

    /// Effective-density bracket at range lambda:
    /// rho_1 - (rho_1-rho_2) e^{-d_1/lambda} - (rho_2-rho_3) e^{-(d_1+d_2)/lambda} ...
    double bracket(double lambda) const;
};

LayerStack gold_coated_sphere();  // Au 200nm / Ti 10nm / sapphire core
LayerStack gold_coated_plate();   // Au 150nm / Pt 10nm / Si substrate

/// Equivalent Yukawa pressure between the coated bodies at separation z for
/// unit coupling (multiply by alpha for the hypothesis value); valid for
/// z, lambda small against the sphere radius and plate thickness:
/// P = -2 pi G lambda^2 e^{-z/lambda} * bracket_sphere * bracket_plate.
double hypothetical_pressure(double z, double lambda,
                             const LayerStack& sphere, const LayerStack& plate);

struct ExclusionPoint {
    double lambda_m = 0.0;
    double alpha_max = 0.0;
    double z_best_nm = 0.0; // separation giving the strongest constraint
};

/// Largest coupling alpha compatible with |alpha * P_hyp(z)| <= envelope(z)
/// for all probed separations; the envelope is the 95% comparison band.
std::vector<ExclusionPoint>
constrain_alpha(const std::function<double(double)>& band_Pa_of_z_nm,
                const std::vector<double>& z_probe_nm,
                const std::vector<double>& lambda_m,
                const LayerStack& sphere = gold_coated_sphere(),
                const LayerStack& plate = gold_coated_plate());

} // namespace casimir::yukawa
