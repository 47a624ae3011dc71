#include "casimir/yukawa.hpp"

#include <cmath>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"

namespace casimir::yukawa {

double LayerStack::bracket(double lambda) const {
    if (layers.empty()) throw InputError("layer stack is empty");
    if (!(lambda > 0.0)) throw InputError("interaction range must be positive");
    double b = layers.front().density;
    double depth = 0.0;
    for (std::size_t i = 0; i + 1 < layers.size(); ++i) {
        depth += layers[i].thickness;
        b -= (layers[i].density - layers[i + 1].density) * std::exp(-depth / lambda);
    }
    return b;
}

LayerStack gold_coated_sphere() {
    return {{{200e-9, 19.28e3}, {10e-9, 4.51e3}, {0.0, 4.1e3}}};
}

LayerStack gold_coated_plate() {
    return {{{150e-9, 19.28e3}, {10e-9, 21.47e3}, {0.0, 2.33e3}}};
}

double hypothetical_pressure(double z, double lambda, const LayerStack& sphere,
                             const LayerStack& plate) {
    return -2.0 * constants::pi * constants::G_newton * lambda * lambda *
           std::exp(-z / lambda) * sphere.bracket(lambda) * plate.bracket(lambda);
}

std::vector<ExclusionPoint>
constrain_alpha(const std::function<double(double)>& band_Pa_of_z_nm,
                const std::vector<double>& z_probe_nm,
                const std::vector<double>& lambda_m,
                const LayerStack& sphere, const LayerStack& plate) {
    if (z_probe_nm.empty()) throw InputError("no separations to probe");
    std::vector<ExclusionPoint> out;
    out.reserve(lambda_m.size());
    for (double lam : lambda_m) {
        ExclusionPoint pt;
        pt.lambda_m = lam;
        bool first = true;
        for (double zn : z_probe_nm) {
            double p1 = std::abs(hypothetical_pressure(zn * 1e-9, lam, sphere, plate));
            if (!(p1 > 0.0)) continue;
            double a = band_Pa_of_z_nm(zn) / p1;
            if (first || a < pt.alpha_max) {
                pt.alpha_max = a;
                pt.z_best_nm = zn;
                first = false;
            }
        }
        if (first)
            throw NumericError("hypothetical pressure vanished at every probed "
                               "separation");
        out.push_back(pt);
    }
    return out;
}

} // namespace casimir::yukawa
