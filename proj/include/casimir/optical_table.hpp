#pragma once

#include <string>
#include <vector>

namespace casimir::materials {

/// Tabulated complex refractive index n + ik on the real frequency axis.
/// Rows are strictly increasing in frequency; n > 0, k >= 0.
class OpticalTable {
public:
    OpticalTable(std::vector<double> omega_rad_s, std::vector<double> n,
                 std::vector<double> k);

    static OpticalTable load_csv(const std::string& path);   // energy_ev,n,k
    static OpticalTable load_json(const std::string& path);
    void save_csv(const std::string& path) const;
    void save_json(const std::string& path) const;

    std::size_t size() const { return omega_.size(); }
    double omega_min() const { return omega_.front(); }
    double omega_max() const { return omega_.back(); }
    const std::vector<double>& omega() const { return omega_; }
    const std::vector<double>& n() const { return n_; }
    const std::vector<double>& k() const { return k_; }

    /// Im eps = 2 n k at omega, log-log interpolated between rows.
    /// Out-of-range queries are the caller's business (KK handles tails).
    double im_eps(double omega_rad_s) const;

    /// log-log slope of Im eps fitted from the last two rows (tail exponent).
    double tail_exponent() const;

private:
    void validate() const;
    std::vector<double> omega_, n_, k_;
    std::vector<double> ln_w_, ln_im_;
};

/// Synthetic Drude table: n, k from eps(w) = 1 - wp^2/(w(w + i gamma)) on a
/// log-spaced energy grid.
OpticalTable synthesize_drude_table(double omega_p_ev, double gamma_ev,
                                    std::size_t points = 500,
                                    double ev_min = 0.125, double ev_max = 1e4);

} // namespace casimir::materials
