#include "casimir/optical_table.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>

#include <nlohmann/json.hpp>

#include "casimir/constants.hpp"
#include "casimir/csv.hpp"
#include "casimir/errors.hpp"

namespace casimir::materials {

OpticalTable::OpticalTable(std::vector<double> omega_rad_s, std::vector<double> n,
                           std::vector<double> k)
    : omega_(std::move(omega_rad_s)), n_(std::move(n)), k_(std::move(k)) {
    validate();
    ln_w_.reserve(omega_.size());
    ln_im_.reserve(omega_.size());
    for (std::size_t i = 0; i < omega_.size(); ++i) {
        ln_w_.push_back(std::log(omega_[i]));
        ln_im_.push_back(std::log(2.0 * n_[i] * k_[i]));
    }
}

void OpticalTable::validate() const {
    if (omega_.size() < 2) throw InputError("optical table: need at least 2 rows");
    if (omega_.size() != n_.size() || omega_.size() != k_.size())
        throw InputError("optical table: column lengths differ");
    for (std::size_t i = 0; i < omega_.size(); ++i) {
        if (!(omega_[i] > 0.0)) throw InputError("optical table: frequency <= 0");
        if (i && !(omega_[i] > omega_[i - 1]))
            throw InputError("optical table: frequencies not strictly increasing");
        if (!(n_[i] > 0.0)) throw InputError("optical table: n <= 0");
        if (!(k_[i] > 0.0))
            throw InputError("optical table: k <= 0 (Im eps must stay positive)");
    }
}

OpticalTable OpticalTable::load_csv(const std::string& path) {
    auto t = csv::read_file(path);
    int ce = t.column("energy_ev"), cn = t.column("n"), ck = t.column("k");
    if (ce < 0 || cn < 0 || ck < 0)
        throw InputError(path + ": expected columns energy_ev,n,k");
    std::vector<double> w, n, k;
    w.reserve(t.rows.size());
    for (const auto& r : t.rows) {
        w.push_back(ev_to_omega(r[ce]));
        n.push_back(r[cn]);
        k.push_back(r[ck]);
    }
    return OpticalTable(std::move(w), std::move(n), std::move(k));
}

void OpticalTable::save_csv(const std::string& path) const {
    std::vector<std::vector<double>> rows;
    rows.reserve(size());
    for (std::size_t i = 0; i < size(); ++i)
        rows.push_back({omega_to_ev(omega_[i]), n_[i], k_[i]});
    csv::write_file(path, {"energy_ev", "n", "k"}, rows);
}

OpticalTable OpticalTable::load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw InputError(path + ": bad json: " + e.what());
    }
    if (!j.contains("energy_ev") || !j.contains("n") || !j.contains("k"))
        throw InputError(path + ": expected keys energy_ev, n, k");
    std::vector<double> ev = j["energy_ev"], n = j["n"], k = j["k"];
    std::vector<double> w(ev.size());
    std::transform(ev.begin(), ev.end(), w.begin(), ev_to_omega);
    return OpticalTable(std::move(w), std::move(n), std::move(k));
}

void OpticalTable::save_json(const std::string& path) const {
    nlohmann::json j;
    std::vector<double> ev(size());
    std::transform(omega_.begin(), omega_.end(), ev.begin(), omega_to_ev);
    j["energy_ev"] = ev;
    j["n"] = n_;
    j["k"] = k_;
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path);
    out << j.dump(1) << '\n';
}

double OpticalTable::im_eps(double omega_rad_s) const {
    double lw = std::log(omega_rad_s);
    if (lw <= ln_w_.front()) return std::exp(ln_im_.front());
    if (lw >= ln_w_.back()) return std::exp(ln_im_.back());
    auto it = std::upper_bound(ln_w_.begin(), ln_w_.end(), lw);
    std::size_t i = static_cast<std::size_t>(it - ln_w_.begin());
    double t = (lw - ln_w_[i - 1]) / (ln_w_[i] - ln_w_[i - 1]);
    return std::exp(ln_im_[i - 1] + t * (ln_im_[i] - ln_im_[i - 1]));
}

double OpticalTable::tail_exponent() const {
    std::size_t m = size();
    return (ln_im_[m - 1] - ln_im_[m - 2]) / (ln_w_[m - 1] - ln_w_[m - 2]);
}

OpticalTable synthesize_drude_table(double omega_p_ev, double gamma_ev,
                                    std::size_t points, double ev_min,
                                    double ev_max) {
    if (points < 2) throw InputError("drude table: need at least 2 points");
    double wp = ev_to_omega(omega_p_ev);
    double g = ev_to_omega(gamma_ev);
    std::vector<double> w(points), n(points), k(points);
    double lmin = std::log(ev_min), lmax = std::log(ev_max);
    for (std::size_t i = 0; i < points; ++i) {
        double ev = std::exp(lmin + (lmax - lmin) * static_cast<double>(i) /
                                        static_cast<double>(points - 1));
        double om = ev_to_omega(ev);
        std::complex<double> eps =
            1.0 - wp * wp / (om * std::complex<double>(om, g));
        std::complex<double> nk = std::sqrt(eps);
        w[i] = om;
        n[i] = nk.real();
        k[i] = nk.imag();
    }
    return OpticalTable(std::move(w), std::move(n), std::move(k));
}

} // namespace casimir::materials
