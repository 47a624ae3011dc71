#include "casimir/metrology.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <boost/math/distributions/students_t.hpp>

#include "casimir/errors.hpp"

namespace casimir::metrology {

double student_t_quantile(double p, int dof) {
    if (dof < 1) throw InputError("Student-t needs dof >= 1");
    if (!(p > 0.0 && p < 1.0)) throw InputError("Student-t quantile needs 0 < p < 1");
    boost::math::students_t_distribution<double> dist(dof);
    return boost::math::quantile(dist, p);
}

double outlier_critical(int n, double alpha) {
    if (n < 3) throw InputError("outlier test needs n >= 3");
    double t = student_t_quantile(1.0 - alpha / (2.0 * n), n - 2);
    return (n - 1) / std::sqrt(static_cast<double>(n)) *
           std::sqrt(t * t / (n - 2 + t * t));
}

double compose_uniform(double e1, double e2) {
    return std::min(e1 + e2, 1.1 * std::hypot(e1, e2));
}

namespace {

struct RawBin {
    double center_nm;
    std::vector<double> P;
    std::vector<int> set_id;
};

std::map<long, RawBin> collect_bins(const std::vector<instrument::MeasurementSet>& sets,
                                    double z_min, double z_max, double width) {
    if (!(width > 0.0) || !(z_max > z_min))
        throw InputError("bad binning parameters");
    std::map<long, RawBin> bins;
    for (const auto& s : sets)
        for (const auto& pt : s.points) {
            if (pt.z_nm < z_min || pt.z_nm >= z_max) continue;
            long j = static_cast<long>((pt.z_nm - z_min) / width);
            auto& b = bins[j];
            b.center_nm = z_min + (j + 0.5) * width;
            b.P.push_back(pt.P_Pa);
            b.set_id.push_back(s.set_id);
        }
    return bins;
}

BinStats make_stats(const RawBin& raw) {
    BinStats b;
    b.center_nm = raw.center_nm;
    b.n = static_cast<int>(raw.P.size());
    double mean = 0.0;
    for (double p : raw.P) mean += p;
    mean /= b.n;
    b.mean_Pa = mean;
    if (b.n >= 2) {
        double s2 = 0.0;
        for (double p : raw.P) s2 += (p - mean) * (p - mean);
        s2 /= (b.n - 1);
        b.var_point = s2;
        b.var_mean = s2 / b.n;
        double s = std::sqrt(s2);
        if (s > 0.0) {
            double best = -1.0;
            for (std::size_t i = 0; i < raw.P.size(); ++i) {
                double dev = std::abs(raw.P[i] - mean) / s;
                if (dev > best) {
                    best = dev;
                    b.argmax_set = raw.set_id[i];
                }
            }
            b.max_dev_stat = best;
        }
    }
    return b;
}

} // namespace

std::vector<BinStats> bin_sets(const std::vector<instrument::MeasurementSet>& sets,
                               double z_min_nm, double z_max_nm, double width_nm) {
    std::vector<BinStats> out;
    for (const auto& [j, raw] : collect_bins(sets, z_min_nm, z_max_nm, width_nm))
        out.push_back(make_stats(raw));
    return out;
}

OutlierReport detect_outlier_sets(const std::vector<instrument::MeasurementSet>& sets,
                                  double beta) {
    if (!(beta > 0.0 && beta < 1.0)) throw InputError("confidence must be in (0,1)");
    double alpha = 1.0 - beta;
    OutlierReport rep;
    auto raw = collect_bins(sets, 160.0, 750.0, 1.2);
    int max_id = 0;
    for (const auto& s : sets) max_id = std::max(max_id, s.set_id);
    std::vector<int> owned(static_cast<std::size_t>(max_id) + 1, 0);
    std::vector<int> present(static_cast<std::size_t>(max_id) + 1, 0);
    for (const auto& [j, rb] : raw) {
        BinStats b = make_stats(rb);
        if (b.n >= 3) {
            b.exceeds = b.max_dev_stat > outlier_critical(b.n, alpha);
            if (b.exceeds) {
                ++rep.n_exceeding_bins;
                ++owned[static_cast<std::size_t>(b.argmax_set)];
            }
            std::vector<int> ids = rb.set_id;
            std::sort(ids.begin(), ids.end());
            ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
            for (int id : ids) ++present[static_cast<std::size_t>(id)];
        }
        rep.bins.push_back(b);
    }
    rep.exceed_fraction.assign(static_cast<std::size_t>(max_id) + 1, 0.0);
    for (const auto& s : sets) {
        std::size_t id = static_cast<std::size_t>(s.set_id);
        if (present[id] > 0)
            rep.exceed_fraction[id] =
                static_cast<double>(owned[id]) / present[id];
        // a set is an outlier when it owns the extreme point in a sizable
        // share of the bins that fail the test, not just a few chance hits
        if (present[id] > 0 && owned[id] >= 5 && rep.exceed_fraction[id] > 0.10)
            rep.flagged_sets.push_back(s.set_id);
    }
    std::sort(rep.flagged_sets.begin(), rep.flagged_sets.end());
    return rep;
}

RandomErrorResult pooled_random_error(const std::vector<BinStats>& bins,
                                      double z0_nm, double beta) {
    // bins thinner than 4 points carry too little variance information to
    // enter the homogeneity comparison
    std::vector<const BinStats*> eligible;
    for (const auto& b : bins)
        if (b.n >= 4 && b.var_mean > 0.0) eligible.push_back(&b);
    if (eligible.size() < 3)
        throw InputError("not enough populated bins near z = " +
                         std::to_string(z0_nm));
    std::sort(eligible.begin(), eligible.end(),
              [z0_nm](const BinStats* a, const BinStats* b) {
                  return std::abs(a->center_nm - z0_nm) <
                         std::abs(b->center_nm - z0_nm);
              });
    std::vector<const BinStats*> chosen(eligible.begin(), eligible.begin() + 3);
    auto homogeneous = [](const std::vector<const BinStats*>& v) {
        double lo = v.front()->var_mean, hi = lo;
        for (const auto* b : v) {
            lo = std::min(lo, b->var_mean);
            hi = std::max(hi, b->var_mean);
        }
        return hi <= 9.0 * lo;
    };
    for (std::size_t i = 3; i < eligible.size() && chosen.size() < 6; ++i) {
        chosen.push_back(eligible[i]);
        if (!homogeneous(chosen)) {
            chosen.pop_back();
            break;
        }
    }
    std::size_t N = chosen.size();
    // pooled variance of the mean: the worse of equal influence coefficients
    // (arithmetic mean of bin variances) and inverse-variance coefficients
    // (harmonic mean); the N prefactor keeps bins at different separations
    // from faking replication
    double arith = 0.0, inv = 0.0, mean = 0.0;
    int min_n = chosen.front()->n;
    for (const auto* b : chosen) {
        arith += b->var_mean;
        inv += 1.0 / b->var_mean;
        mean += b->mean_Pa;
        min_n = std::min(min_n, b->n);
    }
    arith /= static_cast<double>(N);
    double harm = static_cast<double>(N) / inv;
    double s2 = std::max(arith, harm);
    RandomErrorResult res;
    res.n_bins = static_cast<int>(N);
    res.dof = min_n - 1;
    res.mean_Pa = mean / static_cast<double>(N);
    res.s_mean_Pa = std::sqrt(s2);
    double t = student_t_quantile(1.0 - (1.0 - beta) / 2.0, res.dof);
    res.delta_Pa = t * res.s_mean_Pa;
    return res;
}

double systematic_error(double P_Pa, double dP_resolution_Pa, double dR_over_R) {
    double Pabs = std::abs(P_Pa);
    if (!(Pabs > 0.0)) throw InputError("systematic error needs P != 0");
    return Pabs * compose_uniform(dP_resolution_Pa / Pabs, dR_over_R);
}

double total_experimental_error(double random_err, double syst_err,
                                double s_mean) {
    if (random_err < 0.0 || syst_err < 0.0 || s_mean < 0.0)
        throw InputError("error magnitudes must be nonnegative");
    if (s_mean == 0.0) return syst_err;
    double r = syst_err / s_mean;
    if (r < 0.8) return random_err;
    if (r > 8.0) return syst_err;
    return 0.8 * (random_err + syst_err);
}

double theoretical_error_rel(double z, double R, double dz) {
    double delta_z = 4.0 * dz / z;
    double delta_other = compose_uniform(z / R, 0.005);
    return 0.8 * (delta_z + delta_other);
}

double comparison_band(double expt_err_Pa, double theor_err_Pa, bool ninety_nine) {
    double hw = compose_uniform(expt_err_Pa, theor_err_Pa);
    if (ninety_nine)
        hw *= student_t_quantile(0.995, 2) / student_t_quantile(0.975, 2);
    return hw;
}

std::vector<BudgetRow> error_budget(const std::vector<instrument::MeasurementSet>& sets,
                                    const std::function<double(double)>& theory_Pa,
                                    const std::vector<double>& z_nm,
                                    double R, double dz, double dP_resolution_Pa,
                                    double dR_over_R, double beta) {
    auto bins = bin_sets(sets);
    std::vector<BudgetRow> rows;
    rows.reserve(z_nm.size());
    for (double zn : z_nm) {
        BudgetRow row;
        row.z_nm = zn;
        auto rand = pooled_random_error(bins, zn, beta);
        row.P_expt_Pa = rand.mean_Pa;
        row.rand_Pa = rand.delta_Pa;
        row.syst_Pa = systematic_error(rand.mean_Pa, dP_resolution_Pa, dR_over_R);
        row.expt_Pa =
            total_experimental_error(row.rand_Pa, row.syst_Pa, rand.s_mean_Pa);
        row.theor_Pa =
            std::abs(theory_Pa(zn * 1e-9)) * theoretical_error_rel(zn * 1e-9, R, dz);
        row.band_Pa = comparison_band(row.expt_Pa, row.theor_Pa, false);
        row.band99_Pa = comparison_band(row.expt_Pa, row.theor_Pa, true);
        rows.push_back(row);
    }
    return rows;
}

Verdict compare_theory(const std::vector<instrument::MeasurementSet>& sets,
                       const std::function<double(double)>& theory_Pa,
                       const std::function<double(double)>& band_Pa_of_z_nm,
                       const std::vector<double>& z_nm, double window_nm) {
    Verdict v;
    v.consistent = true;
    for (double z0 : z_nm) {
        VerdictRow row;
        row.z_nm = z0;
        double sum = 0.0;
        int n = 0;
        for (const auto& s : sets)
            for (const auto& pt : s.points)
                if (std::abs(pt.z_nm - z0) <= window_nm) {
                    sum += theory_Pa(pt.z_nm * 1e-9) - pt.P_Pa;
                    ++n;
                }
        if (n == 0)
            throw InputError("no measurements within the comparison window at z = " +
                             std::to_string(z0));
        row.mean_diff_Pa = sum / n;
        row.band_Pa = band_Pa_of_z_nm(z0);
        row.inside = std::abs(row.mean_diff_Pa) <= row.band_Pa;
        v.consistent = v.consistent && row.inside;
        v.rows.push_back(row);
    }
    long outside = 0, total = 0;
    for (const auto& s : sets)
        for (const auto& pt : s.points) {
            double diff = theory_Pa(pt.z_nm * 1e-9) - pt.P_Pa;
            ++total;
            if (std::abs(diff) > band_Pa_of_z_nm(pt.z_nm)) ++outside;
        }
    v.fraction_points_outside =
        total ? static_cast<double>(outside) / static_cast<double>(total) : 0.0;
    return v;
}

} // namespace casimir::metrology
