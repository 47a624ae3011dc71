#pragma once

#include <functional>
#include <string>
#include <vector>

#include "casimir/instrument.hpp"

namespace casimir::metrology {

/// Two-sided Student-t quantile: P(T <= t) = p at dof degrees of freedom.
double student_t_quantile(double p, int dof);

/// One-outlier test critical value for sample size n at significance alpha
/// (two-sided), G = ((n-1)/sqrt(n)) sqrt(t^2/(n-2+t^2)), t = t_{alpha/(2n), n-2}.
double outlier_critical(int n, double alpha);

/// Conservative combination of two uniform-distributed error magnitudes:
/// min(e1 + e2, 1.1 sqrt(e1^2 + e2^2)) at 95% confidence.
double compose_uniform(double e1, double e2);

/// Fixed-width separation bins over [z_min, z_max).
struct BinStats {
    double center_nm = 0.0;
    int n = 0;
    double mean_Pa = 0.0;
    double var_point = 0.0;   // sample variance of the points
    double var_mean = 0.0;    // var_point / n
    double max_dev_stat = 0.0; // max |P_i - mean| / s
    int argmax_set = -1;       // set owning the extreme point
    bool exceeds = false;      // max_dev_stat > critical(n, 1-beta)
};

std::vector<BinStats> bin_sets(const std::vector<instrument::MeasurementSet>& sets,
                               double z_min_nm = 160.0, double z_max_nm = 750.0,
                               double width_nm = 1.2);

struct OutlierReport {
    std::vector<BinStats> bins;
    std::vector<int> flagged_sets;           // 1-based ids
    std::vector<double> exceed_fraction;     // per set: owned exceeding bins / bins containing it
    int n_exceeding_bins = 0;
};

/// Flags sets whose points dominate the bins exceeding the outlier-test
/// threshold at confidence beta.
OutlierReport detect_outlier_sets(const std::vector<instrument::MeasurementSet>& sets,
                                  double beta = 0.95);

struct RandomErrorResult {
    double delta_Pa = 0.0;   // t * s_mean at the requested confidence
    double s_mean_Pa = 0.0;  // pooled standard deviation of the mean
    int n_bins = 0;          // bins combined (3..6)
    int dof = 0;             // min bin population - 1
    double mean_Pa = 0.0;    // weighted mean pressure at z0
};

/// Random error of the mean pressure at z0_nm: bins within the neighborhood are
/// combined (3 to 6, grown while the variances stay homogeneous); the pooled
/// variance takes the worse of equal and inverse-variance influence
/// coefficients; half-width is Student-t with dof = min bin population - 1.
RandomErrorResult pooled_random_error(const std::vector<BinStats>& bins,
                                      double z0_nm, double beta = 0.95);

/// Systematic error from the frequency-shift resolution and sphere-radius
/// uncertainty: |P| * compose_uniform(dP_res/|P|, dR/R).
double systematic_error(double P_Pa, double dP_resolution_Pa, double dR_over_R);

/// Total experimental error at 95%: regime blend selected by the ratio
/// r = syst / s_mean, where s_mean is the standard deviation of the mean
/// (not the t-multiplied half-width; the ratio of errors with unlike
/// distributions is formed before confidence scaling, which also keeps the
/// blend continuous at the regime boundaries). r<0.8: random; r>8:
/// systematic; else 0.8*(random+systematic).
double total_experimental_error(double random_err, double syst_err,
                                double s_mean);

/// Relative theoretical error: 0.8*(delta_z + delta_other), where
/// delta_z = 4 dz/z and delta_other = compose_uniform(z/R, 0.005).
double theoretical_error_rel(double z, double R, double dz);

/// Half-width of the comparison band: compose_uniform(expt, theor), optionally
/// widened to 99% by the ratio of three-dof t quantiles.
double comparison_band(double expt_err_Pa, double theor_err_Pa, bool ninety_nine = false);

struct BudgetRow {
    double z_nm = 0.0;
    double P_expt_Pa = 0.0;   // pooled mean of the data
    double rand_Pa = 0.0;
    double syst_Pa = 0.0;
    double expt_Pa = 0.0;     // total experimental
    double theor_Pa = 0.0;
    double band_Pa = 0.0;     // comparison half-width, 95%
    double band99_Pa = 0.0;
};

/// Full error budget at the given separations (nm).
std::vector<BudgetRow> error_budget(const std::vector<instrument::MeasurementSet>& sets,
                                    const std::function<double(double)>& theory_Pa,
                                    const std::vector<double>& z_nm,
                                    double R, double dz, double dP_resolution_Pa,
                                    double dR_over_R, double beta = 0.95);

struct VerdictRow {
    double z_nm = 0.0;
    double mean_diff_Pa = 0.0; // mean over window of (P_theory - P_point)
    double band_Pa = 0.0;
    bool inside = false;
};

struct Verdict {
    std::vector<VerdictRow> rows;
    double fraction_points_outside = 0.0; // individual diffs vs pointwise band
    bool consistent = false;              // all window means inside
};

/// Windowed theory-experiment comparison: at each z the differences within
/// +-window_nm are averaged and tested against the band half-width.
Verdict compare_theory(const std::vector<instrument::MeasurementSet>& sets,
                       const std::function<double(double)>& theory_Pa,
                       const std::function<double(double)>& band_Pa_of_z_nm,
                       const std::vector<double>& z_nm, double window_nm = 3.0);

} // namespace casimir::metrology
