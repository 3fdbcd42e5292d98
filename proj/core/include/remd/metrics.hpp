#pragma once

#include <string>

#include "remd/field.hpp"
#include "remd/spectral.hpp"

namespace remd {

/// Everything one evaluation reports. Scalar-only evaluations leave the
/// vector-field metrics (ve, ee, div_l2) at the NaN sentinel.
struct EvalReport {
    double rmse = 0.0;
    double psnr = 0.0;   ///< dB; +infinity when rmse is exactly 0
    double ssim = 0.0;
    double ve = 0.0;     ///< mean squared vorticity difference
    double ee = 0.0;     ///< |enstrophy(pred) - enstrophy(gt)|
    double ged = 0.0;    ///< relative L1 gap between radial energy spectra
    double div_l2 = 0.0;
    RadialSpectrum error_spectrum;
    int steps_used = 0;
    double wall_seconds = 0.0;
};

/// Root mean square difference; with a mask, the mean runs over fluid
/// cells only.
double rmse(const ScalarField& pred, const ScalarField& gt,
            const FluidMask* mask = nullptr);

/// 20*log10(data_range / rmse). data_range <= 0 means "use max - min of
/// gt". Returns +infinity when the fields agree exactly.
double psnr(const ScalarField& pred, const ScalarField& gt,
            double data_range = 0.0);

/// Mean SSIM over all 7x7 uniform windows that fit inside the grid, with
/// the canonical stabilizers C1 = (0.01*range)^2, C2 = (0.03*range)^2
/// where range is the ground truth's max - min.
double ssim(const ScalarField& pred, const ScalarField& gt);

/// (ve, ee): mean squared vorticity difference and absolute enstrophy
/// difference, with enstrophy Z = 0.5*mean(omega^2).
struct VorticityError {
    double ve = 0.0;
    double ee = 0.0;
};
VorticityError vorticity_error(const VectorField2& pred,
                               const VectorField2& gt);

/// GED: sum_m |E_pred(m) - E_gt(m)| / sum_m E_gt(m) over radial bins,
/// where E(m) is the binned energy power[m]*count[m]. Throws when the
/// ground truth carries no energy.
double energy_discrepancy(const ScalarField& pred, const ScalarField& gt,
                          int nbins = 0);

/// RMS of the finite-difference divergence field.
double divergence_l2(const VectorField2& w);

/// Fills a full report. Vector metrics require both vector parts; pass
/// nullptr to leave them at the NaN sentinel. nbins = 0 selects
/// full_bin_count for the grid. steps_used and wall_seconds are left for
/// the caller to stamp.
EvalReport evaluate(const ScalarField& pred, const ScalarField& gt,
                    const VectorField2* pred_vec = nullptr,
                    const VectorField2* gt_vec = nullptr, int nbins = 0);

/// CSV serialization: a fixed header line and one row per report.
std::string eval_report_csv_header();
std::string eval_report_csv_row(const EvalReport& r);

}  // namespace remd
