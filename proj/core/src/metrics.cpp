#include "remd/metrics.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "remd/stencils.hpp"

namespace remd {

namespace {

double data_range_of(const ScalarField& gt) {
    return field_max(gt) - field_min(gt);
}

}  // namespace

double rmse(const ScalarField& pred, const ScalarField& gt,
            const FluidMask* mask) {
    require_same_grid(pred, gt, "rmse");
    double sq = 0.0;
    std::size_t n = 0;
    for (int y = 0; y < gt.ny(); ++y) {
        for (int x = 0; x < gt.nx(); ++x) {
            if (mask && mask->at(x, y) == 0) continue;
            const double d = pred(x, y) - gt(x, y);
            sq += d * d;
            ++n;
        }
    }
    if (n == 0) throw std::invalid_argument("rmse: mask leaves no fluid cells");
    return std::sqrt(sq / static_cast<double>(n));
}

double psnr(const ScalarField& pred, const ScalarField& gt,
            double data_range) {
    const double e = rmse(pred, gt);
    if (e == 0.0) return std::numeric_limits<double>::infinity();
    const double range = data_range > 0.0 ? data_range : data_range_of(gt);
    if (range <= 0.0)
        throw std::invalid_argument("psnr: data range must be positive");
    return 20.0 * std::log10(range / e);
}

double ssim(const ScalarField& pred, const ScalarField& gt) {
    require_same_grid(pred, gt, "ssim");
    constexpr int win = 7;
    if (gt.nx() < win || gt.ny() < win)
        throw std::invalid_argument("ssim: grid smaller than the 7x7 window");

    const double range = data_range_of(gt);
    const double c1 = (0.01 * range) * (0.01 * range);
    const double c2 = (0.03 * range) * (0.03 * range);
    const double inv = 1.0 / (win * win);

    double acc = 0.0;
    std::size_t windows = 0;
    for (int y0 = 0; y0 + win <= gt.ny(); ++y0) {
        for (int x0 = 0; x0 + win <= gt.nx(); ++x0) {
            double mp = 0.0, mg = 0.0;
            for (int y = y0; y < y0 + win; ++y)
                for (int x = x0; x < x0 + win; ++x) {
                    mp += pred(x, y);
                    mg += gt(x, y);
                }
            mp *= inv;
            mg *= inv;
            double vp = 0.0, vg = 0.0, cov = 0.0;
            for (int y = y0; y < y0 + win; ++y)
                for (int x = x0; x < x0 + win; ++x) {
                    const double dp = pred(x, y) - mp;
                    const double dg = gt(x, y) - mg;
                    vp += dp * dp;
                    vg += dg * dg;
                    cov += dp * dg;
                }
            vp *= inv;
            vg *= inv;
            cov *= inv;
            acc += (2.0 * mp * mg + c1) * (2.0 * cov + c2) /
                   ((mp * mp + mg * mg + c1) * (vp + vg + c2));
            ++windows;
        }
    }
    return acc / static_cast<double>(windows);
}

VorticityError vorticity_error(const VectorField2& pred,
                               const VectorField2& gt) {
    require_same_grid(pred.u, gt.u, "vorticity_error");
    require_same_grid(pred.v, gt.v, "vorticity_error");
    const ScalarField wp = vorticity(pred);
    const ScalarField wg = vorticity(gt);
    double ve = 0.0, zp = 0.0, zg = 0.0;
    for (std::size_t i = 0; i < wp.size(); ++i) {
        const double d = wp.raw()[i] - wg.raw()[i];
        ve += d * d;
        zp += wp.raw()[i] * wp.raw()[i];
        zg += wg.raw()[i] * wg.raw()[i];
    }
    const double n = static_cast<double>(wp.size());
    return {ve / n, std::abs(0.5 * zp / n - 0.5 * zg / n)};
}

double energy_discrepancy(const ScalarField& pred, const ScalarField& gt,
                          int nbins) {
    require_same_grid(pred, gt, "energy_discrepancy");
    if (nbins <= 0) nbins = full_bin_count(gt.nx(), gt.ny());
    const RadialSpectrum sp = radial_power_spectrum(pred, nbins);
    const RadialSpectrum sg = radial_power_spectrum(gt, nbins);
    double gap = 0.0, total = 0.0;
    for (std::size_t m = 0; m < sg.power.size(); ++m) {
        const double ep = sp.power[m] * sp.count[m];
        const double eg = sg.power[m] * sg.count[m];
        gap += std::abs(ep - eg);
        total += eg;
    }
    if (total <= 0.0)
        throw std::invalid_argument(
            "energy_discrepancy: ground truth carries no energy");
    return gap / total;
}

double divergence_l2(const VectorField2& w) {
    return field_norms(divergence(w)).l2;
}

EvalReport evaluate(const ScalarField& pred, const ScalarField& gt,
                    const VectorField2* pred_vec, const VectorField2* gt_vec,
                    int nbins) {
    if (nbins <= 0) nbins = full_bin_count(gt.nx(), gt.ny());
    EvalReport r;
    r.rmse = rmse(pred, gt);
    r.psnr = psnr(pred, gt);
    r.ssim = ssim(pred, gt);
    r.ged = energy_discrepancy(pred, gt, nbins);
    r.error_spectrum = radial_error_spectrum(pred, gt, nbins);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    if (pred_vec && gt_vec) {
        const VorticityError v = vorticity_error(*pred_vec, *gt_vec);
        r.ve = v.ve;
        r.ee = v.ee;
        r.div_l2 = divergence_l2(*pred_vec);
    } else {
        r.ve = nan;
        r.ee = nan;
        r.div_l2 = nan;
    }
    return r;
}

std::string eval_report_csv_header() {
    return "rmse,psnr,ssim,ve,ee,ged,div_l2,steps_used,wall_seconds";
}

std::string eval_report_csv_row(const EvalReport& r) {
    std::ostringstream os;
    os.precision(17);
    os << r.rmse << ',' << r.psnr << ',' << r.ssim << ',' << r.ve << ','
       << r.ee << ',' << r.ged << ',' << r.div_l2 << ',' << r.steps_used
       << ',' << r.wall_seconds;
    return os.str();
}

}  // namespace remd
