#include "remd/physics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "remd/spectral.hpp"
#include "remd/stencils.hpp"

namespace remd {

ScalarField rho_lap(const ScalarField& u) { return scale(laplacian(u), -1.0); }

ScalarField rho_bi(const ScalarField& u) {
    return scale(laplacian(laplacian(u)), -1.0);
}

namespace {

/// g(s) = 1/(1+(s/kappa)^2)
inline double pm_g(double s, double kappa) {
    const double r = s / kappa;
    return 1.0 / (1.0 + r * r);
}

/// Gradient magnitude of the anchor at the face between (x,y) and its
/// +x or +y neighbor: normal part from the face difference, tangential
/// part from averaged central differences on both sides.
double face_grad_mag(const ScalarField& a, int x, int y, bool x_face) {
    if (x_face) {
        const double gn = (a.at_bc(x + 1, y) - a.at_bc(x, y)) / a.dx();
        const double gt = (a.at_bc(x, y + 1) - a.at_bc(x, y - 1) +
                           a.at_bc(x + 1, y + 1) - a.at_bc(x + 1, y - 1)) /
                          (4.0 * a.dy());
        return std::sqrt(gn * gn + gt * gt);
    }
    const double gn = (a.at_bc(x, y + 1) - a.at_bc(x, y)) / a.dy();
    const double gt = (a.at_bc(x + 1, y) - a.at_bc(x - 1, y) +
                       a.at_bc(x + 1, y + 1) - a.at_bc(x - 1, y + 1)) /
                      (4.0 * a.dx());
    return std::sqrt(gn * gn + gt * gt);
}

}  // namespace

ScalarField rho_aniso(const ScalarField& u, const ScalarField& u_a,
                      double kappa) {
    require_same_grid(u, u_a, "rho_aniso");
    if (kappa <= 0.0) throw std::invalid_argument("rho_aniso: kappa must be > 0");
    const int nx = u.nx(), ny = u.ny();
    const double idx2 = 1.0 / (u.dx() * u.dx());
    const double idy2 = 1.0 / (u.dy() * u.dy());
    // Fluxes on +x and +y faces of each cell; the divergence then uses the
    // -x/-y face of a cell as the neighbor's +x/+y face, which keeps the
    // scheme conservative and reduces to the 5-point Laplacian for g = 1.
    ScalarField fx(nx, ny, u.dx(), u.dy(), u.boundary());
    ScalarField fy(nx, ny, u.dx(), u.dy(), u.boundary());
    for (int y = 0; y < ny; ++y) {
        for (int x = 0; x < nx; ++x) {
            fx(x, y) = pm_g(face_grad_mag(u_a, x, y, true), kappa) *
                       (u.at_bc(x + 1, y) - u.at_bc(x, y));
            fy(x, y) = pm_g(face_grad_mag(u_a, x, y, false), kappa) *
                       (u.at_bc(x, y + 1) - u.at_bc(x, y));
        }
    }
    ScalarField out(nx, ny, u.dx(), u.dy(), u.boundary());
    for (int y = 0; y < ny; ++y)
        for (int x = 0; x < nx; ++x)
            out(x, y) = -((fx(x, y) - fx.at_bc(x - 1, y)) * idx2 +
                          (fy(x, y) - fy.at_bc(x, y - 1)) * idy2);
    return out;
}

ScalarField rho_spec(const ScalarField& u, const ScalarField& u_anchor,
                     double huber_delta) {
    require_same_grid(u, u_anchor, "rho_spec");
    if (huber_delta <= 0.0)
        throw std::invalid_argument("rho_spec: huber_delta must be > 0");
    const int nbins = full_bin_count(u.nx(), u.ny());
    const RadialSpectrum pu = radial_power_spectrum(u, nbins);
    const RadialSpectrum pa = radial_power_spectrum(u_anchor, nbins);
    constexpr double kLogFloor = 1e-12;
    std::vector<double> w(nbins, 0.0);
    for (int m = 1; m < nbins; ++m) {  // m = 0 (DC) stays unweighted
        if (pu.count[m] == 0.0) continue;
        const double d = std::log(pu.power[m] + kLogFloor) -
                         std::log(pa.power[m] + kLogFloor);
        w[m] = -std::clamp(d, -huber_delta, huber_delta);
    }
    return spectral_filter(u, w);
}

double lambda_schedule(int t, int T, double lambda_max) {
    if (T <= 0) throw std::invalid_argument("lambda_schedule: T must be > 0");
    if (t < 0 || t > T) throw std::invalid_argument("lambda_schedule: t out of range");
    const double phase = M_PI * static_cast<double>(T - t) / T;
    return lambda_max * 0.5 * (1.0 + std::cos(phase));
}

double auto_kappa(const ScalarField& anchor) {
    const VectorField2 g = gradient(anchor);
    std::vector<double> mag(anchor.size());
    for (std::size_t i = 0; i < mag.size(); ++i)
        mag[i] = std::hypot(g.u.raw()[i], g.v.raw()[i]);
    const std::size_t mid = mag.size() / 2;
    std::nth_element(mag.begin(), mag.begin() + mid, mag.end());
    const double med = mag[mid];
    return med > 0.0 ? 0.1 * med : 1.0;
}

ScalarField combine_physics(const ScalarField& u, const ScalarField& anchor,
                            const PhysicsConfig& cfg, int t, int T) {
    require_same_grid(u, anchor, "combine_physics");
    ScalarField r(u.nx(), u.ny(), u.dx(), u.dy(), u.boundary());
    if (cfg.w_lap != 0.0) axpy(cfg.w_lap, rho_lap(u), r);
    if (cfg.w_bi != 0.0) axpy(cfg.w_bi, rho_bi(u), r);
    if (cfg.w_aniso != 0.0) {
        const double kappa = cfg.kappa > 0.0 ? cfg.kappa : auto_kappa(anchor);
        const double relax =
            cfg.lambda_max > 0.0
                ? lambda_schedule(t, T, cfg.lambda_max) / cfg.lambda_max
                : 0.0;
        axpy(cfg.w_aniso * relax, rho_aniso(u, anchor, kappa), r);
    }
    if (cfg.w_spec != 0.0)
        axpy(cfg.w_spec, rho_spec(u, anchor, cfg.huber_delta), r);
    if (cfg.mask != nullptr) return apply_mask(r, *cfg.mask);
    return r;
}

}  // namespace remd
