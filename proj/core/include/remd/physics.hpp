#pragma once

#include "remd/field.hpp"

namespace remd {

/// Weights and shape parameters for the equation-free residual terms.
struct PhysicsConfig {
    double w_lap = 1.0;
    double w_bi = 1.0;
    double w_aniso = 1.0;
    double w_spec = 1.0;
    /// Perona-Malik contrast; 0 means "derive from the anchor" via auto_kappa.
    double kappa = 0.0;
    double huber_delta = 1.0;
    double lambda_max = 0.1;
    const FluidMask* mask = nullptr;  ///< optional; zeroes the combined output
};

/// -laplacian(u): the gradient of the quadratic roughness energy
/// E = 1/2 sum |grad u|^2 (so the damping flow is u' = -rho_lap).
ScalarField rho_lap(const ScalarField& u);

/// -laplacian(laplacian(u)); damps checkerboard/ringing components.
ScalarField rho_bi(const ScalarField& u);

/// -div(g(|grad u_a|) grad u) with g(s) = 1/(1+(s/kappa)^2), assembled in
/// face-centered flux form; equals rho_lap when the anchor is constant.
ScalarField rho_aniso(const ScalarField& u, const ScalarField& u_a, double kappa);

/// Spectrum-alignment residual: per-radial-bin weights
/// W(m) = -clip(log P_u(m) - log P_anchor(m), +-huber_delta) applied as a
/// spectral filter to u. The DC bin is excluded (W(0) = 0).
ScalarField rho_spec(const ScalarField& u, const ScalarField& u_anchor,
                     double huber_delta);

/// Physics strength schedule: lambda_max at t = T decaying to 0 at t = 0.
double lambda_schedule(int t, int T, double lambda_max);

/// Contrast scale used when PhysicsConfig.kappa == 0:
/// 0.1 * median gradient magnitude of the anchor (1.0 for flat anchors).
double auto_kappa(const ScalarField& anchor);

/// Weighted sum of the four residuals, anchored on the (already lifted)
/// low-resolution reference. The anisotropic term's weight is additionally
/// scaled by lambda(t)/lambda_max so edge guidance relaxes as t decreases.
/// Masked when cfg.mask is set.
ScalarField combine_physics(const ScalarField& u, const ScalarField& anchor,
                            const PhysicsConfig& cfg, int t, int T);

}  // namespace remd
