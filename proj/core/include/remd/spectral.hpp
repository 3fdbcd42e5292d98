#pragma once

#include <complex>
#include <vector>

#include "remd/field.hpp"

namespace remd {

/// Full complex 2D DFT coefficients in standard ordering: mode (k_x, k_y)
/// at index k_y*nx + k_x, frequencies 0..n-1 with wrap (k > n/2 means k-n).
struct Spectrum2D {
    int nx = 0, ny = 0;
    double dx = 1.0, dy = 1.0;
    std::vector<std::complex<double>> c;
};

/// Radially binned power. power[m] is the mean of |F_k|^2/(nx*ny)^2 over
/// modes with floor(|k|) = m (clamped into the outermost bin), so that
/// sum(power[m]*count[m]) equals the field's mean square (Parseval).
struct RadialSpectrum {
    std::vector<double> bin_edges;  ///< bin m covers [m, m+1)
    std::vector<double> power;
    std::vector<double> count;
};

/// Forward DFT, unnormalized.
Spectrum2D dft2(const ScalarField& x);

/// Inverse DFT divided by nx*ny; returns the real part (round trip of dft2
/// is the identity).
ScalarField idft2(const Spectrum2D& s);

/// Number of integer-width annuli needed to cover every mode of an
/// nx-by-ny grid: floor(max |k|) + 1.
int full_bin_count(int nx, int ny);

Spectrum2D dft2_of_complex(const std::vector<std::complex<double>>& values,
                           int nx, int ny, bool inverse);

RadialSpectrum radial_power_spectrum(const ScalarField& x, int nbins);

/// radial_power_spectrum of (pred - gt).
RadialSpectrum radial_error_spectrum(const ScalarField& pred,
                                     const ScalarField& gt, int nbins);

/// Multiplies each Fourier coefficient by the weight of its radial bin and
/// inverse transforms. Weights must cover every bin present on the grid.
ScalarField spectral_filter(const ScalarField& x, const std::vector<double>& w);

/// Fourier-space removal of the gradient component:
/// w_hat <- w_hat - k (k . w_hat) / |k|^2 for k != 0.
VectorField2 helmholtz_project(const VectorField2& w);

/// L2 norm of the spectral divergence i(k_x u_hat + k_y v_hat)/n-normalized;
/// used to verify projections independently of stencils.
double spectral_divergence_norm(const VectorField2& w);

/// Least-squares slope of log(power) vs log(k) over bins with
/// kmin <= k <= kmax and positive power.
double fit_loglog_slope(const RadialSpectrum& s, double kmin, double kmax);

}  // namespace remd
