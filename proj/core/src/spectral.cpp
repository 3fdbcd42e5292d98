#include "remd/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <stdexcept>

namespace remd {

namespace {

/// Signed integer frequency for index k on an n-point grid.
inline int signed_freq(int k, int n) { return (k > n / 2) ? k - n : k; }

/// Runs one complex-to-complex FFTW transform. Plans are created per call
/// with FFTW_ESTIMATE, which is deterministic and cheap at the grid sizes
/// used here; plan creation is not thread safe, and neither is this helper.
std::vector<std::complex<double>> run_fftw(
    const std::vector<std::complex<double>>& in, int nx, int ny, int sign) {
    std::vector<std::complex<double>> out(in.size());
    // fftw_complex and std::complex<double> share layout by the C++ standard
    // (array-of-two-doubles), so reinterpret_cast is well defined here.
    auto* src = const_cast<fftw_complex*>(
        reinterpret_cast<const fftw_complex*>(in.data()));
    auto* dst = reinterpret_cast<fftw_complex*>(out.data());
    // Row-major [ny][nx]: the slow dimension first, matching v[y*nx + x].
    fftw_plan plan = fftw_plan_dft_2d(ny, nx, src, dst, sign,
                                      FFTW_ESTIMATE | FFTW_PRESERVE_INPUT);
    if (plan == nullptr) throw std::runtime_error("fftw plan creation failed");
    fftw_execute(plan);
    fftw_destroy_plan(plan);
    return out;
}

}  // namespace

Spectrum2D dft2(const ScalarField& x) {
    Spectrum2D s;
    s.nx = x.nx();
    s.ny = x.ny();
    s.dx = x.dx();
    s.dy = x.dy();
    std::vector<std::complex<double>> in(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) in[i] = x.raw()[i];
    s.c = run_fftw(in, s.nx, s.ny, FFTW_FORWARD);
    return s;
}

ScalarField idft2(const Spectrum2D& s) {
    auto out = run_fftw(s.c, s.nx, s.ny, FFTW_BACKWARD);
    ScalarField x(s.nx, s.ny, s.dx, s.dy, Boundary::periodic);
    const double scale = 1.0 / (static_cast<double>(s.nx) * s.ny);
    for (std::size_t i = 0; i < x.size(); ++i) x.raw()[i] = out[i].real() * scale;
    return x;
}

Spectrum2D dft2_of_complex(const std::vector<std::complex<double>>& values,
                           int nx, int ny, bool inverse) {
    if (static_cast<int>(values.size()) != nx * ny)
        throw std::invalid_argument("dft2_of_complex: size mismatch");
    Spectrum2D s;
    s.nx = nx;
    s.ny = ny;
    s.c = run_fftw(values, nx, ny, inverse ? FFTW_BACKWARD : FFTW_FORWARD);
    if (inverse) {
        const double scale = 1.0 / (static_cast<double>(nx) * ny);
        for (auto& z : s.c) z *= scale;
    }
    return s;
}

int full_bin_count(int nx, int ny) {
    const double kmax =
        std::sqrt(static_cast<double>(nx / 2) * (nx / 2) +
                  static_cast<double>(ny / 2) * (ny / 2));
    return static_cast<int>(std::floor(kmax)) + 1;
}

RadialSpectrum radial_power_spectrum(const ScalarField& x, int nbins) {
    if (nbins < 1) throw std::invalid_argument("radial_power_spectrum: nbins < 1");
    Spectrum2D s = dft2(x);
    RadialSpectrum r;
    r.power.assign(nbins, 0.0);
    r.count.assign(nbins, 0.0);
    r.bin_edges.resize(nbins + 1);
    for (int m = 0; m <= nbins; ++m) r.bin_edges[m] = m;
    const double n2 = static_cast<double>(s.nx) * s.ny;
    for (int ky = 0; ky < s.ny; ++ky) {
        for (int kx = 0; kx < s.nx; ++kx) {
            const double fx = signed_freq(kx, s.nx);
            const double fy = signed_freq(ky, s.ny);
            const double kmag = std::sqrt(fx * fx + fy * fy);
            // Modes past the last edge (Nyquist corner) land in the
            // outermost bin so no energy is dropped.
            int bin = static_cast<int>(std::floor(kmag));
            if (bin >= nbins) bin = nbins - 1;
            const double p = std::norm(s.c[ky * s.nx + kx]) / (n2 * n2);
            r.power[bin] += p;
            r.count[bin] += 1.0;
        }
    }
    for (int m = 0; m < nbins; ++m)
        if (r.count[m] > 0.0) r.power[m] /= r.count[m];
    return r;
}

RadialSpectrum radial_error_spectrum(const ScalarField& pred,
                                     const ScalarField& gt, int nbins) {
    require_same_grid(pred, gt, "radial_error_spectrum");
    return radial_power_spectrum(sub(pred, gt), nbins);
}

ScalarField spectral_filter(const ScalarField& x, const std::vector<double>& w) {
    Spectrum2D s = dft2(x);
    const int need = full_bin_count(s.nx, s.ny);
    if (static_cast<int>(w.size()) < need)
        throw std::invalid_argument(
            "spectral_filter: missing weight for bin " +
            std::to_string(w.size()) + " (need " + std::to_string(need) + ")");
    for (int ky = 0; ky < s.ny; ++ky) {
        for (int kx = 0; kx < s.nx; ++kx) {
            const double fx = signed_freq(kx, s.nx);
            const double fy = signed_freq(ky, s.ny);
            const int bin =
                static_cast<int>(std::floor(std::sqrt(fx * fx + fy * fy)));
            s.c[ky * s.nx + kx] *= w[bin];
        }
    }
    // Real input with radially symmetric real weights keeps Hermitian
    // symmetry, so the inverse must be real to rounding error.
    auto out = run_fftw(s.c, s.nx, s.ny, FFTW_BACKWARD);
    ScalarField y(s.nx, s.ny, s.dx, s.dy, x.boundary());
    const double scale = 1.0 / (static_cast<double>(s.nx) * s.ny);
    double max_imag = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        y.raw()[i] = out[i].real() * scale;
        max_imag = std::max(max_imag, std::abs(out[i].imag()) * scale);
    }
    if (max_imag > 1e-9)
        throw std::runtime_error("spectral_filter: imaginary residue " +
                                 std::to_string(max_imag));
    return y;
}

VectorField2 helmholtz_project(const VectorField2& w) {
    require_same_grid(w.u, w.v, "helmholtz_project");
    Spectrum2D su = dft2(w.u);
    Spectrum2D sv = dft2(w.v);
    for (int ky = 0; ky < su.ny; ++ky) {
        for (int kx = 0; kx < su.nx; ++kx) {
            const double fx = signed_freq(kx, su.nx);
            const double fy = signed_freq(ky, su.ny);
            const double k2 = fx * fx + fy * fy;
            if (k2 == 0.0) continue;
            const int i = ky * su.nx + kx;
            const std::complex<double> kdotw = fx * su.c[i] + fy * sv.c[i];
            su.c[i] -= fx * kdotw / k2;
            sv.c[i] -= fy * kdotw / k2;
        }
    }
    VectorField2 out{idft2(su), idft2(sv)};
    out.u.set_boundary(w.u.boundary());
    out.v.set_boundary(w.v.boundary());
    return out;
}

double spectral_divergence_norm(const VectorField2& w) {
    Spectrum2D su = dft2(w.u);
    Spectrum2D sv = dft2(w.v);
    double acc = 0.0;
    const double n2 = static_cast<double>(su.nx) * su.ny;
    for (int ky = 0; ky < su.ny; ++ky) {
        for (int kx = 0; kx < su.nx; ++kx) {
            const double fx = signed_freq(kx, su.nx);
            const double fy = signed_freq(ky, su.ny);
            const int i = ky * su.nx + kx;
            acc += std::norm(fx * su.c[i] + fy * sv.c[i]) / (n2 * n2);
        }
    }
    return std::sqrt(acc);
}

double fit_loglog_slope(const RadialSpectrum& s, double kmin, double kmax) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (size_t m = 0; m < s.power.size(); ++m) {
        const double kc = static_cast<double>(m);
        if (kc < kmin || kc > kmax || s.power[m] <= 0.0 || s.count[m] == 0.0)
            continue;
        const double lx = std::log(kc);
        const double ly = std::log(s.power[m]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++n;
    }
    if (n < 2) throw std::invalid_argument("fit_loglog_slope: fewer than 2 bins");
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace remd
