#include "remd/transfer.hpp"

#include <cmath>
#include <stdexcept>

namespace remd {

WaveletFilterBank make_filterbank(const std::string& name) {
    WaveletFilterBank fb;
    fb.name = name;
    if (name == "haar") {
        const double s = 1.0 / std::sqrt(2.0);
        fb.h = {s, s};
        fb.g = {s, -s};
        fb.offset = 0;
    } else if (name == "db2") {
        const double r3 = std::sqrt(3.0);
        const double d = 4.0 * std::sqrt(2.0);
        fb.h = {(1.0 + r3) / d, (3.0 + r3) / d, (3.0 - r3) / d, (1.0 - r3) / d};
        // g[m] = (-1)^m h[F-1-m]
        fb.g.resize(4);
        for (int m = 0; m < 4; ++m)
            fb.g[m] = ((m % 2) ? -1.0 : 1.0) * fb.h[3 - m];
        fb.offset = -1;  // center the 4-tap support on the 2x2 block
    } else {
        throw std::invalid_argument("make_filterbank: unknown wavelet '" + name +
                                    "' (expected haar or db2)");
    }
    return fb;
}

namespace {

void require_even(const ScalarField& x, const char* who) {
    if (x.nx() % 2 != 0 || x.ny() % 2 != 0)
        throw std::invalid_argument(std::string(who) + ": dimensions must be even");
}

int wrap_periodic(int i, int n) {
    int m = i % n;
    return m < 0 ? m + n : m;
}

}  // namespace

ScalarField restrict_avg(const ScalarField& x) {
    require_even(x, "restrict_avg");
    ScalarField out(x.nx() / 2, x.ny() / 2, 2.0 * x.dx(), 2.0 * x.dy(),
                    x.boundary());
    for (int y = 0; y < out.ny(); ++y)
        for (int xx = 0; xx < out.nx(); ++xx)
            out(xx, y) = 0.25 * (x(2 * xx, 2 * y) + x(2 * xx + 1, 2 * y) +
                                 x(2 * xx, 2 * y + 1) + x(2 * xx + 1, 2 * y + 1));
    return out;
}

ScalarField prolong_bilinear(const ScalarField& xc) {
    const int ncx = xc.nx(), ncy = xc.ny();
    ScalarField out(2 * ncx, 2 * ncy, 0.5 * xc.dx(), 0.5 * xc.dy(),
                    xc.boundary());
    // Cell-centered: fine cell 2I sits 1/4 cell left of coarse center I,
    // fine cell 2I+1 sits 1/4 cell right; 1D weights (3/4, 1/4).
    for (int y = 0; y < out.ny(); ++y) {
        const int cy = y / 2;
        const int oy = (y % 2 == 0) ? wrap_periodic(cy - 1, ncy)
                                    : wrap_periodic(cy + 1, ncy);
        for (int x = 0; x < out.nx(); ++x) {
            const int cx = x / 2;
            const int ox = (x % 2 == 0) ? wrap_periodic(cx - 1, ncx)
                                        : wrap_periodic(cx + 1, ncx);
            out(x, y) = 0.5625 * xc(cx, cy) + 0.1875 * xc(ox, cy) +
                        0.1875 * xc(cx, oy) + 0.0625 * xc(ox, oy);
        }
    }
    return out;
}

namespace {

/// Stride-2 analysis along x: out(I, y) = sum_m h[m] x(2I+m+off, y).
ScalarField restrict_x(const ScalarField& x, const WaveletFilterBank& fb) {
    ScalarField out(x.nx() / 2, x.ny(), 2.0 * x.dx(), x.dy(), x.boundary());
    const int taps = static_cast<int>(fb.h.size());
    for (int y = 0; y < x.ny(); ++y)
        for (int I = 0; I < out.nx(); ++I) {
            double s = 0.0;
            for (int m = 0; m < taps; ++m)
                s += fb.h[m] * x(wrap_periodic(2 * I + m + fb.offset, x.nx()), y);
            out(I, y) = s;
        }
    return out;
}

ScalarField restrict_y(const ScalarField& x, const WaveletFilterBank& fb) {
    ScalarField out(x.nx(), x.ny() / 2, x.dx(), 2.0 * x.dy(), x.boundary());
    const int taps = static_cast<int>(fb.h.size());
    for (int I = 0; I < out.ny(); ++I)
        for (int xx = 0; xx < x.nx(); ++xx) {
            double s = 0.0;
            for (int m = 0; m < taps; ++m)
                s += fb.h[m] * x(xx, wrap_periodic(2 * I + m + fb.offset, x.ny()));
            out(xx, I) = s;
        }
    return out;
}

/// Adjoint of restrict_x: out(2I+m+off, y) += h[m] xc(I, y).
ScalarField prolong_x(const ScalarField& xc, const WaveletFilterBank& fb) {
    ScalarField out(2 * xc.nx(), xc.ny(), 0.5 * xc.dx(), xc.dy(), xc.boundary());
    const int taps = static_cast<int>(fb.h.size());
    for (int y = 0; y < xc.ny(); ++y)
        for (int I = 0; I < xc.nx(); ++I)
            for (int m = 0; m < taps; ++m)
                out(wrap_periodic(2 * I + m + fb.offset, out.nx()), y) +=
                    fb.h[m] * xc(I, y);
    return out;
}

ScalarField prolong_y(const ScalarField& xc, const WaveletFilterBank& fb) {
    ScalarField out(xc.nx(), 2 * xc.ny(), xc.dx(), 0.5 * xc.dy(), xc.boundary());
    const int taps = static_cast<int>(fb.h.size());
    for (int I = 0; I < xc.ny(); ++I)
        for (int xx = 0; xx < xc.nx(); ++xx)
            for (int m = 0; m < taps; ++m)
                out(xx, wrap_periodic(2 * I + m + fb.offset, out.ny())) +=
                    fb.h[m] * xc(xx, I);
    return out;
}

}  // namespace

ScalarField wavelet_restrict(const ScalarField& x, const WaveletFilterBank& fb) {
    require_even(x, "wavelet_restrict");
    return restrict_y(restrict_x(x, fb), fb);
}

ScalarField wavelet_prolong(const ScalarField& xc, const WaveletFilterBank& fb) {
    return prolong_x(prolong_y(xc, fb), fb);
}

ScalarField wavelet_restrict_n(const ScalarField& x, const WaveletFilterBank& fb,
                               int levels) {
    ScalarField out = x;
    for (int l = 0; l < levels; ++l) out = wavelet_restrict(out, fb);
    return out;
}

ScalarField wavelet_prolong_n(const ScalarField& xc, const WaveletFilterBank& fb,
                              int levels) {
    ScalarField out = xc;
    for (int l = 0; l < levels; ++l) out = wavelet_prolong(out, fb);
    return out;
}

ScalarField lift_residual(const ScalarField& xc, const WaveletFilterBank& fb,
                          int levels) {
    // One wavelet prolongation maps a constant c to c/2 in 2D; the factor 2
    // per level restores mean calibration (constant c lifts to constant c).
    ScalarField out = xc;
    for (int l = 0; l < levels; ++l) out = scale(wavelet_prolong(out, fb), 2.0);
    return out;
}

ScalarField restrict_avg_n(const ScalarField& x, int levels) {
    ScalarField out = x;
    for (int l = 0; l < levels; ++l) out = restrict_avg(out);
    return out;
}

ScalarField prolong_bilinear_n(const ScalarField& xc, int levels) {
    ScalarField out = xc;
    for (int l = 0; l < levels; ++l) out = prolong_bilinear(out);
    return out;
}

LevelHierarchy build_hierarchy(int nx, int ny, int levels,
                               const WaveletFilterBank& fb) {
    if (levels < 0)
        throw std::invalid_argument("build_hierarchy: negative level count");
    const int div = 1 << levels;
    if (nx % div != 0 || ny % div != 0)
        throw std::invalid_argument(
            "build_hierarchy: grid " + std::to_string(nx) + "x" +
            std::to_string(ny) + " not divisible by 2^" + std::to_string(levels));
    LevelHierarchy h;
    h.levels = levels;
    h.fb = fb;
    for (int l = 0; l <= levels; ++l) {
        h.nx.push_back(nx >> l);
        h.ny.push_back(ny >> l);
    }
    return h;
}

}  // namespace remd
