#pragma once

#include <string>
#include <vector>

#include "remd/field.hpp"

namespace remd {

/// Orthonormal 1D filter pair used to build separable 2D grid transfers.
struct WaveletFilterBank {
    std::vector<double> h;  ///< low-pass (scaling) coefficients
    std::vector<double> g;  ///< high-pass coefficients
    std::string name;
    bool orthonormal = true;
    /// Tap placement: coarse[I] = sum_m h[m] * x[2I + m + offset].
    int offset = 0;
};

/// Builds "haar" or "db2"; throws on unknown names.
WaveletFilterBank make_filterbank(const std::string& name);

/// Coarse field of half dimensions; each coarse cell is the mean of its
/// 2x2 fine block. Mean-preserving.
ScalarField restrict_avg(const ScalarField& x);

/// Bilinear interpolation to double dimensions with periodic wrap
/// (cell-centered: nearest coarse centers weighted 3/4, 1/4).
ScalarField prolong_bilinear(const ScalarField& xc);

/// Separable stride-2 low-pass analysis along x then y, periodic wrap.
ScalarField wavelet_restrict(const ScalarField& x, const WaveletFilterBank& fb);

/// Exact adjoint of wavelet_restrict under the unweighted inner product.
ScalarField wavelet_prolong(const ScalarField& xc, const WaveletFilterBank& fb);

/// Applies wavelet_restrict `levels` times.
ScalarField wavelet_restrict_n(const ScalarField& x, const WaveletFilterBank& fb,
                               int levels);

/// Applies wavelet_prolong `levels` times.
ScalarField wavelet_prolong_n(const ScalarField& xc, const WaveletFilterBank& fb,
                              int levels);

/// Mean-calibrated lift of a coarse residual to the fine grid: wavelet
/// prolongation composed `levels` times with a factor 2 per level, so a
/// constant coarse field c lifts to the constant fine field c.
ScalarField lift_residual(const ScalarField& xc, const WaveletFilterBank& fb,
                          int levels);

/// Applies restrict_avg `levels` times.
ScalarField restrict_avg_n(const ScalarField& x, int levels);

/// Applies prolong_bilinear `levels` times.
ScalarField prolong_bilinear_n(const ScalarField& xc, int levels);

/// Fixed dyadic grid hierarchy for the corrector. grid 0 is finest;
/// grid l has dimensions (nx/2^l, ny/2^l).
struct LevelHierarchy {
    int levels = 0;  ///< number of coarse levels L (L+1 grids total)
    std::vector<int> nx;
    std::vector<int> ny;
    WaveletFilterBank fb;
};

/// Validates divisibility and assembles the hierarchy descriptor.
LevelHierarchy build_hierarchy(int nx, int ny, int levels,
                               const WaveletFilterBank& fb);

}  // namespace remd
